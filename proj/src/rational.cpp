#include "milnor/rational.h"

#include <cctype>
#include <stdexcept>

namespace milnor {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

Rational pow10(long e) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(e < 0 ? -e : e));
  return e < 0 ? Rational(mpz_class(1), p) : Rational(p);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  bool negative = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (s.empty()) throw std::invalid_argument("empty number");

  Rational value;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    auto num = s.substr(0, slash);
    auto den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) {
      throw std::invalid_argument("malformed fraction '" + std::string(text) + "'");
    }
    mpz_class d(std::string(den), 10);
    if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    value = Rational(mpz_class(std::string(num), 10), d);
    value.canonicalize();
  } else {
    long exponent = 0;
    std::string_view mantissa = s;
    if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
      mantissa = s.substr(0, e);
      auto exp_text = std::string(s.substr(e + 1));
      std::size_t used = 0;
      try {
        exponent = std::stol(exp_text, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || used != exp_text.size()) {
        throw std::invalid_argument("malformed exponent in '" + std::string(text) + "'");
      }
    }
    std::string digits;
    long frac_digits = 0;
    if (auto dot = mantissa.find('.'); dot != std::string_view::npos) {
      auto ip = mantissa.substr(0, dot);
      auto fp = mantissa.substr(dot + 1);
      if ((!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp)) ||
          (ip.empty() && fp.empty())) {
        throw std::invalid_argument("malformed decimal '" + std::string(text) + "'");
      }
      digits = std::string(ip) + std::string(fp);
      frac_digits = static_cast<long>(fp.size());
    } else {
      if (!all_digits(mantissa)) {
        throw std::invalid_argument("malformed number '" + std::string(text) + "'");
      }
      digits = std::string(mantissa);
    }
    value = Rational(mpz_class(digits, 10)) * pow10(exponent - frac_digits);
  }
  return negative ? Rational(-value) : value;
}

std::string to_string(const Rational& q) { return q.get_str(); }

double to_double(const Rational& q) { return q.get_d(); }

std::string to_string(const ComplexRational& c) {
  if (sgn(c.im) == 0) return to_string(c.re);
  std::string im;
  if (c.im == 1) {
    im = "i";
  } else if (c.im == -1) {
    im = "-i";
  } else {
    im = to_string(c.im) + "i";
  }
  if (sgn(c.re) == 0) return im;
  if (im.front() != '-') im = "+" + im;
  return to_string(c.re) + im;
}

}  // namespace milnor
