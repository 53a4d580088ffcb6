#include "milnor/parse.h"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <sstream>

namespace milnor {

ParseError::ParseError(const std::string& message, std::size_t position)
    : std::runtime_error("parse error at column " + std::to_string(position + 1) + ": " + message),
      detail_(message),
      position_(position) {}

namespace {

bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }
bool is_alpha(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0 || c == '_'; }
bool is_alnum(char c) { return is_alpha(c) || is_digit(c); }

struct Cursor {
  std::string_view s;
  std::size_t pos = 0;
  std::size_t end = 0;

  explicit Cursor(std::string_view text) : s(text), end(text.size()) {}

  void skip_ws() {
    while (pos < end && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool at_end() {
    skip_ws();
    return pos >= end;
  }
  char peek() {
    skip_ws();
    return pos < end ? s[pos] : '\0';
  }
  char peek_raw(std::size_t ahead = 0) const { return pos + ahead < end ? s[pos + ahead] : '\0'; }
  bool eat(char c) {
    if (peek() == c) {
      ++pos;
      return true;
    }
    return false;
  }
  void expect(char c, const char* what) {
    if (!eat(c)) fail(std::string("expected ") + what);
  }
  bool eat_word(std::string_view w) {
    skip_ws();
    if (s.substr(pos, w.size()) != w || pos + w.size() > end) return false;
    if (pos + w.size() < end && is_alnum(s[pos + w.size()])) return false;
    pos += w.size();
    return true;
  }
  [[noreturn]] void fail(const std::string& message) const { throw ParseError(message, pos); }

  unsigned long read_uint(const char* what) {
    skip_ws();
    std::size_t start = pos;
    while (pos < end && is_digit(s[pos])) ++pos;
    if (start == pos) fail(std::string("expected ") + what);
    if (pos - start > 9) {
      pos = start;
      fail("integer too large");
    }
    return std::stoul(std::string(s.substr(start, pos - start)));
  }

  // Unsigned rational literal: 12, 3/4, 0.25, 1.5e-3. Returns nullopt when
  // the cursor does not sit on a digit or '.'.
  std::optional<Rational> read_number() {
    skip_ws();
    std::size_t start = pos;
    if (!(is_digit(peek_raw()) || (peek_raw() == '.' && is_digit(peek_raw(1))))) return std::nullopt;
    while (pos < end && is_digit(s[pos])) ++pos;
    bool decimal = false;
    if (pos < end && s[pos] == '.') {
      decimal = true;
      ++pos;
      while (pos < end && is_digit(s[pos])) ++pos;
    }
    if (pos < end && (s[pos] == 'e' || s[pos] == 'E')) {
      std::size_t k = pos + 1;
      if (k < end && (s[k] == '+' || s[k] == '-')) ++k;
      if (k < end && is_digit(s[k])) {
        pos = k;
        while (pos < end && is_digit(s[pos])) ++pos;
        decimal = true;
      }
    }
    if (!decimal && pos < end && s[pos] == '/' && pos + 1 < end && is_digit(s[pos + 1])) {
      ++pos;
      while (pos < end && is_digit(s[pos])) ++pos;
    }
    try {
      return parse_rational(s.substr(start, pos - start));
    } catch (const std::invalid_argument& e) {
      pos = start;
      fail(e.what());
    }
  }
};

// ---------------------------------------------------------------- mixed

// Signed complex literal inside parentheses.
ComplexRational read_complex(Cursor& c) {
  Rational sign = 1;
  if (c.eat('-')) {
    sign = -1;
  } else {
    c.eat('+');
  }
  ComplexRational value;
  auto first = c.read_number();
  auto eat_i = [&c]() {
    std::size_t save = c.pos;
    c.eat('*');
    if (c.peek() == 'i' && !is_alnum(c.peek_raw(1))) {
      ++c.pos;
      return true;
    }
    c.pos = save;
    return false;
  };
  if (first) {
    if (eat_i()) return ComplexRational(0, sign * *first);
    value.re = sign * *first;
  } else if (eat_i()) {
    return ComplexRational(0, sign);
  } else {
    c.fail("expected a complex number");
  }
  char op = c.peek();
  if (op != '+' && op != '-') return value;
  ++c.pos;
  Rational im = 1;
  if (auto mag = c.read_number()) im = *mag;
  if (!eat_i()) c.fail("expected 'i' in the imaginary part");
  value.im = op == '-' ? Rational(-im) : im;
  return value;
}

std::optional<ComplexRational> read_coefficient(Cursor& c) {
  if (c.peek() == '(') {
    ++c.pos;
    ComplexRational v = read_complex(c);
    c.expect(')', "')' after coefficient");
    return v;
  }
  if (auto r = c.read_number()) {
    std::size_t save = c.pos;
    c.eat('*');
    if (c.peek() == 'i' && !is_alnum(c.peek_raw(1))) {
      ++c.pos;
      return ComplexRational(0, *r);
    }
    c.pos = save;
    return ComplexRational(*r, 0);
  }
  if (c.peek() == 'i' && !is_alnum(c.peek_raw(1))) {
    ++c.pos;
    return ComplexRational(0, 1);
  }
  return std::nullopt;
}

struct Factor {
  int var;
  int a;
  int b;
};

std::optional<Factor> read_factor(Cursor& c) {
  c.skip_ws();
  bool conj_form = false;
  if (c.eat_word("conj")) {
    conj_form = true;
    c.expect('(', "'(' after conj");
  }
  if (c.peek() != 'z') {
    if (conj_form) c.fail("expected zK inside conj(...)");
    return std::nullopt;
  }
  ++c.pos;
  if (!is_digit(c.peek_raw())) c.fail("expected a variable index after 'z'");
  std::size_t index_pos = c.pos;
  unsigned long idx = c.read_uint("variable index");
  if (idx == 0) throw ParseError("variable indices start at 1", index_pos);
  bool conj = conj_form;
  if (conj_form) {
    c.expect(')', "')' closing conj(...)");
  } else if (c.peek_raw() == '~') {
    ++c.pos;
    conj = true;
  }
  unsigned long e = 1;
  if (c.eat('^')) e = c.read_uint("integer exponent after '^'");
  Factor f{static_cast<int>(idx), 0, 0};
  (conj ? f.b : f.a) = static_cast<int>(e);
  return f;
}

int read_vars_directive(Cursor& c) {
  c.expect('=', "'=' after vars");
  std::size_t at = c.pos;
  unsigned long n = c.read_uint("variable count after vars=");
  if (n == 0) throw ParseError("vars must be at least 1", at);
  return static_cast<int>(n);
}

// ----------------------------------------------------------------- real map

class RealMapParser {
 public:
  RealMapParser(Cursor& c, const std::map<std::string, std::size_t>& vars)
      : c_(c), vars_(vars), nv_(vars.size()) {}

  RealPolynomial expr() {
    RealPolynomial acc(nv_);
    bool negate = false;
    if (c_.eat('-')) {
      negate = true;
    } else {
      c_.eat('+');
    }
    acc = term();
    if (negate) acc = -acc;
    for (;;) {
      char op = c_.peek();
      if (op != '+' && op != '-') break;
      ++c_.pos;
      RealPolynomial t = term();
      acc = op == '+' ? acc + t : acc - t;
    }
    return acc;
  }

 private:
  bool starts_factor() {
    char ch = c_.peek();
    return is_digit(ch) || ch == '.' || is_alpha(ch) || ch == '(';
  }

  RealPolynomial term() {
    RealPolynomial acc = power();
    for (;;) {
      char ch = c_.peek();
      if (ch == '*') {
        ++c_.pos;
        acc = acc * power();
      } else if (ch == '/') {
        ++c_.pos;
        std::size_t at = c_.pos;
        RealPolynomial d = power();
        if (d.total_degree() != 0) throw ParseError("division is only allowed by a constant", at);
        if (d.is_zero()) throw ParseError("division by zero", at);
        Rational inv = 1 / d.terms().begin()->second;
        acc = inv * acc;
      } else if (starts_factor()) {
        acc = acc * power();
      } else {
        break;
      }
    }
    return acc;
  }

  RealPolynomial power() {
    if (c_.eat('-')) return -power();
    RealPolynomial base = primary();
    if (c_.eat('^')) {
      if (c_.peek() == '-') c_.fail("exponents must be non-negative integers");
      unsigned long e = c_.read_uint("integer exponent after '^'");
      base = base.pow(static_cast<unsigned>(e));
    }
    return base;
  }

  RealPolynomial primary() {
    if (auto r = c_.read_number()) return RealPolynomial::constant(nv_, *r);
    char ch = c_.peek();
    if (ch == '(') {
      ++c_.pos;
      RealPolynomial inner = expr();
      c_.expect(')', "')'");
      return inner;
    }
    if (is_alpha(ch)) {
      std::size_t start = c_.pos;
      while (c_.pos < c_.end && is_alnum(c_.s[c_.pos])) ++c_.pos;
      std::string name(c_.s.substr(start, c_.pos - start));
      auto it = vars_.find(name);
      if (it == vars_.end()) throw ParseError("unknown variable '" + name + "'", start);
      return RealPolynomial::variable(nv_, it->second);
    }
    if (ch == '\0') c_.fail("unexpected end of expression");
    c_.fail(std::string("unexpected character '") + ch + "'");
  }

  Cursor& c_;
  const std::map<std::string, std::size_t>& vars_;
  std::size_t nv_;
};

std::string coefficient_text(const ComplexRational& c, bool first) {
  // Returns the leading " + " / " - " joiner (or sign for the first term)
  // followed by the coefficient, with a trailing space when non-empty.
  auto joiner = [first](bool negative) -> std::string {
    if (first) return negative ? "-" : "";
    return negative ? " - " : " + ";
  };
  if (sgn(c.im) == 0) {
    bool neg = sgn(c.re) < 0;
    Rational mag = abs(c.re);
    return joiner(neg) + (mag == 1 ? "" : to_string(mag) + " ");
  }
  if (sgn(c.re) == 0) {
    bool neg = sgn(c.im) < 0;
    Rational mag = abs(c.im);
    return joiner(neg) + (mag == 1 ? "i " : to_string(mag) + "i ");
  }
  return joiner(false) + "(" + to_string(c) + ") ";
}

}  // namespace

DiagonalMixedPolynomial parse_mixed(std::string_view text) {
  Cursor c(text);
  if (c.at_end()) throw ParseError("empty polynomial", 0);

  int declared_n = 0;
  if (c.eat_word("vars")) {
    declared_n = read_vars_directive(c);
    if (!c.eat(';') && !c.eat(',')) c.fail("expected ';' after vars=N");
  }

  std::vector<MixedTerm> terms;
  std::set<int> seen;
  int max_index = 0;
  bool first = true;
  for (;;) {
    std::size_t term_start = (c.skip_ws(), c.pos);
    Rational sign = 1;
    if (c.eat('-')) {
      sign = -1;
    } else if (c.eat('+')) {
      if (first) c.fail("unexpected '+'");
    } else if (!first) {
      break;
    }
    if (!first) term_start = (c.skip_ws(), c.pos);

    ComplexRational coeff(1, 0);
    if (auto k = read_coefficient(c)) coeff = *k;
    coeff = ComplexRational(sign * coeff.re, sign * coeff.im);

    std::optional<Factor> acc;
    std::size_t factor_pos = 0;
    for (;;) {
      bool star = c.eat('*');
      c.skip_ws();
      std::size_t at = c.pos;
      auto f = read_factor(c);
      if (!f) {
        if (star || !acc) c.fail("expected a factor zK, zK~ or conj(zK)");
        break;
      }
      if (!acc) {
        acc = *f;
        factor_pos = at;
      } else if (acc->var != f->var) {
        throw ParseError("non-diagonal term mixes z" + std::to_string(acc->var) + " and z" +
                             std::to_string(f->var),
                         at);
      } else {
        acc->a += f->a;
        acc->b += f->b;
      }
    }
    if (coeff.is_zero()) throw ParseError("zero coefficient", term_start);
    if (acc->a + acc->b == 0) throw ParseError("term has total degree a + b = 0", factor_pos);
    if (!seen.insert(acc->var).second) {
      throw ParseError("duplicate term for variable z" + std::to_string(acc->var), term_start);
    }
    max_index = std::max(max_index, acc->var);
    terms.push_back({acc->var, coeff, acc->a, acc->b});
    first = false;
  }

  if ((c.peek() == ';' || c.peek() == ',') && declared_n == 0) {
    std::size_t save = c.pos;
    ++c.pos;
    if (c.eat_word("vars")) {
      declared_n = read_vars_directive(c);
    } else {
      c.pos = save;
    }
  }
  if (!c.at_end()) c.fail(std::string("unexpected character '") + c.peek() + "'");
  if (declared_n != 0 && declared_n < max_index) {
    throw ParseError("vars=" + std::to_string(declared_n) + " is smaller than the largest index z" +
                         std::to_string(max_index),
                     0);
  }
  return DiagonalMixedPolynomial(declared_n ? declared_n : max_index, std::move(terms));
}

bool looks_like_real_map(std::string_view text) {
  for (std::size_t k = text.find("vars"); k != std::string_view::npos; k = text.find("vars", k + 1)) {
    if (k > 0 && is_alnum(text[k - 1])) continue;
    std::size_t j = k + 4;
    if (j < text.size() && is_alnum(text[j])) continue;
    while (j < text.size() && std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    if (j < text.size() && text[j] == '=') continue;
    return true;
  }
  return false;
}

RealPolynomialMap parse_real_map(std::string_view text) {
  Cursor c(text);
  c.expect('(', "'(' opening the component tuple");
  std::size_t body_start = c.pos;

  // Locate the matching ')' so the variable list is known before the body.
  int depth = 1;
  std::size_t close = body_start;
  for (; close < text.size() && depth > 0; ++close) {
    if (text[close] == '(') ++depth;
    if (text[close] == ')') --depth;
  }
  if (depth != 0) throw ParseError("unbalanced parentheses", text.size());
  --close;

  Cursor tail(text);
  tail.pos = close + 1;
  if (!tail.eat_word("vars")) tail.fail("expected 'vars' after the component tuple");
  std::vector<std::string> names;
  std::map<std::string, std::size_t> index;
  do {
    tail.skip_ws();
    std::size_t start = tail.pos;
    if (!is_alpha(tail.peek_raw())) tail.fail("expected a variable name");
    while (tail.pos < tail.end && is_alnum(tail.s[tail.pos])) ++tail.pos;
    std::string name(text.substr(start, tail.pos - start));
    if (name == "vars") throw ParseError("'vars' cannot be a variable name", start);
    if (!index.emplace(name, names.size()).second) {
      throw ParseError("variable '" + name + "' declared twice", start);
    }
    names.push_back(std::move(name));
  } while (tail.eat(','));
  if (!tail.at_end()) tail.fail(std::string("unexpected character '") + tail.peek() + "'");

  c.end = close;
  std::vector<RealPolynomial> components;
  RealMapParser parser(c, index);
  do {
    if (c.peek() == ',' || c.at_end()) c.fail("empty component");
    components.push_back(parser.expr());
  } while (c.eat(','));
  if (!c.at_end()) c.fail(std::string("unexpected character '") + c.peek() + "'");
  return RealPolynomialMap(std::move(names), std::move(components));
}

std::string render(const DiagonalMixedPolynomial& psi) {
  std::ostringstream os;
  bool first = true;
  int max_index = 0;
  for (const auto& t : psi.terms()) {
    os << coefficient_text(t.coeff, first);
    first = false;
    std::vector<std::string> factors;
    const std::string z = "z" + std::to_string(t.var);
    if (t.a > 0) factors.push_back(t.a == 1 ? z : z + "^" + std::to_string(t.a));
    if (t.b > 0) factors.push_back(t.b == 1 ? z + "~" : z + "~^" + std::to_string(t.b));
    for (std::size_t k = 0; k < factors.size(); ++k) os << (k ? " " : "") << factors[k];
    max_index = std::max(max_index, t.var);
  }
  if (psi.terms().empty() || max_index < psi.n()) {
    if (psi.terms().empty()) throw std::invalid_argument("cannot render a polynomial without terms");
    os << "; vars=" << psi.n();
  }
  return os.str();
}

}  // namespace milnor
