#pragma once

#include <complex>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace milnor {

// GMP keeps mpq_class canonical after every arithmetic operation: reduced,
// with a positive denominator. Values built from strings must be
// canonicalized explicitly; parse_rational does that.
using Rational = mpq_class;

// Accepts "7", "-3/4", "0.125", "2.5e-3". Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& q);
double to_double(const Rational& q);

struct ComplexRational {
  Rational re;
  Rational im;

  ComplexRational() = default;
  ComplexRational(Rational r, Rational i = 0) : re(std::move(r)), im(std::move(i)) {}

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
  ComplexRational conj() const { return {re, -im}; }
  std::complex<double> to_complex() const { return {to_double(re), to_double(im)}; }

  friend ComplexRational operator+(const ComplexRational& x, const ComplexRational& y) {
    return {x.re + y.re, x.im + y.im};
  }
  friend ComplexRational operator-(const ComplexRational& x, const ComplexRational& y) {
    return {x.re - y.re, x.im - y.im};
  }
  friend ComplexRational operator*(const ComplexRational& x, const ComplexRational& y) {
    return {x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re};
  }
  friend bool operator==(const ComplexRational& x, const ComplexRational& y) {
    return x.re == y.re && x.im == y.im;
  }
};

// "1+i", "-2", "3/2i", "-i" style; the inverse of the complex literal grammar.
std::string to_string(const ComplexRational& c);

// Exact colinearity test for two complex numbers as vectors in R^2:
// re(x) im(y) == im(x) re(y).
inline bool colinear(const ComplexRational& x, const ComplexRational& y) {
  return x.re * y.im == x.im * y.re;
}

}  // namespace milnor
