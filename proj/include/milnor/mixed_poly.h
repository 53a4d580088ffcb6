#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "milnor/rational.h"
#include "milnor/real_poly.h"

namespace milnor {

using Complex = std::complex<double>;
// z_j = x_j + i y_j; the real view interleaves (x_1, y_1, ..., x_n, y_n).
using ComplexPoint = std::vector<Complex>;

// One summand coeff * z_var^a * conj(z_var)^b.
struct MixedTerm {
  int var = 1;  // 1-based
  ComplexRational coeff;
  int a = 0;
  int b = 0;

  friend bool operator==(const MixedTerm&, const MixedTerm&) = default;
};

// psi(z) = sum_j lambda_j z_j^{a_j} conj(z_j)^{b_j}, at most one term per
// variable. Variables without a term are allowed and contribute nothing.
class DiagonalMixedPolynomial {
 public:
  // Throws std::invalid_argument on: n < 1, index out of range, repeated
  // index, zero coefficient, negative exponent, a + b == 0.
  DiagonalMixedPolynomial(int n, std::vector<MixedTerm> terms);

  int n() const { return n_; }
  const std::vector<MixedTerm>& terms() const { return terms_; }  // sorted by var
  const MixedTerm* term(int var) const;
  Complex coefficient(int var) const;  // 0 when the variable has no term

  friend bool operator==(const DiagonalMixedPolynomial& x, const DiagonalMixedPolynomial& y) {
    return x.n_ == y.n_ && x.terms_ == y.terms_;
  }

 private:
  int n_;
  std::vector<MixedTerm> terms_;
  std::vector<Complex> coeffs_;  // double copy indexed by var - 1
};

Complex eval_mixed(const DiagonalMixedPolynomial& psi, const ComplexPoint& z);

struct WirtingerGradient {
  std::vector<Complex> dz;     // d psi / d z_j
  std::vector<Complex> dzbar;  // d psi / d conj(z_j)
};

WirtingerGradient wirtinger(const DiagonalMixedPolynomial& psi, const ComplexPoint& z);

// 2 x 2n matrix; rows grad Re(psi), grad Im(psi) in (x_1, y_1, ..., x_n, y_n).
Eigen::MatrixXd real_jacobian(const DiagonalMixedPolynomial& psi, const ComplexPoint& z);

// Exact binomial expansion into (Re psi, Im psi) over x1,y1,...,xn,yn.
RealPolynomialMap to_real_map(const DiagonalMixedPolynomial& psi);

ComplexPoint to_complex_point(const RealPoint& x);
RealPoint to_real_point(const ComplexPoint& z);

// The polynomial with every (lambda_j, a_j, b_j) replaced by
// (conj(lambda_j), b_j, a_j); it evaluates to conj(psi(z)).
DiagonalMixedPolynomial conjugate(const DiagonalMixedPolynomial& psi);

// Multiplies every coefficient by the same nonzero constant.
DiagonalMixedPolynomial scaled(const DiagonalMixedPolynomial& psi, const ComplexRational& factor);

}  // namespace milnor
