#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "milnor/rational.h"

namespace milnor {

using RealPoint = Eigen::VectorXd;
using Exponents = std::vector<unsigned>;

// Sparse multivariate polynomial with exact rational coefficients. Immutable
// once built; a double-precision copy of the terms is kept for evaluation.
class RealPolynomial {
 public:
  explicit RealPolynomial(std::size_t num_vars = 0);
  // Zero coefficients are dropped. Throws std::invalid_argument when an
  // exponent vector does not have num_vars entries.
  RealPolynomial(std::size_t num_vars, std::map<Exponents, Rational> terms);

  static RealPolynomial constant(std::size_t num_vars, const Rational& c);
  static RealPolynomial variable(std::size_t num_vars, std::size_t index);

  std::size_t num_vars() const { return num_vars_; }
  const std::map<Exponents, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  unsigned total_degree() const;
  // Smallest total degree among the stored monomials (0 for the zero polynomial).
  unsigned min_degree() const;

  RealPolynomial derivative(std::size_t var) const;
  RealPolynomial pow(unsigned e) const;

  double evaluate(std::span<const double> x) const;
  Rational evaluate_exact(std::span<const Rational> x) const;

  friend RealPolynomial operator+(const RealPolynomial& a, const RealPolynomial& b);
  friend RealPolynomial operator-(const RealPolynomial& a, const RealPolynomial& b);
  friend RealPolynomial operator*(const RealPolynomial& a, const RealPolynomial& b);
  friend RealPolynomial operator*(const Rational& s, const RealPolynomial& a);
  friend RealPolynomial operator-(const RealPolynomial& a);
  friend bool operator==(const RealPolynomial& a, const RealPolynomial& b) {
    return a.num_vars_ == b.num_vars_ && a.terms_ == b.terms_;
  }

 private:
  void compile();

  std::size_t num_vars_;
  std::map<Exponents, Rational> terms_;
  std::vector<double> coeffs_;
  std::vector<unsigned> flat_exponents_;  // terms x num_vars, row-major
};

// Renders with the given variable names, e.g. "x*y + z^2". Monomials in
// descending graded-lex order.
std::string render(const RealPolynomial& poly, const std::vector<std::string>& var_names);

// f : R^n -> R^p with precomputed symbolic partials.
class RealPolynomialMap {
 public:
  RealPolynomialMap(std::vector<std::string> var_names, std::vector<RealPolynomial> components);

  std::size_t n() const { return var_names_.size(); }
  std::size_t p() const { return components_.size(); }
  const std::vector<std::string>& var_names() const { return var_names_; }
  const std::vector<RealPolynomial>& components() const { return components_; }
  const RealPolynomial& component(std::size_t i) const { return components_[i]; }
  const RealPolynomial& partial(std::size_t i, std::size_t j) const { return partials_[i * n() + j]; }

  Eigen::VectorXd evaluate(const RealPoint& x) const;
  Eigen::MatrixXd jacobian(const RealPoint& x) const;

  friend bool operator==(const RealPolynomialMap& a, const RealPolynomialMap& b) {
    return a.var_names_ == b.var_names_ && a.components_ == b.components_;
  }

 private:
  std::vector<std::string> var_names_;
  std::vector<RealPolynomial> components_;
  std::vector<RealPolynomial> partials_;  // p x n, row-major
};

Eigen::VectorXd eval_map(const RealPolynomialMap& f, const RealPoint& x);
Eigen::MatrixXd grad_map(const RealPolynomialMap& f, const RealPoint& x);

// Symbolic Jacobian entries J(i, j) = d f_i / d x_j.
std::vector<std::vector<RealPolynomial>> symbolic_jacobian(const RealPolynomialMap& f);

// Determinant of a square matrix of polynomials (cofactor expansion; meant
// for the 2x2 / 3x3 minors used in tangency analysis).
RealPolynomial determinant(const std::vector<std::vector<RealPolynomial>>& m);

std::string render(const RealPolynomialMap& f);

}  // namespace milnor
