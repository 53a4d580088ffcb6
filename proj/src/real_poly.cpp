#include "milnor/real_poly.h"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace milnor {

namespace {

unsigned degree_of(const Exponents& e) { return std::accumulate(e.begin(), e.end(), 0u); }

// Descending graded-lex order for rendering.
bool graded_lex_greater(const Exponents& a, const Exponents& b) {
  unsigned da = degree_of(a), db = degree_of(b);
  if (da != db) return da > db;
  return a > b;
}

double ipow(double base, unsigned e) {
  double result = 1.0;
  while (e) {
    if (e & 1u) result *= base;
    base *= base;
    e >>= 1u;
  }
  return result;
}

}  // namespace

RealPolynomial::RealPolynomial(std::size_t num_vars) : num_vars_(num_vars) {}

RealPolynomial::RealPolynomial(std::size_t num_vars, std::map<Exponents, Rational> terms)
    : num_vars_(num_vars) {
  for (auto& [exps, coeff] : terms) {
    if (exps.size() != num_vars) {
      throw std::invalid_argument("exponent vector length does not match variable count");
    }
    if (sgn(coeff) != 0) terms_.emplace(exps, std::move(coeff));
  }
  compile();
}

RealPolynomial RealPolynomial::constant(std::size_t num_vars, const Rational& c) {
  std::map<Exponents, Rational> t;
  t.emplace(Exponents(num_vars, 0), c);
  return RealPolynomial(num_vars, std::move(t));
}

RealPolynomial RealPolynomial::variable(std::size_t num_vars, std::size_t index) {
  if (index >= num_vars) throw std::out_of_range("variable index out of range");
  Exponents e(num_vars, 0);
  e[index] = 1;
  std::map<Exponents, Rational> t;
  t.emplace(std::move(e), Rational(1));
  return RealPolynomial(num_vars, std::move(t));
}

void RealPolynomial::compile() {
  coeffs_.clear();
  flat_exponents_.clear();
  coeffs_.reserve(terms_.size());
  flat_exponents_.reserve(terms_.size() * num_vars_);
  for (const auto& [exps, coeff] : terms_) {
    coeffs_.push_back(to_double(coeff));
    flat_exponents_.insert(flat_exponents_.end(), exps.begin(), exps.end());
  }
}

unsigned RealPolynomial::total_degree() const {
  unsigned d = 0;
  for (const auto& [exps, coeff] : terms_) d = std::max(d, degree_of(exps));
  return d;
}

unsigned RealPolynomial::min_degree() const {
  if (terms_.empty()) return 0;
  unsigned d = ~0u;
  for (const auto& [exps, coeff] : terms_) d = std::min(d, degree_of(exps));
  return d;
}

RealPolynomial RealPolynomial::derivative(std::size_t var) const {
  if (var >= num_vars_) throw std::out_of_range("variable index out of range");
  std::map<Exponents, Rational> out;
  for (const auto& [exps, coeff] : terms_) {
    if (exps[var] == 0) continue;
    Exponents e = exps;
    Rational c = coeff * static_cast<unsigned long>(e[var]);
    --e[var];
    out[e] += c;
  }
  return RealPolynomial(num_vars_, std::move(out));
}

RealPolynomial RealPolynomial::pow(unsigned e) const {
  RealPolynomial result = constant(num_vars_, 1);
  for (unsigned k = 0; k < e; ++k) result = result * *this;
  return result;
}

double RealPolynomial::evaluate(std::span<const double> x) const {
  if (x.size() != num_vars_) throw std::invalid_argument("point dimension mismatch");
  double sum = 0.0;
  const unsigned* e = flat_exponents_.data();
  for (double c : coeffs_) {
    double term = c;
    for (std::size_t v = 0; v < num_vars_; ++v, ++e) {
      if (*e) term *= ipow(x[v], *e);
    }
    sum += term;
  }
  return sum;
}

Rational RealPolynomial::evaluate_exact(std::span<const Rational> x) const {
  if (x.size() != num_vars_) throw std::invalid_argument("point dimension mismatch");
  Rational sum = 0;
  for (const auto& [exps, coeff] : terms_) {
    Rational term = coeff;
    for (std::size_t v = 0; v < num_vars_; ++v) {
      for (unsigned k = 0; k < exps[v]; ++k) term *= x[v];
    }
    sum += term;
  }
  return sum;
}

RealPolynomial operator+(const RealPolynomial& a, const RealPolynomial& b) {
  if (a.num_vars_ != b.num_vars_) throw std::invalid_argument("variable count mismatch");
  auto out = a.terms_;
  for (const auto& [exps, coeff] : b.terms_) out[exps] += coeff;
  return RealPolynomial(a.num_vars_, std::move(out));
}

RealPolynomial operator-(const RealPolynomial& a) { return Rational(-1) * a; }

RealPolynomial operator-(const RealPolynomial& a, const RealPolynomial& b) { return a + (-b); }

RealPolynomial operator*(const RealPolynomial& a, const RealPolynomial& b) {
  if (a.num_vars_ != b.num_vars_) throw std::invalid_argument("variable count mismatch");
  std::map<Exponents, Rational> out;
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      Exponents e(ea.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out[e] += ca * cb;
    }
  }
  return RealPolynomial(a.num_vars_, std::move(out));
}

RealPolynomial operator*(const Rational& s, const RealPolynomial& a) {
  std::map<Exponents, Rational> out;
  for (const auto& [exps, coeff] : a.terms_) out.emplace(exps, s * coeff);
  return RealPolynomial(a.num_vars_, std::move(out));
}

std::string render(const RealPolynomial& poly, const std::vector<std::string>& var_names) {
  if (poly.is_zero()) return "0";
  std::vector<const std::pair<const Exponents, Rational>*> order;
  for (const auto& t : poly.terms()) order.push_back(&t);
  std::sort(order.begin(), order.end(),
            [](auto* x, auto* y) { return graded_lex_greater(x->first, y->first); });

  std::ostringstream os;
  bool first = true;
  for (const auto* t : order) {
    const auto& [exps, coeff] = *t;
    Rational mag = abs(coeff);
    if (first) {
      if (sgn(coeff) < 0) os << '-';
    } else {
      os << (sgn(coeff) < 0 ? " - " : " + ");
    }
    first = false;

    std::vector<std::string> factors;
    for (std::size_t v = 0; v < exps.size(); ++v) {
      if (exps[v] == 0) continue;
      std::string f = var_names.at(v);
      if (exps[v] > 1) f += "^" + std::to_string(exps[v]);
      factors.push_back(std::move(f));
    }
    if (factors.empty() || mag != 1) factors.insert(factors.begin(), to_string(mag));
    for (std::size_t k = 0; k < factors.size(); ++k) {
      if (k) os << '*';
      os << factors[k];
    }
  }
  return os.str();
}

RealPolynomialMap::RealPolynomialMap(std::vector<std::string> var_names,
                                     std::vector<RealPolynomial> components)
    : var_names_(std::move(var_names)), components_(std::move(components)) {
  if (var_names_.empty()) throw std::invalid_argument("map needs at least one variable");
  if (components_.empty()) throw std::invalid_argument("map needs at least one component");
  for (const auto& c : components_) {
    if (c.num_vars() != var_names_.size()) {
      throw std::invalid_argument("component variable count does not match the map");
    }
  }
  partials_.reserve(p() * n());
  for (const auto& c : components_) {
    for (std::size_t j = 0; j < n(); ++j) partials_.push_back(c.derivative(j));
  }
}

Eigen::VectorXd RealPolynomialMap::evaluate(const RealPoint& x) const {
  if (static_cast<std::size_t>(x.size()) != n()) throw std::invalid_argument("point dimension mismatch");
  Eigen::VectorXd out(p());
  std::span<const double> xs(x.data(), n());
  for (std::size_t i = 0; i < p(); ++i) out[i] = components_[i].evaluate(xs);
  return out;
}

Eigen::MatrixXd RealPolynomialMap::jacobian(const RealPoint& x) const {
  if (static_cast<std::size_t>(x.size()) != n()) throw std::invalid_argument("point dimension mismatch");
  Eigen::MatrixXd J(p(), n());
  std::span<const double> xs(x.data(), n());
  for (std::size_t i = 0; i < p(); ++i) {
    for (std::size_t j = 0; j < n(); ++j) J(i, j) = partial(i, j).evaluate(xs);
  }
  return J;
}

Eigen::VectorXd eval_map(const RealPolynomialMap& f, const RealPoint& x) { return f.evaluate(x); }

Eigen::MatrixXd grad_map(const RealPolynomialMap& f, const RealPoint& x) { return f.jacobian(x); }

std::vector<std::vector<RealPolynomial>> symbolic_jacobian(const RealPolynomialMap& f) {
  std::vector<std::vector<RealPolynomial>> J(f.p());
  for (std::size_t i = 0; i < f.p(); ++i) {
    for (std::size_t j = 0; j < f.n(); ++j) J[i].push_back(f.partial(i, j));
  }
  return J;
}

RealPolynomial determinant(const std::vector<std::vector<RealPolynomial>>& m) {
  const std::size_t k = m.size();
  if (k == 0) throw std::invalid_argument("empty matrix");
  for (const auto& row : m) {
    if (row.size() != k) throw std::invalid_argument("determinant needs a square matrix");
  }
  if (k == 1) return m[0][0];
  const std::size_t nv = m[0][0].num_vars();
  RealPolynomial det(nv);
  for (std::size_t col = 0; col < k; ++col) {
    std::vector<std::vector<RealPolynomial>> sub;
    for (std::size_t r = 1; r < k; ++r) {
      std::vector<RealPolynomial> row;
      for (std::size_t c = 0; c < k; ++c) {
        if (c != col) row.push_back(m[r][c]);
      }
      sub.push_back(std::move(row));
    }
    RealPolynomial term = m[0][col] * determinant(sub);
    det = (col % 2 == 0) ? det + term : det - term;
  }
  return det;
}

std::string render(const RealPolynomialMap& f) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < f.p(); ++i) {
    if (i) os << ", ";
    os << render(f.component(i), f.var_names());
  }
  os << ") vars ";
  for (std::size_t j = 0; j < f.n(); ++j) {
    if (j) os << ',';
    os << f.var_names()[j];
  }
  return os.str();
}

}  // namespace milnor
