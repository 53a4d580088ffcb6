#include "milnor/mixed_poly.h"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace milnor {

namespace {

Complex cpow(Complex base, int e) {
  Complex result = 1.0;
  for (int k = 0; k < e; ++k) result *= base;
  return result;
}

void check_dimension(const DiagonalMixedPolynomial& psi, const ComplexPoint& z) {
  if (static_cast<int>(z.size()) != psi.n()) {
    throw std::invalid_argument("point has " + std::to_string(z.size()) + " coordinates, expected " +
                                std::to_string(psi.n()));
  }
}

mpz_class binomial(unsigned n, unsigned k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

}  // namespace

DiagonalMixedPolynomial::DiagonalMixedPolynomial(int n, std::vector<MixedTerm> terms)
    : n_(n), terms_(std::move(terms)) {
  if (n_ < 1) throw std::invalid_argument("a mixed polynomial needs n >= 1");
  std::sort(terms_.begin(), terms_.end(), [](const auto& x, const auto& y) { return x.var < y.var; });
  coeffs_.assign(n_, Complex(0.0, 0.0));
  for (std::size_t k = 0; k < terms_.size(); ++k) {
    const auto& t = terms_[k];
    if (t.var < 1 || t.var > n_) {
      throw std::invalid_argument("variable index z" + std::to_string(t.var) + " outside 1.." +
                                  std::to_string(n_));
    }
    if (k > 0 && terms_[k - 1].var == t.var) {
      throw std::invalid_argument("duplicate term for variable z" + std::to_string(t.var));
    }
    if (t.coeff.is_zero()) throw std::invalid_argument("zero coefficient on z" + std::to_string(t.var));
    if (t.a < 0 || t.b < 0) throw std::invalid_argument("negative exponent on z" + std::to_string(t.var));
    if (t.a + t.b == 0) throw std::invalid_argument("term on z" + std::to_string(t.var) + " has a + b = 0");
    coeffs_[t.var - 1] = t.coeff.to_complex();
  }
}

const MixedTerm* DiagonalMixedPolynomial::term(int var) const {
  auto it = std::find_if(terms_.begin(), terms_.end(), [var](const auto& t) { return t.var == var; });
  return it == terms_.end() ? nullptr : &*it;
}

Complex DiagonalMixedPolynomial::coefficient(int var) const { return coeffs_.at(var - 1); }

Complex eval_mixed(const DiagonalMixedPolynomial& psi, const ComplexPoint& z) {
  check_dimension(psi, z);
  Complex sum = 0.0;
  for (const auto& t : psi.terms()) {
    const Complex zj = z[t.var - 1];
    sum += psi.coefficient(t.var) * cpow(zj, t.a) * cpow(std::conj(zj), t.b);
  }
  return sum;
}

WirtingerGradient wirtinger(const DiagonalMixedPolynomial& psi, const ComplexPoint& z) {
  check_dimension(psi, z);
  WirtingerGradient g{std::vector<Complex>(psi.n()), std::vector<Complex>(psi.n())};
  for (const auto& t : psi.terms()) {
    const Complex zj = z[t.var - 1];
    const Complex lambda = psi.coefficient(t.var);
    if (t.a > 0) g.dz[t.var - 1] = double(t.a) * lambda * cpow(zj, t.a - 1) * cpow(std::conj(zj), t.b);
    if (t.b > 0) g.dzbar[t.var - 1] = double(t.b) * lambda * cpow(zj, t.a) * cpow(std::conj(zj), t.b - 1);
  }
  return g;
}

Eigen::MatrixXd real_jacobian(const DiagonalMixedPolynomial& psi, const ComplexPoint& z) {
  const auto g = wirtinger(psi, z);
  const Complex I(0.0, 1.0);
  Eigen::MatrixXd J(2, 2 * psi.n());
  for (int j = 0; j < psi.n(); ++j) {
    const Complex dx = g.dz[j] + g.dzbar[j];
    const Complex dy = I * (g.dz[j] - g.dzbar[j]);
    J(0, 2 * j) = dx.real();
    J(1, 2 * j) = dx.imag();
    J(0, 2 * j + 1) = dy.real();
    J(1, 2 * j + 1) = dy.imag();
  }
  return J;
}

RealPolynomialMap to_real_map(const DiagonalMixedPolynomial& psi) {
  const std::size_t nv = 2 * static_cast<std::size_t>(psi.n());
  std::map<Exponents, Rational> re_terms, im_terms;

  for (const auto& t : psi.terms()) {
    const std::size_t xi = 2 * (t.var - 1), yi = xi + 1;
    // (x + iy)^a (x - iy)^b = sum_{k,l} C(a,k) C(b,l) (-1)^l i^{k+l} x^{a+b-k-l} y^{k+l}
    for (int k = 0; k <= t.a; ++k) {
      for (int l = 0; l <= t.b; ++l) {
        Rational c(binomial(t.a, k) * binomial(t.b, l));
        if (l % 2) c = -c;
        const int ipow = (k + l) % 4;  // i^{k+l}
        ComplexRational unit = ipow == 0 ? ComplexRational(1, 0)
                               : ipow == 1 ? ComplexRational(0, 1)
                               : ipow == 2 ? ComplexRational(-1, 0)
                                           : ComplexRational(0, -1);
        ComplexRational term = t.coeff * ComplexRational(c * unit.re, c * unit.im);
        Exponents e(nv, 0);
        e[xi] = static_cast<unsigned>(t.a + t.b - k - l);
        e[yi] = static_cast<unsigned>(k + l);
        re_terms[e] += term.re;
        im_terms[e] += term.im;
      }
    }
  }

  std::vector<std::string> names;
  for (int j = 1; j <= psi.n(); ++j) {
    names.push_back("x" + std::to_string(j));
    names.push_back("y" + std::to_string(j));
  }
  return RealPolynomialMap(std::move(names), {RealPolynomial(nv, std::move(re_terms)),
                                              RealPolynomial(nv, std::move(im_terms))});
}

ComplexPoint to_complex_point(const RealPoint& x) {
  if (x.size() % 2) throw std::invalid_argument("real point must have even length");
  ComplexPoint z(x.size() / 2);
  for (std::size_t j = 0; j < z.size(); ++j) z[j] = Complex(x[2 * j], x[2 * j + 1]);
  return z;
}

RealPoint to_real_point(const ComplexPoint& z) {
  RealPoint x(2 * z.size());
  for (std::size_t j = 0; j < z.size(); ++j) {
    x[2 * j] = z[j].real();
    x[2 * j + 1] = z[j].imag();
  }
  return x;
}

DiagonalMixedPolynomial conjugate(const DiagonalMixedPolynomial& psi) {
  std::vector<MixedTerm> terms;
  for (const auto& t : psi.terms()) terms.push_back({t.var, t.coeff.conj(), t.b, t.a});
  return DiagonalMixedPolynomial(psi.n(), std::move(terms));
}

DiagonalMixedPolynomial scaled(const DiagonalMixedPolynomial& psi, const ComplexRational& factor) {
  if (factor.is_zero()) throw std::invalid_argument("scaling factor must be nonzero");
  std::vector<MixedTerm> terms;
  for (const auto& t : psi.terms()) terms.push_back({t.var, t.coeff * factor, t.a, t.b});
  return DiagonalMixedPolynomial(psi.n(), std::move(terms));
}

}  // namespace milnor
