#pragma once

// Random inputs and independent oracles shared by the tests.

#include <cmath>
#include <complex>
#include <functional>
#include <queue>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "milnor/mixed_poly.h"
#include "milnor/real_poly.h"

namespace testgen {

using milnor::ComplexPoint;
using milnor::ComplexRational;
using milnor::DiagonalMixedPolynomial;
using milnor::MixedTerm;
using milnor::Rational;
using milnor::RealPoint;

inline Rational small_rational(std::mt19937_64& rng, bool nonzero = false) {
  std::uniform_int_distribution<int> num(-4, 4), den(1, 3);
  for (;;) {
    Rational q(num(rng), den(rng));
    q.canonicalize();
    if (!nonzero || sgn(q) != 0) return q;
  }
}

inline ComplexRational small_complex(std::mt19937_64& rng) {
  for (;;) {
    ComplexRational c(small_rational(rng), small_rational(rng));
    if (!c.is_zero()) return c;
  }
}

// Every variable gets a term; total degrees from {1,2,3,4,6} keep the radial
// degree at most 12.
inline DiagonalMixedPolynomial random_psi(std::mt19937_64& rng, int n) {
  static const int degrees[] = {1, 2, 3, 4, 6};
  std::uniform_int_distribution<int> pick(0, 4);
  std::vector<MixedTerm> terms;
  for (int j = 1; j <= n; ++j) {
    int d = degrees[pick(rng)];
    int a = std::uniform_int_distribution<int>(0, d)(rng);
    terms.push_back({j, small_complex(rng), a, d - a});
  }
  return DiagonalMixedPolynomial(n, terms);
}

// Several critical indices sharing two lines through 0, plus non-critical
// terms of degree 2 or 3; gives nontrivial colinearity classes.
inline DiagonalMixedPolynomial random_classified_psi(std::mt19937_64& rng, int n) {
  std::vector<ComplexRational> lines = {small_complex(rng), small_complex(rng)};
  std::vector<MixedTerm> terms;
  for (int j = 1; j <= n; ++j) {
    bool critical = j < n && std::uniform_int_distribution<int>(0, 3)(rng) != 0;
    if (critical) {
      int a = std::uniform_int_distribution<int>(1, 3)(rng);
      const ComplexRational& dir = lines[std::uniform_int_distribution<int>(0, 1)(rng)];
      Rational s = small_rational(rng, true);
      terms.push_back({j, ComplexRational(s * dir.re, s * dir.im), a, a});
    } else {
      static const int shapes[][2] = {{2, 0}, {0, 2}, {2, 1}, {1, 2}, {3, 0}};
      const auto& ab = shapes[std::uniform_int_distribution<int>(0, 4)(rng)];
      terms.push_back({j, small_complex(rng), ab[0], ab[1]});
    }
  }
  return DiagonalMixedPolynomial(n, terms);
}

// Member of the special family: critical indices with coefficients c_j e^{i
// theta}, one z^2 conj(z) or z conj(z)^2 term at a random position.
inline DiagonalMixedPolynomial random_special_psi(std::mt19937_64& rng, int n, bool both_signs = true) {
  ComplexRational dir = small_complex(rng);
  int last = std::uniform_int_distribution<int>(1, n)(rng);
  std::vector<MixedTerm> terms;
  int critical_seen = 0;
  for (int j = 1; j <= n; ++j) {
    Rational s = small_rational(rng, true);
    if (j == last) {
      bool plus = std::uniform_int_distribution<int>(0, 1)(rng) == 0;
      terms.push_back({j, ComplexRational(s * dir.re, s * dir.im), plus ? 2 : 1, plus ? 1 : 2});
      continue;
    }
    ++critical_seen;
    if (both_signs && critical_seen <= 2) s = (critical_seen == 1 ? 1 : -1) * abs(s);
    int a = std::uniform_int_distribution<int>(1, 3)(rng);
    terms.push_back({j, ComplexRational(s * dir.re, s * dir.im), a, a});
  }
  return DiagonalMixedPolynomial(n, terms);
}

inline ComplexPoint random_complex_point(std::mt19937_64& rng, int n, double radius = 1.0) {
  std::uniform_real_distribution<double> u(-radius, radius);
  ComplexPoint z(n);
  for (auto& c : z) c = {u(rng), u(rng)};
  return z;
}

inline RealPoint random_real_point(std::mt19937_64& rng, int n, double radius = 1.0) {
  std::uniform_real_distribution<double> u(-radius, radius);
  RealPoint x(n);
  for (int k = 0; k < n; ++k) x[k] = u(rng);
  return x;
}

inline milnor::RealPolynomialMap random_real_map(std::mt19937_64& rng, int n, int p) {
  std::vector<std::string> names;
  for (int k = 0; k < n; ++k) names.push_back("v" + std::to_string(k + 1));
  std::vector<milnor::RealPolynomial> comps;
  std::uniform_int_distribution<int> terms(1, 5), expo(0, 3);
  for (int i = 0; i < p; ++i) {
    std::map<milnor::Exponents, Rational> t;
    int m = terms(rng);
    for (int k = 0; k < m; ++k) {
      milnor::Exponents e(n);
      for (auto& x : e) x = static_cast<unsigned>(expo(rng));
      t[e] += small_rational(rng, true);
    }
    comps.emplace_back(n, t);
  }
  return milnor::RealPolynomialMap(names, comps);
}

// Central-difference Jacobian of a vector function R^n -> R^p.
inline Eigen::MatrixXd fd_jacobian(const std::function<Eigen::VectorXd(const RealPoint&)>& fn, const RealPoint& x,
                                   double h = 1e-6) {
  Eigen::VectorXd f0 = fn(x);
  Eigen::MatrixXd J(f0.size(), x.size());
  RealPoint y = x;
  for (Eigen::Index k = 0; k < x.size(); ++k) {
    y[k] = x[k] + h;
    Eigen::VectorXd up = fn(y);
    y[k] = x[k] - h;
    Eigen::VectorXd down = fn(y);
    y[k] = x[k];
    J.col(k) = (up - down) / (2 * h);
  }
  return J;
}

// Max-entry relative error used by the gradient checks.
inline double relative_error(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  return (a - b).cwiseAbs().maxCoeff() / std::max(1.0, b.cwiseAbs().maxCoeff());
}

// Connected components of the cells of a regular grid where F changes sign
// (or vanishes) at the cell corners, restricted to cells whose center passes
// `inside`. Cells touching by a face, edge or corner are adjacent.
inline int grid_flood_fill(int dim, double lo, double hi, int cells, const std::function<double(const double*)>& F,
                           const std::function<bool(const double*)>& inside) {
  const double h = (hi - lo) / cells;
  const int corners = cells + 1;
  std::vector<int> strides(dim, 1);
  for (int d = 1; d < dim; ++d) strides[d] = strides[d - 1] * corners;
  long total_corners = 1;
  for (int d = 0; d < dim; ++d) total_corners *= corners;
  std::vector<double> value(total_corners);
  std::vector<int> idx(dim);
  std::vector<double> pt(dim);
  for (long c = 0; c < total_corners; ++c) {
    long r = c;
    for (int d = 0; d < dim; ++d) {
      idx[d] = static_cast<int>(r % corners);
      r /= corners;
      pt[d] = lo + idx[d] * h;
    }
    value[c] = F(pt.data());
  }
  long total_cells = 1;
  for (int d = 0; d < dim; ++d) total_cells *= cells;
  std::vector<char> marked(total_cells, 0);
  for (long c = 0; c < total_cells; ++c) {
    long r = c;
    long base = 0;
    for (int d = 0; d < dim; ++d) {
      idx[d] = static_cast<int>(r % cells);
      r /= cells;
      base += static_cast<long>(idx[d]) * strides[d];
      pt[d] = lo + (idx[d] + 0.5) * h;
    }
    if (!inside(pt.data())) continue;
    bool pos = false, neg = false;
    for (int m = 0; m < (1 << dim); ++m) {
      long off = base;
      for (int d = 0; d < dim; ++d) {
        if (m & (1 << d)) off += strides[d];
      }
      double v = value[off];
      pos = pos || v >= 0;
      neg = neg || v <= 0;
    }
    marked[c] = pos && neg;
  }
  std::vector<int> comp(total_cells, -1);
  int count = 0;
  int neighbours = 1;
  for (int d = 0; d < dim; ++d) neighbours *= 3;
  for (long c = 0; c < total_cells; ++c) {
    if (!marked[c] || comp[c] >= 0) continue;
    std::queue<long> q;
    q.push(c);
    comp[c] = count;
    while (!q.empty()) {
      long cur = q.front();
      q.pop();
      std::vector<int> ci(dim);
      long r = cur;
      for (int d = 0; d < dim; ++d) {
        ci[d] = static_cast<int>(r % cells);
        r /= cells;
      }
      for (int m = 0; m < neighbours; ++m) {
        int mm = m;
        long nb = 0, stride = 1;
        bool ok = true;
        for (int d = 0; d < dim; ++d) {
          int v = ci[d] + (mm % 3) - 1;
          mm /= 3;
          if (v < 0 || v >= cells) ok = false;
          nb += v * stride;
          stride *= cells;
        }
        if (!ok || !marked[nb] || comp[nb] >= 0) continue;
        comp[nb] = count;
        q.push(nb);
      }
    }
    ++count;
  }
  return count;
}

}  // namespace testgen
