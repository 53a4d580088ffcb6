#include "milnor/transversality.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "milnor/sampling.h"
#include "milnor/structure.h"

namespace milnor {

namespace {

RealPoint to_sphere(const RealPoint& x, double epsilon) { return x * (epsilon / x.norm()); }

RealPoint tangent_part(const RealPoint& g, const RealPoint& x) { return g - (g.dot(x) / x.squaredNorm()) * x; }

double sigma_at(const RealPolynomialMap& f, const RealPoint& x) { return dependence_measure(tangency_matrix(f, x)); }

// Rows scaled to unit length; zero rows stay zero.
Eigen::MatrixXd normalized_rows(Eigen::MatrixXd m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    const double nrm = m.row(i).norm();
    if (nrm > 0.0) m.row(i) /= nrm;
  }
  return m;
}

// Central differences of sigma^2, projected to the tangent space of the
// sphere through x. sigma^2 stays smooth where sigma itself has a kink.
RealPoint sigma2_gradient(const RealPolynomialMap& f, const RealPoint& x, double h) {
  RealPoint g(x.size());
  RealPoint y = x;
  for (Eigen::Index k = 0; k < x.size(); ++k) {
    y[k] = x[k] + h;
    double up = sigma_at(f, y);
    y[k] = x[k] - h;
    double down = sigma_at(f, y);
    y[k] = x[k];
    g[k] = (up * up - down * down) / (2 * h);
  }
  return tangent_part(g, x);
}

bool is_regular(const RealPolynomialMap& f, const RealPoint& x, const Tolerances& tol) {
  return regularity(f, x) >= tol.regular;
}

// Projected gradient descent with Armijo backtracking on sigma^2.
RealPoint descend_sigma(const RealPolynomialMap& f, RealPoint x, double epsilon, int iterations) {
  const double h = 1e-7 * epsilon;
  double s = sigma_at(f, x);
  double F = s * s;
  double alpha = 0.05 * epsilon;
  for (int it = 0; it < iterations && F > 1e-12; ++it) {
    RealPoint g = sigma2_gradient(f, x, h);
    double gn = g.norm();
    if (gn == 0.0 || !std::isfinite(gn)) break;
    bool accepted = false;
    while (alpha > 1e-14 * epsilon) {
      RealPoint xt = to_sphere(x - (alpha / gn) * g, epsilon);
      double st = sigma_at(f, xt);
      if (st * st <= F - 1e-4 * alpha * gn) {
        x = xt;
        F = st * st;
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!accepted) break;
    alpha = std::min(2 * alpha, 0.25 * epsilon);
  }
  return x;
}

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  auto mid = v.begin() + v.size() / 2;
  std::nth_element(v.begin(), mid, v.end());
  double m = *mid;
  if (v.size() % 2 == 0) m = 0.5 * (m + *std::max_element(v.begin(), mid));
  return m;
}

struct Descent {
  std::vector<TangencyWitness> sequence;
  double min_f = 0.0;
  TangencyWitness best;
};

// Moves along the tangency locus decreasing |f|: a projected gradient step
// on |f|^2 followed by a polish back onto the locus.
Descent descend_f(const RealPolynomialMap& f, const TangencyWitness& start, double epsilon, int iterations,
                  const Tolerances& tol) {
  Descent d;
  d.sequence.push_back(start);
  d.min_f = start.f_norm;
  d.best = start;
  RealPoint x = start.x;
  double fn = start.f_norm;
  double last_snapshot = fn;
  double alpha = 0.05 * epsilon;
  for (int it = 0; it < iterations && last_snapshot >= tol.v; ++it) {
    Eigen::VectorXd fv = f.evaluate(x);
    RealPoint g = tangent_part(2.0 * f.jacobian(x).transpose() * fv, x);
    double gn = g.norm();
    if (gn == 0.0 || !std::isfinite(gn)) break;
    bool accepted = false;
    while (alpha > 1e-16 * epsilon) {
      RealPoint xt = polish_tangency(f, to_sphere(x - (alpha / gn) * g, epsilon), epsilon);
      double ft = f.evaluate(xt).norm();
      bool ok = sigma_at(f, xt) < tol.tangency && is_regular(f, xt, tol) && ft * ft <= fn * fn - 1e-4 * alpha * gn &&
                ft >= fn / 100.0;
      if (ok) {
        x = xt;
        fn = ft;
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!accepted) break;
    alpha = std::min(2 * alpha, 0.25 * epsilon);
    if (fn < d.min_f) {
      d.min_f = fn;
      d.best = make_witness(f, x, epsilon);
    }
    if (fn <= last_snapshot / 10.0) {
      d.sequence.push_back(make_witness(f, x, epsilon));
      last_snapshot = fn;
    }
  }
  return d;
}

}  // namespace

Eigen::MatrixXd tangency_matrix(const RealPolynomialMap& f, const RealPoint& x) {
  const auto p = static_cast<Eigen::Index>(f.p());
  Eigen::MatrixXd m(p + 1, static_cast<Eigen::Index>(f.n()));
  m.topRows(p) = f.jacobian(x);
  m.row(p) = x.transpose();
  return m;
}

double dependence_measure(const Eigen::MatrixXd& m) {
  if (m.rows() > m.cols()) return 0.0;
  Eigen::MatrixXd u = m;
  for (Eigen::Index i = 0; i < u.rows(); ++i) {
    double nrm = u.row(i).norm();
    if (nrm == 0.0) return 0.0;
    u.row(i) /= nrm;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(u);
  return svd.singularValues()(u.rows() - 1);
}

double regularity(const RealPolynomialMap& f, const RealPoint& x) { return dependence_measure(f.jacobian(x)); }

TangencyWitness make_witness(const RealPolynomialMap& f, const RealPoint& x, double epsilon) {
  TangencyWitness w;
  w.x = x;
  w.epsilon = epsilon;
  w.sigma = sigma_at(f, x);
  Eigen::VectorXd fv = f.evaluate(x);
  w.f_norm = fv.norm();
  Eigen::MatrixXd J = f.jacobian(x);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(J, Eigen::ComputeThinU | Eigen::ComputeThinV);
  w.dist_to_V = svd.solve(fv).norm();
  return w;
}

RealPoint polish_tangency(const RealPolynomialMap& f, const RealPoint& x0, double epsilon, int max_iter) {
  const double h = 1e-7 * epsilon;
  const auto n = static_cast<Eigen::Index>(f.n());
  RealPoint x = to_sphere(x0, epsilon);
  Eigen::MatrixXd m = normalized_rows(tangency_matrix(f, x));
  const Eigen::Index rows = m.rows();
  if (rows > n || !m.allFinite()) return x;
  // Gauss-Newton on r(x, u) = M(x)^T u with |x| = epsilon and |u| = 1, where M
  // is the row-normalized tangency matrix; sigma(x) = min over u of |r|.
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullU);
  Eigen::VectorXd u = svd.matrixU().col(rows - 1);
  auto residual = [&](const RealPoint& y, const Eigen::VectorXd& v) -> Eigen::VectorXd {
    return normalized_rows(tangency_matrix(f, y)).transpose() * v;
  };
  Eigen::VectorXd r = residual(x, u);
  double merit = r.norm();
  for (int it = 0; it < max_iter && merit >= 1e-13; ++it) {
    Eigen::MatrixXd jac(n, n + rows);
    RealPoint y = x;
    for (Eigen::Index k = 0; k < n; ++k) {
      y[k] = x[k] + h;
      Eigen::VectorXd up = residual(y, u);
      y[k] = x[k] - h;
      Eigen::VectorXd down = residual(y, u);
      y[k] = x[k];
      jac.col(k) = (up - down) / (2 * h);
    }
    jac.rightCols(rows) = normalized_rows(tangency_matrix(f, x)).transpose();
    const RealPoint xh = x / x.norm();
    jac.leftCols(n) -= (jac.leftCols(n) * xh) * xh.transpose();
    jac.rightCols(rows) -= (jac.rightCols(rows) * u) * u.transpose();
    Eigen::JacobiSVD<Eigen::MatrixXd> solver(jac, Eigen::ComputeThinU | Eigen::ComputeThinV);
    solver.setThreshold(1e-10);
    Eigen::VectorXd d = -solver.solve(r);
    if (!d.allFinite()) break;
    const double len = d.head(n).norm();
    if (len > 0.25 * epsilon) d *= 0.25 * epsilon / len;
    bool accepted = false;
    for (int k = 0; k < 30; ++k) {
      RealPoint xt = to_sphere(x + d.head(n), epsilon);
      Eigen::VectorXd ut = (u + d.tail(rows)).normalized();
      Eigen::VectorXd rt = residual(xt, ut);
      if (rt.allFinite() && rt.norm() < merit) {
        x = xt;
        u = ut;
        r = rt;
        merit = rt.norm();
        accepted = true;
        break;
      }
      d *= 0.5;
    }
    if (!accepted) break;
  }
  return x;
}

std::vector<TangencyWitness> search_tangency_locus(const RealPolynomialMap& f, double epsilon,
                                                   const SearchBudget& budget, const Tolerances& tol) {
  if (!(epsilon > 0)) throw std::invalid_argument("epsilon must be positive");
  std::vector<TangencyWitness> found;
  if (budget.seeds <= 0) return found;
  const int n = static_cast<int>(f.n());
  for (const auto& seed : sphere_points(n, epsilon, budget.seeds, budget.rng_seed)) {
    RealPoint x = descend_sigma(f, seed, epsilon, budget.iterations);
    x = polish_tangency(f, x, epsilon);
    double s = sigma_at(f, x);
    if (!(s < tol.tangency) || !is_regular(f, x, tol)) continue;
    bool duplicate = std::any_of(found.begin(), found.end(), [&x](const auto& w) { return (w.x - x).norm() < 1e-4; });
    if (!duplicate) found.push_back(make_witness(f, x, epsilon));
  }
  return found;
}

TransversalityReport falsify_transversality(const RealPolynomialMap& f, double epsilon, const SearchBudget& budget,
                                            const Tolerances& tol) {
  TransversalityReport r;
  r.epsilon = epsilon;
  r.budget = budget;
  r.tolerances = tol;

  std::vector<double> norms;
  for (const auto& x : sphere_points(static_cast<int>(f.n()), epsilon, budget.scale_samples, budget.rng_seed + 1)) {
    norms.push_back(f.evaluate(x).norm());
  }
  r.f_scale = median(norms);
  r.margin = tol.margin ? *tol.margin : tol.margin_factor * r.f_scale;
  r.notes.push_back("verdicts are relative to the sampling budget, not proofs");

  auto locus = search_tangency_locus(f, epsilon, budget, tol);
  r.locus_size = static_cast<int>(locus.size());
  if (locus.empty()) {
    r.verdict = TransversalityVerdict::Inconclusive;
    r.notes.push_back("no regular tangency point found within the budget");
    return r;
  }
  std::sort(locus.begin(), locus.end(), [](const auto& a, const auto& b) { return a.f_norm < b.f_norm; });

  TangencyWitness best = locus.front();
  const int starts = std::min<int>(budget.descent_starts, static_cast<int>(locus.size()));
  for (int k = 0; k < starts; ++k) {
    Descent d = descend_f(f, locus[k], epsilon, budget.iterations, tol);
    if (d.min_f < best.f_norm) best = d.best;
    if (d.sequence.size() >= 3 && d.sequence.back().f_norm < tol.v) {
      r.verdict = TransversalityVerdict::FailsWithWitness;
      r.witnesses = d.sequence;
      r.min_f_norm = d.sequence.back().f_norm;
      return r;
    }
  }
  r.min_f_norm = best.f_norm;
  r.witnesses = {best};
  if (best.f_norm > r.margin) {
    r.verdict = TransversalityVerdict::HoldsAtBudget;
  } else {
    r.verdict = TransversalityVerdict::Inconclusive;
    r.notes.push_back("tangency points come within the margin of V but no convergent sequence was found");
  }
  r.notes.push_back("the margin test stands in for the existence of delta(epsilon); flat cases are not covered");
  return r;
}

double special_family_minor(const DiagonalMixedPolynomial& psi, int j, const RealPoint& x, bool use_y) {
  auto sf = match_special_family(psi);
  if (!sf) throw std::invalid_argument("polynomial is not in the special family");
  if (j < 1 || j > psi.n() || j == sf->last) throw std::invalid_argument("index must be a critical index");
  if (x.size() != 2 * psi.n()) throw std::invalid_argument("point dimension mismatch");
  const int aj = psi.term(j)->a;
  const double xn = x[2 * (sf->last - 1)], yn = x[2 * (sf->last - 1) + 1];
  const double xj = x[2 * (j - 1)], yj = x[2 * (j - 1) + 1];
  const double rho2 = xn * xn + yn * yn;
  const double rj = std::pow(xj * xj + yj * yj, aj - 1);
  const double cn = sf->c[sf->last - 1], cj = sf->c[j - 1];
  const double q = use_y ? yj : xj;
  return sf->form * q * cn * rho2 * (3 * cn * rho2 - 2 * cj * aj * rj * xn);
}

ClaimCheck special_family_claim_check(const DiagonalMixedPolynomial& psi, int samples, std::uint64_t rng_seed) {
  auto sf = match_special_family(psi);
  if (!sf) throw std::invalid_argument("polynomial is not in the special family");
  const double cn = sf->c[sf->last - 1];
  std::vector<int> same, opposite;
  for (const auto& t : psi.terms()) {
    if (t.var == sf->last) continue;
    (sf->c[t.var - 1] * cn > 0 ? same : opposite).push_back(t.var);
  }
  ClaimCheck out;
  if (same.empty() || opposite.empty()) {
    out.vacuous = true;
    return out;
  }
  std::mt19937_64 rng(rng_seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  out.min_cross_residual = INFINITY;
  auto branch_term = [&](int j, double xj, double yj) {
    const int aj = psi.term(j)->a;
    return 2 * sf->c[j - 1] * aj * std::pow(xj * xj + yj * yj, aj - 1);
  };
  for (int s = 0; s < samples; ++s) {
    for (int pass = 0; pass < 2; ++pass) {
      const auto& from = pass == 0 ? same : opposite;
      const auto& to = pass == 0 ? opposite : same;
      int j = from[s % from.size()];
      int k = to[s % to.size()];
      double xj = unit(rng), yj = unit(rng), xk = unit(rng), yk = unit(rng), yn = 0.3 * unit(rng);
      // 3 c_n (x_n^2 + y_n^2) = B x_n, solved for x_n.
      double B = branch_term(j, xj, yj);
      double disc = B * B - 36 * cn * cn * yn * yn;
      if (disc < 0) continue;
      for (double root : {(B + std::sqrt(disc)) / (6 * cn), (B - std::sqrt(disc)) / (6 * cn)}) {
        if (root == 0.0) continue;
        ++out.branch_samples;
        double expected = sf->c[j - 1] * cn > 0 ? 1.0 : -1.0;
        if ((root > 0 ? 1.0 : -1.0) != expected) ++out.sign_violations;
        double rho2 = root * root + yn * yn;
        double lhs = 3 * cn * rho2;
        double cross = std::abs(lhs - branch_term(k, xk, yk) * root) / std::abs(lhs);
        out.min_cross_residual = std::min(out.min_cross_residual, cross);
      }
    }
  }
  out.passed = out.sign_violations == 0 && out.branch_samples > 0 && out.min_cross_residual > 1e-9;
  return out;
}

std::string to_string(TransversalityVerdict v) {
  switch (v) {
    case TransversalityVerdict::FailsWithWitness:
      return "FailsWithWitness";
    case TransversalityVerdict::HoldsAtBudget:
      return "HoldsAtBudget";
    case TransversalityVerdict::Inconclusive:
      return "Inconclusive";
  }
  return "Inconclusive";
}

}  // namespace milnor
