#include "milnor/fiber.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "milnor/sampling.h"
#include "milnor/transversality.h"

namespace milnor {

namespace {

struct DisjointSets {
  std::vector<int> parent;
  explicit DisjointSets(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int i) {
    while (parent[i] != i) {
      parent[i] = parent[parent[i]];
      i = parent[i];
    }
    return i;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

// A fiber point within solver resolution of the critical set: a residual of
// tol only pins a quadratic zero down to about sqrt(tol), where the smallest
// singular value of the Jacobian is of the same order.
bool near_critical(const RealPolynomialMap& f, const RealPoint& x, double tol) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(f.jacobian(x));
  const auto& sv = svd.singularValues();
  return sv.size() < static_cast<Eigen::Index>(f.p()) || sv[sv.size() - 1] < 10.0 * std::sqrt(tol);
}

}  // namespace

NewtonResult newton_to_fiber(const RealPolynomialMap& f, const Eigen::VectorXd& c, const RealPoint& seed, double tol,
                             int max_iter) {
  if (f.p() > f.n()) throw std::invalid_argument("newton_to_fiber needs p <= n");
  if (static_cast<std::size_t>(c.size()) != f.p()) throw std::invalid_argument("target has the wrong dimension");
  NewtonResult r;
  r.x = seed;
  Eigen::VectorXd res = f.evaluate(r.x) - c;
  r.residual = res.norm();
  while (r.residual >= tol && r.iterations < max_iter) {
    Eigen::MatrixXd J = f.jacobian(r.x);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(J, Eigen::ComputeThinU | Eigen::ComputeThinV);
    Eigen::VectorXd step = svd.solve(res);
    if (!step.allFinite() || step.norm() == 0.0) break;
    // Damped when the full step increases the residual.
    double lambda = 1.0;
    bool improved = false;
    for (int k = 0; k < 12; ++k, lambda *= 0.5) {
      RealPoint xt = r.x - lambda * step;
      Eigen::VectorXd rt = f.evaluate(xt) - c;
      if (rt.norm() < r.residual) {
        r.x = xt;
        res = rt;
        r.residual = rt.norm();
        improved = true;
        break;
      }
    }
    ++r.iterations;
    if (!improved || r.x.norm() > 1e8) break;
  }
  r.converged = r.residual < tol && r.x.allFinite();
  return r;
}

int count_components(const std::vector<RealPoint>& points, double radius, std::vector<int>* labels) {
  const int n = static_cast<int>(points.size());
  DisjointSets ds(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if ((points[i] - points[j]).norm() <= radius) ds.unite(i, j);
    }
  }
  std::vector<int> root_label(n, -1);
  int count = 0;
  if (labels) labels->assign(n, -1);
  for (int i = 0; i < n; ++i) {
    int root = ds.find(i);
    if (root_label[root] < 0) root_label[root] = count++;
    if (labels) (*labels)[i] = root_label[root];
  }
  return count;
}

double default_linkage_radius(const std::vector<RealPoint>& points) {
  const std::size_t n = points.size();
  if (n < 2) return 0.0;
  std::vector<double> nn(n, std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double d = (points[i] - points[j]).norm();
      nn[i] = std::min(nn[i], d);
      nn[j] = std::min(nn[j], d);
    }
  }
  auto mid = nn.begin() + n / 2;
  std::nth_element(nn.begin(), mid, nn.end());
  return 3.0 * *mid;
}

namespace {

// Projects points along the segment p -> q onto the fiber. Succeeds when
// each projection stays within `radius` of its target and of the previous
// chain point, and the last one reaches q.
bool bridge(const RealPolynomialMap& f, const Eigen::VectorXd& c, const RealPoint& p, const RealPoint& q,
            double radius, double epsilon, double tol, std::vector<FiberPoint>& chain) {
  const double len = (q - p).norm();
  const int steps = static_cast<int>(std::ceil(len / (0.5 * radius)));
  RealPoint prev = p;
  for (int k = 1; k < steps; ++k) {
    RealPoint target = p + (q - p) * (static_cast<double>(k) / steps);
    NewtonResult nr = newton_to_fiber(f, c, target, tol);
    if (!nr.converged || nr.x.norm() > epsilon) return false;
    if ((nr.x - target).norm() > radius || (nr.x - prev).norm() > radius) return false;
    chain.push_back({nr.x, nr.residual, near_critical(f, nr.x, tol), true});
    prev = nr.x;
  }
  return (q - prev).norm() <= radius;
}

}  // namespace

FiberSample sample_fiber(const RealPolynomialMap& f, const Eigen::VectorXd& c, double epsilon, int count,
                         std::uint64_t rng_seed, double tol) {
  if (!(epsilon > 0)) throw std::invalid_argument("epsilon must be positive");
  if (count < 1) throw std::invalid_argument("seed count must be at least 1");
  FiberSample s;
  s.target = c;
  s.epsilon = epsilon;
  s.seeds = count;
  s.rng_seed = rng_seed;
  s.tol = tol;
  std::vector<RealPoint> cloud;
  for (const auto& seed : ball_points(static_cast<int>(f.n()), epsilon, count, rng_seed)) {
    NewtonResult nr = newton_to_fiber(f, c, seed, tol);
    if (!nr.converged || nr.x.norm() > epsilon) continue;
    s.points.push_back({nr.x, nr.residual, near_critical(f, nr.x, tol), false});
    cloud.push_back(nr.x);
  }
  s.linkage_radius = default_linkage_radius(cloud);
  s.component_count = count_components(cloud, s.linkage_radius, &s.labels);

  // Densify across gaps, one attempt per cluster and round.
  constexpr int kMaxBridgePoints = 200000;
  for (int round = 0; round < 64 && s.component_count > 1 && s.linkage_radius > 0; ++round) {
    const int k = s.component_count;
    std::vector<double> best(k, std::numeric_limits<double>::infinity());
    std::vector<std::pair<int, int>> pair(k, {-1, -1});
    for (std::size_t i = 0; i < cloud.size(); ++i) {
      for (std::size_t j = i + 1; j < cloud.size(); ++j) {
        int a = s.labels[i], b = s.labels[j];
        if (a == b) continue;
        double d = (cloud[i] - cloud[j]).norm();
        if (d < best[a]) best[a] = d, pair[a] = {static_cast<int>(i), static_cast<int>(j)};
        if (d < best[b]) best[b] = d, pair[b] = {static_cast<int>(j), static_cast<int>(i)};
      }
    }
    DisjointSets merged(k);
    bool progress = false;
    for (int a = 0; a < k && s.bridge_points < kMaxBridgePoints; ++a) {
      auto [i, j] = pair[a];
      if (i < 0 || merged.find(s.labels[i]) == merged.find(s.labels[j])) continue;
      std::vector<FiberPoint> chain;
      if (!bridge(f, c, cloud[i], cloud[j], s.linkage_radius, epsilon, tol, chain)) continue;
      merged.unite(s.labels[i], s.labels[j]);
      progress = true;
      s.bridge_points += static_cast<int>(chain.size());
      for (auto& fp : chain) {
        cloud.push_back(fp.x);
        s.points.push_back(std::move(fp));
      }
    }
    if (!progress) break;
    s.component_count = count_components(cloud, s.linkage_radius, &s.labels);
  }

  for (const auto& fp : s.points) {
    if (!(fp.residual < tol)) throw std::logic_error("fiber point violates its residual bound");
    s.max_residual = std::max(s.max_residual, fp.residual);
  }
  s.count_reliable = s.points.size() >= 10;
  return s;
}

ComplexPoint rplus_flow(const RadialWeights& w, double t, const ComplexPoint& z) {
  if (!(t > 0)) throw std::invalid_argument("flow parameter t must be positive");
  if (w.p.size() != z.size()) throw std::invalid_argument("weights and point have different dimensions");
  ComplexPoint out(z.size());
  for (std::size_t j = 0; j < z.size(); ++j) out[j] = z[j] * std::pow(t, static_cast<double>(w.p[j]));
  return out;
}

Inflation inflate_to_sphere(const RadialWeights& w, const ComplexPoint& z, double epsilon) {
  if (!(epsilon > 0)) throw std::invalid_argument("epsilon must be positive");
  if (w.p.size() != z.size()) throw std::invalid_argument("weights and point have different dimensions");
  double total = 0.0;
  for (const auto& zj : z) total += std::norm(zj);
  if (total == 0.0) throw std::invalid_argument("cannot inflate the origin");

  // g(s) = log(sum_j e^{2 p_j s} |z_j|^2) - 2 log(epsilon), increasing and
  // convex in s = log t.
  const double target = 2 * std::log(epsilon);
  auto eval = [&](double s, double* deriv) {
    double sum = 0.0, dsum = 0.0;
    for (std::size_t j = 0; j < z.size(); ++j) {
      double m = std::norm(z[j]);
      if (m == 0.0) continue;
      double e = std::exp(2.0 * w.p[j] * s) * m;
      sum += e;
      dsum += 2.0 * w.p[j] * e;
    }
    if (deriv) *deriv = dsum / sum;
    return std::log(sum) - target;
  };
  double lo = -1.0, hi = 1.0;
  while (eval(lo, nullptr) > 0) lo *= 2;
  while (eval(hi, nullptr) < 0) hi *= 2;
  double s = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    double d = 0.0;
    double g = eval(s, &d);
    if (std::abs(g) < 1e-15) break;
    (g > 0 ? hi : lo) = s;
    double next = s - g / d;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (next == s) break;
    s = next;
  }
  Inflation out;
  out.t = std::exp(s);
  out.z = rplus_flow(w, out.t, z);
  return out;
}

Complex phase(const DiagonalMixedPolynomial& psi, const ComplexPoint& z) {
  Complex v = eval_mixed(psi, z);
  double m = std::abs(v);
  if (m <= 1e-12) throw std::domain_error("phase undefined on W or V: |psi(z)| <= 1e-12");
  return v / m;
}

FiberStats fiber_stats(const FiberSample& s) {
  FiberStats st;
  st.component_count = s.component_count;
  st.count_reliable = s.count_reliable;
  st.point_count = static_cast<int>(s.points.size());
  st.max_residual = s.max_residual;
  st.linkage_radius = s.linkage_radius;
  if (s.points.empty()) return st;
  const auto dim = s.points.front().x.size();
  Eigen::VectorXd lo = Eigen::VectorXd::Constant(dim, std::numeric_limits<double>::infinity());
  Eigen::VectorXd hi = -lo;
  for (const auto& p : s.points) {
    double nrm = p.x.norm();
    st.mean_norm += nrm;
    st.max_norm = std::max(st.max_norm, nrm);
    lo = lo.cwiseMin(p.x);
    hi = hi.cwiseMax(p.x);
  }
  st.mean_norm /= static_cast<double>(s.points.size());
  for (Eigen::Index k = 0; k < dim; ++k) st.extent.push_back(hi[k] - lo[k]);
  return st;
}

FiberComparison fiber_compare(const RealPolynomialMap& f, const Eigen::VectorXd& c1, const Eigen::VectorXd& c2,
                              double epsilon, int count, std::uint64_t rng_seed) {
  FiberComparison cmp;
  cmp.first = sample_fiber(f, c1, epsilon, count, rng_seed);
  cmp.second = sample_fiber(f, c2, epsilon, count, rng_seed);
  cmp.first_stats = fiber_stats(cmp.first);
  cmp.second_stats = fiber_stats(cmp.second);
  cmp.same_component_count = cmp.first.component_count == cmp.second.component_count;
  return cmp;
}

}  // namespace milnor
