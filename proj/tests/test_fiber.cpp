#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "generators.h"
#include "milnor/fiber.h"
#include "milnor/parse.h"

using namespace milnor;

namespace {

const char* kFirstMap = "(x*y + z^2, x) vars x,y,z";
const char* kG = "z1 z1~ + z2^2 z2~";

Eigen::VectorXd vec(std::initializer_list<double> v) {
  Eigen::VectorXd x(v.size());
  int k = 0;
  for (double d : v) x[k++] = d;
  return x;
}

// Components of {x = c2, c2 y + z^2 = c1} inside the ball of radius eps.
int first_map_oracle(double c1, double c2, double eps) {
  const double r2 = eps * eps - c2 * c2;
  return testgen::grid_flood_fill(
      2, -eps, eps, 240, [&](const double* p) { return c2 * p[0] + p[1] * p[1] - c1; },
      [&](const double* p) { return p[0] * p[0] + p[1] * p[1] <= r2; });
}

// Components of {x1^2 + y1^2 + x2^3 = c, y2 = 0} inside the ball of radius eps.
int surface_oracle(double c, double eps) {
  return testgen::grid_flood_fill(
      3, -eps, eps, 60, [&](const double* p) { return p[0] * p[0] + p[1] * p[1] + p[2] * p[2] * p[2] - c; },
      [&](const double* p) { return p[0] * p[0] + p[1] * p[1] + p[2] * p[2] <= eps * eps; });
}

}  // namespace

TEST_CASE("grid oracles") {
  CHECK(first_map_oracle(1, 0, 3) == 2);
  CHECK(first_map_oracle(0, 1, 3) == 1);
  for (double c : {1.0, 0.0, -1.0}) CHECK(surface_oracle(c, 2) == 1);
  // Sanity: two separate circles.
  CHECK(testgen::grid_flood_fill(
            2, -3, 3, 120, [](const double* p) { return std::min(std::hypot(p[0] - 1.5, p[1]), std::hypot(p[0] + 1.5, p[1])) - 0.5; },
            [](const double*) { return true; }) == 2);
}

TEST_CASE("newton_to_fiber examples") {
  auto f = parse_real_map(kFirstMap);
  auto r = newton_to_fiber(f, vec({1, 0}), vec({0.1, 1.0, 1.1}));
  REQUIRE(r.converged);
  CHECK(std::abs(r.x[0]) < 1e-10);
  CHECK(std::abs(std::abs(r.x[2]) - 1) < 1e-9);
  CHECK(r.residual < 1e-10);

  RealPoint seed = vec({0.3, -0.7, 0.2});
  auto same = newton_to_fiber(f, f.evaluate(seed), seed);
  CHECK(same.converged);
  CHECK(same.iterations == 0);
  CHECK(same.x == seed);

  // A critical seed with a regular target: failure or a genuine fiber point.
  auto crit = newton_to_fiber(f, vec({1, 0}), vec({0, 1, 0}));
  if (crit.converged) {
    CHECK((f.evaluate(crit.x) - vec({1, 0})).norm() < 1e-10);
  } else {
    CHECK(crit.residual >= 1e-10);
  }

  CHECK_THROWS_AS(newton_to_fiber(parse_real_map("(x, y, x*y) vars x,y"), vec({0, 0, 0}), vec({1, 1})),
                  std::invalid_argument);
  CHECK_THROWS_AS(newton_to_fiber(f, vec({1}), seed), std::invalid_argument);
}

TEST_CASE("single linkage counting") {
  std::vector<RealPoint> pts = {vec({0, 0}), vec({0.5, 0}), vec({1, 0}), vec({5, 0}), vec({5.4, 0})};
  std::vector<int> labels;
  CHECK(count_components(pts, 0.6, &labels) == 2);
  CHECK(labels == std::vector<int>{0, 0, 0, 1, 1});
  CHECK(count_components(pts, 10) == 1);
  CHECK(count_components(pts, 0.1) == 5);
  CHECK(default_linkage_radius(pts) == doctest::Approx(3 * 0.5));
  CHECK(default_linkage_radius({vec({0, 0})}) == 0.0);
}

TEST_CASE("fibers of the first example: disconnected then connected") {
  auto f = parse_real_map(kFirstMap);
  auto a = sample_fiber(f, vec({1, 0}), 3, 2000);
  auto b = sample_fiber(f, vec({0, 1}), 3, 2000);
  CHECK(a.count_reliable);
  CHECK(b.count_reliable);
  CHECK(a.component_count == 2);
  CHECK(b.component_count == 1);
  CHECK(a.component_count == first_map_oracle(1, 0, 3));
  CHECK(b.component_count == first_map_oracle(0, 1, 3));
  for (const auto* s : {&a, &b}) {
    CHECK(s->max_residual < 1e-10);
    for (const auto& p : s->points) {
      CHECK(p.x.norm() <= 3.0);
      CHECK(p.residual < 1e-10);
    }
  }
  // The two components of the first fiber are z = 1 and z = -1.
  for (const auto& p : a.points) {
    CHECK(std::abs(p.x[0]) < 1e-9);
    CHECK(std::abs(std::abs(p.x[2]) - 1) < 1e-9);
  }
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    for (std::size_t j = 0; j < a.points.size(); j += 97) {
      CHECK((a.labels[i] == a.labels[j]) == (a.points[i].x[2] * a.points[j].x[2] > 0));
    }
  }
}

TEST_CASE("fibers of g match the grid oracle") {
  auto g = to_real_map(parse_mixed(kG));
  for (double c : {1.0, 0.0, -1.0}) {
    auto s = sample_fiber(g, vec({c, 0}), 2, 2000);
    CHECK(s.count_reliable);
    CHECK(s.component_count == surface_oracle(c, 2));
    for (const auto& p : s.points) {
      CHECK(std::abs(p.x[3] * (p.x[2] * p.x[2] + p.x[3] * p.x[3])) < 1e-9);
      CHECK(std::abs(p.x[0] * p.x[0] + p.x[1] * p.x[1] + std::pow(p.x[2], 3) - c) < 1e-9);
    }
  }
}

TEST_CASE("the critical fiber of the first example is flagged") {
  auto f = parse_real_map(kFirstMap);
  auto s = sample_fiber(f, vec({0, 0}), 3, 300);
  REQUIRE_FALSE(s.points.empty());
  for (const auto& p : s.points) CHECK(p.near_critical);
}

TEST_CASE("unreachable targets give an unreliable count") {
  auto f = parse_real_map(kFirstMap);
  auto s = sample_fiber(f, vec({100, 0}), 1, 100);
  CHECK(s.points.empty());
  CHECK_FALSE(s.count_reliable);
  CHECK_THROWS_AS(sample_fiber(f, vec({1, 0}), 0, 10), std::invalid_argument);
  CHECK_THROWS_AS(sample_fiber(f, vec({1, 0}), 1, 0), std::invalid_argument);
}

TEST_CASE("sampling is deterministic for a fixed seed") {
  auto f = parse_real_map(kFirstMap);
  auto a = sample_fiber(f, vec({0, 1}), 3, 300, 9);
  auto b = sample_fiber(f, vec({0, 1}), 3, 300, 9);
  REQUIRE(a.points.size() == b.points.size());
  for (std::size_t k = 0; k < a.points.size(); ++k) CHECK(a.points[k].x == b.points[k].x);
}

TEST_CASE("rplus flow") {
  auto psi = parse_mixed(kG);
  auto w = radial_weights(psi);
  ComplexPoint z = {Complex(0.3, -0.4), Complex(0.7, 0.2)};
  CHECK(rplus_flow(w, 1.0, z) == z);
  std::mt19937_64 rng(107);
  std::uniform_real_distribution<double> ut(0.0, 3.0);
  for (int k = 0; k < 100; ++k) {
    auto zz = testgen::random_complex_point(rng, 2);
    double t = 3.0 - ut(rng), s = 3.0 - ut(rng);
    Complex v = eval_mixed(psi, zz);
    CHECK(std::abs(eval_mixed(psi, rplus_flow(w, t, zz)) - std::pow(t, 6.0) * v) < 1e-9 * (1 + std::abs(v)));
    auto lhs = rplus_flow(w, s, rplus_flow(w, t, zz));
    auto rhs = rplus_flow(w, s * t, zz);
    for (int j = 0; j < 2; ++j) CHECK(std::abs(lhs[j] - rhs[j]) < 1e-12 * (1 + std::abs(rhs[j])));
  }
  CHECK_THROWS_AS(rplus_flow(w, 0.0, z), std::invalid_argument);
  CHECK_THROWS_AS(rplus_flow(w, 1.0, {z[0]}), std::invalid_argument);
}

TEST_CASE("equivariance on random polynomials") {
  std::mt19937_64 rng(109);
  std::uniform_real_distribution<double> ut(0.0, 3.0);
  for (int trial = 0; trial < 5; ++trial) {
    auto psi = testgen::random_psi(rng, 3);
    auto w = radial_weights(psi);
    for (int k = 0; k < 100; ++k) {
      auto z = testgen::random_complex_point(rng, 3);
      double t = 3.0 - ut(rng);
      Complex v = eval_mixed(psi, z);
      CHECK(std::abs(eval_mixed(psi, rplus_flow(w, t, z)) - std::pow(t, static_cast<double>(w.a)) * v) <=
            1e-9 * (1 + std::abs(v)));
    }
  }
}

TEST_CASE("inflate_to_sphere") {
  // Homogeneous weights: t = eps / |z|.
  RadialWeights hom{2, {1, 1, 1}};
  ComplexPoint z = {Complex(0.1, 0.2), Complex(-0.3, 0), Complex(0, 0.05)};
  double nz = std::sqrt(std::norm(z[0]) + std::norm(z[1]) + std::norm(z[2]));
  auto inf = inflate_to_sphere(hom, z, 1.5);
  CHECK(std::abs(inf.t - 1.5 / nz) < 1e-12);

  // t^6 + t^4 = 1: u = t^2 solves u^3 + u^2 - 1 = 0; bisection oracle.
  auto psi = parse_mixed(kG);
  auto w = radial_weights(psi);
  double lo = 0, hi = 1;
  for (int k = 0; k < 200; ++k) {
    double mid = 0.5 * (lo + hi);
    (mid * mid * mid + mid * mid - 1 > 0 ? hi : lo) = mid;
  }
  auto one = inflate_to_sphere(w, {1.0, 1.0}, 1.0);
  CHECK(std::abs(one.t - std::sqrt(lo)) < 1e-12);
  CHECK(one.t == doctest::Approx(0.868837).epsilon(1e-6));
  double norm = std::sqrt(std::norm(one.z[0]) + std::norm(one.z[1]));
  CHECK(std::abs(norm - 1.0) < 1e-12);

  std::mt19937_64 rng(113);
  for (int k = 0; k < 100; ++k) {
    auto zz = testgen::random_complex_point(rng, 2, 2.0);
    for (double eps : {0.25, 1.0, 3.0}) {
      auto r = inflate_to_sphere(w, zz, eps);
      double nr = std::sqrt(std::norm(r.z[0]) + std::norm(r.z[1]));
      CHECK(std::abs(nr - eps) < 1e-12 * std::max(1.0, eps));
      // Idempotent on the orbit.
      auto again = inflate_to_sphere(w, r.z, eps);
      CHECK(std::abs(again.t - 1.0) < 1e-12);
      // Positive scaling keeps the argument.
      Complex v = eval_mixed(psi, zz);
      if (std::abs(v) > 1e-6) CHECK(std::abs(std::arg(eval_mixed(psi, r.z) / v)) < 1e-9);
    }
  }
  CHECK_THROWS_AS(inflate_to_sphere(w, {0.0, 0.0}, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(inflate_to_sphere(w, {1.0, 0.0}, 0.0), std::invalid_argument);
}

TEST_CASE("phase") {
  auto psi = parse_mixed(kG);
  CHECK(std::abs(phase(psi, {1.0, 0.0}) - Complex(1, 0)) < 1e-15);
  const Complex e = std::polar(1.0, std::numbers::pi / 3);
  CHECK(std::abs(phase(psi, {0.0, e}) - e) < 1e-15);
  CHECK(std::abs(phase(parse_mixed("z1 z1~ + 2 z2^2 z2~"), {Complex(0.5, 0), 0.0}) - Complex(1, 0)) < 1e-15);
  CHECK_THROWS_AS(phase(psi, {0.0, 0.0}), std::domain_error);
  CHECK_THROWS_AS(phase(parse_mixed("z1 z1~ - z2 z2~ + z3^2 z3~"), {1.0, 1.0, 0.0}), std::domain_error);

  auto w = radial_weights(psi);
  std::mt19937_64 rng(127);
  for (int k = 0; k < 100; ++k) {
    auto z = testgen::random_complex_point(rng, 2);
    if (std::abs(eval_mixed(psi, z)) < 1e-6) continue;
    for (double t : {0.2, 1.7, 3.0}) CHECK(std::abs(phase(psi, rplus_flow(w, t, z)) - phase(psi, z)) < 1e-9);
  }
}

TEST_CASE("fiber comparisons") {
  auto g = to_real_map(parse_mixed(kG));
  auto cmp = fiber_compare(g, vec({1, 0}), vec({-1, 0}), 2, 2000);
  CHECK(cmp.first.component_count == 1);
  CHECK(cmp.second.component_count == 1);
  CHECK(cmp.same_component_count);
  CHECK(cmp.first_stats.point_count > 0);
  CHECK(cmp.first_stats.extent.size() == 4);

  auto same = fiber_compare(g, vec({1, 0}), vec({1, 0}), 2, 500);
  CHECK(same.first_stats.point_count == same.second_stats.point_count);
  CHECK(same.first_stats.mean_norm == same.second_stats.mean_norm);
  CHECK(same.first_stats.extent == same.second_stats.extent);

  auto f = parse_real_map(kFirstMap);
  auto ex = fiber_compare(f, vec({1, 0}), vec({0, 1}), 3, 2000);
  CHECK(ex.first.component_count == 2);
  CHECK(ex.second.component_count == 1);
  CHECK_FALSE(ex.same_component_count);
}
