#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "milnor/mixed_poly.h"
#include "milnor/real_poly.h"
#include "milnor/structure.h"

namespace milnor {

struct NewtonResult {
  bool converged = false;
  RealPoint x;
  int iterations = 0;
  double residual = 0.0;
};

// Gauss-Newton with the minimum-norm pseudo-inverse of the Jacobian.
// Converged when |f(x) - c| < tol. Stalls and divergence return
// converged = false; the point is never reported as a fiber point then.
NewtonResult newton_to_fiber(const RealPolynomialMap& f, const Eigen::VectorXd& c, const RealPoint& seed,
                             double tol = 1e-10, int max_iter = 100);

struct FiberPoint {
  RealPoint x;
  double residual = 0.0;
  bool near_critical = false;  // smallest singular value of the Jacobian below 10 sqrt(tol)
  bool bridge = false;         // added while densifying gaps between clusters
};

struct FiberSample {
  Eigen::VectorXd target;
  double epsilon = 0.0;
  std::vector<FiberPoint> points;
  std::vector<int> labels;  // component label per point
  double max_residual = 0.0;
  int component_count = 0;
  double linkage_radius = 0.0;
  bool count_reliable = false;
  int bridge_points = 0;
  int seeds = 0;
  std::uint64_t rng_seed = 0;
  double tol = 1e-10;
};

// Single-linkage clustering at the given radius. Returns the number of
// clusters and fills labels (0-based, in order of first appearance).
int count_components(const std::vector<RealPoint>& points, double radius, std::vector<int>* labels = nullptr);

// 3 x the median nearest-neighbour distance; 0 for fewer than two points.
double default_linkage_radius(const std::vector<RealPoint>& points);

// Seeds Newton from quasi-random points of the ball, keeps converged points
// inside it and clusters them by single linkage. Gaps between clusters are
// then probed: points along the segment joining the closest pair of two
// clusters are projected onto the fiber, and when every projection lands
// within the linkage radius of its predecessor the chain is added to the
// cloud. The count is single linkage of the enlarged cloud.
FiberSample sample_fiber(const RealPolynomialMap& f, const Eigen::VectorXd& c, double epsilon, int count,
                         std::uint64_t rng_seed = 1, double tol = 1e-10);

// t . z = (t^{p_1} z_1, ..., t^{p_n} z_n).
ComplexPoint rplus_flow(const RadialWeights& w, double t, const ComplexPoint& z);

struct Inflation {
  double t = 1.0;
  ComplexPoint z;
};

// The unique t > 0 with |t . z| = epsilon. Throws std::invalid_argument for z = 0.
Inflation inflate_to_sphere(const RadialWeights& w, const ComplexPoint& z, double epsilon);

// psi(z) / |psi(z)|. Throws std::domain_error when |psi(z)| <= 1e-12.
Complex phase(const DiagonalMixedPolynomial& psi, const ComplexPoint& z);

struct FiberStats {
  int component_count = 0;
  bool count_reliable = false;
  int point_count = 0;
  double mean_norm = 0.0;
  double max_norm = 0.0;
  double max_residual = 0.0;
  double linkage_radius = 0.0;
  std::vector<double> extent;  // bounding-box side length per coordinate
};

FiberStats fiber_stats(const FiberSample& s);

struct FiberComparison {
  FiberSample first;
  FiberSample second;
  FiberStats first_stats;
  FiberStats second_stats;
  bool same_component_count = false;
};

FiberComparison fiber_compare(const RealPolynomialMap& f, const Eigen::VectorXd& c1, const Eigen::VectorXd& c2,
                              double epsilon, int count, std::uint64_t rng_seed = 1);

}  // namespace milnor
