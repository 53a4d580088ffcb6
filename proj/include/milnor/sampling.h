#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace milnor {

// Radical inverse of `index` in the given prime base.
double radical_inverse(std::uint64_t index, unsigned base);

// Scrambled Halton sequence in [0,1)^dim: a Cranley-Patterson rotation of
// the plain sequence, with the shift drawn from a 64-bit Mersenne twister.
class HaltonSequence {
 public:
  HaltonSequence(int dim, std::uint64_t rng_seed);

  int dim() const { return dim_; }
  // Point number `index` (0-based). Coordinates are strictly inside (0,1).
  Eigen::VectorXd point(std::uint64_t index) const;

 private:
  int dim_;
  std::vector<unsigned> bases_;
  std::vector<double> shift_;
};

// Quasi-uniform points on the sphere of radius `radius` in R^dim, built from
// Halton points through the Gaussian quantile.
std::vector<Eigen::VectorXd> sphere_points(int dim, double radius, int count, std::uint64_t rng_seed);

// Quasi-uniform points in the closed ball of radius `radius` in R^dim.
std::vector<Eigen::VectorXd> ball_points(int dim, double radius, int count, std::uint64_t rng_seed);

}  // namespace milnor
