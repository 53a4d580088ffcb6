#include "milnor/sampling.h"

#include <cmath>
#include <random>
#include <stdexcept>

#include <boost/math/distributions/normal.hpp>

namespace milnor {

namespace {

std::vector<unsigned> first_primes(int count) {
  std::vector<unsigned> primes;
  for (unsigned k = 2; static_cast<int>(primes.size()) < count; ++k) {
    bool prime = true;
    for (unsigned p : primes) {
      if (p * p > k) break;
      if (k % p == 0) {
        prime = false;
        break;
      }
    }
    if (prime) primes.push_back(k);
  }
  return primes;
}

double clamp_open(double u) {
  constexpr double lo = 1e-12;
  return std::min(std::max(u, lo), 1.0 - lo);
}

}  // namespace

double radical_inverse(std::uint64_t index, unsigned base) {
  double result = 0.0;
  double f = 1.0 / base;
  while (index) {
    result += f * static_cast<double>(index % base);
    index /= base;
    f /= base;
  }
  return result;
}

HaltonSequence::HaltonSequence(int dim, std::uint64_t rng_seed) : dim_(dim), bases_(first_primes(dim)) {
  if (dim < 1) throw std::invalid_argument("Halton dimension must be positive");
  std::mt19937_64 rng(rng_seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  shift_.resize(dim);
  for (auto& s : shift_) s = unit(rng);
}

Eigen::VectorXd HaltonSequence::point(std::uint64_t index) const {
  Eigen::VectorXd u(dim_);
  for (int k = 0; k < dim_; ++k) {
    double v = radical_inverse(index + 1, bases_[k]) + shift_[k];
    u[k] = clamp_open(v - std::floor(v));
  }
  return u;
}

std::vector<Eigen::VectorXd> sphere_points(int dim, double radius, int count, std::uint64_t rng_seed) {
  HaltonSequence seq(dim, rng_seed);
  const boost::math::normal_distribution<double> normal;
  std::vector<Eigen::VectorXd> out;
  out.reserve(count);
  for (std::uint64_t k = 0; static_cast<int>(out.size()) < count; ++k) {
    Eigen::VectorXd u = seq.point(k);
    Eigen::VectorXd g(dim);
    for (int j = 0; j < dim; ++j) g[j] = boost::math::quantile(normal, u[j]);
    double norm = g.norm();
    if (norm < 1e-9) continue;
    out.push_back(g * (radius / norm));
  }
  return out;
}

std::vector<Eigen::VectorXd> ball_points(int dim, double radius, int count, std::uint64_t rng_seed) {
  // One extra Halton coordinate drives the radius.
  HaltonSequence seq(dim + 1, rng_seed);
  const boost::math::normal_distribution<double> normal;
  std::vector<Eigen::VectorXd> out;
  out.reserve(count);
  for (std::uint64_t k = 0; static_cast<int>(out.size()) < count; ++k) {
    Eigen::VectorXd u = seq.point(k);
    Eigen::VectorXd g(dim);
    for (int j = 0; j < dim; ++j) g[j] = boost::math::quantile(normal, u[j]);
    double norm = g.norm();
    if (norm < 1e-9) continue;
    double r = radius * std::pow(u[dim], 1.0 / dim);
    out.push_back(g * (r / norm));
  }
  return out;
}

}  // namespace milnor
