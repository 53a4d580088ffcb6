#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "milnor/mixed_poly.h"
#include "milnor/real_poly.h"

namespace milnor {

struct Tolerances {
  double tangency = 1e-8;   // sigma below this counts as tangent
  double v = 1e-6;          // |f| below this counts as on V
  double regular = 1e-12;   // smallest singular value of the normalized Jacobian
  double margin_factor = 1e-2;
  std::optional<double> margin;  // absolute override of margin_factor * median |f|
};

struct SearchBudget {
  int seeds = 256;
  int iterations = 500;
  std::uint64_t rng_seed = 1;
  int descent_starts = 24;   // locus points used as starts for the |f| descent
  int scale_samples = 1024;  // sphere points behind the median |f| scale
};

struct TangencyWitness {
  RealPoint x;
  double epsilon = 0.0;
  double sigma = 0.0;       // dependence measure of the tangency matrix
  double f_norm = 0.0;
  double dist_to_V = 0.0;   // |J^+ f|, first-order distance estimate
};

enum class TransversalityVerdict { FailsWithWitness, HoldsAtBudget, Inconclusive };

struct TransversalityReport {
  TransversalityVerdict verdict = TransversalityVerdict::Inconclusive;
  double epsilon = 0.0;
  // Fails: the decreasing-f_norm sequence. Holds / Inconclusive: the
  // minimizer of f_norm over the tangency locus, when one was found.
  std::vector<TangencyWitness> witnesses;
  SearchBudget budget;
  Tolerances tolerances;
  double f_scale = 0.0;  // median |f| on the sphere
  double margin = 0.0;
  double min_f_norm = 0.0;
  int locus_size = 0;
  std::vector<std::string> notes;
};

// (p+1) x n matrix with rows grad f_1(x), ..., grad f_p(x), x.
Eigen::MatrixXd tangency_matrix(const RealPolynomialMap& f, const RealPoint& x);

// Smallest singular value after scaling every row to unit length. Zero when
// a row vanishes or when there are more rows than columns.
double dependence_measure(const Eigen::MatrixXd& m);

// Dependence measure of the Jacobian rows alone; small values mark Sigma_f.
double regularity(const RealPolynomialMap& f, const RealPoint& x);

TangencyWitness make_witness(const RealPolynomialMap& f, const RealPoint& x, double epsilon);

// Multistart minimization of the dependence measure on the sphere of radius
// epsilon. Returns regular points with sigma < tol.tangency, deduplicated at
// distance 1e-4.
std::vector<TangencyWitness> search_tangency_locus(const RealPolynomialMap& f, double epsilon,
                                                   const SearchBudget& budget, const Tolerances& tol = {});

// Drives a point near the tangency locus onto it by Gauss-Newton steps on
// sigma, staying on the sphere.
RealPoint polish_tangency(const RealPolynomialMap& f, const RealPoint& x, double epsilon, int max_iter = 60);

TransversalityReport falsify_transversality(const RealPolynomialMap& f, double epsilon, const SearchBudget& budget,
                                            const Tolerances& tol = {});

// Closed-form |C(q_j) C(x_n) C(y_n)| of the tangency matrix of the special
// family, with q_j = x_j (use_y = false) or y_j, and n the non-critical index.
// Throws std::invalid_argument when psi is not in the family or j = n.
double special_family_minor(const DiagonalMixedPolynomial& psi, int j, const RealPoint& x, bool use_y = false);

struct ClaimCheck {
  bool passed = true;
  bool vacuous = false;      // only one sign block
  int branch_samples = 0;    // samples that solved some branch equation
  int sign_violations = 0;   // branch solutions with x_n of the wrong sign
  double min_cross_residual = 0.0;  // smallest relative residual in the other block's equation
};

// Samples the tangency branch equations 3 c_n rho^2 = 2 c_j a_j R_j x_n for
// indices of both sign blocks and checks that no sample solves one equation
// from each block.
ClaimCheck special_family_claim_check(const DiagonalMixedPolynomial& psi, int samples, std::uint64_t rng_seed = 1);

std::string to_string(TransversalityVerdict v);

}  // namespace milnor
