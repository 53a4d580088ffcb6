#pragma once

#include <optional>
#include <string>
#include <vector>

#include "milnor/mixed_poly.h"
#include "milnor/rational.h"

namespace milnor {

// One equivalence class of colinear critical indices. Every member satisfies
// lambda_j = scale_j * lambda_rep exactly, where rep is the smallest index of
// the class, so scale_rep = 1. mu_j = scale_j * |lambda_rep| and
// lambda_j = mu_j e^{i theta}.
struct ColinearClass {
  std::vector<int> indices;  // ascending
  int representative = 0;
  ComplexRational direction;   // lambda_rep; the exact (alpha, beta) pair
  double theta = 0.0;          // arg(lambda_rep) in [0, 2 pi)
  std::vector<Rational> scale;  // parallel to indices
  std::vector<double> mu;       // parallel to indices
  bool all_same_argument = true;
};

struct CriticalIndexPartition {
  std::vector<int> critical;  // {j : a_j = b_j}, ascending
  std::vector<ColinearClass> classes;
};

// Sigma_J: z_j free for j in J, every other coordinate zero.
struct CriticalSubspace {
  std::vector<int> free_indices;
  int real_dimension = 0;
};

struct CriticalSetDescription {
  std::vector<CriticalSubspace> subspaces;
  bool origin_only = false;
  std::string note;
};

enum class ComponentKind { Ray, FullLine };

struct DiscriminantComponent {
  ComplexRational direction;  // spans the line; a ray points this way
  double theta = 0.0;
  ComponentKind kind = ComponentKind::Ray;
  std::vector<int> source_class;
};

struct DiscriminantGeometry {
  std::vector<DiscriminantComponent> components;
  bool origin_only = false;
  bool has_complete_line = false;
  std::string note;
};

struct RadialWeights {
  long a = 1;
  std::vector<long> p;
};

enum class VerdictKind { Submersion, IsolatedCriticalPoint, FibrationMainTheorem, FibrationSpecialCase, Undetermined };

struct VerdictPreconditions {
  int critical_count = 0;
  int n = 0;
  bool within_hypothesis = false;      // 0 < |C| < n
  bool exponents_positive = false;     // a_j, b_j > 0 for all j
  bool all_variables_present = false;
  bool condition_i = false;            // Delta has no complete line (derived)
  bool condition_ii = false;           // every class has one argument
  bool special_pattern = false;
};

struct FibrationVerdict {
  VerdictKind kind = VerdictKind::Undetermined;
  std::vector<std::string> reasons;
  VerdictPreconditions preconditions;
};

// psi = e^{i theta} (sum_{j != last} c_j |z_j|^{2 a_j} + c_last w) with
// w = z^2 conj(z) (form +1) or z conj(z)^2 (form -1) in the last variable.
struct SpecialFamily {
  int last = 0;                 // the only non-critical index
  int form = 1;
  std::vector<double> c;        // signed real coefficient per variable, 0-based
  ComplexRational direction;    // common line of all coefficients
};

struct SigmaCapVCertificate {
  bool applicable = false;
  bool trivial = false;
  std::string note;
  struct ClassSigns {
    std::vector<int> indices;
    std::vector<int> signs;  // sign of mu_j
    bool all_same_argument = true;
  };
  std::vector<ClassSigns> classes;
  // A nonzero point of Sigma_psi on V when the intersection is not trivial.
  std::optional<ComplexPoint> witness;
};

struct StructureReport {
  DiagonalMixedPolynomial psi;
  CriticalIndexPartition partition;
  CriticalSetDescription critical_set;
  DiscriminantGeometry discriminant;
  std::optional<RadialWeights> radial_weights;
  std::string radial_weights_error;
  FibrationVerdict verdict;
  SigmaCapVCertificate sigma_cap_v;
};

std::vector<int> critical_indices(const DiagonalMixedPolynomial& psi);
CriticalIndexPartition colinearity_classes(const DiagonalMixedPolynomial& psi);
CriticalSetDescription critical_set(const DiagonalMixedPolynomial& psi);
DiscriminantGeometry discriminant(const DiagonalMixedPolynomial& psi);
// Throws std::domain_error("weight undefined ...") when a variable has no term.
RadialWeights radial_weights(const DiagonalMixedPolynomial& psi);
FibrationVerdict fibration_verdict(const DiagonalMixedPolynomial& psi);
SigmaCapVCertificate sigma_cap_V_trivial(const DiagonalMixedPolynomial& psi);
// Matches the one-non-critical-index family; the non-critical index may sit
// at any position.
std::optional<SpecialFamily> match_special_family(const DiagonalMixedPolynomial& psi);
StructureReport analyze_structure(const DiagonalMixedPolynomial& psi);

std::string to_string(VerdictKind kind);
std::string to_string(ComponentKind kind);

}  // namespace milnor
