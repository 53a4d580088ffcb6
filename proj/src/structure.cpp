#include "milnor/structure.h"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace milnor {

namespace {

double angle_of(const ComplexRational& c) {
  double t = std::atan2(to_double(c.im), to_double(c.re));
  if (t < 0) t += 2 * std::numbers::pi;
  return t;
}

double modulus(const ComplexRational& c) { return std::abs(c.to_complex()); }

// lambda = s * dir for colinear lambda, dir; exact.
Rational real_ratio(const ComplexRational& lambda, const ComplexRational& dir) {
  Rational norm2 = dir.re * dir.re + dir.im * dir.im;
  return (lambda.re * dir.re + lambda.im * dir.im) / norm2;
}

bool all_present(const DiagonalMixedPolynomial& psi) {
  return static_cast<int>(psi.terms().size()) == psi.n();
}

std::string join_indices(const std::vector<int>& idx) {
  std::string s = "{";
  for (std::size_t k = 0; k < idx.size(); ++k) s += (k ? "," : "") + std::to_string(idx[k]);
  return s + "}";
}

}  // namespace

std::vector<int> critical_indices(const DiagonalMixedPolynomial& psi) {
  std::vector<int> c;
  for (const auto& t : psi.terms()) {
    if (t.a == t.b) c.push_back(t.var);
  }
  return c;
}

CriticalIndexPartition colinearity_classes(const DiagonalMixedPolynomial& psi) {
  CriticalIndexPartition out;
  out.critical = critical_indices(psi);
  for (int j : out.critical) {
    const ComplexRational& lambda = psi.term(j)->coeff;
    ColinearClass* home = nullptr;
    for (auto& cls : out.classes) {
      if (colinear(cls.direction, lambda)) {
        home = &cls;
        break;
      }
    }
    if (!home) {
      ColinearClass cls;
      cls.representative = j;
      cls.direction = lambda;
      cls.theta = angle_of(lambda);
      out.classes.push_back(std::move(cls));
      home = &out.classes.back();
    }
    Rational s = real_ratio(lambda, home->direction);
    home->indices.push_back(j);
    home->mu.push_back(to_double(s) * modulus(home->direction));
    if (sgn(s) < 0) home->all_same_argument = false;
    home->scale.push_back(std::move(s));
  }
  return out;
}

CriticalSetDescription critical_set(const DiagonalMixedPolynomial& psi) {
  CriticalSetDescription out;
  auto part = colinearity_classes(psi);
  if (part.critical.empty()) {
    out.origin_only = true;
    out.note = "isolated critical point at 0";
    return out;
  }
  if (static_cast<int>(part.critical.size()) == psi.n()) {
    out.note = "outside the hypothesis 0 < |C| < n";
    return out;
  }
  for (const auto& cls : part.classes) {
    out.subspaces.push_back({cls.indices, 2 * static_cast<int>(cls.indices.size())});
  }
  return out;
}

DiscriminantGeometry discriminant(const DiagonalMixedPolynomial& psi) {
  DiscriminantGeometry out;
  auto part = colinearity_classes(psi);
  if (part.critical.empty()) {
    out.origin_only = true;
    out.note = "no critical indices; the discriminant is {0}";
    return out;
  }
  for (const auto& cls : part.classes) {
    DiscriminantComponent comp;
    comp.direction = cls.direction;
    comp.theta = cls.theta;
    comp.kind = cls.all_same_argument ? ComponentKind::Ray : ComponentKind::FullLine;
    comp.source_class = cls.indices;
    if (comp.kind == ComponentKind::FullLine) out.has_complete_line = true;
    out.components.push_back(std::move(comp));
  }
  if (static_cast<int>(part.critical.size()) == psi.n()) {
    out.note = "outside the hypothesis 0 < |C| < n";
  }
  return out;
}

RadialWeights radial_weights(const DiagonalMixedPolynomial& psi) {
  RadialWeights w;
  for (int j = 1; j <= psi.n(); ++j) {
    const MixedTerm* t = psi.term(j);
    if (!t) throw std::domain_error("weight undefined: z" + std::to_string(j) + " has no term");
    w.a = std::lcm(w.a, static_cast<long>(t->a + t->b));
  }
  for (const auto& t : psi.terms()) w.p.push_back(w.a / (t.a + t.b));
  return w;
}

std::optional<SpecialFamily> match_special_family(const DiagonalMixedPolynomial& psi) {
  if (!all_present(psi) || psi.n() < 2) return std::nullopt;
  int last = 0;
  for (const auto& t : psi.terms()) {
    if (t.a == t.b) continue;
    if (last != 0) return std::nullopt;
    last = t.var;
  }
  if (last == 0) return std::nullopt;
  const MixedTerm* tl = psi.term(last);
  int form = 0;
  if (tl->a == 2 && tl->b == 1) form = 1;
  if (tl->a == 1 && tl->b == 2) form = -1;
  if (form == 0) return std::nullopt;

  const ComplexRational dir = psi.terms().front().coeff;
  for (const auto& t : psi.terms()) {
    if (!colinear(dir, t.coeff)) return std::nullopt;
  }
  SpecialFamily sf;
  sf.last = last;
  sf.form = form;
  sf.direction = dir;
  const double m = modulus(dir);
  sf.c.resize(psi.n());
  for (const auto& t : psi.terms()) sf.c[t.var - 1] = to_double(real_ratio(t.coeff, dir)) * m;
  return sf;
}

FibrationVerdict fibration_verdict(const DiagonalMixedPolynomial& psi) {
  FibrationVerdict v;
  auto part = colinearity_classes(psi);
  auto& pc = v.preconditions;
  pc.n = psi.n();
  pc.critical_count = static_cast<int>(part.critical.size());
  pc.within_hypothesis = pc.critical_count > 0 && pc.critical_count < pc.n;
  pc.all_variables_present = all_present(psi);
  pc.exponents_positive = pc.all_variables_present;
  for (const auto& t : psi.terms()) {
    if (t.a == 0 || t.b == 0) pc.exponents_positive = false;
  }
  pc.condition_ii = true;
  for (const auto& cls : part.classes) pc.condition_ii = pc.condition_ii && cls.all_same_argument;
  pc.condition_i = !discriminant(psi).has_complete_line;
  pc.special_pattern = match_special_family(psi).has_value();

  bool submersion = !psi.terms().empty();
  for (const auto& t : psi.terms()) {
    bool linear = (t.a == 0 && t.b == 1) || (t.a == 1 && t.b == 0);
    if (!linear || sgn(t.coeff.re) == 0 || sgn(t.coeff.im) == 0) submersion = false;
  }
  if (submersion) {
    v.kind = VerdictKind::Submersion;
    v.reasons.push_back("every term is lambda z or lambda conj(z) with Re(lambda) and Im(lambda) nonzero");
    return v;
  }
  if (!pc.all_variables_present) {
    v.kind = VerdictKind::Undetermined;
    for (int j = 1; j <= psi.n(); ++j) {
      if (!psi.term(j)) v.reasons.push_back("z" + std::to_string(j) + " has no term; psi is not a sum over all n variables");
    }
    return v;
  }
  if (pc.critical_count == 0) {
    v.kind = VerdictKind::IsolatedCriticalPoint;
    v.reasons.push_back("no critical index (a_j != b_j for all j): isolated critical point at 0");
    return v;
  }
  if (pc.critical_count == pc.n) {
    v.kind = VerdictKind::Undetermined;
    v.reasons.push_back("0 < |C| < n violated: every index is critical");
    return v;
  }
  if (pc.exponents_positive && pc.condition_ii) {
    v.kind = VerdictKind::FibrationMainTheorem;
    v.reasons.push_back("0 < |C| < n holds");
    v.reasons.push_back("all exponents a_j, b_j are positive");
    v.reasons.push_back("condition (ii): every class of colinear critical indices has one argument");
    v.reasons.push_back("condition (i) follows: the discriminant has no complete line");
    return v;
  }
  if (pc.special_pattern) {
    auto sf = match_special_family(psi);
    v.kind = VerdictKind::FibrationSpecialCase;
    v.reasons.push_back("all coefficients lie on one line through 0");
    v.reasons.push_back("the only non-critical index is z" + std::to_string(sf->last) + " with term " +
                        (sf->form > 0 ? "z^2 conj(z)" : "z conj(z)^2"));
    if (!pc.condition_ii) v.reasons.push_back("the discriminant contains a complete line");
    return v;
  }
  v.kind = VerdictKind::Undetermined;
  if (!pc.exponents_positive) v.reasons.push_back("some exponent a_j or b_j is zero");
  for (const auto& cls : part.classes) {
    if (!cls.all_same_argument) {
      v.reasons.push_back("class " + join_indices(cls.indices) +
                          " has coefficients of opposite argument: the discriminant contains a complete line");
    }
  }
  v.reasons.push_back("the special one-non-critical-index pattern does not match");
  return v;
}

SigmaCapVCertificate sigma_cap_V_trivial(const DiagonalMixedPolynomial& psi) {
  SigmaCapVCertificate cert;
  auto part = colinearity_classes(psi);
  const int nc = static_cast<int>(part.critical.size());
  if (nc == psi.n()) {
    cert.note = "not applicable: 0 < |C| < n violated";
    return cert;
  }
  cert.applicable = true;
  if (nc == 0) {
    cert.trivial = true;
    cert.note = "no critical indices: the critical set is {0}";
    return cert;
  }
  cert.trivial = true;
  for (const auto& cls : part.classes) {
    SigmaCapVCertificate::ClassSigns cs;
    cs.indices = cls.indices;
    for (const auto& s : cls.scale) cs.signs.push_back(sgn(s) > 0 ? 1 : -1);
    cs.all_same_argument = cls.all_same_argument;
    cert.classes.push_back(cs);
    if (cls.all_same_argument || cert.witness) {
      cert.trivial = cert.trivial && cls.all_same_argument;
      continue;
    }
    cert.trivial = false;
    // lambda_rep (|z_rep|^{2a_rep} + s_k |z_k|^{2a_k}) = 0 with s_k < 0.
    std::size_t k = 0;
    while (sgn(cls.scale[k]) > 0) ++k;
    const int rep = cls.indices[0];
    const int other = cls.indices[k];
    const double ratio = 1.0 / std::abs(to_double(cls.scale[k]));
    const int ak = psi.term(other)->a;
    ComplexPoint w(psi.n(), Complex(0.0, 0.0));
    w[rep - 1] = 1.0;
    w[other - 1] = std::pow(ratio, 1.0 / (2.0 * ak));
    cert.witness = w;
  }
  cert.note = cert.trivial ? "every class has one argument: psi restricted to each Sigma_J vanishes only at 0"
                           : "a class with coefficients of opposite argument meets V away from 0";
  return cert;
}

StructureReport analyze_structure(const DiagonalMixedPolynomial& psi) {
  StructureReport r{psi,
                    colinearity_classes(psi),
                    critical_set(psi),
                    discriminant(psi),
                    std::nullopt,
                    {},
                    fibration_verdict(psi),
                    sigma_cap_V_trivial(psi)};
  try {
    r.radial_weights = radial_weights(psi);
  } catch (const std::domain_error& e) {
    r.radial_weights_error = e.what();
  }
  return r;
}

std::string to_string(VerdictKind kind) {
  switch (kind) {
    case VerdictKind::Submersion:
      return "Submersion";
    case VerdictKind::IsolatedCriticalPoint:
      return "IsolatedCriticalPoint";
    case VerdictKind::FibrationMainTheorem:
      return "FibrationMainTheorem";
    case VerdictKind::FibrationSpecialCase:
      return "FibrationSpecialCase";
    case VerdictKind::Undetermined:
      return "Undetermined";
  }
  return "Undetermined";
}

std::string to_string(ComponentKind kind) { return kind == ComponentKind::Ray ? "ray" : "full_line"; }

}  // namespace milnor
