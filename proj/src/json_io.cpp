#include "milnor/json_io.h"

#include <iomanip>
#include <limits>
#include <sstream>

#include "milnor/parse.h"

namespace milnor {

namespace {

Json vector_json(const Eigen::VectorXd& v) {
  Json a = Json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) a.push_back(v[k]);
  return a;
}

Json complex_json(Complex z) { return Json::array({z.real(), z.imag()}); }

}  // namespace

Json to_json(const ComplexRational& c) {
  Json j;
  j["re"] = to_string(c.re);
  j["im"] = to_string(c.im);
  return j;
}

Json to_json(const DiagonalMixedPolynomial& psi) {
  Json j;
  j["n"] = psi.n();
  j["text"] = render(psi);
  Json terms = Json::array();
  for (const auto& t : psi.terms()) {
    Json jt;
    jt["var"] = t.var;
    jt["coeff"] = to_json(t.coeff);
    jt["a"] = t.a;
    jt["b"] = t.b;
    terms.push_back(jt);
  }
  j["terms"] = terms;
  return j;
}

Json to_json(const RealPolynomialMap& f) {
  Json j;
  j["n"] = f.n();
  j["p"] = f.p();
  j["vars"] = f.var_names();
  Json comps = Json::array();
  for (const auto& c : f.components()) comps.push_back(render(c, f.var_names()));
  j["components"] = comps;
  return j;
}

Json to_json(const CriticalIndexPartition& p) {
  Json classes = Json::array();
  for (const auto& cls : p.classes) {
    Json jc;
    jc["indices"] = cls.indices;
    jc["representative"] = cls.representative;
    jc["direction"] = to_json(cls.direction);
    jc["theta"] = cls.theta;
    Json members = Json::array();
    for (std::size_t k = 0; k < cls.indices.size(); ++k) {
      Json m;
      m["index"] = cls.indices[k];
      m["scale"] = to_string(cls.scale[k]);
      m["mu"] = cls.mu[k];
      members.push_back(m);
    }
    jc["members"] = members;
    jc["all_same_argument"] = cls.all_same_argument;
    classes.push_back(jc);
  }
  return classes;
}

Json to_json(const CriticalSetDescription& s) {
  Json j;
  Json subs = Json::array();
  for (const auto& sub : s.subspaces) {
    Json js;
    js["free_indices"] = sub.free_indices;
    js["real_dimension"] = sub.real_dimension;
    subs.push_back(js);
  }
  j["subspaces"] = subs;
  j["origin_only"] = s.origin_only;
  if (!s.note.empty()) j["note"] = s.note;
  return j;
}

Json to_json(const DiscriminantGeometry& d) {
  Json j;
  Json comps = Json::array();
  for (const auto& c : d.components) {
    Json jc;
    jc["direction"] = to_json(c.direction);
    jc["theta"] = c.theta;
    jc["kind"] = to_string(c.kind);
    jc["source_class"] = c.source_class;
    comps.push_back(jc);
  }
  j["components"] = comps;
  j["origin_only"] = d.origin_only;
  j["has_complete_line"] = d.has_complete_line;
  if (!d.note.empty()) j["note"] = d.note;
  return j;
}

Json to_json(const RadialWeights& w) {
  Json j;
  j["a"] = w.a;
  j["p"] = w.p;
  return j;
}

Json to_json(const FibrationVerdict& v) {
  Json j;
  j["kind"] = to_string(v.kind);
  j["reasons"] = v.reasons;
  const auto& p = v.preconditions;
  Json pc;
  pc["critical_count"] = p.critical_count;
  pc["n"] = p.n;
  pc["within_hypothesis"] = p.within_hypothesis;
  pc["exponents_positive"] = p.exponents_positive;
  pc["all_variables_present"] = p.all_variables_present;
  pc["condition_i"] = p.condition_i;
  pc["condition_ii"] = p.condition_ii;
  pc["special_pattern"] = p.special_pattern;
  j["preconditions"] = pc;
  return j;
}

Json to_json(const SigmaCapVCertificate& c) {
  Json j;
  j["applicable"] = c.applicable;
  j["trivial"] = c.trivial;
  j["note"] = c.note;
  Json classes = Json::array();
  for (const auto& cs : c.classes) {
    Json jc;
    jc["indices"] = cs.indices;
    jc["signs"] = cs.signs;
    jc["all_same_argument"] = cs.all_same_argument;
    classes.push_back(jc);
  }
  j["classes"] = classes;
  if (c.witness) {
    Json w = Json::array();
    for (const auto& z : *c.witness) w.push_back(complex_json(z));
    j["witness"] = w;
  }
  return j;
}

Json to_json(const StructureReport& r) {
  Json j;
  j["polynomial"] = to_json(r.psi);
  j["critical_indices"] = r.partition.critical;
  j["classes"] = to_json(r.partition);
  j["critical_set"] = to_json(r.critical_set);
  j["discriminant"] = to_json(r.discriminant);
  if (r.radial_weights) {
    j["radial_weights"] = to_json(*r.radial_weights);
  } else {
    Json w;
    w["error"] = r.radial_weights_error;
    j["radial_weights"] = w;
  }
  j["verdict"] = to_json(r.verdict);
  j["sigma_cap_v"] = to_json(r.sigma_cap_v);
  return j;
}

Json to_json(const TangencyWitness& w) {
  Json j;
  j["x"] = vector_json(w.x);
  j["sigma"] = w.sigma;
  j["f_norm"] = w.f_norm;
  j["dist_to_V"] = w.dist_to_V;
  return j;
}

Json to_json(const Tolerances& t, double margin) {
  Json j;
  j["tangency"] = t.tangency;
  j["v"] = t.v;
  j["regular"] = t.regular;
  j["margin"] = margin;
  j["margin_overridden"] = t.margin.has_value();
  return j;
}

Json to_json(const TransversalityReport& r) {
  Json j;
  j["verdict"] = to_string(r.verdict);
  j["epsilon"] = r.epsilon;
  Json seq = Json::array();
  for (const auto& w : r.witnesses) seq.push_back(to_json(w));
  j["witness_sequence"] = seq;
  j["seeds"] = r.budget.seeds;
  j["iterations"] = r.budget.iterations;
  j["rng_seed"] = r.budget.rng_seed;
  j["tolerances"] = to_json(r.tolerances, r.margin);
  j["f_scale"] = r.f_scale;
  j["min_f_norm"] = r.min_f_norm;
  j["locus_size"] = r.locus_size;
  j["notes"] = r.notes;
  return j;
}

Json to_json(const FiberSample& s, bool include_points) {
  Json j;
  j["target"] = vector_json(s.target);
  j["epsilon"] = s.epsilon;
  j["seeds"] = s.seeds;
  j["rng_seed"] = s.rng_seed;
  j["tol"] = s.tol;
  j["point_count"] = s.points.size();
  j["component_count"] = s.component_count;
  j["count_reliable"] = s.count_reliable;
  if (!s.count_reliable) j["warning"] = "fewer than 10 converged points; component count unreliable";
  j["linkage_radius"] = s.linkage_radius;
  j["max_residual"] = s.max_residual;
  int flagged = 0;
  for (const auto& p : s.points) flagged += p.near_critical ? 1 : 0;
  j["near_critical_count"] = flagged;
  j["bridge_points"] = s.bridge_points;
  if (include_points) {
    Json pts = Json::array();
    for (std::size_t k = 0; k < s.points.size(); ++k) {
      Json jp;
      jp["x"] = vector_json(s.points[k].x);
      jp["residual"] = s.points[k].residual;
      jp["near_critical"] = s.points[k].near_critical;
      jp["component"] = s.labels[k];
      pts.push_back(jp);
    }
    j["points"] = pts;
  }
  return j;
}

Json to_json(const FiberStats& s) {
  Json j;
  j["component_count"] = s.component_count;
  j["count_reliable"] = s.count_reliable;
  j["point_count"] = s.point_count;
  j["mean_norm"] = s.mean_norm;
  j["max_norm"] = s.max_norm;
  j["max_residual"] = s.max_residual;
  j["linkage_radius"] = s.linkage_radius;
  j["extent"] = s.extent;
  return j;
}

Json to_json(const FiberComparison& c) {
  Json j;
  Json a = to_json(c.first);
  a["stats"] = to_json(c.first_stats);
  Json b = to_json(c.second);
  b["stats"] = to_json(c.second_stats);
  j["first"] = a;
  j["second"] = b;
  j["same_component_count"] = c.same_component_count;
  return j;
}

std::string fiber_csv(const FiberSample& s, std::size_t n) {
  std::ostringstream os;
  os << std::setprecision(std::numeric_limits<double>::max_digits10);
  const auto dim = static_cast<Eigen::Index>(n);
  for (Eigen::Index k = 0; k < dim; ++k) os << 'x' << (k + 1) << ',';
  os << "residual\n";
  for (const auto& p : s.points) {
    for (Eigen::Index k = 0; k < dim; ++k) os << p.x[k] << ',';
    os << p.residual << '\n';
  }
  return os.str();
}

}  // namespace milnor
