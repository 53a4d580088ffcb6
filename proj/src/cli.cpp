#include "milnor/cli.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"

#include "milnor/fiber.h"
#include "milnor/json_io.h"
#include "milnor/parse.h"
#include "milnor/structure.h"
#include "milnor/transversality.h"

#ifndef MILNOR_VERSION
#define MILNOR_VERSION "0.0.0"
#endif

namespace milnor {

namespace {

struct RunConfig {
  std::string command;
  std::string input;
  std::string file;
  std::string eps_text;
  std::optional<int> seeds;
  int iterations = 500;
  std::uint64_t rng_seed = 1;
  std::optional<double> tol_tangency;
  std::optional<double> tol_v;
  std::optional<double> margin;
  std::string value_text;
  std::string compare_text;
  std::string out_path;
  std::string format = "json";
  bool no_timing = false;
  bool with_transversality = false;
  std::string point_text;
  std::string t_range = "0.25,4";
  int samples = 50;
};

// Thrown for bad flag values; maps to the usage exit code.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<double> parse_list(const std::string& text, const char* flag) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    try {
      out.push_back(to_double(parse_rational(item)));
    } catch (const std::invalid_argument&) {
      throw UsageError(std::string("bad number '") + item + "' in " + flag);
    }
  }
  if (out.empty()) throw UsageError(std::string(flag) + " needs at least one number");
  return out;
}

std::vector<double> epsilon_list(const RunConfig& cfg, std::vector<double> fallback) {
  std::vector<double> eps = cfg.eps_text.empty() ? std::move(fallback) : parse_list(cfg.eps_text, "--eps");
  for (double e : eps) {
    if (!(e > 0)) throw UsageError("--eps values must be positive");
  }
  return eps;
}

std::string read_input(const RunConfig& cfg) {
  if (!cfg.file.empty()) {
    if (!cfg.input.empty()) throw UsageError("give the input inline or with --file, not both");
    std::ifstream in(cfg.file);
    if (!in) throw UsageError("cannot read " + cfg.file);
    std::stringstream ss;
    ss << in.rdbuf();
    std::string text = ss.str();
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.pop_back();
    return text;
  }
  if (cfg.input.empty()) throw UsageError("missing input expression");
  return cfg.input;
}

Tolerances tolerances(const RunConfig& cfg) {
  Tolerances t;
  if (cfg.tol_tangency) t.tangency = *cfg.tol_tangency;
  if (cfg.tol_v) t.v = *cfg.tol_v;
  t.margin = cfg.margin;
  return t;
}

SearchBudget budget(const RunConfig& cfg) {
  SearchBudget b;
  b.seeds = cfg.seeds.value_or(256);
  b.iterations = cfg.iterations;
  b.rng_seed = cfg.rng_seed;
  if (b.seeds < 0) throw UsageError("--seeds must be non-negative");
  return b;
}

Json header(const RunConfig& cfg, const std::string& input) {
  Json j;
  j["schema"] = kSchema;
  j["tool_version"] = MILNOR_VERSION;
  j["command"] = cfg.command;
  j["input"] = input;
  return j;
}

void emit(const RunConfig& cfg, const std::string& text, std::ostream& out) {
  if (cfg.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(cfg.out_path);
  if (!f) throw UsageError("cannot write " + cfg.out_path);
  f << text;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

RealPolynomialMap real_map_of(const std::string& input) {
  if (looks_like_real_map(input)) return parse_real_map(input);
  return to_real_map(parse_mixed(input));
}

TransversalityVerdict worst(TransversalityVerdict a, TransversalityVerdict b) {
  auto rank = [](TransversalityVerdict v) {
    return v == TransversalityVerdict::FailsWithWitness ? 2 : v == TransversalityVerdict::Inconclusive ? 1 : 0;
  };
  return rank(a) >= rank(b) ? a : b;
}

int exit_code(TransversalityVerdict v) {
  switch (v) {
    case TransversalityVerdict::FailsWithWitness:
      return kExitFails;
    case TransversalityVerdict::Inconclusive:
      return kExitInconclusive;
    case TransversalityVerdict::HoldsAtBudget:
      return kExitOk;
  }
  return kExitInconclusive;
}

std::pair<Json, TransversalityVerdict> sweep(const RealPolynomialMap& f, const RunConfig& cfg) {
  Json reports = Json::array();
  TransversalityVerdict agg = TransversalityVerdict::HoldsAtBudget;
  for (double eps : epsilon_list(cfg, {1.0, 0.5, 0.25, 0.125})) {
    auto r = falsify_transversality(f, eps, budget(cfg), tolerances(cfg));
    agg = worst(agg, r.verdict);
    reports.push_back(to_json(r));
  }
  return {reports, agg};
}

int cmd_analyze(const RunConfig& cfg, const std::string& input, Json& j) {
  if (looks_like_real_map(input)) throw UsageError("analyze needs a diagonal mixed polynomial, not a real map");
  auto psi = parse_mixed(input);
  j["structure"] = to_json(analyze_structure(psi));
  if (cfg.with_transversality) {
    auto [reports, agg] = sweep(to_real_map(psi), cfg);
    j["transversality"] = reports;
    j["transversality_verdict"] = to_string(agg);
  }
  return kExitOk;
}

int cmd_transversality(const RunConfig& cfg, const std::string& input, Json& j) {
  auto f = real_map_of(input);
  j["map"] = to_json(f);
  auto [reports, agg] = sweep(f, cfg);
  j["verdict"] = to_string(agg);
  j["reports"] = reports;
  return exit_code(agg);
}

Eigen::VectorXd target_of(const std::string& text, std::size_t p, const char* flag) {
  auto v = parse_list(text, flag);
  if (v.size() != p) {
    throw UsageError(std::string(flag) + " needs " + std::to_string(p) + " numbers, got " + std::to_string(v.size()));
  }
  return Eigen::Map<Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

// Whether c lies on Delta_psi (the origin counts unless psi is a submersion).
bool in_discriminant(const DiagonalMixedPolynomial& psi, Complex c) {
  if (std::abs(c) == 0.0) return fibration_verdict(psi).kind != VerdictKind::Submersion;
  for (const auto& comp : discriminant(psi).components) {
    Complex d = comp.direction.to_complex();
    double cross = d.real() * c.imag() - d.imag() * c.real();
    if (std::abs(cross) > 1e-12 * std::abs(d) * std::abs(c)) continue;
    if (comp.kind == ComponentKind::FullLine || d.real() * c.real() + d.imag() * c.imag() > 0) return true;
  }
  return false;
}

int cmd_fiber(const RunConfig& cfg, const std::string& input, std::ostream& out, std::ostream& err, Json& j,
              bool& emitted) {
  auto f = real_map_of(input);
  if (cfg.value_text.empty()) throw UsageError("fiber needs --value");
  auto c = target_of(cfg.value_text, f.p(), "--value");
  auto eps = epsilon_list(cfg, {1.0});
  if (eps.size() != 1) throw UsageError("fiber takes a single --eps value");
  const int count = cfg.seeds.value_or(2000);
  if (count < 1) throw UsageError("--seeds must be at least 1");
  j["map"] = to_json(f);
  if (!looks_like_real_map(input)) {
    bool singular = in_discriminant(parse_mixed(input), Complex(c[0], c[1]));
    j["target_in_discriminant"] = singular;
    if (singular) err << "note: the target lies in the discriminant; this is a singular fiber\n";
  }

  if (!cfg.compare_text.empty()) {
    auto c2 = target_of(cfg.compare_text, f.p(), "--compare");
    j["comparison"] = to_json(fiber_compare(f, c, c2, eps[0], count, cfg.rng_seed));
    return kExitOk;
  }
  auto s = sample_fiber(f, c, eps[0], count, cfg.rng_seed);
  if (!s.count_reliable) err << "warning: fewer than 10 points converged; component count unreliable\n";
  if (cfg.format == "csv") {
    emit(cfg, fiber_csv(s, f.n()), out);
    emitted = true;
    j["fiber"] = to_json(s);
    if (!cfg.out_path.empty()) {
      out << dump(j);
    } else {
      err << "component_count " << s.component_count << ", points " << s.points.size() << "\n";
    }
    return kExitOk;
  }
  j["fiber"] = to_json(s, true);
  return kExitOk;
}

int cmd_flow(const RunConfig& cfg, const std::string& input, Json& j) {
  if (looks_like_real_map(input)) throw UsageError("flow needs a diagonal mixed polynomial");
  auto psi = parse_mixed(input);
  RadialWeights w = radial_weights(psi);
  if (cfg.point_text.empty()) throw UsageError("flow needs --point x1,y1,...,xn,yn");
  auto coords = target_of(cfg.point_text, 2 * static_cast<std::size_t>(psi.n()), "--point");
  ComplexPoint z = to_complex_point(coords);
  bool zero = std::all_of(z.begin(), z.end(), [](Complex c) { return c == Complex(0.0, 0.0); });
  if (zero) throw UsageError("the flow point must be nonzero");
  auto range = parse_list(cfg.t_range, "--t-range");
  if (range.size() != 2 || !(range[0] > 0) || !(range[1] >= range[0])) {
    throw UsageError("--t-range needs two positive numbers lo,hi with lo <= hi");
  }
  if (cfg.samples < 1) throw UsageError("--samples must be at least 1");
  auto eps = epsilon_list(cfg, {1.0});

  const Complex base = eval_mixed(psi, z);
  j["weights"] = to_json(w);
  Json orbit = Json::array();
  double max_res = 0.0;
  for (int k = 0; k < cfg.samples; ++k) {
    double u = cfg.samples == 1 ? 0.0 : static_cast<double>(k) / (cfg.samples - 1);
    double t = range[0] * std::pow(range[1] / range[0], u);
    ComplexPoint zt = rplus_flow(w, t, z);
    Complex v = eval_mixed(psi, zt);
    double res = std::abs(v - std::pow(t, static_cast<double>(w.a)) * base) / (1.0 + std::abs(v));
    max_res = std::max(max_res, res);
    Json e;
    e["t"] = t;
    Json pt = Json::array();
    for (const auto& c : zt) pt.push_back(Json::array({c.real(), c.imag()}));
    e["z"] = pt;
    e["psi"] = Json::array({v.real(), v.imag()});
    if (std::abs(v) > 1e-12) {
      Complex ph = v / std::abs(v);
      e["phase"] = Json::array({ph.real(), ph.imag()});
    } else {
      e["phase"] = nullptr;
    }
    e["equivariance_residual"] = res;
    orbit.push_back(e);
  }
  j["orbit"] = orbit;
  j["max_equivariance_residual"] = max_res;
  Json inflations = Json::array();
  for (double e : eps) {
    auto inf = inflate_to_sphere(w, z, e);
    double norm = 0.0;
    for (const auto& c : inf.z) norm += std::norm(c);
    Json ji;
    ji["epsilon"] = e;
    ji["t"] = inf.t;
    Json pt = Json::array();
    for (const auto& c : inf.z) pt.push_back(Json::array({c.real(), c.imag()}));
    ji["z"] = pt;
    ji["sphere_error"] = std::abs(std::sqrt(norm) - e);
    inflations.push_back(ji);
  }
  j["inflate"] = inflations;
  return kExitOk;
}

void report_parse_error(const ParseError& e, const std::string& input, std::ostream& err) {
  err << "error: " << e.what() << "\n";
  err << "  " << input << "\n";
  err << "  " << std::string(std::min(e.position(), input.size()), ' ') << "^\n";
}

void add_common(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("input", cfg.input, "polynomial expression");
  sub->add_option("--file", cfg.file, "read the expression from a file");
  sub->add_option("--out", cfg.out_path, "write the output to a file");
  sub->add_option("--rng-seed", cfg.rng_seed, "seed of the random source")->capture_default_str();
  sub->add_flag("--no-timing", cfg.no_timing, "omit timing fields");
}

void add_search(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--eps", cfg.eps_text, "comma-separated sphere radii (default 1,0.5,0.25,0.125)");
  sub->add_option("--seeds", cfg.seeds, "multistart seeds (default 256)");
  sub->add_option("--iterations", cfg.iterations, "descent iterations per seed")->capture_default_str();
  sub->add_option("--tol-tangency", cfg.tol_tangency, "tangency tolerance on sigma (default 1e-8)");
  sub->add_option("--tol-v", cfg.tol_v, "tolerance on |f| for points of V (default 1e-6)");
  sub->add_option("--margin", cfg.margin, "absolute margin (default 1e-2 x median |f| on the sphere)");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Analyze diagonal mixed polynomials and test transversality and fibers", "milnor-scope"};
  app.require_subcommand(1);
  app.set_version_flag("--version", MILNOR_VERSION);

  auto* analyze = app.add_subcommand("analyze", "structure report for a diagonal mixed polynomial");
  add_common(analyze, cfg);
  add_search(analyze, cfg);
  analyze->add_flag("--transversality", cfg.with_transversality, "also run the transversality sweep");

  auto* trans = app.add_subcommand("transversality", "numerical transversality test on spheres");
  add_common(trans, cfg);
  add_search(trans, cfg);

  auto* fiber = app.add_subcommand("fiber", "sample a fiber and count its components");
  add_common(fiber, cfg);
  fiber->add_option("--value", cfg.value_text, "target value: re,im for mixed input, p reals for a real map");
  fiber->add_option("--compare", cfg.compare_text, "second target value to compare against");
  fiber->add_option("--eps", cfg.eps_text, "ball radius (default 1)");
  fiber->add_option("--seeds", cfg.seeds, "Newton seeds (default 2000)");
  fiber->add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  auto* flow = app.add_subcommand("flow", "trace an R+ orbit of the radial action");
  add_common(flow, cfg);
  flow->add_option("--point", cfg.point_text, "x1,y1,...,xn,yn");
  flow->add_option("--t-range", cfg.t_range, "lo,hi")->capture_default_str();
  flow->add_option("--samples", cfg.samples, "orbit samples")->capture_default_str();
  flow->add_option("--eps", cfg.eps_text, "sphere radii for inflate (default 1)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  std::ostringstream cli_out, cli_err;
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, cli_out, cli_err);
    out << cli_out.str();
    err << cli_err.str();
    return code == 0 ? kExitOk : kExitUsage;
  }
  for (auto* sub : {analyze, trans, fiber, flow}) {
    if (sub->parsed()) cfg.command = sub->get_name();
  }

  std::string input;
  try {
    input = read_input(cfg);
    auto start = std::chrono::steady_clock::now();
    Json j = header(cfg, input);
    int code = kExitOk;
    bool emitted = false;
    if (cfg.command == "analyze") {
      code = cmd_analyze(cfg, input, j);
    } else if (cfg.command == "transversality") {
      code = cmd_transversality(cfg, input, j);
    } else if (cfg.command == "fiber") {
      code = cmd_fiber(cfg, input, out, err, j, emitted);
    } else {
      code = cmd_flow(cfg, input, j);
    }
    if (!emitted) {
      if (!cfg.no_timing) {
        std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start;
        j["timing"] = {{"seconds", dt.count()}};
      }
      emit(cfg, dump(j), out);
    }
    return code;
  } catch (const ParseError& e) {
    report_parse_error(e, input, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
  }
  return kExitUsage;
}

}  // namespace milnor
