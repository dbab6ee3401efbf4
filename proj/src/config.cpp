#include "fw/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace fw {

namespace {

const std::set<std::string> kSetKinds = {"simplex", "box", "l1_ball", "l2_ball", "interval"};
const std::set<std::string> kObjectiveKinds = {"scalar_square", "quadratic", "shifted_quadratic"};
const std::set<std::string> kOracleModels = {"exact", "additive_worst_case", "additive_sign",
                                             "additive_scheduled", "relative_worst_case"};
const std::set<std::string> kVariants = {"convex", "nonconvex", "relative", "backtracking"};
const std::set<std::string> kSteps = {"harmonic", "power"};
const std::set<std::string> kSchedules = {"harmonic", "inv_sqrt"};
const std::set<std::string> kCheckNames = {
    "delta_floor",        "convex_one_step",  "telescoping",       "weighted_recursion",
    "one_step_decrease",  "descent_prefix_sum", "gap_rate_bound",  "relative_gap_rate",
    "interior_margin_rate", "margin",         "gap_below",         "feasibility",
    "classical_envelope", "scheduled_gap_envelope"};

std::vector<int> to_ints(const std::vector<double>& xs) {
  std::vector<int> out;
  out.reserve(xs.size());
  for (double x : xs) out.push_back(int(std::lround(x)));
  return out;
}

std::vector<double> to_doubles(const std::vector<int>& xs) {
  return std::vector<double>(xs.begin(), xs.end());
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> violations)
    : std::runtime_error(join(violations)), violations_(std::move(violations)) {}

std::string ConfigError::join(const std::vector<std::string>& v) {
  std::ostringstream os;
  os << "invalid config (" << v.size() << " violation" << (v.size() == 1 ? "" : "s") << "):";
  for (const auto& s : v) os << "\n  - " << s;
  return os.str();
}

ExperimentConfig ExperimentConfig::parse(const std::string& text) {
  using namespace toml;
  Document doc = toml::parse(text);
  ExperimentConfig c;

  c.set.kind = get_string_or(doc, "set", "kind", c.set.kind);
  c.set.dim = int(get_number_or(doc, "set", "dim", 1));
  c.set.lo = get_number_or(doc, "set", "lo", -1.0);
  c.set.hi = get_number_or(doc, "set", "hi", 1.0);
  c.set.radius = get_number_or(doc, "set", "r", 1.0);

  c.objective.kind = get_string_or(doc, "objective", "kind", c.objective.kind);
  if (has(doc, "objective", "diag")) c.objective.diag = get_array(doc, "objective", "diag");
  if (has(doc, "objective", "dense")) c.objective.dense = get_array(doc, "objective", "dense");
  if (has(doc, "objective", "b")) c.objective.linear = get_array(doc, "objective", "b");
  if (has(doc, "objective", "target")) c.objective.target = get_array(doc, "objective", "target");
  if (has(doc, "objective", "f_star")) c.objective.f_star = get_number(doc, "objective", "f_star");
  if (has(doc, "objective", "lipschitz")) {
    c.objective.lipschitz = get_number(doc, "objective", "lipschitz");
  }

  c.oracle.model = get_string_or(doc, "oracle", "model", c.oracle.model);
  c.oracle.delta = get_number_or(doc, "oracle", "delta", 0.0);
  c.oracle.schedule = get_string_or(doc, "oracle", "schedule", c.oracle.schedule);
  c.oracle.seed = std::uint64_t(get_number_or(doc, "oracle", "seed", 0));

  c.solver.variant = get_string_or(doc, "solver", "variant", c.solver.variant);
  c.solver.step = get_string_or(doc, "solver", "step", c.solver.step);
  c.solver.power = get_number_or(doc, "solver", "power", c.solver.power);
  c.solver.k_max = int(get_number_or(doc, "solver", "k_max", 1000));
  if (has(doc, "solver", "c")) c.solver.c_override = get_number(doc, "solver", "c");
  c.solver.eta = get_number_or(doc, "solver", "eta", c.solver.eta);
  c.solver.alpha0 = get_number_or(doc, "solver", "alpha0", c.solver.alpha0);
  if (has(doc, "solver", "x0")) c.solver.x0 = get_array(doc, "solver", "x0");
  c.solver.early_stop = get_bool_or(doc, "solver", "early_stop", false);

  if (has(doc, "checks", "enabled")) c.checks.enabled = get_string_array(doc, "checks", "enabled");
  if (has(doc, "checks", "prefix_ks")) {
    c.checks.prefix_ks = to_ints(get_array(doc, "checks", "prefix_ks"));
  }
  c.checks.margin_r = get_number_or(doc, "checks", "margin_r", 0.0);
  c.checks.gap_threshold = get_number_or(doc, "checks", "gap_threshold", 1e-3);
  c.checks.floor_tolerance = get_number_or(doc, "checks", "floor_tolerance", 0.01);
  c.checks.envelope_factor = get_number_or(doc, "checks", "envelope_factor", 10.0);

  if (doc.count("reduction")) {
    c.reduction.present = true;
    c.reduction.slack_k = get_number_or(doc, "reduction", "k_slack", 0.0);
    if (has(doc, "reduction", "eps")) c.reduction.eps = get_number(doc, "reduction", "eps");
    if (has(doc, "reduction", "lambda")) {
      c.reduction.lambda = get_number(doc, "reduction", "lambda");
    }
    c.reduction.n_instances = int(get_number_or(doc, "reduction", "n_instances", 100));
    c.reduction.seed = std::uint64_t(get_number_or(doc, "reduction", "seed", 0));
    if (has(doc, "reduction", "x")) c.reduction.x = get_array(doc, "reduction", "x");
  }

  c.output.csv = get_string_or(doc, "output", "csv", "");
  c.output.json = get_string_or(doc, "output", "json", "");
  return c;
}

ExperimentConfig ExperimentConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

std::string ExperimentConfig::to_toml() const {
  toml::Document doc;
  toml::Table& set_t = doc["set"];
  set_t["kind"] = set.kind;
  set_t["dim"] = double(set.dim);
  set_t["lo"] = set.lo;
  set_t["hi"] = set.hi;
  set_t["r"] = set.radius;

  toml::Table& obj = doc["objective"];
  obj["kind"] = objective.kind;
  if (!objective.diag.empty()) obj["diag"] = objective.diag;
  if (!objective.dense.empty()) obj["dense"] = objective.dense;
  if (!objective.linear.empty()) obj["b"] = objective.linear;
  if (!objective.target.empty()) obj["target"] = objective.target;
  if (objective.f_star) obj["f_star"] = *objective.f_star;
  if (objective.lipschitz) obj["lipschitz"] = *objective.lipschitz;

  toml::Table& orc = doc["oracle"];
  orc["model"] = oracle.model;
  orc["delta"] = oracle.delta;
  orc["schedule"] = oracle.schedule;
  orc["seed"] = double(oracle.seed);

  toml::Table& sol = doc["solver"];
  sol["variant"] = solver.variant;
  sol["step"] = solver.step;
  sol["power"] = solver.power;
  sol["k_max"] = double(solver.k_max);
  if (solver.c_override) sol["c"] = *solver.c_override;
  sol["eta"] = solver.eta;
  sol["alpha0"] = solver.alpha0;
  if (!solver.x0.empty()) sol["x0"] = solver.x0;
  sol["early_stop"] = solver.early_stop;

  toml::Table& chk = doc["checks"];
  if (!checks.enabled.empty()) chk["enabled"] = checks.enabled;
  if (!checks.prefix_ks.empty()) chk["prefix_ks"] = to_doubles(checks.prefix_ks);
  chk["margin_r"] = checks.margin_r;
  chk["gap_threshold"] = checks.gap_threshold;
  chk["floor_tolerance"] = checks.floor_tolerance;
  chk["envelope_factor"] = checks.envelope_factor;

  if (reduction.present) {
    toml::Table& red = doc["reduction"];
    red["k_slack"] = reduction.slack_k;
    if (reduction.eps) red["eps"] = *reduction.eps;
    if (reduction.lambda) red["lambda"] = *reduction.lambda;
    red["n_instances"] = double(reduction.n_instances);
    red["seed"] = double(reduction.seed);
    if (!reduction.x.empty()) red["x"] = reduction.x;
  }

  toml::Table& out = doc["output"];
  if (!output.csv.empty()) out["csv"] = output.csv;
  if (!output.json.empty()) out["json"] = output.json;
  return toml::serialize(doc);
}

FeasibleSet ExperimentConfig::build_set() const {
  if (set.kind == "simplex") return FeasibleSet::simplex(set.dim);
  if (set.kind == "box") return FeasibleSet::box(set.dim, set.lo, set.hi);
  if (set.kind == "l1_ball") return FeasibleSet::l1_ball(set.dim, set.radius);
  if (set.kind == "l2_ball") return FeasibleSet::l2_ball(set.dim, set.radius);
  if (set.kind == "interval") return FeasibleSet::interval(set.lo, set.hi);
  throw std::invalid_argument("unknown set kind: " + set.kind);
}

Objective ExperimentConfig::build_objective() const {
  const int d = set.kind == "interval" ? 1 : set.dim;
  Objective obj = [&] {
    if (objective.kind == "scalar_square") return Objective::scalar_square();
    if (objective.kind == "shifted_quadratic") {
      if (objective.target.empty()) {
        throw std::invalid_argument("shifted_quadratic objective needs 'target'");
      }
      Vec t = Eigen::Map<const Vec>(objective.target.data(), Eigen::Index(objective.target.size()));
      return Objective::shifted_quadratic(t);
    }
    if (objective.kind == "quadratic") {
      Mat A;
      if (!objective.dense.empty()) {
        if (int(objective.dense.size()) != d * d) {
          throw std::invalid_argument("objective.dense must hold dim*dim row-major entries");
        }
        A = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
            objective.dense.data(), d, d);
      } else if (!objective.diag.empty()) {
        if (int(objective.diag.size()) != d) {
          throw std::invalid_argument("objective.diag must hold dim entries");
        }
        A = Mat::Zero(d, d);
        for (int i = 0; i < d; ++i) A(i, i) = objective.diag[std::size_t(i)];
      } else {
        throw std::invalid_argument("quadratic objective needs 'diag' or 'dense'");
      }
      Vec b = Vec::Zero(d);
      if (!objective.linear.empty()) {
        if (int(objective.linear.size()) != d) {
          throw std::invalid_argument("objective.b must hold dim entries");
        }
        b = Eigen::Map<const Vec>(objective.linear.data(), d);
      }
      return Objective::quadratic(A, b, objective.lipschitz);
    }
    throw std::invalid_argument("unknown objective kind: " + objective.kind);
  }();
  if (objective.f_star) obj = obj.with_fstar(*objective.f_star);
  return obj;
}

InexactOracle ExperimentConfig::build_oracle() const {
  Objective obj = build_objective();
  FeasibleSet fs = build_set();
  if (oracle.model == "exact") return InexactOracle::exact(std::move(obj));
  if (oracle.model == "additive_worst_case") {
    return InexactOracle::additive_worst_case(std::move(obj), std::move(fs), oracle.delta,
                                              oracle.seed);
  }
  if (oracle.model == "additive_sign") {
    return InexactOracle::additive_sign(std::move(obj), oracle.delta, fs.diameter());
  }
  if (oracle.model == "additive_scheduled") {
    DeltaSchedule sched =
        oracle.schedule == "inv_sqrt" ? DeltaSchedule::InvSqrtLD2 : DeltaSchedule::HarmonicLD2;
    return InexactOracle::additive_scheduled(std::move(obj), std::move(fs), oracle.delta, sched,
                                             oracle.seed);
  }
  if (oracle.model == "relative_worst_case") {
    return InexactOracle::relative_worst_case(std::move(obj), std::move(fs), oracle.delta,
                                              oracle.seed);
  }
  throw std::invalid_argument("unknown oracle model: " + oracle.model);
}

std::vector<std::string> ExperimentConfig::validate() const {
  std::vector<std::string> v;
  auto complain = [&](const std::string& msg) { v.push_back(msg); };

  if (!kSetKinds.count(set.kind)) complain("set.kind '" + set.kind + "' is not recognized");
  if (!kObjectiveKinds.count(objective.kind)) {
    complain("objective.kind '" + objective.kind + "' is not recognized");
  }
  if (!kOracleModels.count(oracle.model)) {
    complain("oracle.model '" + oracle.model + "' is not recognized");
  }
  if (!kVariants.count(solver.variant)) {
    complain("solver.variant '" + solver.variant + "' is not recognized");
  }
  if (!kSteps.count(solver.step)) complain("solver.step '" + solver.step + "' is not recognized");
  if (!kSchedules.count(oracle.schedule)) {
    complain("oracle.schedule '" + oracle.schedule + "' is not recognized");
  }
  for (const auto& name : checks.enabled) {
    if (!kCheckNames.count(name)) complain("checks.enabled contains unknown check '" + name + "'");
  }
  if (!v.empty()) throw ConfigError(v);  // the structural names gate everything below

  FeasibleSet fs = build_set();

  if (reduction.present) {
    // Reduction configs stand alone: only the set and [reduction] matter.
    if (reduction.slack_k < 0) complain("reduction.k_slack must be >= 0");
    if (!reduction.eps && !reduction.lambda) complain("reduction needs 'eps' or 'lambda'");
    if (reduction.eps && !(*reduction.eps > 0)) complain("reduction.eps must be > 0");
    if (reduction.lambda && !(*reduction.lambda > 0)) complain("reduction.lambda must be > 0");
    if (!reduction.x.empty() && int(reduction.x.size()) != fs.dim()) {
      complain("reduction.x has the wrong dimension");
    }
    if (reduction.n_instances < 1) complain("reduction.n_instances must be >= 1");
    return v;
  }

  Objective obj = [&]() -> Objective {
    try {
      return build_objective();
    } catch (const std::invalid_argument& e) {
      complain(e.what());
      throw ConfigError(v);
    }
  }();

  if (obj.dim() != fs.dim()) {
    complain("objective dimension " + std::to_string(obj.dim()) + " does not match set dimension " +
             std::to_string(fs.dim()));
  }
  if (oracle.delta < 0) complain("oracle.delta must be >= 0");
  if (solver.k_max < 1) complain("solver.k_max must be >= 1");
  if (solver.step == "power" && !(solver.power > 0.5 && solver.power <= 1.0)) {
    complain("solver.power must lie in (0.5, 1] so the step-size conditions hold");
  }

  if (!solver.x0.empty()) {
    if (int(solver.x0.size()) != fs.dim()) {
      complain("solver.x0 has the wrong dimension");
    } else {
      Vec x0 = Eigen::Map<const Vec>(solver.x0.data(), fs.dim());
      if (!fs.contains(x0, 1e-9)) complain("solver.x0 is not feasible");
    }
  }

  if (solver.variant == "convex") {
    if (obj.dim() == fs.dim() && !obj.is_convex()) {
      complain("convex solver requires a convex objective");
    }
    if (obj.dim() == fs.dim() && !obj.known_fstar(fs)) {
      complain("convex solver requires f_star (set objective.f_star or use a closed-form objective)");
    }
  }
  if (solver.variant == "relative" && oracle.model != "relative_worst_case") {
    complain("relative solver requires oracle.model = \"relative_worst_case\"");
  }
  if (solver.variant == "nonconvex" && oracle.model == "relative_worst_case") {
    complain("nonconvex solver requires an additive or exact oracle");
  }
  if (solver.variant == "backtracking") {
    if (!(solver.eta > 0 && solver.eta < 1)) complain("solver.eta must lie in (0, 1)");
    if (!(solver.alpha0 > 0)) complain("solver.alpha0 must be > 0");
  }

  if ((solver.variant == "nonconvex" || solver.variant == "relative") && solver.c_override &&
      obj.dim() == fs.dim()) {
    double d = fs.diameter();
    double floor = std::max(obj.lipschitz() * d * d, obj.grad_bound(fs) * d);
    if (*solver.c_override < floor - 1e-12) {
      complain("solver.c = " + std::to_string(*solver.c_override) +
               " understates max{L*D^2, G*D} = " + std::to_string(floor) +
               "; the curvature constant must dominate both");
    }
  }

  for (const auto& name : checks.enabled) {
    bool convex_only = name == "delta_floor" || name == "convex_one_step" ||
                       name == "telescoping" || name == "weighted_recursion" ||
                       name == "classical_envelope";
    bool adaptive_only = name == "descent_prefix_sum" || name == "gap_rate_bound";
    if (convex_only && solver.variant != "convex") {
      complain("check '" + name + "' applies only to the convex variant");
    }
    if (adaptive_only && solver.variant != "nonconvex" && solver.variant != "relative") {
      complain("check '" + name + "' applies only to the adaptive variants");
    }
    if ((name == "relative_gap_rate" || name == "interior_margin_rate") &&
        solver.variant != "relative") {
      complain("check '" + name + "' applies only to the relative variant");
    }
    if ((name == "interior_margin_rate" || name == "margin") && !(checks.margin_r > 0)) {
      complain("check '" + name + "' needs checks.margin_r > 0");
    }
    if (name == "scheduled_gap_envelope" && oracle.model != "additive_scheduled") {
      complain("check 'scheduled_gap_envelope' needs the scheduled oracle model");
    }
  }

  return v;
}

void ExperimentConfig::require_valid() const {
  auto v = validate();
  if (!v.empty()) throw ConfigError(std::move(v));
}

IterateTrace ExperimentConfig::run_solver() const {
  FeasibleSet fs = build_set();
  Objective obj = build_objective();
  InexactOracle orc = build_oracle();
  Vec x0 = solver.x0.empty() ? fs.center() : Vec(Eigen::Map<const Vec>(solver.x0.data(), fs.dim()));
  SolverOptions options;
  options.early_stop_on_null = solver.early_stop;

  if (solver.variant == "convex") {
    StepRule rule = solver.step == "power" ? StepRule::power_decay(solver.power)
                                           : StepRule::harmonic_two();
    return solve_convex_fw(obj, fs, orc, rule, x0, solver.k_max, options);
  }
  if (solver.variant == "nonconvex") {
    auto c = CurvatureConstant::from(obj, fs, solver.c_override);
    return solve_nonconvex_fw(obj, fs, orc, c, oracle.model == "exact" ? 0.0 : oracle.delta, x0,
                              solver.k_max, options);
  }
  if (solver.variant == "relative") {
    auto c = CurvatureConstant::from(obj, fs, solver.c_override);
    return solve_relative_fw(obj, fs, orc, c, oracle.delta, x0, solver.k_max, options);
  }
  if (solver.variant == "backtracking") {
    return solve_backtracking_fw(obj, fs, orc, obj.lipschitz(), solver.eta, solver.alpha0, x0,
                                 solver.k_max, options);
  }
  throw std::invalid_argument("unknown solver variant: " + solver.variant);
}

}  // namespace fw
