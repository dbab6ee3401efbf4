#include "fw/checks.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace fw {

namespace {

constexpr double kSlackTol = 1e-9;
constexpr double kSumTol = 1e-6;
constexpr double kCertTol = 1e-12;

double positive_part(double u) { return u > 0.0 ? u : 0.0; }

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

}  // namespace

void CheckResult::observe(double lhs_value, double rhs_value) {
  double s = rhs_value - lhs_value;
  if (s < slack) {
    slack = s;
    lhs = lhs_value;
    rhs = rhs_value;
  }
}

void CheckResult::finish(double tolerance) {
  if (!std::isfinite(slack)) slack = 0.0;  // nothing observed: vacuous pass
  pass = slack >= -tolerance;
}

double resolve_fstar_low(const Objective& obj, const FeasibleSet& set) {
  if (auto exact = obj.known_fstar(set)) return *exact;
  return obj.fstar_bounds(set).first;
}

// ---------------------------------------------------------------------------
// trace-level checks
// ---------------------------------------------------------------------------

CheckResult check_convex_one_step(const IterateTrace& trace) {
  CheckResult r{"convex_one_step"};
  for (std::size_t k = 0; k + 1 < trace.rows.size(); ++k) {
    r.observe(0.0, trace.rows[k].slack_onestep);
  }
  r.finish(kSlackTol);
  return r;
}

CheckResult check_telescoping(const IterateTrace& trace) {
  CheckResult r{"telescoping"};
  double sum = 0.0;
  double worst_rel = 0.0;
  for (std::size_t k = 0; k + 1 < trace.rows.size(); ++k) {
    double beta_k = trace.rows[k].beta;
    double beta_k1 = trace.rows[k + 1].beta;
    sum += beta_k1 - beta_k;
    double rel = std::abs(sum - (beta_k1 - 1.0)) / beta_k1;
    worst_rel = std::max(worst_rel, rel);
  }
  r.observe(worst_rel, kSlackTol);
  r.finish(0.0);
  r.detail = "worst relative deviation " + fmt(worst_rel);
  return r;
}

CheckResult check_weighted_recursion(const IterateTrace& trace) {
  CheckResult r{"weighted_recursion"};
  if (!trace.has_fstar()) {
    r.pass = false;
    r.detail = "f_star unavailable";
    return r;
  }
  const double fs = trace.f_star;
  const double ld2 = trace.lipschitz * trace.diameter * trace.diameter;
  for (std::size_t k = 0; k + 1 < trace.rows.size(); ++k) {
    const auto& row = trace.rows[k];
    const auto& next = trace.rows[k + 1];
    double a = row.alpha_bar;
    double lhs = next.beta * (next.f - fs);
    double rhs = row.beta * (row.f - fs) + 2.0 * a * next.beta * row.delta_eff +
                 0.5 * ld2 * a * a * next.beta;
    // the tolerance is relative in beta_{k+1}
    r.observe(lhs / next.beta, rhs / next.beta);
  }
  r.finish(kSlackTol);
  return r;
}

CheckResult check_delta_floor(const IterateTrace& trace, double tolerance) {
  CheckResult r{"delta_floor"};
  if (!trace.has_fstar()) {
    r.pass = false;
    r.detail = "f_star unavailable";
    return r;
  }
  r.observe(trace.final_suboptimality(), 2.0 * trace.delta_floor + tolerance);
  r.finish(0.0);
  r.detail = "final suboptimality " + fmt(trace.final_suboptimality());
  return r;
}

CheckResult check_one_step_decrease(const IterateTrace& trace) {
  CheckResult r{"one_step_decrease"};
  for (std::size_t k = 0; k + 1 < trace.rows.size(); ++k) {
    r.observe(0.0, trace.rows[k].slack_onestep);
  }
  r.finish(kSlackTol);
  return r;
}

CheckResult check_descent_prefix_sum(const IterateTrace& trace) {
  CheckResult r{"descent_prefix_sum"};
  const double c2 = 2.0 * trace.curvature;
  const double f0 = trace.rows.front().f;
  double sum = 0.0;
  for (std::size_t k = 0; k + 1 < trace.rows.size(); ++k) {
    double surplus = positive_part(trace.rows[k].gap_approx - trace.rows[k].delta_eff);
    sum += surplus * surplus;
    r.observe(sum, c2 * (f0 - trace.rows[k + 1].f) + kSumTol);
  }
  r.finish(0.0);
  return r;
}

CheckResult check_gap_rate_bound(const IterateTrace& trace, const std::vector<int>& prefixes,
                                 double f_star_low) {
  CheckResult r{"gap_rate_bound"};
  const double f0 = trace.rows.front().f;
  double running_min = std::numeric_limits<double>::infinity();
  std::vector<int> ks = prefixes;
  if (ks.empty()) ks.push_back(int(trace.rows.size()) - 1);
  std::sort(ks.begin(), ks.end());
  std::size_t next = 0;
  for (int k = 0; k < int(trace.rows.size()) && next < ks.size(); ++k) {
    running_min = std::min(running_min, trace.rows[std::size_t(k)].gap_exact);
    if (k == ks[next]) {
      double rhs = std::sqrt(2.0 * trace.curvature * (f0 - f_star_low) / double(k + 1)) +
                   2.0 * trace.delta_base + kSlackTol;
      r.observe(running_min, rhs);
      ++next;
    }
  }
  if (next < ks.size()) {
    r.pass = false;
    r.detail = "trace shorter than requested prefixes";
    return r;
  }
  r.finish(0.0);
  return r;
}

CheckResult check_relative_gap_rate(const IterateTrace& trace, double f_star_low) {
  CheckResult r{"relative_gap_rate"};
  const double f0 = trace.rows.front().f;
  const double delta = trace.delta_base;
  double running_min = std::numeric_limits<double>::infinity();
  for (int k = 0; k < int(trace.rows.size()); ++k) {
    const auto& row = trace.rows[std::size_t(k)];
    running_min = std::min(running_min, positive_part(row.gap_exact - 2.0 * delta * row.grad_norm));
    double rhs = std::sqrt(2.0 * trace.curvature * (f0 - f_star_low) / double(k + 1)) + kSlackTol;
    r.observe(running_min, rhs);
  }
  r.finish(0.0);
  return r;
}

CheckResult check_interior_margin_rate(const IterateTrace& trace, const FeasibleSet& set, double r_margin,
                                       double f_star_low) {
  CheckResult r{"interior_margin_rate"};
  const double delta = trace.delta_base;
  if (!(delta < 0.5 * r_margin)) {
    r.pass = false;
    r.detail = "requires delta < r/2";
    return r;
  }
  MarginReport margin = margin_check(trace, set, r_margin);
  if (!margin.holds) {
    r.pass = false;
    r.detail = "margin violated: min distance " + fmt(margin.min_distance) + " < r";
    return r;
  }
  const double f0 = trace.rows.front().f;
  const double amplify = 1.0 / (1.0 - 2.0 * delta / r_margin);
  double running_min = std::numeric_limits<double>::infinity();
  for (int k = 0; k < int(trace.rows.size()); ++k) {
    running_min = std::min(running_min, trace.rows[std::size_t(k)].gap_exact);
    double rhs =
        amplify * std::sqrt(2.0 * trace.curvature * (f0 - f_star_low) / double(k + 1)) + kSlackTol;
    r.observe(running_min, rhs);
  }
  r.finish(0.0);
  return r;
}

CheckResult check_margin(const IterateTrace& trace, const FeasibleSet& set, double r_margin) {
  CheckResult r{"margin"};
  MarginReport report = margin_check(trace, set, r_margin);
  if (!report.holds) {
    r.pass = false;
    r.lhs = report.min_distance;
    r.rhs = r_margin;
    r.slack = report.min_distance - r_margin;
    r.detail = "min boundary distance " + fmt(report.min_distance) + " < r = " + fmt(r_margin);
    return r;
  }
  r.observe(0.0, report.worst_slack);  // gap - r ||grad|| stays nonnegative
  r.finish(kSlackTol);
  r.detail = "min boundary distance " + fmt(report.min_distance);
  return r;
}

CheckResult check_gap_below(const IterateTrace& trace, double threshold) {
  CheckResult r{"gap_below"};
  r.observe(trace.min_gap_exact(), threshold);
  r.finish(0.0);
  return r;
}

CheckResult check_feasibility(const IterateTrace& trace, const FeasibleSet& set) {
  CheckResult r{"feasibility"};
  for (const auto& row : trace.rows) {
    double dist = (row.x - set.project(row.x)).norm();
    r.observe(dist, kSlackTol);
  }
  r.finish(0.0);
  return r;
}

CheckResult check_classical_envelope(const IterateTrace& trace, double factor) {
  CheckResult r{"classical_envelope"};
  if (!trace.has_fstar()) {
    r.pass = false;
    r.detail = "f_star unavailable";
    return r;
  }
  int k_final = int(trace.rows.size()) - 1;
  double rhs = factor * trace.lipschitz * trace.diameter * trace.diameter / double(k_final + 2);
  r.observe(trace.final_suboptimality(), rhs);
  r.finish(0.0);
  return r;
}

CheckResult check_scheduled_gap_envelope(const IterateTrace& trace) {
  CheckResult r{"scheduled_gap_envelope"};
  const double ld2 = trace.lipschitz * trace.diameter * trace.diameter;
  double worst_ratio = 0.0;
  for (std::size_t k = 1; k + 1 < trace.rows.size(); ++k) {
    double envelope = 27.0 * ld2 * (1.0 + trace.delta_base) / (4.0 * double(k + 2));
    worst_ratio = std::max(worst_ratio, trace.rows[k].gap_exact / envelope);
  }
  r.pass = true;  // informational: the envelope has no proof to gate on
  r.lhs = worst_ratio;
  r.rhs = 1.0;
  r.slack = 1.0 - worst_ratio;
  r.detail = "report only: worst gap/envelope ratio " + fmt(worst_ratio);
  return r;
}

// ---------------------------------------------------------------------------
// point-level checks
// ---------------------------------------------------------------------------

CheckResult check_oracle_certification(const InexactOracle& oracle, const FeasibleSet& set,
                                       int n_points, std::uint64_t seed) {
  CheckResult r{"oracle_certification"};
  Rng rng(mix_seed(seed, 0xCE27));
  for (int i = 0; i < n_points; ++i) {
    Vec x = set.random_point(rng);
    Vec y = set.random_point(rng);
    int k = int(rng.next_u64() % 64);
    Vec err = oracle.gradient(x, k) - oracle.objective().gradient(x);
    double lhs = std::abs(err.dot(x - y));
    r.observe(lhs, oracle.effective_delta(x, k) + kCertTol);
  }
  r.finish(0.0);
  return r;
}

CheckResult check_lmo_transfer(const InexactOracle& oracle, const FeasibleSet& set, int n_points,
                               std::uint64_t seed) {
  CheckResult r{"lmo_transfer"};
  Rng rng(mix_seed(seed, 0x7F2A));
  for (int i = 0; i < n_points; ++i) {
    Vec x = set.random_point(rng);
    int k = int(rng.next_u64() % 64);
    Vec g = oracle.gradient(x, k);
    Vec grad = oracle.objective().gradient(x);
    Vec s_tilde = set.lmo(g);
    Vec s_exact = set.lmo(grad);
    double lhs = grad.dot(s_tilde);
    double rhs = grad.dot(s_exact) + 2.0 * oracle.effective_delta(x, k) + kSlackTol;
    r.observe(lhs, rhs);
  }
  r.finish(0.0);
  return r;
}

CheckResult check_gap_closeness(const InexactOracle& oracle, const FeasibleSet& set, int n_points,
                                std::uint64_t seed) {
  CheckResult r{"gap_closeness"};
  Rng rng(mix_seed(seed, 0x6C05));
  for (int i = 0; i < n_points; ++i) {
    Vec x = set.random_point(rng);
    int k = int(rng.next_u64() % 64);
    double exact = fw_gap(oracle.objective(), set, x);
    double approx = fw_gap_approx(oracle, set, x, k).gap;
    r.observe(std::abs(exact - approx), oracle.effective_delta(x, k) + kSlackTol);
  }
  r.finish(0.0);
  return r;
}

CheckResult check_convex_lower_bound(const InexactOracle& oracle, const FeasibleSet& set,
                                     double f_star, int n_points, std::uint64_t seed) {
  CheckResult r{"convex_lower_bound"};
  Rng rng(mix_seed(seed, 0x11E1));
  const Objective& obj = oracle.objective();
  for (int i = 0; i < n_points; ++i) {
    Vec x = set.random_point(rng);
    int k = int(rng.next_u64() % 64);
    Vec g = oracle.gradient(x, k);
    double linear_min = g.dot(set.lmo(g) - x);
    double lhs = obj.value(x) + linear_min - oracle.effective_delta(x, k);
    r.observe(lhs, f_star + kSlackTol);
  }
  r.finish(0.0);
  return r;
}

// ---------------------------------------------------------------------------
// module suites
// ---------------------------------------------------------------------------

namespace {

std::vector<FeasibleSet> suite_sets() {
  return {FeasibleSet::simplex(6),      FeasibleSet::box(5, -1.0, 1.0),
          FeasibleSet::l1_ball(4, 2.0), FeasibleSet::l2_ball(3, 1.5),
          FeasibleSet::interval(-1.0, 1.0)};
}

int scaled(int n, double scale) { return std::max(8, int(std::lround(n * scale))); }

}  // namespace

std::vector<CheckResult> verify_geometry(std::uint64_t seed, double scale) {
  std::vector<CheckResult> out;
  const int n_dirs = scaled(10000, scale);
  const int n_feas = scaled(1000, scale);

  {  // lmo beats sampled feasible points, and matches vertex minima exactly
    CheckResult sampled{"geometry.lmo_optimality_sampled"};
    CheckResult exact{"geometry.lmo_vertex_exact"};
    for (const auto& set : suite_sets()) {
      Rng rng(mix_seed(seed, hash_bits(Vec::Constant(1, double(set.dim())), 0x10)));
      std::vector<Vec> feasible;
      feasible.reserve(std::size_t(n_feas));
      for (int i = 0; i < n_feas; ++i) feasible.push_back(set.random_point(rng));
      std::vector<Vec> verts;
      if (set.is_polytope()) verts = set.vertices();
      for (int i = 0; i < n_dirs; ++i) {
        Vec g = rng.gaussian(set.dim());
        Vec v = set.lmo(g);
        double val = g.dot(v);
        for (const Vec& c : feasible) sampled.observe(val, g.dot(c) + kSlackTol);
        if (!verts.empty()) {
          double vmin = std::numeric_limits<double>::infinity();
          for (const Vec& w : verts) vmin = std::min(vmin, g.dot(w));
          exact.observe(val, vmin);  // exact: no tolerance
        }
      }
    }
    sampled.finish(0.0);
    exact.finish(0.0);
    out.push_back(sampled);
    out.push_back(exact);
  }

  {  // projection optimality via the variational inequality
    CheckResult vi{"geometry.projection_variational"};
    CheckResult member{"geometry.projection_membership"};
    for (const auto& set : suite_sets()) {
      Rng rng(mix_seed(seed, hash_bits(Vec::Constant(1, double(set.dim())), 0x20)));
      const int n_x = scaled(300, scale);
      for (int i = 0; i < n_x; ++i) {
        Vec x = 3.0 * set.radius() * rng.gaussian(set.dim()) / std::sqrt(double(set.dim()));
        Vec p = set.project(x);
        member.observe((p - set.project(p)).norm(), kSlackTol);
        for (int j = 0; j < n_feas / 4; ++j) {
          Vec c = set.random_point(rng);
          vi.observe((c - p).dot(x - p), kSlackTol);
        }
      }
    }
    vi.finish(0.0);
    member.finish(0.0);
    out.push_back(vi);
    out.push_back(member);
  }

  {  // inexact projection: defining inequality and its inner-product consequence
    CheckResult defining{"geometry.approx_projection_defining"};
    CheckResult prop{"geometry.approx_projection_inequality"};
    const double slacks[] = {0.0, 0.05, 0.5, 2.0};
    for (const auto& set : suite_sets()) {
      Rng rng(mix_seed(seed, hash_bits(Vec::Constant(1, double(set.dim())), 0x30)));
      const int n_x = scaled(60, scale);
      for (int i = 0; i < n_x; ++i) {
        Vec x = 2.5 * set.radius() * rng.gaussian(set.dim()) / std::sqrt(double(set.dim()));
        for (double K : slacks) {
          Vec p_exact = set.project(x);
          Vec p = set.approx_project(x, K, rng.next_u64());
          double val = 0.5 * (p - x).squaredNorm();
          defining.observe(val, 0.5 * (p_exact - x).squaredNorm() + K + kSlackTol);
          for (int j = 0; j < 32; ++j) {
            Vec c = set.random_point(rng);
            prop.observe((c - p).dot(x - p), K + 0.5 * (c - p).squaredNorm() + kSlackTol);
          }
        }
      }
    }
    defining.finish(0.0);
    prop.finish(0.0);
    out.push_back(defining);
    out.push_back(prop);
  }

  {  // closed-form set constants
    CheckResult consts{"geometry.set_constants_closed_form"};
    auto expect = [&](const FeasibleSet& s, double d, double mu) {
      auto [dd, mm] = set_constants(s);
      consts.observe(std::abs(dd - d), kSlackTol);
      consts.observe(std::abs(mm - mu), kSlackTol);
    };
    expect(FeasibleSet::interval(-1, 1), 2.0, 1.0);
    expect(FeasibleSet::simplex(4), std::sqrt(2.0), 1.0);
    expect(FeasibleSet::box(3, -1, 1), 2.0 * std::sqrt(3.0), std::sqrt(3.0));
    expect(FeasibleSet::l2_ball(5, 2.0), 4.0, 2.0);
    expect(FeasibleSet::l1_ball(5, 2.0), 4.0, 2.0);
    consts.finish(0.0);
    out.push_back(consts);
  }
  return out;
}

namespace {

struct OracleFixture {
  std::string label;
  FeasibleSet set;
  InexactOracle oracle;
  double f_star;
};

std::vector<OracleFixture> oracle_fixtures(std::uint64_t seed) {
  std::vector<OracleFixture> fs;
  {
    FeasibleSet set = FeasibleSet::interval(-1, 1);
    Objective obj = Objective::scalar_square();
    fs.push_back({"exact/interval", set, InexactOracle::exact(obj), 0.0});
    fs.push_back({"sign/interval", set, InexactOracle::additive_sign(obj, 0.1, set.diameter()), 0.0});
  }
  {
    FeasibleSet set = FeasibleSet::box(3, -1, 1);
    Vec target(3);
    target << 0.3, -0.2, 0.5;
    Objective obj = Objective::shifted_quadratic(target);
    fs.push_back({"worst/box", set, InexactOracle::additive_worst_case(obj, set, 0.2, seed), 0.0});
    fs.push_back({"scheduled/box", set,
                  InexactOracle::additive_scheduled(obj, set, 0.1, DeltaSchedule::HarmonicLD2, seed),
                  0.0});
    fs.push_back({"relative/box", set, InexactOracle::relative_worst_case(obj, set, 0.15, seed), 0.0});
  }
  {
    FeasibleSet set = FeasibleSet::simplex(5);
    Vec target = Vec::Constant(5, 0.2);
    Objective obj = Objective::shifted_quadratic(target);
    fs.push_back({"worst/simplex", set, InexactOracle::additive_worst_case(obj, set, 0.1, seed ^ 1), 0.0});
    fs.push_back({"relative/simplex", set, InexactOracle::relative_worst_case(obj, set, 0.1, seed ^ 2), 0.0});
  }
  return fs;
}

}  // namespace

std::vector<CheckResult> verify_oracles(std::uint64_t seed, double scale) {
  std::vector<CheckResult> out;
  const int n = scaled(1000, scale);

  CheckResult cert_add{"oracles.certification_additive"};
  CheckResult cert_rel{"oracles.certification_relative"};
  CheckResult transfer{"oracles.lmo_transfer"};
  CheckResult closeness{"oracles.gap_closeness"};
  CheckResult lower{"oracles.convex_lower_bound"};
  CheckResult gbound{"oracles.grad_bound_envelope"};

  for (const auto& fx : oracle_fixtures(seed)) {
    bool relative = fx.oracle.model() == OracleModel::RelativeWorstCase;
    CheckResult cert = check_oracle_certification(fx.oracle, fx.set, n, seed);
    (relative ? cert_rel : cert_add).observe(cert.lhs, cert.rhs);
    CheckResult tr = check_lmo_transfer(fx.oracle, fx.set, n, seed);
    transfer.observe(tr.lhs, tr.rhs);
    CheckResult cl = check_gap_closeness(fx.oracle, fx.set, n, seed);
    closeness.observe(cl.lhs, cl.rhs);
    if (fx.oracle.objective().is_convex()) {
      double fstar = *fx.oracle.objective().known_fstar(fx.set);
      CheckResult lb = check_convex_lower_bound(fx.oracle, fx.set, fstar, n, seed);
      lower.observe(lb.lhs, lb.rhs);
    }
    Rng rng(mix_seed(seed, 0x6B));
    double bound = fx.oracle.objective().grad_bound(fx.set);
    const int n_grad = scaled(10000, scale);
    for (int i = 0; i < n_grad; ++i) {
      Vec x = fx.set.random_point(rng);
      gbound.observe(fx.oracle.objective().gradient(x).norm(), bound + kSlackTol);
    }
  }
  cert_add.finish(0.0);
  cert_rel.finish(0.0);
  transfer.finish(0.0);
  closeness.finish(0.0);
  lower.finish(0.0);
  gbound.finish(0.0);
  out.insert(out.end(), {cert_add, cert_rel, transfer, closeness, lower, gbound});
  return out;
}

std::vector<CheckResult> verify_solvers(std::uint64_t seed) {
  std::vector<CheckResult> out;
  auto add = [&](CheckResult r, const std::string& prefix) {
    r.name = "solvers." + prefix + "." + r.name;
    out.push_back(std::move(r));
  };

  {  // convex: sign-biased oracle on the interval
    FeasibleSet set = FeasibleSet::interval(-1, 1);
    Objective obj = Objective::scalar_square();
    InexactOracle oracle = InexactOracle::additive_sign(obj, 0.05, set.diameter());
    Vec x0 = Vec::Constant(1, 1.0);
    IterateTrace trace = solve_convex_fw(obj, set, oracle, StepRule::harmonic_two(), x0, 600);
    add(check_convex_one_step(trace), "convex");
    add(check_telescoping(trace), "convex");
    add(check_weighted_recursion(trace), "convex");
    add(check_feasibility(trace, set), "convex");
    IterateTrace again = solve_convex_fw(obj, set, oracle, StepRule::harmonic_two(), x0, 600);
    CheckResult det{"determinism"};
    det.pass = traces_identical(trace, again);
    det.slack = det.pass ? 0.0 : -1.0;
    add(det, "convex");
  }

  {  // adaptive additive: saddle quadratic over the box
    FeasibleSet set = FeasibleSet::box(2, -1, 1);
    Mat A = Mat::Zero(2, 2);
    A(0, 0) = 1.0;
    A(1, 1) = -1.0;
    Objective obj = Objective::quadratic(A, Vec::Zero(2));
    Vec x0(2);
    x0 << 1.0, 0.1;
    auto C = CurvatureConstant::from(obj, set);
    double fstar_low = resolve_fstar_low(obj, set);
    for (double delta : {0.0, 0.1}) {
      InexactOracle oracle = delta == 0.0
                                 ? InexactOracle::exact(obj)
                                 : InexactOracle::additive_worst_case(obj, set, delta, seed);
      IterateTrace trace = solve_nonconvex_fw(obj, set, oracle, C, delta, x0, 600);
      std::string tag = delta == 0.0 ? "nonconvex_exact" : "nonconvex_delta";
      add(check_one_step_decrease(trace), tag);
      add(check_descent_prefix_sum(trace), tag);
      add(check_gap_rate_bound(trace, {10, 100, 400}, fstar_low), tag);
      add(check_feasibility(trace, set), tag);
    }
  }

  {  // relative oracle with an interior margin on the disc
    FeasibleSet set = FeasibleSet::l2_ball(2, 1.0);
    Objective obj = Objective::shifted_quadratic(Vec::Zero(2));
    InexactOracle oracle = InexactOracle::relative_worst_case(obj, set, 0.125, seed);
    auto C = CurvatureConstant::from(obj, set);
    Vec x0(2);
    x0 << 0.3, 0.0;
    IterateTrace trace = solve_relative_fw(obj, set, oracle, C, 0.125, x0, 600);
    double fstar_low = resolve_fstar_low(obj, set);
    add(check_one_step_decrease(trace), "relative");
    add(check_relative_gap_rate(trace, fstar_low), "relative");
    add(check_margin(trace, set, 0.5), "relative");
    add(check_interior_margin_rate(trace, set, 0.5, fstar_low), "relative");
    add(check_feasibility(trace, set), "relative");
  }

  {  // backtracking agrees with the adaptive run when the oracle is exact
    FeasibleSet set = FeasibleSet::interval(-1, 1);
    Objective obj = Objective::scalar_square();
    InexactOracle oracle = InexactOracle::exact(obj);
    Vec x0 = Vec::Constant(1, 0.9);
    IterateTrace bt = solve_backtracking_fw(obj, set, oracle, obj.lipschitz(), 0.5, 1.0, x0, 200);
    auto C = CurvatureConstant::from(obj, set);
    IterateTrace ad = solve_nonconvex_fw(obj, set, oracle, C, 0.0, x0, 200);
    add(check_one_step_decrease(bt), "backtracking");
    CheckResult match{"trajectory_matches_adaptive"};
    double worst = 0.0;
    for (std::size_t k = 0; k < bt.rows.size(); ++k) {
      worst = std::max(worst, (bt.rows[k].x - ad.rows[k].x).norm());
    }
    match.observe(worst, 0.0);
    match.finish(0.0);
    add(match, "backtracking");
  }
  return out;
}

std::vector<CheckResult> verify_reduction(std::uint64_t seed, double scale) {
  std::vector<CheckResult> out;
  CheckResult sandwich{"reduction.value_sandwich"};
  CheckResult eps_lmo{"reduction.eps_lmo"};
  CheckResult chain{"reduction.chain_slacks"};
  CheckResult mono{"reduction.lambda_scaling"};

  std::vector<FeasibleSet> sets = {FeasibleSet::simplex(5), FeasibleSet::box(4, -1, 1),
                                   FeasibleSet::l2_ball(3, 1.5)};
  const double ks[] = {0.0, 0.1, 1.0};
  const double eps = 0.05;
  const int n = scaled(330, scale);

  Rng rng(mix_seed(seed, 0x4ED));
  for (const auto& set : sets) {
    for (int i = 0; i < n; ++i) {
      Vec x = rng.gaussian(set.dim());
      double K = ks[i % 3];
      auto [p, rep] = lmo_via_projection(set, x, K, eps, rng.next_u64());
      sandwich.observe(0.0, rep.reduced_value - rep.lmo_value + kSlackTol);
      sandwich.observe(rep.reduced_value - rep.lmo_value, rep.bound_rhs + kSlackTol);
      eps_lmo.observe(rep.reduced_value, rep.lmo_value + eps + kSlackTol);
      ChainSlacks cs = verify_reduction_chain(set, x, p, set.lmo(x), rep.lambda, K);
      chain.observe(0.0, cs.prop2_at_v + kSlackTol);
      chain.observe(0.0, cs.rearranged + kSlackTol);
      chain.observe(0.0, cs.cauchy_schwarz + kSlackTol);
      chain.observe(0.0, cs.final_bound + kSlackTol);
    }
  }

  {  // bound scales exactly as 1/lambda and still dominates the realized gap
    FeasibleSet set = FeasibleSet::box(4, -1, 1);
    Vec x = Rng(mix_seed(seed, 0xA0)).gaussian(4);
    double prev_rhs = 0.0;
    for (int i = 0; i < 6; ++i) {
      double lambda = 10.0 * std::pow(2.0, i);
      auto [p, rep] = lmo_via_projection_lambda(set, x, 0.5, lambda, seed + std::uint64_t(i));
      mono.observe(rep.reduced_value - rep.lmo_value, rep.bound_rhs + kSlackTol);
      if (i > 0) mono.observe(std::abs(prev_rhs - 2.0 * rep.bound_rhs), kSlackTol * prev_rhs);
      prev_rhs = rep.bound_rhs;
    }
  }

  sandwich.finish(0.0);
  eps_lmo.finish(0.0);
  chain.finish(0.0);
  mono.finish(0.0);
  out.insert(out.end(), {sandwich, eps_lmo, chain, mono});
  return out;
}

std::vector<CheckResult> verify_all(std::uint64_t seed, double scale) {
  std::vector<CheckResult> out;
  for (auto&& r : verify_geometry(seed, scale)) out.push_back(std::move(r));
  for (auto&& r : verify_oracles(seed, scale)) out.push_back(std::move(r));
  for (auto&& r : verify_solvers(seed)) out.push_back(std::move(r));
  for (auto&& r : verify_reduction(seed, scale)) out.push_back(std::move(r));
  return out;
}

bool all_pass(const std::vector<CheckResult>& results) {
  for (const auto& r : results) {
    if (!r.pass) return false;
  }
  return true;
}

}  // namespace fw
