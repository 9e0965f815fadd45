#include "litmus/acceptance.hpp"

#include <cmath>
#include <ostream>
#include <random>
#include <sstream>

#include "litmus/harness.hpp"

namespace litmus::acceptance {
namespace {

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
}

DiscountModelSet anchor_models(double discount_ct, double discount_mb, double l3_ct,
                               double l3_mb) {
  auto flat = [](double slowdown) { return LinearModel{0.0, slowdown, 1.0}; };
  DiscountModelSet m;
  const double s_ct = 1.0 / (1.0 - discount_ct);
  const double s_mb = 1.0 / (1.0 - discount_mb);
  m.ct.fit_private = m.ct.fit_shared = m.ct.fit_total = flat(s_ct);
  m.mb.fit_private = m.mb.fit_shared = m.mb.fit_total = flat(s_mb);
  m.ct.l3_fit = {l3_ct, 0.0};
  m.mb.l3_fit = {l3_mb, 0.0};
  return m;
}

FunctionSpec random_spec(std::mt19937_64& rng, int i) {
  FunctionSpec f;
  f.name = "rand-" + std::to_string(i);
  f.base = {uniform(rng, 100.0, 5000.0), uniform(rng, 0.0, 2000.0)};
  f.sens_shared = {uniform(rng, 0.0, 0.1), uniform(rng, 0.0, 0.12)};
  f.sens_private = {f.sens_shared.pre_l3 * uniform(rng, 0.0, 1.0),
                    f.sens_shared.post_l3 * uniform(rng, 0.0, 1.0)};
  f.base_l3_misses = uniform(rng, 0.0, 500.0);
  f.l3_sensitivity = uniform(rng, 0.0, 0.4);
  f.memory_gb = uniform(rng, 0.25, 4.0);
  return validate_spec(f);
}

// 1. The worked interpolation example: anchors at 10 misses -> 1% discount
//    and 1000 misses -> 6%; 100 misses lands near the log-space midpoint.
CriterionResult criterion_interpolation() {
  CriterionResult res{1, "interpolation worked example", true, ""};
  const DiscountModelSet models = anchor_models(0.01, 0.06, 10.0, 1000.0);
  auto discount_at = [&](double l3) {
    LitmusReading r;
    r.startup_slowdown = {1.0, 1.0, 1.0};
    r.l3_misses = l3;
    return 1.0 - 1.0 / interpolate(r, models, Component::total);
  };
  const double d10 = discount_at(10.0);
  const double d100 = discount_at(100.0);
  const double d1000 = discount_at(1000.0);
  std::ostringstream detail;
  detail << "d(10)=" << d10 << " d(100)=" << d100 << " d(1000)=" << d1000;
  res.detail = detail.str();
  res.passed = std::abs(d10 - 0.010) <= 0.0005 && std::abs(d100 - 0.035) <= 0.001 &&
               std::abs(d1000 - 0.060) <= 0.0005;
  return res;
}

// 2. Ideal price equals the solo-execution price on random records.
CriterionResult criterion_ideal_identity() {
  CriterionResult res{2, "ideal-price identity", true, ""};
  std::mt19937_64 rng(0xacce9701ULL);
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const FunctionSpec f = random_spec(rng, i);
    const CongestionVector c{uniform(rng, 0.0, 40.0), uniform(rng, 0.0, 40.0)};
    const int n = 1 + static_cast<int>(rng() % 32);
    const ExecutionRecord rec = execute(f, c, n);
    const PriceBreakdown ideal = ideal_price(rec, f.memory_gb);
    const double expected = f.memory_gb * rec.solo.t_total();
    const double rel = std::abs(ideal.p_total - expected) / expected;
    worst = std::max(worst, rel);
  }
  std::ostringstream detail;
  detail << "worst relative deviation " << worst << " over 10000 triples";
  res.detail = detail.str();
  res.passed = worst <= 1e-12;
  return res;
}

// 3. Closed loop: calibrate the default world, then a function whose
//    sensitivities equal the reference gmean prices out within 1e-3 of ideal
//    at every calibrated (generator, level).
CriterionResult criterion_closed_loop() {
  CriterionResult res{3, "closed-loop estimator exactness", true, ""};
  const ScenarioConfig config;
  const WorkloadSplit split = split_workload(config);
  const CalibrationArtifacts art = calibrate(config);
  const StartupSpec probes = default_startup_spec();

  auto component_gmean = [&](auto pick) {
    std::vector<double> vals;
    for (const auto& ref : split.refs) vals.push_back(pick(ref));
    return gmean(vals);
  };
  FunctionSpec f;
  f.name = "gmean-ref";
  f.base = {3000.0, 600.0};
  f.sens_shared = {component_gmean([](const FunctionSpec& r) { return r.sens_shared.pre_l3; }),
                   component_gmean([](const FunctionSpec& r) { return r.sens_shared.post_l3; })};
  f.sens_private = {
      component_gmean([](const FunctionSpec& r) { return r.sens_private.pre_l3; }),
      component_gmean([](const FunctionSpec& r) { return r.sens_private.post_l3; })};
  f.base_l3_misses = component_gmean([](const FunctionSpec& r) { return r.base_l3_misses; });
  f.l3_sensitivity = component_gmean([](const FunctionSpec& r) { return r.l3_sensitivity; });
  validate_spec(f);

  double worst = 0.0;
  for (const auto* profile : {&config.ct_profile, &config.mb_profile}) {
    for (StressLevel level : config.levels()) {
      const CongestionVector c = congestion_at(*profile, level);
      const LitmusReading reading = run_litmus_test(probes, c, 1, config.probe_policy);
      const ExecutionRecord rec = execute(f, c, 1);
      const PriceBreakdown lit = litmus_price(rec, reading, art.models, f.memory_gb);
      const PriceBreakdown ideal = ideal_price(rec, f.memory_gb);
      worst = std::max(worst, std::abs(lit.discount_fraction - ideal.discount_fraction));
    }
  }
  std::ostringstream detail;
  detail << "worst |litmus - ideal| discount " << worst;
  res.detail = detail.str();
  res.passed = worst <= 1e-3;
  return res;
}

// 4 & 8. End-to-end tracking over 10 seeds plus the never-surcharge sweep.
struct ScenarioSweep {
  CriterionResult tracking{4, "end-to-end tracking", true, ""};
  CriterionResult surcharge{8, "never-surcharge", true, ""};
};

ScenarioSweep run_scenario_sweep() {
  ScenarioSweep out;
  double worst_gap = 0.0;
  double default_mean_ideal = 0.0;
  bool surcharge_ok = true;

  auto scan_rows = [&](const ScenarioReport& report) {
    for (const auto& row : report.rows) {
      if (row.norm_litmus > row.norm_commercial + 1e-12 || row.litmus_discount < 0.0 ||
          row.litmus_discount >= 1.0) {
        surcharge_ok = false;
      }
    }
  };

  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    ScenarioConfig config;
    config.seed = seed;
    const ScenarioReport report = run_scenario(config);
    scan_rows(report);
    worst_gap = std::max(worst_gap,
                         std::abs(report.mean_litmus_discount - report.mean_ideal_discount));
    if (seed == 1) default_mean_ideal = report.mean_ideal_discount;
  }

  ScenarioConfig heavy;
  heavy.seed = 1;
  heavy.co_runners = 320;
  heavy.memory_bias = true;
  const ScenarioReport heavy_report = run_scenario(heavy);
  scan_rows(heavy_report);

  std::ostringstream detail;
  detail << "worst |mean litmus - mean ideal| " << worst_gap << "; heavy ideal discount "
         << heavy_report.mean_ideal_discount << " vs default " << default_mean_ideal;
  out.tracking.detail = detail.str();
  out.tracking.passed =
      worst_gap <= 0.02 && heavy_report.mean_ideal_discount > default_mean_ideal;
  out.surcharge.detail = surcharge_ok ? "all scenario prices <= commercial, discounts in [0,1)"
                                      : "a Litmus price exceeded commercial";
  out.surcharge.passed = surcharge_ok;
  return out;
}

// 5. The Method 1 calibration anchor and the plateau shape.
CriterionResult criterion_sharing_anchor() {
  CriterionResult res{5, "sharing overhead anchor", true, ""};
  const SharingOverheadModel model;
  bool ok = sharing_factor(model, 10) == 1.025;
  double prev = sharing_factor(model, 1);
  ok = ok && prev == 1.0;
  for (int n = 2; n <= 64; ++n) {
    const double f = sharing_factor(model, n);
    if (f < prev) ok = false;
    if (n >= model.plateau_n && f != sharing_factor(model, model.plateau_n)) ok = false;
    prev = f;
  }
  std::ostringstream detail;
  detail << "f(10)=" << sharing_factor(model, 10) << " f(20)=" << sharing_factor(model, 20);
  res.detail = detail.str();
  res.passed = ok;
  return res;
}

// 6. fit_linear / fit_log vs an independent normal-equations solve.
CriterionResult criterion_regression_oracle() {
  CriterionResult res{6, "regression oracle equivalence", true, ""};
  std::mt19937_64 rng(0xacce9706ULL);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 8 + static_cast<int>(rng() % 40);
    const double slope = uniform(rng, -5.0, 5.0);
    const double intercept = uniform(rng, -10.0, 10.0);
    std::vector<std::pair<double, double>> pts, log_pts;
    for (int i = 0; i < n; ++i) {
      const double x = uniform(rng, 0.1, 20.0);
      const double noise = uniform(rng, -0.05, 0.05);
      pts.emplace_back(x, intercept + slope * x + noise);
      log_pts.emplace_back(x, intercept + slope * std::log(x) + noise);
    }
    // Normal equations solved directly in extended precision.
    auto solve = [](const std::vector<std::pair<double, double>>& data, bool log_x) {
      long double sx = 0, sxx = 0, sy = 0, sxy = 0;
      const long double n = static_cast<long double>(data.size());
      for (const auto& [x0, y] : data) {
        const long double x = log_x ? std::log(static_cast<long double>(x0)) : x0;
        sx += x;
        sxx += x * x;
        sy += y;
        sxy += x * y;
      }
      const long double det = n * sxx - sx * sx;
      const long double b = (n * sxy - sx * sy) / det;
      const long double a = (sy * sxx - sx * sxy) / det;
      return std::pair<double, double>(static_cast<double>(b), static_cast<double>(a));
    };
    const LinearModel lin = fit_linear(pts);
    const auto [b1, a1] = solve(pts, false);
    worst = std::max({worst, std::abs(lin.slope - b1), std::abs(lin.intercept - a1)});
    const LogModel lg = fit_log(log_pts);
    const auto [b2, a2] = solve(log_pts, true);
    worst = std::max({worst, std::abs(lg.b - b2), std::abs(lg.a - a2)});
  }
  std::ostringstream detail;
  detail << "worst coefficient deviation " << worst << " over 100 datasets";
  res.detail = detail.str();
  res.passed = worst <= 1e-9;
  return res;
}

// 7. Default-world table monotonicity plus bit-exact CSV round-trips.
CriterionResult criterion_tables() {
  CriterionResult res{7, "table monotonicity and round-trip", true, ""};
  const ScenarioConfig config;
  const CalibrationArtifacts art = calibrate(config);

  bool monotone = true;
  auto check = [&](GeneratorKind kind, auto member, const auto& rows) {
    double prev = -1.0;
    for (const auto& r : rows) {
      if (r.generator != kind) continue;
      const double v = member(r);
      if (v < prev) monotone = false;
      prev = v;
    }
  };
  for (GeneratorKind kind : {GeneratorKind::CT, GeneratorKind::MB}) {
    check(kind, [](const CongestionRow& r) { return r.su_private; }, art.congestion.rows);
    check(kind, [](const CongestionRow& r) { return r.su_shared; }, art.congestion.rows);
    check(kind, [](const CongestionRow& r) { return r.su_total; }, art.congestion.rows);
    check(kind, [](const CongestionRow& r) { return r.l3_misses; }, art.congestion.rows);
    check(kind, [](const PerformanceRow& r) { return r.ref_private; }, art.performance.rows);
    check(kind, [](const PerformanceRow& r) { return r.ref_shared; }, art.performance.rows);
    check(kind, [](const PerformanceRow& r) { return r.ref_total; }, art.performance.rows);
  }

  std::ostringstream csv1, csv2;
  write_csv(art.congestion, csv1);
  std::istringstream in1(csv1.str());
  const CongestionTable ct_back = parse_congestion_csv(in1);
  write_csv(art.performance, csv2);
  std::istringstream in2(csv2.str());
  const PerformanceTable pt_back = parse_performance_csv(in2);
  const bool roundtrip = ct_back == art.congestion && pt_back == art.performance;

  res.detail = std::string("monotone=") + (monotone ? "yes" : "no") + " roundtrip=" +
               (roundtrip ? "bit-exact" : "MISMATCH");
  res.passed = monotone && roundtrip;
  return res;
}

}  // namespace

std::vector<CriterionResult> run_all() {
  std::vector<CriterionResult> results;
  results.push_back(criterion_interpolation());
  results.push_back(criterion_ideal_identity());
  results.push_back(criterion_closed_loop());
  const ScenarioSweep sweep = run_scenario_sweep();
  results.push_back(sweep.tracking);
  results.push_back(criterion_sharing_anchor());
  results.push_back(criterion_regression_oracle());
  results.push_back(criterion_tables());
  results.push_back(sweep.surcharge);
  return results;
}

bool run_and_print(std::ostream& out) {
  bool all = true;
  for (const auto& r : run_all()) {
    out << (r.passed ? "PASS" : "FAIL") << "  [" << r.id << "] " << r.name << ": " << r.detail
        << '\n';
    all = all && r.passed;
  }
  out << (all ? "ACCEPTANCE: all criteria passed\n" : "ACCEPTANCE: FAILURES present\n");
  return all;
}

}  // namespace litmus::acceptance
