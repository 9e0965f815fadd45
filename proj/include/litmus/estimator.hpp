#ifndef LITMUS_ESTIMATOR_HPP
#define LITMUS_ESTIMATOR_HPP

#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "litmus/calibration.hpp"

namespace litmus {

/// One Litmus test result: the probe's startup slowdowns plus the machine's
/// L3-miss count during the startup window.
struct LitmusReading {
  SlowdownTriple startup_slowdown;
  double l3_misses = 0.0;

  double component(int idx) const;  // 0 = private, 1 = shared, 2 = total
};

enum class Component { priv = 0, shared = 1, total = 2 };

/// Checks that the total slowdown is a plausible mix of the component
/// slowdowns for the given probe; throws DomainError otherwise.
void validate_reading(const LitmusReading& reading, const FunctionSpec& probe);

struct LinearModel {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;

  double eval(double x) const { return intercept + slope * x; }
};

/// y = a + b * ln(x); fit domain strictly positive.
struct LogModel {
  double a = 0.0;
  double b = 0.0;

  double eval(double x) const;
};

/// Ordinary least squares on (x, y); needs at least two distinct x.
LinearModel fit_linear(std::span<const std::pair<double, double>> points);

/// OLS on (ln x, y); all x must be positive.
LogModel fit_log(std::span<const std::pair<double, double>> points);

/// Fitted models for one traffic generator: per-component linear maps from
/// startup slowdown to reference slowdown, plus the L3-miss curve. The raw
/// (startup total slowdown, l3) calibration points are kept as anchors so the
/// expected-miss lookup reproduces the table exactly at calibrated levels.
struct GeneratorModels {
  LinearModel fit_private;
  LinearModel fit_shared;
  LinearModel fit_total;
  LogModel l3_fit;
  std::vector<std::pair<double, double>> l3_anchors;  // sorted by startup slowdown

  const LinearModel& fit(Component c) const;
  /// Expected L3 misses at a given startup total slowdown: log-space
  /// interpolation over the anchors when present, else the fitted LogModel.
  double expected_l3(double startup_total) const;
};

struct DiscountModelSet {
  GeneratorModels ct;
  GeneratorModels mb;
};

/// Fits per-generator models from row-correspondent calibration tables.
DiscountModelSet fit_models(const CongestionTable& ct, const PerformanceTable& pt);

struct InterpolationResult {
  double slowdown = 1.0;     // >= 1
  double weight = 0.0;       // 0 = pure CT regime, 1 = pure MB regime
  bool regime_collapse = false;
};

/// Estimates the slowdown for one pricing component: the two generator
/// regressions give the regime extremes, the L3-miss reading places the
/// machine between them in log space.
InterpolationResult interpolate_detail(const LitmusReading& reading,
                                       const DiscountModelSet& models, Component component);

double interpolate(const LitmusReading& reading, const DiscountModelSet& models,
                   Component component);

/// Runs the configured probe against the machine's current ground-truth state
/// and packages the reading. The probe is the tenant function's own startup,
/// so it costs the tenant nothing extra.
LitmusReading run_litmus_test(const StartupSpec& probes, const CongestionVector& c, int n,
                              ProbeMix mix = ProbeMix::py,
                              const SharingOverheadModel& model = {});

// JSON persistence; round-trips at full decimal precision.
void write_json(const DiscountModelSet& models, std::ostream& out);
DiscountModelSet parse_models_json(std::istream& in);
void save_models_json(const DiscountModelSet& models, const std::string& path);
DiscountModelSet load_models_json(const std::string& path);

}  // namespace litmus

#endif
