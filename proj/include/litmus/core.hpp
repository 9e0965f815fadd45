#ifndef LITMUS_CORE_HPP
#define LITMUS_CORE_HPP

#include <string>

#include "litmus/errors.hpp"

namespace litmus {

/// Number of active stressor threads on the calibration machine.
/// One core is reserved for the measured function, so the valid range is 1..31.
class StressLevel {
 public:
  static constexpr int kMin = 1;
  static constexpr int kMax = 31;

  explicit StressLevel(int level);

  int value() const { return level_; }

  friend bool operator==(StressLevel a, StressLevel b) { return a.level_ == b.level_; }
  friend bool operator<(StressLevel a, StressLevel b) { return a.level_ < b.level_; }

 private:
  int level_;
};

/// Ground-truth machine congestion on the two shared-resource regimes:
/// traffic contained before the L3 cache vs. traffic that spills past it.
/// The zero vector is a congestion-free machine.
struct CongestionVector {
  double pre_l3 = 0.0;
  double post_l3 = 0.0;

  bool is_zero() const { return pre_l3 == 0.0 && post_l3 == 0.0; }
};

/// A run's execution time split into private-resource cycles and cycles
/// stalled on shared resources. Units are abstract simulated cycles.
struct TimeSlices {
  double t_private = 0.0;
  double t_shared = 0.0;

  double t_total() const { return t_private + t_shared; }

  friend TimeSlices operator+(const TimeSlices& a, const TimeSlices& b) {
    return {a.t_private + b.t_private, a.t_shared + b.t_shared};
  }
};

/// Per-axis fractional slowdown per unit of congestion.
struct Sensitivity {
  double pre_l3 = 0.0;
  double post_l3 = 0.0;
};

enum class Runtime { py, nj, go };

std::string to_string(Runtime rt);
Runtime runtime_from_string(const std::string& s);

/// A synthetic serverless function: its solo time slices plus how strongly
/// each slice reacts to the two congestion axes.
struct FunctionSpec {
  std::string name;
  Runtime runtime = Runtime::py;
  TimeSlices base;               // solo, zero congestion
  Sensitivity sens_shared;       // applied to t_shared
  Sensitivity sens_private;      // applied to t_private
  double base_l3_misses = 0.0;   // solo L3-miss count
  double l3_sensitivity = 0.0;   // fractional L3-miss growth per unit post_l3
  double memory_gb = 1.0;
};

/// Throws InvalidSpec naming the first violated invariant, otherwise returns
/// the spec unchanged.
FunctionSpec validate_spec(const FunctionSpec& spec);

/// One simulated run: measured slices under congestion plus the ground-truth
/// solo slices (carried for oracle use only, a real platform never sees them).
struct ExecutionRecord {
  std::string spec_name;
  TimeSlices slices;   // under congestion
  TimeSlices solo;     // ground truth
  double l3_misses = 0.0;
  int co_runners = 1;
};

/// Per-component price multipliers; rates only discount, never surcharge.
struct ChargingRates {
  double r_private = 1.0;
  double r_shared = 1.0;
  double r_base = 1.0;
};

ChargingRates validate_rates(const ChargingRates& rates);

/// Total price split into its private and shared components.
struct PriceBreakdown {
  double p_private = 0.0;
  double p_shared = 0.0;
  double p_total = 0.0;   // always p_private + p_shared
  double discount_fraction = 0.0;
};

/// Builds a breakdown from the two components; discount is relative to the
/// given commercial (undiscounted) price, 0 when commercial is 0.
PriceBreakdown make_breakdown(double p_private, double p_shared, double commercial_total);

}  // namespace litmus

#endif
