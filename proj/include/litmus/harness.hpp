#ifndef LITMUS_HARNESS_HPP
#define LITMUS_HARNESS_HPP

#include <cstdint>
#include <iosfwd>
#include <map>

#include "litmus/pricing.hpp"
#include "litmus/workload.hpp"

namespace litmus {

enum class SharingMethod { none, method1, method2 };

std::string to_string(SharingMethod m);
SharingMethod sharing_method_from_string(const std::string& s);

struct ScenarioConfig {
  std::uint64_t seed = 42;
  std::string workload_file;                     // empty = built-in population
  std::vector<std::string> reference_names;      // empty = built-in reference set
  int co_runners = 26;
  SharingMethod sharing_method = SharingMethod::none;
  int repetitions = 30;
  int cores = 16;                                // used to derive per-core sharing
  ProbeMix probe_policy = ProbeMix::py;          // probe used for readings
  ProbeMix calibration_probe_mix = ProbeMix::mean;
  GeneratorProfile ct_profile;                   // defaults set in constructor
  GeneratorProfile mb_profile;
  int level_min = 1;
  int level_max = 31;
  bool memory_bias = false;                      // heavy scenario: churn only
                                                 // memory-intensive functions
  double churn_quantum_cycles = 500.0;

  ScenarioConfig();

  std::vector<StressLevel> levels() const;
  /// Functions sharing one core under the configured method (1 for none).
  int per_core_runners() const;
  /// Flat key=value echo, used in the report sidecar.
  std::map<std::string, std::string> echo() const;
};

/// Parses the flat key=value config format; unknown keys are errors.
ScenarioConfig parse_config(std::istream& in);
ScenarioConfig load_config(const std::string& path);

/// Deterministic co-runner churn: an active multiset of `co_runners` pool
/// functions, each replaced by a fresh uniform draw when it finishes. The
/// emitted vector is the sum of the active functions' footprints at each step.
std::vector<CongestionVector> churn_congestion(const Workload& pool, int co_runners,
                                               std::uint64_t seed, int steps,
                                               double quantum_cycles = 500.0);

struct ReportRow {
  std::string function;
  Runtime runtime = Runtime::py;
  double norm_commercial = 1.0;
  double norm_ideal = 1.0;
  double norm_litmus = 1.0;
  double ideal_discount = 0.0;
  double litmus_discount = 0.0;
  double werr_private = 0.0;
  double werr_shared = 0.0;
  double werr_total = 0.0;

  bool operator==(const ReportRow&) const = default;
};

struct ScenarioReport {
  std::vector<ReportRow> rows;
  double mean_ideal_discount = 0.0;
  double mean_litmus_discount = 0.0;
  double mean_abs_weighted_error = 0.0;
  std::uint64_t seed = 0;
  std::map<std::string, std::string> config_echo;
};

/// Workload split into calibration references and tenant test functions.
struct WorkloadSplit {
  Workload workload;
  std::vector<FunctionSpec> refs;
  std::vector<WorkloadEntry> tests;
};

/// Loads the configured workload and splits it; throws ConfigError on
/// duplicates, unknown reference names, or an empty side.
WorkloadSplit split_workload(const ScenarioConfig& config);

struct CalibrationArtifacts {
  CongestionTable congestion;
  PerformanceTable performance;
  DiscountModelSet models;
};

/// Builds both tables and fits the discount models for the configured world.
CalibrationArtifacts calibrate(const ScenarioConfig& config);

/// End-to-end experiment: calibrate (or reuse), churn congestion, execute the
/// test set with probes, and price everything three ways.
ScenarioReport run_scenario(const ScenarioConfig& config);

/// Writes `<path>` (CSV rows) and `<path>.json` (aggregates + config echo).
void emit_report(const ScenarioReport& report, const std::string& path);
void write_report_csv(const ScenarioReport& report, std::ostream& out);
std::vector<ReportRow> parse_report_csv(std::istream& in);

/// Aggregates recomputed from rows; used to cross-check emitted reports.
void recompute_aggregates(ScenarioReport& report);

}  // namespace litmus

#endif
