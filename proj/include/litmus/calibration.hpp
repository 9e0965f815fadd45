#ifndef LITMUS_CALIBRATION_HPP
#define LITMUS_CALIBRATION_HPP

#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "litmus/machine.hpp"
#include "litmus/traffic.hpp"

namespace litmus {

/// The fixed startup probes, one per language runtime. These never vary per
/// tenant: a runtime's startup phase is the same code for everyone.
struct StartupSpec {
  FunctionSpec py;
  FunctionSpec nj;
  FunctionSpec go;

  /// Startup window length; carried as metadata, the simulator does not
  /// count instructions.
  double instruction_budget = 45e6;

  const FunctionSpec& probe(Runtime rt) const;
};

StartupSpec default_startup_spec();

/// How the three runtimes' startup measurements combine into one table row.
enum class ProbeMix { mean, py };

struct SlowdownTriple {
  double s_private = 1.0;
  double s_shared = 1.0;
  double s_total = 1.0;
};

struct StartupMeasurement {
  SlowdownTriple slowdowns;
  double l3_misses = 0.0;
};

/// Runs the probe under congestion and reports per-component slowdowns
/// relative to its solo baseline. A zero solo slice makes that component's
/// slowdown 1 by definition.
StartupMeasurement measure_startup(const FunctionSpec& probe, const CongestionVector& c, int n,
                                   const SharingOverheadModel& model = {});

struct CongestionRow {
  GeneratorKind generator;
  int level;
  double su_private;
  double su_shared;
  double su_total;
  double l3_misses;

  bool operator==(const CongestionRow&) const = default;
};

/// Startup slowdowns and L3 misses per (generator, stress level).
struct CongestionTable {
  std::vector<CongestionRow> rows;  // sorted: CT block then MB block, by level

  bool operator==(const CongestionTable&) const = default;
};

struct PerformanceRow {
  GeneratorKind generator;
  int level;
  double ref_private;
  double ref_shared;
  double ref_total;

  bool operator==(const PerformanceRow&) const = default;
};

/// Geometric-mean reference-function slowdowns, row-correspondent with the
/// congestion table.
struct PerformanceTable {
  std::vector<PerformanceRow> rows;

  bool operator==(const PerformanceTable&) const = default;
};

/// exp(mean(ln(values))); throws on empty input or non-positive values.
double gmean(std::span<const double> values);

CongestionTable build_congestion_table(const StartupSpec& probes, const GeneratorProfile& ct,
                                       const GeneratorProfile& mb,
                                       const std::vector<StressLevel>& levels, int n = 1,
                                       ProbeMix mix = ProbeMix::mean,
                                       const SharingOverheadModel& model = {});

PerformanceTable build_performance_table(const std::vector<FunctionSpec>& refs,
                                         const GeneratorProfile& ct, const GeneratorProfile& mb,
                                         const std::vector<StressLevel>& levels, int n = 1,
                                         const SharingOverheadModel& model = {});

// CSV persistence. Values are written in shortest round-trip decimal form, so
// parse(write(t)) == t bit-exactly.
void write_csv(const CongestionTable& table, std::ostream& out);
void write_csv(const PerformanceTable& table, std::ostream& out);
CongestionTable parse_congestion_csv(std::istream& in);
PerformanceTable parse_performance_csv(std::istream& in);

void save_congestion_csv(const CongestionTable& table, const std::string& path);
void save_performance_csv(const PerformanceTable& table, const std::string& path);
CongestionTable load_congestion_csv(const std::string& path);
PerformanceTable load_performance_csv(const std::string& path);

}  // namespace litmus

#endif
