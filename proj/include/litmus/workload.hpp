#ifndef LITMUS_WORKLOAD_HPP
#define LITMUS_WORKLOAD_HPP

#include <iosfwd>
#include <vector>

#include "litmus/core.hpp"

namespace litmus {

/// One workload CSV row: a function spec plus the congestion footprint it
/// contributes to the machine while it is running as a co-runner.
struct WorkloadEntry {
  FunctionSpec spec;
  double footprint_pre = 0.0;
  double footprint_post = 0.0;
};

using Workload = std::vector<WorkloadEntry>;

/// The synthetic population shipped with the repo: 27 functions across the
/// three runtimes, generated from a fixed seed. Private-slice sensitivities
/// are nearly uniform across functions while the private/shared time mix
/// varies widely, so total slowdowns spread out under the same congestion.
Workload default_workload();

/// The 13 functions of the default population reserved for calibration.
std::vector<std::string> default_reference_names();

void write_csv(const Workload& workload, std::ostream& out);
Workload parse_workload_csv(std::istream& in);
void save_workload_csv(const Workload& workload, const std::string& path);
Workload load_workload_csv(const std::string& path);

}  // namespace litmus

#endif
