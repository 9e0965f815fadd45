#ifndef LITMUS_MACHINE_HPP
#define LITMUS_MACHINE_HPP

#include "litmus/core.hpp"

namespace litmus {

/// Temporal CPU sharing overhead: f(n) = 1 + kappa * log10(min(n, plateau_n)).
/// With the defaults f(10) = 1.025 exactly and the curve is flat beyond 20
/// co-runners per core.
struct SharingOverheadModel {
  double kappa = 0.025;
  int plateau_n = 20;
};

/// Overhead multiplier for n functions time-sharing one core; f(1) = 1.
double sharing_factor(const SharingOverheadModel& model, int n);

/// The ground-truth contention law. Each slice grows affinely with the two
/// congestion axes; switching overhead multiplies only the private slice.
ExecutionRecord execute(const FunctionSpec& spec, const CongestionVector& c, int n,
                        const SharingOverheadModel& model = {});

/// execute() on an idle machine: the record's slices equal spec.base exactly.
ExecutionRecord execute_solo(const FunctionSpec& spec);

}  // namespace litmus

#endif
