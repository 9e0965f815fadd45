#include "litmus/machine.hpp"

#include <algorithm>
#include <cmath>

namespace litmus {

double sharing_factor(const SharingOverheadModel& model, int n) {
  if (n < 1) {
    throw DomainError("co-runner count must be >= 1");
  }
  const int eff = std::min(n, model.plateau_n);
  // log base 10 so that with kappa = 0.025 the n = 10 anchor is exact.
  return 1.0 + model.kappa * std::log(static_cast<double>(eff)) / std::log(10.0);
}

ExecutionRecord execute(const FunctionSpec& spec, const CongestionVector& c, int n,
                        const SharingOverheadModel& model) {
  ExecutionRecord rec;
  rec.spec_name = spec.name;
  rec.solo = spec.base;
  rec.co_runners = n;
  rec.slices.t_shared = spec.base.t_shared *
      (1.0 + spec.sens_shared.pre_l3 * c.pre_l3 + spec.sens_shared.post_l3 * c.post_l3);
  rec.slices.t_private = spec.base.t_private *
      (1.0 + spec.sens_private.pre_l3 * c.pre_l3 + spec.sens_private.post_l3 * c.post_l3) *
      sharing_factor(model, n);
  rec.l3_misses = spec.base_l3_misses * (1.0 + spec.l3_sensitivity * c.post_l3);
  return rec;
}

ExecutionRecord execute_solo(const FunctionSpec& spec) {
  return execute(spec, CongestionVector{}, 1);
}

}  // namespace litmus
