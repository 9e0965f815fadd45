#ifndef LITMUS_TRAFFIC_HPP
#define LITMUS_TRAFFIC_HPP

#include "litmus/core.hpp"

namespace litmus {

enum class GeneratorKind { CT, MB };

std::string to_string(GeneratorKind kind);
GeneratorKind generator_from_string(const std::string& s);

/// Per-thread congestion contribution of a traffic generator.
/// CT floods the path up to the L3 and never spills past it (alpha_post = 0).
/// MB spills past the L3 and is self-throttled on the pre-L3 path, so its
/// alpha_pre stays below CT's.
struct GeneratorProfile {
  GeneratorKind kind = GeneratorKind::CT;
  double alpha_pre = 0.0;
  double alpha_post = 0.0;
};

GeneratorProfile default_ct_profile();
GeneratorProfile default_mb_profile();

/// Validates the CT/MB shape constraints for a pair of profiles.
void validate_profiles(const GeneratorProfile& ct, const GeneratorProfile& mb);

/// Ground-truth congestion created by `level` stressor threads.
CongestionVector congestion_at(const GeneratorProfile& profile, StressLevel level);

}  // namespace litmus

#endif
