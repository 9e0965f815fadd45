#include "litmus/traffic.hpp"

namespace litmus {

std::string to_string(GeneratorKind kind) {
  return kind == GeneratorKind::CT ? "CT" : "MB";
}

GeneratorKind generator_from_string(const std::string& s) {
  if (s == "CT") return GeneratorKind::CT;
  if (s == "MB") return GeneratorKind::MB;
  throw DomainError("unknown generator kind: " + s);
}

GeneratorProfile default_ct_profile() {
  return {GeneratorKind::CT, 1.0, 0.0};
}

GeneratorProfile default_mb_profile() {
  return {GeneratorKind::MB, 0.6, 1.0};
}

void validate_profiles(const GeneratorProfile& ct, const GeneratorProfile& mb) {
  if (ct.kind != GeneratorKind::CT || mb.kind != GeneratorKind::MB) {
    throw ConfigError("generator profiles have mismatched kinds");
  }
  if (ct.alpha_pre < 0.0 || ct.alpha_post < 0.0 || mb.alpha_pre < 0.0 || mb.alpha_post < 0.0) {
    throw ConfigError("generator alphas must be non-negative");
  }
  if (ct.alpha_post != 0.0) {
    throw ConfigError("CT profile must have alpha_post = 0");
  }
  if (!(mb.alpha_post > 0.0)) {
    throw ConfigError("MB profile must have alpha_post > 0");
  }
  if (!(mb.alpha_pre < ct.alpha_pre)) {
    throw ConfigError("MB alpha_pre must stay below CT alpha_pre");
  }
}

CongestionVector congestion_at(const GeneratorProfile& profile, StressLevel level) {
  const double l = static_cast<double>(level.value());
  return {profile.alpha_pre * l, profile.alpha_post * l};
}

}  // namespace litmus
