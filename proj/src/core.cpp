#include "litmus/core.hpp"

namespace litmus {

StressLevel::StressLevel(int level) : level_(level) {
  if (level < kMin || level > kMax) {
    throw DomainError("StressLevel out of range [1, 31]: " + std::to_string(level));
  }
}

std::string to_string(Runtime rt) {
  switch (rt) {
    case Runtime::py: return "py";
    case Runtime::nj: return "nj";
    case Runtime::go: return "go";
  }
  throw DomainError("unknown runtime enum value");
}

Runtime runtime_from_string(const std::string& s) {
  if (s == "py") return Runtime::py;
  if (s == "nj") return Runtime::nj;
  if (s == "go") return Runtime::go;
  throw DomainError("unknown runtime: " + s);
}

FunctionSpec validate_spec(const FunctionSpec& spec) {
  if (spec.name.empty()) {
    throw InvalidSpec("spec name is empty");
  }
  if (!(spec.base.t_private >= 0.0) || !(spec.base.t_shared >= 0.0)) {
    throw InvalidSpec(spec.name + ": base slices must be non-negative");
  }
  if (!(spec.base.t_total() > 0.0)) {
    throw InvalidSpec(spec.name + ": base.t_total must be positive");
  }
  if (spec.sens_shared.pre_l3 < 0.0 || spec.sens_shared.post_l3 < 0.0 ||
      spec.sens_private.pre_l3 < 0.0 || spec.sens_private.post_l3 < 0.0) {
    throw InvalidSpec(spec.name + ": sensitivities must be non-negative");
  }
  if (spec.sens_private.pre_l3 > spec.sens_shared.pre_l3 ||
      spec.sens_private.post_l3 > spec.sens_shared.post_l3) {
    throw InvalidSpec(spec.name + ": private sensitivity exceeds shared sensitivity");
  }
  if (spec.base_l3_misses < 0.0) {
    throw InvalidSpec(spec.name + ": base_l3_misses must be non-negative");
  }
  if (spec.l3_sensitivity < 0.0) {
    throw InvalidSpec(spec.name + ": l3_sensitivity must be non-negative");
  }
  if (!(spec.memory_gb > 0.0)) {
    throw InvalidSpec(spec.name + ": memory_gb must be positive");
  }
  return spec;
}

ChargingRates validate_rates(const ChargingRates& rates) {
  if (!(rates.r_base > 0.0)) {
    throw DomainError("r_base must be positive");
  }
  if (rates.r_private <= 0.0 || rates.r_private > rates.r_base ||
      rates.r_shared <= 0.0 || rates.r_shared > rates.r_base) {
    throw DomainError("charging rates must lie in (0, r_base]");
  }
  return rates;
}

PriceBreakdown make_breakdown(double p_private, double p_shared, double commercial_total) {
  PriceBreakdown b;
  b.p_private = p_private;
  b.p_shared = p_shared;
  b.p_total = p_private + p_shared;
  b.discount_fraction = commercial_total > 0.0 ? 1.0 - b.p_total / commercial_total : 0.0;
  return b;
}

}  // namespace litmus
