#include "litmus/pricing.hpp"

namespace litmus {

PriceBreakdown commercial_price(const ExecutionRecord& record, double memory_gb) {
  const double p_private = memory_gb * record.slices.t_private;
  const double p_shared = memory_gb * record.slices.t_shared;
  PriceBreakdown b = make_breakdown(p_private, p_shared, 0.0);
  b.discount_fraction = 0.0;
  return b;
}

PriceBreakdown ideal_price(const ExecutionRecord& record, double memory_gb) {
  auto component = [&](double solo, double congested) {
    if (congested == 0.0) {
      if (solo > 0.0) {
        throw InvariantViolation("congested slice 0 with positive solo slice");
      }
      return 0.0;
    }
    const double rate = solo / congested;  // r_base = 1
    return memory_gb * rate * congested;
  };
  const double p_private = component(record.solo.t_private, record.slices.t_private);
  const double p_shared = component(record.solo.t_shared, record.slices.t_shared);
  const double commercial = memory_gb * record.slices.t_total();
  return make_breakdown(p_private, p_shared, commercial);
}

ChargingRates litmus_rates(const LitmusReading& reading, const DiscountModelSet& models,
                           double sharing_adjustment) {
  if (!(sharing_adjustment >= 1.0)) {
    throw DomainError("sharing_adjustment must be >= 1");
  }
  // Method 1 removes the switching overhead from the probe's private
  // slowdown before the performance-table lookup.
  LitmusReading adjusted = reading;
  adjusted.startup_slowdown.s_private /= sharing_adjustment;
  if (adjusted.startup_slowdown.s_private < 1.0) {
    adjusted.startup_slowdown.s_private = 1.0;
  }

  const double s_private = interpolate(adjusted, models, Component::priv);
  const double s_shared = interpolate(adjusted, models, Component::shared);
  ChargingRates rates;
  rates.r_private = 1.0 / s_private;
  rates.r_shared = 1.0 / s_shared;
  return rates;
}

PriceBreakdown litmus_price(const ExecutionRecord& record, const LitmusReading& reading,
                            const DiscountModelSet& models, double memory_gb,
                            double sharing_adjustment) {
  const ChargingRates rates = litmus_rates(reading, models, sharing_adjustment);
  const double p_private = memory_gb * rates.r_private * record.slices.t_private;
  const double p_shared = memory_gb * rates.r_shared * record.slices.t_shared;
  const double commercial = memory_gb * record.slices.t_total();
  return make_breakdown(p_private, p_shared, commercial);
}

WeightedError weighted_error(const PriceBreakdown& litmus, const PriceBreakdown& ideal,
                             const TimeSlices& slices) {
  WeightedError e;
  const double t_total = slices.t_total();
  if (!(t_total > 0.0)) {
    throw DomainError("weighted_error needs positive total time");
  }
  if (ideal.p_private > 0.0) {
    e.err_private = (litmus.p_private - ideal.p_private) / ideal.p_private *
                    (slices.t_private / t_total);
  } else {
    e.degenerate_private = true;
  }
  if (ideal.p_shared > 0.0) {
    e.err_shared = (litmus.p_shared - ideal.p_shared) / ideal.p_shared *
                   (slices.t_shared / t_total);
  } else {
    e.degenerate_shared = true;
  }
  if (!(ideal.p_total > 0.0)) {
    throw DomainError("weighted_error needs positive ideal total price");
  }
  e.err_total = (litmus.p_total - ideal.p_total) / ideal.p_total;
  return e;
}

}  // namespace litmus
