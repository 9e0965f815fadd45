#ifndef LITMUS_PRICING_HPP
#define LITMUS_PRICING_HPP

#include "litmus/estimator.hpp"

namespace litmus {

/// Undiscounted pay-as-you-go price: memory times measured execution time,
/// split across components proportionally to the measured slices.
PriceBreakdown commercial_price(const ExecutionRecord& record, double memory_gb);

/// Exact-compensation price: each component is charged at
/// r_base * solo / congested, which collapses to the solo-execution price.
PriceBreakdown ideal_price(const ExecutionRecord& record, double memory_gb);

/// Litmus price: per-component slowdowns estimated from the reading set the
/// charging rates; billing charges the measured slices at those rates.
/// sharing_adjustment (Method 1) divides the reading's private slowdown
/// before estimation only; the billed slice is untouched.
PriceBreakdown litmus_price(const ExecutionRecord& record, const LitmusReading& reading,
                            const DiscountModelSet& models, double memory_gb,
                            double sharing_adjustment = 1.0);

/// Charging rates implied by a Litmus reading (diagnostic companion to
/// litmus_price).
ChargingRates litmus_rates(const LitmusReading& reading, const DiscountModelSet& models,
                           double sharing_adjustment = 1.0);

struct WeightedError {
  double err_private = 0.0;
  double err_shared = 0.0;
  double err_total = 0.0;
  bool degenerate_private = false;  // ideal component was 0, error reported as 0
  bool degenerate_shared = false;
};

/// Per-component relative price error scaled by that component's share of
/// execution time. Positive means the tenant was under-compensated.
WeightedError weighted_error(const PriceBreakdown& litmus, const PriceBreakdown& ideal,
                             const TimeSlices& slices);

}  // namespace litmus

#endif
