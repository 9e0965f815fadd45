#include <doctest.h>

#include <cmath>
#include <random>

#include "litmus/machine.hpp"
#include "litmus/pricing.hpp"

using namespace litmus;

namespace {

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
}

ExecutionRecord record(TimeSlices solo, TimeSlices congested, double l3 = 50.0) {
  ExecutionRecord r;
  r.spec_name = "rec";
  r.solo = solo;
  r.slices = congested;
  r.l3_misses = l3;
  return r;
}

std::vector<FunctionSpec> uniform_refs() {
  std::vector<FunctionSpec> refs;
  for (int i = 0; i < 5; ++i) {
    FunctionSpec f;
    f.name = "uref-" + std::to_string(i);
    f.base = {1000.0 + 300.0 * i, 200.0 + 40.0 * i};
    f.sens_shared = {0.06, 0.08};
    f.sens_private = {0.0018, 0.0024};
    f.base_l3_misses = 80.0;
    f.l3_sensitivity = 0.15;
    refs.push_back(validate_spec(f));
  }
  return refs;
}

DiscountModelSet default_models() {
  std::vector<StressLevel> levels;
  for (int l = 1; l <= 31; ++l) levels.emplace_back(l);
  const CongestionTable ct = build_congestion_table(default_startup_spec(), default_ct_profile(),
                                                    default_mb_profile(), levels);
  const PerformanceTable pt = build_performance_table(uniform_refs(), default_ct_profile(),
                                                      default_mb_profile(), levels);
  return fit_models(ct, pt);
}

}  // namespace

TEST_CASE("commercial price is time times memory with no discount") {
  const ExecutionRecord r = record({900.0, 100.0}, {900.0, 100.0});
  const PriceBreakdown solo = commercial_price(r, 1.0);
  CHECK(solo.p_total == doctest::Approx(1000.0).epsilon(1e-12));
  CHECK(solo.discount_fraction == 0.0);

  const ExecutionRecord slow = record({900.0, 100.0}, {1800.0, 200.0});
  CHECK(commercial_price(slow, 1.0).p_total == doctest::Approx(2000.0).epsilon(1e-12));
  CHECK(commercial_price(slow, 2.0).p_total == doctest::Approx(4000.0).epsilon(1e-12));
}

TEST_CASE("ideal price collapses to the solo price") {
  const ExecutionRecord r = record({900.0, 100.0}, {909.0, 250.0});
  const PriceBreakdown ideal = ideal_price(r, 1.0);
  CHECK(ideal.p_private == doctest::Approx(900.0).epsilon(1e-12));
  CHECK(ideal.p_shared == doctest::Approx(100.0).epsilon(1e-12));
  CHECK(ideal.p_total == doctest::Approx(1000.0).epsilon(1e-12));
  CHECK(ideal.discount_fraction == doctest::Approx(159.0 / 1159.0).epsilon(1e-12));
}

TEST_CASE("ideal price is invariant under uniform time scaling") {
  const ExecutionRecord a = record({900.0, 100.0}, {909.0, 250.0});
  ExecutionRecord b = a;
  b.solo = {7.0 * a.solo.t_private, 7.0 * a.solo.t_shared};
  b.slices = {7.0 * a.slices.t_private, 7.0 * a.slices.t_shared};
  CHECK(ideal_price(b, 1.0).p_total == doctest::Approx(7.0 * ideal_price(a, 1.0).p_total)
                                           .epsilon(1e-12));
  CHECK(ideal_price(b, 1.0).discount_fraction ==
        doctest::Approx(ideal_price(a, 1.0).discount_fraction).epsilon(1e-12));
}

TEST_CASE("ideal price identity holds across random executions") {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 1000; ++i) {
    FunctionSpec f;
    f.name = "f";
    f.base = {uniform(rng, 100.0, 5000.0), uniform(rng, 10.0, 2000.0)};
    f.sens_shared = {uniform(rng, 0.0, 0.2), uniform(rng, 0.0, 0.2)};
    f.sens_private = {f.sens_shared.pre_l3 * uniform(rng, 0.0, 0.5),
                      f.sens_shared.post_l3 * uniform(rng, 0.0, 0.5)};
    f.base_l3_misses = uniform(rng, 1.0, 500.0);
    f.l3_sensitivity = uniform(rng, 0.0, 0.5);
    const CongestionVector c{uniform(rng, 0.0, 31.0), uniform(rng, 0.0, 31.0)};
    const int n = 1 + static_cast<int>(rng() % 40);
    const double mem = uniform(rng, 0.25, 8.0);
    const ExecutionRecord r = execute(validate_spec(f), c, n);
    const PriceBreakdown ideal = ideal_price(r, mem);
    // The per-component exact-compensation rates reproduce the solo price.
    CHECK(ideal.p_total ==
          doctest::Approx(mem * r.solo.t_total()).epsilon(1e-12));
    CHECK(ideal.p_total == doctest::Approx(ideal.p_private + ideal.p_shared).epsilon(1e-12));
  }
}

TEST_CASE("ideal price rejects an impossible congested slice") {
  const ExecutionRecord r = record({900.0, 100.0}, {909.0, 0.0});
  CHECK_THROWS_AS(ideal_price(r, 1.0), InvariantViolation);
}

TEST_CASE("a slice that is zero both solo and congested prices to zero") {
  const ExecutionRecord r = record({900.0, 0.0}, {950.0, 0.0});
  const PriceBreakdown ideal = ideal_price(r, 1.0);
  CHECK(ideal.p_shared == 0.0);
  CHECK(ideal.p_total == doctest::Approx(900.0).epsilon(1e-12));
}

TEST_CASE("litmus price equals commercial on an idle machine") {
  const DiscountModelSet models = default_models();
  const StartupSpec probes = default_startup_spec();
  const FunctionSpec f = uniform_refs().front();
  const ExecutionRecord r = execute(f, {}, 1);
  const LitmusReading reading = run_litmus_test(probes, {}, 1);
  const PriceBreakdown litmus = litmus_price(r, reading, models, f.memory_gb);
  const PriceBreakdown comm = commercial_price(r, f.memory_gb);
  CHECK(litmus.p_total == doctest::Approx(comm.p_total).epsilon(1e-12));
  CHECK(litmus.discount_fraction == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("litmus price never exceeds commercial") {
  const DiscountModelSet models = default_models();
  const StartupSpec probes = default_startup_spec();
  const FunctionSpec f = uniform_refs().front();
  std::mt19937_64 rng(17);
  for (int i = 0; i < 200; ++i) {
    const CongestionVector c{uniform(rng, 0.0, 31.0), uniform(rng, 0.0, 31.0)};
    const ExecutionRecord r = execute(f, c, 1);
    const LitmusReading reading = run_litmus_test(probes, c, 1);
    const PriceBreakdown litmus = litmus_price(r, reading, models, f.memory_gb);
    const PriceBreakdown comm = commercial_price(r, f.memory_gb);
    CHECK(litmus.p_total <= comm.p_total + 1e-12);
    CHECK(litmus.discount_fraction >= 0.0);
    CHECK(litmus.discount_fraction < 1.0);
  }
}

TEST_CASE("litmus rates come from the interpolated slowdowns") {
  const DiscountModelSet models = default_models();
  const StartupSpec probes = default_startup_spec();
  const CongestionVector c = congestion_at(default_mb_profile(), StressLevel(14));
  const LitmusReading reading = run_litmus_test(probes, c, 1);
  const ChargingRates rates = litmus_rates(reading, models);
  CHECK(rates.r_private ==
        doctest::Approx(1.0 / interpolate(reading, models, Component::priv)).epsilon(1e-12));
  CHECK(rates.r_shared ==
        doctest::Approx(1.0 / interpolate(reading, models, Component::shared)).epsilon(1e-12));
  CHECK_NOTHROW(validate_rates(rates));
}

TEST_CASE("sharing adjustment softens only the private rate") {
  const DiscountModelSet models = default_models();
  const StartupSpec probes = default_startup_spec();
  const CongestionVector c = congestion_at(default_ct_profile(), StressLevel(20));
  const LitmusReading reading = run_litmus_test(probes, c, 10);
  const ChargingRates raw = litmus_rates(reading, models);
  const ChargingRates adj = litmus_rates(reading, models, sharing_factor({}, 10));
  CHECK(adj.r_private >= raw.r_private);
  CHECK(adj.r_shared == raw.r_shared);
  CHECK_THROWS_AS(litmus_rates(reading, models, 0.5), DomainError);
}

TEST_CASE("weighted error follows the slice shares") {
  PriceBreakdown litmus = make_breakdown(90.0, 110.0, 250.0);
  PriceBreakdown ideal = make_breakdown(100.0, 100.0, 250.0);
  const TimeSlices slices{600.0, 400.0};
  const WeightedError w = weighted_error(litmus, ideal, slices);
  CHECK(w.err_private == doctest::Approx(-0.1 * 0.6).epsilon(1e-12));
  CHECK(w.err_shared == doctest::Approx(0.1 * 0.4).epsilon(1e-12));
  CHECK(w.err_total == doctest::Approx(0.0).epsilon(1e-12));
  CHECK_FALSE(w.degenerate_private);
  CHECK_FALSE(w.degenerate_shared);
}

TEST_CASE("weighted error flags a degenerate ideal component") {
  PriceBreakdown litmus = make_breakdown(90.0, 10.0, 250.0);
  PriceBreakdown ideal = make_breakdown(100.0, 0.0, 250.0);
  const TimeSlices slices{600.0, 400.0};
  const WeightedError w = weighted_error(litmus, ideal, slices);
  CHECK(w.degenerate_shared);
  CHECK(w.err_shared == 0.0);
  CHECK_THROWS_AS(weighted_error(litmus, ideal, TimeSlices{0.0, 0.0}), DomainError);
}

TEST_CASE("weighted error matches an independent recomputation") {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 200; ++i) {
    const double ip = uniform(rng, 1.0, 500.0);
    const double is = uniform(rng, 1.0, 500.0);
    const double lp = ip * uniform(rng, 0.5, 1.5);
    const double ls = is * uniform(rng, 0.5, 1.5);
    const TimeSlices slices{uniform(rng, 1.0, 1000.0), uniform(rng, 1.0, 1000.0)};
    const WeightedError w =
        weighted_error(make_breakdown(lp, ls, 0.0), make_breakdown(ip, is, 0.0), slices);
    const double share_p = slices.t_private / slices.t_total();
    const double share_s = slices.t_shared / slices.t_total();
    CHECK(std::abs(w.err_private - (lp - ip) / ip * share_p) < 1e-12);
    CHECK(std::abs(w.err_shared - (ls - is) / is * share_s) < 1e-12);
    CHECK(std::abs(w.err_total - ((lp + ls) - (ip + is)) / (ip + is)) < 1e-12);
  }
}
