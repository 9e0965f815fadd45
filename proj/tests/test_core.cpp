#include <doctest.h>

#include <random>

#include "litmus/core.hpp"

using namespace litmus;

namespace {

FunctionSpec basic_spec() {
  FunctionSpec f;
  f.name = "basic";
  f.base = {900.0, 100.0};
  f.sens_shared = {0.05, 0.15};
  f.sens_private = {0.001, 0.003};
  f.base_l3_misses = 50.0;
  f.l3_sensitivity = 0.2;
  return f;
}

}  // namespace

TEST_CASE("StressLevel bounds") {
  CHECK(StressLevel(1).value() == 1);
  CHECK(StressLevel(31).value() == 31);
  CHECK_THROWS_AS(StressLevel(0), DomainError);
  CHECK_THROWS_AS(StressLevel(32), DomainError);
}

TEST_CASE("validate_spec accepts a compute-only function") {
  FunctionSpec f;
  f.name = "compute-only";
  f.base = {100.0, 0.0};
  CHECK_NOTHROW(validate_spec(f));
}

TEST_CASE("validate_spec rejects zero total time") {
  FunctionSpec f = basic_spec();
  f.base = {0.0, 0.0};
  CHECK_THROWS_AS(validate_spec(f), InvalidSpec);
}

TEST_CASE("validate_spec rejects private sensitivity above shared") {
  FunctionSpec f = basic_spec();
  f.sens_private.pre_l3 = 0.5;
  f.sens_shared.pre_l3 = 0.1;
  CHECK_THROWS_AS(validate_spec(f), InvalidSpec);
}

TEST_CASE("validate_spec rejects non-positive memory") {
  FunctionSpec f = basic_spec();
  f.memory_gb = 0.0;
  CHECK_THROWS_AS(validate_spec(f), InvalidSpec);
}

TEST_CASE("TimeSlices addition preserves totals") {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 200; ++i) {
    const TimeSlices a{static_cast<double>(rng() % 100000) / 7.0,
                       static_cast<double>(rng() % 100000) / 11.0};
    const TimeSlices b{static_cast<double>(rng() % 100000) / 13.0,
                       static_cast<double>(rng() % 100000) / 3.0};
    const TimeSlices s = a + b;
    CHECK(s.t_total() == doctest::Approx(a.t_total() + b.t_total()).epsilon(1e-12));
  }
}

TEST_CASE("PriceBreakdown keeps the component sum identity") {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 200; ++i) {
    const double p_private = static_cast<double>(rng() % 1000000) / 997.0;
    const double p_shared = static_cast<double>(rng() % 1000000) / 883.0;
    const PriceBreakdown b = make_breakdown(p_private, p_shared, p_private + p_shared + 10.0);
    CHECK(b.p_total == doctest::Approx(b.p_private + b.p_shared).epsilon(1e-12));
    CHECK(b.discount_fraction >= 0.0);
    CHECK(b.discount_fraction < 1.0);
  }
}

TEST_CASE("make_breakdown with zero commercial price reports zero discount") {
  const PriceBreakdown b = make_breakdown(1.0, 2.0, 0.0);
  CHECK(b.discount_fraction == 0.0);
}

TEST_CASE("charging rates must not surcharge") {
  CHECK_NOTHROW(validate_rates({1.0, 1.0, 1.0}));
  CHECK_NOTHROW(validate_rates({0.5, 0.9, 1.0}));
  CHECK_THROWS_AS(validate_rates({1.2, 0.9, 1.0}), DomainError);
  CHECK_THROWS_AS(validate_rates({0.5, 0.0, 1.0}), DomainError);
}

TEST_CASE("runtime enum round-trips through strings") {
  for (Runtime rt : {Runtime::py, Runtime::nj, Runtime::go}) {
    CHECK(runtime_from_string(to_string(rt)) == rt);
  }
  CHECK_THROWS_AS(runtime_from_string("java"), DomainError);
}
