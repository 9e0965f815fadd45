#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "litmus/harness.hpp"

using namespace litmus;

namespace {

Workload tiny_pool() {
  Workload pool;
  for (int i = 0; i < 4; ++i) {
    WorkloadEntry e;
    e.spec.name = "pool-" + std::to_string(i);
    e.spec.base = {1000.0 + 500.0 * i, 200.0};
    e.footprint_pre = 0.1 + 0.05 * i;
    e.footprint_post = 0.05 + 0.02 * i;
    pool.push_back(e);
  }
  return pool;
}

}  // namespace

TEST_CASE("sharing method strings round-trip") {
  for (SharingMethod m : {SharingMethod::none, SharingMethod::method1, SharingMethod::method2}) {
    CHECK(sharing_method_from_string(to_string(m)) == m);
  }
  CHECK_THROWS_AS(sharing_method_from_string("method3"), ConfigError);
}

TEST_CASE("config parsing accepts the documented keys") {
  std::istringstream in(
      "# comment\n"
      "seed = 7\n"
      "co_runners = 64\n"
      "sharing_method = method2\n"
      "cores = 8\n"
      "repetitions = 5\n"
      "probe_policy = mean\n"
      "levels.min = 2\n"
      "levels.max = 10\n"
      "memory_bias = true\n");
  const ScenarioConfig c = parse_config(in);
  CHECK(c.seed == 7);
  CHECK(c.co_runners == 64);
  CHECK(c.sharing_method == SharingMethod::method2);
  CHECK(c.cores == 8);
  CHECK(c.repetitions == 5);
  CHECK(c.probe_policy == ProbeMix::mean);
  CHECK(c.level_min == 2);
  CHECK(c.level_max == 10);
  CHECK(c.memory_bias);
  CHECK(c.per_core_runners() == 8);
  CHECK(c.levels().size() == 9);
}

TEST_CASE("config parsing rejects unknown keys and bad values") {
  std::istringstream unknown("sid = 7\n");
  CHECK_THROWS_AS(parse_config(unknown), ConfigError);
  std::istringstream bad_int("seed = seven\n");
  CHECK_THROWS_AS(parse_config(bad_int), ConfigError);
  std::istringstream bad_levels("levels.min = 9\nlevels.max = 3\n");
  CHECK_THROWS_AS(parse_config(bad_levels), ConfigError);
}

TEST_CASE("per-core sharing is off unless a method is selected") {
  ScenarioConfig c;
  c.co_runners = 320;
  c.cores = 16;
  CHECK(c.per_core_runners() == 1);
  c.sharing_method = SharingMethod::method1;
  CHECK(c.per_core_runners() == 20);
}

TEST_CASE("churn is reproducible and seed-sensitive") {
  const Workload pool = tiny_pool();
  const auto a = churn_congestion(pool, 26, 42, 200);
  const auto b = churn_congestion(pool, 26, 42, 200);
  REQUIRE(a.size() == 200);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].pre_l3 == b[i].pre_l3);
    CHECK(a[i].post_l3 == b[i].post_l3);
  }
  const auto c = churn_congestion(pool, 26, 43, 200);
  bool any_diff = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    any_diff = any_diff || a[i].pre_l3 != c[i].pre_l3 || a[i].post_l3 != c[i].post_l3;
  }
  CHECK(any_diff);
}

TEST_CASE("churn congestion is bounded by the pool's footprint extremes") {
  const Workload pool = tiny_pool();
  double min_pre = 1e300, max_pre = 0.0, min_post = 1e300, max_post = 0.0;
  for (const auto& e : pool) {
    min_pre = std::min(min_pre, e.footprint_pre);
    max_pre = std::max(max_pre, e.footprint_pre);
    min_post = std::min(min_post, e.footprint_post);
    max_post = std::max(max_post, e.footprint_post);
  }
  const int n = 26;
  for (const auto& c : churn_congestion(pool, n, 1, 500)) {
    CHECK(c.pre_l3 >= n * min_pre - 1e-12);
    CHECK(c.pre_l3 <= n * max_pre + 1e-12);
    CHECK(c.post_l3 >= n * min_post - 1e-12);
    CHECK(c.post_l3 <= n * max_post + 1e-12);
  }
}

TEST_CASE("zero-footprint pool produces a congestion-free machine") {
  Workload pool = tiny_pool();
  for (auto& e : pool) {
    e.footprint_pre = 0.0;
    e.footprint_post = 0.0;
  }
  for (const auto& c : churn_congestion(pool, 10, 5, 100)) {
    CHECK(c.is_zero());
  }
}

TEST_CASE("workload split separates references from tests") {
  const ScenarioConfig config;
  const WorkloadSplit split = split_workload(config);
  CHECK(split.refs.size() == 13);
  CHECK(split.tests.size() == split.workload.size() - split.refs.size());
  for (const auto& r : split.refs) {
    for (const auto& t : split.tests) {
      CHECK(r.name != t.spec.name);
    }
  }
}

TEST_CASE("workload split rejects bad reference lists") {
  ScenarioConfig config;
  config.reference_names = {"no-such-function"};
  CHECK_THROWS_AS(split_workload(config), ConfigError);
  const WorkloadSplit ok = split_workload(ScenarioConfig{});
  config.reference_names.clear();
  for (const auto& e : split_workload(ScenarioConfig{}).workload) {
    config.reference_names.push_back(e.spec.name);
  }
  CHECK_THROWS_AS(split_workload(config), ConfigError);  // no tests left
  config.reference_names = {ok.refs.front().name, ok.refs.front().name};
  CHECK_THROWS_AS(split_workload(config), ConfigError);  // duplicate
}

TEST_CASE("an insensitive world prices everything at the solo rate") {
  const std::string path = "insensitive_workload.csv";
  {
    Workload w;
    for (int i = 0; i < 4; ++i) {
      WorkloadEntry e;
      e.spec.name = "flat-" + std::to_string(i);
      e.spec.base = {800.0 + 100.0 * i, 150.0};
      e.footprint_pre = 0.1;
      e.footprint_post = 0.1;
      w.push_back(e);
    }
    std::ofstream out(path);
    write_csv(w, out);
  }
  ScenarioConfig config;
  config.workload_file = path;
  config.reference_names = {"flat-0", "flat-1"};
  config.repetitions = 3;
  const ScenarioReport report = run_scenario(config);
  std::remove(path.c_str());
  REQUIRE(report.rows.size() == 2);
  for (const auto& row : report.rows) {
    CHECK(row.norm_commercial == 1.0);
    CHECK(row.norm_ideal == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(row.norm_litmus == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(row.ideal_discount == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(row.litmus_discount == doctest::Approx(0.0).epsilon(1e-9));
  }
}

TEST_CASE("scenario runs are deterministic in (config, seed)") {
  ScenarioConfig config;
  config.repetitions = 2;
  const ScenarioReport a = run_scenario(config);
  const ScenarioReport b = run_scenario(config);
  REQUIRE(a.rows.size() == b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    CHECK(a.rows[i] == b.rows[i]);
  }
  config.seed = 43;
  const ScenarioReport c = run_scenario(config);
  bool any_diff = false;
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    any_diff = any_diff || !(a.rows[i] == c.rows[i]);
  }
  CHECK(any_diff);
}

TEST_CASE("default scenario report is well-formed") {
  ScenarioConfig config;
  config.repetitions = 3;
  ScenarioReport report = run_scenario(config);
  REQUIRE(!report.rows.empty());
  for (const auto& row : report.rows) {
    CHECK(row.norm_commercial == 1.0);
    CHECK(row.norm_litmus <= row.norm_commercial + 1e-12);
    CHECK(row.litmus_discount >= 0.0);
    CHECK(row.litmus_discount < 1.0);
    CHECK(row.ideal_discount >= 0.0);
    CHECK(row.ideal_discount < 1.0);
  }
  const double saved_ideal = report.mean_ideal_discount;
  const double saved_litmus = report.mean_litmus_discount;
  const double saved_err = report.mean_abs_weighted_error;
  recompute_aggregates(report);
  CHECK(report.mean_ideal_discount == doctest::Approx(saved_ideal).epsilon(1e-12));
  CHECK(report.mean_litmus_discount == doctest::Approx(saved_litmus).epsilon(1e-12));
  CHECK(report.mean_abs_weighted_error == doctest::Approx(saved_err).epsilon(1e-12));
}

TEST_CASE("report CSV round-trips") {
  ScenarioConfig config;
  config.repetitions = 2;
  const ScenarioReport report = run_scenario(config);
  std::ostringstream out;
  write_report_csv(report, out);
  std::istringstream in(out.str());
  const std::vector<ReportRow> rows = parse_report_csv(in);
  REQUIRE(rows.size() == report.rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i] == report.rows[i]);
  }
}

TEST_CASE("emit_report writes the CSV and the JSON sidecar") {
  ScenarioConfig config;
  config.repetitions = 2;
  const ScenarioReport report = run_scenario(config);
  const std::string path = "harness_report_test.csv";
  emit_report(report, path);
  {
    std::ifstream csv(path);
    REQUIRE(csv.good());
    const std::vector<ReportRow> rows = parse_report_csv(csv);
    CHECK(rows.size() == report.rows.size());
    std::ifstream sidecar(path + ".json");
    REQUIRE(sidecar.good());
    std::stringstream buf;
    buf << sidecar.rdbuf();
    CHECK(buf.str().find("litmus-report/1") != std::string::npos);
    CHECK(buf.str().find("mean_litmus_discount") != std::string::npos);
  }
  std::remove(path.c_str());
  std::remove((path + ".json").c_str());
}

TEST_CASE("memory bias raises ideal discounts") {
  ScenarioConfig calm;
  calm.repetitions = 3;
  ScenarioConfig heavy = calm;
  heavy.co_runners = 320;
  heavy.memory_bias = true;
  const ScenarioReport a = run_scenario(calm);
  const ScenarioReport b = run_scenario(heavy);
  CHECK(b.mean_ideal_discount > a.mean_ideal_discount);
}

TEST_CASE("sharing methods keep prices sane") {
  for (SharingMethod m : {SharingMethod::method1, SharingMethod::method2}) {
    ScenarioConfig config;
    config.repetitions = 2;
    config.co_runners = 320;
    config.sharing_method = m;
    const ScenarioReport report = run_scenario(config);
    for (const auto& row : report.rows) {
      CHECK(row.norm_litmus <= row.norm_commercial + 1e-12);
      CHECK(row.litmus_discount >= 0.0);
      CHECK(row.litmus_discount < 1.0);
    }
  }
}
