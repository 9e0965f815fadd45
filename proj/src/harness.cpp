#include "litmus/harness.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include <json.hpp>

#include "litmus/machine.hpp"
#include "litmus/numio.hpp"

namespace litmus {
namespace {

using ordered_json = nlohmann::ordered_json;

constexpr char kReportHeader[] =
    "function,runtime,norm_commercial,norm_ideal,norm_litmus,ideal_discount,"
    "litmus_discount,werr_private,werr_shared,werr_total";

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, sep)) {
    fields.push_back(field);
  }
  return fields;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool parse_bool(const std::string& v) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw ConfigError("not a boolean: '" + v + "'");
}

ProbeMix probe_mix_from_string(const std::string& s) {
  if (s == "py") return ProbeMix::py;
  if (s == "mean") return ProbeMix::mean;
  throw ConfigError("unknown probe policy: " + s);
}

std::string to_string(ProbeMix m) { return m == ProbeMix::py ? "py" : "mean"; }

int lifetime_steps(const FunctionSpec& spec, double quantum) {
  return std::max(1, static_cast<int>(std::llround(spec.base.t_total() / quantum)));
}

}  // namespace

std::string to_string(SharingMethod m) {
  switch (m) {
    case SharingMethod::none: return "none";
    case SharingMethod::method1: return "method1";
    case SharingMethod::method2: return "method2";
  }
  throw DomainError("unknown sharing method");
}

SharingMethod sharing_method_from_string(const std::string& s) {
  if (s == "none") return SharingMethod::none;
  if (s == "method1") return SharingMethod::method1;
  if (s == "method2") return SharingMethod::method2;
  throw ConfigError("unknown sharing method: " + s);
}

ScenarioConfig::ScenarioConfig()
    : ct_profile(default_ct_profile()), mb_profile(default_mb_profile()) {}

std::vector<StressLevel> ScenarioConfig::levels() const {
  if (level_min > level_max) {
    throw ConfigError("levels.min exceeds levels.max");
  }
  std::vector<StressLevel> out;
  for (int l = level_min; l <= level_max; ++l) {
    out.emplace_back(l);
  }
  return out;
}

int ScenarioConfig::per_core_runners() const {
  if (sharing_method == SharingMethod::none) return 1;
  if (cores < 1) throw ConfigError("cores must be positive");
  return std::max(1, static_cast<int>(std::llround(static_cast<double>(co_runners) / cores)));
}

std::map<std::string, std::string> ScenarioConfig::echo() const {
  std::map<std::string, std::string> m;
  m["seed"] = std::to_string(seed);
  m["workload_file"] = workload_file;
  std::string refs;
  for (const auto& r : reference_names) {
    if (!refs.empty()) refs += ',';
    refs += r;
  }
  m["reference_names"] = refs;
  m["co_runners"] = std::to_string(co_runners);
  m["sharing_method"] = to_string(sharing_method);
  m["repetitions"] = std::to_string(repetitions);
  m["cores"] = std::to_string(cores);
  m["probe_policy"] = to_string(probe_policy);
  m["calibration.probe_mix"] = to_string(calibration_probe_mix);
  m["generator.ct.alpha_pre"] = format_double(ct_profile.alpha_pre);
  m["generator.mb.alpha_pre"] = format_double(mb_profile.alpha_pre);
  m["generator.mb.alpha_post"] = format_double(mb_profile.alpha_post);
  m["levels.min"] = std::to_string(level_min);
  m["levels.max"] = std::to_string(level_max);
  m["memory_bias"] = memory_bias ? "true" : "false";
  m["churn.quantum_cycles"] = format_double(churn_quantum_cycles);
  return m;
}

ScenarioConfig parse_config(std::istream& in) {
  ScenarioConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(lineno) + " has no '='");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "seed") {
      cfg.seed = static_cast<std::uint64_t>(parse_int(value));
    } else if (key == "workload_file") {
      cfg.workload_file = value;
    } else if (key == "reference_names") {
      cfg.reference_names.clear();
      for (const auto& name : split(value, ',')) {
        const std::string t = trim(name);
        if (!t.empty()) cfg.reference_names.push_back(t);
      }
    } else if (key == "co_runners") {
      cfg.co_runners = static_cast<int>(parse_int(value));
    } else if (key == "sharing_method") {
      cfg.sharing_method = sharing_method_from_string(value);
    } else if (key == "repetitions") {
      cfg.repetitions = static_cast<int>(parse_int(value));
    } else if (key == "cores") {
      cfg.cores = static_cast<int>(parse_int(value));
    } else if (key == "probe_policy") {
      cfg.probe_policy = probe_mix_from_string(value);
    } else if (key == "calibration.probe_mix") {
      cfg.calibration_probe_mix = probe_mix_from_string(value);
    } else if (key == "generator.ct.alpha_pre") {
      cfg.ct_profile.alpha_pre = parse_double(value);
    } else if (key == "generator.mb.alpha_pre") {
      cfg.mb_profile.alpha_pre = parse_double(value);
    } else if (key == "generator.mb.alpha_post") {
      cfg.mb_profile.alpha_post = parse_double(value);
    } else if (key == "levels.min") {
      cfg.level_min = static_cast<int>(parse_int(value));
    } else if (key == "levels.max") {
      cfg.level_max = static_cast<int>(parse_int(value));
    } else if (key == "memory_bias") {
      cfg.memory_bias = parse_bool(value);
    } else if (key == "churn.quantum_cycles") {
      cfg.churn_quantum_cycles = parse_double(value);
    } else {
      throw ConfigError("unknown config key: " + key);
    }
  }
  if (cfg.co_runners < 1) throw ConfigError("co_runners must be positive");
  if (cfg.repetitions < 1) throw ConfigError("repetitions must be positive");
  cfg.levels();  // validates the level range
  return cfg;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open config: " + path);
  }
  return parse_config(in);
}

std::vector<CongestionVector> churn_congestion(const Workload& pool, int co_runners,
                                               std::uint64_t seed, int steps,
                                               double quantum_cycles) {
  if (pool.empty()) {
    throw ConfigError("churn pool is empty");
  }
  if (co_runners < 1 || steps < 0) {
    throw ConfigError("churn needs positive co_runners and non-negative steps");
  }
  std::mt19937_64 rng(seed);
  auto draw = [&](std::size_t n) { return static_cast<std::size_t>(rng() % n); };

  struct Slot {
    std::size_t idx;
    int remaining;
  };
  std::vector<Slot> active;
  active.reserve(static_cast<std::size_t>(co_runners));
  for (int i = 0; i < co_runners; ++i) {
    const std::size_t idx = draw(pool.size());
    const int life = lifetime_steps(pool[idx].spec, quantum_cycles);
    // Random initial phase so the start state is not synchronized.
    active.push_back({idx, 1 + static_cast<int>(draw(static_cast<std::size_t>(life)))});
  }

  std::vector<CongestionVector> out;
  out.reserve(static_cast<std::size_t>(steps));
  for (int s = 0; s < steps; ++s) {
    CongestionVector c;
    for (const auto& slot : active) {
      c.pre_l3 += pool[slot.idx].footprint_pre;
      c.post_l3 += pool[slot.idx].footprint_post;
    }
    out.push_back(c);
    for (auto& slot : active) {
      if (--slot.remaining <= 0) {
        slot.idx = draw(pool.size());
        slot.remaining = lifetime_steps(pool[slot.idx].spec, quantum_cycles);
      }
    }
  }
  return out;
}

void recompute_aggregates(ScenarioReport& report) {
  report.mean_ideal_discount = 0.0;
  report.mean_litmus_discount = 0.0;
  report.mean_abs_weighted_error = 0.0;
  if (report.rows.empty()) return;
  for (const auto& r : report.rows) {
    report.mean_ideal_discount += r.ideal_discount;
    report.mean_litmus_discount += r.litmus_discount;
    report.mean_abs_weighted_error += std::abs(r.werr_total);
  }
  const double n = static_cast<double>(report.rows.size());
  report.mean_ideal_discount /= n;
  report.mean_litmus_discount /= n;
  report.mean_abs_weighted_error /= n;
}

WorkloadSplit split_workload(const ScenarioConfig& config) {
  WorkloadSplit out;
  out.workload =
      config.workload_file.empty() ? default_workload() : load_workload_csv(config.workload_file);
  const std::vector<std::string> ref_names =
      config.reference_names.empty() ? default_reference_names() : config.reference_names;

  std::set<std::string> seen;
  for (const auto& e : out.workload) {
    if (!seen.insert(e.spec.name).second) {
      throw ConfigError("duplicate workload function: " + e.spec.name);
    }
  }
  std::set<std::string> ref_set;
  for (const auto& name : ref_names) {
    if (!ref_set.insert(name).second) {
      throw ConfigError("duplicate reference name: " + name);
    }
    if (!seen.count(name)) {
      throw ConfigError("reference function not in workload: " + name);
    }
  }

  for (const auto& e : out.workload) {
    if (ref_set.count(e.spec.name)) {
      out.refs.push_back(e.spec);
    } else {
      out.tests.push_back(e);
    }
  }
  if (out.refs.empty() || out.tests.empty()) {
    throw ConfigError("workload must contain both reference and test functions");
  }
  return out;
}

CalibrationArtifacts calibrate(const ScenarioConfig& config) {
  const WorkloadSplit split = split_workload(config);
  const StartupSpec probes = default_startup_spec();
  const SharingOverheadModel overhead;
  const int n_cal =
      config.sharing_method == SharingMethod::method2 ? config.per_core_runners() : 1;
  const auto levels = config.levels();

  CalibrationArtifacts art;
  art.congestion = build_congestion_table(probes, config.ct_profile, config.mb_profile, levels,
                                          n_cal, config.calibration_probe_mix, overhead);
  art.performance = build_performance_table(split.refs, config.ct_profile, config.mb_profile,
                                            levels, n_cal, overhead);
  art.models = fit_models(art.congestion, art.performance);
  return art;
}

ScenarioReport run_scenario(const ScenarioConfig& config) {
  const WorkloadSplit split = split_workload(config);
  const Workload& workload = split.workload;
  const std::vector<WorkloadEntry>& tests = split.tests;

  const StartupSpec probes = default_startup_spec();
  const SharingOverheadModel overhead;
  const int n_share = config.per_core_runners();
  const DiscountModelSet models = calibrate(config).models;

  const double adjustment = config.sharing_method == SharingMethod::method1
                                ? sharing_factor(overhead, n_share)
                                : 1.0;

  // Heavy scenario: the machine is churned only by the most memory-intensive
  // functions in the pool.
  Workload pool = workload;
  if (config.memory_bias) {
    std::sort(pool.begin(), pool.end(), [](const WorkloadEntry& a, const WorkloadEntry& b) {
      return a.footprint_post > b.footprint_post;
    });
    pool.resize(std::min<std::size_t>(pool.size(), 8));
  }

  const int steps = static_cast<int>(tests.size()) * config.repetitions;
  const std::vector<CongestionVector> churn =
      churn_congestion(pool, config.co_runners, config.seed, steps, config.churn_quantum_cycles);

  ScenarioReport report;
  report.seed = config.seed;
  report.config_echo = config.echo();

  for (std::size_t i = 0; i < tests.size(); ++i) {
    const WorkloadEntry& entry = tests[i];
    TimeSlices sum_slices;
    double sum_l3 = 0.0;
    SlowdownTriple sum_read{0.0, 0.0, 0.0};
    double sum_read_l3 = 0.0;
    for (int rep = 0; rep < config.repetitions; ++rep) {
      const CongestionVector& c = churn[i * static_cast<std::size_t>(config.repetitions) + rep];
      const LitmusReading reading =
          run_litmus_test(probes, c, n_share, config.probe_policy, overhead);
      const ExecutionRecord rec = execute(entry.spec, c, n_share, overhead);
      sum_slices = sum_slices + rec.slices;
      sum_l3 += rec.l3_misses;
      sum_read.s_private += reading.startup_slowdown.s_private;
      sum_read.s_shared += reading.startup_slowdown.s_shared;
      sum_read.s_total += reading.startup_slowdown.s_total;
      sum_read_l3 += reading.l3_misses;
    }
    const double reps = static_cast<double>(config.repetitions);
    ExecutionRecord avg;
    avg.spec_name = entry.spec.name;
    avg.slices = {sum_slices.t_private / reps, sum_slices.t_shared / reps};
    avg.solo = entry.spec.base;
    avg.l3_misses = sum_l3 / reps;
    avg.co_runners = n_share;
    LitmusReading reading;
    reading.startup_slowdown = {sum_read.s_private / reps, sum_read.s_shared / reps,
                                sum_read.s_total / reps};
    reading.l3_misses = sum_read_l3 / reps;

    const PriceBreakdown commercial = commercial_price(avg, entry.spec.memory_gb);
    const PriceBreakdown ideal = ideal_price(avg, entry.spec.memory_gb);
    const PriceBreakdown lit = litmus_price(avg, reading, models, entry.spec.memory_gb, adjustment);
    const WeightedError werr = weighted_error(lit, ideal, avg.slices);

    ReportRow row;
    row.function = entry.spec.name;
    row.runtime = entry.spec.runtime;
    row.norm_commercial = 1.0;
    row.norm_ideal = ideal.p_total / commercial.p_total;
    row.norm_litmus = lit.p_total / commercial.p_total;
    row.ideal_discount = ideal.discount_fraction;
    row.litmus_discount = lit.discount_fraction;
    row.werr_private = werr.err_private;
    row.werr_shared = werr.err_shared;
    row.werr_total = werr.err_total;
    report.rows.push_back(row);
  }

  recompute_aggregates(report);
  return report;
}

void write_report_csv(const ScenarioReport& report, std::ostream& out) {
  out << kReportHeader << '\n';
  for (const auto& r : report.rows) {
    out << r.function << ',' << to_string(r.runtime) << ',' << format_double(r.norm_commercial)
        << ',' << format_double(r.norm_ideal) << ',' << format_double(r.norm_litmus) << ','
        << format_double(r.ideal_discount) << ',' << format_double(r.litmus_discount) << ','
        << format_double(r.werr_private) << ',' << format_double(r.werr_shared) << ','
        << format_double(r.werr_total) << '\n';
  }
}

std::vector<ReportRow> parse_report_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kReportHeader) {
    throw ConfigError("bad report CSV header");
  }
  std::vector<ReportRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != 10) {
      throw ConfigError("report row needs 10 fields: " + line);
    }
    ReportRow r;
    r.function = f[0];
    r.runtime = runtime_from_string(f[1]);
    r.norm_commercial = parse_double(f[2]);
    r.norm_ideal = parse_double(f[3]);
    r.norm_litmus = parse_double(f[4]);
    r.ideal_discount = parse_double(f[5]);
    r.litmus_discount = parse_double(f[6]);
    r.werr_private = parse_double(f[7]);
    r.werr_shared = parse_double(f[8]);
    r.werr_total = parse_double(f[9]);
    rows.push_back(r);
  }
  return rows;
}

void emit_report(const ScenarioReport& report, const std::string& path) {
  {
    ScenarioReport check = report;
    recompute_aggregates(check);
    auto close = [](double a, double b) { return std::abs(a - b) <= 1e-12; };
    if (!close(check.mean_ideal_discount, report.mean_ideal_discount) ||
        !close(check.mean_litmus_discount, report.mean_litmus_discount) ||
        !close(check.mean_abs_weighted_error, report.mean_abs_weighted_error)) {
      throw InvariantViolation("report aggregates do not match rows");
    }
  }
  std::ofstream csv(path);
  if (!csv) {
    throw ConfigError("cannot open for writing: " + path);
  }
  write_report_csv(report, csv);

  ordered_json j;
  j["schema"] = "litmus-report/1";
  j["seed"] = report.seed;
  if (report.rows.empty()) {
    j["aggregates"] = nullptr;
  } else {
    j["aggregates"] = {{"mean_ideal_discount", report.mean_ideal_discount},
                       {"mean_litmus_discount", report.mean_litmus_discount},
                       {"mean_abs_weighted_error", report.mean_abs_weighted_error}};
  }
  ordered_json echo = ordered_json::object();
  for (const auto& [k, v] : report.config_echo) {
    echo[k] = v;
  }
  j["config"] = echo;
  std::ofstream side(path + ".json");
  if (!side) {
    throw ConfigError("cannot open for writing: " + path + ".json");
  }
  side << j.dump(2) << '\n';
}

}  // namespace litmus
