#include "litmus/calibration.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "litmus/numio.hpp"

namespace litmus {
namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) {
    fields.push_back(field);
  }
  if (!line.empty() && line.back() == ',') {
    fields.emplace_back();
  }
  return fields;
}

double ratio_or_one(double congested, double solo) {
  return solo > 0.0 ? congested / solo : 1.0;
}

SlowdownTriple mean_of(const std::vector<SlowdownTriple>& xs) {
  SlowdownTriple m{0.0, 0.0, 0.0};
  for (const auto& x : xs) {
    m.s_private += x.s_private;
    m.s_shared += x.s_shared;
    m.s_total += x.s_total;
  }
  const double k = static_cast<double>(xs.size());
  return {m.s_private / k, m.s_shared / k, m.s_total / k};
}

// Columns must be non-decreasing in level within each generator sub-table;
// a decrease means the generator profiles are inconsistent with the law.
void check_columns(const std::vector<std::vector<double>>& columns, GeneratorKind kind) {
  constexpr double kTol = 1e-12;
  for (const auto& col : columns) {
    for (std::size_t i = 1; i < col.size(); ++i) {
      if (col[i] < col[i - 1] * (1.0 - kTol) - kTol) {
        throw NonMonotoneTable("table column decreases in level for generator " +
                               to_string(kind));
      }
    }
  }
}

void check_levels(const std::vector<StressLevel>& levels) {
  if (levels.empty()) {
    throw ConfigError("calibration level grid is empty");
  }
  for (std::size_t i = 1; i < levels.size(); ++i) {
    if (!(levels[i - 1] < levels[i])) {
      throw ConfigError("calibration levels must be strictly increasing");
    }
  }
}

}  // namespace

const FunctionSpec& StartupSpec::probe(Runtime rt) const {
  switch (rt) {
    case Runtime::py: return py;
    case Runtime::nj: return nj;
    case Runtime::go: return go;
  }
  throw DomainError("unknown runtime enum value");
}

StartupSpec default_startup_spec() {
  // Startup phases are memory-heavy relative to tenant code: their shared
  // sensitivity leans to the pre-L3 axis. All three runtimes run the same
  // kind of interpreter bring-up, so they share sensitivities and differ
  // only in length.
  StartupSpec s;
  auto make = [](const char* name, Runtime rt, double tp, double ts) {
    FunctionSpec f;
    f.name = name;
    f.runtime = rt;
    f.base = {tp, ts};
    f.sens_shared = {0.09, 0.055};
    f.sens_private = {0.0018, 0.0024};
    f.base_l3_misses = 120.0;
    f.l3_sensitivity = 0.18;
    return validate_spec(f);
  };
  s.py = make("startup-py", Runtime::py, 2600.0, 400.0);
  s.nj = make("startup-nj", Runtime::nj, 1700.0, 250.0);
  s.go = make("startup-go", Runtime::go, 520.0, 70.0);
  return s;
}

StartupMeasurement measure_startup(const FunctionSpec& probe, const CongestionVector& c, int n,
                                   const SharingOverheadModel& model) {
  const ExecutionRecord rec = execute(probe, c, n, model);
  StartupMeasurement m;
  m.slowdowns.s_private = ratio_or_one(rec.slices.t_private, rec.solo.t_private);
  m.slowdowns.s_shared = ratio_or_one(rec.slices.t_shared, rec.solo.t_shared);
  m.slowdowns.s_total = ratio_or_one(rec.slices.t_total(), rec.solo.t_total());
  m.l3_misses = rec.l3_misses;
  return m;
}

double gmean(std::span<const double> values) {
  if (values.empty()) {
    throw DomainError("gmean of empty input");
  }
  double sum_ln = 0.0;
  for (double v : values) {
    if (!(v > 0.0)) {
      throw DomainError("gmean requires positive values");
    }
    sum_ln += std::log(v);
  }
  return std::exp(sum_ln / static_cast<double>(values.size()));
}

CongestionTable build_congestion_table(const StartupSpec& probes, const GeneratorProfile& ct,
                                       const GeneratorProfile& mb,
                                       const std::vector<StressLevel>& levels, int n,
                                       ProbeMix mix, const SharingOverheadModel& model) {
  validate_profiles(ct, mb);
  check_levels(levels);

  CongestionTable table;
  for (const auto* profile : {&ct, &mb}) {
    std::vector<std::vector<double>> columns(4);
    for (StressLevel level : levels) {
      const CongestionVector c = congestion_at(*profile, level);
      SlowdownTriple slow;
      double l3 = 0.0;
      if (mix == ProbeMix::py) {
        const StartupMeasurement m = measure_startup(probes.py, c, n, model);
        slow = m.slowdowns;
        l3 = m.l3_misses;
      } else {
        std::vector<SlowdownTriple> per_probe;
        double l3_sum = 0.0;
        for (Runtime rt : {Runtime::py, Runtime::nj, Runtime::go}) {
          const StartupMeasurement m = measure_startup(probes.probe(rt), c, n, model);
          per_probe.push_back(m.slowdowns);
          l3_sum += m.l3_misses;
        }
        slow = mean_of(per_probe);
        l3 = l3_sum / 3.0;
      }
      table.rows.push_back({profile->kind, level.value(), slow.s_private, slow.s_shared,
                            slow.s_total, l3});
      columns[0].push_back(slow.s_private);
      columns[1].push_back(slow.s_shared);
      columns[2].push_back(slow.s_total);
      columns[3].push_back(l3);
    }
    check_columns(columns, profile->kind);
  }
  return table;
}

PerformanceTable build_performance_table(const std::vector<FunctionSpec>& refs,
                                         const GeneratorProfile& ct, const GeneratorProfile& mb,
                                         const std::vector<StressLevel>& levels, int n,
                                         const SharingOverheadModel& model) {
  if (refs.empty()) {
    throw ConfigError("reference set is empty");
  }
  validate_profiles(ct, mb);
  check_levels(levels);

  PerformanceTable table;
  for (const auto* profile : {&ct, &mb}) {
    std::vector<std::vector<double>> columns(3);
    for (StressLevel level : levels) {
      const CongestionVector c = congestion_at(*profile, level);
      std::vector<double> sp, ss, st;
      for (const auto& ref : refs) {
        const StartupMeasurement m = measure_startup(ref, c, n, model);
        sp.push_back(m.slowdowns.s_private);
        ss.push_back(m.slowdowns.s_shared);
        st.push_back(m.slowdowns.s_total);
      }
      const double gp = gmean(sp);
      const double gs = gmean(ss);
      const double gt = gmean(st);
      table.rows.push_back({profile->kind, level.value(), gp, gs, gt});
      columns[0].push_back(gp);
      columns[1].push_back(gs);
      columns[2].push_back(gt);
    }
    check_columns(columns, profile->kind);
  }
  return table;
}

void write_csv(const CongestionTable& table, std::ostream& out) {
  out << "generator,level,su_private,su_shared,su_total,l3_misses\n";
  for (const auto& r : table.rows) {
    out << to_string(r.generator) << ',' << r.level << ',' << format_double(r.su_private)
        << ',' << format_double(r.su_shared) << ',' << format_double(r.su_total) << ','
        << format_double(r.l3_misses) << '\n';
  }
}

void write_csv(const PerformanceTable& table, std::ostream& out) {
  out << "generator,level,ref_private,ref_shared,ref_total\n";
  for (const auto& r : table.rows) {
    out << to_string(r.generator) << ',' << r.level << ',' << format_double(r.ref_private)
        << ',' << format_double(r.ref_shared) << ',' << format_double(r.ref_total) << '\n';
  }
}

CongestionTable parse_congestion_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "generator,level,su_private,su_shared,su_total,l3_misses") {
    throw ConfigError("bad congestion table header");
  }
  CongestionTable table;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != 6) {
      throw ConfigError("congestion table row needs 6 fields: " + line);
    }
    table.rows.push_back({generator_from_string(f[0]), static_cast<int>(parse_int(f[1])),
                          parse_double(f[2]), parse_double(f[3]), parse_double(f[4]),
                          parse_double(f[5])});
  }
  return table;
}

PerformanceTable parse_performance_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "generator,level,ref_private,ref_shared,ref_total") {
    throw ConfigError("bad performance table header");
  }
  PerformanceTable table;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != 5) {
      throw ConfigError("performance table row needs 5 fields: " + line);
    }
    table.rows.push_back({generator_from_string(f[0]), static_cast<int>(parse_int(f[1])),
                          parse_double(f[2]), parse_double(f[3]), parse_double(f[4])});
  }
  return table;
}

namespace {

template <typename Table, typename Writer>
void save_table(const Table& table, const std::string& path, Writer writer) {
  std::ofstream out(path);
  if (!out) {
    throw ConfigError("cannot open for writing: " + path);
  }
  writer(table, out);
}

}  // namespace

void save_congestion_csv(const CongestionTable& table, const std::string& path) {
  save_table(table, path, [](const CongestionTable& t, std::ostream& o) { write_csv(t, o); });
}

void save_performance_csv(const PerformanceTable& table, const std::string& path) {
  save_table(table, path, [](const PerformanceTable& t, std::ostream& o) { write_csv(t, o); });
}

CongestionTable load_congestion_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open: " + path);
  }
  return parse_congestion_csv(in);
}

PerformanceTable load_performance_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open: " + path);
  }
  return parse_performance_csv(in);
}

}  // namespace litmus
