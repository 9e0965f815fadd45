#include "litmus/workload.hpp"

#include <fstream>
#include <random>
#include <sstream>

#include "litmus/numio.hpp"

namespace litmus {
namespace {

constexpr char kHeader[] =
    "name,runtime,base_t_private,base_t_shared,sens_shared_pre,sens_shared_post,"
    "sens_private_pre,sens_private_post,base_l3_misses,l3_sensitivity,memory_gb,"
    "footprint_pre,footprint_post";

double uniform(std::mt19937_64& rng, double lo, double hi) {
  // 53-bit mantissa draw; kept explicit so the population is reproducible
  // across standard library implementations.
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, sep)) {
    fields.push_back(field);
  }
  return fields;
}

}  // namespace

Workload default_workload() {
  static const char* kStems[27] = {
      "resize", "encode", "hashsum", "query",  "train",  "parse",  "rank",
      "merge",  "fetch",  "pack",    "indexer", "route",  "score",  "audit",
      "batch",  "caching", "diff",   "embed",  "filter", "group",  "joiner",
      "knn",    "label",  "mapper",  "norm",   "order",  "probe"};
  static const Runtime kRuntimes[27] = {
      Runtime::py, Runtime::py, Runtime::py, Runtime::py, Runtime::py, Runtime::py,
      Runtime::py, Runtime::py, Runtime::py, Runtime::py, Runtime::py, Runtime::py,
      Runtime::py, Runtime::nj, Runtime::nj, Runtime::nj, Runtime::nj, Runtime::nj,
      Runtime::nj, Runtime::nj, Runtime::go, Runtime::go, Runtime::go, Runtime::go,
      Runtime::go, Runtime::go, Runtime::go};

  std::mt19937_64 rng(0x11752c5ULL);
  Workload workload;
  for (int i = 0; i < 27; ++i) {
    WorkloadEntry e;
    FunctionSpec& f = e.spec;
    f.name = std::string(kStems[i]) + "-" + to_string(kRuntimes[i]);
    f.runtime = kRuntimes[i];
    const double t_private = uniform(rng, 800.0, 5000.0);
    const double shared_frac = uniform(rng, 0.02, 0.45);
    f.base = {t_private, t_private * shared_frac};
    f.sens_shared = {0.06 * uniform(rng, 0.95, 1.05), 0.08 * uniform(rng, 0.95, 1.05)};
    f.sens_private = {0.0018 * uniform(rng, 0.95, 1.05), 0.0024 * uniform(rng, 0.95, 1.05)};
    f.base_l3_misses = uniform(rng, 30.0, 300.0);
    f.l3_sensitivity = 0.18 * uniform(rng, 0.8, 1.2);
    f.memory_gb = 1.0;
    e.footprint_pre = uniform(rng, 0.08, 0.28);
    e.footprint_post = uniform(rng, 0.05, 0.16);
    validate_spec(f);
    workload.push_back(e);
  }
  return workload;
}

std::vector<std::string> default_reference_names() {
  const Workload w = default_workload();
  std::vector<std::string> names;
  for (std::size_t i = 0; i < w.size(); i += 2) {
    if (names.size() == 13) break;
    names.push_back(w[i].spec.name);
  }
  return names;
}

void write_csv(const Workload& workload, std::ostream& out) {
  out << kHeader << '\n';
  for (const auto& e : workload) {
    const FunctionSpec& f = e.spec;
    out << f.name << ',' << to_string(f.runtime) << ',' << format_double(f.base.t_private)
        << ',' << format_double(f.base.t_shared) << ',' << format_double(f.sens_shared.pre_l3)
        << ',' << format_double(f.sens_shared.post_l3) << ','
        << format_double(f.sens_private.pre_l3) << ',' << format_double(f.sens_private.post_l3)
        << ',' << format_double(f.base_l3_misses) << ',' << format_double(f.l3_sensitivity)
        << ',' << format_double(f.memory_gb) << ',' << format_double(e.footprint_pre) << ','
        << format_double(e.footprint_post) << '\n';
  }
}

Workload parse_workload_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kHeader) {
    throw ConfigError("bad workload CSV header");
  }
  Workload workload;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != 13) {
      throw ConfigError("workload row needs 13 fields: " + line);
    }
    WorkloadEntry e;
    e.spec.name = f[0];
    e.spec.runtime = runtime_from_string(f[1]);
    e.spec.base = {parse_double(f[2]), parse_double(f[3])};
    e.spec.sens_shared = {parse_double(f[4]), parse_double(f[5])};
    e.spec.sens_private = {parse_double(f[6]), parse_double(f[7])};
    e.spec.base_l3_misses = parse_double(f[8]);
    e.spec.l3_sensitivity = parse_double(f[9]);
    e.spec.memory_gb = parse_double(f[10]);
    e.footprint_pre = parse_double(f[11]);
    e.footprint_post = parse_double(f[12]);
    if (e.footprint_pre < 0.0 || e.footprint_post < 0.0) {
      throw ConfigError(e.spec.name + ": footprints must be non-negative");
    }
    validate_spec(e.spec);
    workload.push_back(e);
  }
  return workload;
}

void save_workload_csv(const Workload& workload, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw ConfigError("cannot open for writing: " + path);
  }
  write_csv(workload, out);
}

Workload load_workload_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open: " + path);
  }
  return parse_workload_csv(in);
}

}  // namespace litmus
