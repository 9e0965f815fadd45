#include "litmus/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <json.hpp>

#include "litmus/numio.hpp"

namespace litmus {
namespace {

using ordered_json = nlohmann::ordered_json;

struct FitSums {
  double mean_x = 0.0;
  double mean_y = 0.0;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
};

FitSums centered_sums(std::span<const std::pair<double, double>> points) {
  FitSums s;
  const double n = static_cast<double>(points.size());
  for (const auto& [x, y] : points) {
    s.mean_x += x;
    s.mean_y += y;
  }
  s.mean_x /= n;
  s.mean_y /= n;
  for (const auto& [x, y] : points) {
    const double dx = x - s.mean_x;
    const double dy = y - s.mean_y;
    s.sxx += dx * dx;
    s.sxy += dx * dy;
    s.syy += dy * dy;
  }
  return s;
}

bool has_distinct_x(std::span<const std::pair<double, double>> points) {
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (points[i].first != points[0].first) return true;
  }
  return false;
}

}  // namespace

double LitmusReading::component(int idx) const {
  switch (idx) {
    case 0: return startup_slowdown.s_private;
    case 1: return startup_slowdown.s_shared;
    case 2: return startup_slowdown.s_total;
  }
  throw DomainError("reading component index out of range");
}

void validate_reading(const LitmusReading& reading, const FunctionSpec& probe) {
  // The total is the solo-mix-weighted combination of the components, so it
  // must lie between them.
  const double lo = std::min(reading.startup_slowdown.s_private, reading.startup_slowdown.s_shared);
  const double hi = std::max(reading.startup_slowdown.s_private, reading.startup_slowdown.s_shared);
  const double tol = 1e-9 * std::max(1.0, hi);
  if (reading.startup_slowdown.s_total < lo - tol || reading.startup_slowdown.s_total > hi + tol) {
    throw DomainError("reading total slowdown outside component range for probe " + probe.name);
  }
  if (reading.l3_misses < 0.0) {
    throw DomainError("reading has negative L3 misses");
  }
}

double LogModel::eval(double x) const {
  if (!(x > 0.0)) {
    throw DomainError("LogModel evaluated outside positive domain");
  }
  return a + b * std::log(x);
}

LinearModel fit_linear(std::span<const std::pair<double, double>> points) {
  if (points.size() < 2) {
    throw DegenerateFit("linear fit needs at least two points");
  }
  if (!has_distinct_x(points)) {
    throw DegenerateFit("linear fit needs at least two distinct x values");
  }
  const FitSums s = centered_sums(points);
  LinearModel m;
  m.slope = s.sxy / s.sxx;
  m.intercept = s.mean_y - m.slope * s.mean_x;
  m.r_squared = s.syy > 0.0 ? (s.sxy * s.sxy) / (s.sxx * s.syy) : 1.0;
  return m;
}

LogModel fit_log(std::span<const std::pair<double, double>> points) {
  std::vector<std::pair<double, double>> transformed;
  transformed.reserve(points.size());
  for (const auto& [x, y] : points) {
    if (!(x > 0.0)) {
      throw DomainError("log fit requires x > 0");
    }
    transformed.emplace_back(std::log(x), y);
  }
  const LinearModel lin = fit_linear(transformed);
  return {lin.intercept, lin.slope};
}

const LinearModel& GeneratorModels::fit(Component c) const {
  switch (c) {
    case Component::priv: return fit_private;
    case Component::shared: return fit_shared;
    case Component::total: return fit_total;
  }
  throw DomainError("unknown component");
}

double GeneratorModels::expected_l3(double startup_total) const {
  if (l3_anchors.empty()) {
    return l3_fit.eval(startup_total);
  }
  const auto& a = l3_anchors;
  if (startup_total <= a.front().first) return a.front().second;
  if (startup_total >= a.back().first) return a.back().second;
  auto it = std::upper_bound(a.begin(), a.end(), startup_total,
                             [](double v, const auto& p) { return v < p.first; });
  const auto& [x1, y1] = *std::prev(it);
  const auto& [x2, y2] = *it;
  if (x2 == x1) return y1;
  const double t = (startup_total - x1) / (x2 - x1);
  if (y1 > 0.0 && y2 > 0.0) {
    return std::exp((1.0 - t) * std::log(y1) + t * std::log(y2));
  }
  return (1.0 - t) * y1 + t * y2;
}

DiscountModelSet fit_models(const CongestionTable& ct, const PerformanceTable& pt) {
  if (ct.rows.size() != pt.rows.size()) {
    throw ConfigError("congestion and performance tables are not row-correspondent");
  }
  DiscountModelSet set;
  for (GeneratorKind kind : {GeneratorKind::CT, GeneratorKind::MB}) {
    std::vector<std::pair<double, double>> pts_private, pts_shared, pts_total, pts_l3;
    for (std::size_t i = 0; i < ct.rows.size(); ++i) {
      const auto& cr = ct.rows[i];
      const auto& pr = pt.rows[i];
      if (cr.generator != pr.generator || cr.level != pr.level) {
        throw ConfigError("table rows disagree on (generator, level)");
      }
      if (cr.generator != kind) continue;
      pts_private.emplace_back(cr.su_private, pr.ref_private);
      pts_shared.emplace_back(cr.su_shared, pr.ref_shared);
      pts_total.emplace_back(cr.su_total, pr.ref_total);
      pts_l3.emplace_back(cr.su_total, cr.l3_misses);
    }
    if (pts_private.size() < 2) {
      throw ConfigError("each generator sub-table needs at least two rows");
    }
    GeneratorModels& g = kind == GeneratorKind::CT ? set.ct : set.mb;
    g.fit_private = fit_linear(pts_private);
    g.fit_shared = fit_linear(pts_shared);
    g.fit_total = fit_linear(pts_total);
    // The l3 column can legitimately be constant (CT never inflates misses);
    // a flat log fit is fine, only a flat x axis is degenerate.
    g.l3_fit = fit_log(pts_l3);
    g.l3_anchors = std::move(pts_l3);
  }
  return set;
}

InterpolationResult interpolate_detail(const LitmusReading& reading,
                                       const DiscountModelSet& models, Component component) {
  const double x = reading.component(static_cast<int>(component));
  InterpolationResult res;
  const double d_ct = std::max(1.0, models.ct.fit(component).eval(x));
  const double d_mb = std::max(1.0, models.mb.fit(component).eval(x));

  const double total = reading.startup_slowdown.s_total;
  const double m_ct = models.ct.expected_l3(total);
  const double m_mb = models.mb.expected_l3(total);

  if (!(m_ct > 0.0) || !(m_mb > 0.0) || m_ct == m_mb) {
    // The two regimes are indistinguishable by L3 misses; fall back to CT.
    res.regime_collapse = true;
    res.weight = 0.0;
  } else if (!(reading.l3_misses > 0.0)) {
    res.weight = 0.0;
  } else {
    const double w = (std::log(reading.l3_misses) - std::log(m_ct)) /
                     (std::log(m_mb) - std::log(m_ct));
    res.weight = std::clamp(w, 0.0, 1.0);
  }
  res.slowdown = (1.0 - res.weight) * d_ct + res.weight * d_mb;
  return res;
}

double interpolate(const LitmusReading& reading, const DiscountModelSet& models,
                   Component component) {
  return interpolate_detail(reading, models, component).slowdown;
}

LitmusReading run_litmus_test(const StartupSpec& probes, const CongestionVector& c, int n,
                              ProbeMix mix, const SharingOverheadModel& model) {
  LitmusReading reading;
  if (mix == ProbeMix::py) {
    const StartupMeasurement m = measure_startup(probes.py, c, n, model);
    reading.startup_slowdown = m.slowdowns;
    reading.l3_misses = m.l3_misses;
  } else {
    double sp = 0.0, ss = 0.0, st = 0.0, l3 = 0.0;
    for (Runtime rt : {Runtime::py, Runtime::nj, Runtime::go}) {
      const StartupMeasurement m = measure_startup(probes.probe(rt), c, n, model);
      sp += m.slowdowns.s_private;
      ss += m.slowdowns.s_shared;
      st += m.slowdowns.s_total;
      l3 += m.l3_misses;
    }
    reading.startup_slowdown = {sp / 3.0, ss / 3.0, st / 3.0};
    reading.l3_misses = l3 / 3.0;
  }
  return reading;
}

namespace {

ordered_json linear_to_json(const LinearModel& m) {
  return {{"slope", m.slope}, {"intercept", m.intercept}, {"r_squared", m.r_squared}};
}

LinearModel linear_from_json(const ordered_json& j) {
  return {j.at("slope").get<double>(), j.at("intercept").get<double>(),
          j.at("r_squared").get<double>()};
}

ordered_json generator_to_json(const GeneratorModels& g) {
  ordered_json anchors = ordered_json::array();
  for (const auto& [x, y] : g.l3_anchors) {
    anchors.push_back({x, y});
  }
  return {{"private", linear_to_json(g.fit_private)},
          {"shared", linear_to_json(g.fit_shared)},
          {"total", linear_to_json(g.fit_total)},
          {"l3_log", {{"a", g.l3_fit.a}, {"b", g.l3_fit.b}}},
          {"l3_anchors", anchors}};
}

GeneratorModels generator_from_json(const ordered_json& j) {
  GeneratorModels g;
  g.fit_private = linear_from_json(j.at("private"));
  g.fit_shared = linear_from_json(j.at("shared"));
  g.fit_total = linear_from_json(j.at("total"));
  g.l3_fit = {j.at("l3_log").at("a").get<double>(), j.at("l3_log").at("b").get<double>()};
  for (const auto& p : j.at("l3_anchors")) {
    g.l3_anchors.emplace_back(p.at(0).get<double>(), p.at(1).get<double>());
  }
  return g;
}

}  // namespace

void write_json(const DiscountModelSet& models, std::ostream& out) {
  ordered_json j = {{"schema", "litmus-discount-models/1"},
                    {"generators",
                     {{"CT", generator_to_json(models.ct)}, {"MB", generator_to_json(models.mb)}}}};
  out << j.dump(2) << '\n';
}

DiscountModelSet parse_models_json(std::istream& in) {
  ordered_json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad model JSON: ") + e.what());
  }
  if (j.value("schema", "") != "litmus-discount-models/1") {
    throw ConfigError("unknown model schema");
  }
  DiscountModelSet set;
  set.ct = generator_from_json(j.at("generators").at("CT"));
  set.mb = generator_from_json(j.at("generators").at("MB"));
  return set;
}

void save_models_json(const DiscountModelSet& models, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw ConfigError("cannot open for writing: " + path);
  }
  write_json(models, out);
}

DiscountModelSet load_models_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open: " + path);
  }
  return parse_models_json(in);
}

}  // namespace litmus
