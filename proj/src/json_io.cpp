#include "bcp/json_io.hpp"

#include <cmath>
#include <fstream>
#include <limits>

namespace bcp {

namespace {

const char* type_name(const Json& v) { return v.type_name(); }

std::string index_path(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

/// JSON has no non-finite numbers; they are written as null.
Json finite_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json trace_terms_to_json(const std::vector<TraceTerm>& terms) {
  Json out = Json::array();
  for (const auto& t : terms)
    out.push_back({{"amplitude", t.amplitude}, {"m", t.m}, {"phase", t.phase}});
  return out;
}

Json endpoint_to_json(const EndpointTraces& e) {
  return {{"left", trace_terms_to_json(e.left)}, {"right", trace_terms_to_json(e.right)}};
}

std::vector<TraceTerm> trace_terms_from_json(const Json& j, JsonReader& r, const std::string& path) {
  std::vector<TraceTerm> out;
  if (!j.is_array()) {
    r.fail(path, std::string("expected array, got ") + type_name(j));
    return out;
  }
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string at = index_path(path, i);
    if (!r.object(j[i], at, {"amplitude", "m", "phase"})) continue;
    r.require(j[i], "amplitude", at);
    r.require(j[i], "m", at);
    TraceTerm t;
    t.amplitude = r.number(j[i], "amplitude", at, 0.0);
    t.m = r.integer(j[i], "m", at, 0);
    t.phase = r.number(j[i], "phase", at, 0.0);
    out.push_back(t);
  }
  return out;
}

EndpointTraces endpoint_from_json(const Json& j, JsonReader& r, const std::string& path) {
  EndpointTraces e;
  if (!r.object(j, path, {"left", "right"})) return e;
  if (j.contains("left")) e.left = trace_terms_from_json(j["left"], r, join_path(path, "left"));
  if (j.contains("right")) e.right = trace_terms_from_json(j["right"], r, join_path(path, "right"));
  return e;
}

}  // namespace

std::string join_path(const std::string& parent, const std::string& key) {
  return parent.empty() ? key : parent + "." + key;
}

double JsonReader::number(const Json& obj, const std::string& key, const std::string& path,
                          double fallback) {
  if (!obj.is_object() || !obj.contains(key)) return fallback;
  const Json& v = obj[key];
  if (!v.is_number()) {
    fail(join_path(path, key), std::string("expected number, got ") + type_name(v));
    return fallback;
  }
  return v.get<double>();
}

int JsonReader::integer(const Json& obj, const std::string& key, const std::string& path,
                        int fallback) {
  if (!obj.is_object() || !obj.contains(key)) return fallback;
  const Json& v = obj[key];
  if (!v.is_number_integer()) {
    fail(join_path(path, key), std::string("expected integer, got ") + type_name(v));
    return fallback;
  }
  const auto x = v.get<std::int64_t>();
  if (x < std::numeric_limits<int>::min() || x > std::numeric_limits<int>::max()) {
    fail(join_path(path, key), "integer out of range");
    return fallback;
  }
  return static_cast<int>(x);
}

std::uint64_t JsonReader::unsigned_integer(const Json& obj, const std::string& key,
                                           const std::string& path, std::uint64_t fallback) {
  if (!obj.is_object() || !obj.contains(key)) return fallback;
  const Json& v = obj[key];
  if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() &&
                                 v.get<std::int64_t>() < 0)) {
    fail(join_path(path, key), "expected non-negative integer");
    return fallback;
  }
  return v.get<std::uint64_t>();
}

bool JsonReader::boolean(const Json& obj, const std::string& key, const std::string& path,
                         bool fallback) {
  if (!obj.is_object() || !obj.contains(key)) return fallback;
  const Json& v = obj[key];
  if (!v.is_boolean()) {
    fail(join_path(path, key), std::string("expected boolean, got ") + type_name(v));
    return fallback;
  }
  return v.get<bool>();
}

std::string JsonReader::string(const Json& obj, const std::string& key, const std::string& path,
                               const std::string& fallback) {
  if (!obj.is_object() || !obj.contains(key)) return fallback;
  const Json& v = obj[key];
  if (!v.is_string()) {
    fail(join_path(path, key), std::string("expected string, got ") + type_name(v));
    return fallback;
  }
  return v.get<std::string>();
}

std::vector<double> JsonReader::numbers(const Json& obj, const std::string& key,
                                        const std::string& path,
                                        const std::vector<double>& fallback) {
  if (!obj.is_object() || !obj.contains(key)) return fallback;
  const Json& v = obj[key];
  const std::string at = join_path(path, key);
  if (!v.is_array()) {
    fail(at, std::string("expected array of numbers, got ") + type_name(v));
    return fallback;
  }
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number()) {
      fail(index_path(at, i), std::string("expected number, got ") + type_name(v[i]));
      continue;
    }
    out.push_back(v[i].get<double>());
  }
  return out;
}

std::vector<int> JsonReader::integers(const Json& obj, const std::string& key,
                                      const std::string& path, const std::vector<int>& fallback) {
  if (!obj.is_object() || !obj.contains(key)) return fallback;
  const Json& v = obj[key];
  const std::string at = join_path(path, key);
  if (!v.is_array()) {
    fail(at, std::string("expected array of integers, got ") + type_name(v));
    return fallback;
  }
  std::vector<int> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number_integer()) {
      fail(index_path(at, i), std::string("expected integer, got ") + type_name(v[i]));
      continue;
    }
    out.push_back(v[i].get<int>());
  }
  return out;
}

bool JsonReader::object(const Json& obj, const std::string& path,
                        std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) {
    fail(path.empty() ? "<root>" : path, std::string("expected object, got ") + type_name(obj));
    return false;
  }
  for (const auto& item : obj.items()) {
    bool known = false;
    for (const char* k : allowed) known = known || item.key() == k;
    if (!known) fail(join_path(path, item.key()), "unknown field");
  }
  return true;
}

void JsonReader::require(const Json& obj, const std::string& key, const std::string& path) {
  if (obj.is_object() && !obj.contains(key)) fail(join_path(path, key), "required field missing");
}

void JsonReader::fail(std::string path, std::string message) {
  violations_.emplace_back(std::move(path), std::move(message));
}

void JsonReader::check() const {
  if (!violations_.empty()) throw ValidationError(violations_);
}

Json to_json(const ForcingSpec& forcing) {
  Json out = Json::array();
  for (const auto& t : forcing.terms)
    out.push_back({{"amplitude", t.amplitude}, {"m", t.m}, {"phase", t.phase}, {"n", t.n}});
  return out;
}

Json to_json(const ProblemSpec& spec) {
  Json j;
  j["params"] = {{"a", spec.params.a()},
                 {"b", spec.params.b()},
                 {"c", spec.params.c()},
                 {"s", spec.params.s()},
                 {"B_over_A", spec.params.B_over_A()}};
  j["domain"] = {{"dimension", spec.domain.dimension},
                 {"lengths", spec.domain.lengths},
                 {"bc", to_string(spec.domain.bc)}};
  j["period"] = spec.period;
  j["temporal_modes"] = spec.temporal_modes;
  j["spatial_modes"] = spec.spatial_modes;
  j["forcing"] = to_json(spec.forcing);
  if (spec.boundary)
    j["boundary"] = {{"g", endpoint_to_json(spec.boundary->g)},
                     {"h", endpoint_to_json(spec.boundary->h)}};
  return j;
}

ForcingSpec forcing_from_json(const Json& f, JsonReader& r, const std::string& path) {
  ForcingSpec out;
  if (!f.is_array()) {
    r.fail(path, std::string("expected array, got ") + type_name(f));
    return out;
  }
  for (std::size_t i = 0; i < f.size(); ++i) {
    const std::string ti = index_path(path, i);
    if (!r.object(f[i], ti, {"amplitude", "m", "phase", "n"})) continue;
    r.require(f[i], "amplitude", ti);
    r.require(f[i], "m", ti);
    r.require(f[i], "n", ti);
    ForcingTerm t;
    t.amplitude = r.number(f[i], "amplitude", ti, 0.0);
    t.m = r.integer(f[i], "m", ti, 0);
    t.phase = r.number(f[i], "phase", ti, 0.0);
    t.n = r.integers(f[i], "n", ti, {});
    out.terms.push_back(std::move(t));
  }
  return out;
}

ProblemSpec problem_from_json(const Json& j, JsonReader& r, const std::string& path) {
  ProblemSpec spec = default_problem();
  const std::size_t before = r.violations().size();
  if (!r.object(j, path,
                {"params", "domain", "period", "temporal_modes", "spatial_modes", "forcing",
                 "boundary"}))
    return spec;

  if (j.contains("params")) {
    const Json& p = j["params"];
    const std::string at = join_path(path, "params");
    if (r.object(p, at, {"a", "b", "c", "s", "B_over_A"})) {
      const ModelParams d = spec.params;
      spec.params = ModelParams::unchecked(r.number(p, "a", at, d.a()), r.number(p, "b", at, d.b()),
                                           r.number(p, "c", at, d.c()), r.integer(p, "s", at, d.s()),
                                           r.number(p, "B_over_A", at, d.B_over_A()));
    }
  }

  if (j.contains("domain")) {
    const Json& d = j["domain"];
    const std::string at = join_path(path, "domain");
    if (r.object(d, at, {"dimension", "lengths", "bc"})) {
      spec.domain.dimension = r.integer(d, "dimension", at, spec.domain.dimension);
      if (!d.contains("lengths") && spec.domain.dimension > 0 && spec.domain.dimension <= 3)
        spec.domain.lengths.assign(spec.domain.dimension, spec.domain.lengths.front());
      spec.domain.lengths = r.numbers(d, "lengths", at, spec.domain.lengths);
      const std::string bc = r.string(d, "bc", at, to_string(spec.domain.bc));
      try {
        spec.domain.bc = bc_kind_from_string(bc);
      } catch (const Error&) {
        r.fail(join_path(at, "bc"), "expected \"dirichlet\" or \"neumann\"");
      }
    }
  }

  spec.period = r.number(j, "period", path, spec.period);
  spec.temporal_modes = r.integer(j, "temporal_modes", path, spec.temporal_modes);
  if (!j.contains("spatial_modes") && spec.domain.dimension > 0 && spec.domain.dimension <= 3)
    spec.spatial_modes.assign(spec.domain.dimension, spec.spatial_modes.front());
  spec.spatial_modes = r.integers(j, "spatial_modes", path, spec.spatial_modes);

  if (j.contains("forcing"))
    spec.forcing = forcing_from_json(j["forcing"], r, join_path(path, "forcing"));

  if (j.contains("boundary") && !j["boundary"].is_null()) {
    const Json& b = j["boundary"];
    const std::string at = join_path(path, "boundary");
    if (r.object(b, at, {"g", "h"})) {
      BoundarySpec bs;
      if (b.contains("g")) bs.g = endpoint_from_json(b["g"], r, join_path(at, "g"));
      if (b.contains("h")) bs.h = endpoint_from_json(b["h"], r, join_path(at, "h"));
      spec.boundary = bs;
    }
  }

  // structural problems first; invariants only make sense on a well-typed document
  if (r.violations().size() == before)
    for (const auto& v : validate_problem(spec)) r.fail(join_path(path, v.field), v.message);
  return spec;
}

ProblemSpec problem_from_json(const Json& j) {
  JsonReader r;
  ProblemSpec spec = problem_from_json(j, r);
  r.check();
  return spec;
}

Json to_json(const FixedPointConfig& cfg) {
  return {{"max_iterations", cfg.max_iterations}, {"tolerance", cfg.tolerance},
          {"relaxation", cfg.relaxation},         {"norm_ceiling", cfg.norm_ceiling},
          {"ratio_patience", cfg.ratio_patience}, {"lp_exponent", cfg.lp_exponent}};
}

FixedPointConfig fixed_point_from_json(const Json& j, JsonReader& r, const std::string& path) {
  FixedPointConfig cfg;
  if (!r.object(j, path,
                {"max_iterations", "tolerance", "relaxation", "norm_ceiling", "ratio_patience",
                 "lp_exponent"}))
    return cfg;
  cfg.max_iterations = r.integer(j, "max_iterations", path, cfg.max_iterations);
  cfg.tolerance = r.number(j, "tolerance", path, cfg.tolerance);
  cfg.relaxation = r.number(j, "relaxation", path, cfg.relaxation);
  cfg.norm_ceiling = r.number(j, "norm_ceiling", path, cfg.norm_ceiling);
  cfg.ratio_patience = r.integer(j, "ratio_patience", path, cfg.ratio_patience);
  cfg.lp_exponent = r.number(j, "lp_exponent", path, cfg.lp_exponent);
  try {
    cfg.validate();
  } catch (const ParameterError& e) {
    r.fail(path, e.what());
  }
  return cfg;
}

Json to_json(const OracleConfig& cfg) {
  Json j = {{"steps_per_period", cfg.steps_per_period},
            {"max_periods", cfg.max_periods},
            {"tolerance", cfg.tolerance},
            {"linear", cfg.linear}};
  j["initial_amplitude"] = cfg.initial_amplitude ? Json(*cfg.initial_amplitude) : Json(nullptr);
  j["seed"] = cfg.seed;
  return j;
}

OracleConfig oracle_config_from_json(const Json& j, JsonReader& r, const std::string& path) {
  OracleConfig cfg;
  if (!r.object(j, path,
                {"steps_per_period", "max_periods", "tolerance", "linear", "initial_amplitude",
                 "seed"}))
    return cfg;
  cfg.steps_per_period = r.integer(j, "steps_per_period", path, cfg.steps_per_period);
  cfg.max_periods = r.integer(j, "max_periods", path, cfg.max_periods);
  cfg.tolerance = r.number(j, "tolerance", path, cfg.tolerance);
  cfg.linear = r.boolean(j, "linear", path, cfg.linear);
  if (j.contains("initial_amplitude") && !j["initial_amplitude"].is_null())
    cfg.initial_amplitude = r.number(j, "initial_amplitude", path, 0.0);
  cfg.seed = r.unsigned_integer(j, "seed", path, cfg.seed);
  try {
    cfg.validate();
  } catch (const ParameterError& e) {
    r.fail(path, e.what());
  }
  return cfg;
}

Json to_json(const SolveReport& report) {
  Json residuals = Json::array(), ratios = Json::array();
  for (double v : report.residuals) residuals.push_back(finite_or_null(v));
  for (double v : report.ratios) ratios.push_back(finite_or_null(v));
  return {{"verdict", to_string(report.verdict)},
          {"reason", report.reason},
          {"iterations", report.iterations},
          {"final_residual", report.residuals.empty() ? Json(nullptr)
                                                      : finite_or_null(report.residuals.back())},
          {"mean_ratio", finite_or_null(report.mean_ratio())},
          {"max_ratio", finite_or_null(report.max_ratio())},
          {"ps_norm", finite_or_null(report.ps_norm)},
          {"lp_norm", finite_or_null(report.lp_norm)},
          {"lp_exponent", report.lp_exponent},
          {"epsilon_hat", finite_or_null(report.epsilon_hat)},
          {"steady_norm", finite_or_null(report.steady_norm)},
          {"min_abs_symbol", finite_or_null(report.min_abs_symbol)},
          {"residuals", residuals},
          {"ratios", ratios}};
}

Json to_json(const EpsilonScanReport& report) {
  Json entries = Json::array();
  for (const auto& e : report.entries)
    entries.push_back({{"amplitude", e.amplitude},
                       {"verdict", to_string(e.verdict)},
                       {"iterations", e.iterations},
                       {"mean_ratio", finite_or_null(e.mean_ratio)},
                       {"max_ratio", finite_or_null(e.max_ratio)},
                       {"final_residual", finite_or_null(e.final_residual)}});
  Json j;
  j["largest_converged"] =
      report.largest_converged ? Json(*report.largest_converged) : Json(nullptr);
  j["smallest_diverged"] =
      report.smallest_diverged ? Json(*report.smallest_diverged) : Json(nullptr);
  j["entries"] = entries;
  return j;
}

Json to_json(const Comparison& c) {
  return {{"relative_l2", finite_or_null(c.relative_l2)},
          {"relative_max", finite_or_null(c.relative_max)},
          {"absolute_l2", finite_or_null(c.absolute_l2)},
          {"absolute_max", finite_or_null(c.absolute_max)}};
}

Json coefficients_to_json(const SpectralField& u) {
  Json rows = Json::array();
  const int M = u.temporal_modes();
  for (int m = -M; m <= M; ++m)
    for (int n = 0; n < u.basis().size(); ++n) {
      const Complex z = u(m, n);
      rows.push_back({{"m", m}, {"n", u.basis().multi_index(n)}, {"re", z.real()}, {"im", z.imag()}});
    }
  return {{"bc", to_string(u.basis().bc())},
          {"period", u.period()},
          {"temporal_modes", M},
          {"coefficients", rows}};
}

SpectralField coefficients_from_json(const Json& j, const Basis& basis, double period,
                                     int temporal_modes) {
  SpectralField u(basis, period, temporal_modes);
  if (!j.is_object() || !j.contains("coefficients") || !j["coefficients"].is_array())
    throw ShapeError("coefficient document needs a coefficients array");
  for (const auto& row : j["coefficients"]) {
    const int m = row.at("m").get<int>();
    const int flat = basis.flat_index(row.at("n").get<std::vector<int>>());
    if (flat < 0 || m < -temporal_modes || m > temporal_modes)
      throw ShapeError("coefficient row outside the truncation");
    u(m, flat) = Complex(row.at("re").get<double>(), row.at("im").get<double>());
  }
  return u;
}

Json parse_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError({{"--config", "cannot open " + path}});
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ValidationError({{"<root>", std::string("malformed JSON: ") + e.what()}});
  }
}

}  // namespace bcp
