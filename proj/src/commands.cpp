#include "bcp/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <iomanip>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>
#include <thread>

#include "bcp/linops.hpp"
#include "bcp/nonlinear.hpp"

namespace bcp {

namespace fs = std::filesystem;

namespace {

const Json& member(const Json& j, const char* key) {
  static const Json empty = Json::object();
  return j.is_object() && j.contains(key) ? j[key] : empty;
}

void write_file(const RunOptions& opt, const std::string& name, const std::string& content,
                std::ostream& log) {
  const fs::path path = opt.out_dir / name;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParameterError("cannot write " + path.string());
  out << content;
  if (!out) throw ParameterError("cannot write " + path.string());
  log << "wrote " << path.string() << '\n';
}

ValidationError config_error(std::string path, std::string message) {
  return ValidationError(
      std::vector<std::pair<std::string, std::string>>{{std::move(path), std::move(message)}});
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::ostringstream csv_stream() {
  std::ostringstream s;
  s << std::setprecision(17);
  return s;
}

std::string number_or_nan(double v) {
  std::ostringstream s;
  s << std::setprecision(17) << v;
  return s.str();
}

template <class F>
void parallel_for(std::size_t count, int workers, F&& body) {
  std::atomic<std::size_t> cursor{0};
  std::vector<std::exception_ptr> errors(count);
  auto worker = [&] {
    for (std::size_t i = cursor++; i < count; i = cursor++) {
      try {
        body(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int n = std::max(1, std::min<int>(workers, static_cast<int>(count)));
  std::vector<std::thread> pool;
  for (int t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

struct Common {
  ProblemSpec problem;
  FixedPointConfig fixed_point;
};

Common read_common(const Json& config, JsonReader& r, std::initializer_list<const char*> keys) {
  Common c;
  r.object(config, "", keys);
  r.require(config, "problem", "");
  c.problem = problem_from_json(member(config, "problem"), r, "problem");
  if (config.is_object() && config.contains("fixed_point"))
    c.fixed_point = fixed_point_from_json(config["fixed_point"], r, "fixed_point");
  return c;
}

SpatialGrid report_grid(const LiftedField& u) {
  return u.has_lift() ? quadrature_grid(u.interior.basis()) : product_grid(u.interior.basis());
}

double spatial_mean(const LiftedField& steady) {
  const SpatialGrid grid = report_grid(steady);
  const PhysicalField phys = steady.to_physical(1, grid);
  double measure = 1.0;
  for (double l : grid.lengths) measure *= l;
  return phys.values.row(0).dot(grid.flat_weights()) / measure;
}

double max_abs(const LiftedField& u) {
  const int M = u.interior.temporal_modes();
  return lp_norm(u.to_physical(product_time_points(M), report_grid(u)),
                 std::numeric_limits<double>::infinity());
}

std::string residuals_csv(const SolveReport& report) {
  auto s = csv_stream();
  s << "iteration,residual,ratio\n";
  for (std::size_t i = 0; i < report.residuals.size(); ++i) {
    s << i + 1 << ',' << report.residuals[i] << ',';
    // ratio j compares the step of iteration j+2 with that of iteration j+1
    if (i >= 1 && i - 1 < report.ratios.size()) s << report.ratios[i - 1];
    s << '\n';
  }
  return s.str();
}

std::string lift_csv(const PolynomialLift& lift) {
  auto s = csv_stream();
  s << "m,power,re,im\n";
  const int M = lift.temporal_modes();
  for (int m = -M; m <= M; ++m)
    for (int j = 0; j <= lift.degree(); ++j) {
      const Complex z = lift.coeffs()(m + M, j);
      s << m << ',' << j << ',' << z.real() << ',' << z.imag() << '\n';
    }
  return s.str();
}

std::string coefficients_csv(const SpectralField& u) {
  std::ostringstream s;
  write_coefficients_csv(s, u);
  return s.str();
}

SpectralField unit_mode(const Basis& basis, double period, int M, int m, const std::vector<int>& n,
                        double amplitude) {
  ForcingSpec f;
  f.terms.push_back({amplitude, m, 0.0, n});
  return assemble_forcing(f, basis, period, M);
}

}  // namespace

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = std::min(x.size(), y.size());
  if (n < 2) return std::numeric_limits<double>::quiet_NaN();
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

int cmd_solve(const Json& config, const RunOptions& opt, std::ostream& log) {
  JsonReader r;
  const Common c = read_common(config, r, {"problem", "fixed_point"});
  r.check();

  const Solution s = solve_problem(c.problem, c.fixed_point);
  write_file(opt, "solution.csv", coefficients_csv(s.u.projected()), log);
  if (s.u.has_lift()) write_file(opt, "lift.csv", lift_csv(*s.u.lift), log);
  write_file(opt, "residuals.csv", residuals_csv(s.report), log);

  Json report;
  report["command"] = "solve";
  report["problem"] = to_json(c.problem);
  report["fixed_point"] = to_json(c.fixed_point);
  report["report"] = to_json(s.report);
  report["steady_mean"] = spatial_mean(s.steady);
  report["max_abs"] = s.report.converged() ? Json(max_abs(s.u)) : Json(nullptr);
  write_file(opt, "report.json", dump(report), log);

  log << "solve: " << to_string(s.report.verdict) << " after " << s.report.iterations
      << " iterations (" << s.report.reason << ")\n";
  return s.report.converged() ? kExitOk : kExitDiverged;
}

int cmd_mms(const Json& config, const RunOptions& opt, std::ostream& log) {
  JsonReader r;
  const Common c = read_common(config, r, {"problem", "fixed_point", "manufactured", "resolutions"});
  const ProblemSpec& spec = c.problem;
  if (!spec.forcing.terms.empty())
    r.fail("problem.forcing", "mms builds its own forcing; leave this empty");
  if (!spec.homogeneous_boundary())
    r.fail("problem.boundary", "mms uses homogeneous boundary data");
  r.require(config, "manufactured", "");
  const ForcingSpec manufactured =
      config.is_object() && config.contains("manufactured")
          ? forcing_from_json(config["manufactured"], r, "manufactured")
          : ForcingSpec{};

  struct Resolution {
    int M;
    std::vector<int> N;
  };
  std::vector<Resolution> resolutions;
  r.require(config, "resolutions", "");
  const Json& res_json = member(config, "resolutions");
  const int dim = spec.domain.dimension;
  if (config.is_object() && config.contains("resolutions")) {
    if (!res_json.is_array() || res_json.empty()) {
      r.fail("resolutions", "expected a non-empty array");
    } else {
      for (std::size_t i = 0; i < res_json.size(); ++i) {
        const std::string at = "resolutions[" + std::to_string(i) + "]";
        if (!r.object(res_json[i], at, {"temporal_modes", "spatial_modes"})) continue;
        r.require(res_json[i], "temporal_modes", at);
        r.require(res_json[i], "spatial_modes", at);
        Resolution res{r.integer(res_json[i], "temporal_modes", at, 1),
                       r.integers(res_json[i], "spatial_modes", at, {})};
        if (res.M < 1) r.fail(at + ".temporal_modes", "must be at least 1");
        if (static_cast<int>(res.N.size()) != dim)
          r.fail(at + ".spatial_modes", "one mode count per axis required");
        else if (*std::min_element(res.N.begin(), res.N.end()) < 1)
          r.fail(at + ".spatial_modes", "must be at least 1");
        resolutions.push_back(std::move(res));
      }
    }
  }
  r.check();

  Resolution top{0, std::vector<int>(dim, 0)};
  for (const auto& res : resolutions) {
    top.M = std::max(top.M, res.M);
    for (int i = 0; i < dim; ++i) top.N[i] = std::max(top.N[i], res.N[i]);
  }
  const Basis top_basis(spec.domain.bc, spec.domain.lengths, top.N);
  auto covers = [&](const Resolution& res, const ForcingTerm& t) {
    if (t.m < 0 || t.m > res.M || static_cast<int>(t.n.size()) != dim) return false;
    return Basis(spec.domain.bc, spec.domain.lengths, res.N).flat_index(t.n) >= 0;
  };
  for (std::size_t i = 0; i < manufactured.terms.size(); ++i) {
    const ForcingTerm& t = manufactured.terms[i];
    const std::string at = "manufactured[" + std::to_string(i) + "]";
    bool any = false;
    for (const auto& res : resolutions) any = any || covers(res, t);
    if (!any) r.fail(at, "outside every listed resolution");
    if (spec.domain.bc == BcKind::Neumann && t.m == 0 &&
        std::all_of(t.n.begin(), t.n.end(), [](int v) { return v == 0; }))
      r.fail(at, "the steady spatial mean is fixed to zero by the Neumann gauge");
  }
  r.check();

  const ModelParams& p = spec.params;
  const SpectralField u_star = assemble_forcing(manufactured, top_basis, spec.period, top.M);
  const SpectralField f_star = apply_symbol(u_star, p) - eval_Q(u_star, p);
  const double u_ps = ps_norm(u_star);
  const SpatialGrid top_grid = product_grid(top_basis);
  const double u_l2 = lp_norm(to_physical(u_star, product_time_points(top.M), top_grid), 2.0);

  struct Row {
    bool covered = true;
    SolveReport report;
    double ps_error = 0.0;
    double l2_error = 0.0;
  };
  std::vector<Row> rows(resolutions.size());
  parallel_for(resolutions.size(), opt.workers, [&](std::size_t i) {
    const Resolution& res = resolutions[i];
    const Basis basis(spec.domain.bc, spec.domain.lengths, res.N);
    const SpectralField f = resample(f_star, basis, res.M);
    const Solution s = solve_periodic(p, f, BoundaryData1D::zero(res.M), c.fixed_point);
    const SpectralField diff = resample(s.u.projected(), top_basis, top.M) - u_star;
    Row row;
    for (const auto& t : manufactured.terms) row.covered = row.covered && covers(res, t);
    row.report = s.report;
    const double ps = ps_norm(diff);
    const double l2 = lp_norm(to_physical(diff, product_time_points(top.M), top_grid), 2.0);
    row.ps_error = u_ps > 0.0 ? ps / u_ps : ps;
    row.l2_error = u_l2 > 0.0 ? l2 / u_l2 : l2;
    rows[i] = std::move(row);
  });

  auto s = csv_stream();
  s << "M";
  for (int i = 1; i <= dim; ++i) s << ",N" << i;
  s << ",covers_band,verdict,iterations,ps_error,l2_error\n";
  bool all_converged = true;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    s << resolutions[i].M;
    for (int n : resolutions[i].N) s << ',' << n;
    s << ',' << (rows[i].covered ? 1 : 0) << ',' << to_string(rows[i].report.verdict) << ','
      << rows[i].report.iterations << ',' << rows[i].ps_error << ',' << rows[i].l2_error << '\n';
    all_converged = all_converged && rows[i].report.converged();
  }
  write_file(opt, "mms_errors.csv", s.str(), log);
  log << "mms: " << rows.size() << " resolutions\n";
  return all_converged ? kExitOk : kExitDiverged;
}

int cmd_resonance_sweep(const Json& config, const RunOptions& opt, std::ostream& log) {
  JsonReader r;
  const Common c = read_common(
      config, r, {"problem", "fixed_point", "tuned_mode", "deltas", "frequency_sweep"});
  const ProblemSpec& spec = c.problem;
  r.require(config, "tuned_mode", "");
  r.require(config, "deltas", "");
  const Json& tuned = member(config, "tuned_mode");
  r.object(tuned, "tuned_mode", {"m", "n"});
  r.require(tuned, "m", "tuned_mode");
  r.require(tuned, "n", "tuned_mode");
  const int m = r.integer(tuned, "m", "tuned_mode", 1);
  const std::vector<int> n = r.integers(tuned, "n", "tuned_mode", {});
  const std::vector<double> deltas = r.numbers(config, "deltas", "", {});
  for (std::size_t i = 0; i < deltas.size(); ++i)
    if (!(deltas[i] > 0.0)) r.fail("deltas[" + std::to_string(i) + "]", "must be positive");

  const bool has_freq = config.is_object() && config.contains("frequency_sweep");
  double freq_delta = 1.0, freq_amplitude = 1e-3;
  std::vector<double> factors;
  if (has_freq) {
    const Json& fj = config["frequency_sweep"];
    if (r.object(fj, "frequency_sweep", {"delta", "amplitude", "omega_factors"})) {
      freq_delta = r.number(fj, "delta", "frequency_sweep", freq_delta);
      freq_amplitude = r.number(fj, "amplitude", "frequency_sweep", freq_amplitude);
      r.require(fj, "omega_factors", "frequency_sweep");
      factors = r.numbers(fj, "omega_factors", "frequency_sweep", {});
      if (!(freq_delta > 0.0)) r.fail("frequency_sweep.delta", "must be positive");
      if (!std::isfinite(freq_amplitude)) r.fail("frequency_sweep.amplitude", "must be finite");
      for (std::size_t i = 0; i < factors.size(); ++i)
        if (!(factors[i] > 0.0))
          r.fail("frequency_sweep.omega_factors[" + std::to_string(i) + "]", "must be positive");
    }
  }
  r.check();

  const Basis basis = Basis::from_problem(spec);
  const int M = spec.temporal_modes;
  const int flat = basis.flat_index(n);
  if (m < 1 || m > M) r.fail("tuned_mode.m", "must lie in [1, M]");
  if (flat < 0) r.fail("tuned_mode.n", "spatial index outside truncation");
  else if (basis.eigenvalue(flat) == 0.0) r.fail("tuned_mode.n", "the mean mode has no resonance");
  r.check();

  const double lambda = basis.eigenvalue(flat);
  const double omega_res = spec.params.c() * std::sqrt(lambda) / m;
  const double period = 2.0 * std::numbers::pi / omega_res;

  struct Row {
    double min_abs = 0.0;
    double amplitude = 0.0;
  };
  std::vector<Row> rows(deltas.size());
  const SpectralField unit = unit_mode(basis, period, M, m, n, 1.0);
  parallel_for(deltas.size(), opt.workers, [&](std::size_t i) {
    const ModelParams p = spec.params.with_dissipation_scale(deltas[i]);
    const SpectralField u = solve_linear_direct(unit, p);
    rows[i] = {check_invertibility(p, basis, period, M, 0.0).min_abs, 2.0 * std::abs(u(m, flat))};
  });

  auto s = csv_stream();
  s << "delta,min_abs_symbol,response_amplitude\n";
  std::vector<double> amps;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    s << deltas[i] << ',' << rows[i].min_abs << ',' << rows[i].amplitude << '\n';
    amps.push_back(rows[i].amplitude);
  }
  write_file(opt, "resonance_sweep.csv", s.str(), log);

  Json summary;
  summary["tuned_mode"] = {{"m", m}, {"n", n}};
  summary["resonant_omega"] = omega_res;
  summary["resonant_period"] = period;
  const double slope = loglog_slope(deltas, amps);
  summary["slope"] = std::isfinite(slope) ? Json(slope) : Json(nullptr);

  int code = kExitOk;
  if (has_freq) {
    struct FreqRow {
      double omega, period, abs_symbol, response;
      SolveReport report;
    };
    std::vector<FreqRow> freq(factors.size());
    const ModelParams p = spec.params.with_dissipation_scale(freq_delta);
    parallel_for(factors.size(), opt.workers, [&](std::size_t i) {
      const double omega = factors[i] * omega_res;
      const double T = 2.0 * std::numbers::pi / omega;
      const SpectralField f = unit_mode(basis, T, M, m, n, freq_amplitude);
      const Solution sol = solve_periodic(p, f, BoundaryData1D::zero(M), c.fixed_point);
      const double response = sol.report.converged() ? max_abs(sol.u)
                                                     : std::numeric_limits<double>::quiet_NaN();
      freq[i] = {omega, T, std::abs(symbol(p, omega, m, lambda)), response, sol.report};
    });
    auto fs_csv = csv_stream();
    fs_csv << "omega,period,abs_symbol,verdict,iterations,response_amplitude\n";
    double min_sym = std::numeric_limits<double>::infinity();
    double max_response = 0.0;
    bool all_converged = true;
    for (const auto& row : freq) {
      fs_csv << row.omega << ',' << row.period << ',' << row.abs_symbol << ','
             << to_string(row.report.verdict) << ',' << row.report.iterations << ','
             << number_or_nan(row.response) << '\n';
      min_sym = std::min(min_sym, row.abs_symbol);
      if (row.report.converged()) max_response = std::max(max_response, row.response);
      all_converged = all_converged && row.report.converged();
    }
    write_file(opt, "frequency_sweep.csv", fs_csv.str(), log);
    const double bound = freq.empty() ? 0.0 : 2.0 * std::abs(freq_amplitude) / min_sym;
    summary["frequency_sweep"] = {{"delta", freq_delta},
                                  {"amplitude", freq_amplitude},
                                  {"bound", bound},
                                  {"max_response", max_response},
                                  {"all_converged", all_converged},
                                  {"bounded", all_converged && max_response <= bound}};
    if (!all_converged) code = kExitDiverged;
  }
  write_file(opt, "resonance_summary.json", dump(summary), log);
  log << "resonance-sweep: " << deltas.size() << " dissipation scales, " << factors.size()
      << " frequencies\n";
  return code;
}

int cmd_oracle_compare(const Json& config, const RunOptions& opt, std::ostream& log) {
  JsonReader r;
  const Common c = read_common(config, r, {"problem", "fixed_point", "oracle"});
  OracleConfig ocfg;
  if (config.is_object() && config.contains("oracle"))
    ocfg = oracle_config_from_json(config["oracle"], r, "oracle");
  if (opt.seed) ocfg.seed = *opt.seed;
  if (!c.problem.homogeneous_boundary())
    r.fail("problem.boundary", "the oracle supports homogeneous boundary data only");
  r.check();

  Json out;
  out["command"] = "oracle-compare";
  out["problem"] = to_json(c.problem);
  out["fixed_point"] = to_json(c.fixed_point);
  out["oracle"] = to_json(ocfg);

  const Solution s = solve_problem(c.problem, c.fixed_point);
  out["solve"] = to_json(s.report);
  if (!s.report.converged()) {
    out["attractor"] = nullptr;
    out["comparison"] = nullptr;
    write_file(opt, "oracle_compare.json", dump(out), log);
    log << "oracle-compare: harmonic balance " << to_string(s.report.verdict) << " ("
        << s.report.reason << ")\n";
    return kExitDiverged;
  }

  std::optional<Attractor> a;
  std::string failure;
  try {
    a = find_attractor(c.problem, ocfg);
    if (!a->found)
      failure = "no periodic attractor within " + std::to_string(ocfg.max_periods) + " periods";
  } catch (const OutOfRegimeError& e) {
    failure = e.what();
  }
  out["attractor"] = {{"found", a && a->found},
                      {"periods", a ? Json(a->periods) : Json(nullptr)},
                      {"period_residual", a ? Json(a->period_residual) : Json(nullptr)}};
  if (!failure.empty()) out["attractor"]["reason"] = failure;

  if (!a || !a->found) {
    out["comparison"] = nullptr;
    write_file(opt, "oracle_compare.json", dump(out), log);
    log << "oracle-compare: " << failure << '\n';
    return kExitNoAttractor;
  }
  const SpectralField u = s.u.projected();
  const Comparison cmp = compare(u, a->trajectory);
  out["comparison"] = to_json(cmp);
  write_file(opt, "oracle_compare.json", dump(out), log);

  std::ostringstream oracle_csv, harmonic_csv;
  write_trajectory_csv(oracle_csv, a->trajectory);
  const Trajectory hb{u.basis(), u.period(),
                      (temporal_synthesis(u.temporal_modes(), a->trajectory.samples()) * u.coeffs())
                          .real()};
  write_trajectory_csv(harmonic_csv, hb);
  write_file(opt, "trajectory_oracle.csv", oracle_csv.str(), log);
  write_file(opt, "trajectory_harmonic.csv", harmonic_csv.str(), log);
  log << "oracle-compare: relative L2 difference " << cmp.relative_l2 << " after " << a->periods
      << " periods\n";
  return kExitOk;
}

int cmd_epsilon_scan(const Json& config, const RunOptions& opt, std::ostream& log) {
  JsonReader r;
  const Common c =
      read_common(config, r, {"problem", "fixed_point", "amplitudes", "bisection_steps"});
  r.require(config, "amplitudes", "");
  const std::vector<double> amplitudes = r.numbers(config, "amplitudes", "", {});
  const int bisection = r.integer(config, "bisection_steps", "", 0);
  if (config.is_object() && config.contains("amplitudes") && amplitudes.empty())
    r.fail("amplitudes", "expected a non-empty array");
  for (std::size_t i = 0; i < amplitudes.size(); ++i) {
    const std::string at = "amplitudes[" + std::to_string(i) + "]";
    if (!(amplitudes[i] > 0.0)) r.fail(at, "must be positive");
    if (i > 0 && !(amplitudes[i] > amplitudes[i - 1])) r.fail(at, "must be strictly increasing");
  }
  if (bisection < 0) r.fail("bisection_steps", "must be non-negative");
  r.check();

  const EpsilonScanReport report =
      estimate_epsilon_threshold(c.problem, amplitudes, c.fixed_point, opt.workers, bisection);
  Json out;
  out["command"] = "epsilon-scan";
  out["problem"] = to_json(c.problem);
  out["fixed_point"] = to_json(c.fixed_point);
  out["scan"] = to_json(report);
  write_file(opt, "epsilon_scan.json", dump(out), log);

  auto s = csv_stream();
  s << "amplitude,verdict,iterations,mean_ratio,max_ratio,final_residual\n";
  for (const auto& e : report.entries)
    s << e.amplitude << ',' << to_string(e.verdict) << ',' << e.iterations << ',' << e.mean_ratio
      << ',' << e.max_ratio << ',' << e.final_residual << '\n';
  write_file(opt, "epsilon_scan.csv", s.str(), log);

  log << "epsilon-scan: largest converged "
      << (report.largest_converged ? number_or_nan(*report.largest_converged) : "none")
      << ", smallest diverged "
      << (report.smallest_diverged ? number_or_nan(*report.smallest_diverged) : "none") << '\n';
  return kExitOk;
}

int cmd_invertibility(const Json& config, const RunOptions& opt, std::ostream& log) {
  JsonReader r;
  const Common c = read_common(config, r, {"problem"});
  r.check();
  const ProblemSpec& spec = c.problem;
  const Basis basis = Basis::from_problem(spec);
  std::ostringstream table;
  write_symbol_table_csv(table, spec.params, basis, spec.period, spec.temporal_modes);
  write_file(opt, "symbol_table.csv", table.str(), log);

  const InvertibilityReport rep = check_invertibility(spec);
  Json out;
  out["command"] = "invertibility";
  out["problem"] = to_json(spec);
  out["min_abs_symbol"] = rep.min_abs;
  out["argmin"] = {{"m", rep.m}, {"n", rep.n}};
  out["tolerance"] = kResonanceTolerance;
  write_file(opt, "invertibility.json", dump(out), log);
  log << "invertibility: min |sigma| = " << rep.min_abs << '\n';
  return kExitOk;
}

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"solve",         "mms",          "resonance-sweep",
                                              "oracle-compare", "epsilon-scan", "invertibility"};
  return names;
}

int run_command(const std::string& name, const Json& config, const RunOptions& opt,
                std::ostream& log, std::ostream& err) {
  try {
    if (opt.workers < 1) throw config_error("--workers", "must be at least 1");
    std::error_code ec;
    fs::create_directories(opt.out_dir, ec);
    if (ec || !fs::is_directory(opt.out_dir))
      throw config_error("--out", "cannot create directory " + opt.out_dir.string());

    if (name == "solve") return cmd_solve(config, opt, log);
    if (name == "mms") return cmd_mms(config, opt, log);
    if (name == "resonance-sweep") return cmd_resonance_sweep(config, opt, log);
    if (name == "oracle-compare") return cmd_oracle_compare(config, opt, log);
    if (name == "epsilon-scan") return cmd_epsilon_scan(config, opt, log);
    if (name == "invertibility") return cmd_invertibility(config, opt, log);
    err << "error: unknown command '" << name << "'\n";
    return kExitConfig;
  } catch (const ValidationError& e) {
    for (const auto& [path, message] : e.violations())
      err << "config error: " << (path.empty() ? "<root>" : path) << ": " << message << '\n';
    return kExitConfig;
  } catch (const IncompatibleDataError& e) {
    err << "incompatible data: " << e.what() << '\n';
    return kExitIncompatible;
  } catch (const OutOfRegimeError& e) {
    err << "out of regime: " << e.what() << '\n';
    return kExitDiverged;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }
}

int run_command_file(const std::string& name, const std::string& config_path,
                     const RunOptions& opt, std::ostream& log, std::ostream& err) {
  Json config;
  try {
    config = parse_json_file(config_path);
  } catch (const ValidationError& e) {
    for (const auto& [path, message] : e.violations())
      err << "config error: " << path << ": " << message << '\n';
    return kExitConfig;
  }
  return run_command(name, config, opt, log, err);
}

}  // namespace bcp
