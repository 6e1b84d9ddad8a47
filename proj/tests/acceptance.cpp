// Acceptance suite: one PASS/FAIL line per criterion, with wall time against its budget.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "bcp/commands.hpp"
#include "bcp/fixedpoint.hpp"
#include "bcp/linops.hpp"
#include "bcp/nonlinear.hpp"
#include "bcp/oracle.hpp"

using namespace bcp;
namespace fs = std::filesystem;

namespace {

constexpr double pi = std::numbers::pi;

struct Outcome {
  bool pass;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double budget_s;
  std::function<Outcome()> run;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

SpectralField random_field(const Basis& basis, int M, std::mt19937& rng, bool steady_row) {
  std::normal_distribution<double> g;
  SpectralField u(basis, 2.0 * pi, M);
  for (int m = -M; m <= M; ++m)
    for (int n = 0; n < basis.size(); ++n)
      if (steady_row || m != 0) u(m, n) = Complex(g(rng), g(rng));
  return u.make_real();
}

SpectralField steady_field(const Basis& basis, int M, std::mt19937& rng) {
  std::normal_distribution<double> g;
  SpectralField u(basis, 2.0 * pi, M);
  for (int n = 0; n < basis.size(); ++n) u(0, n) = g(rng);
  return u;
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / "bcp_acceptance" / name;
  fs::remove_all(p);
  return p;
}

int run_cli(const std::string& cmd, const Json& config, const fs::path& out, int workers = 1) {
  RunOptions opt;
  opt.out_dir = out;
  opt.workers = workers;
  std::ostringstream log, err;
  return run_command(cmd, config, opt, log, err);
}

Json read_json(const fs::path& p) {
  std::ifstream in(p);
  return Json::parse(in);
}

std::vector<std::vector<double>> read_numeric_csv(const fs::path& p) {
  std::ifstream in(p);
  std::string line;
  std::getline(in, line);
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    std::vector<double> row;
    std::stringstream ls(line);
    std::string cell;
    // text columns such as the verdict read as NaN
    while (std::getline(ls, cell, ',')) {
      char* end = nullptr;
      const double v = std::strtod(cell.c_str(), &end);
      row.push_back(end != cell.c_str() && *end == '\0' ? v : std::nan(""));
    }
    rows.push_back(row);
  }
  return rows;
}

Outcome symbol_factorization() {
  const ModelParams p;
  double worst = 0.0;
  int count = 0;
  for (BcKind bc : {BcKind::Dirichlet, BcKind::Neumann}) {
    const Basis basis(bc, {pi}, {32});
    for (int m = 0; m <= 32; ++m)
      for (int n = 0; n < basis.size(); ++n) {
        const double lambda = basis.eigenvalue(n);
        const Complex prod = heat_symbol(p, 1.0, m, lambda) * kuznetsov_symbol(p, 1.0, m, lambda);
        const Complex full = symbol(p, 1.0, m, lambda);
        const double scale = std::abs(full);
        const double err = std::abs(prod - full);
        worst = std::max(worst, scale > 0.0 ? err / scale : err);
        ++count;
      }
  }
  return {worst <= 1e-15, std::to_string(count) + " modes, max rel err " + fmt("%.2e", worst)};
}

Outcome non_resonance() {
  std::mt19937 rng(2);
  std::uniform_real_distribution<double> ab(1e-3, 10.0);
  const Basis basis(BcKind::Dirichlet, {pi}, {32});
  double smallest = 1e300, worst_mismatch = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const ModelParams p(ab(rng), ab(rng), 1.0, 1, 1.0);
    const InvertibilityReport r = check_invertibility(p, basis, 2.0 * pi, 32);
    // independent minimum of |heat| |kuznetsov| from the factor moduli
    double brute = 1e300;
    for (int m = 1; m <= 32; ++m)
      for (int n = 1; n <= 32; ++n) {
        const double lambda = double(n) * n, mu = m;
        const double heat = std::hypot(p.a() * lambda, mu);
        const double kuz = std::hypot(lambda - mu * mu, p.b() * mu * lambda);
        brute = std::min(brute, heat * kuz);
      }
    smallest = std::min(smallest, r.min_abs);
    worst_mismatch = std::max(worst_mismatch, std::abs(r.min_abs - brute) / brute);
  }
  return {smallest > 0.0 && worst_mismatch < 1e-12,
          "20 sets, min|sigma| " + fmt("%.3e", smallest) + ", vs factor moduli " +
              fmt("%.1e", worst_mismatch)};
}

Outcome path_equivalence() {
  std::mt19937 rng(3);
  const ModelParams p;
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const BcKind bc = trial % 2 ? BcKind::Neumann : BcKind::Dirichlet;
    const Basis basis(bc, {pi}, {16});
    const SpectralField f = random_field(basis, 16, rng, false);
    const SpectralField direct = solve_linear_direct(f, p);
    const SpectralField staged = solve_linear_decomposed(f, p);
    worst = std::max(worst, ps_norm(direct - staged) / ps_norm(direct));
  }
  return {worst < 1e-12, "100 fields, max rel diff " + fmt("%.2e", worst)};
}

Outcome steady_reduction() {
  bool exact = true;
  for (const ModelParams& p : {ModelParams(), ModelParams(0.37, 2.5, 1.7, 0, 4.0)})
    for (int n = 1; n <= 32; ++n) {
      const double lambda = double(n) * n;
      const Complex s = symbol(p, 1.0, 0, lambda);
      exact = exact && s.real() == -(p.a() * p.c() * p.c() * lambda * lambda) && s.imag() == 0.0;
    }
  std::mt19937 rng(4);
  const ModelParams p;
  const Basis basis(BcKind::Dirichlet, {pi}, {16});
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const SpectralField f = steady_field(basis, 4, rng);
    const SpectralField u = solve_steady_dirichlet(f, p);
    SpectralField want(basis, f.period(), 4);
    for (int n = 0; n < basis.size(); ++n) {
      const double lambda = basis.eigenvalue(n);
      want(0, n) = f(0, n) / (-p.a() * p.c() * p.c() * lambda * lambda);
    }
    worst = std::max(worst, ps_norm(u - want) / ps_norm(want));
  }
  return {exact && worst < 1e-13, std::string("sigma(0,n) ") + (exact ? "exact" : "inexact") +
                                      ", two-stage vs division " + fmt("%.2e", worst)};
}

Outcome manufactured_solution() {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> mode(1, 16), tmode(0, 16);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * pi);
  Json manufactured = Json::array();
  for (int i = 0; i < 12; ++i)
    manufactured.push_back(
        {{"amplitude", 1e-4}, {"m", tmode(rng)}, {"phase", phase(rng)}, {"n", {mode(rng)}}});
  const Json cfg = {
      {"problem", Json::object()},
      {"manufactured", manufactured},
      {"resolutions", {{{"temporal_modes", 16}, {"spatial_modes", {16}}}}},
      {"fixed_point", {{"tolerance", 1e-14}, {"max_iterations", 200}}}};
  const fs::path out = scratch("mms");
  const int code = run_cli("mms", cfg, out);
  if (code != kExitOk) return {false, "mms exit code " + std::to_string(code)};
  const auto rows = read_numeric_csv(out / "mms_errors.csv");
  const double ps = rows.at(0).at(5), l2 = rows.at(0).at(6);
  return {ps < 1e-10, "12 modes at 1e-4, M=N=16: rel error " + fmt("%.2e", ps) + " (L2 " +
                          fmt("%.2e", l2) + ")"};
}

Outcome contraction() {
  ProblemSpec spec = default_problem(16, 16);
  FixedPointConfig cfg;
  cfg.tolerance = 1e-14;
  double means[2];
  bool all_below = true;
  std::size_t recorded = 0;
  const double amps[2] = {1e-3, 5e-4};
  for (int i = 0; i < 2; ++i) {
    spec.forcing.terms = {{amps[i], 1, 0.0, {1}}};
    const Solution s = solve_bcd(spec, cfg);
    if (!s.report.converged()) return {false, "no convergence at " + fmt("%.0e", amps[i])};
    for (double r : s.report.ratios) all_below = all_below && r < 1.0;
    recorded += s.report.ratios.size();
    means[i] = s.report.mean_ratio();
  }
  return {all_below && recorded > 0 && means[1] < means[0],
          std::to_string(recorded) + " ratios, mean " + fmt("%.3e", means[0]) + " at 1e-3, " +
              fmt("%.3e", means[1]) + " at 5e-4"};
}

Outcome resonance_scaling() {
  const Json cfg = {
      {"problem", {{"temporal_modes", 8}, {"spatial_modes", {8}}}},
      {"tuned_mode", {{"m", 1}, {"n", {1}}}},
      {"deltas", {1e-1, 1e-2, 1e-3, 1e-4}},
      {"frequency_sweep",
       {{"delta", 0.1},
        {"amplitude", 1e-3},
        {"omega_factors", {0.5, 0.8, 0.9, 0.95, 0.98, 1.0, 1.02, 1.05, 1.1, 1.2, 1.5}}}}};
  const fs::path out = scratch("resonance");
  const int code = run_cli("resonance-sweep", cfg, out, 4);
  if (code != kExitOk) return {false, "resonance-sweep exit code " + std::to_string(code)};
  const auto rows = read_numeric_csv(out / "resonance_sweep.csv");
  // own least-squares fit of log amplitude against log delta
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& r : rows) {
    const double x = std::log(r[0]), y = std::log(r[2]);
    sx += x, sy += y, sxx += x * x, sxy += x * y;
  }
  const double n = rows.size();
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);

  const auto freq = read_numeric_csv(out / "frequency_sweep.csv");
  double max_resp = 0.0, min_sym = 1e300;
  bool finite = !freq.empty();
  for (const auto& r : freq) {
    finite = finite && std::isfinite(r[5]);
    max_resp = std::max(max_resp, r[5]);
    min_sym = std::min(min_sym, r[2]);
  }
  const double bound = 2.0 * 1e-3 / min_sym;
  const bool bounded = finite && max_resp <= bound;
  return {rows.size() == 4 && std::abs(slope + 1.0) <= 0.1 && bounded,
          "slope " + fmt("%.4f", slope) + ", max response " + fmt("%.3e", max_resp) +
              " <= bound " + fmt("%.3e", bound)};
}

Outcome neumann_compatibility() {
  const fs::path out = scratch("neumann");
  Json bad = {{"problem",
               {{"domain", {{"bc", "neumann"}}},
                {"temporal_modes", 4},
                {"spatial_modes", {8}},
                {"forcing", {{{"amplitude", 1e-3}, {"m", 0}, {"n", {0}}}}}}}};
  const int rejected = run_cli("solve", bad, out);

  const double h0 = 1e-3, L = pi;
  ProblemSpec spec = default_problem(4, 8, BcKind::Neumann);
  const ModelParams& p = spec.params;
  spec.forcing.terms = {{-2.0 * p.a() * p.c() * p.c() * h0 / L, 0, 0.0, {0}}};
  BoundarySpec b;
  b.h.left = b.h.right = {{h0, 0, 0.0}};
  spec.boundary = b;
  const int accepted = run_cli("solve", {{"problem", to_json(spec)}}, out);
  const double cli_mean = accepted == kExitOk
                              ? std::abs(read_json(out / "report.json")["steady_mean"].get<double>())
                              : 1.0;

  const Solution s = solve_bcn(spec);
  // independent mean: Gauss-Legendre quadrature of the steady part over [0, L]
  const SpatialGrid grid = quadrature_grid(s.steady.interior.basis());
  const PhysicalField phys = s.steady.to_physical(1, grid);
  const double mean = std::abs(phys.values.row(0).dot(grid.flat_weights())) / L;
  const Residual r = residual(s.u, assemble_forcing(spec),
                              BoundaryData1D::from_spec(spec.boundary, 4), p);
  const bool pass = rejected == kExitIncompatible && accepted == kExitOk && s.report.converged() &&
                    mean < 1e-14 && cli_mean < 1e-14 && r.boundary_max < 1e-12;
  return {pass, "incompatible exit " + std::to_string(rejected) + ", compatible exit " +
                    std::to_string(accepted) + ", steady mean " + fmt("%.1e", mean) +
                    ", trace residual " + fmt("%.1e", r.boundary_max)};
}

Outcome oracle_cross_validation() {
  ProblemSpec spec = default_problem(16, 16);
  spec.forcing.terms = {{1e-3, 1, 0.0, {1}}};
  FixedPointConfig fp;
  fp.tolerance = 1e-13;
  const Solution s = solve_bcd(spec, fp);
  if (!s.report.converged()) return {false, "harmonic balance did not converge"};
  OracleConfig cfg;
  cfg.steps_per_period = 512;
  cfg.max_periods = 200;
  cfg.tolerance = 1e-10;
  const Attractor a = find_attractor(spec, cfg);
  if (!a.found) return {false, "no attractor in " + std::to_string(a.periods) + " periods"};
  const Comparison c = compare(s.u.projected(), a.trajectory);
  return {c.relative_l2 < 1e-4, "rel L2 " + fmt("%.3e", c.relative_l2) + " after " +
                                    std::to_string(a.periods) + " periods"};
}

Outcome nonlinearity() {
  std::mt19937 rng(10);
  const ModelParams p;
  bool steady_zero = true;
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const BcKind bc = trial % 2 ? BcKind::Neumann : BcKind::Dirichlet;
    const Basis basis(bc, {pi}, {16});
    const SpectralField u = random_field(basis, 16, rng, true);
    const SpectralField q = eval_Q(u, p);
    steady_zero = steady_zero && project_steady(q).coeffs().isZero(0.0);
    const SpectralField q3 = eval_Q(3.0 * u, p);
    worst = std::max(worst, (q3.coeffs() - 9.0 * q.coeffs()).norm() / (9.0 * q.coeffs().norm()));
  }

  // u = eps cos t sin x with s = 0: Q = 2 k eps^2 cos 2t sin^2 x, and
  // (2/pi) int sin^2 x sin nx dx = -8 / (pi n (n^2 - 4)) for odd n
  const ModelParams p0(1.0, 1.0, 1.0, 0, 1.0);
  const Basis basis(BcKind::Dirichlet, {pi}, {16});
  const double eps = 0.2;
  SpectralField u(basis, 2.0 * pi, 4);
  u(1, 0) = u(-1, 0) = eps / 2.0;
  const SpectralField q = eval_Q(u, p0);
  double harmonic = 0.0;
  for (int m = -4; m <= 4; ++m)
    for (int n = 1; n <= 16; ++n) {
      double want = 0.0;
      if (std::abs(m) == 2 && n % 2)
        want = p0.k() * eps * eps * (-8.0) / (pi * n * (double(n) * n - 4.0));
      harmonic = std::max(harmonic, std::abs(q(m, n - 1) - want));
    }
  return {steady_zero && worst < 1e-12 && harmonic < 1e-12,
          std::string("P(Q) ") + (steady_zero ? "exactly 0" : "nonzero") + ", homogeneity " +
              fmt("%.1e", worst) + ", second harmonic " + fmt("%.1e", harmonic)};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "symbol factorization", 1.0, symbol_factorization},
      {2, "non-resonance witness", 1.0, non_resonance},
      {3, "direct vs decomposed paths", 5.0, path_equivalence},
      {4, "steady reduction", 1.0, steady_reduction},
      {5, "manufactured solution", 10.0, manufactured_solution},
      {6, "contraction behaviour", 30.0, contraction},
      {7, "resonance scaling", 30.0, resonance_scaling},
      {8, "Neumann compatibility", 5.0, neumann_compatibility},
      {9, "oracle cross-validation", 120.0, oracle_cross_validation},
      {10, "nonlinearity properties", 5.0, nonlinearity},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o{false, ""};
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs < c.budget_s;
    const bool pass = o.pass && in_time;
    failed += pass ? 0 : 1;
    std::printf("%s %2d %-28s %8.3f s (< %g s)  %s%s\n", pass ? "PASS" : "FAIL", c.id,
                c.name.c_str(), secs, c.budget_s, o.detail.c_str(),
                in_time ? "" : "  [over time budget]");
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
