#include "bcp/fixedpoint.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <thread>

#include "bcp/nonlinear.hpp"

namespace bcp {

namespace {

/// Samples both endpoint traces at the 2M+1 collocation times.
double trace_max(const TraceMatrix& t) {
  const int M = static_cast<int>(t.rows() / 2);
  const Eigen::MatrixXd v = (temporal_synthesis(M, 2 * M + 1) * t).real();
  return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff();
}

struct ReportGrid {
  int time_points;
  SpatialGrid grid;
};

ReportGrid report_grid(const Basis& basis, int M, bool lifted) {
  return {product_time_points(M), lifted ? quadrature_grid(basis) : product_grid(basis)};
}

double field_lp(const LiftedField& u, double p) {
  const ReportGrid g = report_grid(u.interior.basis(), u.interior.temporal_modes(), u.has_lift());
  return lp_norm(u.to_physical(g.time_points, g.grid), p);
}

LiftedField steady_solve(const ModelParams& p, const SplitData& d) {
  if (d.f_s.basis().bc() == BcKind::Dirichlet) return solve_steady_dirichlet(d.f_s, p, d.b_s);
  return solve_steady_neumann(d.f_s, p, d.b_s);
}

}  // namespace

void FixedPointConfig::validate() const {
  if (max_iterations < 1) throw ParameterError("max_iterations must be at least 1");
  if (!(tolerance > 0.0)) throw ParameterError("tolerance must be positive");
  if (!(relaxation > 0.0 && relaxation <= 1.0))
    throw ParameterError("relaxation must lie in (0, 1]");
  if (!(norm_ceiling > 0.0)) throw ParameterError("norm ceiling must be positive");
  if (ratio_patience < 1) throw ParameterError("ratio patience must be at least 1");
  if (!(lp_exponent >= 1.0)) throw ParameterError("lp exponent must be at least 1");
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Converged: return "converged";
    case Verdict::Diverged: return "diverged";
    case Verdict::MaxIterations: return "max_iterations";
  }
  return "unknown";
}

double SolveReport::mean_ratio() const {
  if (ratios.empty()) return 0.0;
  return std::accumulate(ratios.begin(), ratios.end(), 0.0) / ratios.size();
}

double SolveReport::max_ratio() const {
  return ratios.empty() ? 0.0 : *std::max_element(ratios.begin(), ratios.end());
}

SpectralField assemble_forcing(const ForcingSpec& forcing, const Basis& basis, double period,
                               int temporal_modes) {
  SpectralField f(basis, period, temporal_modes);
  for (const auto& term : forcing.terms) {
    const int flat = basis.flat_index(term.n);
    if (flat < 0 || term.m < 0 || term.m > temporal_modes)
      throw ShapeError("forcing term outside the truncation");
    if (term.m == 0) {
      f(0, flat) += term.amplitude * std::cos(term.phase);
      continue;
    }
    const Complex half = 0.5 * term.amplitude * std::polar(1.0, term.phase);
    f(term.m, flat) += half;
    f(-term.m, flat) += std::conj(half);
  }
  return f;
}

SpectralField assemble_forcing(const ProblemSpec& spec) {
  return assemble_forcing(spec.forcing, Basis::from_problem(spec), spec.period,
                          spec.temporal_modes);
}

SplitData split_data(const SpectralField& f, const BoundaryData1D& b) {
  return {project_steady(f), project_oscillatory(f), b.steady(), b.oscillatory()};
}

Solution solve_periodic(const ModelParams& p, const SpectralField& f, const BoundaryData1D& b,
                        const FixedPointConfig& cfg) {
  cfg.validate();
  const Basis& basis = f.basis();
  const int M = f.temporal_modes();
  SolveReport report;
  report.lp_exponent = cfg.lp_exponent;
  report.min_abs_symbol = check_invertibility(p, basis, f.period(), M).min_abs;

  const SplitData d = split_data(f, b);
  const LiftedField u_s = steady_solve(p, d);

  {
    const ReportGrid g = report_grid(basis, M, false);
    double eps = lp_norm(to_physical(f, g.time_points, g.grid), cfg.lp_exponent);
    if (b.g.rows() == 2 * M + 1) eps += trace_max(b.g) + trace_max(b.h);
    report.epsilon_hat = eps;
  }
  report.steady_norm = ps_norm(u_s.projected());

  auto map_N = [&](const LiftedField& up) {
    SpectralField rhs = eval_Q(up, p) + eval_cross(u_s, up, p) + d.f_p;
    return solve_linear_direct(rhs, p, d.b_p);
  };

  LiftedField up(SpectralField(basis, f.period(), M));
  LiftedField next = up;
  double prev_step = 0.0;
  int above_one = 0;
  const double theta = cfg.relaxation;
  for (int j = 0; j < cfg.max_iterations; ++j) {
    const LiftedField image = map_N(up);
    const SpectralField image_proj = image.projected();
    const double diff = ps_norm(image_proj - up.projected());
    const double image_norm = ps_norm(image_proj);
    const double res = image_norm == 0.0 ? diff : diff / image_norm;
    report.iterations = j + 1;
    report.residuals.push_back(res);

    if (!std::isfinite(res) || !std::isfinite(image_norm)) {
      report.verdict = Verdict::Diverged;
      report.reason = "non-finite iterate";
      next = image;
      break;
    }
    if (res <= cfg.tolerance || diff == 0.0) {
      report.verdict = Verdict::Converged;
      report.reason = "relative residual below tolerance";
      next = image;
      break;
    }
    next = theta == 1.0 ? image : combine(1.0 - theta, up, theta, image);
    const double step = theta * diff;
    if (j > 0 && prev_step > 0.0) {
      const double ratio = step / prev_step;
      report.ratios.push_back(ratio);
      above_one = ratio > 1.0 ? above_one + 1 : 0;
    }
    prev_step = step;
    if (ps_norm(next.projected()) > cfg.norm_ceiling) {
      report.verdict = Verdict::Diverged;
      report.reason = "iterate norm above ceiling";
      break;
    }
    if (above_one >= cfg.ratio_patience) {
      report.verdict = Verdict::Diverged;
      report.reason = "contraction ratio above 1 for " + std::to_string(above_one) +
                      " consecutive iterations";
      break;
    }
    up = next;
  }
  if (report.verdict == Verdict::MaxIterations) report.reason = "iteration budget exhausted";

  Solution out{combine(1.0, u_s, 1.0, next), u_s, next, report};
  const SpectralField proj = out.u.projected();
  out.report.ps_norm = ps_norm(proj);
  out.report.lp_norm = std::isfinite(out.report.ps_norm) ? field_lp(out.u, cfg.lp_exponent)
                                                         : out.report.ps_norm;
  return out;
}

Solution solve_bcd(const ProblemSpec& spec, const FixedPointConfig& cfg) {
  require_valid(spec);
  if (spec.domain.bc != BcKind::Dirichlet)
    throw PreconditionError("solve_bcd needs Dirichlet boundary conditions");
  return solve_periodic(spec.params, assemble_forcing(spec),
                        BoundaryData1D::from_spec(spec.boundary, spec.temporal_modes), cfg);
}

Solution solve_bcn(const ProblemSpec& spec, const FixedPointConfig& cfg) {
  require_valid(spec);
  if (spec.domain.bc != BcKind::Neumann)
    throw PreconditionError("solve_bcn needs Neumann boundary conditions");
  return solve_periodic(spec.params, assemble_forcing(spec),
                        BoundaryData1D::from_spec(spec.boundary, spec.temporal_modes), cfg);
}

Solution solve_problem(const ProblemSpec& spec, const FixedPointConfig& cfg) {
  return spec.domain.bc == BcKind::Dirichlet ? solve_bcd(spec, cfg) : solve_bcn(spec, cfg);
}

Residual residual(const LiftedField& u, const SpectralField& f, const BoundaryData1D& b,
                  const ModelParams& p) {
  Residual r{apply_linear(u, p) - eval_Q(u, p) - f, BoundaryData1D::zero(f.temporal_modes())};
  r.interior_ps_norm = ps_norm(r.interior);
  if (f.basis().dimension() == 1) {
    const BoundaryData1D tr = boundary_traces(u);
    r.boundary = {tr.g - b.g, tr.h - b.h};
    r.boundary_max = std::max(trace_max(r.boundary.g), trace_max(r.boundary.h));
  }
  return r;
}

EpsilonScanReport estimate_epsilon_threshold(const ProblemSpec& problem,
                                             const std::vector<double>& amplitudes,
                                             const FixedPointConfig& cfg, int workers,
                                             int bisection_steps) {
  EpsilonScanReport report;
  if (amplitudes.empty()) return report;
  for (std::size_t i = 0; i < amplitudes.size(); ++i) {
    if (!(amplitudes[i] > 0.0)) throw ParameterError("scan amplitudes must be positive");
    if (i > 0 && !(amplitudes[i] > amplitudes[i - 1]))
      throw ParameterError("scan amplitudes must be strictly increasing");
  }
  require_valid(problem);
  cfg.validate();
  const SpectralField f0 = assemble_forcing(problem);
  const BoundaryData1D b0 = BoundaryData1D::from_spec(problem.boundary, problem.temporal_modes);

  auto run = [&](double amplitude) {
    const Solution s = solve_periodic(problem.params, amplitude * f0, b0.scaled(amplitude), cfg);
    EpsilonScanEntry e;
    e.amplitude = amplitude;
    e.verdict = s.report.verdict;
    e.iterations = s.report.iterations;
    e.mean_ratio = s.report.mean_ratio();
    e.max_ratio = s.report.max_ratio();
    e.final_residual = s.report.residuals.empty() ? 0.0 : s.report.residuals.back();
    return e;
  };

  report.entries.resize(amplitudes.size());
  std::atomic<std::size_t> cursor{0};
  auto worker = [&] {
    for (std::size_t i = cursor++; i < amplitudes.size(); i = cursor++)
      report.entries[i] = run(amplitudes[i]);
  };
  const int n_threads = std::max(1, std::min<int>(workers, static_cast<int>(amplitudes.size())));
  std::vector<std::thread> pool;
  for (int t = 1; t < n_threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  auto update = [&](const EpsilonScanEntry& e) {
    if (e.verdict == Verdict::Converged) {
      if (!report.largest_converged || e.amplitude > *report.largest_converged)
        report.largest_converged = e.amplitude;
    } else if (!report.smallest_diverged || e.amplitude < *report.smallest_diverged) {
      report.smallest_diverged = e.amplitude;
    }
  };
  for (const auto& e : report.entries) update(e);

  for (int step = 0; step < bisection_steps; ++step) {
    if (!report.largest_converged || !report.smallest_diverged ||
        *report.largest_converged >= *report.smallest_diverged)
      break;
    const double mid = std::sqrt(*report.largest_converged * *report.smallest_diverged);
    const EpsilonScanEntry e = run(mid);
    report.entries.push_back(e);
    if (e.verdict == Verdict::Converged)
      report.largest_converged = mid;
    else
      report.smallest_diverged = mid;
  }
  return report;
}

}  // namespace bcp
