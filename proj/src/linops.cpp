#include "bcp/linops.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <numbers>
#include <ostream>

namespace bcp {

namespace {

void require_oscillatory(const SpectralField& f, const char* what) {
  if (!f.coeffs().row(f.temporal_modes()).isZero(0.0))
    throw PreconditionError(std::string(what) + ": right-hand side has a steady part");
}

void require_steady(const SpectralField& f, const char* what) {
  const int M = f.temporal_modes();
  for (int m = -M; m <= M; ++m)
    if (m != 0 && !f.coeffs().row(m + M).isZero(0.0))
      throw PreconditionError(std::string(what) + ": right-hand side has oscillatory content");
}

void require_boundary(const SpectralField& f, const BoundaryData1D& data, bool steady,
                      const char* what) {
  if (data.temporal_modes() != f.temporal_modes() || data.g.cols() != 2 || data.h.cols() != 2)
    throw ShapeError(std::string(what) + ": boundary data truncation mismatch");
  if (!data.is_zero() && f.basis().dimension() != 1)
    throw UnsupportedError(std::string(what) + ": inhomogeneous boundary data require dimension 1");
  const BoundaryData1D other = steady ? data.oscillatory() : data.steady();
  if (!other.is_zero())
    throw PreconditionError(std::string(what) + (steady ? ": boundary data are not steady"
                                                        : ": boundary data have a steady part"));
}

/// Divide oscillatory rows by a symbol; throws on vanishing entries.
template <class Symbol>
SpectralField divide_oscillatory(const SpectralField& f, Symbol&& sym) {
  SpectralField u = zeros_like(f);
  const int M = f.temporal_modes();
  const Basis& basis = f.basis();
  for (int m = -M; m <= M; ++m) {
    if (m == 0) continue;
    for (int n = 0; n < basis.size(); ++n) {
      const Complex s = sym(m, basis.eigenvalue(n));
      if (std::abs(s) < kResonanceTolerance) throw ResonanceError(m, n, std::abs(s));
      u(m, n) = f(m, n) / s;
    }
  }
  return u;
}

double lift_length(const SpectralField& f) { return f.basis().axis(0).length; }

}  // namespace

Complex heat_symbol(const ModelParams& p, double omega, int m, double lambda) {
  return heat_symbol_t(p.a(), m * omega, lambda);
}

Complex kuznetsov_symbol(const ModelParams& p, double omega, int m, double lambda) {
  return kuznetsov_symbol_t(p.b(), p.c(), m * omega, lambda);
}

Complex symbol(const ModelParams& p, double omega, int m, double lambda) {
  return symbol_t(p.a(), p.b(), p.c(), m * omega, lambda);
}

Eigen::MatrixXcd symbol_table(const ModelParams& p, const Basis& basis, double omega, int M) {
  Eigen::MatrixXcd out(2 * M + 1, basis.size());
  for (int m = -M; m <= M; ++m)
    for (int n = 0; n < basis.size(); ++n) out(m + M, n) = symbol(p, omega, m, basis.eigenvalue(n));
  return out;
}

InvertibilityReport check_invertibility(const ModelParams& p, const Basis& basis, double period,
                                        int M, double tolerance) {
  if (M < 1) throw ParameterError("invertibility scan needs at least one oscillatory mode");
  const double omega = 2.0 * std::numbers::pi / period;
  InvertibilityReport best;
  best.min_abs = std::numeric_limits<double>::infinity();
  int best_flat = 0;
  // sigma(-m, n) is the conjugate of sigma(m, n)
  for (int m = 1; m <= M; ++m)
    for (int n = 0; n < basis.size(); ++n) {
      const double v = std::abs(symbol(p, omega, m, basis.eigenvalue(n)));
      if (v < best.min_abs) {
        best.min_abs = v;
        best.m = m;
        best_flat = n;
      }
    }
  best.n = basis.multi_index(best_flat);
  if (!(best.min_abs >= tolerance)) throw ResonanceError(best.m, best_flat, best.min_abs);
  return best;
}

InvertibilityReport check_invertibility(const ProblemSpec& spec) {
  return check_invertibility(spec.params, Basis::from_problem(spec), spec.period,
                             spec.temporal_modes);
}

void write_symbol_table_csv(std::ostream& out, const ModelParams& p, const Basis& basis,
                            double period, int M) {
  const double omega = 2.0 * std::numbers::pi / period;
  out << "m";
  for (int i = 1; i <= basis.dimension(); ++i) out << ",n" << i;
  out << ",abs_symbol\n" << std::setprecision(17);
  for (int m = 1; m <= M; ++m)
    for (int n = 0; n < basis.size(); ++n) {
      out << m;
      for (int v : basis.multi_index(n)) out << ',' << v;
      out << ',' << std::abs(symbol(p, omega, m, basis.eigenvalue(n))) << '\n';
    }
}

SpectralField apply_symbol(const SpectralField& u, const ModelParams& p) {
  SpectralField out = u;
  out.coeffs() = u.coeffs().cwiseProduct(
      symbol_table(p, u.basis(), u.omega(), u.temporal_modes()));
  return out;
}

PolynomialLift heat_on_lift(const PolynomialLift& l, const ModelParams& p) {
  const int M = l.temporal_modes();
  Eigen::VectorXcd factors(2 * M + 1);
  for (int m = -M; m <= M; ++m) factors(m + M) = Complex(0.0, -m * l.omega());
  return l.scale_modes(factors) + p.a() * l.derivative(2);
}

PolynomialLift kuznetsov_on_lift(const PolynomialLift& l, const ModelParams& p) {
  const int M = l.temporal_modes();
  Eigen::VectorXcd mass(2 * M + 1), stiff(2 * M + 1);
  for (int m = -M; m <= M; ++m) {
    const double mu = m * l.omega();
    mass(m + M) = -mu * mu;
    stiff(m + M) = -Complex(p.c() * p.c(), p.b() * mu);
  }
  return l.scale_modes(mass) + l.derivative(2).scale_modes(stiff);
}

SpectralField apply_linear(const LiftedField& u, const ModelParams& p) {
  SpectralField out = apply_symbol(u.interior, p);
  if (u.lift) out += heat_on_lift(kuznetsov_on_lift(*u.lift, p), p).project(u.interior.basis());
  return out;
}

SpectralField solve_linear_direct(const SpectralField& f, const ModelParams& p) {
  require_oscillatory(f, "solve_linear_direct");
  const double w = f.omega();
  return divide_oscillatory(f, [&](int m, double lambda) { return symbol(p, w, m, lambda); });
}

LiftedField solve_linear_direct(const SpectralField& f, const ModelParams& p,
                                const BoundaryData1D& data) {
  require_oscillatory(f, "solve_linear_direct");
  require_boundary(f, data, false, "solve_linear_direct");
  if (data.is_zero()) return LiftedField(solve_linear_direct(f, p));
  const PolynomialLift l = lift_boundary_1d(data, f.basis().bc(), lift_length(f), f.period());
  SpectralField rhs = f - heat_on_lift(kuznetsov_on_lift(l, p), p).project(f.basis());
  return LiftedField(solve_linear_direct(rhs, p), l);
}

SpectralField solve_kuznetsov(const SpectralField& f, const ModelParams& p) {
  require_oscillatory(f, "solve_kuznetsov");
  const double w = f.omega();
  return divide_oscillatory(f,
                            [&](int m, double lambda) { return kuznetsov_symbol(p, w, m, lambda); });
}

LiftedField solve_kuznetsov(const SpectralField& f, const ModelParams& p,
                            const PolynomialLift& v_lift) {
  require_oscillatory(f, "solve_kuznetsov");
  if (!v_lift.coeffs().row(v_lift.temporal_modes()).isZero(0.0))
    throw PreconditionError("solve_kuznetsov: boundary values have a steady part");
  SpectralField rhs = f - kuznetsov_on_lift(v_lift, p).project(f.basis());
  return LiftedField(solve_kuznetsov(rhs, p), v_lift);
}

LiftedField solve_kuznetsov(const SpectralField& f, const ModelParams& p,
                            const TraceMatrix& v_trace) {
  if (v_trace.isZero(0.0)) return LiftedField(solve_kuznetsov(f, p));
  if (f.basis().dimension() != 1)
    throw UnsupportedError("solve_kuznetsov: inhomogeneous boundary data require dimension 1");
  return solve_kuznetsov(
      f, p, lift_first_order(v_trace, f.basis().bc(), lift_length(f), f.period()));
}

SpectralField solve_heat(const SpectralField& v, const ModelParams& p) {
  require_oscillatory(v, "solve_heat");
  const double w = v.omega();
  return divide_oscillatory(v, [&](int m, double lambda) { return heat_symbol(p, w, m, lambda); });
}

LiftedField solve_heat(const LiftedField& v, const ModelParams& p, const PolynomialLift& u_lift) {
  PolynomialLift mismatch = (-1.0) * heat_on_lift(u_lift, p);
  if (v.lift) mismatch += *v.lift;
  SpectralField rhs = v.interior + mismatch.project(v.interior.basis());
  return LiftedField(solve_heat(rhs, p), u_lift);
}

LiftedField solve_heat(const LiftedField& v, const ModelParams& p, const TraceMatrix& u_trace) {
  if (u_trace.isZero(0.0) && !v.has_lift()) return LiftedField(solve_heat(v.interior, p));
  const SpectralField& f = v.interior;
  if (f.basis().dimension() != 1)
    throw UnsupportedError("solve_heat: inhomogeneous boundary data require dimension 1");
  return solve_heat(v, p, lift_first_order(u_trace, f.basis().bc(), lift_length(f), f.period()));
}

SpectralField solve_linear_decomposed(const SpectralField& f, const ModelParams& p) {
  return solve_heat(solve_kuznetsov(f, p), p);
}

LiftedField solve_linear_decomposed(const SpectralField& f, const ModelParams& p,
                                    const BoundaryData1D& data) {
  require_oscillatory(f, "solve_linear_decomposed");
  require_boundary(f, data, false, "solve_linear_decomposed");
  if (data.is_zero()) return LiftedField(solve_linear_decomposed(f, p));
  const PolynomialLift l = lift_boundary_1d(data, f.basis().bc(), lift_length(f), f.period());
  // H l has boundary values a h - dt g
  const LiftedField v = solve_kuznetsov(f, p, heat_on_lift(l, p));
  return solve_heat(v, p, l);
}

SpectralField solve_steady_dirichlet(const SpectralField& f_s, const ModelParams& p,
                                     SteadyRoute route) {
  require_steady(f_s, "solve_steady_dirichlet");
  if (f_s.basis().bc() != BcKind::Dirichlet)
    throw PreconditionError("solve_steady_dirichlet: basis is not Dirichlet");
  SpectralField u = zeros_like(f_s);
  const double ac2 = p.a() * p.c() * p.c();
  for (int n = 0; n < f_s.basis().size(); ++n) {
    const double lambda = f_s.basis().eigenvalue(n);
    if (route == SteadyRoute::TwoStage) {
      const Complex v = -f_s(0, n) / lambda;
      u(0, n) = v / (ac2 * lambda);
    } else {
      u(0, n) = f_s(0, n) / symbol(p, 0.0, 0, lambda);
    }
  }
  return u;
}

LiftedField solve_steady_dirichlet(const SpectralField& f_s, const ModelParams& p,
                                   const BoundaryData1D& data, SteadyRoute route) {
  require_boundary(f_s, data, true, "solve_steady_dirichlet");
  if (data.is_zero()) return LiftedField(solve_steady_dirichlet(f_s, p, route));
  // the cubic lift satisfies Delta^2 l = 0, so the interior sees f unchanged
  const PolynomialLift l =
      lift_boundary_1d(data, BcKind::Dirichlet, lift_length(f_s), f_s.period());
  return LiftedField(solve_steady_dirichlet(f_s, p, route), l);
}

double neumann_compatibility_residual(const SpectralField& f_s, const ModelParams& p,
                                      const BoundaryData1D& data) {
  double measure = 1.0;
  for (double l : f_s.basis().lengths()) measure *= l;
  const int M = f_s.temporal_modes();
  double r = measure * f_s(0, 0).real();
  if (data.h.rows() == 2 * M + 1)
    r += p.a() * p.c() * p.c() * (data.h(M, 0).real() + data.h(M, 1).real());
  return r;
}

namespace {

SpectralField steady_neumann_interior(const SpectralField& f_s, const ModelParams& p,
                                      double mean_shift, SteadyRoute route) {
  SpectralField u = zeros_like(f_s);
  const double ac2 = p.a() * p.c() * p.c();
  for (int n = 0; n < f_s.basis().size(); ++n) {
    const double lambda = f_s.basis().eigenvalue(n);
    if (lambda == 0.0) continue;  // gauge: zero mean
    const Complex f = f_s(0, n) + (n == 0 ? mean_shift : 0.0);
    if (route == SteadyRoute::TwoStage) {
      const Complex v = -f / lambda;
      u(0, n) = v / (ac2 * lambda);
    } else {
      u(0, n) = f / symbol(p, 0.0, 0, lambda);
    }
  }
  return u;
}

void check_neumann(const SpectralField& f_s, const ModelParams& p, const BoundaryData1D& data) {
  double measure = 1.0;
  for (double l : f_s.basis().lengths()) measure *= l;
  const int M = f_s.temporal_modes();
  double scale = measure * f_s.coeffs().row(M).cwiseAbs().maxCoeff();
  if (data.h.rows() == 2 * M + 1)
    scale = std::max(scale, p.a() * p.c() * p.c() *
                                (std::abs(data.h(M, 0)) + std::abs(data.h(M, 1))));
  const double r = neumann_compatibility_residual(f_s, p, data);
  if (std::abs(r) > 1e-10 * scale) throw IncompatibleDataError(r);
}

}  // namespace

SpectralField solve_steady_neumann(const SpectralField& f_s, const ModelParams& p,
                                   SteadyRoute route) {
  require_steady(f_s, "solve_steady_neumann");
  if (f_s.basis().bc() != BcKind::Neumann)
    throw PreconditionError("solve_steady_neumann: basis is not Neumann");
  check_neumann(f_s, p, BoundaryData1D{});
  return steady_neumann_interior(f_s, p, 0.0, route);
}

LiftedField solve_steady_neumann(const SpectralField& f_s, const ModelParams& p,
                                 const BoundaryData1D& data, SteadyRoute route) {
  require_boundary(f_s, data, true, "solve_steady_neumann");
  if (data.is_zero()) return LiftedField(solve_steady_neumann(f_s, p, route));
  require_steady(f_s, "solve_steady_neumann");
  if (f_s.basis().bc() != BcKind::Neumann)
    throw PreconditionError("solve_steady_neumann: basis is not Neumann");
  check_neumann(f_s, p, data);
  const double L = lift_length(f_s);
  const PolynomialLift l = lift_boundary_1d(data, BcKind::Neumann, L, f_s.period());
  // -a c^2 l'''' is the constant -a c^2 (h_left + h_right) / L
  const int M = f_s.temporal_modes();
  const double shift =
      p.a() * p.c() * p.c() * (data.h(M, 0).real() + data.h(M, 1).real()) / L;
  return LiftedField(steady_neumann_interior(f_s, p, shift, route), l);
}

}  // namespace bcp
