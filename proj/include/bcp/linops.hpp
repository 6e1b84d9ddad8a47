#pragma once

#include <complex>
#include <iosfwd>
#include <vector>

#include "bcp/lift.hpp"
#include "bcp/model.hpp"
#include "bcp/spectral.hpp"

namespace bcp {

/// Symbols with mu = m*omega. The full symbol is written out as a polynomial,
/// not as the product of the two factors.
template <class Real>
std::complex<Real> heat_symbol_t(Real a, Real mu, Real lambda) {
  return {-a * lambda, -mu};
}

template <class Real>
std::complex<Real> kuznetsov_symbol_t(Real b, Real c, Real mu, Real lambda) {
  return {-mu * mu + c * c * lambda, b * mu * lambda};
}

template <class Real>
std::complex<Real> symbol_t(Real a, Real b, Real c, Real mu, Real lambda) {
  const Real re = a * lambda * mu * mu + b * lambda * mu * mu - a * c * c * lambda * lambda;
  const Real im = mu * mu * mu - a * b * mu * lambda * lambda - c * c * lambda * mu;
  return {re, im};
}

Complex heat_symbol(const ModelParams& p, double omega, int m, double lambda);
Complex kuznetsov_symbol(const ModelParams& p, double omega, int m, double lambda);
Complex symbol(const ModelParams& p, double omega, int m, double lambda);

/// (2M+1) x S table of symbol values.
Eigen::MatrixXcd symbol_table(const ModelParams& p, const Basis& basis, double omega, int M);

inline constexpr double kResonanceTolerance = 1e-14;

struct InvertibilityReport {
  double min_abs = 0.0;
  int m = 0;
  std::vector<int> n;
};

/// Minimum |sigma| over the oscillatory modes; throws ResonanceError below tolerance.
InvertibilityReport check_invertibility(const ModelParams& p, const Basis& basis, double period,
                                        int M, double tolerance = kResonanceTolerance);
InvertibilityReport check_invertibility(const ProblemSpec& spec);
/// Columns m, n1..nd, abs_symbol over the oscillatory modes m = 1..M.
void write_symbol_table_csv(std::ostream& out, const ModelParams& p, const Basis& basis,
                            double period, int M);

/// Symbol action on the interior expansion.
SpectralField apply_symbol(const SpectralField& u, const ModelParams& p);
/// Full linear operator applied to a lifted field, projected onto the interior basis.
SpectralField apply_linear(const LiftedField& u, const ModelParams& p);

/// Pointwise per-mode actions on a lift.
PolynomialLift heat_on_lift(const PolynomialLift& l, const ModelParams& p);
PolynomialLift kuznetsov_on_lift(const PolynomialLift& l, const ModelParams& p);

SpectralField solve_linear_direct(const SpectralField& f, const ModelParams& p);
/// A^{-1}(f, g, h): cubic (Dirichlet) or quartic (Neumann) lift plus interior division.
LiftedField solve_linear_direct(const SpectralField& f, const ModelParams& p,
                                const BoundaryData1D& data);

SpectralField solve_kuznetsov(const SpectralField& f, const ModelParams& p);
/// v = v_lift + (f - K v_lift) / kappa; v_lift carries the boundary values.
LiftedField solve_kuznetsov(const SpectralField& f, const ModelParams& p,
                            const PolynomialLift& v_lift);
/// Boundary values (Dirichlet) or outward normal derivatives (Neumann) of v.
LiftedField solve_kuznetsov(const SpectralField& f, const ModelParams& p,
                            const TraceMatrix& v_trace);

SpectralField solve_heat(const SpectralField& v, const ModelParams& p);
LiftedField solve_heat(const LiftedField& v, const ModelParams& p, const PolynomialLift& u_lift);
LiftedField solve_heat(const LiftedField& v, const ModelParams& p, const TraceMatrix& u_trace);

SpectralField solve_linear_decomposed(const SpectralField& f, const ModelParams& p);
/// Kuznetsov stage with boundary values a*h - dt g, then heat stage with g.
LiftedField solve_linear_decomposed(const SpectralField& f, const ModelParams& p,
                                    const BoundaryData1D& data);

enum class SteadyRoute { TwoStage, DirectDivision };

/// -a c^2 Delta^2 u = f with (u, Delta u) = (g, h); steady inputs only.
LiftedField solve_steady_dirichlet(const SpectralField& f_s, const ModelParams& p,
                                   const BoundaryData1D& data,
                                   SteadyRoute route = SteadyRoute::TwoStage);
SpectralField solve_steady_dirichlet(const SpectralField& f_s, const ModelParams& p,
                                     SteadyRoute route = SteadyRoute::TwoStage);

/// Solvability integral of the steady Neumann problem,
/// |Omega| * mean(f) + a c^2 * (h_left + h_right).
double neumann_compatibility_residual(const SpectralField& f_s, const ModelParams& p,
                                      const BoundaryData1D& data);
/// Zero-mean solution; throws IncompatibleDataError when the integral fails.
LiftedField solve_steady_neumann(const SpectralField& f_s, const ModelParams& p,
                                 const BoundaryData1D& data,
                                 SteadyRoute route = SteadyRoute::TwoStage);
SpectralField solve_steady_neumann(const SpectralField& f_s, const ModelParams& p,
                                   SteadyRoute route = SteadyRoute::TwoStage);

}  // namespace bcp
