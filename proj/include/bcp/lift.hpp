#pragma once

#include <optional>

#include <Eigen/Dense>

#include "bcp/model.hpp"
#include "bcp/spectral.hpp"

namespace bcp {

/// Temporal Fourier coefficients of endpoint traces: (2M+1) x 2, row m + M,
/// column 0 = left endpoint x = 0, column 1 = right endpoint x = L.
using TraceMatrix = Eigen::MatrixXcd;

TraceMatrix zero_traces(int temporal_modes);
TraceMatrix assemble_traces(const EndpointTraces& terms, int temporal_modes);

/// (g, h) for the interval. Dirichlet: g = u, h = u''. Neumann: outward normal
/// derivatives g = du/dnu, h = d(u'')/dnu.
struct BoundaryData1D {
  TraceMatrix g;
  TraceMatrix h;

  static BoundaryData1D zero(int temporal_modes);
  static BoundaryData1D from_spec(const std::optional<BoundarySpec>& spec, int temporal_modes);

  int temporal_modes() const { return static_cast<int>(g.rows() / 2); }
  bool is_zero() const;
  BoundaryData1D steady() const;
  BoundaryData1D oscillatory() const;
  BoundaryData1D scaled(double factor) const;
};

/// Per temporal mode m a polynomial sum_p coeffs(m+M, p) x^p on [0, L].
class PolynomialLift {
 public:
  PolynomialLift(double length, double period, Eigen::MatrixXcd coeffs);
  static PolynomialLift zero(double length, double period, int temporal_modes, int degree);

  double length() const { return length_; }
  double period() const { return period_; }
  double omega() const;
  int temporal_modes() const { return static_cast<int>(coeffs_.rows() / 2); }
  int degree() const { return static_cast<int>(coeffs_.cols()) - 1; }
  const Eigen::MatrixXcd& coeffs() const { return coeffs_; }

  /// d^deriv/dx^deriv of mode m at x.
  Complex value(int m, double x, int deriv = 0) const;
  PolynomialLift derivative(int order = 1) const;
  PolynomialLift dt(int order = 1) const;
  /// Row m + M multiplied by factors(m + M).
  PolynomialLift scale_modes(const Eigen::VectorXcd& factors) const;

  bool is_zero() const { return coeffs_.isZero(0.0); }

  /// Exact L^2 projection onto the basis (1-D).
  SpectralField project(const Basis& basis) const;
  /// Real values, time_points x nodes.
  Eigen::MatrixXd sample(int time_points, const Eigen::VectorXd& nodes, int deriv = 0) const;

  PolynomialLift& operator+=(const PolynomialLift& other);
  PolynomialLift& operator-=(const PolynomialLift& other);
  friend PolynomialLift operator+(PolynomialLift l, const PolynomialLift& r) { return l += r; }
  friend PolynomialLift operator-(PolynomialLift l, const PolynomialLift& r) { return l -= r; }
  friend PolynomialLift operator*(double f, PolynomialLift l) {
    l.coeffs_ *= f;
    return l;
  }

 private:
  double length_;
  double period_;
  Eigen::MatrixXcd coeffs_;
};

/// Dirichlet: cubic per mode with l = g, l'' = h at both ends.
/// Neumann: quartic per mode with outward l' = g, l''' = h and zero mean.
PolynomialLift lift_boundary_1d(const BoundaryData1D& data, BcKind bc, double length,
                                double period);
/// Dirichlet: linear l = trace. Neumann: quadratic zero-mean with outward l' = trace.
PolynomialLift lift_first_order(const TraceMatrix& trace, BcKind bc, double length, double period);

/// interior + lift; the lift is absent for homogeneous data.
struct LiftedField {
  SpectralField interior;
  std::optional<PolynomialLift> lift;

  LiftedField(SpectralField u) : interior(std::move(u)) {}
  LiftedField(SpectralField u, std::optional<PolynomialLift> l);

  bool has_lift() const { return lift.has_value() && !lift->is_zero(); }
  /// interior + projection of the lift onto the interior basis.
  SpectralField projected() const;
  PhysicalField to_physical(int time_points, const SpatialGrid& grid) const;
  LiftedField dt(int order = 1) const;
};

/// a x + b y, lifts combined coefficient-wise.
LiftedField combine(double a, const LiftedField& x, double b, const LiftedField& y);

/// Dirichlet (u, u'') or Neumann outward (u', u''') at both endpoints, per temporal mode.
BoundaryData1D boundary_traces(const LiftedField& u);

}  // namespace bcp
