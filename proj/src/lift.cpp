#include "bcp/lift.hpp"

#include <cmath>
#include <numbers>

namespace bcp {

namespace {

constexpr double kPi = std::numbers::pi;

void add_term(TraceMatrix& t, int column, const TraceTerm& term) {
  const int M = static_cast<int>(t.rows() / 2);
  if (term.m == 0) {
    t(M, column) += term.amplitude * std::cos(term.phase);
    return;
  }
  const Complex half = 0.5 * term.amplitude * std::polar(1.0, term.phase);
  t(M + term.m, column) += half;
  t(M - term.m, column) += std::conj(half);
}

/// integral_0^L x^p phi(x) dx for phi = sin(kappa x) or cos(kappa x), kappa = n pi / L.
Eigen::VectorXd moments(Parity parity, int n, double L, int max_power) {
  Eigen::VectorXd sine(max_power + 1), cosine(max_power + 1);
  if (n == 0) {
    for (int p = 0; p <= max_power; ++p) {
      sine(p) = 0.0;
      cosine(p) = std::pow(L, p + 1) / (p + 1);
    }
    return parity == Parity::Sine ? sine : cosine;
  }
  const double kappa = n * kPi / L;
  const double sign = n % 2 ? -1.0 : 1.0;
  for (int p = 0; p <= max_power; ++p) {
    const double boundary = -(std::pow(L, p) * sign - (p == 0 ? 1.0 : 0.0)) / kappa;
    sine(p) = boundary + (p > 0 ? p / kappa * cosine(p - 1) : 0.0);
    cosine(p) = p > 0 ? -p / kappa * sine(p - 1) : 0.0;
  }
  return parity == Parity::Sine ? sine : cosine;
}

}  // namespace

TraceMatrix zero_traces(int temporal_modes) {
  return TraceMatrix::Zero(2 * temporal_modes + 1, 2);
}

TraceMatrix assemble_traces(const EndpointTraces& terms, int temporal_modes) {
  TraceMatrix t = zero_traces(temporal_modes);
  for (const auto& term : terms.left) add_term(t, 0, term);
  for (const auto& term : terms.right) add_term(t, 1, term);
  return t;
}

BoundaryData1D BoundaryData1D::zero(int temporal_modes) {
  return {zero_traces(temporal_modes), zero_traces(temporal_modes)};
}

BoundaryData1D BoundaryData1D::from_spec(const std::optional<BoundarySpec>& spec,
                                         int temporal_modes) {
  if (!spec) return zero(temporal_modes);
  return {assemble_traces(spec->g, temporal_modes), assemble_traces(spec->h, temporal_modes)};
}

bool BoundaryData1D::is_zero() const { return g.isZero(0.0) && h.isZero(0.0); }

BoundaryData1D BoundaryData1D::steady() const {
  const int M = temporal_modes();
  BoundaryData1D out = zero(M);
  out.g.row(M) = g.row(M);
  out.h.row(M) = h.row(M);
  return out;
}

BoundaryData1D BoundaryData1D::oscillatory() const {
  BoundaryData1D out = *this;
  out.g.row(temporal_modes()).setZero();
  out.h.row(temporal_modes()).setZero();
  return out;
}

BoundaryData1D BoundaryData1D::scaled(double factor) const { return {factor * g, factor * h}; }

PolynomialLift::PolynomialLift(double length, double period, Eigen::MatrixXcd coeffs)
    : length_(length), period_(period), coeffs_(std::move(coeffs)) {
  if (coeffs_.rows() % 2 != 1 || coeffs_.cols() < 1)
    throw ShapeError("lift coefficients must be (2M+1) x (degree+1)");
}

PolynomialLift PolynomialLift::zero(double length, double period, int temporal_modes, int degree) {
  return PolynomialLift(length, period,
                        Eigen::MatrixXcd::Zero(2 * temporal_modes + 1, degree + 1));
}

double PolynomialLift::omega() const { return 2.0 * kPi / period_; }

Complex PolynomialLift::value(int m, double x, int deriv) const {
  const int row = m + temporal_modes();
  Complex acc = 0.0;
  for (int p = degree(); p >= deriv; --p) {
    double falling = 1.0;
    for (int q = 0; q < deriv; ++q) falling *= p - q;
    acc = acc * x + falling * coeffs_(row, p);
  }
  return acc;
}

PolynomialLift PolynomialLift::derivative(int order) const {
  Eigen::MatrixXcd d = coeffs_;
  for (int r = 0; r < order; ++r) {
    Eigen::MatrixXcd next = Eigen::MatrixXcd::Zero(d.rows(), d.cols());
    for (int p = 1; p < d.cols(); ++p) next.col(p - 1) = double(p) * d.col(p);
    d = std::move(next);
  }
  return PolynomialLift(length_, period_, std::move(d));
}

PolynomialLift PolynomialLift::dt(int order) const {
  const int M = temporal_modes();
  Eigen::VectorXcd factors(2 * M + 1);
  for (int m = -M; m <= M; ++m) factors(m + M) = std::pow(Complex(0.0, m * omega()), order);
  return scale_modes(factors);
}

PolynomialLift PolynomialLift::scale_modes(const Eigen::VectorXcd& factors) const {
  return PolynomialLift(length_, period_, factors.asDiagonal() * coeffs_);
}

SpectralField PolynomialLift::project(const Basis& basis) const {
  if (basis.dimension() != 1) throw UnsupportedError("polynomial lifts are one-dimensional");
  const AxisModes& ax = basis.axis(0);
  Eigen::MatrixXd gram(degree() + 1, basis.size());
  for (int i = 0; i < ax.count; ++i) {
    const double nrm = ax.norm_squared(i);
    gram.col(i) = nrm == 0.0 ? Eigen::VectorXd::Zero(degree() + 1)
                             : Eigen::VectorXd(moments(ax.parity, ax.first + i, length_, degree()) / nrm);
  }
  return SpectralField(basis, period_, coeffs_ * gram);
}

Eigen::MatrixXd PolynomialLift::sample(int time_points, const Eigen::VectorXd& nodes,
                                       int deriv) const {
  const int M = temporal_modes();
  Eigen::MatrixXcd in_space(2 * M + 1, nodes.size());
  for (int m = -M; m <= M; ++m)
    for (Eigen::Index j = 0; j < nodes.size(); ++j) in_space(m + M, j) = value(m, nodes(j), deriv);
  return (temporal_synthesis(M, time_points) * in_space).real();
}

PolynomialLift& PolynomialLift::operator+=(const PolynomialLift& other) {
  if (other.coeffs_.rows() != coeffs_.rows() || other.length_ != length_)
    throw ShapeError("lifts live on different truncations");
  const Eigen::Index old = coeffs_.cols();
  if (other.coeffs_.cols() > old) {
    coeffs_.conservativeResize(Eigen::NoChange, other.coeffs_.cols());
    coeffs_.rightCols(other.coeffs_.cols() - old).setZero();
  }
  coeffs_.leftCols(other.coeffs_.cols()) += other.coeffs_;
  return *this;
}

PolynomialLift& PolynomialLift::operator-=(const PolynomialLift& other) {
  return *this += (-1.0) * other;
}

PolynomialLift lift_boundary_1d(const BoundaryData1D& data, BcKind bc, double L, double period) {
  const int M = data.temporal_modes();
  if (data.h.rows() != data.g.rows() || data.g.cols() != 2)
    throw ShapeError("boundary traces must be (2M+1) x 2");
  if (bc == BcKind::Dirichlet) {
    Eigen::MatrixXcd c(2 * M + 1, 4);
    for (int r = 0; r < 2 * M + 1; ++r) {
      const Complex gL = data.g(r, 0), gR = data.g(r, 1);
      const Complex hL = data.h(r, 0), hR = data.h(r, 1);
      const Complex c2 = hL / 2.0;
      const Complex c3 = (hR - hL) / (6.0 * L);
      c(r, 0) = gL;
      c(r, 2) = c2;
      c(r, 3) = c3;
      c(r, 1) = (gR - gL - c2 * L * L - c3 * L * L * L) / L;
    }
    return PolynomialLift(L, period, std::move(c));
  }
  Eigen::MatrixXcd c(2 * M + 1, 5);
  for (int r = 0; r < 2 * M + 1; ++r) {
    const Complex gL = data.g(r, 0), gR = data.g(r, 1);
    const Complex hL = data.h(r, 0), hR = data.h(r, 1);
    const Complex c1 = -gL;
    const Complex c3 = -hL / 6.0;
    const Complex c4 = (hR + hL) / (24.0 * L);
    const Complex c2 = (gR - c1 - 3.0 * c3 * L * L - 4.0 * c4 * L * L * L) / (2.0 * L);
    c(r, 1) = c1;
    c(r, 2) = c2;
    c(r, 3) = c3;
    c(r, 4) = c4;
    // zero mean over [0, L]
    c(r, 0) = -(c1 * L / 2.0 + c2 * L * L / 3.0 + c3 * std::pow(L, 3) / 4.0 +
                c4 * std::pow(L, 4) / 5.0);
  }
  return PolynomialLift(L, period, std::move(c));
}

PolynomialLift lift_first_order(const TraceMatrix& trace, BcKind bc, double L, double period) {
  const int rows = static_cast<int>(trace.rows());
  if (bc == BcKind::Dirichlet) {
    Eigen::MatrixXcd c(rows, 2);
    c.col(0) = trace.col(0);
    c.col(1) = (trace.col(1) - trace.col(0)) / L;
    return PolynomialLift(L, period, std::move(c));
  }
  Eigen::MatrixXcd c(rows, 3);
  c.col(1) = -trace.col(0);
  c.col(2) = (trace.col(1) + trace.col(0)) / (2.0 * L);
  c.col(0) = -(c.col(1) * L / 2.0 + c.col(2) * L * L / 3.0);
  return PolynomialLift(L, period, std::move(c));
}

LiftedField::LiftedField(SpectralField u, std::optional<PolynomialLift> l)
    : interior(std::move(u)), lift(std::move(l)) {
  if (lift) {
    if (interior.basis().dimension() != 1) throw UnsupportedError("lifts require dimension 1");
    if (lift->temporal_modes() != interior.temporal_modes())
      throw ShapeError("lift and interior temporal truncations differ");
  }
}

SpectralField LiftedField::projected() const {
  if (!lift) return interior;
  return interior + lift->project(interior.basis());
}

PhysicalField LiftedField::to_physical(int time_points, const SpatialGrid& grid) const {
  PhysicalField p = bcp::to_physical(interior, time_points, grid);
  if (has_lift()) {
    p.values += lift->sample(time_points, grid.nodes.at(0));
    p.parity = {Parity::Mixed};
  }
  return p;
}

LiftedField LiftedField::dt(int order) const {
  std::optional<PolynomialLift> l;
  if (lift) l = lift->dt(order);
  return LiftedField(bcp::dt(interior, order), std::move(l));
}

LiftedField combine(double a, const LiftedField& x, double b, const LiftedField& y) {
  SpectralField interior = a * x.interior + b * y.interior;
  std::optional<PolynomialLift> lift;
  if (x.lift) lift = a * *x.lift;
  if (y.lift) {
    if (lift)
      *lift += b * *y.lift;
    else
      lift = b * *y.lift;
  }
  return LiftedField(std::move(interior), std::move(lift));
}

BoundaryData1D boundary_traces(const LiftedField& u) {
  const Basis& basis = u.interior.basis();
  if (basis.dimension() != 1) throw UnsupportedError("boundary traces are one-dimensional");
  const int M = u.interior.temporal_modes();
  const AxisModes& ax = basis.axis(0);
  const double L = ax.length;
  BoundaryData1D out = BoundaryData1D::zero(M);
  for (int m = -M; m <= M; ++m) {
    for (int side = 0; side < 2; ++side) {
      const double x = side == 0 ? 0.0 : L;
      const double normal = side == 0 ? -1.0 : 1.0;
      Complex first = 0.0, second = 0.0;
      for (int i = 0; i < ax.count; ++i) {
        const double k = ax.wavenumber(i);
        const Complex c = u.interior(m, i);
        if (basis.bc() == BcKind::Dirichlet) {
          first += c * std::sin(k * x);
          second += -k * k * c * std::sin(k * x);
        } else {
          first += normal * (-k) * c * std::sin(k * x);
          second += normal * (k * k * k) * c * std::sin(k * x);
        }
      }
      if (u.lift) {
        if (basis.bc() == BcKind::Dirichlet) {
          first += u.lift->value(m, x, 0);
          second += u.lift->value(m, x, 2);
        } else {
          first += normal * u.lift->value(m, x, 1);
          second += normal * u.lift->value(m, x, 3);
        }
      }
      out.g(m + M, side) = first;
      out.h(m + M, side) = second;
    }
  }
  return out;
}

}  // namespace bcp
