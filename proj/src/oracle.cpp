#include "bcp/oracle.hpp"

#include <cmath>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <random>

#include <unsupported/Eigen/MatrixFunctions>

#include "bcp/fixedpoint.hpp"

namespace bcp {

OracleState OracleState::zero(int size) {
  return {Eigen::VectorXd::Zero(size), Eigen::VectorXd::Zero(size), Eigen::VectorXd::Zero(size),
          0.0};
}

double OracleState::norm() const {
  return std::sqrt(u.squaredNorm() + w.squaredNorm() + zeta.squaredNorm());
}

void OracleConfig::validate() const {
  if (steps_per_period < 8) throw ParameterError("oracle needs at least 8 steps per period");
  if (max_periods < 1) throw ParameterError("oracle needs at least one period");
  if (!(tolerance > 0.0)) throw ParameterError("oracle tolerance must be positive");
  if (initial_amplitude && !(*initial_amplitude >= 0.0))
    throw ParameterError("initial amplitude must be non-negative");
}

OracleStepper::OracleStepper(const ModelParams& p, const SpectralField& forcing, double dt,
                             bool linear)
    : params_(p),
      basis_(forcing.basis()),
      forcing_(forcing),
      dt_(dt),
      linear_(linear),
      grid_(product_grid(forcing.basis())) {
  if (!(dt > 0.0)) throw ParameterError("time step must be positive");
  X_ = evaluation_matrix(basis_, grid_);
  P_ = analysis_matrix(grid_, std::vector<Parity>(basis_.dimension(), Parity::Cosine), basis_);
  for (int i = 0; i < basis_.dimension(); ++i)
    Xgrad_.push_back(evaluation_matrix(basis_.derivative_basis(i), grid_) *
                     basis_.derivative_factors(i).asDiagonal());

  const double a = p.a(), b = p.b(), c2 = p.c() * p.c();
  for (int n = 0; n < basis_.size(); ++n) {
    const double lambda = basis_.eigenvalue(n);
    Eigen::Matrix3d A;
    A << 0.0, 1.0, 0.0, -c2 * lambda, -b * lambda, 1.0, 0.0, 0.0, -a * lambda;
    Eigen::Matrix<double, 9, 9> aug = Eigen::Matrix<double, 9, 9>::Zero();
    aug.block<3, 3>(0, 0) = dt * A;
    aug.block<3, 3>(0, 3).setIdentity();
    aug.block<3, 3>(3, 6).setIdentity();
    const Eigen::Matrix<double, 9, 9> e = aug.exp();
    phi0_.push_back(e.block<3, 3>(0, 0));
    phi1_.push_back(e.block<3, 3>(0, 3));
    phi2_.push_back(e.block<3, 3>(0, 6));
  }
}

Eigen::VectorXd OracleStepper::forcing_at(double t) const {
  const int M = forcing_.temporal_modes();
  Eigen::VectorXcd phase(2 * M + 1);
  for (int m = -M; m <= M; ++m) phase(m + M) = std::polar(1.0, m * forcing_.omega() * t);
  return (forcing_.coeffs().transpose() * phase).real();
}

Eigen::VectorXd OracleStepper::recover_dtN(const Eigen::VectorXd& u, const Eigen::VectorXd& w,
                                           const Eigen::VectorXd& zeta) const {
  const double k = params_.k();
  const int s = params_.s();
  const Eigen::ArrayXd lambda = basis_.eigenvalues().array();
  const double c2 = params_.c() * params_.c();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(X_.rows());
  const Eigen::VectorXd wv = X_ * w;
  if (k != 0.0) {
    const Eigen::VectorXd bracket =
        zeta.array() - c2 * lambda * u.array() - params_.b() * lambda * w.array();
    rhs += (2.0 * k * wv.array() * (X_ * bracket).array()).matrix();
  }
  if (s != 0)
    for (std::size_t i = 0; i < Xgrad_.size(); ++i)
      rhs += (2.0 * s * (Xgrad_[i] * u).array() * (Xgrad_[i] * w).array()).matrix();
  const Eigen::VectorXd projected = P_ * rhs;
  if (k == 0.0) return projected;
  const Eigen::ArrayXd factor = 1.0 + 2.0 * k * wv.array();
  if (factor.abs().minCoeff() < 1e-6)
    throw OutOfRegimeError("1 + 2 k w vanishes on the grid; solution outside the small regime");
  const Eigen::MatrixXd system =
      Eigen::MatrixXd::Identity(basis_.size(), basis_.size()) +
      P_ * (2.0 * k * wv).asDiagonal() * X_;
  return system.partialPivLu().solve(projected);
}

OracleStepper::Rhs OracleStepper::nonlinear_rhs(const OracleState& st, double t) const {
  const Eigen::VectorXd f = forcing_at(t);
  if (linear_) return {Eigen::VectorXd::Zero(f.size()), -f};
  const Eigen::VectorXd E = recover_dtN(st.u, st.w, st.zeta);
  const Eigen::VectorXd aLE = params_.a() * basis_.eigenvalues().cwiseProduct(E);
  return {-E, aLE - f};
}

OracleState OracleStepper::step(const OracleState& s) const {
  const int S = basis_.size();
  const Rhs g0 = nonlinear_rhs(s, s.t);
  OracleState a = OracleState::zero(S);
  a.t = s.t + dt_;
  for (int n = 0; n < S; ++n) {
    const Eigen::Vector3d y(s.u(n), s.w(n), s.zeta(n));
    const Eigen::Vector3d G(0.0, g0.gw(n), g0.gz(n));
    const Eigen::Vector3d r = phi0_[n] * y + dt_ * phi1_[n] * G;
    a.u(n) = r(0);
    a.w(n) = r(1);
    a.zeta(n) = r(2);
  }
  const Rhs g1 = nonlinear_rhs(a, a.t);
  OracleState out = a;
  for (int n = 0; n < S; ++n) {
    const Eigen::Vector3d dG(0.0, g1.gw(n) - g0.gw(n), g1.gz(n) - g0.gz(n));
    const Eigen::Vector3d r = dt_ * phi2_[n] * dG;
    out.u(n) += r(0);
    out.w(n) += r(1);
    out.zeta(n) += r(2);
  }
  return out;
}

SpectralField Trajectory::to_spectral(int temporal_modes) const {
  Eigen::MatrixXcd c = temporal_analysis(temporal_modes, samples()) * u.cast<Complex>();
  return SpectralField(basis, period, std::move(c));
}

Attractor find_attractor(const ModelParams& p, const SpectralField& forcing,
                         const OracleConfig& cfg) {
  cfg.validate();
  const Basis& basis = forcing.basis();
  const int S = basis.size();
  const int steps = cfg.steps_per_period;
  const double T = forcing.period();
  const double h = T / steps;
  const OracleStepper stepper(p, forcing, h, cfg.linear);

  OracleState state = OracleState::zero(S);
  if (cfg.initial_amplitude) {
    std::mt19937_64 rng(cfg.seed);
    std::normal_distribution<double> g(0.0, *cfg.initial_amplitude);
    for (int n = 0; n < S; ++n) {
      state.u(n) = g(rng);
      state.w(n) = g(rng);
      state.zeta(n) = g(rng);
    }
  }

  // neutral mean mode of the Neumann basis
  int mean_mode = -1;
  for (int n = 0; n < S; ++n)
    if (basis.eigenvalue(n) == 0.0) mean_mode = n;

  Attractor out{false, 0, 0.0, {}, Trajectory{basis, T, Eigen::MatrixXd(steps, S)}};
  for (int period = 1; period <= cfg.max_periods; ++period) {
    const OracleState start = state;
    double Z = 0.0, W = 0.0, U = 0.0;
    auto accumulate = [&](const OracleState& s, double weight) {
      if (mean_mode < 0) return;
      const double E0 =
          cfg.linear ? 0.0 : stepper.recover_dtN(s.u, s.w, s.zeta)(mean_mode);
      Z += weight * (s.zeta(mean_mode) - E0);
      W += weight * s.w(mean_mode);
      U += weight * s.u(mean_mode);
    };
    for (int j = 0; j < steps; ++j) {
      out.trajectory.u.row(j) = state.u.transpose();
      accumulate(state, j == 0 ? 0.5 * h : h);
      state = stepper.step(state);
    }
    // keep the time origin an exact multiple of the period
    state.t = period * T;
    accumulate(state, 0.5 * h);

    if (mean_mode >= 0) {
      const double dz = -Z / T;
      const double dw = -W / T - dz * T / 2.0;
      const double du = -U / T - dw * T / 2.0 - dz * T * T / 6.0;
      state.u(mean_mode) += du + dw * T + dz * T * T / 2.0;
      state.w(mean_mode) += dw + dz * T;
      state.zeta(mean_mode) += dz;
    }

    const double diff = OracleState{state.u - start.u, state.w - start.w,
                                    state.zeta - start.zeta, 0.0}.norm();
    const double scale = state.norm();
    const double res = scale == 0.0 ? diff : diff / scale;
    out.periods = period;
    out.period_residual = res;
    out.period_residuals.push_back(res);
    if (!std::isfinite(res)) break;
    if (res < cfg.tolerance) {
      out.found = true;
      break;
    }
  }
  return out;
}

Attractor find_attractor(const ProblemSpec& spec, const OracleConfig& cfg) {
  require_valid(spec);
  if (!spec.homogeneous_boundary())
    throw UnsupportedError("the time-stepping oracle supports homogeneous boundary data only");
  const SpectralField f = assemble_forcing(spec);
  return find_attractor(spec.params, f, cfg);
}

Comparison compare(const SpectralField& u, const Trajectory& trajectory) {
  if (!(u.basis() == trajectory.basis) || u.period() != trajectory.period)
    throw ShapeError("compare: spectral field and trajectory use different grids");
  const int steps = trajectory.samples();
  const Eigen::MatrixXd ref =
      (temporal_synthesis(u.temporal_modes(), steps) * u.coeffs()).real();
  const SpatialGrid grid = product_grid(u.basis());
  const Eigen::MatrixXd X = evaluation_matrix(u.basis(), grid);
  const Eigen::VectorXd w = grid.flat_weights();
  const Eigen::MatrixXd ref_phys = ref * X.transpose();
  const Eigen::MatrixXd diff_phys = (ref - trajectory.u) * X.transpose();
  double measure = 1.0;
  for (double l : grid.lengths) measure *= l;
  const double norm = steps * measure;
  Comparison c;
  const double ref_l2 = std::sqrt((ref_phys.array().square().matrix() * w).sum() / norm);
  c.absolute_l2 = std::sqrt((diff_phys.array().square().matrix() * w).sum() / norm);
  c.absolute_max = diff_phys.size() ? diff_phys.cwiseAbs().maxCoeff() : 0.0;
  const double ref_max = ref_phys.size() ? ref_phys.cwiseAbs().maxCoeff() : 0.0;
  c.relative_l2 = ref_l2 > 0.0 ? c.absolute_l2 / ref_l2 : c.absolute_l2;
  c.relative_max = ref_max > 0.0 ? c.absolute_max / ref_max : c.absolute_max;
  return c;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory) {
  out << "step,t";
  for (int i = 1; i <= trajectory.basis.dimension(); ++i) out << ",n" << i;
  out << ",value\n" << std::setprecision(17);
  const int steps = trajectory.samples();
  for (int j = 0; j < steps; ++j)
    for (int n = 0; n < trajectory.basis.size(); ++n) {
      out << j << ',' << trajectory.period * j / steps;
      for (int v : trajectory.basis.multi_index(n)) out << ',' << v;
      out << ',' << trajectory.u(j, n) << '\n';
    }
}

}  // namespace bcp
