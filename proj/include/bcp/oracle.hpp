#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "bcp/model.hpp"
#include "bcp/spectral.hpp"

namespace bcp {

/// Spatial coefficients of u, w = dt u and zeta = z + dt N, with
/// z = dt^2 u - c^2 Lap u - b dt Lap u and N = k w^2 + s |grad u|^2.
struct OracleState {
  Eigen::VectorXd u;
  Eigen::VectorXd w;
  Eigen::VectorXd zeta;
  double t = 0.0;

  static OracleState zero(int size);
  double norm() const;
};

struct OracleConfig {
  int steps_per_period = 512;
  int max_periods = 200;
  double tolerance = 1e-8;
  /// Drop the quadratic terms (k = s = 0 behaviour).
  bool linear = false;
  /// Random initial state of this coefficient amplitude when set.
  std::optional<double> initial_amplitude;
  std::uint64_t seed = 0;

  void validate() const;
};

/// ETD2RK stepper for the first-order system. Stiff linear parts are handled
/// by per-mode 3x3 exponentials, the recovered dt N explicitly.
class OracleStepper {
 public:
  OracleStepper(const ModelParams& p, const SpectralField& forcing, double dt, bool linear = false);

  const Basis& basis() const { return basis_; }
  double dt() const { return dt_; }

  OracleState step(const OracleState& s) const;
  /// Galerkin coefficients of dt N for the given state.
  Eigen::VectorXd recover_dtN(const Eigen::VectorXd& u, const Eigen::VectorXd& w,
                              const Eigen::VectorXd& zeta) const;
  Eigen::VectorXd forcing_at(double t) const;

 private:
  struct Rhs {
    Eigen::VectorXd gw;
    Eigen::VectorXd gz;
  };
  Rhs nonlinear_rhs(const OracleState& s, double t) const;

  ModelParams params_;
  Basis basis_;
  SpectralField forcing_;
  double dt_;
  bool linear_;
  SpatialGrid grid_;
  Eigen::MatrixXd X_;
  Eigen::MatrixXd P_;
  std::vector<Eigen::MatrixXd> Xgrad_;
  std::vector<Eigen::Matrix3d> phi0_, phi1_, phi2_;
};

struct Trajectory {
  Basis basis;
  double period;
  /// steps x S coefficients of u at t_j = j T / steps, j = 0 .. steps-1.
  Eigen::MatrixXd u;

  int samples() const { return static_cast<int>(u.rows()); }
  /// Temporal Fourier coefficients of the samples, truncated to M modes.
  SpectralField to_spectral(int temporal_modes) const;
};

struct Attractor {
  bool found = false;
  int periods = 0;
  double period_residual = 0.0;
  std::vector<double> period_residuals;
  Trajectory trajectory;
};

/// Integrates period by period until the period map is stationary within tolerance.
/// Homogeneous boundary data only.
Attractor find_attractor(const ModelParams& p, const SpectralField& forcing,
                         const OracleConfig& cfg = {});
Attractor find_attractor(const ProblemSpec& spec, const OracleConfig& cfg = {});

struct Comparison {
  double relative_l2 = 0.0;
  double relative_max = 0.0;
  double absolute_l2 = 0.0;
  double absolute_max = 0.0;
};

/// Time-space differences over one period at the trajectory's sample times.
Comparison compare(const SpectralField& u, const Trajectory& trajectory);

/// Columns step, t, n1..nd, value.
void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory);

}  // namespace bcp
