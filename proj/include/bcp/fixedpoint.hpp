#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bcp/lift.hpp"
#include "bcp/linops.hpp"
#include "bcp/model.hpp"
#include "bcp/spectral.hpp"

namespace bcp {

struct FixedPointConfig {
  int max_iterations = 100;
  double tolerance = 1e-10;
  double relaxation = 1.0;
  double norm_ceiling = 1e6;
  int ratio_patience = 5;
  double lp_exponent = 3.0;

  void validate() const;
};

enum class Verdict { Converged, Diverged, MaxIterations };
std::string to_string(Verdict v);

struct SolveReport {
  Verdict verdict = Verdict::MaxIterations;
  std::string reason;
  int iterations = 0;
  std::vector<double> residuals;
  /// step_j / step_{j-1}, step_j = ||u^{j+1} - u^j||.
  std::vector<double> ratios;
  double ps_norm = 0.0;
  double lp_norm = 0.0;
  double lp_exponent = 3.0;
  double epsilon_hat = 0.0;
  double steady_norm = 0.0;
  double min_abs_symbol = 0.0;

  bool converged() const { return verdict == Verdict::Converged; }
  double mean_ratio() const;
  double max_ratio() const;
};

struct Solution {
  LiftedField u;
  LiftedField steady;
  LiftedField oscillatory;
  SolveReport report;
};

/// Real field sum of amplitude cos(m omega t + phase) phi_n.
SpectralField assemble_forcing(const ForcingSpec& forcing, const Basis& basis, double period,
                               int temporal_modes);
SpectralField assemble_forcing(const ProblemSpec& spec);

struct SplitData {
  SpectralField f_s;
  SpectralField f_p;
  BoundaryData1D b_s;
  BoundaryData1D b_p;
};

SplitData split_data(const SpectralField& f, const BoundaryData1D& b);

/// Steady solve, then Picard iteration on the oscillatory part from zero.
Solution solve_periodic(const ModelParams& p, const SpectralField& f, const BoundaryData1D& b,
                        const FixedPointConfig& cfg = {});
Solution solve_bcd(const ProblemSpec& spec, const FixedPointConfig& cfg = {});
Solution solve_bcn(const ProblemSpec& spec, const FixedPointConfig& cfg = {});
/// Dispatch on the boundary-condition kind.
Solution solve_problem(const ProblemSpec& spec, const FixedPointConfig& cfg = {});

struct Residual {
  SpectralField interior;
  BoundaryData1D boundary;
  double interior_ps_norm = 0.0;
  double boundary_max = 0.0;
};

/// L u - Q(u) - f in the interior; traces minus data on the boundary (1-D).
Residual residual(const LiftedField& u, const SpectralField& f, const BoundaryData1D& b,
                  const ModelParams& p);

struct EpsilonScanEntry {
  double amplitude = 0.0;
  Verdict verdict = Verdict::MaxIterations;
  int iterations = 0;
  double mean_ratio = 0.0;
  double max_ratio = 0.0;
  double final_residual = 0.0;
};

struct EpsilonScanReport {
  std::vector<EpsilonScanEntry> entries;
  std::optional<double> largest_converged;
  std::optional<double> smallest_diverged;
};

/// Solves the template problem with forcing and boundary data scaled by each amplitude.
/// `bisection_steps` > 0 refines the boundary geometrically between the scan's bracket.
EpsilonScanReport estimate_epsilon_threshold(const ProblemSpec& problem,
                                             const std::vector<double>& amplitudes,
                                             const FixedPointConfig& cfg = {}, int workers = 1,
                                             int bisection_steps = 0);

}  // namespace bcp
