#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bcp/errors.hpp"

namespace bcp {

enum class BcKind { Dirichlet, Neumann };

std::string to_string(BcKind kind);
BcKind bc_kind_from_string(const std::string& name);

/// k = (1/c^2) * ((1 - s) + B/A / 2)
double derive_k(int s, double B_over_A, double c);

/// Physical constants of the Blackstock-Crighton operator.
///
/// `k` is always derived from (s, B/A, c) at construction, so the stored value
/// cannot drift from the formula. Use `unchecked` only to build deliberately
/// invalid values for validation tests.
class ModelParams {
 public:
  ModelParams() : ModelParams(1.0, 1.0, 1.0, 1, 1.0) {}
  ModelParams(double a, double b, double c, int s, double B_over_A);

  static ModelParams unchecked(double a, double b, double c, int s, double B_over_A);

  double a() const { return a_; }
  double b() const { return b_; }
  double c() const { return c_; }
  int s() const { return s_; }
  double B_over_A() const { return B_over_A_; }
  double k() const { return k_; }

  /// Same constants with the dissipation pair (a, b) multiplied by `delta`.
  ModelParams with_dissipation_scale(double delta) const;

  friend bool operator==(const ModelParams&, const ModelParams&) = default;

 private:
  struct Unchecked {};
  ModelParams(Unchecked, double a, double b, double c, int s, double B_over_A);

  double a_ = 1.0;
  double b_ = 1.0;
  double c_ = 1.0;
  int s_ = 1;
  double B_over_A_ = 1.0;
  double k_ = 0.5;
};

struct DomainSpec {
  int dimension = 1;
  std::vector<double> lengths{3.14159265358979323846};
  BcKind bc = BcKind::Dirichlet;

  double measure() const;
  friend bool operator==(const DomainSpec&, const DomainSpec&) = default;
};

/// One real separable term amplitude * cos(m*omega*t + phase) * phi_n(x).
struct ForcingTerm {
  double amplitude = 0.0;
  int m = 0;
  double phase = 0.0;
  std::vector<int> n;

  friend bool operator==(const ForcingTerm&, const ForcingTerm&) = default;
};

struct ForcingSpec {
  std::vector<ForcingTerm> terms;

  ForcingSpec scaled(double factor) const;
  friend bool operator==(const ForcingSpec&, const ForcingSpec&) = default;
};

/// One real temporal term amplitude * cos(m*omega*t + phase) of an endpoint trace.
struct TraceTerm {
  double amplitude = 0.0;
  int m = 0;
  double phase = 0.0;

  friend bool operator==(const TraceTerm&, const TraceTerm&) = default;
};

/// Time-periodic traces at the two endpoints of an interval.
struct EndpointTraces {
  std::vector<TraceTerm> left;
  std::vector<TraceTerm> right;

  bool empty() const;
  friend bool operator==(const EndpointTraces&, const EndpointTraces&) = default;
};

/// Boundary data (g, h) for a 1-D problem in the structured term form used by configs.
struct BoundarySpec {
  EndpointTraces g;
  EndpointTraces h;

  bool homogeneous() const;
  friend bool operator==(const BoundarySpec&, const BoundarySpec&) = default;
};

struct ProblemSpec {
  ModelParams params;
  DomainSpec domain;
  double period = 2.0 * 3.14159265358979323846;
  int temporal_modes = 8;
  std::vector<int> spatial_modes{8};
  ForcingSpec forcing;
  std::optional<BoundarySpec> boundary;

  double omega() const;
  bool homogeneous_boundary() const;

  friend bool operator==(const ProblemSpec&, const ProblemSpec&) = default;
};

/// Defaults used by examples and tests: a=b=c=1, s=1, B/A=1, L=pi, T=2pi.
ProblemSpec default_problem(int temporal_modes = 8, int spatial_modes = 8,
                            BcKind bc = BcKind::Dirichlet);

struct Violation {
  std::string field;
  std::string message;

  friend bool operator==(const Violation&, const Violation&) = default;
};

/// Every violated invariant of `spec`; empty means valid.
std::vector<Violation> validate_problem(const ProblemSpec& spec);

/// Returns `spec` unchanged or throws ValidationError carrying the full list.
const ProblemSpec& require_valid(const ProblemSpec& spec);

}  // namespace bcp
