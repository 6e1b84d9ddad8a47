#include "bcp/model.hpp"

#include <cmath>
#include <numbers>

namespace bcp {

std::string to_string(BcKind kind) {
  return kind == BcKind::Dirichlet ? "dirichlet" : "neumann";
}

BcKind bc_kind_from_string(const std::string& name) {
  if (name == "dirichlet" || name == "Dirichlet") return BcKind::Dirichlet;
  if (name == "neumann" || name == "Neumann") return BcKind::Neumann;
  throw ParameterError("unknown boundary-condition kind '" + name + "'");
}

double derive_k(int s, double B_over_A, double c) {
  if (!(c > 0.0)) throw ParameterError("speed of sound must be positive");
  if (s != 0 && s != 1) throw ParameterError("nonlinearity switch s must be 0 or 1");
  if (!(B_over_A >= 0.0)) throw ParameterError("B/A must be non-negative");
  return ((1.0 - s) + B_over_A / 2.0) / (c * c);
}

ModelParams::ModelParams(double a, double b, double c, int s, double B_over_A)
    : a_(a), b_(b), c_(c), s_(s), B_over_A_(B_over_A), k_(derive_k(s, B_over_A, c)) {
  if (!(a > 0.0)) throw ParameterError("heat conductivity a must be positive");
  if (!(b > 0.0)) throw ParameterError("diffusivity of sound b must be positive");
}

ModelParams::ModelParams(Unchecked, double a, double b, double c, int s, double B_over_A)
    : a_(a), b_(b), c_(c), s_(s), B_over_A_(B_over_A) {
  k_ = c != 0.0 ? ((1.0 - s) + B_over_A / 2.0) / (c * c) : std::nan("");
}

ModelParams ModelParams::unchecked(double a, double b, double c, int s, double B_over_A) {
  return ModelParams(Unchecked{}, a, b, c, s, B_over_A);
}

ModelParams ModelParams::with_dissipation_scale(double delta) const {
  return ModelParams(delta * a_, delta * b_, c_, s_, B_over_A_);
}

double DomainSpec::measure() const {
  double v = 1.0;
  for (double l : lengths) v *= l;
  return v;
}

ForcingSpec ForcingSpec::scaled(double factor) const {
  ForcingSpec out = *this;
  for (auto& term : out.terms) term.amplitude *= factor;
  return out;
}

bool EndpointTraces::empty() const {
  auto zero = [](const std::vector<TraceTerm>& terms) {
    for (const auto& t : terms)
      if (t.amplitude != 0.0) return false;
    return true;
  };
  return zero(left) && zero(right);
}

bool BoundarySpec::homogeneous() const { return g.empty() && h.empty(); }

double ProblemSpec::omega() const { return 2.0 * std::numbers::pi / period; }

bool ProblemSpec::homogeneous_boundary() const {
  return !boundary.has_value() || boundary->homogeneous();
}

ProblemSpec default_problem(int temporal_modes, int spatial_modes, BcKind bc) {
  ProblemSpec spec;
  spec.params = ModelParams(1.0, 1.0, 1.0, 1, 1.0);
  spec.domain = DomainSpec{1, {std::numbers::pi}, bc};
  spec.period = 2.0 * std::numbers::pi;
  spec.temporal_modes = temporal_modes;
  spec.spatial_modes = {spatial_modes};
  return spec;
}

namespace {

void check_traces(const std::vector<TraceTerm>& terms, const std::string& path, int M,
                  std::vector<Violation>& out) {
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const auto& t = terms[i];
    const std::string at = path + "[" + std::to_string(i) + "]";
    if (t.m < 0 || t.m > M) out.push_back({at + ".m", "temporal mode must lie in [0, M]"});
    if (!std::isfinite(t.amplitude) || !std::isfinite(t.phase))
      out.push_back({at, "amplitude and phase must be finite"});
  }
}

}  // namespace

std::vector<Violation> validate_problem(const ProblemSpec& spec) {
  std::vector<Violation> out;
  const auto& p = spec.params;
  if (!(p.a() > 0.0)) out.push_back({"params.a", "dissipation must be positive"});
  if (!(p.b() > 0.0)) out.push_back({"params.b", "dissipation must be positive"});
  if (!(p.c() > 0.0)) out.push_back({"params.c", "speed of sound must be positive"});
  if (p.s() != 0 && p.s() != 1) out.push_back({"params.s", "switch must be 0 or 1"});
  if (!(p.B_over_A() >= 0.0)) out.push_back({"params.B_over_A", "must be non-negative"});

  const auto& d = spec.domain;
  const bool dim_ok = d.dimension >= 1 && d.dimension <= 3;
  if (!dim_ok) out.push_back({"domain.dimension", "must be 1, 2 or 3"});
  if (static_cast<int>(d.lengths.size()) != d.dimension)
    out.push_back({"domain.lengths", "one length per axis required"});
  for (std::size_t i = 0; i < d.lengths.size(); ++i)
    if (!(d.lengths[i] > 0.0))
      out.push_back({"domain.lengths[" + std::to_string(i) + "]", "length must be positive"});

  if (!(spec.period > 0.0) || !std::isfinite(spec.period))
    out.push_back({"period", "period must be positive"});
  if (spec.temporal_modes < 1) out.push_back({"temporal_modes", "must be at least 1"});
  if (static_cast<int>(spec.spatial_modes.size()) != d.dimension)
    out.push_back({"spatial_modes", "one mode count per axis required"});
  for (std::size_t i = 0; i < spec.spatial_modes.size(); ++i)
    if (spec.spatial_modes[i] < 1)
      out.push_back({"spatial_modes[" + std::to_string(i) + "]", "must be at least 1"});

  const int first = d.bc == BcKind::Dirichlet ? 1 : 0;
  for (std::size_t i = 0; i < spec.forcing.terms.size(); ++i) {
    const auto& t = spec.forcing.terms[i];
    const std::string at = "forcing[" + std::to_string(i) + "]";
    if (t.m < 0 || t.m > spec.temporal_modes)
      out.push_back({at + ".m", "temporal mode must lie in [0, M]"});
    if (!std::isfinite(t.amplitude) || !std::isfinite(t.phase))
      out.push_back({at, "amplitude and phase must be finite"});
    if (t.n.size() != spec.spatial_modes.size()) {
      out.push_back({at + ".n", "one spatial index per axis required"});
      continue;
    }
    for (std::size_t ax = 0; ax < t.n.size(); ++ax)
      if (t.n[ax] < first || t.n[ax] > spec.spatial_modes[ax])
        out.push_back({at + ".n[" + std::to_string(ax) + "]", "spatial index outside truncation"});
  }

  if (spec.boundary) {
    check_traces(spec.boundary->g.left, "boundary.g.left", spec.temporal_modes, out);
    check_traces(spec.boundary->g.right, "boundary.g.right", spec.temporal_modes, out);
    check_traces(spec.boundary->h.left, "boundary.h.left", spec.temporal_modes, out);
    check_traces(spec.boundary->h.right, "boundary.h.right", spec.temporal_modes, out);
    if (!spec.boundary->homogeneous() && d.dimension != 1)
      out.push_back({"boundary",
                     "unsupported: inhomogeneous boundary data require dimension 1"});
  }
  return out;
}

const ProblemSpec& require_valid(const ProblemSpec& spec) {
  auto violations = validate_problem(spec);
  if (!violations.empty()) {
    std::vector<std::pair<std::string, std::string>> pairs;
    for (auto& v : violations) pairs.emplace_back(std::move(v.field), std::move(v.message));
    throw ValidationError(std::move(pairs));
  }
  return spec;
}

}  // namespace bcp
