#include "bcp/nonlinear.hpp"

#include <algorithm>

namespace bcp {

namespace {

struct ProductStage {
  int time_points;
  SpatialGrid grid;
};

ProductStage stage_for(const Basis& basis, int M, bool lifted) {
  return {product_time_points(M), lifted ? quadrature_grid(basis) : product_grid(basis)};
}

/// d/dx_axis u sampled on the stage grid, lift included.
PhysicalField sample_gradient(const LiftedField& u, int axis, const ProductStage& st) {
  PhysicalField g = to_physical(gradient(u.interior, axis), st.time_points, st.grid);
  if (u.lift) {
    g.values += u.lift->sample(st.time_points, st.grid.nodes.at(0), 1);
    g.parity = {Parity::Mixed};
  }
  return g;
}

PhysicalField dot_gradients(const LiftedField& u, const LiftedField& v, const ProductStage& st) {
  PhysicalField total;
  for (int i = 0; i < u.interior.basis().dimension(); ++i) {
    PhysicalField term = multiply(sample_gradient(u, i, st), sample_gradient(v, i, st));
    if (i == 0)
      total = std::move(term);
    else
      total.values += term.values;
  }
  return total;
}

void accumulate(PhysicalField& acc, const PhysicalField& term, double factor) {
  if (acc.values.size() == 0) {
    acc = term;
    acc.values *= factor;
  } else {
    acc.values += factor * term.values;
  }
}

}  // namespace

SpectralField eval_Q(const SpectralField& u, const ModelParams& p) {
  return eval_Q(LiftedField(u), p);
}

SpectralField eval_Q(const LiftedField& u, const ModelParams& p) {
  const Basis& basis = u.interior.basis();
  const int M = u.interior.temporal_modes();
  const ProductStage st = stage_for(basis, M, u.lift.has_value());
  PhysicalField w;
  if (p.k() != 0.0) {
    const PhysicalField ut = u.dt(1).to_physical(st.time_points, st.grid);
    accumulate(w, multiply(ut, ut), p.k());
  }
  if (p.s() != 0) accumulate(w, dot_gradients(u, u, st), p.s());
  if (w.values.size() == 0) return zeros_like(u.interior);
  return dt(to_spectral(w, basis, M), 2);
}

SpectralField eval_cross(const SpectralField& u_s, const SpectralField& u_p, const ModelParams& p) {
  return eval_cross(LiftedField(u_s), LiftedField(u_p), p);
}

SpectralField eval_cross(const LiftedField& u_s, const LiftedField& u_p, const ModelParams& p) {
  const SpectralField& s_int = u_s.interior;
  const int M = s_int.temporal_modes();
  for (int m = -M; m <= M; ++m)
    if (m != 0 && !s_int.coeffs().row(m + M).isZero(0.0))
      throw PreconditionError("eval_cross: steady argument has oscillatory content");
  if (u_s.lift && !u_s.lift->dt(1).is_zero())
    throw PreconditionError("eval_cross: steady lift has oscillatory content");
  if (p.s() == 0) return zeros_like(u_p.interior);
  const Basis& basis = u_p.interior.basis();
  const ProductStage st =
      stage_for(basis, u_p.interior.temporal_modes(), u_s.lift.has_value() || u_p.lift.has_value());
  // u_s is time independent, so dt^2 moves outside the product
  PhysicalField w = dot_gradients(u_s, u_p, st);
  w.values *= 2.0 * p.s();
  return dt(to_spectral(w, basis, u_p.interior.temporal_modes()), 2);
}

DerivativeProducts derivative_products(const SpectralField& u, const SpectralField& v) {
  const ProductStage st = stage_for(u.basis(), std::max(u.temporal_modes(), v.temporal_modes()),
                                    false);
  auto P = [&](const SpectralField& f) { return to_physical(f, st.time_points, st.grid); };
  DerivativeProducts out;
  out.dtv_dt3u = multiply(P(dt(v, 1)), P(dt(u, 3)));
  out.dt2v_dt2u = multiply(P(dt(v, 2)), P(dt(u, 2)));
  out.dtgradv_dtgradu = dot_gradients(LiftedField(dt(v, 1)), LiftedField(dt(u, 1)), st);
  out.gradv_dt2gradu = dot_gradients(LiftedField(v), LiftedField(dt(u, 2)), st);
  return out;
}

double product_ratio(const SpectralField& u, const SpectralField& v, double p) {
  const double denom = ps_norm(u) * ps_norm(v);
  if (denom == 0.0) return 0.0;
  const DerivativeProducts d = derivative_products(u, v);
  double r = 0.0;
  for (const PhysicalField* f : {&d.dtv_dt3u, &d.dt2v_dt2u, &d.dtgradv_dtgradu, &d.gradv_dt2gradu})
    r = std::max(r, lp_norm(*f, p));
  return r / denom;
}

}  // namespace bcp
