#pragma once

#include "bcp/lift.hpp"
#include "bcp/model.hpp"
#include "bcp/spectral.hpp"

namespace bcp {

/// dt^2 of the banded product k (dt u)^2 + s |grad u|^2. Products are formed on
/// the exact product grid, or on a Gauss-Legendre grid when a lift is present.
SpectralField eval_Q(const SpectralField& u, const ModelParams& p);
SpectralField eval_Q(const LiftedField& u, const ModelParams& p);

/// 2 s grad u_s . grad dt^2 u_p, banded. u_s must be steady.
SpectralField eval_cross(const SpectralField& u_s, const SpectralField& u_p, const ModelParams& p);
SpectralField eval_cross(const LiftedField& u_s, const LiftedField& u_p, const ModelParams& p);

/// Pointwise products dt v dt^3 u, dt^2 v dt^2 u, dt grad v . dt grad u and
/// grad v . dt^2 grad u on the product grid.
struct DerivativeProducts {
  PhysicalField dtv_dt3u;
  PhysicalField dt2v_dt2u;
  PhysicalField dtgradv_dtgradu;
  PhysicalField gradv_dt2gradu;
};

DerivativeProducts derivative_products(const SpectralField& u, const SpectralField& v);

/// Largest ||product||_p / (ps_norm(u) ps_norm(v)) over the four products.
double product_ratio(const SpectralField& u, const SpectralField& v, double p);

}  // namespace bcp
