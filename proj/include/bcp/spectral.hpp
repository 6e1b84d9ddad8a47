#pragma once

#include <complex>
#include <iosfwd>
#include <vector>

#include <Eigen/Dense>

#include "bcp/model.hpp"

namespace bcp {

using Complex = std::complex<double>;

/// Per-axis parity of a trigonometric expansion. `Mixed` only appears on
/// physical-space content (products involving polynomial lifts).
enum class Parity { Sine, Cosine, Mixed };

Parity product_parity(Parity lhs, Parity rhs);

/// Modes sin(n*pi*x/L) or cos(n*pi*x/L), n = first .. first+count-1.
struct AxisModes {
  Parity parity = Parity::Sine;
  int first = 1;
  int count = 1;
  double length = 1.0;

  int last() const { return first + count - 1; }
  double wavenumber(int local) const;
  /// Integral of the squared mode over [0, L].
  double norm_squared(int local) const;

  friend bool operator==(const AxisModes&, const AxisModes&) = default;
};

/// Tensor-product Laplacian eigenbasis on a box. Dirichlet: sines n >= 1;
/// Neumann: cosines n >= 0. Flat index is row-major over axes (first axis slowest).
class Basis {
 public:
  Basis(BcKind bc, const std::vector<double>& lengths, const std::vector<int>& modes);
  static Basis from_problem(const ProblemSpec& spec);

  BcKind bc() const { return bc_; }
  int dimension() const { return static_cast<int>(axes_.size()); }
  const std::vector<AxisModes>& axes() const { return axes_; }
  const AxisModes& axis(int i) const { return axes_[static_cast<std::size_t>(i)]; }
  int size() const { return size_; }

  /// Mode numbers n_i of a flat index.
  std::vector<int> multi_index(int flat) const;
  /// Flat index of mode numbers, or -1 when outside the truncation.
  int flat_index(const std::vector<int>& n) const;

  const Eigen::VectorXd& eigenvalues() const { return eigenvalues_; }
  double eigenvalue(int flat) const { return eigenvalues_(flat); }
  double norm_squared(int flat) const;
  std::vector<double> lengths() const;

  /// Basis of d/dx_axis applied to this basis (parity flipped on that axis).
  Basis derivative_basis(int axis) const;
  /// Factor f_n with d/dx_axis phi_n = f_n * psi_n, psi_n in derivative_basis(axis).
  Eigen::VectorXd derivative_factors(int axis) const;

  friend bool operator==(const Basis&, const Basis&) = default;

 private:
  Basis(BcKind bc, std::vector<AxisModes> axes);
  void finish();

  BcKind bc_;
  std::vector<AxisModes> axes_;
  int size_ = 0;
  Eigen::VectorXd eigenvalues_;
};

/// Coefficients c(m, n) of sum_{m,n} c(m,n) e^{i m omega t} phi_n(x),
/// stored as a (2M+1) x basis.size() matrix with row m + M.
class SpectralField {
 public:
  SpectralField(Basis basis, double period, int temporal_modes);
  SpectralField(Basis basis, double period, Eigen::MatrixXcd coeffs);

  const Basis& basis() const { return basis_; }
  double period() const { return period_; }
  double omega() const;
  int temporal_modes() const { return temporal_modes_; }

  const Eigen::MatrixXcd& coeffs() const { return coeffs_; }
  Eigen::MatrixXcd& coeffs() { return coeffs_; }

  Complex operator()(int m, int flat) const { return coeffs_(m + temporal_modes_, flat); }
  Complex& operator()(int m, int flat) { return coeffs_(m + temporal_modes_, flat); }

  /// c(-m, n) == conj(c(m, n)) within `tol` (absolute).
  bool is_hermitian(double tol = 0.0) const;
  /// Replace coefficients by the Hermitian part (real field).
  SpectralField& make_real();

  SpectralField& operator+=(const SpectralField& other);
  SpectralField& operator-=(const SpectralField& other);
  SpectralField& operator*=(Complex factor);

  friend SpectralField operator+(SpectralField lhs, const SpectralField& rhs) { return lhs += rhs; }
  friend SpectralField operator-(SpectralField lhs, const SpectralField& rhs) { return lhs -= rhs; }
  friend SpectralField operator*(Complex f, SpectralField u) { return u *= f; }
  friend SpectralField operator*(double f, SpectralField u) { return u *= Complex(f, 0.0); }

 private:
  void check_compatible(const SpectralField& other) const;

  Basis basis_;
  double period_;
  int temporal_modes_;
  Eigen::MatrixXcd coeffs_;
};

SpectralField zeros_like(const SpectralField& u);

enum class NodeKind { Uniform, GaussLegendre };

/// Tensor-product spatial nodes. Uniform: J intervals, J+1 nodes including
/// both endpoints. Gauss-Legendre: interior quadrature nodes.
struct SpatialGrid {
  NodeKind kind = NodeKind::Uniform;
  std::vector<double> lengths;
  std::vector<Eigen::VectorXd> nodes;
  std::vector<Eigen::VectorXd> weights;

  static SpatialGrid uniform(const std::vector<double>& lengths, const std::vector<int>& intervals);
  static SpatialGrid gauss_legendre(const std::vector<double>& lengths,
                                    const std::vector<int>& counts);

  int dimension() const { return static_cast<int>(nodes.size()); }
  int size() const;
  /// Quadrature weights over the flattened grid (sum = domain measure).
  Eigen::VectorXd flat_weights() const;
  /// Coordinates of flat node `index` along `axis`.
  double coordinate(int index, int axis) const;

  friend bool operator==(const SpatialGrid&, const SpatialGrid&) = default;
};

/// Real samples on (uniform time points) x (spatial grid). Row = time point.
struct PhysicalField {
  Eigen::MatrixXd values;
  double period = 1.0;
  SpatialGrid grid;
  std::vector<Parity> parity;

  int time_points() const { return static_cast<int>(values.rows()); }
};

int collocation_time_points(int temporal_modes, double pad = 1.0);
/// 3/2-rule time grid for quadratic products: exact after truncation to |m| <= M.
int product_time_points(int temporal_modes);
/// ceil(pad * (n_max + 2)) intervals per axis.
SpatialGrid collocation_grid(const Basis& basis, double pad = 1.0);
/// 2*n_max + 2 intervals per axis: resolves every product of two in-band fields.
SpatialGrid product_grid(const Basis& basis);
/// Gauss-Legendre grid for products involving polynomial lifts (1-D).
SpatialGrid quadrature_grid(const Basis& basis);

Eigen::MatrixXd axis_evaluation(const AxisModes& axis, const Eigen::VectorXd& nodes);
/// G x S matrix of basis functions at grid nodes.
Eigen::MatrixXd evaluation_matrix(const Basis& basis, const SpatialGrid& grid);
/// S x G matrix mapping content of parity `content` on `grid` to `target` coefficients.
Eigen::MatrixXd analysis_matrix(const SpatialGrid& grid, const std::vector<Parity>& content,
                                const Basis& target);
/// nt x (2M+1) with entries exp(i m 2 pi j / nt).
Eigen::MatrixXcd temporal_synthesis(int temporal_modes, int time_points);
/// (2M+1) x nt discrete Fourier analysis; exact for nt >= 2M+1.
Eigen::MatrixXcd temporal_analysis(int temporal_modes, int time_points);

PhysicalField to_physical(const SpectralField& u, double pad = 1.0);
PhysicalField to_physical(const SpectralField& u, int time_points, const SpatialGrid& grid);
/// Inverse of to_physical on in-band data; out-of-band content is projected away.
SpectralField to_spectral(const PhysicalField& p, const Basis& basis, int temporal_modes);

/// Temporal derivative of order r: c(m,n) *= (i m omega)^r.
SpectralField dt(const SpectralField& u, int order = 1);
SpectralField laplacian(const SpectralField& u);
/// d/dx_axis u, expressed in basis.derivative_basis(axis).
SpectralField gradient(const SpectralField& u, int axis);
/// sum_i (d_i u)^2 on the product grid.
PhysicalField gradient_squared(const SpectralField& u);
PhysicalField multiply(const PhysicalField& lhs, const PhysicalField& rhs);

SpectralField project_steady(const SpectralField& u);
SpectralField project_oscillatory(const SpectralField& u);

/// sqrt(sum |(1 + |m w|^3 + |m w| lambda_n^2) c(m,n)|^2).
double ps_norm(const SpectralField& u);
/// Unweighted coefficient l2 norm.
double coefficient_norm(const SpectralField& u);
/// Normalized time-space L^p norm on the grid; p = infinity gives the max norm.
double lp_norm(const PhysicalField& p_field, double p);

/// Copy of `u` in another truncation of the same family (zero-padding or truncating).
SpectralField resample(const SpectralField& u, const Basis& target, int temporal_modes);

/// CSV table with header m,n1..nd,re,im; one row per stored coefficient.
void write_coefficients_csv(std::ostream& out, const SpectralField& u);
SpectralField read_coefficients_csv(std::istream& in, const Basis& basis, double period,
                                    int temporal_modes);

}  // namespace bcp
