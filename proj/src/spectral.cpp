#include "bcp/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>

#include <unsupported/Eigen/KroneckerProduct>

namespace bcp {

namespace {

constexpr double kPi = std::numbers::pi;

Eigen::MatrixXd kron_all(const std::vector<Eigen::MatrixXd>& factors) {
  Eigen::MatrixXd out = factors.front();
  for (std::size_t i = 1; i < factors.size(); ++i) {
    Eigen::MatrixXd next = Eigen::kroneckerProduct(out, factors[i]);
    out = std::move(next);
  }
  return out;
}

Eigen::VectorXd kron_all(const std::vector<Eigen::VectorXd>& factors) {
  Eigen::VectorXd out = factors.front();
  for (std::size_t i = 1; i < factors.size(); ++i) {
    Eigen::VectorXd next = Eigen::kroneckerProduct(out, factors[i]);
    out = std::move(next);
  }
  return out;
}

/// Nodes and weights on [-1, 1].
void gauss_legendre_unit(int n, Eigen::VectorXd& x, Eigen::VectorXd& w) {
  x.resize(n);
  w.resize(n);
  for (int i = 0; i < n; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = z;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      const double pn = n == 0 ? 1.0 : (n == 1 ? z : p1);
      const double pnm1 = n == 1 ? 1.0 : p0;
      dp = n * (z * pn - pnm1) / (z * z - 1.0);
      const double dz = pn / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    x(n - 1 - i) = z;
    w(n - 1 - i) = 2.0 / ((1.0 - z * z) * dp * dp);
  }
}

double basis_value(Parity parity, double k, double x) {
  return parity == Parity::Sine ? std::sin(k * x) : std::cos(k * x);
}

/// (2/pi) * integral over [0, pi] of cos(k x) sin(n x), times the sine normalization.
double cos_to_sin(int n, int k) {
  if (n == k || ((n + k) % 2) == 0) return 0.0;
  return (2.0 / kPi) * 2.0 * n / (double(n) * n - double(k) * k);
}

/// eps_n/pi * integral over [0, pi] of sin(k x) cos(n x), eps_0 = 1, else 2.
double sin_to_cos(int n, int k) {
  if (n == k || ((n + k) % 2) == 0) return 0.0;
  const double eps = n == 0 ? 1.0 : 2.0;
  return (eps / kPi) * 2.0 * k / (double(k) * k - double(n) * n);
}

Eigen::MatrixXd uniform_axis_analysis(int intervals, Parity content, const AxisModes& target) {
  const int J = intervals;
  const int nodes = J + 1;
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(target.count, nodes);
  if (content == Parity::Mixed)
    throw ShapeError("mixed-parity content needs a quadrature grid");

  auto dst_row = [&](int k) {
    Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(nodes);
    for (int j = 1; j < J; ++j) row(j) = (2.0 / J) * std::sin(kPi * k * j / J);
    return row;
  };
  auto dct_row = [&](int k) {
    Eigen::RowVectorXd row(nodes);
    const double scale = (k == 0 || k == J) ? 1.0 / J : 2.0 / J;
    for (int j = 0; j <= J; ++j) {
      const double half = (j == 0 || j == J) ? 0.5 : 1.0;
      row(j) = scale * half * std::cos(kPi * k * j / J);
    }
    return row;
  };

  for (int i = 0; i < target.count; ++i) {
    const int n = target.first + i;
    if (target.parity == Parity::Sine && n == 0) continue;
    if (content == target.parity) {
      if (content == Parity::Sine) {
        if (n >= J) throw ShapeError("grid too coarse for sine mode " + std::to_string(n));
        out.row(i) = dst_row(n);
      } else {
        if (n > J) throw ShapeError("grid too coarse for cosine mode " + std::to_string(n));
        out.row(i) = dct_row(n);
      }
    } else if (content == Parity::Cosine) {
      for (int k = 0; k <= J; ++k) {
        const double p = cos_to_sin(n, k);
        if (p != 0.0) out.row(i) += p * dct_row(k);
      }
    } else {
      for (int k = 1; k < J; ++k) {
        const double p = sin_to_cos(n, k);
        if (p != 0.0) out.row(i) += p * dst_row(k);
      }
    }
  }
  return out;
}

Eigen::MatrixXd quadrature_axis_analysis(const Eigen::VectorXd& nodes,
                                         const Eigen::VectorXd& weights,
                                         const AxisModes& target) {
  Eigen::MatrixXd out = axis_evaluation(target, nodes).transpose();
  for (int i = 0; i < target.count; ++i) {
    const double nrm = target.norm_squared(i);
    if (nrm == 0.0) {
      out.row(i).setZero();
      continue;
    }
    out.row(i) = out.row(i).cwiseProduct(weights.transpose()) / nrm;
  }
  return out;
}

int max_mode(const Basis& basis, int axis) { return basis.axis(axis).last(); }

}  // namespace

Parity product_parity(Parity lhs, Parity rhs) {
  if (lhs == Parity::Mixed || rhs == Parity::Mixed) return Parity::Mixed;
  return lhs == rhs ? Parity::Cosine : Parity::Sine;
}

double AxisModes::wavenumber(int local) const { return (first + local) * kPi / length; }

double AxisModes::norm_squared(int local) const {
  const int n = first + local;
  if (n == 0) return parity == Parity::Sine ? 0.0 : length;
  return length / 2.0;
}

Basis::Basis(BcKind bc, const std::vector<double>& lengths, const std::vector<int>& modes)
    : bc_(bc) {
  if (lengths.size() != modes.size() || lengths.empty())
    throw ShapeError("basis needs one length and one mode count per axis");
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    if (!(lengths[i] > 0.0)) throw ParameterError("axis length must be positive");
    if (modes[i] < 1) throw ParameterError("mode count must be at least 1");
    if (bc == BcKind::Dirichlet)
      axes_.push_back({Parity::Sine, 1, modes[i], lengths[i]});
    else
      axes_.push_back({Parity::Cosine, 0, modes[i] + 1, lengths[i]});
  }
  finish();
}

Basis::Basis(BcKind bc, std::vector<AxisModes> axes) : bc_(bc), axes_(std::move(axes)) {
  finish();
}

void Basis::finish() {
  size_ = 1;
  for (const auto& ax : axes_) size_ *= ax.count;
  eigenvalues_.resize(size_);
  for (int flat = 0; flat < size_; ++flat) {
    const auto n = multi_index(flat);
    double lambda = 0.0;
    for (std::size_t i = 0; i < axes_.size(); ++i) {
      const double k = n[i] * kPi / axes_[i].length;
      lambda += k * k;
    }
    eigenvalues_(flat) = lambda;
  }
}

Basis Basis::from_problem(const ProblemSpec& spec) {
  return Basis(spec.domain.bc, spec.domain.lengths, spec.spatial_modes);
}

std::vector<int> Basis::multi_index(int flat) const {
  std::vector<int> n(axes_.size());
  for (int i = dimension() - 1; i >= 0; --i) {
    const auto& ax = axes_[static_cast<std::size_t>(i)];
    n[static_cast<std::size_t>(i)] = ax.first + flat % ax.count;
    flat /= ax.count;
  }
  return n;
}

int Basis::flat_index(const std::vector<int>& n) const {
  if (n.size() != axes_.size()) return -1;
  int flat = 0;
  for (std::size_t i = 0; i < axes_.size(); ++i) {
    const int local = n[i] - axes_[i].first;
    if (local < 0 || local >= axes_[i].count) return -1;
    flat = flat * axes_[i].count + local;
  }
  return flat;
}

double Basis::norm_squared(int flat) const {
  const auto n = multi_index(flat);
  double v = 1.0;
  for (std::size_t i = 0; i < axes_.size(); ++i) v *= axes_[i].norm_squared(n[i] - axes_[i].first);
  return v;
}

std::vector<double> Basis::lengths() const {
  std::vector<double> out;
  for (const auto& ax : axes_) out.push_back(ax.length);
  return out;
}

Basis Basis::derivative_basis(int axis) const {
  auto axes = axes_;
  auto& ax = axes.at(static_cast<std::size_t>(axis));
  ax.parity = ax.parity == Parity::Sine ? Parity::Cosine : Parity::Sine;
  return Basis(bc_, std::move(axes));
}

Eigen::VectorXd Basis::derivative_factors(int axis) const {
  Eigen::VectorXd out(size_);
  const auto& ax = axes_.at(static_cast<std::size_t>(axis));
  for (int flat = 0; flat < size_; ++flat) {
    const int n = multi_index(flat)[static_cast<std::size_t>(axis)];
    const double k = n * kPi / ax.length;
    out(flat) = ax.parity == Parity::Sine ? k : -k;
  }
  return out;
}

SpectralField::SpectralField(Basis basis, double period, int temporal_modes)
    : basis_(std::move(basis)),
      period_(period),
      temporal_modes_(temporal_modes),
      coeffs_(Eigen::MatrixXcd::Zero(2 * temporal_modes + 1, basis_.size())) {
  if (temporal_modes < 0) throw ShapeError("temporal mode count must be non-negative");
}

SpectralField::SpectralField(Basis basis, double period, Eigen::MatrixXcd coeffs)
    : basis_(std::move(basis)), period_(period), coeffs_(std::move(coeffs)) {
  if (coeffs_.rows() % 2 != 1) throw ShapeError("coefficient rows must be 2M+1");
  if (coeffs_.cols() != basis_.size()) throw ShapeError("coefficient columns must match basis");
  temporal_modes_ = static_cast<int>(coeffs_.rows() / 2);
}

double SpectralField::omega() const { return 2.0 * kPi / period_; }

bool SpectralField::is_hermitian(double tol) const {
  for (int m = 0; m <= temporal_modes_; ++m)
    for (int n = 0; n < basis_.size(); ++n)
      if (std::abs((*this)(-m, n) - std::conj((*this)(m, n))) > tol) return false;
  return true;
}

SpectralField& SpectralField::make_real() {
  for (int m = 0; m <= temporal_modes_; ++m)
    for (int n = 0; n < basis_.size(); ++n) {
      const Complex avg = 0.5 * ((*this)(m, n) + std::conj((*this)(-m, n)));
      (*this)(m, n) = avg;
      (*this)(-m, n) = std::conj(avg);
    }
  return *this;
}

void SpectralField::check_compatible(const SpectralField& other) const {
  if (!(basis_ == other.basis_) || temporal_modes_ != other.temporal_modes_ ||
      period_ != other.period_)
    throw ShapeError("spectral fields live on different truncations");
}

SpectralField& SpectralField::operator+=(const SpectralField& other) {
  check_compatible(other);
  coeffs_ += other.coeffs_;
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& other) {
  check_compatible(other);
  coeffs_ -= other.coeffs_;
  return *this;
}

SpectralField& SpectralField::operator*=(Complex factor) {
  coeffs_ *= factor;
  return *this;
}

SpectralField zeros_like(const SpectralField& u) {
  return SpectralField(u.basis(), u.period(), u.temporal_modes());
}

SpatialGrid SpatialGrid::uniform(const std::vector<double>& lengths,
                                 const std::vector<int>& intervals) {
  SpatialGrid grid;
  grid.kind = NodeKind::Uniform;
  grid.lengths = lengths;
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    const int J = intervals.at(i);
    if (J < 1) throw ShapeError("uniform grid needs at least one interval");
    Eigen::VectorXd x = Eigen::VectorXd::LinSpaced(J + 1, 0.0, lengths[i]);
    Eigen::VectorXd w = Eigen::VectorXd::Constant(J + 1, lengths[i] / J);
    w(0) *= 0.5;
    w(J) *= 0.5;
    grid.nodes.push_back(std::move(x));
    grid.weights.push_back(std::move(w));
  }
  return grid;
}

SpatialGrid SpatialGrid::gauss_legendre(const std::vector<double>& lengths,
                                        const std::vector<int>& counts) {
  SpatialGrid grid;
  grid.kind = NodeKind::GaussLegendre;
  grid.lengths = lengths;
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    Eigen::VectorXd x, w;
    gauss_legendre_unit(counts.at(i), x, w);
    const double half = 0.5 * lengths[i];
    grid.nodes.push_back(half * (x.array() + 1.0).matrix());
    grid.weights.push_back(half * w);
  }
  return grid;
}

int SpatialGrid::size() const {
  int n = 1;
  for (const auto& x : nodes) n *= static_cast<int>(x.size());
  return n;
}

Eigen::VectorXd SpatialGrid::flat_weights() const { return kron_all(weights); }

double SpatialGrid::coordinate(int index, int axis) const {
  for (int i = dimension() - 1; i > axis; --i)
    index /= static_cast<int>(nodes[static_cast<std::size_t>(i)].size());
  const auto& x = nodes[static_cast<std::size_t>(axis)];
  return x(index % static_cast<int>(x.size()));
}

int collocation_time_points(int temporal_modes, double pad) {
  if (!(pad >= 1.0)) throw ShapeError("padding factor must be at least 1");
  return static_cast<int>(std::ceil(pad * (2 * temporal_modes + 1) - 1e-12));
}

int product_time_points(int temporal_modes) { return 3 * temporal_modes + 2; }

SpatialGrid collocation_grid(const Basis& basis, double pad) {
  if (!(pad >= 1.0)) throw ShapeError("padding factor must be at least 1");
  std::vector<int> intervals;
  for (int i = 0; i < basis.dimension(); ++i)
    intervals.push_back(static_cast<int>(std::ceil(pad * (max_mode(basis, i) + 2) - 1e-12)));
  return SpatialGrid::uniform(basis.lengths(), intervals);
}

SpatialGrid product_grid(const Basis& basis) {
  std::vector<int> intervals;
  for (int i = 0; i < basis.dimension(); ++i) intervals.push_back(2 * max_mode(basis, i) + 2);
  return SpatialGrid::uniform(basis.lengths(), intervals);
}

SpatialGrid quadrature_grid(const Basis& basis) {
  std::vector<int> counts;
  for (int i = 0; i < basis.dimension(); ++i) counts.push_back(4 * (max_mode(basis, i) + 1) + 16);
  return SpatialGrid::gauss_legendre(basis.lengths(), counts);
}

Eigen::MatrixXd axis_evaluation(const AxisModes& axis, const Eigen::VectorXd& nodes) {
  Eigen::MatrixXd out(nodes.size(), axis.count);
  for (Eigen::Index j = 0; j < nodes.size(); ++j)
    for (int i = 0; i < axis.count; ++i)
      out(j, i) = basis_value(axis.parity, axis.wavenumber(i), nodes(j));
  return out;
}

Eigen::MatrixXd evaluation_matrix(const Basis& basis, const SpatialGrid& grid) {
  if (grid.dimension() != basis.dimension()) throw ShapeError("grid and basis dimensions differ");
  std::vector<Eigen::MatrixXd> factors;
  for (int i = 0; i < basis.dimension(); ++i)
    factors.push_back(axis_evaluation(basis.axis(i), grid.nodes[static_cast<std::size_t>(i)]));
  return kron_all(factors);
}

Eigen::MatrixXd analysis_matrix(const SpatialGrid& grid, const std::vector<Parity>& content,
                                const Basis& target) {
  if (grid.dimension() != target.dimension() ||
      static_cast<int>(content.size()) != target.dimension())
    throw ShapeError("grid, content parity and basis dimensions differ");
  std::vector<Eigen::MatrixXd> factors;
  for (int i = 0; i < target.dimension(); ++i) {
    const auto& x = grid.nodes[static_cast<std::size_t>(i)];
    if (grid.kind == NodeKind::Uniform)
      factors.push_back(uniform_axis_analysis(static_cast<int>(x.size()) - 1,
                                              content[static_cast<std::size_t>(i)],
                                              target.axis(i)));
    else
      factors.push_back(
          quadrature_axis_analysis(x, grid.weights[static_cast<std::size_t>(i)], target.axis(i)));
  }
  return kron_all(factors);
}

Eigen::MatrixXcd temporal_synthesis(int temporal_modes, int time_points) {
  const int M = temporal_modes;
  Eigen::MatrixXcd out(time_points, 2 * M + 1);
  for (int j = 0; j < time_points; ++j)
    for (int m = -M; m <= M; ++m)
      out(j, m + M) = std::polar(1.0, 2.0 * kPi * double(m) * j / time_points);
  return out;
}

Eigen::MatrixXcd temporal_analysis(int temporal_modes, int time_points) {
  if (time_points < 2 * temporal_modes + 1)
    throw ShapeError("time grid too coarse for the temporal truncation");
  return temporal_synthesis(temporal_modes, time_points).adjoint() / double(time_points);
}

PhysicalField to_physical(const SpectralField& u, double pad) {
  return to_physical(u, collocation_time_points(u.temporal_modes(), pad),
                     collocation_grid(u.basis(), pad));
}

PhysicalField to_physical(const SpectralField& u, int time_points, const SpatialGrid& grid) {
  PhysicalField out;
  const Eigen::MatrixXcd in_time = temporal_synthesis(u.temporal_modes(), time_points) * u.coeffs();
  out.values = in_time.real() * evaluation_matrix(u.basis(), grid).transpose();
  out.period = u.period();
  out.grid = grid;
  for (const auto& ax : u.basis().axes()) out.parity.push_back(ax.parity);
  return out;
}

SpectralField to_spectral(const PhysicalField& p, const Basis& basis, int temporal_modes) {
  if (p.values.cols() != p.grid.size()) throw ShapeError("values do not match the grid");
  const Eigen::MatrixXd A = analysis_matrix(p.grid, p.parity, basis);
  const Eigen::MatrixXd in_space = p.values * A.transpose();
  Eigen::MatrixXcd coeffs =
      temporal_analysis(temporal_modes, p.time_points()) * in_space.cast<Complex>();
  return SpectralField(basis, p.period, std::move(coeffs));
}

SpectralField dt(const SpectralField& u, int order) {
  SpectralField out = u;
  const double w = u.omega();
  const int M = u.temporal_modes();
  for (int m = -M; m <= M; ++m)
    out.coeffs().row(m + M) *= std::pow(Complex(0.0, m * w), order);
  return out;
}

SpectralField laplacian(const SpectralField& u) {
  SpectralField out = u;
  out.coeffs() = u.coeffs() * (-u.basis().eigenvalues()).asDiagonal();
  return out;
}

SpectralField gradient(const SpectralField& u, int axis) {
  return SpectralField(u.basis().derivative_basis(axis), u.period(),
                       u.coeffs() * u.basis().derivative_factors(axis).asDiagonal());
}

PhysicalField multiply(const PhysicalField& lhs, const PhysicalField& rhs) {
  if (lhs.values.rows() != rhs.values.rows() || lhs.values.cols() != rhs.values.cols() ||
      !(lhs.grid == rhs.grid))
    throw ShapeError("pointwise product of fields on different grids");
  PhysicalField out = lhs;
  out.values = lhs.values.cwiseProduct(rhs.values);
  for (std::size_t i = 0; i < out.parity.size(); ++i)
    out.parity[i] = product_parity(lhs.parity[i], rhs.parity[i]);
  return out;
}

PhysicalField gradient_squared(const SpectralField& u) {
  const int nt = product_time_points(u.temporal_modes());
  const SpatialGrid grid = product_grid(u.basis());
  PhysicalField total;
  for (int i = 0; i < u.basis().dimension(); ++i) {
    const PhysicalField g = to_physical(gradient(u, i), nt, grid);
    PhysicalField sq = multiply(g, g);
    if (i == 0)
      total = std::move(sq);
    else
      total.values += sq.values;
  }
  return total;
}

SpectralField project_steady(const SpectralField& u) {
  SpectralField out = zeros_like(u);
  out.coeffs().row(u.temporal_modes()) = u.coeffs().row(u.temporal_modes());
  return out;
}

SpectralField project_oscillatory(const SpectralField& u) {
  SpectralField out = u;
  out.coeffs().row(u.temporal_modes()).setZero();
  return out;
}

double ps_norm(const SpectralField& u) {
  const double w = u.omega();
  const int M = u.temporal_modes();
  const Eigen::ArrayXd lambda2 = u.basis().eigenvalues().array().square();
  double total = 0.0;
  for (int m = -M; m <= M; ++m) {
    const double mw = std::abs(m * w);
    const Eigen::ArrayXd weight = 1.0 + mw * mw * mw + mw * lambda2;
    total += (weight * u.coeffs().row(m + M).transpose().array().abs()).square().sum();
  }
  return std::sqrt(total);
}

double coefficient_norm(const SpectralField& u) { return u.coeffs().norm(); }

double lp_norm(const PhysicalField& f, double p) {
  if (!(p >= 1.0)) throw ParameterError("L^p exponent must be at least 1");
  if (f.values.size() == 0) return 0.0;
  if (std::isinf(p)) return f.values.cwiseAbs().maxCoeff();
  const Eigen::VectorXd w = f.grid.flat_weights();
  double measure = 1.0;
  for (double l : f.grid.lengths) measure *= l;
  const Eigen::ArrayXXd powered = f.values.array().abs().pow(p);
  const double integral = (powered.matrix() * w).sum() / (f.time_points() * measure);
  return std::pow(integral, 1.0 / p);
}

SpectralField resample(const SpectralField& u, const Basis& target, int temporal_modes) {
  if (target.bc() != u.basis().bc() || target.dimension() != u.basis().dimension())
    throw ShapeError("resample needs the same basis family");
  SpectralField out(target, u.period(), temporal_modes);
  const int M = std::min(temporal_modes, u.temporal_modes());
  for (int flat = 0; flat < u.basis().size(); ++flat) {
    const int t = target.flat_index(u.basis().multi_index(flat));
    if (t < 0) continue;
    for (int m = -M; m <= M; ++m) out(m, t) = u(m, flat);
  }
  return out;
}

void write_coefficients_csv(std::ostream& out, const SpectralField& u) {
  const int d = u.basis().dimension();
  out << "m";
  for (int i = 1; i <= d; ++i) out << ",n" << i;
  out << ",re,im\n";
  std::ostringstream line;
  line << std::setprecision(17);
  const int M = u.temporal_modes();
  for (int m = -M; m <= M; ++m)
    for (int flat = 0; flat < u.basis().size(); ++flat) {
      line.str("");
      line << m;
      for (int n : u.basis().multi_index(flat)) line << ',' << n;
      line << ',' << u(m, flat).real() << ',' << u(m, flat).imag() << '\n';
      out << line.str();
    }
}

SpectralField read_coefficients_csv(std::istream& in, const Basis& basis, double period,
                                    int temporal_modes) {
  SpectralField u(basis, period, temporal_modes);
  std::string line;
  if (!std::getline(in, line)) throw ShapeError("empty coefficient table");
  const int d = basis.dimension();
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream row(line);
    int m = 0;
    std::vector<int> n(static_cast<std::size_t>(d));
    double re = 0.0, im = 0.0;
    row >> m;
    for (auto& v : n) row >> v;
    row >> re >> im;
    if (!row) throw ShapeError("malformed coefficient row: " + line);
    const int flat = basis.flat_index(n);
    if (flat < 0 || std::abs(m) > temporal_modes)
      throw ShapeError("coefficient row outside truncation: " + line);
    u(m, flat) = Complex(re, im);
  }
  return u;
}

}  // namespace bcp
