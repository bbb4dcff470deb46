#include "cqdist/trajectory.hpp"

#include <cmath>
#include <iostream>
#include <numbers>
#include <stdexcept>

#include <fmt/core.h>

#include "cqdist/error.hpp"

namespace cqdist {

namespace {

constexpr double kTraceTol = 1e-10;
constexpr double kPsdTol = 1e-10;
constexpr double kNormTol = 1e-10;
constexpr double kHamiltonianTol = 1e-12;

std::optional<std::string> density_violation(const ComplexMatrix& rho, const ComplexMatrix& rho_dot) {
  if (!is_hermitian(rho, kHermitianTol)) return "density matrix is not Hermitian";
  const Complex tr = trace(rho);
  if (std::abs(tr - 1.0) > kTraceTol) return fmt::format("trace is {} + {}i, not 1", tr.real(), tr.imag());
  const double min_eig = hermitian_eigenvalues(rho).front();
  if (min_eig < -kPsdTol) return fmt::format("density matrix has negative eigenvalue {}", min_eig);
  if (!is_hermitian(rho_dot, kHermitianTol)) return "density derivative is not Hermitian";
  return std::nullopt;
}

std::optional<std::string> state_violation(const ComplexVector& psi) {
  const double n = vector_norm(psi);
  if (std::abs(n - 1.0) > kNormTol) return fmt::format("state norm is {}, not 1", n);
  return std::nullopt;
}

void report(const TrajectorySpec& spec, double t, const std::string& what) {
  const std::string msg = fmt::format("trajectory '{}' at t={}: {}", spec.label(), t, what);
  switch (spec.validation()) {
    case Validation::Strict: throw SpecError(msg);
    case Validation::Warn: std::cerr << "warning: " << msg << '\n'; break;
    case Validation::Off: break;
  }
}

}  // namespace

Cell Cell::real(std::string_view re_src) { return {parse(re_src), Expr::constant(0.0)}; }

Cell Cell::complex(std::string_view re_src, std::string_view im_src) {
  return {parse(re_src), parse(im_src)};
}

TrajectorySpec::TrajectorySpec(TrajectoryKind kind, std::size_t dim, std::vector<Cell> cells,
                               ParamMap params, std::string label, Interval interval,
                               Validation validation)
    : kind_(kind),
      dim_(dim),
      cells_(std::move(cells)),
      params_(std::move(params)),
      label_(std::move(label)),
      interval_(interval),
      validation_(validation) {
  if (dim_ == 0) throw SpecError("trajectory dimension must be positive");
  const std::size_t expected = kind_ == TrajectoryKind::Density ? dim_ * dim_ : dim_;
  if (cells_.size() != expected) {
    throw SpecError(fmt::format("trajectory '{}' needs {} entries, got {}", label_, expected, cells_.size()));
  }
  for (const auto& [name, value] : params_) {
    if (!is_valid_param_name(name)) throw SpecError(fmt::format("invalid parameter name '{}'", name));
    if (!std::isfinite(value)) throw SpecError(fmt::format("parameter '{}' is not finite", name));
  }
  validate();
}

TrajectorySpec TrajectorySpec::with_params(const ParamMap& overrides) const {
  ParamMap merged = params_;
  for (const auto& [name, value] : overrides) merged[name] = value;
  return TrajectorySpec(kind_, dim_, cells_, std::move(merged), label_, interval_, validation_);
}

TrajectorySpec TrajectorySpec::with_interval(Interval interval) const {
  return TrajectorySpec(kind_, dim_, cells_, params_, label_, interval, validation_);
}

TrajectorySpec TrajectorySpec::with_validation(Validation validation) const {
  return TrajectorySpec(kind_, dim_, cells_, params_, label_, interval_, validation);
}

void TrajectorySpec::validate() const {
  if (!(interval_.t0 < interval_.t1) || !std::isfinite(interval_.t0) || !std::isfinite(interval_.t1)) {
    throw SpecError(fmt::format("trajectory '{}' has invalid interval [{}, {}]", label_, interval_.t0,
                                interval_.t1));
  }
  if (validation_ == Validation::Off) return;
  for (double t : validation_grid(interval_)) {
    try {
      // sample() applies the invariant checks at this spec's level.
      (void)sample(*this, t);
    } catch (const DomainError& e) {
      report(*this, t, e.what());
    }
  }
}

HamiltonianSpec::HamiltonianSpec(ComplexMatrix base, std::optional<std::string> scale_param,
                                 std::string label)
    : base_(std::move(base)), scale_param_(std::move(scale_param)), label_(std::move(label)) {
  if (!is_hermitian(base_, kHamiltonianTol)) {
    throw SpecError(fmt::format("Hamiltonian '{}' is not Hermitian", label_));
  }
  if (scale_param_ && !is_valid_param_name(*scale_param_)) {
    throw SpecError(fmt::format("invalid Hamiltonian scale parameter '{}'", *scale_param_));
  }
}

ComplexMatrix HamiltonianSpec::matrix(const ParamMap& params) const {
  if (!scale_param_) return base_;
  const auto it = params.find(*scale_param_);
  if (it == params.end()) {
    throw SpecError(fmt::format("Hamiltonian '{}' needs parameter '{}'", label_, *scale_param_));
  }
  return Complex(it->second) * base_;
}

DensitySample sample_density(const TrajectorySpec& spec, double t) {
  if (spec.kind() != TrajectoryKind::Density) {
    throw std::invalid_argument("sample_density called on a pure-state trajectory");
  }
  const std::size_t n = spec.dim();
  ComplexMatrix rho(n);
  ComplexMatrix rho_dot(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Cell& c = spec.cells()[i * n + j];
      const DualValue re = eval_dual(c.re, t, spec.params());
      const DualValue im = eval_dual(c.im, t, spec.params());
      rho(i, j) = {re.value, im.value};
      rho_dot(i, j) = {re.deriv, im.deriv};
    }
  }
  if (spec.validation() != Validation::Off) {
    if (auto v = density_violation(rho, rho_dot)) report(spec, t, *v);
  }
  return {t, std::move(rho), std::move(rho_dot)};
}

StateSample sample_state(const TrajectorySpec& spec, double t) {
  if (spec.kind() != TrajectoryKind::PureState) {
    throw std::invalid_argument("sample_state called on a density trajectory");
  }
  const std::size_t n = spec.dim();
  ComplexVector psi(n);
  ComplexVector psi_dot(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Cell& c = spec.cells()[i];
    const DualValue re = eval_dual(c.re, t, spec.params());
    const DualValue im = eval_dual(c.im, t, spec.params());
    psi[i] = {re.value, im.value};
    psi_dot[i] = {re.deriv, im.deriv};
  }
  if (spec.validation() != Validation::Off) {
    if (auto v = state_violation(psi)) report(spec, t, *v);
  }
  return {t, std::move(psi), std::move(psi_dot)};
}

SampledPoint sample(const TrajectorySpec& spec, double t) {
  if (spec.kind() == TrajectoryKind::Density) return sample_density(spec, t);
  return sample_state(spec, t);
}

DensitySample density_sample(const TrajectorySpec& spec, double t) {
  if (spec.kind() == TrajectoryKind::Density) return sample_density(spec, t);
  StateSample s = sample_state(spec, t);
  return {t, outer(s.psi, s.psi), density_derivative_from_state(s.psi, s.psi_dot)};
}

double purity(const ComplexMatrix& rho) {
  // Tr(rho rho) without forming the product.
  const std::size_t n = rho.dim();
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) s += (rho(i, j) * rho(j, i)).real();
  return s;
}

double purity_2x2(double a, Complex b) { return 2.0 * a * a + 2.0 * std::norm(b) + 1.0 - 2.0 * a; }

Purity classify(const ComplexMatrix& rho, double tol) {
  const double p = purity(rho);
  if (p > 1.0 + tol) throw InvalidStateError(fmt::format("purity {} exceeds 1", p));
  return p >= 1.0 - tol ? Purity::Pure : Purity::Impure;
}

double pure_bound(double a) {
  if (!(a >= 0.0 && a <= 1.0)) throw std::domain_error(fmt::format("pure_bound: a={} outside [0, 1]", a));
  return std::sqrt(std::max(0.0, a - a * a));
}

ComplexMatrix density_from_state(const ComplexVector& psi) {
  const double n = vector_norm(psi);
  if (std::abs(n - 1.0) > kNormTol) throw InvalidStateError(fmt::format("state norm is {}, not 1", n));
  return outer(psi, psi);
}

ComplexMatrix density_derivative_from_state(const ComplexVector& psi, const ComplexVector& psi_dot) {
  return outer(psi_dot, psi) + outer(psi, psi_dot);
}

std::vector<double> validation_grid(Interval interval, std::size_t nodes) {
  std::vector<double> grid;
  grid.reserve(nodes + 2);
  const double mid = 0.5 * (interval.t0 + interval.t1);
  const double half = 0.5 * (interval.t1 - interval.t0);
  for (std::size_t k = 0; k < nodes; ++k) {
    const double x = std::cos((2.0 * static_cast<double>(k) + 1.0) * std::numbers::pi /
                              (2.0 * static_cast<double>(nodes)));
    grid.push_back(mid + half * x);
  }
  grid.push_back(interval.t0);
  grid.push_back(interval.t1);
  return grid;
}

}  // namespace cqdist
