#include "cqdist/distance.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

#include <fmt/core.h>

namespace cqdist {

namespace {

constexpr Complex kI{0.0, 1.0};

void require_kind(const TrajectorySpec& spec, TrajectoryKind kind, const char* op) {
  if (spec.kind() != kind) {
    throw std::invalid_argument(fmt::format("{}: trajectory '{}' has the wrong kind", op, spec.label()));
  }
}

std::optional<std::vector<std::pair<double, double>>> sample_curve(const std::function<double(double)>& f,
                                                                   const QuadratureConfig& cfg,
                                                                   std::size_t samples) {
  if (samples < 2) return std::nullopt;
  std::vector<std::pair<double, double>> curve;
  curve.reserve(samples);
  for (double t : uniform_grid(cfg.t0, cfg.t1, samples)) curve.emplace_back(t, f(t));
  return curve;
}

DistanceReport run(const std::function<double(double)>& f, const QuadratureConfig& cfg, std::size_t samples) {
  const QuadratureResult q = integrate(f, cfg);
  DistanceReport r;
  r.distance = q.value;
  r.error_estimate = q.error_estimate;
  r.evaluations = q.evaluations;
  r.curve = sample_curve(f, cfg, samples);
  return r;
}

}  // namespace

ComplexMatrix deviation(const ComplexMatrix& rho, const ComplexMatrix& rho_dot, const ComplexMatrix& h) {
  return kI * rho_dot - commutator(h, rho);
}

double density_integrand(const TrajectorySpec& spec, const ComplexMatrix& h, double t) {
  const DensitySample s = density_sample(spec, t);
  return operator_norm(deviation(s.rho, s.rho_dot, h));
}

double density_integrand(const TrajectorySpec& spec, const HamiltonianSpec& h, double t) {
  return density_integrand(spec, h.matrix(spec.params()), t);
}

double optimal_gauge_rate(const ComplexVector& psi, const ComplexVector& psi_dot, const ComplexMatrix& h) {
  const double norm2 = std::real(inner(psi, psi));
  if (norm2 == 0.0) throw std::invalid_argument("optimal_gauge_rate: zero state vector");
  // |v - a psi|^2 = |v|^2 - 2a Re<psi, v> + a^2 |psi|^2 with v = i psi_dot - H psi.
  assert(norm2 > 0.0);
  const ComplexVector v = kI * psi_dot - h * psi;
  return std::real(inner(psi, v)) / norm2;
}

double residual_norm(const ComplexVector& psi, const ComplexVector& psi_dot, const ComplexMatrix& h,
                     double alpha_dot) {
  ComplexVector r = kI * psi_dot - h * psi;
  r -= Complex(alpha_dot) * psi;
  return vector_norm(r);
}

double pure_integrand(const TrajectorySpec& spec, const ComplexMatrix& h, const GaugeChoice& gauge, double t) {
  require_kind(spec, TrajectoryKind::PureState, "pure_integrand");
  const StateSample s = sample_state(spec, t);
  const double rate = std::visit(
      [&](const auto& g) -> double {
        using G = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<G, OptimalGauge>) {
          return optimal_gauge_rate(s.psi, s.psi_dot, h);
        } else if constexpr (std::is_same_v<G, ZeroGauge>) {
          return 0.0;
        } else {
          return eval(g.rate, t, spec.params());
        }
      },
      gauge);
  return residual_norm(s.psi, s.psi_dot, h, rate);
}

double pure_integrand(const TrajectorySpec& spec, const HamiltonianSpec& h, const GaugeChoice& gauge, double t) {
  return pure_integrand(spec, h.matrix(spec.params()), gauge, t);
}

std::vector<double> uniform_grid(double t0, double t1, std::size_t n) {
  if (n < 2) throw std::invalid_argument("uniform_grid: need at least 2 points");
  std::vector<double> grid(n);
  const double step = (t1 - t0) / static_cast<double>(n - 1);
  for (std::size_t k = 0; k + 1 < n; ++k) grid[k] = t0 + step * static_cast<double>(k);
  grid[n - 1] = t1;
  return grid;
}

DistanceReport distance_density(const TrajectorySpec& spec, const ComplexMatrix& h, const QuadratureConfig& cfg,
                                std::size_t curve_samples) {
  return run([&](double t) { return density_integrand(spec, h, t); }, cfg, curve_samples);
}

DistanceReport distance_density(const TrajectorySpec& spec, const HamiltonianSpec& h,
                                const QuadratureConfig& cfg, std::size_t curve_samples) {
  return distance_density(spec, h.matrix(spec.params()), cfg, curve_samples);
}

DistanceReport distance_pure(const TrajectorySpec& spec, const ComplexMatrix& h, const QuadratureConfig& cfg,
                             const GaugeChoice& gauge, std::size_t curve_samples) {
  require_kind(spec, TrajectoryKind::PureState, "distance_pure");
  return run([&](double t) { return pure_integrand(spec, h, gauge, t); }, cfg, curve_samples);
}

DistanceReport distance_pure(const TrajectorySpec& spec, const HamiltonianSpec& h, const QuadratureConfig& cfg,
                             const GaugeChoice& gauge, std::size_t curve_samples) {
  return distance_pure(spec, h.matrix(spec.params()), cfg, gauge, curve_samples);
}

Comparison compare(const TrajectorySpec& pure_spec, const TrajectorySpec& density_spec, const ComplexMatrix& h,
                   const QuadratureConfig& cfg, std::size_t n_samples, const GaugeChoice& gauge) {
  require_kind(pure_spec, TrajectoryKind::PureState, "compare");
  Comparison c;
  for (double t : uniform_grid(cfg.t0, cfg.t1, n_samples)) {
    const double gap = std::abs(pure_integrand(pure_spec, h, gauge, t) - density_integrand(density_spec, h, t));
    c.max_pointwise_gap = std::max(c.max_pointwise_gap, gap);
  }
  c.pure = distance_pure(pure_spec, h, cfg, gauge);
  c.density = distance_density(density_spec, h, cfg);
  c.distance_gap = std::abs(c.pure.distance - c.density.distance);
  return c;
}

}  // namespace cqdist
