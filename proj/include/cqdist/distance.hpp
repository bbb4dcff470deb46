#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "cqdist/cmatrix.hpp"
#include "cqdist/expr.hpp"
#include "cqdist/quadrature.hpp"
#include "cqdist/trajectory.hpp"

namespace cqdist {

// How the phase rate alpha_dot(t) in the pure-state residual
// i psi_dot - (alpha_dot + H) psi is chosen.
struct OptimalGauge {};
struct ZeroGauge {};
struct FixedGauge {
  Expr rate;  // alpha_dot(t), evaluated with the trajectory's parameters
};
using GaugeChoice = std::variant<OptimalGauge, ZeroGauge, FixedGauge>;

struct DistanceReport {
  double distance = 0.0;
  double error_estimate = 0.0;
  std::size_t evaluations = 0;
  std::optional<std::vector<std::pair<double, double>>> curve;
};

/// i rho_dot - [H, rho]. Anti-Hermitian and traceless when rho, H are
/// Hermitian and Tr rho is constant.
ComplexMatrix deviation(const ComplexMatrix& rho, const ComplexMatrix& rho_dot, const ComplexMatrix& h);

/// ||i rho_dot - [H, rho]|| at t. PureState specs go through psi psi^dagger.
double density_integrand(const TrajectorySpec& spec, const ComplexMatrix& h, double t);
double density_integrand(const TrajectorySpec& spec, const HamiltonianSpec& h, double t);

/// Real alpha_dot minimizing ||i psi_dot - (alpha_dot + H) psi||:
/// Re<psi, i psi_dot - H psi> / |psi|^2, which for unit psi is
/// Re<psi, i psi_dot> - <psi|H|psi>. Throws std::invalid_argument on a zero psi.
double optimal_gauge_rate(const ComplexVector& psi, const ComplexVector& psi_dot, const ComplexMatrix& h);

/// ||i psi_dot - (alpha_dot + H) psi|| for the given residual phase rate.
double residual_norm(const ComplexVector& psi, const ComplexVector& psi_dot, const ComplexMatrix& h,
                     double alpha_dot);

double pure_integrand(const TrajectorySpec& spec, const ComplexMatrix& h, const GaugeChoice& gauge, double t);
double pure_integrand(const TrajectorySpec& spec, const HamiltonianSpec& h, const GaugeChoice& gauge, double t);

/// Uniform grid of n >= 2 points over [t0, t1], endpoints included.
std::vector<double> uniform_grid(double t0, double t1, std::size_t n);

/// Integral of density_integrand over [cfg.t0, cfg.t1]. With
/// curve_samples >= 2 the report carries the integrand on a uniform grid.
DistanceReport distance_density(const TrajectorySpec& spec, const ComplexMatrix& h, const QuadratureConfig& cfg,
                                std::size_t curve_samples = 0);
DistanceReport distance_density(const TrajectorySpec& spec, const HamiltonianSpec& h,
                                const QuadratureConfig& cfg, std::size_t curve_samples = 0);

/// Integral of pure_integrand. With OptimalGauge this is the minimum over
/// alpha, since the residual depends on alpha only through alpha_dot(t).
DistanceReport distance_pure(const TrajectorySpec& spec, const ComplexMatrix& h, const QuadratureConfig& cfg,
                             const GaugeChoice& gauge = OptimalGauge{}, std::size_t curve_samples = 0);
DistanceReport distance_pure(const TrajectorySpec& spec, const HamiltonianSpec& h, const QuadratureConfig& cfg,
                             const GaugeChoice& gauge = OptimalGauge{}, std::size_t curve_samples = 0);

struct Comparison {
  double max_pointwise_gap = 0.0;
  double distance_gap = 0.0;
  DistanceReport pure;
  DistanceReport density;
};

/// Pointwise and integrated gap between the pure-state functional on
/// pure_spec and the density functional on density_spec, which the caller
/// asserts equals psi psi^dagger at every t. n_samples >= 2 uniform points.
Comparison compare(const TrajectorySpec& pure_spec, const TrajectorySpec& density_spec, const ComplexMatrix& h,
                   const QuadratureConfig& cfg, std::size_t n_samples, const GaugeChoice& gauge = OptimalGauge{});

}  // namespace cqdist
