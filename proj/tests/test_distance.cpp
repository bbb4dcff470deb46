#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "cqdist/catalog.hpp"
#include "cqdist/distance.hpp"
#include "cqdist/error.hpp"
#include "oracles.hpp"

using namespace cqdist;
using doctest::Approx;

namespace {

constexpr Complex I{0.0, 1.0};
constexpr double kPi = std::numbers::pi;

const CatalogEntry& entry(std::string_view label) {
  const CatalogEntry* e = find_entry(label);
  REQUIRE(e != nullptr);
  return *e;
}

TrajectorySpec spec(std::string_view label, ParamMap p) { return entry(label).trajectory.with_params(p); }

ComplexMatrix h_of(std::string_view label, double lambda) { return entry(label).hamiltonian.matrix({{"lambda", lambda}}); }

double max_diff(const ComplexMatrix& a, const ComplexMatrix& b) { return max_abs_entry(a - b); }

// psi(t) = (0.6 e^{-i lambda t}, 0.8 e^{i lambda t}) solves i psi' = lambda diag(1,-1) psi.
TrajectorySpec precessing_state(double lambda) {
  return TrajectorySpec(TrajectoryKind::PureState, 2,
                        {Cell::complex("0.6*cos(lambda*t)", "-0.6*sin(lambda*t)"),
                         Cell::complex("0.8*cos(lambda*t)", "0.8*sin(lambda*t)")},
                        {{"lambda", lambda}}, "precess", {-2.0, 5.0});
}

TrajectorySpec precessing_density(double lambda) {
  return TrajectorySpec(TrajectoryKind::Density, 2,
                        {Cell::real("0.36"), Cell::complex("0.48*cos(2*lambda*t)", "-0.48*sin(2*lambda*t)"),
                         Cell::complex("0.48*cos(2*lambda*t)", "0.48*sin(2*lambda*t)"), Cell::real("0.64")},
                        {{"lambda", lambda}}, "precess", {-2.0, 5.0});
}

TrajectorySpec stationary_diagonal() {
  return TrajectorySpec(TrajectoryKind::Density, 2,
                        {Cell::real("0.3"), Cell::real("0"), Cell::real("0"), Cell::real("0.7")}, {}, "diag",
                        {0.0, 10.0});
}

TrajectorySpec stationary_state() {
  return TrajectorySpec(TrajectoryKind::PureState, 2, {Cell::real("1"), Cell::real("0")}, {}, "up", {0.0, 3.0});
}

}  // namespace

TEST_CASE("deviation of the trig family under both Hamiltonians") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> ut(-6.0, 6.0), ub(-0.5, 0.5), ul(-3.0, 3.0);
  for (int k = 0; k < 50; ++k) {
    const double t = ut(rng), beta = ub(rng), lambda = ul(rng);
    const double c = std::cos(t), s = std::sin(t), c2 = std::cos(2 * t), s2 = std::sin(2 * t);
    const DensitySample d = sample_density(spec("ex1", {{"beta", beta}}), t);

    const ComplexMatrix a1 = deviation(d.rho, d.rho_dot, h_of("ex1", lambda));
    const ComplexMatrix e1{{-2.0 * I * c * s, 2.0 * I * beta * c2 - 2.0 * lambda * beta * s2},
                           {2.0 * I * beta * c2 + 2.0 * lambda * beta * s2, 2.0 * I * s * c}};
    CHECK(max_diff(a1, e1) < 1e-14);
    CHECK(is_antihermitian_traceless(a1));

    const ComplexMatrix a2 = deviation(d.rho, d.rho_dot, h_of("ex2", lambda));
    const ComplexMatrix e2{{-I * s2, 2.0 * I * beta * c2 + lambda * c2}, {2.0 * I * beta * c2 - lambda * c2, I * s2}};
    CHECK(max_diff(a2, e2) < 1e-14);
    CHECK(is_antihermitian_traceless(a2));
  }

  const ComplexMatrix rho{{0.25, 0.0}, {0.0, 0.75}};
  CHECK(max_abs_entry(deviation(rho, ComplexMatrix(2), h_of("ex1", 1.7))) == 0.0);
  CHECK_THROWS_AS(deviation(rho, ComplexMatrix(2), ComplexMatrix(3)), DimensionError);
}

TEST_CASE("density_integrand examples") {
  CHECK(density_integrand(spec("ex1", {{"beta", 0.5}, {"lambda", 1.0}}), entry("ex1").hamiltonian, kPi / 4) ==
        Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK(density_integrand(spec("ex3", {{"beta", 1.0}, {"lambda", 1.0}}), entry("ex3").hamiltonian, 0.0) ==
        Approx(1.0).epsilon(1e-15));
  for (double t : {0.0, 0.3, 1.1, 2.6}) {
    CHECK(density_integrand(spec("ex2", {{"beta", 0.0}, {"lambda", 1.0}}), entry("ex2").hamiltonian, t) ==
          Approx(1.0).epsilon(1e-14));
  }
  // A pure-state spec goes through psi psi^dagger.
  CHECK(density_integrand(entry("ex1a").trajectory, h_of("ex1", 1.0), kPi / 4) == Approx(std::sqrt(2.0)).epsilon(1e-14));
}

TEST_CASE("closed-form regression of the four families") {
  std::mt19937_64 rng(2718);
  std::uniform_real_distribution<double> ut(-5.0, 5.0), ul(-3.0, 3.0);
  struct Family {
    const char* label;
    double beta_max;
    double (*closed)(double, double, double);
  };
  const Family families[] = {{"ex1", 0.5, oracle::closed_form_first},
                             {"ex2", 0.5, oracle::closed_form_second},
                             {"ex3", 1.0, oracle::closed_form_third},
                             {"ex4", 1.0, oracle::closed_form_fourth}};
  for (const auto& f : families) {
    std::uniform_real_distribution<double> ub(-f.beta_max, f.beta_max);
    for (int k = 0; k < 100; ++k) {
      const double t = ut(rng), beta = ub(rng), lambda = ul(rng);
      const TrajectorySpec s = spec(f.label, {{"beta", beta}, {"lambda", lambda}});
      const double got = density_integrand(s, entry(f.label).hamiltonian, t);
      const double want = f.closed(t, beta, lambda);
      CHECK_MESSAGE(std::abs(got - want) <= 1e-10, f.label, " t=", t, " beta=", beta, " lambda=", lambda);
    }
  }
}

TEST_CASE("optimal gauge rate examples") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> ut(-4.0, 4.0), ul(-3.0, 3.0);
  for (int k = 0; k < 100; ++k) {
    const double t = ut(rng), lambda = ul(rng);
    const ComplexMatrix h = h_of("ex1", lambda);
    const StateSample a = sample_state(entry("ex1a").trajectory, t);
    CHECK(std::abs(optimal_gauge_rate(a.psi, a.psi_dot, h) + lambda * std::cos(2 * t)) <= 1e-12);
    const StateSample b = sample_state(entry("ex3a").trajectory, t);
    CHECK(std::abs(optimal_gauge_rate(b.psi, b.psi_dot, h) - lambda * (t * t - 1) / (t * t + 1)) <= 1e-12);
  }
  const ComplexVector psi{0.6, 0.8}, psi_dot{-0.8, 0.6};
  CHECK(optimal_gauge_rate(psi, psi_dot, ComplexMatrix(2)) == 0.0);
  CHECK_THROWS_AS(optimal_gauge_rate(ComplexVector(2), psi_dot, ComplexMatrix(2)), std::invalid_argument);
}

TEST_CASE("pure_integrand examples") {
  const TrajectorySpec& psi1 = entry("ex1a").trajectory;
  const HamiltonianSpec& h = entry("ex1a").hamiltonian;
  CHECK(pure_integrand(psi1, h, OptimalGauge{}, kPi / 4) == Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK(pure_integrand(psi1, h, ZeroGauge{}, 0.0) == Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK(pure_integrand(entry("ex3a").trajectory, h, OptimalGauge{}, 0.0) == Approx(1.0).epsilon(1e-15));

  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> ut(-4.0, 4.0), ul(-3.0, 3.0), ua(-5.0, 5.0);
  for (int k = 0; k < 100; ++k) {
    const double t = ut(rng), lambda = ul(rng), a = ua(rng);
    const TrajectorySpec s = psi1.with_params({{"lambda", lambda}});
    const StateSample p = sample_state(s, t);
    CHECK(residual_norm(p.psi, p.psi_dot, h_of("ex1", lambda), a) ==
          Approx(oracle::residual_1a(t, lambda, a)).epsilon(1e-13));
    CHECK(pure_integrand(s, h, OptimalGauge{}, t) == Approx(oracle::closed_form_1a(t, lambda)).epsilon(1e-13));
    const TrajectorySpec s3 = entry("ex3a").trajectory.with_params({{"lambda", lambda}});
    CHECK(pure_integrand(s3, h, OptimalGauge{}, t) == Approx(oracle::closed_form_3a(t, lambda)).epsilon(1e-13));
  }
  CHECK_THROWS_AS(pure_integrand(spec("ex1", {}), h, OptimalGauge{}, 0.0), std::invalid_argument);
}

TEST_CASE("gauge optimality on random draws") {
  std::mt19937_64 rng(99);
  std::normal_distribution<double> g;
  for (int k = 0; k < 500; ++k) {
    const std::size_t n = 2 + k % 3;
    ComplexVector psi(n), psi_dot(n);
    for (std::size_t i = 0; i < n; ++i) {
      psi[i] = Complex(g(rng), g(rng));
      psi_dot[i] = Complex(g(rng), g(rng));
    }
    const double np = vector_norm(psi);
    for (std::size_t i = 0; i < n; ++i) psi[i] /= np;
    ComplexMatrix m(n, oracle::random_matrix(rng, n));
    const ComplexMatrix h = Complex(0.5) * (m + adjoint(m));

    const double best = optimal_gauge_rate(psi, psi_dot, h);
    const double at_best = residual_norm(psi, psi_dot, h, best);
    for (double delta : {1e-3, -1e-3, 1.0, -1.0}) {
      CHECK(at_best <= residual_norm(psi, psi_dot, h, best + delta) + 1e-12);
    }
    // For unit psi the rate is Re<psi, i psi_dot> - <psi|H|psi>.
    const double split = std::real(inner(psi, I * psi_dot)) - std::real(inner(psi, h * psi));
    CHECK(best == Approx(split).epsilon(1e-13));
  }
}

TEST_CASE("distance_density examples") {
  const QuadratureConfig four_pi{0.0, 4 * kPi};
  for (double lambda : {0.0, 1.0, 2.5}) {
    const DistanceReport r =
        distance_density(spec("ex1", {{"beta", 0.0}, {"lambda", lambda}}), entry("ex1").hamiltonian, four_pi);
    CHECK(std::abs(r.distance - 8.0) <= 1e-6);
    CHECK(r.error_estimate <= four_pi.abs_tol);
  }
  const DistanceReport r2 = distance_density(spec("ex2", {{"beta", 0.0}, {"lambda", 1.0}}), entry("ex2").hamiltonian,
                                             {0.0, 2 * kPi}, 5);
  CHECK(std::abs(r2.distance - 2 * kPi) <= 1e-6);
  REQUIRE(r2.curve);
  REQUIRE(r2.curve->size() == 5);
  CHECK(r2.curve->front().first == 0.0);
  CHECK(r2.curve->back().first == 2 * kPi);
  for (const auto& [t, v] : *r2.curve) CHECK(v == Approx(1.0).epsilon(1e-14));

  const DistanceReport z = distance_density(stationary_diagonal(), h_of("ex1", 1.3), {0.0, 10.0});
  CHECK(z.distance == 0.0);
  CHECK_FALSE(z.curve);
}

TEST_CASE("distance_pure matches the density functional on the catalog twins") {
  const QuadratureConfig trig{0.0, kPi}, rational{-4.0, 4.0};
  const double d1 = distance_pure(entry("ex1a").trajectory, entry("ex1a").hamiltonian, trig).distance;
  CHECK(std::abs(d1 - distance_density(spec("ex1", {{"beta", 0.5}}), entry("ex1").hamiltonian, trig).distance) <=
        1e-8);
  CHECK(std::abs(d1 - oracle::kEx1aDistanceOverPi) <= 1e-8);

  const double d3 = distance_pure(entry("ex3a").trajectory, entry("ex3a").hamiltonian, rational).distance;
  CHECK(std::abs(d3 - distance_density(spec("ex3", {{"beta", 1.0}}), entry("ex3").hamiltonian, rational).distance) <=
        1e-8);

  const double fixed = distance_pure(entry("ex1a").trajectory, entry("ex1a").hamiltonian, trig,
                                     FixedGauge{parse("-lambda*cos(2*t)")})
                           .distance;
  CHECK(std::abs(fixed - d1) <= 1e-10);

  const double zero = distance_pure(entry("ex1a").trajectory, entry("ex1a").hamiltonian, trig, ZeroGauge{}).distance;
  CHECK(zero > d1 + 0.1);
}

TEST_CASE("compare") {
  for (double lambda : {0.5, 1.0, 2.0}) {
    const Comparison c1 = compare(entry("ex1a").trajectory.with_params({{"lambda", lambda}}),
                                  spec("ex1", {{"beta", 0.5}, {"lambda", lambda}}), h_of("ex1", lambda), {0.0, kPi},
                                  1000);
    CHECK(c1.max_pointwise_gap <= 1e-9);
    CHECK(c1.distance_gap <= 1e-8);
    const Comparison c3 = compare(entry("ex3a").trajectory.with_params({{"lambda", lambda}}),
                                  spec("ex3", {{"beta", 1.0}, {"lambda", lambda}}), h_of("ex3", lambda),
                                  {-4.0, 4.0}, 1000);
    CHECK(c3.max_pointwise_gap <= 1e-9);
    CHECK(c3.distance_gap <= 1e-8);
  }

  const Comparison s = compare(stationary_state(), stationary_state(), ComplexMatrix(2), {0.0, 3.0}, 50);
  CHECK(s.max_pointwise_gap == 0.0);
  CHECK(s.distance_gap == 0.0);

  const Comparison wrong = compare(entry("ex1a").trajectory, spec("ex1", {{"beta", 0.5}}), h_of("ex1", 1.0),
                                   {0.0, kPi}, 100, FixedGauge{parse("lambda*cos(2*t)")});
  CHECK(wrong.max_pointwise_gap > 0.5);
  CHECK(wrong.distance_gap > 0.1);
}

TEST_CASE("exact solutions have zero distance") {
  for (double lambda : {0.0, 0.7, -2.0}) {
    const ComplexMatrix h = h_of("ex1", lambda);
    const TrajectorySpec psi = precessing_state(lambda);
    const TrajectorySpec rho = precessing_density(lambda);
    for (double t : uniform_grid(-2.0, 5.0, 71)) {
      CHECK(density_integrand(stationary_diagonal(), h, t) == 0.0);
      CHECK(density_integrand(rho, h, t) <= 1e-10);
      CHECK(density_integrand(psi, h, t) <= 1e-10);
      CHECK(pure_integrand(psi, h, OptimalGauge{}, t) <= 1e-10);
      CHECK(pure_integrand(psi, h, ZeroGauge{}, t) <= 1e-10);
    }
    CHECK(distance_density(rho, h, {-2.0, 5.0}).distance <= 1e-10);
    CHECK(distance_pure(psi, h, {-2.0, 5.0}).distance <= 1e-10);
  }
  // A global phase is absorbed by the gauge but not by the zero gauge.
  const TrajectorySpec phased(TrajectoryKind::PureState, 1, {Cell::complex("cos(3*t)", "sin(3*t)")}, {}, "phase",
                              {0.0, 1.0});
  CHECK(distance_pure(phased, ComplexMatrix(1), {0.0, 1.0}).distance <= 1e-12);
  CHECK(distance_pure(phased, ComplexMatrix(1), {0.0, 1.0}, ZeroGauge{}).distance == Approx(3.0).epsilon(1e-12));
  CHECK(distance_density(phased, ComplexMatrix(1), {0.0, 1.0}).distance <= 1e-12);
}

TEST_CASE("integrands and distances are nonnegative") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> ut(-5.0, 5.0), ul(-3.0, 3.0);
  for (const auto& e : catalog()) {
    for (int k = 0; k < 50; ++k) {
      const double t = ut(rng);
      const ComplexMatrix h = e.hamiltonian.matrix({{"lambda", ul(rng)}});
      CHECK(density_integrand(e.trajectory, h, t) >= 0.0);
      if (e.trajectory.kind() == TrajectoryKind::PureState) {
        CHECK(pure_integrand(e.trajectory, h, OptimalGauge{}, t) >= 0.0);
        CHECK(pure_integrand(e.trajectory, h, ZeroGauge{}, t) >= 0.0);
      }
    }
    const Interval iv = e.trajectory.interval();
    const DistanceReport r = distance_density(e.trajectory, e.hamiltonian, {iv.t0, iv.t1});
    CHECK(r.distance >= 0.0);
    CHECK(r.error_estimate >= 0.0);
  }
}

TEST_CASE("uniform grid") {
  const auto g = uniform_grid(-1.0, 1.0, 5);
  CHECK(g == std::vector<double>{-1.0, -0.5, 0.0, 0.5, 1.0});
  CHECK(uniform_grid(0.0, kPi, 2) == std::vector<double>{0.0, kPi});
  CHECK_THROWS_AS(uniform_grid(0.0, 1.0, 1), std::invalid_argument);
}
