#pragma once

// Reference computations for the tests. Everything here is written against
// plain std::complex arrays or closed-form algebra so it stays independent
// of the library code it checks.

#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;

/// Romberg integration: trapezoid refinements with Richardson tableau,
/// stopping when successive diagonal entries agree to tol.
inline double romberg(const std::function<double(double)>& f, double a, double b, double tol, int max_levels = 24) {
  std::vector<double> prev, cur;
  double h = b - a;
  prev.push_back(0.5 * h * (f(a) + f(b)));
  for (int k = 1; k < max_levels; ++k) {
    h *= 0.5;
    double sum = 0.0;
    const long n = 1L << (k - 1);
    for (long i = 0; i < n; ++i) sum += f(a + (2 * i + 1) * h);
    cur.assign(k + 1, 0.0);
    cur[0] = 0.5 * prev[0] + h * sum;
    double factor = 1.0;
    for (int j = 1; j <= k; ++j) {
      factor *= 4.0;
      cur[j] = cur[j - 1] + (cur[j - 1] - prev[j - 1]) / (factor - 1.0);
    }
    if (k > 3 && std::abs(cur[k] - prev[k - 1]) <= tol) return cur[k];
    prev.swap(cur);
  }
  return prev.back();
}

/// Largest singular value of a row-major n x n matrix by power iteration on
/// M^dagger M, stopped when the Rayleigh quotient settles to tol.
inline double power_iteration_norm(const std::vector<cplx>& m, std::size_t n, double tol = 1e-12,
                                   int max_iter = 200000) {
  std::vector<cplx> g(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) g[i * n + j] += std::conj(m[k * n + i]) * m[k * n + j];
  std::vector<cplx> x(n), y(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = cplx(1.0 + 0.1 * static_cast<double>(i), 0.3 - 0.05 * static_cast<double>(i));
  double lambda = 0.0;
  for (int it = 0; it < max_iter; ++it) {
    double nrm = 0.0;
    for (std::size_t i = 0; i < n; ++i) nrm += std::norm(x[i]);
    nrm = std::sqrt(nrm);
    if (nrm == 0.0) return 0.0;
    for (auto& v : x) v /= nrm;
    for (std::size_t i = 0; i < n; ++i) {
      y[i] = 0.0;
      for (std::size_t j = 0; j < n; ++j) y[i] += g[i * n + j] * x[j];
    }
    double rq = 0.0;
    for (std::size_t i = 0; i < n; ++i) rq += std::real(std::conj(x[i]) * y[i]);
    const bool done = it > 10 && std::abs(rq - lambda) <= tol * std::max(1.0, rq);
    lambda = rq;
    x.swap(y);
    if (done) break;
  }
  return std::sqrt(std::max(0.0, lambda));
}

/// Richardson-extrapolated central difference.
inline double richardson_derivative(const std::function<double(double)>& f, double t) {
  const double h = 1e-6 * std::max(1.0, std::abs(t));
  const double d1 = (f(t + h) - f(t - h)) / (2.0 * h);
  const double d2 = (f(t + 0.5 * h) - f(t - 0.5 * h)) / h;
  return (4.0 * d2 - d1) / 3.0;
}

/// Random n x n anti-Hermitian traceless matrix, row-major.
inline std::vector<cplx> random_antihermitian_traceless(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> g;
  std::vector<cplx> m(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    m[i * n + i] = cplx(0.0, g(rng));
    for (std::size_t j = i + 1; j < n; ++j) {
      const cplx z(g(rng), g(rng));
      m[i * n + j] = z;
      m[j * n + i] = -std::conj(z);
    }
  }
  cplx tr = 0.0;
  for (std::size_t i = 0; i < n; ++i) tr += m[i * n + i];
  for (std::size_t i = 0; i < n; ++i) m[i * n + i] -= tr / static_cast<double>(n);
  return m;
}

inline std::vector<cplx> random_matrix(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> g;
  std::vector<cplx> m(n * n);
  for (auto& z : m) z = cplx(g(rng), g(rng));
  return m;
}

// Hand-derived integrands ||A(t)|| of the four density families.
inline double closed_form_first(double t, double beta, double lambda) {
  const double c = std::cos(t), s = std::sin(t), c2 = std::cos(2 * t), s2 = std::sin(2 * t);
  return std::sqrt(4 * c * c * s * s + 4 * beta * beta * c2 * c2 + 4 * lambda * lambda * beta * beta * s2 * s2);
}

inline double closed_form_second(double t, double beta, double lambda) {
  const double c2 = std::cos(2 * t), s2 = std::sin(2 * t);
  return std::sqrt(s2 * s2 + c2 * c2 * (4 * beta * beta + lambda * lambda));
}

inline double closed_form_third(double t, double beta, double lambda) {
  const double u = 1 + t * t, w = 1 - t * t;
  return std::sqrt(4 * t * t + beta * beta * w * w + 4 * lambda * lambda * beta * beta * t * t * u * u) / (u * u);
}

inline double closed_form_fourth(double t, double beta, double lambda) {
  const double u = 1 + t * t, w = 1 - t * t, q = t * t * t * t - 1;
  return std::sqrt(4 * t * t + beta * beta * w * w + lambda * lambda * q * q) / (u * u);
}

/// Pure member of ex1: [1 + 4 lambda^2 cos^2 t sin^2 t]^(1/2).
inline double closed_form_1a(double t, double lambda) {
  const double c = std::cos(t), s = std::sin(t);
  return std::sqrt(1 + 4 * lambda * lambda * c * c * s * s);
}

/// Pure member of ex3: (1 + 4 lambda^2 t^2)^(1/2) / (1 + t^2).
inline double closed_form_3a(double t, double lambda) {
  return std::sqrt(1 + 4 * lambda * lambda * t * t) / (1 + t * t);
}

/// Residual norm for psi = (cos t, sin t), H = lambda diag(1,-1) at a given
/// phase rate: [1 + a^2 + lambda^2 + 2 a lambda cos 2t]^(1/2).
inline double residual_1a(double t, double lambda, double alpha_dot) {
  return std::sqrt(1 + alpha_dot * alpha_dot + lambda * lambda + 2 * alpha_dot * lambda * std::cos(2 * t));
}

/// Independent Romberg value of the ex1 (beta = 1/2, lambda = 1) distance
/// over [0, pi], frozen before the library existed.
inline constexpr double kEx1aDistanceOverPi = 3.8201977890277120;

}  // namespace oracle
