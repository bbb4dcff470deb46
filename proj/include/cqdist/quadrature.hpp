#pragma once

#include <cstddef>
#include <functional>

namespace cqdist {

struct QuadratureConfig {
  double t0 = 0.0;
  double t1 = 1.0;
  double abs_tol = 1e-9;
  int max_depth = 40;
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::size_t evaluations = 0;
};

/// Adaptive Simpson quadrature. The interval is first cut into 16 equal
/// panels so that integrands sampled only at their zeros by a single
/// 5-point rule (e.g. |sin 2t| on [0, 4 pi]) are not accepted as 0. A
/// subinterval [a, b] is accepted when |S_fine - S_coarse| <= 15 tol_ab,
/// tol_ab = abs_tol (b - a)/(t1 - t0); the Richardson term
/// (S_fine - S_coarse)/15 is added to the value.
///
/// Subintervals are visited depth-first, left to right, so results are
/// reproducible bit for bit. Throws QuadratureError if a subinterval is
/// still rejected at max_depth (carrying the worst such subinterval) or if
/// f returns a non-finite value; throws std::invalid_argument on a bad config.
QuadratureResult integrate(const std::function<double(double)>& f, const QuadratureConfig& cfg);

}  // namespace cqdist
