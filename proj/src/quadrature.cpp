#include "cqdist/quadrature.hpp"

#include <cmath>
#include <optional>
#include <stdexcept>

#include <fmt/core.h>

#include "cqdist/error.hpp"

namespace cqdist {

namespace {

constexpr int kInitialPanels = 16;

struct Failure {
  double a;
  double b;
  double excess;
};

class Simpson {
 public:
  Simpson(const std::function<double(double)>& f, const QuadratureConfig& cfg)
      : f_(f), cfg_(cfg), tol_per_length_(cfg.abs_tol / (cfg.t1 - cfg.t0)) {}

  double eval(double t) {
    const double y = f_(t);
    ++result_.evaluations;
    if (!std::isfinite(y)) throw QuadratureError(fmt::format("integrand is non-finite ({})", y), t, t);
    return y;
  }

  void panel(double a, double b, double fa, double fb) {
    const double m = 0.5 * (a + b);
    const double fm = eval(m);
    refine(a, b, fa, fm, fb, simpson(a, b, fa, fm, fb), 1);
  }

  QuadratureResult finish() {
    if (worst_) {
      throw QuadratureError(fmt::format("tolerance not met within max_depth {}", cfg_.max_depth), worst_->a,
                            worst_->b);
    }
    return result_;
  }

 private:
  static double simpson(double a, double b, double fa, double fm, double fb) {
    return (b - a) * (fa + 4.0 * fm + fb) / 6.0;
  }

  void refine(double a, double b, double fa, double fm, double fb, double whole, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = eval(lm);
    const double frm = eval(rm);
    const double left = simpson(a, m, fa, flm, fm);
    const double right = simpson(m, b, fm, frm, fb);
    const double fine = left + right;
    const double delta = fine - whole;
    const double local_tol = tol_per_length_ * (b - a);

    if (std::abs(delta) <= 15.0 * local_tol) {
      accept(fine, delta);
      return;
    }
    if (depth >= cfg_.max_depth) {
      const double excess = std::abs(delta) - 15.0 * local_tol;
      if (!worst_ || excess > worst_->excess) worst_ = Failure{a, b, excess};
      accept(fine, delta);
      return;
    }
    refine(a, m, fa, flm, fm, left, depth + 1);
    refine(m, b, fm, frm, fb, right, depth + 1);
  }

  void accept(double fine, double delta) {
    result_.value += fine + delta / 15.0;
    result_.error_estimate += std::abs(delta) / 15.0;
  }

  const std::function<double(double)>& f_;
  const QuadratureConfig& cfg_;
  double tol_per_length_;
  QuadratureResult result_;
  std::optional<Failure> worst_;
};

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, const QuadratureConfig& cfg) {
  if (!(cfg.t0 < cfg.t1) || !std::isfinite(cfg.t0) || !std::isfinite(cfg.t1)) {
    throw std::invalid_argument(fmt::format("integrate: invalid interval [{}, {}]", cfg.t0, cfg.t1));
  }
  if (!(cfg.abs_tol > 0.0)) throw std::invalid_argument("integrate: abs_tol must be positive");
  if (cfg.max_depth < 1) throw std::invalid_argument("integrate: max_depth must be positive");

  Simpson s(f, cfg);
  const double width = (cfg.t1 - cfg.t0) / kInitialPanels;
  double a = cfg.t0;
  double fa = s.eval(a);
  for (int k = 0; k < kInitialPanels; ++k) {
    const double b = k + 1 == kInitialPanels ? cfg.t1 : cfg.t0 + width * (k + 1);
    const double fb = s.eval(b);
    s.panel(a, b, fa, fb);
    a = b;
    fa = fb;
  }
  return s.finish();
}

}  // namespace cqdist
