#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "cqdist/cmatrix.hpp"
#include "cqdist/expr.hpp"

namespace cqdist {

enum class TrajectoryKind { Density, PureState };

/// What to do when a sampled state violates its invariants.
enum class Validation { Strict, Warn, Off };

/// One complex entry of a trajectory, as a pair of real expressions.
struct Cell {
  Expr re;
  Expr im;  // zero unless given

  static Cell real(std::string_view re_src);
  static Cell complex(std::string_view re_src, std::string_view im_src);
};

struct Interval {
  double t0 = 0.0;
  double t1 = 1.0;
};

struct DensitySample {
  double t = 0.0;
  ComplexMatrix rho;
  ComplexMatrix rho_dot;
};

struct StateSample {
  double t = 0.0;
  ComplexVector psi;
  ComplexVector psi_dot;
};

using SampledPoint = std::variant<DensitySample, StateSample>;

/// Declarative time-dependent density matrix or state vector. Entries are
/// expressions in t and the spec's parameters. Construction validates the
/// state on a 64-node Chebyshev grid over the interval plus its endpoints;
/// Strict throws SpecError, Warn reports to stderr and proceeds.
class TrajectorySpec {
 public:
  /// cells holds dim*dim entries (Density, row-major) or dim (PureState).
  TrajectorySpec(TrajectoryKind kind, std::size_t dim, std::vector<Cell> cells, ParamMap params,
                 std::string label, Interval interval, Validation validation = Validation::Strict);

  TrajectoryKind kind() const noexcept { return kind_; }
  std::size_t dim() const noexcept { return dim_; }
  const std::vector<Cell>& cells() const noexcept { return cells_; }
  const ParamMap& params() const noexcept { return params_; }
  const std::string& label() const noexcept { return label_; }
  Interval interval() const noexcept { return interval_; }
  Validation validation() const noexcept { return validation_; }

  /// Copy with some parameters replaced or added; re-validated.
  TrajectorySpec with_params(const ParamMap& overrides) const;
  TrajectorySpec with_interval(Interval interval) const;
  TrajectorySpec with_validation(Validation validation) const;

 private:
  void validate() const;

  TrajectoryKind kind_;
  std::size_t dim_;
  std::vector<Cell> cells_;
  ParamMap params_;
  std::string label_;
  Interval interval_;
  Validation validation_;
};

/// Constant Hermitian matrix, optionally scaled by a named parameter.
class HamiltonianSpec {
 public:
  /// Throws SpecError unless the base matrix is Hermitian within 1e-12.
  HamiltonianSpec(ComplexMatrix base, std::optional<std::string> scale_param, std::string label);

  std::size_t dim() const noexcept { return base_.dim(); }
  const ComplexMatrix& base() const noexcept { return base_; }
  const std::optional<std::string>& scale_param() const noexcept { return scale_param_; }
  const std::string& label() const noexcept { return label_; }

  /// The scaled matrix. Throws SpecError if the scale parameter is unbound.
  ComplexMatrix matrix(const ParamMap& params) const;

 private:
  ComplexMatrix base_;
  std::optional<std::string> scale_param_;
  std::string label_;
};

/// Evaluates every cell with eval_dual. Invariants are checked at the
/// spec's validation level.
SampledPoint sample(const TrajectorySpec& spec, double t);
DensitySample sample_density(const TrajectorySpec& spec, double t);
StateSample sample_state(const TrajectorySpec& spec, double t);

/// Density sample for either kind; a PureState spec is mapped through
/// rho = psi psi^dagger and rho_dot = psi_dot psi^dagger + psi psi_dot^dagger.
DensitySample density_sample(const TrajectorySpec& spec, double t);

/// Re Tr(rho^2).
double purity(const ComplexMatrix& rho);

/// Tr(rho^2) for rho = [[a, b], [b*, 1-a]], i.e. 2a^2 + 2|b|^2 + 1 - 2a.
double purity_2x2(double a, Complex b);

enum class Purity { Pure, Impure };

inline constexpr double kPurityTol = 1e-9;

/// Pure iff purity >= 1 - tol. Throws InvalidStateError if purity > 1 + tol.
Purity classify(const ComplexMatrix& rho, double tol = kPurityTol);

/// Largest |b| that keeps [[a, b], [b*, 1-a]] pure: sqrt(a - a^2).
/// Throws std::domain_error for a outside [0, 1].
double pure_bound(double a);

/// psi psi^dagger. Throws InvalidStateError unless |psi| = 1 within 1e-10.
ComplexMatrix density_from_state(const ComplexVector& psi);

/// Product-rule derivative of psi psi^dagger.
ComplexMatrix density_derivative_from_state(const ComplexVector& psi, const ComplexVector& psi_dot);

/// Chebyshev nodes on [t0, t1] followed by both endpoints.
std::vector<double> validation_grid(Interval interval, std::size_t nodes = 64);

}  // namespace cqdist
