#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cqdist/trajectory.hpp"

namespace cqdist {

/// A built-in trajectory/Hamiltonian pair.
///
/// Density entries ex1..ex4 are the families rho = [[a, b], [b, 1-a]] with
///   ex1, ex2: a = cos^2 t,       b = beta sin 2t       (pure at |beta| = 1/2)
///   ex3, ex4: a = 1/(1 + t^2),   b = beta t/(1 + t^2)  (pure at |beta| = 1)
/// and H = lambda diag(1, -1) for ex1/ex3, H = lambda [[0, 1], [1, 0]] for ex2/ex4.
///
/// ex1a-psi and ex3a-psi are the state vectors whose projectors are the pure
/// members of ex1 and ex3; `twin` names that density entry and the beta
/// which makes it pure.
struct CatalogEntry {
  std::string label;
  std::string description;
  TrajectorySpec trajectory;
  HamiltonianSpec hamiltonian;
  std::optional<double> pure_beta;
  std::optional<std::string> twin;
  std::optional<double> twin_beta;
};

/// ex1, ex2, ex3, ex4, ex1a-psi, ex3a-psi, in that order.
const std::vector<CatalogEntry>& catalog();

/// Looks up a label; "ex1a" and "ex3a" resolve to their pure-state twins.
const CatalogEntry* find_entry(std::string_view label);

HamiltonianSpec sigma_z_hamiltonian();
HamiltonianSpec sigma_x_hamiltonian();

}  // namespace cqdist
