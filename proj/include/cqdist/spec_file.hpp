#pragma once

#include <filesystem>
#include <string_view>

#include "cqdist/trajectory.hpp"

namespace cqdist {

/// Trajectory spec document:
///
///   {"kind": "density" | "pure_state", "dim": n,
///    "entries": [[{"re": "...", "im": "..."}, ...], ...],   // flat for pure_state
///    "params": {"beta": 0.5, "lambda": 1.0}, "label": "...", "interval": [t0, t1],
///    "hamiltonian": {"entries": [[{"re": 1, "im": 0}, ...], ...], "scale": "lambda"}}
///
/// "im" defaults to zero. "params", "label" and "hamiltonian" are optional;
/// without "hamiltonian" H is the zero matrix. Hamiltonian entries are
/// numbers, not expressions.
struct SpecDocument {
  TrajectorySpec trajectory;
  HamiltonianSpec hamiltonian;
};

/// Throws SpecError on malformed JSON, schema violations, expression syntax
/// errors and trajectory validation failures.
SpecDocument parse_spec_document(std::string_view json_text, Validation validation = Validation::Strict);
SpecDocument load_spec_document(const std::filesystem::path& path, Validation validation = Validation::Strict);

}  // namespace cqdist
