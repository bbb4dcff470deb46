#include "cqdist/catalog.hpp"

#include <numbers>

namespace cqdist {

namespace {

constexpr Interval kTrigInterval{0.0, std::numbers::pi};
constexpr Interval kRationalInterval{-4.0, 4.0};

TrajectorySpec trig_family() {
  return TrajectorySpec(TrajectoryKind::Density, 2,
                        {Cell::real("cos(t)^2"), Cell::real("beta*sin(2*t)"),
                         Cell::real("beta*sin(2*t)"), Cell::real("sin(t)^2")},
                        {{"beta", 0.5}, {"lambda", 1.0}}, "trig", kTrigInterval);
}

TrajectorySpec rational_family() {
  return TrajectorySpec(TrajectoryKind::Density, 2,
                        {Cell::real("1/(1+t^2)"), Cell::real("beta*t/(1+t^2)"),
                         Cell::real("beta*t/(1+t^2)"), Cell::real("t^2/(1+t^2)")},
                        {{"beta", 1.0}, {"lambda", 1.0}}, "rational", kRationalInterval);
}

TrajectorySpec relabel(const TrajectorySpec& s, std::string label) {
  return TrajectorySpec(s.kind(), s.dim(), s.cells(), s.params(), std::move(label), s.interval(),
                        s.validation());
}

std::vector<CatalogEntry> build() {
  const TrajectorySpec trig = trig_family();
  const TrajectorySpec rational = rational_family();

  std::vector<CatalogEntry> entries;
  entries.push_back({"ex1", "a = cos^2 t, b = beta sin 2t, H = lambda diag(1,-1)", relabel(trig, "ex1"),
                     sigma_z_hamiltonian(), 0.5, std::nullopt, std::nullopt});
  entries.push_back({"ex2", "a = cos^2 t, b = beta sin 2t, H = lambda [[0,1],[1,0]]", relabel(trig, "ex2"),
                     sigma_x_hamiltonian(), 0.5, std::nullopt, std::nullopt});
  entries.push_back({"ex3", "a = 1/(1+t^2), b = beta t/(1+t^2), H = lambda diag(1,-1)",
                     relabel(rational, "ex3"), sigma_z_hamiltonian(), 1.0, std::nullopt, std::nullopt});
  entries.push_back({"ex4", "a = 1/(1+t^2), b = beta t/(1+t^2), H = lambda [[0,1],[1,0]]",
                     relabel(rational, "ex4"), sigma_x_hamiltonian(), 1.0, std::nullopt, std::nullopt});

  entries.push_back({"ex1a-psi", "psi = (cos t, sin t), H = lambda diag(1,-1)",
                     TrajectorySpec(TrajectoryKind::PureState, 2, {Cell::real("cos(t)"), Cell::real("sin(t)")},
                                    {{"lambda", 1.0}}, "ex1a-psi", kTrigInterval),
                     sigma_z_hamiltonian(), std::nullopt, "ex1", 0.5});
  entries.push_back({"ex3a-psi", "psi = (1, t)/sqrt(1+t^2), H = lambda diag(1,-1)",
                     TrajectorySpec(TrajectoryKind::PureState, 2,
                                    {Cell::real("1/sqrt(1+t^2)"), Cell::real("t/sqrt(1+t^2)")},
                                    {{"lambda", 1.0}}, "ex3a-psi", kRationalInterval),
                     sigma_z_hamiltonian(), std::nullopt, "ex3", 1.0});
  return entries;
}

}  // namespace

HamiltonianSpec sigma_z_hamiltonian() {
  return HamiltonianSpec(ComplexMatrix{{1.0, 0.0}, {0.0, -1.0}}, "lambda", "lambda*diag(1,-1)");
}

HamiltonianSpec sigma_x_hamiltonian() {
  return HamiltonianSpec(ComplexMatrix{{0.0, 1.0}, {1.0, 0.0}}, "lambda", "lambda*[[0,1],[1,0]]");
}

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = build();
  return entries;
}

const CatalogEntry* find_entry(std::string_view label) {
  if (label == "ex1a") label = "ex1a-psi";
  if (label == "ex3a") label = "ex3a-psi";
  for (const auto& e : catalog())
    if (e.label == label) return &e;
  return nullptr;
}

}  // namespace cqdist
