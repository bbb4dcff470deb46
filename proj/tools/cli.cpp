#include "cli.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <stdexcept>

#include <fmt/core.h>
#include <CLI11.hpp>
#include <json.hpp>

#include "cqdist/catalog.hpp"
#include "cqdist/distance.hpp"
#include "cqdist/error.hpp"
#include "cqdist/spec_file.hpp"

namespace cqdist::cli {

namespace {

namespace fs = std::filesystem;

constexpr double kCompareTol = 1e-8;
constexpr std::size_t kDefaultCurveSamples = 101;
constexpr std::size_t kDefaultCompareSamples = 1000;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string example;
  std::string spec_path;
  std::vector<std::string> sets;
  std::string interval;
  double tol = 1e-9;
  int max_depth = 40;
  std::size_t samples = 0;
  std::string gauge = "optimal";
  std::string functional = "auto";
  std::vector<std::string> sweeps;
  bool json = false;
  std::string out;
};

enum class Functional { Density, Pure };

struct Source {
  std::string name;
  TrajectorySpec trajectory;
  HamiltonianSpec hamiltonian;
  const CatalogEntry* entry = nullptr;
};

double parse_number(const std::string& text, const std::string& what) {
  if (text.empty()) throw UsageError(fmt::format("{}: empty value", what));
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (end != text.c_str() + text.size() || errno == ERANGE || !std::isfinite(v)) {
    throw UsageError(fmt::format("{}: '{}' is not a finite decimal number", what, text));
  }
  return v;
}

std::pair<std::string, std::string> split_assignment(const std::string& text, const char* flag) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0) throw UsageError(fmt::format("{} expects NAME=VALUE, got '{}'", flag, text));
  return {text.substr(0, eq), text.substr(eq + 1)};
}

Interval parse_interval(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw UsageError(fmt::format("--interval expects T0:T1, got '{}'", text));
  const Interval iv{parse_number(text.substr(0, colon), "--interval"), parse_number(text.substr(colon + 1), "--interval")};
  if (!(iv.t0 < iv.t1)) throw UsageError(fmt::format("--interval needs T0 < T1, got '{}'", text));
  return iv;
}

GaugeChoice parse_gauge(const std::string& text) {
  if (text == "optimal") return OptimalGauge{};
  if (text == "zero") return ZeroGauge{};
  if (text.rfind("expr:", 0) == 0) {
    try {
      return FixedGauge{parse(text.substr(5))};
    } catch (const ParseError& e) {
      throw UsageError(fmt::format("--gauge: {}", e.what()));
    }
  }
  throw UsageError(fmt::format("--gauge must be optimal, zero or expr:\"...\", got '{}'", text));
}

bool knows_param(const Source& s, const std::string& name) {
  return s.trajectory.params().contains(name) || (s.hamiltonian.scale_param() && *s.hamiltonian.scale_param() == name);
}

ParamMap parse_overrides(const std::vector<std::string>& sets, const Source& s) {
  ParamMap overrides;
  for (const auto& text : sets) {
    auto [name, value] = split_assignment(text, "--set");
    if (!knows_param(s, name)) throw UsageError(fmt::format("--set: '{}' has no parameter '{}'", s.name, name));
    overrides[name] = parse_number(value, "--set " + name);
  }
  return overrides;
}

Source load_source(const Options& o) {
  std::optional<Source> src;
  if (!o.example.empty()) {
    const CatalogEntry* e = find_entry(o.example);
    if (e == nullptr) throw UsageError(fmt::format("unknown example '{}' (see 'cqdist list')", o.example));
    src.emplace(Source{e->label, e->trajectory, e->hamiltonian, e});
  } else if (!o.spec_path.empty()) {
    SpecDocument doc = load_spec_document(o.spec_path);
    src.emplace(Source{doc.trajectory.label(), std::move(doc.trajectory), std::move(doc.hamiltonian), nullptr});
  } else {
    throw UsageError("one of --example or --spec is required");
  }
  const ParamMap overrides = parse_overrides(o.sets, *src);
  const Interval iv = o.interval.empty() ? src->trajectory.interval() : parse_interval(o.interval);
  // Each step re-validates; the interval goes first so parameters are
  // checked over the range actually integrated.
  if (!o.interval.empty()) src->trajectory = src->trajectory.with_interval(iv);
  if (!overrides.empty()) src->trajectory = src->trajectory.with_params(overrides);
  if (src->hamiltonian.dim() != src->trajectory.dim()) {
    throw SpecError("Hamiltonian and trajectory dimensions differ");
  }
  return std::move(*src);
}

Functional pick_functional(const Options& o, const Source& s) {
  const bool pure_spec = s.trajectory.kind() == TrajectoryKind::PureState;
  if (o.functional == "auto") return pure_spec ? Functional::Pure : Functional::Density;
  if (o.functional == "density") return Functional::Density;
  if (o.functional == "pure") {
    if (!pure_spec) throw UsageError("--functional pure needs a pure-state source");
    return Functional::Pure;
  }
  throw UsageError(fmt::format("--functional must be auto, density or pure, got '{}'", o.functional));
}

QuadratureConfig make_config(const Options& o, const TrajectorySpec& spec) {
  if (!(o.tol > 0.0)) throw UsageError("--tol must be positive");
  if (o.max_depth < 1) throw UsageError("--max-depth must be positive");
  return {spec.interval().t0, spec.interval().t1, o.tol, o.max_depth};
}

std::string format_params(const ParamMap& p) {
  std::string s;
  for (const auto& [name, value] : p) {
    if (!s.empty()) s += ", ";
    s += fmt::format("{}={}", name, value);
  }
  return s.empty() ? "(none)" : s;
}

nlohmann::json params_json(const ParamMap& p) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [name, value] : p) j[name] = value;
  return j;
}

DistanceReport compute_distance(const Source& s, Functional f, const GaugeChoice& gauge, const QuadratureConfig& cfg) {
  const ComplexMatrix h = s.hamiltonian.matrix(s.trajectory.params());
  if (f == Functional::Pure) return distance_pure(s.trajectory, h, cfg, gauge);
  return distance_density(s.trajectory, h, cfg);
}

const char* functional_name(Functional f) { return f == Functional::Pure ? "pure" : "density"; }

int cmd_list(std::string& report) {
  for (const auto& e : catalog()) {
    const Interval iv = e.trajectory.interval();
    const bool pure_state = e.trajectory.kind() == TrajectoryKind::PureState;
    report += fmt::format("{:<9} {:<10} {}\n", e.label, pure_state ? "pure_state" : "density", e.description);
    report += fmt::format("          params: {}; interval [{}, {}]\n", format_params(e.trajectory.params()), iv.t0, iv.t1);
    if (e.pure_beta) {
      report += fmt::format("          pure at beta={} (impure for |beta| < {})\n", *e.pure_beta, *e.pure_beta);
    }
    if (e.twin) report += fmt::format("          pure-state twin of {} at beta={}\n", *e.twin, *e.twin_beta);
  }
  return kOk;
}

int cmd_compute(const Options& o, std::string& report) {
  const Source s = load_source(o);
  const Functional f = pick_functional(o, s);
  const GaugeChoice gauge = parse_gauge(o.gauge);
  const QuadratureConfig cfg = make_config(o, s.trajectory);
  const DistanceReport r = compute_distance(s, f, gauge, cfg);
  if (o.json) {
    nlohmann::json j{{"command", "compute"},
                     {"distance", r.distance},
                     {"error_estimate", r.error_estimate},
                     {"evaluations", r.evaluations},
                     {"params", params_json(s.trajectory.params())}};
    report = j.dump() + "\n";
  } else {
    report += fmt::format("source: {}\n", s.name);
    report += fmt::format("functional: {}\n", functional_name(f));
    report += fmt::format("params: {}\n", format_params(s.trajectory.params()));
    report += fmt::format("interval: [{}, {}]\n", cfg.t0, cfg.t1);
    report += fmt::format("distance: {:.12f}\n", r.distance);
    report += fmt::format("error_estimate: {:.3e}\n", r.error_estimate);
    report += fmt::format("evaluations: {}\n", r.evaluations);
  }
  return kOk;
}

int cmd_curve(const Options& o, std::string& report) {
  if (o.json) throw UsageError("curve writes CSV; --json is not supported");
  const Source s = load_source(o);
  const Functional f = pick_functional(o, s);
  const GaugeChoice gauge = parse_gauge(o.gauge);
  const std::size_t n = o.samples == 0 ? kDefaultCurveSamples : o.samples;
  if (n < 2) throw UsageError("--samples must be at least 2");
  const ComplexMatrix h = s.hamiltonian.matrix(s.trajectory.params());
  const Interval iv = s.trajectory.interval();
  report = "t,value\n";
  for (double t : uniform_grid(iv.t0, iv.t1, n)) {
    const double v = f == Functional::Pure ? pure_integrand(s.trajectory, h, gauge, t)
                                           : density_integrand(s.trajectory, h, t);
    report += fmt::format("{:.16e},{:.16e}\n", t, v);
  }
  return kOk;
}

int cmd_compare(const Options& o, std::string& report) {
  const Source s = load_source(o);
  if (s.trajectory.kind() != TrajectoryKind::PureState) {
    throw UsageError(fmt::format("compare needs a pure-state source; '{}' is a density trajectory", s.name));
  }
  const GaugeChoice gauge = parse_gauge(o.gauge);
  const std::size_t n = o.samples == 0 ? kDefaultCompareSamples : o.samples;
  if (n < 2) throw UsageError("--samples must be at least 2");
  const QuadratureConfig cfg = make_config(o, s.trajectory);

  std::string twin_name = "psi psi^dagger of " + s.name;
  std::optional<TrajectorySpec> twin;
  if (s.entry != nullptr && s.entry->twin) {
    const CatalogEntry* te = find_entry(*s.entry->twin);
    ParamMap p{{"beta", *s.entry->twin_beta}};
    for (const auto& [name, value] : s.trajectory.params())
      if (te->trajectory.params().contains(name)) p[name] = value;
    twin = te->trajectory.with_interval(s.trajectory.interval()).with_params(p);
    twin_name = fmt::format("{} ({})", te->label, format_params(twin->params()));
  } else {
    twin = s.trajectory;
  }

  const ComplexMatrix h = s.hamiltonian.matrix(s.trajectory.params());
  const Comparison c = compare(s.trajectory, *twin, h, cfg, n, gauge);
  const bool pass = c.max_pointwise_gap <= kCompareTol && c.distance_gap <= kCompareTol;

  if (o.json) {
    nlohmann::json j{{"command", "compare"},
                     {"distance", c.pure.distance},
                     {"error_estimate", c.pure.error_estimate},
                     {"evaluations", c.pure.evaluations},
                     {"params", params_json(s.trajectory.params())},
                     {"density_distance", c.density.distance},
                     {"max_pointwise_gap", c.max_pointwise_gap},
                     {"distance_gap", c.distance_gap},
                     {"pass", pass}};
    report = j.dump() + "\n";
  } else {
    report += fmt::format("source: {}\n", s.name);
    report += fmt::format("density twin: {}\n", twin_name);
    report += fmt::format("interval: [{}, {}]\n", cfg.t0, cfg.t1);
    report += fmt::format("samples: {}\n", n);
    report += fmt::format("pure distance: {:.12f}\n", c.pure.distance);
    report += fmt::format("density distance: {:.12f}\n", c.density.distance);
    report += fmt::format("max_pointwise_gap: {:.3e}\n", c.max_pointwise_gap);
    report += fmt::format("distance_gap: {:.3e}\n", c.distance_gap);
    report += fmt::format("result: {}\n", pass ? "PASS" : "FAIL");
  }
  return pass ? kOk : kComparisonFailed;
}

struct SweepAxis {
  std::string name;
  std::vector<double> values;
};

SweepAxis parse_sweep(const std::string& text, const Source& s) {
  auto [name, range] = split_assignment(text, "--sweep");
  if (!knows_param(s, name)) throw UsageError(fmt::format("--sweep: '{}' has no parameter '{}'", s.name, name));
  std::vector<std::string> parts;
  std::size_t from = 0;
  for (;;) {
    const auto colon = range.find(':', from);
    parts.push_back(range.substr(from, colon - from));
    if (colon == std::string::npos) break;
    from = colon + 1;
  }
  SweepAxis axis{name, {}};
  if (parts.size() == 1) {
    axis.values.push_back(parse_number(parts[0], "--sweep " + name));
    return axis;
  }
  if (parts.size() != 3) throw UsageError(fmt::format("--sweep expects NAME=START:STOP:STEP, got '{}'", text));
  const double start = parse_number(parts[0], "--sweep " + name);
  const double stop = parse_number(parts[1], "--sweep " + name);
  const double step = parse_number(parts[2], "--sweep " + name);
  if (!(step > 0.0)) throw UsageError("--sweep step must be positive");
  if (start > stop) throw UsageError(fmt::format("--sweep range '{}' is empty", range));
  const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
  for (std::size_t k = 0; k < count; ++k) axis.values.push_back(start + step * static_cast<double>(k));
  return axis;
}

int cmd_sweep(const Options& o, std::string& report) {
  if (o.json) throw UsageError("sweep writes CSV; --json is not supported");
  const Source s = load_source(o);
  if (o.sweeps.empty() || o.sweeps.size() > 2) throw UsageError("sweep needs one or two --sweep NAME=START:STOP:STEP");
  std::vector<SweepAxis> axes;
  for (const auto& text : o.sweeps) axes.push_back(parse_sweep(text, s));
  if (axes.size() == 2 && axes[0].name == axes[1].name) throw UsageError("--sweep parameters must differ");

  const Functional f = pick_functional(o, s);
  const GaugeChoice gauge = parse_gauge(o.gauge);
  const QuadratureConfig cfg = make_config(o, s.trajectory);

  ParamMap columns = s.trajectory.params();
  for (const auto& a : axes) columns[a.name] = a.values.front();
  report.clear();
  for (const auto& [name, value] : columns) report += name + ",";
  report += "distance\n";

  const std::size_t inner = axes.size() == 2 ? axes[1].values.size() : 1;
  for (std::size_t i = 0; i < axes[0].values.size(); ++i) {
    for (std::size_t j = 0; j < inner; ++j) {
      ParamMap point{{axes[0].name, axes[0].values[i]}};
      if (axes.size() == 2) point[axes[1].name] = axes[1].values[j];
      Source at{s.name, s.trajectory.with_params(point), s.hamiltonian, s.entry};
      const DistanceReport r = compute_distance(at, f, gauge, cfg);
      for (const auto& [name, value] : at.trajectory.params()) report += fmt::format("{:.16e},", value);
      report += fmt::format("{:.16e}\n", r.distance);
    }
  }
  return kOk;
}

void emit(const std::string& text, const Options& o, std::ostream& out) {
  if (o.out.empty()) {
    out << text;
    out.flush();
    return;
  }
  const fs::path target(o.out);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw UsageError(fmt::format("cannot write '{}'", tmp.string()));
    f << text;
    f.close();
    if (!f) throw UsageError(fmt::format("cannot write '{}'", tmp.string()));
  }
  fs::rename(tmp, target);
}

void add_source_options(CLI::App* sub, Options& o) {
  auto* ex = sub->add_option("--example", o.example, "Catalog label (see 'list')");
  auto* sp = sub->add_option("--spec", o.spec_path, "Trajectory spec JSON file");
  ex->excludes(sp);
  sub->add_option("--set", o.sets, "Parameter override NAME=VALUE")->allow_extra_args(false);
  sub->add_option("--interval", o.interval, "Integration interval T0:T1");
  sub->add_option("--tol", o.tol, "Absolute quadrature tolerance");
  sub->add_option("--max-depth", o.max_depth, "Adaptive quadrature depth limit");
  sub->add_option("--gauge", o.gauge, "optimal | zero | expr:\"...\" (pure-state functional)");
  sub->add_option("--functional", o.functional, "auto | density | pure");
  sub->add_option("--out", o.out, "Write output to FILE instead of stdout");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Distance between classical and quantum trajectories", "cqdist"};
  app.require_subcommand(1);

  auto* list = app.add_subcommand("list", "List the built-in example catalog");
  auto* compute = app.add_subcommand("compute", "Integrate the distance functional");
  auto* curve = app.add_subcommand("curve", "Emit the integrand on a uniform grid as CSV");
  auto* comp = app.add_subcommand("compare", "Compare the pure-state and density functionals");
  auto* sweep = app.add_subcommand("sweep", "Distance over a parameter grid as CSV");
  list->add_option("--out", o.out, "Write output to FILE instead of stdout");
  for (auto* sub : {compute, curve, comp, sweep}) add_source_options(sub, o);
  for (auto* sub : {compute, comp}) sub->add_flag("--json", o.json, "Emit a JSON report");
  for (auto* sub : {curve, comp}) sub->add_option("--samples", o.samples, "Number of grid points");
  sweep->add_option("--sweep", o.sweeps, "Swept parameter NAME=START:STOP:STEP or NAME=VALUE")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << "run 'cqdist --help' for usage\n";
    return kBadArguments;
  }

  std::string report;
  try {
    int code = kOk;
    if (list->parsed()) code = cmd_list(report);
    else if (compute->parsed()) code = cmd_compute(o, report);
    else if (curve->parsed()) code = cmd_curve(o, report);
    else if (comp->parsed()) code = cmd_compare(o, report);
    else if (sweep->parsed()) code = cmd_sweep(o, report);
    emit(report, o, out);
    return code;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kBadArguments;
  } catch (const SpecError& e) {
    err << "spec error: " << e.what() << "\n";
    return kSpecInvalid;
  } catch (const InvalidStateError& e) {
    err << "spec error: " << e.what() << "\n";
    return kSpecInvalid;
  } catch (const QuadratureError& e) {
    err << "numerical error: " << e.what() << "\n";
    return kNumericalFailure;
  } catch (const DomainError& e) {
    err << "numerical error: " << e.what() << "\n";
    return kNumericalFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kBadArguments;
  }
}

}  // namespace cqdist::cli
