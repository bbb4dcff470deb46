#include "cqdist/spec_file.hpp"

#include <fstream>
#include <sstream>

#include <fmt/core.h>
#include <json.hpp>

#include "cqdist/error.hpp"

namespace cqdist {

namespace {

using nlohmann::json;

const json& require(const json& obj, const char* key) {
  const auto it = obj.find(key);
  if (it == obj.end()) throw SpecError(fmt::format("spec is missing \"{}\"", key));
  return *it;
}

Expr parse_cell_expr(const json& cell, const char* key, const char* where) {
  const auto it = cell.find(key);
  if (it == cell.end()) return Expr::constant(0.0);
  if (!it->is_string()) throw SpecError(fmt::format("{}: \"{}\" must be an expression string", where, key));
  try {
    return parse(it->get<std::string>());
  } catch (const ParseError& e) {
    throw SpecError(fmt::format("{}: \"{}\": {}", where, key, e.what()));
  }
}

Cell parse_cell(const json& cell, const std::string& where) {
  if (!cell.is_object() || !cell.contains("re")) {
    throw SpecError(fmt::format("{}: entry must be an object with \"re\"", where));
  }
  return {parse_cell_expr(cell, "re", where.c_str()), parse_cell_expr(cell, "im", where.c_str())};
}

double number_field(const json& cell, const char* key, const std::string& where) {
  const auto it = cell.find(key);
  if (it == cell.end()) return 0.0;
  if (!it->is_number()) throw SpecError(fmt::format("{}: \"{}\" must be a number", where, key));
  return it->get<double>();
}

HamiltonianSpec parse_hamiltonian(const json& h, std::size_t dim) {
  if (!h.is_object()) throw SpecError("\"hamiltonian\" must be an object");
  const json& rows = require(h, "entries");
  if (!rows.is_array() || rows.size() != dim) {
    throw SpecError(fmt::format("hamiltonian entries must be a {}x{} array", dim, dim));
  }
  std::vector<Complex> values;
  values.reserve(dim * dim);
  for (std::size_t i = 0; i < dim; ++i) {
    if (!rows[i].is_array() || rows[i].size() != dim) {
      throw SpecError(fmt::format("hamiltonian row {} must have {} entries", i, dim));
    }
    for (std::size_t j = 0; j < dim; ++j) {
      const std::string where = fmt::format("hamiltonian[{}][{}]", i, j);
      const json& cell = rows[i][j];
      if (!cell.is_object()) throw SpecError(where + ": entry must be an object");
      values.emplace_back(number_field(cell, "re", where), number_field(cell, "im", where));
    }
  }
  std::optional<std::string> scale;
  if (const auto it = h.find("scale"); it != h.end()) {
    if (!it->is_string()) throw SpecError("hamiltonian \"scale\" must be a parameter name");
    scale = it->get<std::string>();
  }
  std::string label = h.value("label", std::string("H"));
  try {
    return HamiltonianSpec(ComplexMatrix(dim, std::move(values)), std::move(scale), std::move(label));
  } catch (const std::invalid_argument& e) {
    throw SpecError(e.what());
  }
}

}  // namespace

SpecDocument parse_spec_document(std::string_view json_text, Validation validation) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw SpecError(fmt::format("spec is not valid JSON: {}", e.what()));
  }
  if (!doc.is_object()) throw SpecError("spec must be a JSON object");

  try {
    const std::string kind_text = require(doc, "kind").get<std::string>();
    TrajectoryKind kind;
    if (kind_text == "density") {
      kind = TrajectoryKind::Density;
    } else if (kind_text == "pure_state") {
      kind = TrajectoryKind::PureState;
    } else {
      throw SpecError(fmt::format("unknown kind \"{}\"", kind_text));
    }

    const json& dim_json = require(doc, "dim");
    if (!dim_json.is_number_integer() || dim_json.get<long long>() < 1) {
      throw SpecError("\"dim\" must be a positive integer");
    }
    const auto dim = dim_json.get<std::size_t>();

    const json& entries = require(doc, "entries");
    if (!entries.is_array()) throw SpecError("\"entries\" must be an array");
    std::vector<Cell> cells;
    if (kind == TrajectoryKind::Density) {
      if (entries.size() != dim) throw SpecError(fmt::format("density entries must have {} rows", dim));
      for (std::size_t i = 0; i < dim; ++i) {
        if (!entries[i].is_array() || entries[i].size() != dim) {
          throw SpecError(fmt::format("density row {} must have {} entries", i, dim));
        }
        for (std::size_t j = 0; j < dim; ++j) cells.push_back(parse_cell(entries[i][j], fmt::format("entries[{}][{}]", i, j)));
      }
    } else {
      if (entries.size() != dim) throw SpecError(fmt::format("pure_state entries must have {} items", dim));
      for (std::size_t i = 0; i < dim; ++i) cells.push_back(parse_cell(entries[i], fmt::format("entries[{}]", i)));
    }

    ParamMap params;
    if (const auto it = doc.find("params"); it != doc.end()) {
      if (!it->is_object()) throw SpecError("\"params\" must be an object");
      for (const auto& [name, value] : it->items()) {
        if (!value.is_number()) throw SpecError(fmt::format("parameter \"{}\" must be a number", name));
        params[name] = value.get<double>();
      }
    }

    const json& interval_json = require(doc, "interval");
    if (!interval_json.is_array() || interval_json.size() != 2 || !interval_json[0].is_number() ||
        !interval_json[1].is_number()) {
      throw SpecError("\"interval\" must be [t0, t1]");
    }
    const Interval interval{interval_json[0].get<double>(), interval_json[1].get<double>()};

    std::string label = doc.value("label", std::string("spec"));

    HamiltonianSpec hamiltonian = doc.contains("hamiltonian")
                                      ? parse_hamiltonian(doc["hamiltonian"], dim)
                                      : HamiltonianSpec(ComplexMatrix(dim), std::nullopt, "0");

    try {
      TrajectorySpec trajectory(kind, dim, std::move(cells), std::move(params), std::move(label), interval,
                                validation);
      return {std::move(trajectory), std::move(hamiltonian)};
    } catch (const DimensionError& e) {
      throw SpecError(e.what());
    }
  } catch (const json::exception& e) {
    throw SpecError(fmt::format("malformed spec: {}", e.what()));
  }
}

SpecDocument load_spec_document(const std::filesystem::path& path, Validation validation) {
  std::ifstream in(path);
  if (!in) throw SpecError(fmt::format("cannot open spec file '{}'", path.string()));
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_spec_document(buf.str(), validation);
}

}  // namespace cqdist
