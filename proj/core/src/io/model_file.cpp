#include "gsteer/io/model_file.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "gsteer/error.hpp"

namespace gsteer::io {

using nlohmann::json;

namespace {

void reject_unknown(const json& obj, std::string_view where, const std::set<std::string>& allowed) {
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.contains(key)) throw SchemaError(fmt::format("{}: unknown field '{}'", where, key));
  }
}

const json& require(const json& obj, std::string_view where, const std::string& key) {
  const auto it = obj.find(key);
  if (it == obj.end()) throw SchemaError(fmt::format("{}: missing field '{}'", where, key));
  return *it;
}

double as_number(const json& v, std::string_view where) {
  if (!v.is_number()) throw SchemaError(fmt::format("{}: expected a number", where));
  return v.get<double>();
}

std::size_t as_count(const json& v, std::string_view where) {
  if (!v.is_number_unsigned()) {
    throw SchemaError(fmt::format("{}: expected a nonnegative integer", where));
  }
  return v.get<std::size_t>();
}

std::string as_string(const json& v, std::string_view where) {
  if (!v.is_string()) throw SchemaError(fmt::format("{}: expected a string", where));
  return v.get<std::string>();
}

json eigenmode_to_json(const EigenmodeSpec& e) {
  json out;
  if (e.shape == ProfileShape::kHermiteGauss) {
    out["profile"] = "hermite_gauss";
    out["order"] = e.order;
    out["width"] = e.width;
  } else {
    out["profile"] = "piecewise";
    out["levels"] = e.levels;
  }
  out["squeezing_db"] = e.squeezing_db;
  out["antisqueezing_excess_db"] = e.antisqueezing_excess_db;
  out["squeezed_quadrature"] = e.squeezed == Quadrature::kX ? "x" : "p";
  return out;
}

EigenmodeSpec eigenmode_from_json(const json& doc, std::size_t index) {
  const std::string where = fmt::format("eigenmodes[{}]", index);
  if (!doc.is_object()) throw SchemaError(where + ": expected an object");
  EigenmodeSpec e;
  const std::string profile = as_string(require(doc, where, "profile"), where + ".profile");
  if (profile == "hermite_gauss") {
    reject_unknown(doc, where,
                   {"profile", "order", "width", "squeezing_db", "antisqueezing_excess_db",
                    "squeezed_quadrature"});
    e.shape = ProfileShape::kHermiteGauss;
    e.order = as_count(require(doc, where, "order"), where + ".order");
    if (doc.contains("width")) e.width = as_number(doc["width"], where + ".width");
  } else if (profile == "piecewise") {
    reject_unknown(doc, where,
                   {"profile", "levels", "squeezing_db", "antisqueezing_excess_db",
                    "squeezed_quadrature"});
    e.shape = ProfileShape::kPiecewise;
    const json& levels = require(doc, where, "levels");
    if (!levels.is_array()) throw SchemaError(where + ".levels: expected an array");
    for (const auto& v : levels) e.levels.push_back(as_number(v, where + ".levels"));
  } else {
    throw SchemaError(fmt::format("{}.profile: unknown profile '{}'", where, profile));
  }
  e.squeezing_db = as_number(require(doc, where, "squeezing_db"), where + ".squeezing_db");
  if (doc.contains("antisqueezing_excess_db")) {
    e.antisqueezing_excess_db =
        as_number(doc["antisqueezing_excess_db"], where + ".antisqueezing_excess_db");
  }
  if (doc.contains("squeezed_quadrature")) {
    const std::string q = as_string(doc["squeezed_quadrature"], where + ".squeezed_quadrature");
    if (q == "x") {
      e.squeezed = Quadrature::kX;
    } else if (q == "p") {
      e.squeezed = Quadrature::kP;
    } else {
      throw SchemaError(fmt::format("{}.squeezed_quadrature: expected \"x\" or \"p\"", where));
    }
  }
  return e;
}

}  // namespace

json model_to_json(const CombModel& model) {
  json out;
  out["schema"] = kModelSchema;
  out["provenance"] = model.provenance;
  out["n_pixels"] = model.n_pixels;
  out["grid"] = {{"samples", model.grid.samples},
                 {"support", {model.grid.lower, model.grid.upper}}};
  out["efficiency"] = model.efficiency;
  out["eigenmodes"] = json::array();
  for (const auto& e : model.eigenmodes) out["eigenmodes"].push_back(eigenmode_to_json(e));
  return out;
}

CombModel model_from_json(const json& doc) {
  if (!doc.is_object()) throw SchemaError("model: expected a JSON object");
  reject_unknown(doc, "model",
                 {"schema", "provenance", "n_pixels", "grid", "efficiency", "eigenmodes"});
  const std::string schema = as_string(require(doc, "model", "schema"), "schema");
  if (schema != kModelSchema) {
    throw SchemaError(fmt::format("schema: expected \"{}\", got \"{}\"", kModelSchema, schema));
  }
  CombModel model;
  if (doc.contains("provenance")) model.provenance = as_string(doc["provenance"], "provenance");
  if (doc.contains("n_pixels")) model.n_pixels = as_count(doc["n_pixels"], "n_pixels");
  if (doc.contains("efficiency")) model.efficiency = as_number(doc["efficiency"], "efficiency");
  if (doc.contains("grid")) {
    const json& grid = doc["grid"];
    if (!grid.is_object()) throw SchemaError("grid: expected an object");
    reject_unknown(grid, "grid", {"samples", "support"});
    if (grid.contains("samples")) model.grid.samples = as_count(grid["samples"], "grid.samples");
    if (grid.contains("support")) {
      const json& s = grid["support"];
      if (!s.is_array() || s.size() != 2) throw SchemaError("grid.support: expected [lower, upper]");
      model.grid.lower = as_number(s[0], "grid.support");
      model.grid.upper = as_number(s[1], "grid.support");
    }
  }
  const json& modes = require(doc, "model", "eigenmodes");
  if (!modes.is_array()) throw SchemaError("eigenmodes: expected an array");
  for (std::size_t i = 0; i < modes.size(); ++i) {
    model.eigenmodes.push_back(eigenmode_from_json(modes[i], i));
  }
  model.check();
  return model;
}

CombModel read_model_file(const std::filesystem::path& path) {
  return model_from_json(parse_json_text(read_text_file(path)));
}

void write_model_file(const std::filesystem::path& path, const CombModel& model) {
  write_text_file(path, model_to_json(model).dump(2) + "\n");
}

json parse_json_text(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const std::size_t offset = e.byte == 0 ? 0 : std::min<std::size_t>(e.byte - 1, text.size());
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i < offset; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::string what = e.what();
    if (const auto pos = what.find("syntax error"); pos != std::string::npos) what = what.substr(pos);
    throw ParseError(what, line, column);
  }
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(fmt::format("cannot open '{}' for reading", path.string()));
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError(fmt::format("error reading '{}'", path.string()));
  return std::move(buf).str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(fmt::format("cannot open '{}' for writing", path.string()));
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw IoError(fmt::format("error writing '{}'", path.string()));
}

}  // namespace gsteer::io
