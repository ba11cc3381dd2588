#include "gsteer/io/tolerance_file.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <utility>

#include <fmt/format.h>

#include "gsteer/error.hpp"
#include "gsteer/io/model_file.hpp"

namespace gsteer::io {

Tolerances tolerances_from_json(const nlohmann::json& doc, Tolerances base) {
  if (!doc.is_object()) throw SchemaError("tolerances: expected a JSON object");
  const std::pair<const char*, double Tolerances::*> fields[] = {
      {"symmetry", &Tolerances::symmetry},
      {"orthonormality", &Tolerances::orthonormality},
      {"physicality", &Tolerances::physicality},
      {"pairing", &Tolerances::pairing},
      {"steer_epsilon", &Tolerances::steer_epsilon},
      {"max_condition", &Tolerances::max_condition},
  };
  for (const auto& [key, value] : doc.items()) {
    const auto* field = std::find_if(std::begin(fields), std::end(fields),
                                     [&](const auto& f) { return key == f.first; });
    if (field == std::end(fields)) {
      throw SchemaError(fmt::format("tolerances: unknown field '{}'", key));
    }
    if (!value.is_number() || !(value.get<double>() > 0.0) || !std::isfinite(value.get<double>())) {
      throw SchemaError(fmt::format("tolerances.{}: expected a positive number", key));
    }
    base.*(field->second) = value.get<double>();
  }
  return base;
}

Tolerances read_tolerance_file(const std::filesystem::path& path) {
  return tolerances_from_json(parse_json_text(read_text_file(path)));
}

}  // namespace gsteer::io
