#pragma once

#include <filesystem>
#include <string_view>

#include <nlohmann/json.hpp>

#include "gsteer/comb.hpp"

namespace gsteer::io {

inline constexpr std::string_view kModelSchema = "gsteer-model/1";

nlohmann::json model_to_json(const CombModel& model);

/// Throws SchemaError on unknown fields, wrong types or a wrong schema tag.
CombModel model_from_json(const nlohmann::json& doc);

CombModel read_model_file(const std::filesystem::path& path);
void write_model_file(const std::filesystem::path& path, const CombModel& model);

/// nlohmann parse with errors mapped to ParseError(line, column).
nlohmann::json parse_json_text(std::string_view text);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace gsteer::io
