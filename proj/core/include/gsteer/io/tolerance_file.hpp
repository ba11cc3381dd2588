#pragma once

#include <filesystem>

#include <nlohmann/json.hpp>

#include "gsteer/tolerances.hpp"

namespace gsteer::io {

/// Any subset of the Tolerances fields; unknown keys are rejected.
Tolerances tolerances_from_json(const nlohmann::json& doc, Tolerances base = {});
Tolerances read_tolerance_file(const std::filesystem::path& path);

}  // namespace gsteer::io
