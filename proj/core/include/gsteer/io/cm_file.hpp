#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "gsteer/covariance.hpp"

namespace gsteer::io {

enum class QuadratureOrdering { kXpxp, kXxpp };

inline constexpr std::string_view kCmMagic = "gsteer-cm";
inline constexpr int kCmSchemaVersion = 1;

struct CmDocument {
  CovarianceMatrix cm;
  std::string provenance;
  QuadratureOrdering ordering = QuadratureOrdering::kXpxp;  // as declared in the file
};

/// Parses the text format. xxpp bodies are permuted to xpxp; vacuum=0.5
/// bodies are scaled by 2. Does not validate physicality.
CmDocument parse_cm(std::string_view text);
CmDocument read_cm_file(const std::filesystem::path& path);

/// Parses and then requires a valid state (StateError with the verdict).
CmDocument load_cm_file(const std::filesystem::path& path, const Tolerances& tol = {});

std::string format_cm(const CovarianceMatrix& cm, std::string_view provenance = {},
                      QuadratureOrdering ordering = QuadratureOrdering::kXpxp);
void write_cm_file(const std::filesystem::path& path, const CovarianceMatrix& cm,
                   std::string_view provenance = {});

}  // namespace gsteer::io
