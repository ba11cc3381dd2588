#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "gsteer/comb.hpp"
#include "gsteer/monogamy.hpp"
#include "gsteer/monte_carlo.hpp"

namespace gsteer::io {

inline constexpr std::string_view kReportSchema = "gsteer-report/1";

struct ReportInput {
  std::string role;  // "cm", "model", ...
  std::string name;  // file name without directories
  std::string sha256;
};

/// Envelope with schema tag, toolkit version and input digests. Keys are
/// sorted, so identical inputs produce identical bytes.
nlohmann::json make_report(std::string_view kind, const std::vector<ReportInput>& inputs,
                           nlohmann::json settings, nlohmann::json payload);

/// Compact dump plus trailing newline.
std::string dump_report(const nlohmann::json& report);

nlohmann::json to_json(const Tolerances& tol);
nlohmann::json to_json(const WhiskerRule& rule);
nlohmann::json to_json(const SteeringResult& result, const CovarianceMatrix& cm);
nlohmann::json to_json(const SteeringSpectrumReport& report, const CovarianceMatrix& cm);
nlohmann::json to_json(const LossScanReport& report, const CovarianceMatrix& cm);
nlohmann::json to_json(const std::vector<MonogamyReport>& reports, const CovarianceMatrix& cm);
nlohmann::json to_json(const UncertaintyEstimate& estimate);

/// Plot-ready rows: index, steering, steered, |m|, |n|, value.
std::string spectrum_csv(const SteeringSpectrumReport& report, const CovarianceMatrix& cm);

}  // namespace gsteer::io
