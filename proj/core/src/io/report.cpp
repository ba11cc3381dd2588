#include "gsteer/io/report.hpp"

#include <fmt/format.h>

#include "gsteer/version.hpp"

namespace gsteer::io {

using nlohmann::json;

namespace {

json labels_of(const ModeGroup& modes, const CovarianceMatrix& cm) {
  json out = json::array();
  for (std::size_t m : modes) out.push_back(cm.label(m));
  return out;
}

json groups_of(const std::vector<ModeGroup>& groups, const CovarianceMatrix& cm) {
  json out = json::array();
  for (const auto& g : groups) out.push_back(labels_of(g, cm));
  return out;
}

json box_json(const BoxStats& b) {
  return {{"count", b.count},          {"min", b.min},
          {"q1", b.q1},                {"median", b.median},
          {"q3", b.q3},                {"max", b.max},
          {"mean", b.mean},            {"whisker_low", b.whisker_low},
          {"whisker_high", b.whisker_high}};
}

json stats_json(const std::vector<SplitStats>& stats) {
  json out = json::array();
  for (const auto& s : stats) {
    out.push_back({{"steering_size", s.steering_size},
                   {"steered_size", s.steered_size},
                   {"n_failed", s.n_failed},
                   {"n_steerable", s.n_steerable},
                   {"box", box_json(s.box)}});
  }
  return out;
}

}  // namespace

json make_report(std::string_view kind, const std::vector<ReportInput>& inputs, json settings,
                 json payload) {
  json in = json::array();
  for (const auto& i : inputs) in.push_back({{"role", i.role}, {"name", i.name}, {"sha256", i.sha256}});
  return {{"schema", kReportSchema},
          {"toolkit_version", kVersion},
          {"kind", kind},
          {"inputs", std::move(in)},
          {"settings", std::move(settings)},
          {"result", std::move(payload)}};
}

std::string dump_report(const json& report) { return report.dump() + "\n"; }

json to_json(const Tolerances& tol) {
  return {{"symmetry", tol.symmetry},
          {"orthonormality", tol.orthonormality},
          {"physicality", tol.physicality},
          {"pairing", tol.pairing},
          {"steer_epsilon", tol.steer_epsilon},
          {"max_condition", tol.max_condition}};
}

json to_json(const WhiskerRule& rule) {
  if (rule.kind == WhiskerRule::Kind::kTukey) {
    return {{"kind", "tukey"}, {"iqr_factor", rule.iqr_factor}};
  }
  return {{"kind", "percentile"},
          {"lower", rule.lower_percentile},
          {"upper", rule.upper_percentile}};
}

json to_json(const SteeringResult& result, const CovarianceMatrix& cm) {
  return {{"steering", labels_of(result.partition.steering, cm)},
          {"steered", labels_of(result.partition.steered, cm)},
          {"value", result.value},
          {"steerable", result.steerable},
          {"spectrum", result.spectrum}};
}

json to_json(const SteeringSpectrumReport& report, const CovarianceMatrix& cm) {
  json parts = json::array();
  for (const auto& o : report.outcomes) {
    json row = {{"steering", labels_of(o.partition.steering, cm)},
                {"steered", labels_of(o.partition.steered, cm)}};
    if (o.ok()) {
      row["value"] = o.result->value;
      row["steerable"] = o.result->steerable;
    } else {
      row["error"] = o.error;
    }
    parts.push_back(std::move(row));
  }
  return {{"mode", to_string(report.mode)},
          {"n_modes", report.n_modes},
          {"labels", cm.labels_or_indices()},
          {"n_bipartitions", report.outcomes.size()},
          {"n_steerable", report.steerable_count()},
          {"n_failed", report.failed_count()},
          {"partitions", std::move(parts)},
          {"stats", stats_json(report.stats)}};
}

json to_json(const LossScanReport& report, const CovarianceMatrix& cm) {
  (void)cm;
  json steps = json::array();
  for (const auto& s : report.steps) {
    steps.push_back({{"removed", s.removed},
                     {"remaining_modes", s.remaining_modes},
                     {"n_bipartitions", s.n_bipartitions},
                     {"n_steerable", s.n_steerable},
                     {"n_failed", s.spectrum.failed_count()},
                     {"stats", stats_json(s.spectrum.stats)}});
  }
  return {{"removal_sequence", report.removal_sequence}, {"steps", std::move(steps)}};
}

json to_json(const std::vector<MonogamyReport>& reports, const CovarianceMatrix& cm) {
  json rows = json::array();
  std::size_t violations = 0;
  for (const auto& r : reports) {
    json terms = json::array();
    for (const auto& t : r.terms) {
      terms.push_back({{"steering", labels_of(t.partition.steering, cm)},
                       {"steered", labels_of(t.partition.steered, cm)},
                       {"value", t.value}});
    }
    rows.push_back({{"relation", to_string(r.relation)},
                    {"steering", groups_of(r.configuration.steering, cm)},
                    {"steered", groups_of(r.configuration.steered, cm)},
                    {"lhs", r.lhs},
                    {"rhs", r.rhs},
                    {"margin", r.margin},
                    {"satisfied", r.satisfied},
                    {"terms", std::move(terms)}});
    if (!r.satisfied) ++violations;
  }
  return {{"n_configurations", reports.size()},
          {"n_violations", violations},
          {"audits", std::move(rows)}};
}

json to_json(const UncertaintyEstimate& estimate) {
  return {{"mean", estimate.mean},
          {"std", estimate.std},
          {"n_samples", estimate.n_samples},
          {"seed", estimate.seed},
          {"n_unphysical_rejected", estimate.n_unphysical_rejected}};
}

std::string spectrum_csv(const SteeringSpectrumReport& report, const CovarianceMatrix& cm) {
  std::string out = "index,steering,steered,steering_size,steered_size,value\n";
  const auto joined = [&](const ModeGroup& g) {
    std::string s;
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (i > 0) s += ' ';
      s += cm.label(g[i]);
    }
    return s;
  };
  for (std::size_t i = 0; i < report.outcomes.size(); ++i) {
    const auto& o = report.outcomes[i];
    out += fmt::format("{},{},{},{},{},{}\n", i, joined(o.partition.steering),
                       joined(o.partition.steered), o.partition.steering.size(),
                       o.partition.steered.size(), o.ok() ? fmt::format("{}", o.result->value) : "");
  }
  return out;
}

}  // namespace gsteer::io
