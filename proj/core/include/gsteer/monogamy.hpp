#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "gsteer/steering.hpp"

namespace gsteer {

enum class MonogamyRelation {
  kTypeI,              // two single modes cannot both steer a third single mode
  kTypeII,             // same with multimode steering parties, any steered party
  kCkw,                // G^{(i1..im)->j} >= sum G^{ik->j}, and the one-to-many mirror
  kTypeIVSteeredSum,   // G^{I->J} >= sum_k G^{I->jk}
  kTypeIVSteeringSum,  // G^{I->J} >= sum_k G^{ik->J}; may be violated
};

std::string_view to_string(MonogamyRelation relation);
MonogamyRelation parse_monogamy_relation(std::string_view text);

/// Steering-side and steered-side groups. Relations that sum over a side
/// use its groups as the summands; the union of a side is the joint party.
struct MonogamyConfig {
  std::vector<ModeGroup> steering;
  std::vector<ModeGroup> steered;

  bool operator==(const MonogamyConfig&) const = default;
};

struct MonogamyTerm {
  Bipartition partition;
  double value = 0.0;
};

struct MonogamyReport {
  MonogamyRelation relation = MonogamyRelation::kTypeI;
  MonogamyConfig configuration;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;  // lhs - rhs
  bool satisfied = true;
  std::vector<MonogamyTerm> terms;
};

/// Throws InvalidArgument when the group arity does not fit the relation and
/// PartitionError when groups overlap or leave the mode range.
void check_config(MonogamyRelation relation, const MonogamyConfig& config, std::size_t n_modes);

MonogamyReport audit_monogamy(const CovarianceMatrix& cm, MonogamyRelation relation,
                              const MonogamyConfig& config, const Tolerances& tol = {});

struct SweepLimits {
  std::size_t max_group_size = 2;
  std::optional<std::size_t> steered_size;  // Type-II only: fix |steered party|
};

/// Every configuration of the relation with groups up to the size cap, in a
/// canonical mask order.
std::vector<MonogamyConfig> sweep_configurations(std::size_t n_modes, MonogamyRelation relation,
                                                 const SweepLimits& limits = {});

/// Audits many configurations; each distinct steering quantity is computed
/// once. Deterministic for any job count.
std::vector<MonogamyReport> audit_monogamy_many(const CovarianceMatrix& cm,
                                                MonogamyRelation relation,
                                                const std::vector<MonogamyConfig>& configs,
                                                std::size_t jobs = 1, const Tolerances& tol = {});

}  // namespace gsteer
