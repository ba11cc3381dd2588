#include "gsteer/monogamy.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <utility>

#include <fmt/format.h>

#include "gsteer/enumerate.hpp"
#include "gsteer/error.hpp"
#include "gsteer/parallel.hpp"

namespace gsteer {

std::string_view to_string(MonogamyRelation relation) {
  switch (relation) {
    case MonogamyRelation::kTypeI: return "typeI";
    case MonogamyRelation::kTypeII: return "typeII";
    case MonogamyRelation::kCkw: return "ckw";
    case MonogamyRelation::kTypeIVSteeredSum: return "typeIV-steered";
    case MonogamyRelation::kTypeIVSteeringSum: return "typeIV-steering";
  }
  return "unknown";
}

MonogamyRelation parse_monogamy_relation(std::string_view text) {
  for (auto r : {MonogamyRelation::kTypeI, MonogamyRelation::kTypeII, MonogamyRelation::kCkw,
                 MonogamyRelation::kTypeIVSteeredSum, MonogamyRelation::kTypeIVSteeringSum}) {
    if (text == to_string(r)) return r;
  }
  throw InvalidArgument(fmt::format(
      "unknown monogamy relation '{}' (expected typeI, typeII, ckw, typeIV-steered or "
      "typeIV-steering)",
      text));
}

namespace {

ModeGroup union_of(const std::vector<ModeGroup>& groups) {
  ModeGroup out;
  for (const auto& g : groups) out.insert(out.end(), g.begin(), g.end());
  std::sort(out.begin(), out.end());
  return out;
}

bool all_single(const std::vector<ModeGroup>& groups) {
  return std::all_of(groups.begin(), groups.end(), [](const auto& g) { return g.size() == 1; });
}

[[noreturn]] void arity(MonogamyRelation relation, std::string_view need) {
  throw InvalidArgument(fmt::format("{} needs {}", to_string(relation), need));
}

// Which side carries the summands.
enum class SumSide { kNone, kSteering, kSteered };

SumSide sum_side(MonogamyRelation relation, const MonogamyConfig& c) {
  switch (relation) {
    case MonogamyRelation::kTypeI:
    case MonogamyRelation::kTypeII: return SumSide::kNone;
    case MonogamyRelation::kCkw:
      return c.steering.size() >= 2 ? SumSide::kSteering : SumSide::kSteered;
    case MonogamyRelation::kTypeIVSteeredSum: return SumSide::kSteered;
    case MonogamyRelation::kTypeIVSteeringSum: return SumSide::kSteering;
  }
  return SumSide::kNone;
}

struct TermKey {
  ModeMask steering;
  ModeMask steered;
  auto operator<=>(const TermKey&) const = default;
};

TermKey key_of(const Bipartition& p) { return {mask_of(p.steering), mask_of(p.steered)}; }

// The partitions a configuration needs, in report order.
std::vector<Bipartition> terms_of(MonogamyRelation relation, const MonogamyConfig& c) {
  std::vector<Bipartition> out;
  const ModeGroup joint_steering = union_of(c.steering);
  const ModeGroup joint_steered = union_of(c.steered);
  switch (sum_side(relation, c)) {
    case SumSide::kNone:
      for (const auto& g : c.steering) out.push_back({g, joint_steered});
      break;
    case SumSide::kSteering:
      out.push_back({joint_steering, joint_steered});
      for (const auto& g : c.steering) out.push_back({g, joint_steered});
      break;
    case SumSide::kSteered:
      out.push_back({joint_steering, joint_steered});
      for (const auto& g : c.steered) out.push_back({joint_steering, g});
      break;
  }
  for (auto& p : out) {
    std::sort(p.steering.begin(), p.steering.end());
    std::sort(p.steered.begin(), p.steered.end());
  }
  return out;
}

MonogamyReport assemble(MonogamyRelation relation, const MonogamyConfig& config,
                        std::vector<MonogamyTerm> terms, const Tolerances& tol) {
  MonogamyReport r;
  r.relation = relation;
  r.configuration = config;
  if (sum_side(relation, config) == SumSide::kNone) {
    r.lhs = 0.0;
    r.rhs = std::min(terms[0].value, terms[1].value);
  } else {
    r.lhs = terms[0].value;
    r.rhs = 0.0;
    for (std::size_t i = 1; i < terms.size(); ++i) r.rhs += terms[i].value;
  }
  r.margin = r.lhs - r.rhs;
  r.satisfied = r.margin >= -tol.steer_epsilon;
  r.terms = std::move(terms);
  return r;
}

}  // namespace

void check_config(MonogamyRelation relation, const MonogamyConfig& config, std::size_t n_modes) {
  const auto& s = config.steering;
  const auto& t = config.steered;
  for (const auto* side : {&s, &t}) {
    for (const auto& g : *side) {
      if (g.empty()) throw PartitionError("empty mode group");
    }
  }
  switch (relation) {
    case MonogamyRelation::kTypeI:
      if (s.size() != 2 || t.size() != 1 || !all_single(s) || !all_single(t)) {
        arity(relation, "two single steering modes and one single steered mode");
      }
      break;
    case MonogamyRelation::kTypeII:
      if (s.size() != 2 || t.size() != 1) {
        arity(relation, "two steering groups and one steered group");
      }
      break;
    case MonogamyRelation::kCkw: {
      const bool many_to_one = s.size() >= 2 && t.size() == 1 && t[0].size() == 1;
      const bool one_to_many = s.size() == 1 && s[0].size() == 1 && t.size() >= 2;
      if (!many_to_one && !one_to_many) {
        arity(relation, "a single mode on one side and at least two groups on the other");
      }
      break;
    }
    case MonogamyRelation::kTypeIVSteeredSum:
      if (s.size() != 1 || t.size() < 2 || s[0].size() < 2) {
        arity(relation, "one steering group of at least two modes and at least two steered groups");
      }
      break;
    case MonogamyRelation::kTypeIVSteeringSum:
      if (t.size() != 1 || s.size() < 2 || t[0].size() < 2) {
        arity(relation, "at least two steering groups and one steered group of at least two modes");
      }
      break;
  }
  std::vector<bool> used(n_modes, false);
  for (const auto* side : {&s, &t}) {
    for (const auto& g : *side) {
      for (std::size_t m : g) {
        if (m >= n_modes) throw PartitionError(fmt::format("mode {} out of range", m));
        if (used[m]) throw PartitionError(fmt::format("mode {} appears in two groups", m));
        used[m] = true;
      }
    }
  }
}

std::vector<MonogamyReport> audit_monogamy_many(const CovarianceMatrix& cm,
                                                MonogamyRelation relation,
                                                const std::vector<MonogamyConfig>& configs,
                                                std::size_t jobs, const Tolerances& tol) {
  require_valid(cm, tol);
  std::vector<std::vector<Bipartition>> needed(configs.size());
  std::map<TermKey, std::size_t> slot;
  std::vector<Bipartition> unique;
  for (std::size_t c = 0; c < configs.size(); ++c) {
    check_config(relation, configs[c], cm.n_modes());
    needed[c] = terms_of(relation, configs[c]);
    for (const auto& p : needed[c]) {
      if (slot.emplace(key_of(p), unique.size()).second) unique.push_back(p);
    }
  }
  std::vector<double> values(unique.size());
  parallel_for(unique.size(), jobs,
               [&](std::size_t i) { values[i] = steering(cm, unique[i], tol).value; });

  std::vector<MonogamyReport> out;
  out.reserve(configs.size());
  for (std::size_t c = 0; c < configs.size(); ++c) {
    std::vector<MonogamyTerm> terms;
    for (auto& p : needed[c]) {
      const double v = values[slot.at(key_of(p))];
      terms.push_back({std::move(p), v});
    }
    out.push_back(assemble(relation, configs[c], std::move(terms), tol));
  }
  return out;
}

MonogamyReport audit_monogamy(const CovarianceMatrix& cm, MonogamyRelation relation,
                              const MonogamyConfig& config, const Tolerances& tol) {
  return audit_monogamy_many(cm, relation, {config}, 1, tol).front();
}

namespace {

std::vector<ModeGroup> singletons(const ModeGroup& modes) {
  std::vector<ModeGroup> out;
  for (std::size_t m : modes) out.push_back({m});
  return out;
}

std::size_t popcount(ModeMask m) { return static_cast<std::size_t>(std::popcount(m)); }

// Nonempty submasks of `within` with lo <= size <= hi, ascending.
std::vector<ModeMask> subsets(ModeMask within, std::size_t lo, std::size_t hi) {
  std::vector<ModeMask> out;
  for (ModeMask m = within & (~within + 1); m != 0; m = (m - within) & within) {
    const std::size_t size = popcount(m);
    if (size >= lo && size <= hi) out.push_back(m);
  }
  return out;
}

}  // namespace

std::vector<MonogamyConfig> sweep_configurations(std::size_t n_modes, MonogamyRelation relation,
                                                 const SweepLimits& limits) {
  if (n_modes < 2 || n_modes > 62) throw InvalidArgument("sweep supports 2 to 62 modes");
  if (limits.max_group_size == 0) throw InvalidArgument("max group size must be positive");
  const ModeMask all = (ModeMask{1} << n_modes) - 1;
  const std::size_t cap = limits.max_group_size;
  std::vector<MonogamyConfig> out;

  switch (relation) {
    case MonogamyRelation::kTypeI:
      for (std::size_t k = 0; k < n_modes; ++k) {
        for (std::size_t i = 0; i < n_modes; ++i) {
          for (std::size_t j = i + 1; j < n_modes; ++j) {
            if (i == k || j == k) continue;
            out.push_back({{{i}, {j}}, {{k}}});
          }
        }
      }
      break;
    case MonogamyRelation::kTypeII: {
      const std::size_t lo = limits.steered_size.value_or(1);
      const std::size_t hi = limits.steered_size.value_or(cap);
      for (ModeMask t : subsets(all, lo, hi)) {
        const auto parties = subsets(all & ~t, 1, cap);
        for (std::size_t a = 0; a < parties.size(); ++a) {
          for (std::size_t b = a + 1; b < parties.size(); ++b) {
            if ((parties[a] & parties[b]) != 0) continue;
            out.push_back({{modes_of(parties[a]), modes_of(parties[b])}, {modes_of(t)}});
          }
        }
      }
      break;
    }
    case MonogamyRelation::kCkw:
      for (std::size_t j = 0; j < n_modes; ++j) {
        for (ModeMask s : subsets(all & ~(ModeMask{1} << j), 2, cap)) {
          out.push_back({singletons(modes_of(s)), {{j}}});
          out.push_back({{{j}}, singletons(modes_of(s))});
        }
      }
      break;
    case MonogamyRelation::kTypeIVSteeredSum:
    case MonogamyRelation::kTypeIVSteeringSum:
      for (ModeMask s : subsets(all, 2, cap)) {
        for (ModeMask t : subsets(all & ~s, 2, cap)) {
          if (relation == MonogamyRelation::kTypeIVSteeredSum) {
            out.push_back({{modes_of(s)}, singletons(modes_of(t))});
          } else {
            out.push_back({singletons(modes_of(s)), {modes_of(t)}});
          }
        }
      }
      break;
  }
  return out;
}

}  // namespace gsteer
