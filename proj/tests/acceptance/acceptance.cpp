// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <filesystem>
#include <functional>
#include <iostream>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "gsteer/comb.hpp"
#include "gsteer/enumerate.hpp"
#include "gsteer/fixtures.hpp"
#include "gsteer/io/model_file.hpp"
#include "gsteer/mode_ops.hpp"
#include "gsteer/monogamy.hpp"
#include "gsteer/monte_carlo.hpp"
#include "gsteer/spectrum.hpp"
#include "gsteer/steering.hpp"
#include "gsteer/symplectic.hpp"
#include "oracles.hpp"
#include "random_states.hpp"

namespace {

using namespace gsteer;
using testing::Rng;
using Clock = std::chrono::steady_clock;

const std::filesystem::path kFixtures = GSTEER_FIXTURE_DIR;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

ModeGroup bands(std::initializer_list<std::size_t> list, std::size_t pixels) {
  ModeGroup out;
  for (std::size_t b : list) {
    const auto px = band_pixels(b, pixels);
    out.insert(out.end(), px.begin(), px.end());
  }
  return out;
}

// Random disjoint nonempty parties drawn from n modes.
Bipartition random_parties(std::size_t n, Rng& rng) {
  std::vector<std::size_t> modes(n);
  std::iota(modes.begin(), modes.end(), 0);
  std::shuffle(modes.begin(), modes.end(), rng);
  const std::size_t m = testing::uniform_size(rng, 1, n - 1);
  const std::size_t k = testing::uniform_size(rng, 1, n - m);
  Bipartition part;
  part.steering.assign(modes.begin(), modes.begin() + static_cast<std::ptrdiff_t>(m));
  part.steered.assign(modes.begin() + static_cast<std::ptrdiff_t>(m),
                      modes.begin() + static_cast<std::ptrdiff_t>(m + k));
  return part;
}

CombModel random_model(Rng& rng) {
  CombModel model;
  const std::size_t k = testing::uniform_size(rng, 1, 6);
  std::vector<std::size_t> orders(10);
  std::iota(orders.begin(), orders.end(), 0);
  std::shuffle(orders.begin(), orders.end(), rng);
  for (std::size_t i = 0; i < k; ++i) {
    EigenmodeSpec e;
    e.order = orders[i];
    e.width = testing::uniform(rng, 0.07, 0.15);
    e.squeezing_db = testing::uniform(rng, -10.0, 0.0);
    e.antisqueezing_excess_db = testing::uniform(rng, 0.0, 3.0);
    e.squeezed = testing::uniform(rng, 0.0, 1.0) < 0.5 ? Quadrature::kX : Quadrature::kP;
    model.eigenmodes.push_back(e);
  }
  model.efficiency = testing::uniform(rng, 0.3, 1.0);
  return model;
}

Outcome tmsv_oracle() {
  const auto start = Clock::now();
  double worst = 0.0;
  for (int i = 1; i <= 15; ++i) {
    const double r = 0.1 * i;
    const CovarianceMatrix cm(testing::tmsv_oracle(r));
    const double expected = testing::tmsv_steering_oracle(r);
    worst = std::max(worst, std::abs(steering(cm, {{0}, {1}}).value - expected));
    worst = std::max(worst, std::abs(steering(cm, {{1}, {0}}).value - expected));
  }
  const double elapsed = seconds_since(start);
  return {worst <= 1e-9 && elapsed < 1.0,
          fmt::format("max |G - ln cosh 2r| = {:.2e}, {:.3f} s", worst, elapsed)};
}

Outcome enumeration_counts() {
  bool ok = bipartition_count(16, EnumerationMode::kFull) == 65534 &&
            bipartition_count(4, EnumerationMode::kDisjointPairs) == 50 &&
            enumerate_bipartitions(16, EnumerationMode::kFull).size() == 65534 &&
            enumerate_bipartitions(4, EnumerationMode::kDisjointPairs).size() == 50;
  for (std::size_t n = 2; n <= 10; ++n) {
    for (bool cover : {true, false}) {
      const auto mode = cover ? EnumerationMode::kFull : EnumerationMode::kDisjointPairs;
      const std::uint64_t brute = testing::brute_force_pair_count(n, cover);
      ok = ok && bipartition_count(n, mode) == brute && enumerate_bipartitions(n, mode).size() == brute;
    }
  }
  const auto model = io::read_model_file(kFixtures / "default_model.json");
  const auto cm = simulate_cm(model.at_resolution(16));
  ScanOptions options;
  options.jobs = 4;
  const auto start = Clock::now();
  const auto report = steering_spectrum(cm, EnumerationMode::kFull, options);
  const double elapsed = seconds_since(start);
  ok = ok && report.outcomes.size() == 65534 && report.failed_count() == 0 && elapsed < 60.0;
  return {ok, fmt::format("65534/50 and brute force N<=10 checked; 16-mode spectrum {:.1f} s, {} steerable",
                          elapsed, report.steerable_count())};
}

Outcome physicality() {
  Rng rng(1001);
  std::size_t failures = 0;
  double worst_pure = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = testing::uniform_size(rng, 1, 6);
    const CovarianceMatrix cm(testing::random_physical_cm(n, rng));
    if (!validate(cm).valid()) ++failures;

    std::vector<std::size_t> modes(n);
    std::iota(modes.begin(), modes.end(), 0);
    std::shuffle(modes.begin(), modes.end(), rng);
    modes.resize(testing::uniform_size(rng, 1, n));
    if (!validate(select_modes(cm, modes)).valid()) ++failures;

    const std::size_t out = testing::uniform_size(rng, 1, n);
    const Matrix rows = testing::random_orthogonal(n, rng).topRows(static_cast<Eigen::Index>(out));
    if (!validate(apply_mode_map(cm, ModeMap(rows))).valid()) ++failures;

    for (double nu : symplectic_eigenvalues(testing::random_pure_cm(n, rng))) {
      worst_pure = std::max(worst_pure, std::abs(nu - 1.0));
    }
  }
  return {failures == 0 && worst_pure <= 1e-8,
          fmt::format("{} invalid outputs, max |nu - 1| on pure states {:.2e}", failures, worst_pure)};
}

Outcome monotonicity() {
  Rng rng(2002);
  double worst = std::numeric_limits<double>::infinity();
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = testing::uniform_size(rng, 3, 6);
    const CovarianceMatrix cm(testing::random_physical_cm(n, rng));
    Bipartition part = random_parties(n, rng);
    if (part.steering.size() + part.steered.size() == n) part.steering.pop_back();
    if (part.steering.empty()) {
      part.steering.push_back(part.steered.back());
      part.steered.pop_back();
    }
    std::vector<std::size_t> spare;
    for (std::size_t mode = 0; mode < n; ++mode) {
      if (std::ranges::find(part.steering, mode) == part.steering.end() &&
          std::ranges::find(part.steered, mode) == part.steered.end()) {
        spare.push_back(mode);
      }
    }
    Bipartition extended = part;
    extended.steering.push_back(spare[testing::uniform_size(rng, 0, spare.size() - 1)]);
    worst = std::min(worst, steering(cm, extended).value - steering(cm, part).value);
  }
  const auto model = io::read_model_file(kFixtures / "default_model.json");
  const auto rows = band_resolution_table(model);
  std::size_t broken = 0;
  for (const auto& row : rows) {
    if (row.values[0] > row.values[1] + 1e-9 || row.values[1] > row.values[2] + 1e-9) ++broken;
  }
  return {worst >= -1e-9 && broken == 0 && rows.size() == 50,
          fmt::format("smallest extension gain {:.2e}; {} of {} band partitions break G4<=G8<=G16", worst,
                      broken, rows.size())};
}

Outcome type_one() {
  Rng rng(3003);
  std::size_t violations = 0;
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = testing::uniform_size(rng, 3, 6);
    const CovarianceMatrix cm(testing::random_physical_cm(n, rng));
    std::vector<std::size_t> modes(n);
    std::iota(modes.begin(), modes.end(), 0);
    std::shuffle(modes.begin(), modes.end(), rng);
    const MonogamyConfig config{{{modes[0]}, {modes[1]}}, {{modes[2]}}};
    const auto report = audit_monogamy(cm, MonogamyRelation::kTypeI, config);
    worst = std::min(worst, report.margin);
    if (report.margin < -1e-9) ++violations;
  }
  return {violations == 0, fmt::format("{} violations, worst margin {:.2e}", violations, worst)};
}

Outcome type_two() {
  const auto model = io::read_model_file(kFixtures / "default_model.json");
  const auto cm = simulate_cm(model.at_resolution(8));
  SweepLimits limits;
  limits.max_group_size = 2;
  limits.steered_size = 2;
  const auto configs = sweep_configurations(cm.n_modes(), MonogamyRelation::kTypeII, limits);
  const auto reports = audit_monogamy_many(cm, MonogamyRelation::kTypeII, configs, 4);
  std::size_t flagged = 0;
  double best = 0.0;
  std::string example;
  for (const auto& r : reports) {
    if (r.satisfied || r.terms.size() != 2) continue;
    const double low = std::min(r.terms[0].value, r.terms[1].value);
    if (low <= 0.01) continue;
    ++flagged;
    if (low > best) {
      best = low;
      const auto names = [&](const ModeGroup& g) {
        std::string s;
        for (std::size_t m : g) s += (s.empty() ? "" : ",") + cm.label(m);
        return s;
      };
      example = fmt::format("{} and {} -> {} ({:.4f}, {:.4f})", names(r.configuration.steering[0]),
                            names(r.configuration.steering[1]), names(r.configuration.steered[0]),
                            r.terms[0].value, r.terms[1].value);
    }
  }
  return {flagged > 0, fmt::format("{} flagged of {} at 8 pixels; strongest {}", flagged, reports.size(), example)};
}

Outcome one_way() {
  const auto model = io::read_model_file(kFixtures / "one_way_model.json");
  const auto state =
      asymmetric_resolution_cm(model, {"B"}, {"a11", "a12", "a21", "a22", "d11", "d12", "d21", "d22"});
  const double fwd = steering(state.cm, state.forward()).value;
  const double back = steering(state.cm, state.backward()).value;
  const Direction dir = classify_direction(fwd, back);
  return {dir == Direction::kOneWayForward && fwd > 0.01 && back < 1e-9,
          fmt::format("forward {:.6f}, backward {:.2e}, {}", fwd, back, to_string(dir))};
}

Outcome resolution_contrast() {
  const auto values = [](const CombModel& model, bool cd_to_ab) {
    std::vector<double> out;
    for (std::size_t r : kResolutions) {
      const auto cm = simulate_cm(model.at_resolution(r));
      const Bipartition part = cd_to_ab ? Bipartition{bands({2, 3}, r), bands({0, 1}, r)}
                                        : Bipartition{bands({0, 1}, r), bands({2, 3}, r)};
      out.push_back(steering(cm, part).value);
    }
    return out;
  };
  const auto single = values(io::read_model_file(kFixtures / "single_eigenmode_model.json"), true);
  const auto [lo, hi] = std::minmax_element(single.begin(), single.end());
  const double spread = (*hi - *lo) / *lo;
  const auto model = io::read_model_file(kFixtures / "default_model.json");
  bool increasing = true;
  std::vector<double> full;
  for (bool dir : {true, false}) {
    full = values(model, dir);
    increasing = increasing && full[0] < full[1] && full[1] < full[2];
  }
  const auto cd = values(model, true);
  return {*lo > 0.0 && spread < 0.1 && increasing,
          fmt::format("single eigenmode spread {:.2e}; full CD->AB {:.4f} < {:.4f} < {:.4f}", spread, cd[0],
                      cd[1], cd[2])};
}

Outcome commutativity() {
  Rng rng(4004);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const CombModel model = random_model(rng);
    const auto fine = simulate_cm(model.at_resolution(16));
    for (std::size_t to : {4u, 8u}) {
      const auto coarse = apply_mode_map(fine, coarsening_map(16, to));
      const auto direct = simulate_cm(model.at_resolution(to));
      worst = std::max(worst, (coarse.entries() - direct.entries()).cwiseAbs().maxCoeff());
    }
  }
  return {worst <= 1e-9, fmt::format("max entry difference {:.2e} over 20 models", worst)};
}

Outcome monte_carlo() {
  const auto model = io::read_model_file(kFixtures / "tmsv_like_model.json");
  const Bipartition part{{2, 3}, {0, 1}};
  const std::vector<double> noise{0.1};
  const auto a = monte_carlo_uncertainty(model, part, noise, 10000, 42);
  MonteCarloOptions parallel;
  parallel.jobs = 4;
  const auto b = monte_carlo_uncertainty(model, part, noise, 10000, 42, parallel);
  const std::vector<double> zero{0.0};
  const auto still = monte_carlo_uncertainty(model, part, zero, 100, 42);
  const double oracle = testing::tmsv_steering_oracle(0.5);
  const double offset = std::abs(a.mean - oracle);
  return {a == b && still.std == 0.0 && offset <= 3.0 * a.std,
          fmt::format("mean {:.6f} +/- {:.6f} vs {:.6f}; reproducible {}; zero-noise std {}", a.mean, a.std,
                      oracle, a == b ? "yes" : "no", still.std)};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"tmsv-oracle", tmsv_oracle},
      {"enumeration-counts", enumeration_counts},
      {"physicality-suite", physicality},
      {"monotonicity-suite", monotonicity},
      {"type-i-monogamy", type_one},
      {"type-ii-violation", type_two},
      {"one-way-steering", one_way},
      {"single-vs-multi-eigenmode-resolution", resolution_contrast},
      {"simulation-coarsening-commutativity", commutativity},
      {"monte-carlo", monte_carlo},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Outcome outcome;
    try {
      outcome = check();
    } catch (const std::exception& e) {
      outcome = {false, fmt::format("exception: {}", e.what())};
    }
    if (!outcome.pass) ++failed;
    std::cout << fmt::format("{} {}: {}", outcome.pass ? "PASS" : "FAIL", name, outcome.detail) << std::endl;
  }
  std::cout << fmt::format("{} of {} criteria passed", criteria.size() - failed, criteria.size()) << std::endl;
  return failed == 0 ? 0 : 1;
}
