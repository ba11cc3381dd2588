#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "gsteer/comb.hpp"
#include "gsteer/error.hpp"
#include "gsteer/tolerances.hpp"

namespace gsteer::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerdict = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitIo = 3;

/// Bad flag values found after CLI11 parsing (exit 2).
class UsageError : public Error {
 public:
  using Error::Error;
};

/// A run refused by a guard such as the enumeration cap (exit 1).
class GuardError : public Error {
 public:
  using Error::Error;
};

struct Common {
  Tolerances tolerances;
  std::size_t jobs = 1;
};

int run_validate(const Common& common, const std::string& cm_path, std::ostream& out);

struct SteerArgs {
  std::string cm_path;
  std::vector<std::string> from;
  std::vector<std::string> to;
  bool both_directions = false;
  std::string report_path;
};
int run_steer(const Common& common, const SteerArgs& args, std::ostream& out);

struct SpectrumArgs {
  std::string cm_path;
  std::string mode = "full";
  std::size_t max_modes = 20;
  std::string whiskers = "tukey";
  std::string out_path;
  std::string csv_path;
};
int run_spectrum(const Common& common, const SpectrumArgs& args, std::ostream& out);

struct LossScanArgs {
  std::string cm_path;
  std::vector<std::string> remove;
  std::size_t max_modes = 20;
  std::string whiskers = "tukey";
  std::string out_path;
};
int run_loss_scan(const Common& common, const LossScanArgs& args, std::ostream& out);

struct MonogamyArgs {
  std::string cm_path;
  std::string relation;
  std::string groups;
  bool sweep = false;
  std::size_t max_group_size = 2;
  std::optional<std::size_t> steered_size;
  bool all_rows = false;
  std::string out_path;
};
int run_monogamy(const Common& common, const MonogamyArgs& args, std::ostream& out);

struct SimulateArgs {
  std::string model_path;
  std::optional<std::size_t> pixels;
  std::string out_path;
};
int run_simulate(const Common& common, const SimulateArgs& args, std::ostream& out);

struct McArgs {
  std::string model_path;
  std::optional<std::size_t> pixels;
  std::vector<std::string> from;
  std::vector<std::string> to;
  std::vector<double> noise_db;
  std::size_t samples = 1000;
  std::uint64_t seed = 0;
  std::string out_path;
};
int run_mc(const Common& common, const McArgs& args, std::ostream& out);

struct CoarsenArgs {
  std::string cm_path;
  std::optional<std::size_t> resolution;
  std::string merge;
  std::string out_path;
};
int run_coarsen(const Common& common, const CoarsenArgs& args, std::ostream& out);

struct FixtureArgs {
  std::string name;
  double r = 0.5;
  std::string out_path;
};
int run_fixture(const FixtureArgs& args, std::ostream& out);

/// "a,b;c>d" -> steering groups {a,b},{c} and steered group {d}.
std::pair<std::vector<std::vector<std::string>>, std::vector<std::vector<std::string>>>
parse_group_spec(const std::string& spec);

}  // namespace gsteer::cli
