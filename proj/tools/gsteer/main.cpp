#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "commands.hpp"
#include "gsteer/io/tolerance_file.hpp"
#include "gsteer/version.hpp"

namespace {

using namespace gsteer;
using namespace gsteer::cli;

std::size_t default_jobs() {
  const char* env = std::getenv("GSTEER_JOBS");
  if (env == nullptr || *env == '\0') return 1;
  char* end = nullptr;
  const unsigned long v = std::strtoul(env, &end, 10);
  if (*end != '\0' || v == 0) {
    throw UsageError(fmt::format("GSTEER_JOBS must be a positive integer (got '{}')", env));
  }
  return v;
}

int fail(int code, const std::string& message) {
  fmt::print(std::cerr, "gsteer: {}\n", message);
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gaussian EPR steering toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string(gsteer::kVersion));

  std::string config_path;
  std::optional<std::size_t> jobs;
  app.add_option("--config", config_path, "Tolerance override file (JSON)")->check(CLI::ExistingFile);
  app.add_option("-j,--jobs", jobs, "Worker threads (default: GSTEER_JOBS or 1)")
      ->check(CLI::PositiveNumber);

  std::string validate_path;
  auto* validate = app.add_subcommand("validate", "Check that a covariance matrix is a physical state");
  validate->add_option("cm", validate_path, "Covariance-matrix file")->required();

  SteerArgs steer;
  auto* steer_cmd = app.add_subcommand("steer", "Steerability between two mode groups");
  steer_cmd->add_option("cm", steer.cm_path, "Covariance-matrix file")->required();
  steer_cmd->add_option("--from", steer.from, "Steering modes (labels or indices)")
      ->required()->delimiter(',');
  steer_cmd->add_option("--to", steer.to, "Steered modes")->required()->delimiter(',');
  steer_cmd->add_flag("--both-directions", steer.both_directions, "Also evaluate the reverse direction");
  steer_cmd->add_option("--report", steer.report_path, "Write a JSON report");

  SpectrumArgs spectrum;
  auto* spectrum_cmd = app.add_subcommand("spectrum", "Steerability of every bipartition");
  spectrum_cmd->add_option("cm", spectrum.cm_path, "Covariance-matrix file")->required();
  spectrum_cmd->add_option("--mode", spectrum.mode, "full or pairs")
      ->check(CLI::IsMember({"full", "pairs"}))->capture_default_str();
  spectrum_cmd->add_option("--max-modes", spectrum.max_modes, "Enumeration guard")
      ->capture_default_str();
  spectrum_cmd->add_option("--whiskers", spectrum.whiskers,
                           "tukey[:factor] or percentile:lower:upper")->capture_default_str();
  spectrum_cmd->add_option("--out", spectrum.out_path, "Write a JSON report");
  spectrum_cmd->add_option("--csv", spectrum.csv_path, "Write plot-ready CSV rows");

  LossScanArgs loss;
  auto* loss_cmd = app.add_subcommand("loss-scan", "Spectra after removing modes one by one");
  loss_cmd->add_option("cm", loss.cm_path, "Covariance-matrix file")->required();
  loss_cmd->add_option("--remove", loss.remove, "Removal order (labels)")->delimiter(',');
  loss_cmd->add_option("--max-modes", loss.max_modes, "Enumeration guard")->capture_default_str();
  loss_cmd->add_option("--whiskers", loss.whiskers, "tukey[:factor] or percentile:lower:upper")
      ->capture_default_str();
  loss_cmd->add_option("--out", loss.out_path, "Write a JSON report");

  MonogamyArgs mono;
  auto* mono_cmd = app.add_subcommand("monogamy", "Audit a steering monogamy relation");
  mono_cmd->add_option("cm", mono.cm_path, "Covariance-matrix file")->required();
  mono_cmd->add_option("--relation", mono.relation,
                       "typeI, typeII, ckw, typeIV-steered or typeIV-steering")->required();
  mono_cmd->add_option("--groups", mono.groups, "Groups as 'a,b;c>d': ';' between groups, '>' between sides");
  mono_cmd->add_flag("--sweep", mono.sweep, "Audit every configuration up to the size cap");
  mono_cmd->add_option("--max-group-size", mono.max_group_size, "Size cap for --sweep")
      ->check(CLI::PositiveNumber)->capture_default_str();
  mono_cmd->add_option("--steered-size", mono.steered_size, "typeII sweep: fixed steered size")
      ->check(CLI::PositiveNumber);
  mono_cmd->add_flag("--all", mono.all_rows, "Print satisfied rows of a sweep too");
  mono_cmd->add_option("--out", mono.out_path, "Write a JSON report");

  SimulateArgs sim;
  auto* sim_cmd = app.add_subcommand("simulate", "Pixel-basis covariance matrix of a comb model");
  sim_cmd->add_option("model", sim.model_path, "Model file (JSON)")->required();
  sim_cmd->add_option("--pixels", sim.pixels, "4, 8 or 16")->check(CLI::IsMember({4, 8, 16}));
  sim_cmd->add_option("--out", sim.out_path, "Covariance-matrix output (default: stdout)");

  McArgs mc;
  auto* mc_cmd = app.add_subcommand("mc", "Monte Carlo uncertainty of a steerability");
  mc_cmd->add_option("model", mc.model_path, "Model file (JSON)")->required();
  mc_cmd->add_option("--pixels", mc.pixels, "4, 8 or 16")->check(CLI::IsMember({4, 8, 16}));
  mc_cmd->add_option("--from", mc.from, "Steering pixels")->required()->delimiter(',');
  mc_cmd->add_option("--to", mc.to, "Steered pixels")->required()->delimiter(',');
  mc_cmd->add_option("--noise-db", mc.noise_db, "Squeezing s.d. in dB: one value or one per eigenmode")
      ->required()->delimiter(',');
  mc_cmd->add_option("--samples", mc.samples, "Number of draws")->capture_default_str();
  mc_cmd->add_option("--seed", mc.seed, "Generator seed")->capture_default_str();
  mc_cmd->add_option("--out", mc.out_path, "Write a JSON report");

  CoarsenArgs coarsen;
  auto* coarsen_cmd = app.add_subcommand("coarsen", "Merge pixels into wider bands");
  coarsen_cmd->add_option("cm", coarsen.cm_path, "Covariance-matrix file")->required();
  coarsen_cmd->add_option("--resolution", coarsen.resolution, "Target pixel count 4 or 8")
      ->check(CLI::IsMember({4, 8, 16}));
  coarsen_cmd->add_option("--merge", coarsen.merge, "Band-merge spec, e.g. 'a11+a12,a21+a22'");
  coarsen_cmd->add_option("--out", coarsen.out_path, "Covariance-matrix output (default: stdout)");

  FixtureArgs fixture;
  auto* fixture_cmd = app.add_subcommand("fixture", "Emit a built-in model or state");
  fixture_cmd->add_option("name", fixture.name,
                          "default, single-eigenmode, one-way, mirror-pairs, tmsv-like, tmsv, vacuum")
      ->required();
  fixture_cmd->add_option("--r", fixture.r, "Squeezing parameter for tmsv and tmsv-like")
      ->capture_default_str();
  fixture_cmd->add_option("--out", fixture.out_path, "Output file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    Common common;
    common.jobs = jobs ? *jobs : default_jobs();
    if (!config_path.empty()) common.tolerances = io::read_tolerance_file(config_path);

    auto& out = std::cout;
    if (validate->parsed()) return run_validate(common, validate_path, out);
    if (steer_cmd->parsed()) return run_steer(common, steer, out);
    if (spectrum_cmd->parsed()) return run_spectrum(common, spectrum, out);
    if (loss_cmd->parsed()) return run_loss_scan(common, loss, out);
    if (mono_cmd->parsed()) return run_monogamy(common, mono, out);
    if (sim_cmd->parsed()) return run_simulate(common, sim, out);
    if (mc_cmd->parsed()) return run_mc(common, mc, out);
    if (coarsen_cmd->parsed()) return run_coarsen(common, coarsen, out);
    if (fixture_cmd->parsed()) return run_fixture(fixture, out);
  } catch (const ParseError& e) {
    return fail(kExitIo, fmt::format("parse error: {}", e.what()));
  } catch (const IoError& e) {
    return fail(kExitIo, e.what());
  } catch (const SchemaError& e) {
    return fail(kExitIo, fmt::format("schema error: {}", e.what()));
  } catch (const UsageError& e) {
    return fail(kExitUsage, e.what());
  } catch (const PartitionError& e) {
    return fail(kExitUsage, e.what());
  } catch (const InvalidArgument& e) {
    return fail(kExitUsage, e.what());
  } catch (const Error& e) {
    return fail(kExitVerdict, e.what());
  }
  return kExitUsage;
}
