#include "commands.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <limits>

#include <fmt/format.h>
#include <fmt/ostream.h>
#include <fmt/ranges.h>

#include "digest.hpp"
#include "gsteer/fixtures.hpp"
#include "gsteer/io/cm_file.hpp"
#include "gsteer/io/model_file.hpp"
#include "gsteer/io/report.hpp"
#include "gsteer/monogamy.hpp"
#include "gsteer/monte_carlo.hpp"

namespace gsteer::cli {

using nlohmann::json;

namespace {

struct LoadedCm {
  CovarianceMatrix cm;
  io::ReportInput input;
};

std::string file_name(const std::string& path) {
  return std::filesystem::path(path).filename().string();
}

LoadedCm load_cm(const std::string& path, const Tolerances& tol) {
  const std::string text = io::read_text_file(path);
  io::CmDocument doc = io::parse_cm(text);
  require_valid(doc.cm, tol);
  return {std::move(doc.cm), {"cm", file_name(path), sha256_hex(text)}};
}

struct LoadedModel {
  CombModel model;
  io::ReportInput input;
};

LoadedModel load_model(const std::string& path) {
  const std::string text = io::read_text_file(path);
  return {io::model_from_json(io::parse_json_text(text)),
          {"model", file_name(path), sha256_hex(text)}};
}

void emit(const std::string& path, const json& report) {
  if (!path.empty()) io::write_text_file(path, io::dump_report(report));
}

std::string join_labels(const ModeGroup& modes, const CovarianceMatrix& cm) {
  std::vector<std::string> names;
  for (std::size_t m : modes) names.push_back(cm.label(m));
  return fmt::format("{}", fmt::join(names, ","));
}

std::string join_groups(const std::vector<ModeGroup>& groups, const CovarianceMatrix& cm) {
  std::vector<std::string> parts;
  for (const auto& g : groups) parts.push_back(join_labels(g, cm));
  return fmt::format("{}", fmt::join(parts, ";"));
}

double parse_double(std::string_view text, std::string_view what) {
  double v = 0.0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) {
    throw UsageError(fmt::format("{}: '{}' is not a number", what, text));
  }
  return v;
}

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = text.find(sep, start);
    out.emplace_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

WhiskerRule parse_whiskers(const std::string& spec) {
  const auto parts = split(spec, ':');
  if (parts[0] == "tukey" && parts.size() <= 2) {
    return WhiskerRule::tukey(parts.size() == 2 ? parse_double(parts[1], "--whiskers") : 1.5);
  }
  if (parts[0] == "percentile" && parts.size() == 3) {
    return WhiskerRule::percentile(parse_double(parts[1], "--whiskers"),
                                   parse_double(parts[2], "--whiskers"));
  }
  throw UsageError(fmt::format(
      "--whiskers: expected tukey[:factor] or percentile:lower:upper, got '{}'", spec));
}

void guard_modes(std::size_t n_modes, std::size_t max_modes) {
  if (n_modes > max_modes) {
    throw GuardError(fmt::format(
        "{} modes exceed the enumeration guard of {} (raise --max-modes to override)", n_modes,
        max_modes));
  }
}

void print_stats(std::ostream& out, const std::vector<SplitStats>& stats) {
  fmt::print(out, "{:>3} {:>3} {:>7} {:>9} {:>9} {:>9} {:>9} {:>9} {:>9}\n", "|m|", "|n|", "count",
             "steerable", "min", "q1", "median", "q3", "max");
  for (const auto& s : stats) {
    fmt::print(out, "{:>3} {:>3} {:>7} {:>9} {:>9.6f} {:>9.6f} {:>9.6f} {:>9.6f} {:>9.6f}\n",
               s.steering_size, s.steered_size, s.box.count, s.n_steerable, s.box.min, s.box.q1,
               s.box.median, s.box.q3, s.box.max);
  }
}

json scan_settings(const Common& common, const WhiskerRule& whiskers) {
  return {{"tolerances", io::to_json(common.tolerances)}, {"whiskers", io::to_json(whiskers)}};
}

}  // namespace

std::pair<std::vector<std::vector<std::string>>, std::vector<std::vector<std::string>>>
parse_group_spec(const std::string& spec) {
  const auto sides = split(spec, '>');
  if (sides.size() != 2) {
    throw UsageError(fmt::format("--groups: expected 'steering > steered', got '{}'", spec));
  }
  const auto side = [&](const std::string& text) {
    std::vector<std::vector<std::string>> groups;
    for (const auto& g : split(text, ';')) {
      std::vector<std::string> labels;
      for (auto& l : split(g, ',')) {
        const auto first = l.find_first_not_of(' ');
        const auto last = l.find_last_not_of(' ');
        if (first == std::string::npos) throw UsageError(fmt::format("--groups: empty label in '{}'", spec));
        labels.push_back(l.substr(first, last - first + 1));
      }
      groups.push_back(std::move(labels));
    }
    return groups;
  };
  return {side(sides[0]), side(sides[1])};
}

int run_validate(const Common& common, const std::string& cm_path, std::ostream& out) {
  const io::CmDocument doc = io::read_cm_file(cm_path);
  const ValidationVerdict v = validate(doc.cm, common.tolerances);
  fmt::print(out, "file: {}\n", file_name(cm_path));
  fmt::print(out, "n_modes: {}\n", doc.cm.n_modes());
  fmt::print(out, "valid: {}\n", v.valid() ? "yes" : "no");
  fmt::print(out, "asymmetry: {:.3g}\n", v.asymmetry);
  fmt::print(out, "min_eigenvalue: {:.6g}\n", v.min_eigenvalue);
  if (v.min_symplectic_eigenvalue) {
    fmt::print(out, "min_symplectic_eigenvalue: {:.6g}\n", *v.min_symplectic_eigenvalue);
  }
  for (const auto& f : v.failures) fmt::print(out, "failure: {}\n", f.describe());
  return v.valid() ? kExitOk : kExitVerdict;
}

int run_steer(const Common& common, const SteerArgs& args, std::ostream& out) {
  const LoadedCm in = load_cm(args.cm_path, common.tolerances);
  Bipartition part{in.cm.resolve(args.from), in.cm.resolve(args.to)};
  part.check(in.cm.n_modes());
  std::vector<SteeringResult> results{steering(in.cm, part, common.tolerances)};
  if (args.both_directions) results.push_back(steering(in.cm, part.reversed(), common.tolerances));

  json payload = json::array();
  for (const auto& r : results) {
    fmt::print(out, "G({} -> {}) = {:.6f} nats\n", join_labels(r.partition.steering, in.cm),
               join_labels(r.partition.steered, in.cm), r.value);
    std::vector<std::string> nu;
    for (double v : r.spectrum) nu.push_back(fmt::format("{:.6f}", v));
    fmt::print(out, "  conditional symplectic spectrum: {}\n", fmt::join(nu, " "));
    payload.push_back(io::to_json(r, in.cm));
  }
  json result = {{"results", payload}};
  if (args.both_directions) {
    const Direction d = classify_direction(results[0].value, results[1].value, common.tolerances);
    fmt::print(out, "direction: {}\n", to_string(d));
    result["direction"] = to_string(d);
  }
  emit(args.report_path,
       io::make_report("steer", {in.input}, {{"tolerances", io::to_json(common.tolerances)}},
                       std::move(result)));
  return kExitOk;
}

int run_spectrum(const Common& common, const SpectrumArgs& args, std::ostream& out) {
  const EnumerationMode mode = parse_enumeration_mode(args.mode);
  const WhiskerRule whiskers = parse_whiskers(args.whiskers);
  const LoadedCm in = load_cm(args.cm_path, common.tolerances);
  guard_modes(in.cm.n_modes(), args.max_modes);
  const ScanOptions options{common.jobs, whiskers, common.tolerances};
  const SteeringSpectrumReport report = steering_spectrum(in.cm, mode, options);

  fmt::print(out, "{} bipartitions ({}), {} steerable, {} failed\n", report.outcomes.size(),
             to_string(mode), report.steerable_count(), report.failed_count());
  print_stats(out, report.stats);
  json settings = scan_settings(common, whiskers);
  settings["mode"] = to_string(mode);
  emit(args.out_path, io::make_report("spectrum", {in.input}, std::move(settings),
                                      io::to_json(report, in.cm)));
  if (!args.csv_path.empty()) io::write_text_file(args.csv_path, io::spectrum_csv(report, in.cm));
  return kExitOk;
}

int run_loss_scan(const Common& common, const LossScanArgs& args, std::ostream& out) {
  const WhiskerRule whiskers = parse_whiskers(args.whiskers);
  const LoadedCm in = load_cm(args.cm_path, common.tolerances);
  // The first step scans the most modes.
  guard_modes(in.cm.n_modes() - (args.remove.empty() ? 0 : 1), args.max_modes);
  const ScanOptions options{common.jobs, whiskers, common.tolerances};
  const LossScanReport report = loss_scan(in.cm, args.remove, options);

  fmt::print(out, "{:>4} {:>8} {:>6} {:>13} {:>9}\n", "step", "removed", "modes", "bipartitions",
             "steerable");
  for (std::size_t i = 0; i < report.steps.size(); ++i) {
    const auto& s = report.steps[i];
    fmt::print(out, "{:>4} {:>8} {:>6} {:>13} {:>9}\n", i + 1,
               s.removed.empty() ? "-" : s.removed.back(), s.remaining_modes, s.n_bipartitions,
               s.n_steerable);
  }
  emit(args.out_path, io::make_report("loss-scan", {in.input}, scan_settings(common, whiskers),
                                      io::to_json(report, in.cm)));
  return kExitOk;
}

int run_monogamy(const Common& common, const MonogamyArgs& args, std::ostream& out) {
  const MonogamyRelation relation = parse_monogamy_relation(args.relation);
  if (args.sweep == !args.groups.empty()) throw UsageError("give exactly one of --groups or --sweep");
  const LoadedCm in = load_cm(args.cm_path, common.tolerances);

  std::vector<MonogamyConfig> configs;
  if (args.sweep) {
    guard_modes(in.cm.n_modes(), 20);
    configs = sweep_configurations(in.cm.n_modes(), relation,
                                   {args.max_group_size, args.steered_size});
  } else {
    const auto [steering_groups, steered_groups] = parse_group_spec(args.groups);
    MonogamyConfig c;
    for (const auto& g : steering_groups) c.steering.push_back(in.cm.resolve(g));
    for (const auto& g : steered_groups) c.steered.push_back(in.cm.resolve(g));
    configs.push_back(std::move(c));
  }
  const auto reports =
      audit_monogamy_many(in.cm, relation, configs, common.jobs, common.tolerances);

  std::size_t violations = 0;
  for (const auto& r : reports) {
    if (!r.satisfied) ++violations;
    if (!r.satisfied || args.all_rows || !args.sweep) {
      fmt::print(out, "{:<9} {} > {}  lhs {:.6f} rhs {:.6f} margin {:.6f}\n",
                 r.satisfied ? "ok" : "VIOLATED", join_groups(r.configuration.steering, in.cm),
                 join_groups(r.configuration.steered, in.cm), r.lhs, r.rhs, r.margin);
    }
  }
  fmt::print(out, "{}: {} configurations, {} violations\n", to_string(relation), reports.size(),
             violations);
  json settings = {{"relation", to_string(relation)},
                   {"tolerances", io::to_json(common.tolerances)}};
  if (args.sweep) {
    settings["sweep"] = {{"max_group_size", args.max_group_size},
                         {"steered_size", args.steered_size ? json(*args.steered_size) : json()}};
  } else {
    settings["groups"] = args.groups;
  }
  emit(args.out_path,
       io::make_report("monogamy", {in.input}, std::move(settings), io::to_json(reports, in.cm)));
  return kExitOk;
}

int run_simulate(const Common& common, const SimulateArgs& args, std::ostream& out) {
  LoadedModel in = load_model(args.model_path);
  const CombModel model = args.pixels ? in.model.at_resolution(*args.pixels) : in.model;
  const CovarianceMatrix cm = simulate_cm(model, common.tolerances);
  std::string provenance = fmt::format("simulated at {} pixels from {}", model.n_pixels,
                                       in.input.name);
  if (!model.provenance.empty()) provenance += fmt::format(" ({})", model.provenance);
  const std::string text = io::format_cm(cm, provenance);
  if (args.out_path.empty()) {
    out << text;
  } else {
    io::write_text_file(args.out_path, text);
    fmt::print(out, "wrote {}-mode covariance matrix to {}\n", cm.n_modes(), args.out_path);
  }
  return kExitOk;
}

int run_mc(const Common& common, const McArgs& args, std::ostream& out) {
  LoadedModel in = load_model(args.model_path);
  const CombModel model = args.pixels ? in.model.at_resolution(*args.pixels) : in.model;
  // Only used to resolve and print pixel labels.
  const CovarianceMatrix named(CovarianceMatrix::vacuum(model.n_pixels).entries(),
                               pixel_labels(model.n_pixels));
  const Bipartition part{named.resolve(args.from), named.resolve(args.to)};
  const UncertaintyEstimate est = monte_carlo_uncertainty(
      model, part, args.noise_db, args.samples, args.seed, {common.jobs, common.tolerances});
  fmt::print(out, "G({} -> {}) = {:.6f} +/- {:.6f} nats ({} samples, {} rejected, seed {})\n",
             join_labels(part.steering, named), join_labels(part.steered, named), est.mean,
             est.std, est.n_samples, est.n_unphysical_rejected, est.seed);
  json settings = {{"from", args.from},
                   {"to", args.to},
                   {"noise_db", args.noise_db},
                   {"n_pixels", model.n_pixels},
                   {"tolerances", io::to_json(common.tolerances)}};
  emit(args.out_path, io::make_report("mc", {in.input}, std::move(settings), io::to_json(est)));
  return kExitOk;
}

int run_coarsen(const Common& common, const CoarsenArgs& args, std::ostream& out) {
  if (args.resolution.has_value() == !args.merge.empty()) {
    throw UsageError("give exactly one of --resolution or --merge");
  }
  const LoadedCm in = load_cm(args.cm_path, common.tolerances);
  std::optional<ModeMap> map;
  if (args.resolution) {
    if (std::find(kResolutions.begin(), kResolutions.end(), in.cm.n_modes()) == kResolutions.end()) {
      throw UsageError(fmt::format("--resolution needs a 4, 8 or 16 pixel state (got {} modes)",
                                   in.cm.n_modes()));
    }
    map = coarsening_map(in.cm.n_modes(), *args.resolution);
  } else {
    std::vector<ModeGroup> groups;
    std::vector<std::string> labels;
    for (const auto& g : split(args.merge, ',')) {
      groups.push_back(in.cm.resolve(split(g, '+')));
      labels.push_back(g);
    }
    map = ModeMap::band_merge(in.cm.n_modes(), groups, labels);
  }
  const CovarianceMatrix cm = apply_mode_map(in.cm, *map);
  const std::string text =
      io::format_cm(cm, fmt::format("coarsened from {} ({} modes)", in.input.name, in.cm.n_modes()));
  if (args.out_path.empty()) {
    out << text;
  } else {
    io::write_text_file(args.out_path, text);
    fmt::print(out, "wrote {}-mode covariance matrix to {}\n", cm.n_modes(), args.out_path);
  }
  return kExitOk;
}

int run_fixture(const FixtureArgs& args, std::ostream& out) {
  const auto write = [&](const std::string& text) {
    if (args.out_path.empty()) {
      out << text;
    } else {
      io::write_text_file(args.out_path, text);
    }
  };
  const auto model_text = [](const CombModel& m) { return io::model_to_json(m).dump(2) + "\n"; };
  if (args.name == "default") {
    write(model_text(fixtures::default_comb()));
  } else if (args.name == "single-eigenmode") {
    write(model_text(fixtures::single_eigenmode()));
  } else if (args.name == "one-way") {
    write(model_text(fixtures::one_way()));
  } else if (args.name == "mirror-pairs") {
    write(model_text(fixtures::mirror_pairs()));
  } else if (args.name == "tmsv-like") {
    write(model_text(fixtures::tmsv_like(args.r)));
  } else if (args.name == "tmsv") {
    write(io::format_cm(fixtures::two_mode_squeezed_vacuum(args.r),
                        fmt::format("two-mode squeezed vacuum, r = {}", args.r)));
  } else if (args.name == "vacuum") {
    write(io::format_cm(CovarianceMatrix(CovarianceMatrix::vacuum(4).entries(), pixel_labels(4)),
                        "4-mode vacuum"));
  } else {
    throw UsageError(fmt::format("unknown fixture '{}'", args.name));
  }
  return kExitOk;
}

}  // namespace gsteer::cli
