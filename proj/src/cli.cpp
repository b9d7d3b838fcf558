#include "smokehouse/cli.hpp"

#include <filesystem>
#include <fstream>
#include <ostream>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "smokehouse/config.hpp"
#include "smokehouse/tuner.hpp"

namespace smokehouse::cli {

namespace {

struct Options {
  std::string config_path;
  std::string preset;
  std::string out_path;
  std::vector<std::string> overrides;
  std::string phase = "cook";
  int budget = 200;
  std::string telemetry_path;
};

void print_violations(std::ostream& err, const ConfigError& e) {
  if (e.violations().empty()) {
    err << "error: " << e.what() << '\n';
    return;
  }
  for (const auto& v : e.violations()) {
    err << "error: " << (v.path.empty() ? "<root>" : v.path) << ": " << v.message << '\n';
  }
}

engine::ScenarioConfig load(const Options& o) {
  if (!o.config_path.empty()) {
    auto text = config::read_file(o.config_path);
    if (!o.preset.empty()) {
      // An explicit --preset picks the base the file is layered on.
      auto doc = config::parse_json(text, o.config_path);
      if (!doc.is_object()) throw ConfigError(std::vector<Violation>{{"", "top level must be an object"}});
      doc["preset"] = o.preset;
      text = doc.dump();
    }
    return config::load_scenario(text, o.config_path, o.overrides);
  }
  return config::preset_with_overrides(o.preset.empty() ? "scad_large" : o.preset, o.overrides);
}

void require_valid(const engine::ScenarioConfig& c) {
  if (auto v = engine::validate(c); !v.empty()) throw ConfigError(std::move(v));
}

int cmd_run(const Options& o, std::ostream& out, std::ostream& err) {
  const auto cfg = load(o);
  require_valid(cfg);
  const auto result = engine::run_scenario(cfg);
  const std::string path = o.out_path.empty() ? "run.csv" : o.out_path;
  std::ofstream csv(path, std::ios::binary);
  if (!csv) {
    err << "error: cannot write " << path << '\n';
    return kExitConfig;
  }
  csv << engine::telemetry_csv(result.telemetry);
  out << "preset: " << cfg.preset_name << '\n';
  out << "telemetry: " << path << " (" << result.telemetry.records.size() << " rows)\n";
  out << engine::format_summary(result.summary, result.telemetry);
  return result.summary.terminal == sequencer::Phase::Done ? kExitOk : kExitFault;
}

int cmd_mechanics(const Options& o, std::ostream& out, std::ostream& err) {
  const auto cfg = load(o);
  try {
    const auto report = mechanics::design_report(cfg.mechanics.load, cfg.mechanics.drive);
    out << mechanics::format_report(report);
  } catch (const InvalidInput& e) {
    err << "error: mechanics: " << e.what() << '\n';
    return kExitConfig;
  }
  return kExitOk;
}

int cmd_tune(const Options& o, std::ostream& out, std::ostream& err) {
  tuner::TunePhase phase;
  if (o.phase == "cook") {
    phase = tuner::TunePhase::Cook;
  } else if (o.phase == "smoke") {
    phase = tuner::TunePhase::Smoke;
  } else {
    err << "error: --phase must be cook or smoke (got '" << o.phase << "')\n";
    return kExitConfig;
  }
  if (o.budget < 1) {
    err << "error: --budget must be >= 1\n";
    return kExitConfig;
  }
  const auto cfg = load(o);
  require_valid(cfg);
  const auto& initial = phase == tuner::TunePhase::Cook ? cfg.gains.cook : cfg.gains.smoke;
  const auto r = tuner::tune_gains(cfg, phase, initial, o.budget);

  config::json fragment;
  fragment["gains"][o.phase] = {{"kp", r.gains.kp}, {"ki", r.gains.ki}, {"kd", r.gains.kd}};
  if (phase == tuner::TunePhase::Smoke) fragment["control"]["fan_mode"] = "pid";

  std::filesystem::path dest;
  if (!o.out_path.empty()) {
    dest = o.out_path;
  } else if (!o.config_path.empty()) {
    const std::filesystem::path src(o.config_path);
    dest = src.parent_path() / (src.stem().string() + ".tuned-" + o.phase + ".json");
  } else {
    dest = cfg.preset_name + ".tuned-" + o.phase + ".json";
  }
  std::ofstream file(dest, std::ios::binary);
  if (!file) {
    err << "error: cannot write " << dest.string() << '\n';
    return kExitConfig;
  }
  file << fragment.dump(2) << '\n';

  out << fmt::format("tuned {} gains over {} evaluations\n", o.phase, r.evaluations);
  out << fmt::format("  initial  kp={:.6g} ki={:.6g} kd={:.6g}  objective={:.4f}\n", initial.kp,
                     initial.ki, initial.kd, r.initial_objective);
  out << fmt::format("  best     kp={:.6g} ki={:.6g} kd={:.6g}  objective={:.4f}\n", r.gains.kp,
                     r.gains.ki, r.gains.kd, r.objective);
  out << "fragment: " << dest.string() << '\n';
  out << "\n[tune]\n";
  out << fmt::format("phase={}\nevaluations={}\nkp={:.17g}\nki={:.17g}\nkd={:.17g}\n", o.phase,
                     r.evaluations, r.gains.kp, r.gains.ki, r.gains.kd);
  out << fmt::format("objective={:.17g}\ninitial_objective={:.17g}\n", r.objective,
                     r.initial_objective);
  return kExitOk;
}

int cmd_summarize(const Options& o, std::ostream& out, std::ostream& err) {
  const auto cfg = load(o);
  require_valid(cfg);
  engine::Telemetry tel;
  try {
    tel = engine::parse_telemetry_csv(config::read_file(o.telemetry_path));
  } catch (const InvalidInput& e) {
    err << "error: " << o.telemetry_path << ": " << e.what() << '\n';
    return kExitConfig;
  }
  if (tel.records.empty()) {
    err << "error: " << o.telemetry_path << ": no telemetry rows\n";
    return kExitConfig;
  }
  out << engine::format_summary(engine::summarize(tel, cfg), tel);
  return kExitOk;
}

int cmd_validate(const Options& o, std::ostream& out, std::ostream& err) {
  const auto cfg = load(o);
  const auto violations = engine::validate(cfg);
  if (violations.empty()) {
    out << "ok: " << (o.config_path.empty() ? cfg.preset_name : o.config_path) << '\n';
    return kExitOk;
  }
  for (const auto& v : violations) err << "violation: " << v.path << ": " << v.message << '\n';
  return kExitConfig;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Smoked-fish machine simulator"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&o](CLI::App* sub) {
    sub->add_option("--config", o.config_path, "scenario JSON file");
    sub->add_option("--preset", o.preset, "scad_large | scad_medium | milkfish | tilapia");
    sub->add_option("--set", o.overrides, "dotted.path=value override (repeatable)");
  };

  auto* run = app.add_subcommand("run", "simulate one batch and write telemetry CSV");
  add_common(run);
  run->add_option("--out", o.out_path, "telemetry CSV path (default ./run.csv)");

  auto* mech = app.add_subcommand("mechanics", "print the lift drive design report");
  add_common(mech);

  auto* tune = app.add_subcommand("tune", "search PID gains for one phase");
  add_common(tune);
  tune->add_option("--phase", o.phase, "cook | smoke");
  tune->add_option("--budget", o.budget, "number of simulated runs");
  tune->add_option("--out", o.out_path, "where to write the gains fragment");

  auto* summ = app.add_subcommand("summarize", "summarize an existing telemetry CSV");
  add_common(summ);
  summ->add_option("telemetry", o.telemetry_path, "telemetry CSV")->required();

  auto* val = app.add_subcommand("validate", "check a scenario config");
  add_common(val);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }

  try {
    if (run->parsed()) return cmd_run(o, out, err);
    if (mech->parsed()) return cmd_mechanics(o, out, err);
    if (tune->parsed()) return cmd_tune(o, out, err);
    if (summ->parsed()) return cmd_summarize(o, out, err);
    if (val->parsed()) return cmd_validate(o, out, err);
  } catch (const ConfigError& e) {
    print_violations(err, e);
    return kExitConfig;
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  return kExitConfig;
}

}  // namespace smokehouse::cli
