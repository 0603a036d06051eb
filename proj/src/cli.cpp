// SPDX-License-Identifier: Apache-2.0
#include "tubelab/cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <iostream>

#include "tubelab/errors.hpp"
#include "tubelab/experiments.hpp"
#include "tubelab/property_checks.hpp"

namespace tubelab {

namespace {

template <class T>
const T& section(const std::optional<T>& s, const std::string& name) {
  if (!s) throw ConfigError("the config has no '" + name + "' section");
  return *s;
}

}  // namespace

std::vector<Report> run_subcommand(const std::string& name, const RunConfig& cfg) {
  std::vector<Report> out;
  const bool all = name == "all";
  auto wants = [&](const std::string& sub, bool present) { return all ? present : name == sub; };
  if (wants("symplectic-check", cfg.symplectic_check.has_value()))
    out.push_back(run_symplectic_check(section(cfg.symplectic_check, "symplectic_check"), cfg.seed));
  if (wants("gaussian-check", cfg.gaussian_check.has_value()))
    out.push_back(run_gaussian_check(section(cfg.gaussian_check, "gaussian_check"), cfg.seed));
  if (wants("kernel", cfg.kernel.has_value())) out.push_back(run_kernel(section(cfg.kernel, "kernel")));
  if (wants("scaling", cfg.scaling.has_value())) out.push_back(run_scaling(section(cfg.scaling, "scaling"), cfg.seed));
  if (wants("rapid-decay", cfg.rapid_decay.has_value()))
    out.push_back(run_rapid_decay(section(cfg.rapid_decay, "rapid_decay")));
  if (wants("weyl", cfg.weyl.has_value())) out.push_back(run_weyl(section(cfg.weyl, "weyl")));
  if (wants("husimi", cfg.husimi.has_value())) out.push_back(run_husimi(section(cfg.husimi, "husimi")));
  if (wants("qsymbol", cfg.qsymbol.has_value())) out.push_back(run_qsymbol(section(cfg.qsymbol, "qsymbol")));
  if (out.empty()) throw ConfigError("nothing to run: the config has no experiment sections");
  return out;
}

int run_cli(int argc, char** argv) {
  CLI::App app{"tubelab: lattice-sum checks of Grauert-tube kernel asymptotics on flat tori"};
  std::string sub;
  std::string config_path;
  std::string output_dir;
  std::vector<std::string> overrides;
  bool quiet = false;
  app.add_option("subcommand", sub, "symplectic-check | gaussian-check | kernel | scaling | rapid-decay | weyl | "
                                    "husimi | qsymbol | all")
      ->required()
      ->check(CLI::IsMember(subcommands()));
  app.add_option("config", config_path, "JSON config file")->required();
  app.add_option("-o,--output-dir", output_dir, "output directory (overrides output_dir)");
  app.add_option("--set", overrides, "override a scalar field: /json/pointer=value")->take_all();
  app.add_flag("-q,--quiet", quiet, "print only the summary line");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  RunConfig cfg;
  try {
    std::ifstream in(config_path);
    if (!in) throw ConfigError("cannot open config file '" + config_path + "'");
    Json doc;
    try {
      doc = Json::parse(in);
    } catch (const Json::parse_error& e) {
      throw ConfigError(config_path + ": " + e.what());
    }
    for (const std::string& o : overrides) {
      auto eq = o.find('=');
      if (eq == std::string::npos) throw ConfigError("override '" + o + "' must have the form /pointer=value");
      apply_override(doc, o.substr(0, eq), o.substr(eq + 1));
    }
    cfg = parse_config(doc);
    if (!output_dir.empty()) cfg.output_dir = output_dir;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "numerical guard: " << e.what() << "\n";
    return kExitNumeric;
  }

  try {
    const auto start = std::chrono::steady_clock::now();
    std::vector<Report> reports = run_subcommand(sub, cfg);
    bool ok = true;
    for (const Report& r : reports) {
      write_report(r, cfg.output_dir + "/" + r.experiment);
      for (const Criterion& c : r.criteria) {
        if (!quiet) {
          std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << r.experiment << "/" << c.name
                    << " value=" << format_double(c.value) << " threshold=" << format_double(c.threshold) << " ("
                    << c.rule << ")\n";
        }
      }
      ok = ok && r.passed();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cerr << "tubelab " << sub << ": " << (ok ? "all criteria passed" : "some criteria failed") << " in " << secs
              << " s; outputs in " << cfg.output_dir << "\n";
    return ok ? kExitOk : kExitCriterion;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "numerical guard: " << e.what() << "\n";
    return kExitNumeric;
  }
}

}  // namespace tubelab
