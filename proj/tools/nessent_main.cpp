/*
 * nessent: entanglement measures for biased tight-binding chains
 * Copyright 2026 nessent developers
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 */

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nessent/cli.hpp"

namespace {

int load_config(const std::string& path, nessent::ExperimentConfig& config) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "error: cannot read config file: " << path << "\n";
    return 2;
  }
  nessent::Json doc;
  try {
    in >> doc;
  } catch (const std::exception& e) {
    std::cerr << "error: config is not valid JSON: " << e.what() << "\n";
    return 2;
  }
  std::vector<std::string> errors;
  config = nessent::parse_config(doc, errors);
  if (!errors.empty()) {
    std::cerr << "invalid config (" << errors.size() << " problem"
              << (errors.size() == 1 ? "" : "s") << "):\n";
    for (const auto& e : errors) std::cerr << "  - " << e << "\n";
    return 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"nessent: entanglement measures for biased chains"};
  app.require_subcommand(1);

  std::string config_path;
  auto* run = app.add_subcommand("run", "run an experiment config");
  run->add_option("config", config_path, "JSON config file")->required();
  auto* validate =
      app.add_subcommand("validate", "validate a config without running");
  validate->add_option("config", config_path, "JSON config file")->required();
  auto* list = app.add_subcommand("list-experiments",
                                  "list the available experiments");

  CLI11_PARSE(app, argc, argv);

  if (list->parsed()) {
    for (const auto& name : nessent::list_experiments())
      std::cout << name << "\n";
    return 0;
  }

  nessent::ExperimentConfig config;
  if (const int rc = load_config(config_path, config)) return rc;
  if (validate->parsed()) {
    std::cout << "ok: " << config.experiment << "\n";
    return 0;
  }

  try {
    const auto report = nessent::run_experiment(config);
    nessent::write_report(report, config);
    std::cout << "wrote " << report.rows.size() << " rows to "
              << config.output_path << "\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
