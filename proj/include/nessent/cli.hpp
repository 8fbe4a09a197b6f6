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

#ifndef NESSENT_CLI_HPP
#define NESSENT_CLI_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "nessent/scatter.hpp"

namespace nessent {

using Json = nlohmann::json;

inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr int kSchemaVersion = 1;

/// Declarative description of one experiment run. Fully deterministic:
/// no seeds, no environment lookups.
struct ExperimentConfig {
  std::string experiment;
  double k_fl = 0.0;
  double k_fr = 0.0;
  std::optional<ScattererModel> model;
  std::optional<ScattererModel> right_model;  // two_scatterer only
  std::vector<int> L_list;
  std::vector<long> d_list;
  std::vector<double> n_list;
  std::vector<double> alpha_list;
  std::vector<double> dk_list;
  std::string target;  // coefficient_sweep: "genfun" or "vnee"
  int q_halfwidth = 6;
  int q_offsets = 3;
  std::string output_path;
  std::string output_format = "csv";
  /// Hash of the canonical config document, embedded in every report.
  std::uint64_t config_hash = 0;
  /// Compact model descriptions echoed into every row.
  std::string model_desc;
  std::string right_model_desc;
  /// The parsed document, echoed into report metadata.
  Json raw;
};

std::vector<std::string> list_experiments();

/// Parses and validates a config document. All problems are collected
/// into `errors` (field-named, human-readable); the returned config is
/// only meaningful when `errors` stays empty.
ExperimentConfig parse_config(const Json& doc, std::vector<std::string>& errors);

/// Columnar result of one run; rows are JSON objects keyed by column.
struct Report {
  Json meta;
  std::vector<std::string> columns;
  std::vector<Json> rows;
};

Report run_experiment(const ExperimentConfig& config);

/// RFC-4180-style CSV; numbers carry 17 significant digits so a
/// round-trip through text is lossless.
std::string report_to_csv(const Report& report);
std::string report_to_json(const Report& report);

/// Serializes per config.output_format and writes config.output_path.
void write_report(const Report& report, const ExperimentConfig& config);

/// Least-squares power-law fit of |y| against x on log-log axes.
struct PowerLawFit {
  double exponent = 0.0;
  double stderr_exponent = 0.0;
  double log_prefactor = 0.0;
};

PowerLawFit fit_power_law(const std::vector<double>& x,
                          const std::vector<double>& y);

/// Dominant oscillation wavenumber of uniformly spaced samples
/// (radians per step): Hann-windowed DFT peak with parabolic
/// refinement. The mean is removed first.
double dominant_wavenumber(const std::vector<double>& samples);

/// Local maxima of |y|, returned as (x, |y|) pairs.
std::vector<std::pair<double, double>> oscillation_envelope(
    const std::vector<double>& x, const std::vector<double>& y);

/// Boxcar average over `period` consecutive samples, stepping by one
/// period; x is averaged the same way.
std::vector<std::pair<double, double>> period_average(
    const std::vector<double>& x, const std::vector<double>& y, int period);

/// FNV-1a, used for the embedded config hash.
std::uint64_t fnv1a_hash(const std::string& bytes);

}  // namespace nessent

#endif
