// Copyright 2026 The GQPINN Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "gqpinn/experiment.hpp"
#include "gqpinn/expressibility.hpp"

namespace gqpinn::archive {

/// 64-bit FNV-1a of `bytes`.
std::uint64_t fnv1a64(const std::string& bytes);

/// Canonical compact JSON of the experiment configuration (sorted keys).
std::string config_text(const ExperimentSpec& spec);
/// Parses the configuration object written by config_text; missing keys keep
/// their defaults. Throws StructuralError on malformed input.
ExperimentSpec spec_from_config(const std::string& json_text);

/// Sixteen lowercase hex digits of fnv1a64(config_text(spec)).
std::string config_hash(const ExperimentSpec& spec);

/// The per-run facts a summary is computed from.
struct RunRow {
  std::string model;
  std::size_t size = 0;
  std::size_t parameters = 0;
  std::uint64_t seed = 0;
  bool failed = false;
  double final_mae = 0.0;
  double final_extrapolation_mae = 0.0;
};

std::vector<RunRow> rows(const std::vector<ExperimentResult>& cells);

/// summary.tsv and summary.json contents for `rows`.
std::string summary_tsv(const std::string& hash, const std::vector<RunRow>& rows);
std::string summary_json(const std::string& hash, const std::vector<std::uint64_t>& seeds,
                         const std::vector<RunRow>& rows);

/**
 * Writes config.json, runs.tsv, epochs.tsv, summary.tsv, summary.json and
 * timing.tsv into `dir` (created if needed), plus plot_<model>.tsv per model
 * when `plot_data` is set. Every file carries the config hash.
 */
void write(const std::filesystem::path& dir, const ExperimentSpec& spec,
           const std::vector<ExperimentResult>& cells, bool plot_data = false);

/// Writes expressibility.tsv for a list of reports.
void write_expressibility(const std::filesystem::path& dir, const std::string& hash,
                          const std::vector<KlReport>& reports);
std::string expressibility_tsv(const std::string& hash, const std::vector<KlReport>& reports);

/**
 * Checks that config.json hashes to its recorded value, that every archive
 * file carries that hash, and that both summaries regenerate byte for byte
 * from runs.tsv. Returns one message per problem; empty means consistent.
 */
std::vector<std::string> verify(const std::filesystem::path& dir);

}  // namespace gqpinn::archive
