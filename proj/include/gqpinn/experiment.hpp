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
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "gqpinn/model.hpp"
#include "gqpinn/optimize.hpp"
#include "gqpinn/pde.hpp"

namespace gqpinn {

/// Options that only affect the baseline circuit.
struct ModelOptions {
  std::size_t qpinn_qubits = 0;  // 0: one qubit per input coordinate
  std::size_t rotations = 3;     // 3 or 4 rotations per qubit and block
};

/// Quantum ansatz names plus "pinn" and "sipinn".
const std::vector<std::string>& model_names();

/// Label used in archives; distinguishes baseline variants.
std::string model_label(const std::string& name, const ModelOptions& options);

/**
 * Builds a trainable model for `prob`. `size` is the layer count for
 * circuits and the hidden width for classical networks.
 */
std::unique_ptr<Model> make_model(const std::string& name, std::size_t size,
                                  const PdeProblem& prob, const ModelOptions& options = {});

struct ExperimentSpec {
  std::string problem = "poisson2d";
  std::vector<std::string> models;
  std::vector<std::size_t> sizes;
  std::size_t seeds = 10;
  std::uint64_t first_seed = 1;
  ModelOptions options;
  TrainConfig train;
  unsigned jobs = 1;

  void validate() const;
  /// first_seed, first_seed + 1, ...
  std::vector<std::uint64_t> seed_list() const;
};

struct CellAggregate {
  std::size_t runs = 0;
  std::size_t failed = 0;
  double mean_mae = 0.0;
  double median_mae = 0.0;
  double min_mae = 0.0;
  double max_mae = 0.0;
  double median_extrapolation_mae = 0.0;  // NaN without a held-out slice
};

struct ExperimentResult {
  std::string model;  // label
  std::size_t size = 0;
  std::size_t parameter_count = 0;
  std::vector<TrainRun> runs;

  /// Statistics over runs that did not fail.
  CellAggregate aggregate() const;
};

double median(std::vector<double> values);

/// Called once per finished run, serialized across worker threads.
using ProgressFn = std::function<void(const ExperimentResult& cell, const TrainRun& run)>;

/**
 * Trains every (model, size) cell for every seed. Runs fan out over
 * `spec.jobs` threads; results are ordered by model, then size, then seed,
 * independent of scheduling.
 */
std::vector<ExperimentResult> run_experiment(const ExperimentSpec& spec,
                                             const ProgressFn& progress = {});

}  // namespace gqpinn
