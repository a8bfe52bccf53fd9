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
#include <deque>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "gqpinn/autodiff.hpp"
#include "gqpinn/model.hpp"
#include "gqpinn/pde.hpp"

namespace gqpinn {

struct LbfgsConfig {
  double lr = 0.7;
  int max_iter = 20;
  int max_eval = 25;
  double tolerance_grad = 1e-7;
  double tolerance_change = 1e-9;
  int history_size = 100;
  double c1 = 1e-4;
  double c2 = 0.9;
  int max_line_search = 25;

  void validate() const;
};

/// f(x), writing df/dx into grad.
using ValueAndGrad = std::function<double(std::span<const double> x, std::span<double> grad)>;

/// Curvature history and last direction, carried across successive calls.
struct LbfgsState {
  int n_iter = 0;
  int func_evals = 0;
  std::vector<double> d;
  double t = 0.0;
  std::deque<std::vector<double>> old_dirs;  // y
  std::deque<std::vector<double>> old_stps;  // s
  std::deque<double> ro;
  double h_diag = 1.0;
  std::vector<double> prev_grad;
  double prev_loss = 0.0;
};

enum class LbfgsStop {
  MaxIter,
  MaxEval,
  GradientTolerance,
  StepTolerance,
  LossChangeTolerance,
  NotDescent,
};

std::string to_string(LbfgsStop stop);

struct LbfgsIteration {
  double loss_before = 0.0;
  double loss = 0.0;          // after the step
  double step = 0.0;          // accepted t
  double directional = 0.0;   // g.d before the step
  double directional_after = 0.0;  // g.d at the accepted point
  int evals = 0;              // line-search evaluations
  bool wolfe_satisfied = false;
};

struct LbfgsResult {
  double loss = 0.0;
  LbfgsStop stop = LbfgsStop::MaxIter;
  bool line_search_failed = false;
  int evals = 0;
  std::vector<LbfgsIteration> iterations;
};

/**
 * One optimizer call: up to max_iter iterations and roughly max_eval
 * function evaluations starting from x (updated in place), continuing the
 * curvature history in `state`.
 */
LbfgsResult lbfgs_step(const ValueAndGrad& fg, std::vector<double>& x, const LbfgsConfig& cfg,
                       LbfgsState& state);

/// lbfgs_step from a fresh state.
LbfgsResult lbfgs_minimize(const ValueAndGrad& fg, std::vector<double>& x,
                           const LbfgsConfig& cfg);

struct TrainConfig {
  int epochs = 50;
  LbfgsConfig lbfgs;
  StencilConfig stencil;
  GradientMode gradient = GradientMode::Auto;
};

struct EpochRecord {
  int epoch = 0;
  LossParts loss;
  double mae = 0.0;
  double extrapolation_mae = 0.0;  // NaN when the problem has no held-out slice
  int evals = 0;
  bool line_search_failed = false;
  LbfgsStop stop = LbfgsStop::MaxIter;
};

struct TrainRun {
  std::uint64_t seed = 0;
  std::vector<double> theta_init;
  std::vector<double> theta_final;
  LossParts initial_loss;
  double initial_mae = 0.0;
  std::vector<EpochRecord> epochs;
  bool failed = false;
  std::string failure;
  double wall_seconds = 0.0;

  double final_mae() const;
  double final_extrapolation_mae() const;
  double final_loss() const;
};

/// Uniform draw from the model's init range with mt19937_64(seed).
std::vector<double> initial_parameters(const Model& f, std::uint64_t seed);

/// Warm-started L-BFGS epochs with per-epoch loss and MAE.
TrainRun train(const Model& f, const PdeProblem& prob, const TrainConfig& cfg,
               std::uint64_t seed);

}  // namespace gqpinn
