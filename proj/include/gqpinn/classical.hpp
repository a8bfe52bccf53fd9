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

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "gqpinn/model.hpp"
#include "gqpinn/symmetry.hpp"

namespace gqpinn {

/// Single hidden layer: u(x) = w2 . tanh(W1 x + b1) + b2.
struct MlpParams {
  Eigen::MatrixXd w1;  // hidden x inputs
  Eigen::VectorXd b1;
  Eigen::VectorXd w2;
  double b2 = 0.0;

  static std::size_t count(std::size_t inputs, std::size_t hidden) {
    return hidden * inputs + 2 * hidden + 1;
  }
  /// Layout: W1 row-major, b1, w2, b2.
  static MlpParams unpack(std::span<const double> theta, std::size_t inputs,
                          std::size_t hidden);
};

double mlp_forward(const MlpParams& p, std::span<const double> x);

/**
 * Network whose hidden activations are averaged over a finite group of
 * linear input maps: h = mean_g tanh(W1 V_g x + b1). An empty group list
 * means the identity alone.
 */
struct SiPinnSpec {
  MlpParams base;
  std::vector<Eigen::MatrixXd> maps;  // full input-space matrices
};

double sipinn_forward(const SiPinnSpec& s, std::span<const double> x);

/// Closed-form jet (value and pure first/second partials) of the averaged
/// network; a plain MLP is the one-element group.
Jet sipinn_jet(const SiPinnSpec& s, std::span<const double> x, const JetRequest& request);

/// d^order u / dx_axis^order in closed form.
double mlp_input_partial(const SiPinnSpec& s, std::span<const double> x, std::size_t axis,
                         int order);

/// Input-space matrices of a finite coordinate action, extended by the
/// identity on coordinates beyond its spatial dimension.
std::vector<Eigen::MatrixXd> full_maps(const CoordinateAction& action, std::size_t input_dim);

/// Standard PINN (empty `maps`) or SI-PINN as a trainable model.
class MlpModel final : public Model {
 public:
  MlpModel(std::string name, std::size_t input_dim, std::size_t hidden,
           std::vector<Eigen::MatrixXd> maps = {});

  std::string name() const override { return name_; }
  std::size_t input_dim() const override { return inputs_; }
  std::size_t parameter_count() const override { return MlpParams::count(inputs_, hidden_); }
  std::pair<double, double> init_range() const override { return {-1.0, 1.0}; }

  void evaluate(std::span<const double> theta, const PointSet& points,
                std::span<double> values) const override;
  bool has_analytic_jets() const override { return true; }
  void jets(std::span<const double> theta, const PointSet& points, const JetRequest& request,
            std::span<Jet> out) const override;

  SiPinnSpec spec(std::span<const double> theta) const;

 private:
  std::string name_;
  std::size_t inputs_;
  std::size_t hidden_;
  std::vector<Eigen::MatrixXd> maps_;
};

}  // namespace gqpinn
