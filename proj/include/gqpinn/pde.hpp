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
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "gqpinn/autodiff.hpp"
#include "gqpinn/model.hpp"
#include "gqpinn/points.hpp"

namespace gqpinn {

/**
 * One penalized operator over a collocation set. `op` maps the model jet at
 * a point (and that point's target value) to the operator value; when
 * `grad` is non-null it also receives d value / d jet.
 */
struct PdeTerm {
  enum class Kind { Residual, Initial, Boundary };
  using Operator = std::function<double(const Jet& jet, double target, Jet* grad)>;

  std::string name;
  Kind kind = Kind::Residual;
  PointSet points;
  std::vector<double> target;
  JetRequest request;
  Operator op;
};

struct PdeProblem {
  std::string name;
  std::size_t input_dim = 0;
  /// Number of leading spatial coordinates; time, if any, is last.
  std::size_t spatial_dim = 0;
  std::vector<PdeTerm> terms;
  std::function<double(std::span<const double>)> exact;
  double lambda_initial = 1.0;
  double lambda_boundary = 1.0;
  PointSet validation;
  /// Held-out slice beyond the training time window (diffusion only).
  std::optional<PointSet> extrapolation;
  /// Random point of the open space-time domain, for residual checks.
  std::function<std::vector<double>(std::mt19937_64&)> sample_domain;
  std::uint64_t sampling_seed = 0;

  const PdeTerm& residual() const;
  std::size_t count(PdeTerm::Kind kind) const;
};

PdeProblem poisson2d(double diffusivity = 1.0, std::uint64_t seed = 1234);
PdeProblem diffusion2d(double diffusivity = 1.0, double radius = 1.0,
                       std::size_t n_terms = 50);
PdeProblem wave1d(double speed = 1.0, double amplitude = 1.0,
                  double wavenumber = 3.14159265358979323846);
PdeProblem burgers1d(double viscosity = 0.01);

const std::vector<std::string>& problem_names();
/// Default-parameter problem by name; throws StructuralError when unknown.
PdeProblem make_problem(const std::string& name);

/// Evenly spaced values on [lo, hi], endpoints included.
std::vector<double> linspace(double lo, double hi, std::size_t count);

struct LossParts {
  double total = 0.0;
  double residual = 0.0;
  double initial = 0.0;
  double boundary = 0.0;
};

enum class GradientMode { Auto, Adjoint, FiniteDifference };

/// L_res + lambda_I L_I + lambda_B L_B, each a mean of squared operator values.
LossParts loss(const Model& f, std::span<const double> theta, const PdeProblem& prob,
               const StencilConfig& cfg);

/**
 * Loss and its parameter gradient. Auto uses the stencil adjoint when the
 * model offers a parameter vector-Jacobian product and stencil jets, and
 * central differences of the loss otherwise.
 */
LossParts loss_and_gradient(const Model& f, std::span<const double> theta,
                            const PdeProblem& prob, const StencilConfig& cfg,
                            std::span<double> grad,
                            GradientMode mode = GradientMode::Auto);

/// Mean |f(z) - exact(z)| over `points`.
double mae(const Model& f, std::span<const double> theta, const PointSet& points,
           const std::function<double(std::span<const double>)>& exact);
/// mae over the problem's validation set.
double mae(const Model& f, std::span<const double> theta, const PdeProblem& prob);

/// Residual operator applied to the exact solution at z, via stencils.
double exact_residual(const PdeProblem& prob, std::span<const double> z,
                      const StencilConfig& cfg);

}  // namespace gqpinn
