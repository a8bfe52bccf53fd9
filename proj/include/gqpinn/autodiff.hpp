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
#include <functional>
#include <span>
#include <vector>

#include "gqpinn/model.hpp"

namespace gqpinn {

struct StencilConfig {
  double h_input = 1e-3;  // input-coordinate step
  double h_param = 1e-4;  // parameter step (radians)

  /// Throws StructuralError unless both steps exceed 1e-12.
  void validate() const;
};

/// Central first (order 1) or second (order 2) difference of the model
/// output along one input axis.
double input_partial(const Model& f, std::span<const double> theta,
                     std::span<const double> z, std::size_t axis, int order,
                     const StencilConfig& cfg);

/**
 * Value and the requested pure partials at every point. Models with closed
 * form derivatives use them; others use central stencils from one batched
 * evaluation of the centre and the +-h neighbours along each requested axis.
 */
void compute_jets(const Model& f, std::span<const double> theta, const PointSet& points,
                  const JetRequest& request, const StencilConfig& cfg,
                  std::span<Jet> out);

/**
 * Pulls jet cotangents back to parameters through the stencil:
 * grad += sum_k d<cotangent[k], jet_k> / d theta. Requires Model::has_vjp.
 */
void jets_vjp(const Model& f, std::span<const double> theta, const PointSet& points,
              const JetRequest& request, const StencilConfig& cfg,
              std::span<const Jet> cotangent, std::span<double> grad);

/// Central-difference gradient of a scalar functional. Throws
/// NumericIntegrityError naming the coordinate if a value is not finite.
std::vector<double> param_gradient(
    const std::function<double(std::span<const double>)>& loss,
    std::span<const double> theta, const StencilConfig& cfg);

}  // namespace gqpinn
