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

#include "gqpinn/model.hpp"

#include <algorithm>
#include <numbers>

#include "gqpinn/error.hpp"

namespace gqpinn {

int JetRequest::max_order() const { return *std::max_element(order.begin(), order.end()); }

std::pair<double, double> Model::init_range() const {
  return {0.0, 2.0 * std::numbers::pi};
}

void Model::accumulate_vjp(std::span<const double>, const PointSet&,
                           std::span<const double>, std::span<double>) const {
  throw ContractViolation(name() + ": no parameter vector-Jacobian product");
}

void Model::jets(std::span<const double>, const PointSet&, const JetRequest&,
                 std::span<Jet>) const {
  throw ContractViolation(name() + ": no analytic input derivatives");
}

double Model::operator()(std::span<const double> theta, std::span<const double> z) const {
  PointSet pts(z.size());
  pts.push_back(z);
  double v = 0.0;
  evaluate(theta, pts, std::span<double>(&v, 1));
  return v;
}

QuantumModel::QuantumModel(std::string name, Circuit circuit)
    : name_(std::move(name)), compiled_(std::move(circuit)) {}

void QuantumModel::evaluate(std::span<const double> theta, const PointSet& points,
                            std::span<double> values) const {
  compiled_.evaluate(theta, points, values);
}

void QuantumModel::accumulate_vjp(std::span<const double> theta, const PointSet& points,
                                  std::span<const double> weights,
                                  std::span<double> grad) const {
  compiled_.accumulate_vjp(theta, points, weights, grad);
}

FunctionModel::FunctionModel(std::string name, std::size_t input_dim, Function f,
                             bool offset)
    : name_(std::move(name)), input_dim_(input_dim), f_(std::move(f)), offset_(offset) {}

void FunctionModel::evaluate(std::span<const double> theta, const PointSet& points,
                             std::span<double> values) const {
  if (theta.size() != 1) throw StructuralError(name_ + ": expected one parameter");
  if (values.size() != points.size()) throw StructuralError(name_ + ": output size mismatch");
  for (std::size_t i = 0; i < points.size(); ++i) values[i] = f_(points[i]) + (offset_ ? theta[0] : 0.0);
}

void FunctionModel::accumulate_vjp(std::span<const double> theta, const PointSet& points,
                                   std::span<const double> weights,
                                   std::span<double> grad) const {
  if (theta.size() != 1 || grad.size() != 1 || weights.size() != points.size()) {
    throw StructuralError(name_ + ": size mismatch");
  }
  if (!offset_) return;
  for (double w : weights) grad[0] += w;
}

}  // namespace gqpinn
