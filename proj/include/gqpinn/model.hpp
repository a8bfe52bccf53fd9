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

#include <array>
#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gqpinn/points.hpp"
#include "gqpinn/simulator.hpp"

namespace gqpinn {

/// Value with first and second pure partials along up to three input axes.
struct Jet {
  double u = 0.0;
  std::array<double, 3> d1{};
  std::array<double, 3> d2{};
};

/// Highest derivative order needed per axis (0, 1 or 2).
struct JetRequest {
  std::array<int, 3> order{};

  int max_order() const;
  bool operator==(const JetRequest&) const = default;
};

/// A scalar model u(theta, z) evaluated in batches of points.
class Model {
 public:
  virtual ~Model() = default;

  virtual std::string name() const = 0;
  virtual std::size_t input_dim() const = 0;
  virtual std::size_t parameter_count() const = 0;
  /// Interval for uniform random initialization of theta.
  virtual std::pair<double, double> init_range() const;

  virtual void evaluate(std::span<const double> theta, const PointSet& points,
                        std::span<double> values) const = 0;

  /// True when accumulate_vjp is available.
  virtual bool has_vjp() const { return false; }
  /// grad += sum_k weights[k] * d u(points[k]) / d theta.
  virtual void accumulate_vjp(std::span<const double> theta, const PointSet& points,
                              std::span<const double> weights,
                              std::span<double> grad) const;

  /// True when jets() computes input derivatives in closed form.
  virtual bool has_analytic_jets() const { return false; }
  virtual void jets(std::span<const double> theta, const PointSet& points,
                    const JetRequest& request, std::span<Jet> out) const;

  double operator()(std::span<const double> theta, std::span<const double> z) const;
};

/// Expectation value of a compiled circuit.
class QuantumModel final : public Model {
 public:
  QuantumModel(std::string name, Circuit circuit);

  std::string name() const override { return name_; }
  std::size_t input_dim() const override { return compiled_.circuit().input_dim(); }
  std::size_t parameter_count() const override {
    return compiled_.circuit().parameter_count();
  }
  void evaluate(std::span<const double> theta, const PointSet& points,
                std::span<double> values) const override;
  bool has_vjp() const override { return true; }
  void accumulate_vjp(std::span<const double> theta, const PointSet& points,
                      std::span<const double> weights,
                      std::span<double> grad) const override;

  const CompiledCircuit& compiled() const { return compiled_; }

 private:
  std::string name_;
  CompiledCircuit compiled_;
};

/**
 * A fixed function of the inputs with one parameter. With `offset` set the
 * parameter is added to the output; otherwise it is ignored.
 */
class FunctionModel final : public Model {
 public:
  using Function = std::function<double(std::span<const double>)>;

  FunctionModel(std::string name, std::size_t input_dim, Function f, bool offset = true);

  std::string name() const override { return name_; }
  std::size_t input_dim() const override { return input_dim_; }
  std::size_t parameter_count() const override { return 1; }
  void evaluate(std::span<const double> theta, const PointSet& points,
                std::span<double> values) const override;
  bool has_vjp() const override { return true; }
  void accumulate_vjp(std::span<const double> theta, const PointSet& points,
                      std::span<const double> weights,
                      std::span<double> grad) const override;

 private:
  std::string name_;
  std::size_t input_dim_;
  Function f_;
  bool offset_;
};

}  // namespace gqpinn
