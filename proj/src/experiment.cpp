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

#include "gqpinn/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <thread>

#include "gqpinn/ansatz.hpp"
#include "gqpinn/classical.hpp"
#include "gqpinn/error.hpp"
#include "gqpinn/symmetry.hpp"

namespace gqpinn {

const std::vector<std::string>& model_names() {
  static const std::vector<std::string> names = [] {
    auto n = ansatz_names();
    n.push_back("pinn");
    n.push_back("sipinn");
    return n;
  }();
  return names;
}

std::string model_label(const std::string& name, const ModelOptions& options) {
  if (name != "qpinn") return name;
  std::string label = name;
  if (options.qpinn_qubits != 0) label += "_q" + std::to_string(options.qpinn_qubits);
  if (options.rotations == 4) label += "_r4";
  return label;
}

std::unique_ptr<Model> make_model(const std::string& name, std::size_t size,
                                  const PdeProblem& prob, const ModelOptions& options) {
  if (size == 0) throw StructuralError("make_model: size must be positive");
  if (name == "pinn") return std::make_unique<MlpModel>(name, prob.input_dim, size);
  if (name == "sipinn") {
    // Classical invariance is only defined for the Klein group on the plane.
    if (prob.spatial_dim != 2) {
      throw StructuralError("sipinn needs a problem with two spatial coordinates");
    }
    return std::make_unique<MlpModel>(name, prob.input_dim, size,
                                      full_maps(k4_rep(2).action, prob.input_dim));
  }
  const auto& names = ansatz_names();
  if (std::find(names.begin(), names.end(), name) == names.end()) {
    throw StructuralError("unknown model: " + name);
  }
  auto a = make_ansatz(name, size, prob.input_dim, options.qpinn_qubits, options.rotations);
  if (a.symmetry && a.symmetry->action.spatial_dim() != prob.spatial_dim) {
    throw StructuralError("model " + name + " acts on " +
                          std::to_string(a.symmetry->action.spatial_dim()) +
                          " spatial coordinates but " + prob.name + " has " +
                          std::to_string(prob.spatial_dim));
  }
  if (a.circuit.input_dim() != prob.input_dim) {
    throw StructuralError("model " + name + " takes " + std::to_string(a.circuit.input_dim()) +
                          " inputs but " + prob.name + " has " +
                          std::to_string(prob.input_dim));
  }
  return std::make_unique<QuantumModel>(model_label(name, options), std::move(a.circuit));
}

void ExperimentSpec::validate() const {
  if (models.empty()) throw StructuralError("experiment: no models");
  if (sizes.empty()) throw StructuralError("experiment: no sizes");
  if (seeds == 0) throw StructuralError("experiment: seeds must be positive");
  if (train.epochs < 1) throw StructuralError("experiment: epochs must be positive");
  if (options.rotations != 3 && options.rotations != 4) {
    throw StructuralError("experiment: rotations must be 3 or 4");
  }
  train.lbfgs.validate();
  train.stencil.validate();
  const auto& probs = problem_names();
  if (std::find(probs.begin(), probs.end(), problem) == probs.end()) {
    throw StructuralError("unknown problem: " + problem);
  }
  const auto& names = model_names();
  for (const auto& m : models) {
    if (std::find(names.begin(), names.end(), m) == names.end()) {
      throw StructuralError("unknown model: " + m);
    }
  }
}

std::vector<std::uint64_t> ExperimentSpec::seed_list() const {
  std::vector<std::uint64_t> s(seeds);
  for (std::size_t i = 0; i < seeds; ++i) s[i] = first_seed + i;
  return s;
}

double median(std::vector<double> v) {
  if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

CellAggregate ExperimentResult::aggregate() const {
  CellAggregate a;
  a.runs = runs.size();
  std::vector<double> m, e;
  for (const auto& r : runs) {
    if (r.failed) {
      ++a.failed;
      continue;
    }
    m.push_back(r.final_mae());
    const double x = r.final_extrapolation_mae();
    if (!std::isnan(x)) e.push_back(x);
  }
  const double nan = std::numeric_limits<double>::quiet_NaN();
  if (m.empty()) {
    a.mean_mae = a.median_mae = a.min_mae = a.max_mae = nan;
  } else {
    double sum = 0.0;
    for (double x : m) sum += x;
    a.mean_mae = sum / static_cast<double>(m.size());
    a.median_mae = median(m);
    a.min_mae = *std::min_element(m.begin(), m.end());
    a.max_mae = *std::max_element(m.begin(), m.end());
  }
  a.median_extrapolation_mae = median(e);
  return a;
}

std::vector<ExperimentResult> run_experiment(const ExperimentSpec& spec,
                                             const ProgressFn& progress) {
  spec.validate();
  const PdeProblem prob = make_problem(spec.problem);
  const auto seeds = spec.seed_list();

  std::vector<ExperimentResult> cells;
  for (const auto& name : spec.models) {
    for (std::size_t size : spec.sizes) {
      const auto m = make_model(name, size, prob, spec.options);
      ExperimentResult c;
      c.model = model_label(name, spec.options);
      c.size = size;
      c.parameter_count = m->parameter_count();
      c.runs.resize(seeds.size());
      cells.push_back(std::move(c));
    }
  }

  const std::size_t tasks = cells.size() * seeds.size();
  std::atomic<std::size_t> next{0};
  std::mutex report;
  std::exception_ptr error;
  auto worker = [&] {
    for (std::size_t k = next++; k < tasks; k = next++) {
      const std::size_t ci = k / seeds.size(), si = k % seeds.size();
      const std::string& name = spec.models[ci / spec.sizes.size()];
      try {
        const auto m = make_model(name, cells[ci].size, prob, spec.options);
        cells[ci].runs[si] = train(*m, prob, spec.train, seeds[si]);
      } catch (...) {
        std::lock_guard lock(report);
        if (!error) error = std::current_exception();
        next = tasks;
        return;
      }
      if (progress) {
        std::lock_guard lock(report);
        progress(cells[ci], cells[ci].runs[si]);
      }
    }
  };
  const unsigned threads =
      std::max(1u, std::min<unsigned>(spec.jobs, static_cast<unsigned>(tasks)));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  return cells;
}

}  // namespace gqpinn
