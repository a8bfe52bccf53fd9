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
#include <optional>
#include <string>
#include <vector>

#include "gqpinn/simulator.hpp"
#include "gqpinn/symmetry.hpp"

namespace gqpinn {

/// Declarative summary of a data re-uploading circuit family.
struct AnsatzSpec {
  std::string name;
  std::size_t qubits = 0;
  std::size_t layers = 0;
  std::size_t params_per_block = 0;
  std::size_t input_dim = 0;

  std::size_t parameter_count() const { return (layers + 1) * params_per_block; }
};

/// How the circuit output transforms under its symmetry group.
enum class SymmetryKind { None, Invariant, OddEquivariant };

struct AnsatzInfo {
  AnsatzSpec spec;
  Circuit circuit;
  SymmetryKind symmetry_kind = SymmetryKind::None;
  std::optional<Symmetry> symmetry;
};

/**
 * Baseline hardware-efficient circuit on n qubits. Each trainable block
 * applies R_X, R_Y, R_Z per qubit (or R_X, R_Y, R_Z, R_Y with
 * `rotations_per_qubit` = 4) followed by a CNOT ring; the encoding block
 * applies R_Y(z_i) on qubit i for i < input_dim. Observable sum_i Z_i.
 */
Circuit build_qpinn(std::size_t n, std::size_t p, std::size_t input_dim,
                    std::size_t rotations_per_qubit = 3);
Circuit build_k4(std::size_t p);
Circuit build_so2(std::size_t p);
Circuit build_so2_time(std::size_t p);
Circuit build_z2(std::size_t p);
Circuit build_k4_4q(std::size_t p);
Circuit build_so2_4q(std::size_t p);

/// Names accepted by `make_ansatz`.
const std::vector<std::string>& ansatz_names();

/**
 * Builds an ansatz by name. `input_dim` and `qubits` only matter for
 * "qpinn" (defaults: qubits = input_dim); `rotations_per_qubit` selects the
 * 3- or 4-rotation baseline block.
 */
AnsatzInfo make_ansatz(const std::string& name, std::size_t p,
                       std::size_t input_dim = 2, std::size_t qubits = 0,
                       std::size_t rotations_per_qubit = 3);

/// Human-readable op listing with parameter map.
std::string describe(const AnsatzInfo& a);

}  // namespace gqpinn
