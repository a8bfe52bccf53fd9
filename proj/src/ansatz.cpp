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

#include "gqpinn/ansatz.hpp"

#include <functional>
#include <numbers>
#include <sstream>

#include "gqpinn/error.hpp"

namespace gqpinn {

namespace {

using BlockFn = std::function<std::vector<CircuitOp>(std::size_t offset)>;

PauliSum ps(std::size_t n, const char* text) { return parse_pauli_sum(text, n); }

CircuitOp rot(PauliSum g, std::size_t param) {
  return CircuitOp::rotation(std::move(g), AngleBinding::parameter(param));
}

CircuitOp encode(std::size_t n, Pauli axis, std::size_t qubit, std::size_t input) {
  return CircuitOp::rotation(PauliSum::single(n, axis, qubit),
                             AngleBinding::input(input));
}

void check_layers(std::size_t p) {
  if (p < 1) throw StructuralError("ansatz: layer count must be at least 1");
}

// W_1 S W_2 S ... S W_{p+1}
Circuit layered(std::size_t n, std::size_t input_dim, std::size_t p,
                std::size_t params_per_block, std::vector<CircuitOp> prep,
                const BlockFn& block, const std::vector<CircuitOp>& encoding,
                PauliSum observable) {
  check_layers(p);
  std::vector<CircuitOp> ops;
  for (std::size_t layer = 0; layer <= p; ++layer) {
    auto w = block(layer * params_per_block);
    ops.insert(ops.end(), w.begin(), w.end());
    if (layer < p) ops.insert(ops.end(), encoding.begin(), encoding.end());
  }
  return Circuit(n, input_dim, std::move(prep), std::move(ops), std::move(observable));
}

BlockFn generator_block(std::vector<PauliSum> generators) {
  return [generators = std::move(generators)](std::size_t offset) {
    std::vector<CircuitOp> ops;
    for (std::size_t j = 0; j < generators.size(); ++j) {
      ops.push_back(rot(generators[j], offset + j));
    }
    return ops;
  };
}

std::vector<CircuitOp> bell_phi(std::size_t a, std::size_t b) {
  return {CircuitOp::fixed(FixedGate::H, {a}), CircuitOp::fixed(FixedGate::CNOT, {a, b})};
}

std::vector<CircuitOp> bell_psi(std::size_t a, std::size_t b) {
  return {CircuitOp::fixed(FixedGate::H, {a}), CircuitOp::fixed(FixedGate::X, {b}),
          CircuitOp::fixed(FixedGate::CNOT, {a, b})};
}

template <typename... Lists>
std::vector<CircuitOp> concat(std::vector<CircuitOp> first, const Lists&... rest) {
  (first.insert(first.end(), rest.begin(), rest.end()), ...);
  return first;
}

Symmetry so2_time_rep() {
  auto base = so2_rep(2);
  auto family = [](double phi) {
    const DenseOperator rz = exp_generator(ps(1, "Z1"), phi, 1);
    return kron(kron(rz, rz), DenseOperator::Identity(2, 2));
  };
  return {GroupRepresentation::one_parameter(3, family, 2.0 * std::numbers::pi),
          base.action};
}

}  // namespace

Circuit build_qpinn(std::size_t n, std::size_t p, std::size_t input_dim,
                    std::size_t rotations_per_qubit) {
  if (n < 1 || n > 4) throw StructuralError("qpinn: unsupported qubit count");
  if (input_dim > n) throw StructuralError("qpinn: more inputs than qubits");
  if (rotations_per_qubit != 3 && rotations_per_qubit != 4) {
    throw StructuralError("qpinn: rotations per qubit must be 3 or 4");
  }
  static const Pauli axes[] = {Pauli::X, Pauli::Y, Pauli::Z, Pauli::Y};
  const std::size_t ppb = rotations_per_qubit * n;
  BlockFn block = [=](std::size_t offset) {
    std::vector<CircuitOp> ops;
    std::size_t k = offset;
    for (std::size_t q = 1; q <= n; ++q) {
      for (std::size_t r = 0; r < rotations_per_qubit; ++r) {
        ops.push_back(rot(PauliSum::single(n, axes[r], q), k++));
      }
    }
    if (n > 1) {
      for (std::size_t q = 1; q <= n; ++q) {
        const std::size_t next = q == n ? 1 : q + 1;
        ops.push_back(CircuitOp::fixed(FixedGate::CNOT, {q, next}));
      }
    }
    return ops;
  };
  std::vector<CircuitOp> encoding;
  for (std::size_t i = 0; i < input_dim; ++i) encoding.push_back(encode(n, Pauli::Y, i + 1, i));
  PauliSum observable(n);
  for (std::size_t q = 1; q <= n; ++q) observable += PauliSum::single(n, Pauli::Z, q);
  return layered(n, input_dim, p, ppb, {}, block, encoding, observable);
}

Circuit build_k4(std::size_t p) {
  return layered(2, 2, p, 3, bell_phi(1, 2),
                 generator_block({ps(2, "Z1Z2"), ps(2, "Y1Y2"), ps(2, "X1 + X2")}),
                 {encode(2, Pauli::Y, 1, 0), encode(2, Pauli::Y, 2, 1)},
                 ps(2, "X1 + X2"));
}

Circuit build_so2(std::size_t p) {
  return layered(2, 2, p, 4, bell_psi(1, 2),
                 generator_block({ps(2, "Z1Z2"), ps(2, "0.5*X1X2 + 0.5*Y1Y2"),
                                  ps(2, "Z1"), ps(2, "Z2")}),
                 {CircuitOp::bloch(1, 0, 1), CircuitOp::bloch(2, 0, 1)},
                 ps(2, "0.5*X1X2 + 0.5*Y1Y2"));
}

Circuit build_so2_time(std::size_t p) {
  return layered(3, 3, p, 9, bell_psi(1, 2),
                 generator_block({ps(3, "Z1"), ps(3, "Z2"), ps(3, "0.5*X1X2 + 0.5*Y1Y2"),
                                  ps(3, "Z1Z2"), ps(3, "Z3"), ps(3, "Y3"), ps(3, "X3"),
                                  ps(3, "Z1Z3"), ps(3, "Z2Z3")}),
                 {CircuitOp::bloch(1, 0, 1), CircuitOp::bloch(2, 0, 1),
                  encode(3, Pauli::Z, 3, 2)},
                 ps(3, "0.5*X1X2 + 0.5*Y1Y2 + Z3"));
}

Circuit build_z2(std::size_t p) {
  return layered(2, 2, p, 4, {CircuitOp::fixed(FixedGate::H, {1})},
                 generator_block({ps(2, "X1X2"), ps(2, "X1"), ps(2, "Y2"), ps(2, "Z2")}),
                 {encode(2, Pauli::Y, 1, 0), encode(2, Pauli::Y, 2, 1)},
                 ps(2, "Z1Z2 + Y1Z2"));
}

Circuit build_k4_4q(std::size_t p) {
  return layered(4, 2, p, 7, concat(bell_phi(1, 2), bell_phi(3, 4)),
                 generator_block(generator_sets::k4_four_qubit()),
                 {encode(4, Pauli::Y, 1, 0), encode(4, Pauli::Y, 2, 1),
                  encode(4, Pauli::Y, 3, 0), encode(4, Pauli::Y, 4, 1)},
                 ps(4, "X1 + X2 + X3 + X4"));
}

Circuit build_so2_4q(std::size_t p) {
  return layered(4, 2, p, 10, concat(bell_psi(1, 2), bell_psi(3, 4)),
                 generator_block(generator_sets::so2_four_qubit()),
                 {CircuitOp::bloch(1, 0, 1), CircuitOp::bloch(2, 0, 1),
                  CircuitOp::bloch(3, 0, 1), CircuitOp::bloch(4, 0, 1)},
                 ps(4, "0.5*X1X2 + 0.5*Y1Y2 + 0.5*X3X4 + 0.5*Y3Y4"));
}

const std::vector<std::string>& ansatz_names() {
  static const std::vector<std::string> names{"qpinn", "k4",  "so2",   "so2_time",
                                              "z2",    "k4_4q", "so2_4q"};
  return names;
}

AnsatzInfo make_ansatz(const std::string& name, std::size_t p, std::size_t input_dim,
                       std::size_t qubits, std::size_t rotations_per_qubit) {
  auto info = [&](std::size_t n, std::size_t ppb, std::size_t dim, Circuit c,
                  SymmetryKind kind, std::optional<Symmetry> sym) {
    return AnsatzInfo{AnsatzSpec{name, n, p, ppb, dim}, std::move(c), kind, std::move(sym)};
  };
  if (name == "qpinn") {
    const std::size_t n = qubits == 0 ? input_dim : qubits;
    return info(n, rotations_per_qubit * n, input_dim,
                build_qpinn(n, p, input_dim, rotations_per_qubit), SymmetryKind::None,
                std::nullopt);
  }
  if (name == "k4") return info(2, 3, 2, build_k4(p), SymmetryKind::Invariant, k4_rep(2));
  if (name == "so2") return info(2, 4, 2, build_so2(p), SymmetryKind::Invariant, so2_rep(2));
  if (name == "so2_time") {
    return info(3, 9, 3, build_so2_time(p), SymmetryKind::Invariant, so2_time_rep());
  }
  if (name == "z2") return info(2, 4, 2, build_z2(p), SymmetryKind::OddEquivariant, z2_rep());
  if (name == "k4_4q") {
    return info(4, 7, 2, build_k4_4q(p), SymmetryKind::Invariant, k4_rep(4));
  }
  if (name == "so2_4q") {
    return info(4, 10, 2, build_so2_4q(p), SymmetryKind::Invariant, so2_rep(4));
  }
  throw StructuralError("unknown ansatz '" + name + "'");
}

std::string describe(const AnsatzInfo& a) {
  std::ostringstream out;
  const Circuit& c = a.circuit;
  out << "ansatz " << a.spec.name << "\n"
      << "qubits " << c.qubits() << "\n"
      << "inputs " << c.input_dim() << "\n"
      << "layers " << a.spec.layers << "\n"
      << "params_per_block " << a.spec.params_per_block << "\n"
      << "parameters " << c.parameter_count() << "\n"
      << "observable " << to_string(c.observable()) << "\n"
      << "prep";
  for (const auto& op : c.prep()) out << " " << op.describe();
  out << "\nops\n";
  for (const auto& op : c.ops()) out << "  " << op.describe() << "\n";
  return out.str();
}

}  // namespace gqpinn
