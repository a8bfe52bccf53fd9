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

#include "gqpinn/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <Eigen/Eigenvalues>

#include "gqpinn/error.hpp"

namespace gqpinn {

namespace {

const Complex kI{0.0, 1.0};

std::string format_angle(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::vector<std::size_t> support(const PauliSum& g) {
  std::set<std::size_t> qubits;
  for (const auto& [p, c] : g.terms()) {
    for (std::size_t q = 0; q < p.size(); ++q) {
      if (p[q] != Pauli::I) qubits.insert(q + 1);
    }
  }
  return {qubits.begin(), qubits.end()};
}

std::vector<Complex> row_major(const DenseOperator& m) {
  const auto d = static_cast<std::size_t>(m.rows());
  std::vector<Complex> out(d * d);
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t c = 0; c < d; ++c) {
      out[r * d + c] = m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    }
  }
  return out;
}

// exp(-i a (c0 I + cx X + cy Y + cz Z) / 2) applied to one qubit.
void apply_single(std::vector<Complex>& psi, std::size_t bit, double a,
                  double c0, double cx, double cy, double cz) {
  const double r = std::sqrt(cx * cx + cy * cy + cz * cz);
  Complex u00 = 1.0, u01 = 0.0, u10 = 0.0, u11 = 1.0;
  if (r > 0.0) {
    const double half = 0.5 * a * r;
    const double cs = std::cos(half);
    const double sn = std::sin(half) / r;
    // cos I - i sin (n . sigma)
    u00 = Complex(cs, -sn * cz);
    u11 = Complex(cs, sn * cz);
    u01 = Complex(-sn * cy, -sn * cx);
    u10 = Complex(sn * cy, -sn * cx);
  }
  if (c0 != 0.0) {
    const Complex phase = std::exp(Complex(0.0, -0.5 * a * c0));
    u00 *= phase;
    u01 *= phase;
    u10 *= phase;
    u11 *= phase;
  }
  const std::size_t d = psi.size();
  const std::size_t mask = std::size_t{1} << bit;
  for (std::size_t i = 0; i < d; ++i) {
    if (i & mask) continue;
    const std::size_t j = i | mask;
    const Complex x = psi[i];
    const Complex y = psi[j];
    psi[i] = u00 * x + u01 * y;
    psi[j] = u10 * x + u11 * y;
  }
}

void matvec(const std::vector<Complex>& m, const std::vector<Complex>& in,
            std::vector<Complex>& out) {
  const std::size_t d = in.size();
  for (std::size_t r = 0; r < d; ++r) {
    Complex s = 0.0;
    const Complex* row = m.data() + r * d;
    for (std::size_t c = 0; c < d; ++c) s += row[c] * in[c];
    out[r] = s;
  }
}

void adjoint_matvec(const std::vector<Complex>& m, const std::vector<Complex>& in,
                    std::vector<Complex>& out) {
  const std::size_t d = in.size();
  std::fill(out.begin(), out.end(), Complex(0.0));
  for (std::size_t r = 0; r < d; ++r) {
    const Complex* row = m.data() + r * d;
    const Complex v = in[r];
    for (std::size_t c = 0; c < d; ++c) out[c] += std::conj(row[c]) * v;
  }
}

DenseOperator spectral_rotation(const DenseOperator& v, const Eigen::VectorXd& lambda,
                                double angle) {
  Eigen::VectorXcd phases(lambda.size());
  for (Eigen::Index k = 0; k < lambda.size(); ++k) {
    phases(k) = std::exp(Complex(0.0, -0.5 * angle * lambda(k)));
  }
  return v * phases.asDiagonal() * v.adjoint();
}

}  // namespace

double AngleBinding::resolve(std::span<const double> theta,
                             std::span<const double> z) const {
  switch (source) {
    case Source::Constant:
      return value;
    case Source::Parameter:
      if (index >= theta.size()) throw StructuralError("parameter index out of range");
      return value * theta[index];
    case Source::Input:
      if (index >= z.size()) throw StructuralError("input index out of range");
      return value * z[index];
  }
  return 0.0;
}

CircuitOp CircuitOp::fixed(FixedGate gate, std::vector<std::size_t> targets) {
  const std::size_t arity =
      (gate == FixedGate::CNOT || gate == FixedGate::SWAP) ? 2 : 1;
  if (targets.size() != arity) {
    throw StructuralError("fixed gate: wrong number of targets");
  }
  if (arity == 2 && targets[0] == targets[1]) {
    throw StructuralError("fixed gate: targets must be distinct");
  }
  CircuitOp op;
  op.kind_ = Kind::Fixed;
  op.gate_ = gate;
  op.targets_ = std::move(targets);
  return op;
}

CircuitOp CircuitOp::rotation(PauliSum generator, AngleBinding angle) {
  CircuitOp op;
  op.kind_ = Kind::Rotation;
  op.targets_ = support(generator);
  op.generator_ = std::move(generator);
  op.angle_ = angle;
  return op;
}

CircuitOp CircuitOp::bloch(std::size_t qubit, std::size_t x_input,
                           std::size_t y_input) {
  CircuitOp op;
  op.kind_ = Kind::BlochEncoding;
  op.targets_ = {qubit};
  op.x_input_ = x_input;
  op.y_input_ = y_input;
  return op;
}

bool CircuitOp::depends_on_input() const {
  return kind_ == Kind::BlochEncoding ||
         (kind_ == Kind::Rotation && angle_.source == AngleBinding::Source::Input);
}

bool CircuitOp::is_trainable() const {
  return kind_ == Kind::Rotation &&
         angle_.source == AngleBinding::Source::Parameter;
}

DenseOperator CircuitOp::matrix(std::size_t n, std::span<const double> theta,
                                std::span<const double> z) const {
  for (auto q : targets_) {
    if (q < 1 || q > n) throw StructuralError("op target outside register");
  }
  switch (kind_) {
    case Kind::Fixed:
      switch (gate_) {
        case FixedGate::H:
          return hadamard(n, targets_[0]);
        case FixedGate::X:
          return pauli_x(n, targets_[0]);
        case FixedGate::CNOT:
          return cnot(n, targets_[0], targets_[1]);
        case FixedGate::SWAP:
          return swap_gate(n, targets_[0], targets_[1]);
      }
      break;
    case Kind::Rotation:
      return exp_generator(generator_, angle_.resolve(theta, z), n);
    case Kind::BlochEncoding: {
      if (x_input_ >= z.size() || y_input_ >= z.size()) {
        throw StructuralError("Bloch encoding input out of range");
      }
      PauliSum g = PauliSum::single(n, Pauli::X, targets_[0]) * z[x_input_] +
                   PauliSum::single(n, Pauli::Y, targets_[0]) * z[y_input_];
      g = PauliSum(n) + g;
      return exp_generator(g, 1.0, n);
    }
  }
  throw StructuralError("unknown op kind");
}

std::string CircuitOp::describe() const {
  auto qubit_list = [&] {
    std::string s;
    for (std::size_t i = 0; i < targets_.size(); ++i) {
      s += (i ? "," : "") + std::string("q") + std::to_string(targets_[i]);
    }
    return s;
  };
  switch (kind_) {
    case Kind::Fixed: {
      static const char* names[] = {"H", "X", "CNOT", "SWAP"};
      return std::string(names[static_cast<int>(gate_)]) + "(" + qubit_list() + ")";
    }
    case Kind::Rotation: {
      std::string angle;
      switch (angle_.source) {
        case AngleBinding::Source::Constant:
          angle = format_angle(angle_.value);
          break;
        case AngleBinding::Source::Parameter:
          angle = "theta[" + std::to_string(angle_.index) + "]";
          break;
        case AngleBinding::Source::Input:
          angle = "z[" + std::to_string(angle_.index) + "]";
          break;
      }
      if (angle_.source != AngleBinding::Source::Constant && angle_.value != 1.0) {
        angle = format_angle(angle_.value) + "*" + angle;
      }
      return "R[" + to_string(generator_) + "](" + angle + ")";
    }
    case Kind::BlochEncoding:
      return "Ubloch(" + qubit_list() + "; z[" + std::to_string(x_input_) +
             "], z[" + std::to_string(y_input_) + "])";
  }
  return "?";
}

Circuit::Circuit(std::size_t qubits, std::size_t input_dim,
                 std::vector<CircuitOp> prep, std::vector<CircuitOp> ops,
                 PauliSum observable)
    : qubits_(qubits),
      input_dim_(input_dim),
      prep_(std::move(prep)),
      ops_(std::move(ops)),
      observable_(std::move(observable)) {
  if (qubits_ == 0 || qubits_ > 8) {
    throw StructuralError("circuit: qubit count must be in 1..8");
  }
  if (observable_.qubits() != qubits_) {
    throw StructuralError("circuit: observable qubit count mismatch");
  }
  auto check_targets = [&](const CircuitOp& op) {
    for (auto q : op.targets()) {
      if (q < 1 || q > qubits_) throw StructuralError("circuit: target out of range");
    }
    if (op.kind() == CircuitOp::Kind::Rotation &&
        op.generator().qubits() != qubits_) {
      throw StructuralError("circuit: generator qubit count mismatch");
    }
  };
  for (const auto& op : prep_) {
    check_targets(op);
    if (op.depends_on_input() || op.is_trainable()) {
      throw StructuralError("circuit: preparation must be parameter-free");
    }
  }
  std::set<std::size_t> params;
  for (const auto& op : ops_) {
    check_targets(op);
    if (op.is_trainable()) params.insert(op.angle().index);
    if (op.kind() == CircuitOp::Kind::Rotation &&
        op.angle().source == AngleBinding::Source::Input &&
        op.angle().index >= input_dim_) {
      throw StructuralError("circuit: input index out of range");
    }
    if (op.kind() == CircuitOp::Kind::BlochEncoding &&
        (op.x_input() >= input_dim_ || op.y_input() >= input_dim_)) {
      throw StructuralError("circuit: input index out of range");
    }
  }
  if (!params.empty() && *params.rbegin() + 1 != params.size()) {
    throw StructuralError("circuit: parameter indices are not contiguous");
  }
  parameter_count_ = params.size();
}

StateVector Circuit::initial_state() const {
  StateVector psi = StateVector::Zero(static_cast<Eigen::Index>(dimension()));
  psi(0) = 1.0;
  for (const auto& op : prep_) psi = op.matrix(qubits_, {}, {}) * psi;
  return psi;
}

StateVector run(const Circuit& c, std::span<const double> theta,
                std::span<const double> z) {
  if (theta.size() != c.parameter_count()) {
    throw StructuralError("run: expected " + std::to_string(c.parameter_count()) +
                          " parameters, got " + std::to_string(theta.size()));
  }
  if (z.size() != c.input_dim()) {
    throw StructuralError("run: expected input of length " +
                          std::to_string(c.input_dim()));
  }
  StateVector psi = c.initial_state();
  for (const auto& op : c.ops()) psi = op.matrix(c.qubits(), theta, z) * psi;
  return psi;
}

double expectation(const StateVector& s, const PauliSum& observable) {
  const auto d = static_cast<Eigen::Index>(std::size_t{1} << observable.qubits());
  if (s.size() != d) throw StructuralError("expectation: dimension mismatch");
  const Complex v = s.dot(to_dense(observable, observable.qubits()) * s);
  if (std::abs(v.imag()) > 1e-12) {
    throw NumericIntegrityError("expectation: imaginary part " +
                                std::to_string(v.imag()));
  }
  return v.real();
}

double model_eval(const Circuit& c, std::span<const double> theta,
                  std::span<const double> z) {
  return expectation(run(c, theta, z), c.observable());
}

struct CompiledCircuit::Bound {
  std::vector<BoundSegment> segments;
};

CompiledCircuit::CompiledCircuit(Circuit circuit)
    : circuit_(std::move(circuit)), dim_(circuit_.dimension()) {
  const std::size_t n = circuit_.qubits();
  const StateVector psi0 = circuit_.initial_state();
  initial_.assign(psi0.data(), psi0.data() + psi0.size());
  observable_ = row_major(to_dense(circuit_.observable(), n));

  for (const auto& op : circuit_.ops()) {
    const bool data = op.depends_on_input();
    if (segments_.empty() || segments_.back().data != data) {
      segments_.push_back(Segment{data, {}, {}});
    }
    Segment& seg = segments_.back();
    if (!data) {
      GateTemplate g{&op, {}, {}, {}, {}};
      if (op.is_trainable()) {
        g.generator = to_dense(op.generator(), n);
        Eigen::SelfAdjointEigenSolver<DenseOperator> solver(g.generator);
        g.eigenvectors = solver.eigenvectors();
        g.eigenvalues = solver.eigenvalues();
      } else {
        g.constant = op.matrix(n, {}, {});
      }
      seg.gates.push_back(std::move(g));
      continue;
    }
    DataKernel k;
    k.angle = op.angle();
    if (op.kind() == CircuitOp::Kind::BlochEncoding) {
      k.type = DataKernel::Type::Bloch;
      k.bit = n - op.targets()[0];
      k.x_input = op.x_input();
      k.y_input = op.y_input();
    } else if (op.targets().size() <= 1) {
      k.type = DataKernel::Type::SingleQubit;
      const std::size_t q = op.targets().empty() ? 1 : op.targets()[0];
      k.bit = n - q;
      for (const auto& [p, c] : op.generator().terms()) {
        k.coeff[static_cast<int>(p[q - 1])] += c;
      }
    } else {
      k.type = DataKernel::Type::Dense;
      Eigen::SelfAdjointEigenSolver<DenseOperator> solver(
          to_dense(op.generator(), n));
      k.eigenvectors = solver.eigenvectors();
      k.eigenvalues = solver.eigenvalues();
    }
    seg.kernels.push_back(std::move(k));
  }
}

CompiledCircuit::Bound CompiledCircuit::bind(std::span<const double> theta) const {
  if (theta.size() != circuit_.parameter_count()) {
    throw StructuralError("expected " + std::to_string(circuit_.parameter_count()) +
                          " parameters, got " + std::to_string(theta.size()));
  }
  const auto d = static_cast<Eigen::Index>(dim_);
  Bound bound;
  bound.segments.resize(segments_.size());
  for (std::size_t s = 0; s < segments_.size(); ++s) {
    const Segment& seg = segments_[s];
    if (seg.data) continue;
    const std::size_t m = seg.gates.size();
    std::vector<DenseOperator> gates(m);
    for (std::size_t j = 0; j < m; ++j) {
      const GateTemplate& g = seg.gates[j];
      gates[j] = g.op->is_trainable()
                     ? spectral_rotation(g.eigenvectors, g.eigenvalues,
                                         g.op->angle().resolve(theta, {}))
                     : g.constant;
    }
    // prefix[j] = G_j ... G_0, suffix[j] = G_{m-1} ... G_{j+1}
    std::vector<DenseOperator> prefix(m), suffix(m);
    for (std::size_t j = 0; j < m; ++j) {
      prefix[j] = j == 0 ? gates[0] : DenseOperator(gates[j] * prefix[j - 1]);
    }
    for (std::size_t j = m; j-- > 0;) {
      suffix[j] = j + 1 == m ? DenseOperator(DenseOperator::Identity(d, d))
                             : DenseOperator(suffix[j + 1] * gates[j + 1]);
    }
    BoundSegment& out = bound.segments[s];
    out.matrix = row_major(prefix[m - 1]);
    for (std::size_t j = 0; j < m; ++j) {
      const GateTemplate& g = seg.gates[j];
      if (!g.op->is_trainable()) continue;
      const Complex factor = -kI * (0.5 * g.op->angle().value);
      const DenseOperator deriv = suffix[j] * (factor * g.generator) * prefix[j];
      out.derivatives.emplace_back(g.op->angle().index, row_major(deriv));
    }
  }
  return bound;
}

void CompiledCircuit::apply_data(const Segment& seg, std::span<const double> z,
                                 std::vector<Complex>& psi, bool adjoint) const {
  const double sign = adjoint ? -1.0 : 1.0;
  auto apply = [&](const DataKernel& k) {
    switch (k.type) {
      case DataKernel::Type::SingleQubit:
        apply_single(psi, k.bit, sign * k.angle.resolve({}, z), k.coeff[0],
                     k.coeff[1], k.coeff[2], k.coeff[3]);
        break;
      case DataKernel::Type::Bloch:
        apply_single(psi, k.bit, sign, 0.0, z[k.x_input], z[k.y_input], 0.0);
        break;
      case DataKernel::Type::Dense: {
        const DenseOperator u = spectral_rotation(
            k.eigenvectors, k.eigenvalues, sign * k.angle.resolve({}, z));
        Eigen::Map<Eigen::VectorXcd> v(psi.data(), static_cast<Eigen::Index>(psi.size()));
        const Eigen::VectorXcd out = u * v;
        v = out;
        break;
      }
    }
  };
  if (adjoint) {
    for (auto it = seg.kernels.rbegin(); it != seg.kernels.rend(); ++it) apply(*it);
  } else {
    for (const auto& k : seg.kernels) apply(k);
  }
}

double CompiledCircuit::forward(const Bound& bound, std::span<const double> z,
                                std::vector<std::vector<Complex>>* inputs,
                                std::vector<Complex>& psi) const {
  if (z.size() != circuit_.input_dim()) {
    throw StructuralError("expected input of length " +
                          std::to_string(circuit_.input_dim()));
  }
  psi = initial_;
  std::vector<Complex> tmp(dim_);
  for (std::size_t s = 0; s < segments_.size(); ++s) {
    const Segment& seg = segments_[s];
    if (seg.data) {
      apply_data(seg, z, psi, false);
      continue;
    }
    if (inputs) (*inputs)[s] = psi;
    matvec(bound.segments[s].matrix, psi, tmp);
    psi.swap(tmp);
  }
  double f = 0.0;
  for (std::size_t r = 0; r < dim_; ++r) {
    Complex row = 0.0;
    const Complex* o = observable_.data() + r * dim_;
    for (std::size_t c = 0; c < dim_; ++c) row += o[c] * psi[c];
    f += (std::conj(psi[r]) * row).real();
  }
  return f;
}

void CompiledCircuit::evaluate(std::span<const double> theta,
                               const PointSet& points,
                               std::span<double> values) const {
  if (values.size() != points.size()) {
    throw StructuralError("evaluate: output size mismatch");
  }
  const Bound bound = bind(theta);
  std::vector<Complex> psi(dim_);
  for (std::size_t i = 0; i < points.size(); ++i) {
    values[i] = forward(bound, points[i], nullptr, psi);
  }
}

void CompiledCircuit::accumulate_vjp(std::span<const double> theta,
                                     const PointSet& points,
                                     std::span<const double> weights,
                                     std::span<double> grad) const {
  if (weights.size() != points.size() || grad.size() != theta.size()) {
    throw StructuralError("accumulate_vjp: size mismatch");
  }
  const Bound bound = bind(theta);
  const std::size_t d2 = dim_ * dim_;
  std::vector<std::vector<Complex>> acc(segments_.size());
  for (std::size_t s = 0; s < segments_.size(); ++s) {
    if (!segments_[s].data) acc[s].assign(d2, Complex(0.0));
  }
  std::vector<std::vector<Complex>> inputs(segments_.size());
  std::vector<Complex> psi(dim_), lambda(dim_), tmp(dim_);
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double w = weights[i];
    if (w == 0.0) continue;
    forward(bound, points[i], &inputs, psi);
    // lambda = w O psi
    for (std::size_t r = 0; r < dim_; ++r) {
      Complex row = 0.0;
      const Complex* o = observable_.data() + r * dim_;
      for (std::size_t c = 0; c < dim_; ++c) row += o[c] * psi[c];
      lambda[r] = w * row;
    }
    for (std::size_t s = segments_.size(); s-- > 0;) {
      const Segment& seg = segments_[s];
      if (seg.data) {
        apply_data(seg, points[i], lambda, true);
        continue;
      }
      const std::vector<Complex>& phi = inputs[s];
      Complex* a = acc[s].data();
      for (std::size_t r = 0; r < dim_; ++r) {
        const Complex lr = std::conj(lambda[r]);
        for (std::size_t c = 0; c < dim_; ++c) a[r * dim_ + c] += lr * phi[c];
      }
      if (s > 0) {
        adjoint_matvec(bound.segments[s].matrix, lambda, tmp);
        lambda.swap(tmp);
      }
    }
  }
  for (std::size_t s = 0; s < segments_.size(); ++s) {
    if (segments_[s].data) continue;
    for (const auto& [index, deriv] : bound.segments[s].derivatives) {
      double g = 0.0;
      for (std::size_t k = 0; k < d2; ++k) g += (deriv[k] * acc[s][k]).real();
      grad[index] += 2.0 * g;
    }
  }
}

StateVector CompiledCircuit::state(std::span<const double> theta,
                                   std::span<const double> z) const {
  const Bound bound = bind(theta);
  std::vector<Complex> psi(dim_);
  forward(bound, z, nullptr, psi);
  return Eigen::Map<const StateVector>(psi.data(), static_cast<Eigen::Index>(dim_));
}

}  // namespace gqpinn
