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

#include "gqpinn/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

#include "gqpinn/error.hpp"

namespace gqpinn {

namespace {

std::size_t dimension(std::size_t n) { return std::size_t{1} << n; }

bool equal_up_to_phase(const DenseOperator& a, const DenseOperator& b,
                       double tol) {
  // Pick the phase from the largest entry of b.
  Eigen::Index r = 0;
  Eigen::Index c = 0;
  b.cwiseAbs().maxCoeff(&r, &c);
  if (std::abs(a(r, c)) < 1e-14) return false;
  const Complex phase = a(r, c) / b(r, c);
  if (std::abs(std::abs(phase) - 1.0) > tol) return false;
  return max_abs(a - phase * b) <= tol;
}

// True when b = s * a for some real s.
bool scalar_multiple(const PauliSum& a, const PauliSum& b) {
  if (a.size() != b.size()) return false;
  std::optional<double> ratio;
  for (const auto& [p, ca] : a.terms()) {
    const double cb = b.coefficient(p);
    if (cb == 0.0) return false;
    const double r = cb / ca;
    if (!ratio) {
      ratio = r;
    } else if (std::abs(r - *ratio) > 1e-10 * std::max(1.0, std::abs(*ratio))) {
      return false;
    }
  }
  return true;
}

PauliSum positive_leading(PauliSum h) {
  double lead = 0.0;
  for (const auto& [p, c] : h.terms()) {
    if (std::abs(c) > std::abs(lead) + 1e-14) lead = c;
  }
  if (lead < 0) h *= -1.0;
  return h;
}

void check_size(const PauliSum& h, const GroupRepresentation& rep) {
  if (h.qubits() != rep.qubits()) {
    throw StructuralError("twirl: generator has " + std::to_string(h.qubits()) +
                          " qubits, representation has " +
                          std::to_string(rep.qubits()));
  }
}

PauliSum make(std::size_t n, std::string_view text) {
  return parse_pauli_sum(text, n);
}

std::vector<PauliSum> make_all(std::size_t n,
                               std::initializer_list<std::string_view> texts) {
  std::vector<PauliSum> out;
  for (auto t : texts) out.push_back(make(n, t));
  return out;
}

}  // namespace

GroupRepresentation GroupRepresentation::finite(
    std::size_t qubits, std::vector<GroupElement> elements) {
  const auto d = static_cast<Eigen::Index>(dimension(qubits));
  bool has_identity = false;
  for (const auto& e : elements) {
    if (e.unitary.rows() != d || e.unitary.cols() != d) {
      throw StructuralError("group element '" + e.label +
                            "' has the wrong dimension");
    }
    if (!is_unitary(e.unitary)) {
      throw ContractViolation("group element '" + e.label + "' is not unitary");
    }
    if (max_abs(e.unitary - DenseOperator::Identity(d, d)) < 1e-12) {
      has_identity = true;
    }
  }
  if (!has_identity) {
    throw ContractViolation("finite representation lacks the identity");
  }
  GroupRepresentation rep;
  rep.kind_ = Kind::Finite;
  rep.qubits_ = qubits;
  rep.elements_ = std::move(elements);
  return rep;
}

GroupRepresentation GroupRepresentation::one_parameter(std::size_t qubits,
                                                       Family family,
                                                       double period) {
  const auto d = static_cast<Eigen::Index>(dimension(qubits));
  const DenseOperator identity = DenseOperator::Identity(d, d);
  if (max_abs(family(0.0) - identity) > 1e-12) {
    throw ContractViolation("one-parameter family is not the identity at 0");
  }
  if (!equal_up_to_phase(family(period), identity, 1e-10)) {
    throw ContractViolation("one-parameter family is not periodic");
  }
  GroupRepresentation rep;
  rep.kind_ = Kind::OneParameter;
  rep.qubits_ = qubits;
  rep.family_ = std::move(family);
  rep.period_ = period;
  return rep;
}

std::vector<DenseOperator> GroupRepresentation::check_unitaries() const {
  std::vector<DenseOperator> out;
  if (kind_ == Kind::Finite) {
    for (const auto& e : elements_) out.push_back(e.unitary);
  } else {
    for (int k = 0; k < kCheckAngles; ++k) {
      out.push_back(family_(period_ * k / kCheckAngles));
    }
  }
  return out;
}

bool GroupRepresentation::is_closed(double tol) const {
  if (kind_ != Kind::Finite) {
    // U(a)U(b) = U(a+b) on sampled pairs.
    for (int i = 0; i < kCheckAngles; ++i) {
      for (int j = 0; j < kCheckAngles; ++j) {
        const double a = period_ * i / kCheckAngles;
        const double b = period_ * j / kCheckAngles;
        if (!equal_up_to_phase(family_(a) * family_(b), family_(a + b), tol)) {
          return false;
        }
      }
    }
    return true;
  }
  for (const auto& a : elements_) {
    for (const auto& b : elements_) {
      const DenseOperator prod = a.unitary * b.unitary;
      const bool found = std::any_of(
          elements_.begin(), elements_.end(), [&](const GroupElement& c) {
            return equal_up_to_phase(prod, c.unitary, tol);
          });
      if (!found) return false;
    }
  }
  return true;
}

CoordinateAction CoordinateAction::finite(std::vector<std::string> labels,
                                          std::vector<Map> maps) {
  if (labels.size() != maps.size() || maps.empty()) {
    throw StructuralError("coordinate action: labels and maps disagree");
  }
  CoordinateAction a;
  a.spatial_dim_ = static_cast<std::size_t>(maps.front().rows());
  for (const auto& m : maps) {
    if (static_cast<std::size_t>(m.rows()) != a.spatial_dim_ ||
        m.rows() != m.cols()) {
      throw StructuralError("coordinate action: inconsistent map sizes");
    }
  }
  a.labels_ = std::move(labels);
  a.maps_ = std::move(maps);
  return a;
}

CoordinateAction CoordinateAction::one_parameter(
    std::function<Map(double)> family, std::size_t spatial_dim) {
  CoordinateAction a;
  a.family_ = std::move(family);
  a.spatial_dim_ = spatial_dim;
  return a;
}

std::vector<double> CoordinateAction::apply_map(const Map& m,
                                                std::span<const double> z) {
  const auto k = static_cast<std::size_t>(m.rows());
  if (z.size() < k) throw StructuralError("coordinate action: input too short");
  std::vector<double> out(z.begin(), z.end());
  for (std::size_t i = 0; i < k; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      s += m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) * z[j];
    }
    out[i] = s;
  }
  return out;
}

std::vector<double> CoordinateAction::apply(std::size_t element,
                                            std::span<const double> z) const {
  if (!is_finite()) throw ContractViolation("apply: action is not finite");
  return apply_map(maps_.at(element), z);
}

std::vector<double> CoordinateAction::apply_angle(
    double angle, std::span<const double> z) const {
  if (is_finite()) throw ContractViolation("apply_angle: action is finite");
  return apply_map(family_(angle), z);
}

PauliSum twirl_finite(const PauliSum& h, const GroupRepresentation& rep) {
  if (rep.kind() != GroupRepresentation::Kind::Finite) {
    throw ContractViolation("twirl_finite: representation is not finite");
  }
  check_size(h, rep);
  const DenseOperator hd = to_dense(h, rep.qubits());
  DenseOperator acc = DenseOperator::Zero(hd.rows(), hd.cols());
  for (const auto& e : rep.elements()) {
    acc += e.unitary * hd * e.unitary.adjoint();
  }
  acc /= static_cast<double>(rep.elements().size());
  return from_dense(acc);
}

PauliSum twirl_continuous(const PauliSum& h, const GroupRepresentation& rep,
                          int nodes) {
  if (rep.kind() != GroupRepresentation::Kind::OneParameter) {
    throw ContractViolation("twirl_continuous: representation is finite");
  }
  check_size(h, rep);
  const auto needed = 2 * static_cast<int>(h.max_weight()) + 2;
  if (nodes < needed) {
    throw ContractViolation("twirl_continuous: " + std::to_string(nodes) +
                            " nodes, need at least " + std::to_string(needed));
  }
  const DenseOperator hd = to_dense(h, rep.qubits());
  DenseOperator acc = DenseOperator::Zero(hd.rows(), hd.cols());
  for (int k = 0; k < nodes; ++k) {
    const DenseOperator u = rep.at(rep.period() * k / nodes);
    acc += u * hd * u.adjoint();
  }
  acc /= static_cast<double>(nodes);
  return from_dense(acc);
}

PauliSum twirl(const PauliSum& h, const GroupRepresentation& rep) {
  return rep.kind() == GroupRepresentation::Kind::Finite
             ? twirl_finite(h, rep)
             : twirl_continuous(h, rep);
}

GeneratorSet equivariant_generator_set(const std::vector<PauliSum>& pool,
                                       const GroupRepresentation& rep) {
  GeneratorSet out;
  for (const auto& h : pool) {
    PauliSum t = twirl(h, rep);
    if (t.empty()) continue;
    t = positive_leading(std::move(t));
    auto dup = std::find_if(
        out.generators.begin(), out.generators.end(),
        [&](const PauliSum& kept) { return scalar_multiple(kept, t); });
    if (dup != out.generators.end()) {
      auto& label = out.labels[static_cast<std::size_t>(dup - out.generators.begin())];
      label += "," + to_string(h);
      continue;
    }
    out.generators.push_back(std::move(t));
    out.labels.push_back(to_string(h));
  }
  return out;
}

bool commutes_with(const GeneratorSet& set, const GroupRepresentation& rep,
                   double tol) {
  const auto unitaries = rep.check_unitaries();
  for (const auto& g : set.generators) {
    const DenseOperator gd = to_dense(g, rep.qubits());
    for (const auto& u : unitaries) {
      if (commutator_norm(gd, u) >= tol) return false;
    }
  }
  return true;
}

Symmetry k4_rep(std::size_t n) {
  if (n != 2 && n != 4) {
    throw StructuralError("k4_rep: unsupported qubit count " + std::to_string(n));
  }
  DenseOperator us;
  DenseOperator up = to_dense(PauliString(std::vector<Pauli>(n, Pauli::X)));
  if (n == 2) {
    us = swap_gate(2, 1, 2);
  } else {
    us = swap_gate(4, 1, 2) * swap_gate(4, 3, 4);
  }
  const auto d = static_cast<Eigen::Index>(dimension(n));
  std::vector<GroupElement> elements{
      {"e", DenseOperator::Identity(d, d)},
      {"s", us},
      {"p", up},
      {"sp", us * up},
  };
  Eigen::Matrix2d ve = Eigen::Matrix2d::Identity();
  Eigen::Matrix2d vs;
  vs << 0, 1, 1, 0;
  Eigen::Matrix2d vp = -Eigen::Matrix2d::Identity();
  Eigen::Matrix2d vsp = vs * vp;
  return {GroupRepresentation::finite(n, std::move(elements)),
          CoordinateAction::finite({"e", "s", "p", "sp"}, {ve, vs, vp, vsp})};
}

Symmetry so2_rep(std::size_t n) {
  if (n != 1 && n != 2 && n != 4) {
    throw StructuralError("so2_rep: unsupported qubit count " + std::to_string(n));
  }
  PauliSum total_z(n);
  for (std::size_t q = 1; q <= n; ++q) total_z += PauliSum::single(n, Pauli::Z, q);
  auto family = [n, total_z](double phi) {
    // The Z_i commute, so R_Z(phi)^{(x)n} = exp(-i phi sum Z_i / 2).
    const std::size_t d = dimension(n);
    const DenseOperator zd = to_dense(total_z, n);
    DenseOperator u = DenseOperator::Zero(d, d);
    for (std::size_t i = 0; i < d; ++i) {
      const auto k = static_cast<Eigen::Index>(i);
      u(k, k) = std::exp(Complex(0.0, -0.5 * phi * zd(k, k).real()));
    }
    return u;
  };
  auto rotation = [](double phi) {
    Eigen::MatrixXd v(2, 2);
    v << std::cos(phi), -std::sin(phi), std::sin(phi), std::cos(phi);
    return v;
  };
  return {GroupRepresentation::one_parameter(n, family, 2.0 * std::numbers::pi),
          CoordinateAction::one_parameter(rotation, 2)};
}

Symmetry z2_rep() {
  std::vector<GroupElement> elements{
      {"e", DenseOperator::Identity(4, 4)},
      {"p", pauli_x(2, 1)},
  };
  Eigen::MatrixXd ve = Eigen::MatrixXd::Identity(1, 1);
  Eigen::MatrixXd vp = -Eigen::MatrixXd::Identity(1, 1);
  return {GroupRepresentation::finite(2, std::move(elements)),
          CoordinateAction::finite({"e", "p"}, {ve, vp})};
}

bool check_invariant_state(const Eigen::VectorXcd& psi,
                           const GroupRepresentation& rep) {
  if (static_cast<std::size_t>(psi.size()) != dimension(rep.qubits())) {
    throw StructuralError("check_invariant_state: dimension mismatch");
  }
  for (const auto& u : rep.check_unitaries()) {
    if (std::abs(psi.dot(u * psi)) < 1.0 - 1e-10) return false;
  }
  return true;
}

bool check_invariant_observable(const PauliSum& observable,
                                const GroupRepresentation& rep) {
  const DenseOperator o = to_dense(observable, rep.qubits());
  for (const auto& u : rep.check_unitaries()) {
    if (commutator_norm(o, u) >= 1e-10) return false;
  }
  return true;
}

namespace generator_sets {

std::vector<PauliSum> two_qubit_pool() {
  return make_all(2, {"X1", "Y1", "Z1", "X2", "Y2", "Z2", "X1X2", "Y1Y2", "Z1Z2"});
}

std::vector<PauliSum> four_qubit_pool() {
  return make_all(4, {"X1", "X2", "X3", "X4", "Z1", "Z2", "Z3", "Z4", "X1X2",
                      "X2X3", "X3X4", "Y1Y2", "Y3Y4", "Z1Z2", "Z2Z3", "Z3Z4"});
}

std::vector<PauliSum> k4_two_qubit() {
  return make_all(2, {"0.5*X1 + 0.5*X2", "X1X2", "Y1Y2", "Z1Z2"});
}

std::vector<PauliSum> so2_two_qubit() {
  return make_all(2, {"Z1", "Z2", "Z1Z2", "0.5*X1X2 + 0.5*Y1Y2"});
}

std::vector<PauliSum> z2_two_qubit() {
  return make_all(2, {"X1", "X2", "Y2", "Z2", "X1X2"});
}

std::vector<PauliSum> k4_four_qubit() {
  return make_all(4, {"0.5*X1 + 0.5*X2", "0.5*X3 + 0.5*X4", "Y1Y2", "Y3Y4",
                      "Z1Z2", "Z3Z4",
                      "0.25*X2X3 + 0.25*X1X3 + 0.25*X2X4 + 0.25*X1X4"});
}

std::vector<PauliSum> so2_four_qubit() {
  return make_all(4, {"Z1", "Z2", "Z3", "Z4", "Z1Z2", "Z2Z3", "Z3Z4",
                      "0.5*X1X2 + 0.5*Y1Y2", "0.5*X2X3 + 0.5*Y2Y3",
                      "0.5*X3X4 + 0.5*Y3Y4"});
}

double set_distance(const std::vector<PauliSum>& a,
                    const std::vector<PauliSum>& b) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  if (a.size() != b.size()) return kInf;
  std::vector<bool> used(b.size(), false);
  double worst = 0.0;
  for (const auto& x : a) {
    double best = kInf;
    std::size_t best_j = b.size();
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (used[j] || x.qubits() != b[j].qubits()) continue;
      const double d = max_abs_difference(x, b[j]);
      if (d < best) {
        best = d;
        best_j = j;
      }
    }
    if (best_j == b.size()) return kInf;
    used[best_j] = true;
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace generator_sets

}  // namespace gqpinn
