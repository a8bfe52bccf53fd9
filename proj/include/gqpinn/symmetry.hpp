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
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "gqpinn/pauli.hpp"

namespace gqpinn {

/// Labelled unitary of a finite group representation.
struct GroupElement {
  std::string label;
  DenseOperator unitary;
};

/**
 * Unitary representation of a symmetry group on the register. Either a
 * finite list of element unitaries or a one-parameter periodic family
 * phi -> U(phi) with U(0) = I and U(period) = I up to a global phase.
 */
class GroupRepresentation {
 public:
  enum class Kind { Finite, OneParameter };
  using Family = std::function<DenseOperator(double)>;

  /// Number of sampled angles used to check one-parameter families.
  static constexpr int kCheckAngles = 16;

  static GroupRepresentation finite(std::size_t qubits,
                                    std::vector<GroupElement> elements);
  static GroupRepresentation one_parameter(std::size_t qubits, Family family,
                                           double period);

  Kind kind() const { return kind_; }
  std::size_t qubits() const { return qubits_; }
  const std::vector<GroupElement>& elements() const { return elements_; }
  DenseOperator at(double angle) const { return family_(angle); }
  double period() const { return period_; }

  /// Unitaries used by invariance checks: every element for finite groups,
  /// kCheckAngles uniformly spaced angles over the period otherwise.
  std::vector<DenseOperator> check_unitaries() const;

  /// True when every product of two elements equals some element up to a
  /// global phase within `tol`.
  bool is_closed(double tol = 1e-10) const;

 private:
  Kind kind_ = Kind::Finite;
  std::size_t qubits_ = 0;
  std::vector<GroupElement> elements_;
  Family family_;
  double period_ = 0.0;
};

/**
 * Action of the same group on input coordinates. Each map is linear on the
 * leading `spatial_dim()` coordinates; trailing coordinates (time) are left
 * unchanged.
 */
class CoordinateAction {
 public:
  using Map = Eigen::MatrixXd;

  static CoordinateAction finite(std::vector<std::string> labels,
                                 std::vector<Map> maps);
  static CoordinateAction one_parameter(std::function<Map(double)> family,
                                        std::size_t spatial_dim);

  bool is_finite() const { return family_ == nullptr; }
  std::size_t spatial_dim() const { return spatial_dim_; }
  std::size_t size() const { return maps_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const Map& map(std::size_t element) const { return maps_[element]; }
  Map map_at(double angle) const { return family_(angle); }

  /// V_g[z] for finite element index `element`.
  std::vector<double> apply(std::size_t element, std::span<const double> z) const;
  /// V_phi[z] for a one-parameter action.
  std::vector<double> apply_angle(double angle, std::span<const double> z) const;

 private:
  static std::vector<double> apply_map(const Map& m, std::span<const double> z);

  std::vector<std::string> labels_;
  std::vector<Map> maps_;
  std::function<Map(double)> family_;
  std::size_t spatial_dim_ = 0;
};

/// A group representation with its coordinate action.
struct Symmetry {
  GroupRepresentation representation;
  CoordinateAction action;
};

/// Commuting generators, each with a parameter-sharing label (the textual
/// form of the generator it came from).
struct GeneratorSet {
  std::vector<PauliSum> generators;
  std::vector<std::string> labels;

  std::size_t size() const { return generators.size(); }
};

/// (1/|G|) sum_g U_g H U_g^dagger in the Pauli basis.
PauliSum twirl_finite(const PauliSum& h, const GroupRepresentation& rep);

/// Haar average over a one-parameter family by uniform trapezoidal quadrature
/// on [0, period). Requires nodes >= 2 * max_weight(h) + 2.
PauliSum twirl_continuous(const PauliSum& h, const GroupRepresentation& rep,
                          int nodes = 64);

/// Dispatches on the representation kind (64 nodes for continuous groups).
PauliSum twirl(const PauliSum& h, const GroupRepresentation& rep);

/// Twirls each element of `pool`, drops zeros and keeps the first of any
/// generators equal up to a real scalar.
GeneratorSet equivariant_generator_set(const std::vector<PauliSum>& pool,
                                       const GroupRepresentation& rep);

/// True when every generator commutes with every checked unitary.
bool commutes_with(const GeneratorSet& set, const GroupRepresentation& rep,
                   double tol = 1e-10);

/// Klein four-group {e, s, p, sp}: s swaps (x, y), p negates both.
/// n = 2 encodes (x, y); n = 4 encodes (x, y, x, y).
Symmetry k4_rep(std::size_t n);

/// Planar rotations realized as R_Z(phi) on every qubit.
Symmetry so2_rep(std::size_t n);

/// Parity x -> -x on inputs (x, t), realized as X on qubit 1.
Symmetry z2_rep();

/// U_g |psi> = e^{i phi} |psi> for every checked element, tested through
/// |<psi|U_g|psi>| >= 1 - 1e-10.
bool check_invariant_state(const Eigen::VectorXcd& psi,
                           const GroupRepresentation& rep);

/// [O, U_g] = 0 within 1e-10 for every checked element.
bool check_invariant_observable(const PauliSum& observable,
                                const GroupRepresentation& rep);

/// Reference generator pools and commuting sets.
namespace generator_sets {

/// {X1, Y1, Z1, X2, Y2, Z2, X1X2, Y1Y2, Z1Z2}
std::vector<PauliSum> two_qubit_pool();
/// {X1..X4, Z1..Z4, X1X2, X2X3, X3X4, Y1Y2, Y3Y4, Z1Z2, Z2Z3, Z3Z4}
std::vector<PauliSum> four_qubit_pool();

/// {(X1+X2)/2, X1X2, Y1Y2, Z1Z2}
std::vector<PauliSum> k4_two_qubit();
/// {Z1, Z2, Z1Z2, (X1X2+Y1Y2)/2}
std::vector<PauliSum> so2_two_qubit();
/// {X1, X2, Y2, Z2, X1X2}
std::vector<PauliSum> z2_two_qubit();
/// Seven-element K4 set on four qubits, in its listed order.
std::vector<PauliSum> k4_four_qubit();
/// Ten-element SO(2) set on four qubits, in its listed order.
std::vector<PauliSum> so2_four_qubit();

/// Order-independent comparison of two generator lists as coefficient maps.
/// Returns the largest coefficient mismatch, or +inf when the lists cannot be
/// matched one-to-one.
double set_distance(const std::vector<PauliSum>& a,
                    const std::vector<PauliSum>& b);

}  // namespace generator_sets

}  // namespace gqpinn
