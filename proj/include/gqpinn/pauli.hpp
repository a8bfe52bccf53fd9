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

#include <complex>
#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace gqpinn {

using Complex = std::complex<double>;

/// Dense 2^n x 2^n complex matrix. Qubit 1 is the most significant bit of the
/// basis index, so |q1 q2 ... qn> maps to index sum_k q_k 2^(n-k).
using DenseOperator = Eigen::MatrixXcd;

/** Single-qubit Pauli letter. */
enum class Pauli : unsigned char { I = 0, X = 1, Y = 2, Z = 3 };

char to_char(Pauli p);

/**
 * A tensor product of single-qubit Pauli operators on a fixed number of
 * qubits. Letters are stored in qubit order (index 0 is qubit 1).
 */
class PauliString {
 public:
  PauliString() = default;
  explicit PauliString(std::size_t qubits);
  explicit PauliString(std::vector<Pauli> letters);

  /// Builds a string from letters such as "XIZ". Throws StructuralError on
  /// any character outside {I,X,Y,Z}.
  static PauliString from_letters(std::string_view letters);

  std::size_t size() const { return letters_.size(); }
  Pauli operator[](std::size_t q) const { return letters_[q]; }
  void set(std::size_t q, Pauli p) { letters_[q] = p; }
  const std::vector<Pauli>& letters() const { return letters_; }

  /// Number of non-identity letters.
  std::size_t weight() const;
  bool is_identity() const { return weight() == 0; }

  /// Compact letter form, e.g. "XIZ".
  std::string letters_string() const;

  /// Canonical ordering: lower weight first, then letter-by-letter with
  /// X < Y < Z < I so that X1 sorts before X2.
  friend bool operator<(const PauliString& a, const PauliString& b);
  friend bool operator==(const PauliString& a, const PauliString& b) = default;

 private:
  std::vector<Pauli> letters_;
};

/// Product a*b = phase * c with phase in {1, i, -1, -i}.
std::pair<Complex, PauliString> pauli_product(const PauliString& a,
                                              const PauliString& b);

/**
 * Real-weighted sum of Pauli strings on a fixed qubit count. Every term has a
 * real coefficient, so the operator is Hermitian. Terms with magnitude below
 * kPruneThreshold are never stored.
 */
class PauliSum {
 public:
  static constexpr double kPruneThreshold = 1e-12;
  using Terms = std::map<PauliString, double>;

  PauliSum() = default;
  explicit PauliSum(std::size_t qubits) : qubits_(qubits) {}
  PauliSum(PauliString p, double coefficient = 1.0);

  /// Single-qubit letter on 1-based qubit `qubit` of an n-qubit register.
  static PauliSum single(std::size_t n, Pauli p, std::size_t qubit);
  /// Letters on 1-based qubits, e.g. term(2, {{1, Pauli::X}, {2, Pauli::X}}).
  static PauliSum term(std::size_t n,
                       std::initializer_list<std::pair<std::size_t, Pauli>> ops,
                       double coefficient = 1.0);

  std::size_t qubits() const { return qubits_; }
  const Terms& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  /// Coefficient of `p`, zero when absent.
  double coefficient(const PauliString& p) const;
  std::size_t max_weight() const;

  /// Adds c*p, merging with an existing term and pruning the result.
  void add(const PauliString& p, double c);

  PauliSum& operator+=(const PauliSum& other);
  PauliSum& operator-=(const PauliSum& other);
  PauliSum& operator*=(double s);
  friend PauliSum operator+(PauliSum a, const PauliSum& b) { return a += b; }
  friend PauliSum operator-(PauliSum a, const PauliSum& b) { return a -= b; }
  friend PauliSum operator*(PauliSum a, double s) { return a *= s; }
  friend PauliSum operator*(double s, PauliSum a) { return a *= s; }

  /// Largest |coefficient difference| over the union of both supports.
  friend double max_abs_difference(const PauliSum& a, const PauliSum& b);
  friend bool operator==(const PauliSum& a, const PauliSum& b) = default;

 private:
  std::size_t qubits_ = 0;
  Terms terms_;
};

/// Textual form `0.5*X1X2 + 0.5*Y1Y2` with 1-based qubit indices and implicit
/// identity elsewhere. Coefficients print in shortest round-trip form; a unit
/// coefficient is omitted. The empty sum prints as "0".
std::string to_string(const PauliSum& h);

/// Parses the textual form. `qubits` fixes the register width; indices beyond
/// it throw StructuralError.
PauliSum parse_pauli_sum(std::string_view text, std::size_t qubits);

/// Dense matrix of a single Pauli string.
DenseOperator to_dense(const PauliString& p);

/// Dense matrix sum_P c_P P. Throws StructuralError when `n` differs from
/// the sum's qubit count.
DenseOperator to_dense(const PauliSum& h, std::size_t n);

/// Pauli-basis expansion of a Hermitian dense operator. Coefficients are
/// Re tr(P A) / 2^n; a non-negligible imaginary part throws
/// NumericIntegrityError.
PauliSum from_dense(const DenseOperator& a);

/// Largest entry magnitude of AB - BA.
double commutator_norm(const DenseOperator& a, const DenseOperator& b);

/// Rotation R_H(theta) = exp(-i theta H / 2). Single Pauli strings use the
/// closed form; general sums use a Hermitian eigendecomposition.
DenseOperator exp_generator(const PauliSum& h, double theta, std::size_t n);

/// exp(-i theta A / 2) for a dense Hermitian A. Throws ContractViolation if
/// A is not Hermitian within 1e-12.
DenseOperator exp_hermitian(const DenseOperator& a, double theta);

double max_abs(const DenseOperator& a);
bool is_unitary(const DenseOperator& u, double tol = 1e-12);
bool is_hermitian(const DenseOperator& a, double tol = 1e-12);

/// Fixed gates used by state preparation, 1-based qubit indices.
DenseOperator hadamard(std::size_t n, std::size_t qubit);
DenseOperator pauli_x(std::size_t n, std::size_t qubit);
DenseOperator cnot(std::size_t n, std::size_t control, std::size_t target);
DenseOperator swap_gate(std::size_t n, std::size_t a, std::size_t b);

/// Kronecker product a (x) b.
DenseOperator kron(const DenseOperator& a, const DenseOperator& b);

}  // namespace gqpinn
