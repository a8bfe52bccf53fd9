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

#include "gqpinn/pauli.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <optional>

#include <Eigen/Eigenvalues>

#include "gqpinn/error.hpp"

namespace gqpinn {

namespace {

const Complex kI{0.0, 1.0};

// Single-qubit product table: a*b = phase * result.
std::pair<Complex, Pauli> multiply_letters(Pauli a, Pauli b) {
  if (a == Pauli::I) return {1.0, b};
  if (b == Pauli::I) return {1.0, a};
  if (a == b) return {1.0, Pauli::I};
  const int ia = static_cast<int>(a);
  const int ib = static_cast<int>(b);
  const auto third = static_cast<Pauli>(6 - ia - ib);
  // Cyclic order X -> Y -> Z -> X gives +i.
  const bool cyclic = (ib - ia + 3) % 3 == 1;
  return {cyclic ? kI : -kI, third};
}

Eigen::Matrix2cd letter_matrix(Pauli p) {
  Eigen::Matrix2cd m;
  switch (p) {
    case Pauli::I:
      m << 1, 0, 0, 1;
      break;
    case Pauli::X:
      m << 0, 1, 1, 0;
      break;
    case Pauli::Y:
      m << 0, -kI, kI, 0;
      break;
    case Pauli::Z:
      m << 1, 0, 0, -1;
      break;
  }
  return m;
}

std::size_t dimension(std::size_t n) { return std::size_t{1} << n; }

void check_qubit(std::size_t n, std::size_t qubit) {
  if (qubit < 1 || qubit > n) {
    throw StructuralError("qubit index " + std::to_string(qubit) +
                          " outside 1.." + std::to_string(n));
  }
}

// Basis permutation matrix from a map on basis indices.
template <class F>
DenseOperator permutation(std::size_t n, F&& f) {
  const std::size_t d = dimension(n);
  DenseOperator m = DenseOperator::Zero(d, d);
  for (std::size_t i = 0; i < d; ++i) m(f(i), i) = 1.0;
  return m;
}

std::size_t bit_of(std::size_t n, std::size_t qubit) { return n - qubit; }

std::string format_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, end);
}

}  // namespace

char to_char(Pauli p) {
  static constexpr char kLetters[] = {'I', 'X', 'Y', 'Z'};
  return kLetters[static_cast<int>(p)];
}

PauliString::PauliString(std::size_t qubits) : letters_(qubits, Pauli::I) {}

PauliString::PauliString(std::vector<Pauli> letters)
    : letters_(std::move(letters)) {}

PauliString PauliString::from_letters(std::string_view letters) {
  std::vector<Pauli> out;
  out.reserve(letters.size());
  for (char c : letters) {
    switch (c) {
      case 'I':
        out.push_back(Pauli::I);
        break;
      case 'X':
        out.push_back(Pauli::X);
        break;
      case 'Y':
        out.push_back(Pauli::Y);
        break;
      case 'Z':
        out.push_back(Pauli::Z);
        break;
      default:
        throw StructuralError(std::string("invalid Pauli letter '") + c + "'");
    }
  }
  return PauliString(std::move(out));
}

std::size_t PauliString::weight() const {
  return static_cast<std::size_t>(std::count_if(
      letters_.begin(), letters_.end(), [](Pauli p) { return p != Pauli::I; }));
}

std::string PauliString::letters_string() const {
  std::string s;
  s.reserve(letters_.size());
  for (Pauli p : letters_) s.push_back(to_char(p));
  return s;
}

bool operator<(const PauliString& a, const PauliString& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  const auto wa = a.weight();
  const auto wb = b.weight();
  if (wa != wb) return wa < wb;
  // X < Y < Z < I
  auto rank = [](Pauli p) { return (static_cast<int>(p) + 3) % 4; };
  for (std::size_t q = 0; q < a.size(); ++q) {
    if (a[q] != b[q]) return rank(a[q]) < rank(b[q]);
  }
  return false;
}

std::pair<Complex, PauliString> pauli_product(const PauliString& a,
                                              const PauliString& b) {
  if (a.size() != b.size()) {
    throw StructuralError("pauli_product: length mismatch");
  }
  Complex phase = 1.0;
  PauliString c(a.size());
  for (std::size_t q = 0; q < a.size(); ++q) {
    auto [ph, letter] = multiply_letters(a[q], b[q]);
    phase *= ph;
    c.set(q, letter);
  }
  return {phase, c};
}

PauliSum::PauliSum(PauliString p, double coefficient) : qubits_(p.size()) {
  add(p, coefficient);
}

PauliSum PauliSum::single(std::size_t n, Pauli p, std::size_t qubit) {
  check_qubit(n, qubit);
  PauliString s(n);
  s.set(qubit - 1, p);
  return PauliSum(s);
}

PauliSum PauliSum::term(std::size_t n,
                        std::initializer_list<std::pair<std::size_t, Pauli>> ops,
                        double coefficient) {
  PauliString s(n);
  for (const auto& [qubit, p] : ops) {
    check_qubit(n, qubit);
    s.set(qubit - 1, p);
  }
  return PauliSum(s, coefficient);
}

double PauliSum::coefficient(const PauliString& p) const {
  auto it = terms_.find(p);
  return it == terms_.end() ? 0.0 : it->second;
}

std::size_t PauliSum::max_weight() const {
  std::size_t w = 0;
  for (const auto& [p, c] : terms_) w = std::max(w, p.weight());
  return w;
}

void PauliSum::add(const PauliString& p, double c) {
  if (p.size() != qubits_) {
    throw StructuralError("PauliSum: string length " +
                          std::to_string(p.size()) + " != " +
                          std::to_string(qubits_));
  }
  auto [it, inserted] = terms_.try_emplace(p, 0.0);
  it->second += c;
  if (std::abs(it->second) < kPruneThreshold) terms_.erase(it);
}

PauliSum& PauliSum::operator+=(const PauliSum& other) {
  if (other.qubits_ != qubits_) {
    throw StructuralError("PauliSum: qubit count mismatch");
  }
  for (const auto& [p, c] : other.terms_) add(p, c);
  return *this;
}

PauliSum& PauliSum::operator-=(const PauliSum& other) {
  if (other.qubits_ != qubits_) {
    throw StructuralError("PauliSum: qubit count mismatch");
  }
  for (const auto& [p, c] : other.terms_) add(p, -c);
  return *this;
}

PauliSum& PauliSum::operator*=(double s) {
  Terms scaled;
  for (const auto& [p, c] : terms_) {
    if (std::abs(c * s) >= kPruneThreshold) scaled.emplace(p, c * s);
  }
  terms_ = std::move(scaled);
  return *this;
}

double max_abs_difference(const PauliSum& a, const PauliSum& b) {
  double d = 0.0;
  for (const auto& [p, c] : a.terms_) d = std::max(d, std::abs(c - b.coefficient(p)));
  for (const auto& [p, c] : b.terms_) d = std::max(d, std::abs(c - a.coefficient(p)));
  return d;
}

std::string to_string(const PauliSum& h) {
  if (h.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [p, c] : h.terms()) {
    const double mag = std::abs(c);
    if (first) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    first = false;
    std::string letters;
    if (p.is_identity()) {
      letters = "I";
    } else {
      for (std::size_t q = 0; q < p.size(); ++q) {
        if (p[q] == Pauli::I) continue;
        letters += to_char(p[q]);
        letters += std::to_string(q + 1);
      }
    }
    if (mag == 1.0) {
      out += letters;
    } else {
      out += format_double(mag) + "*" + letters;
    }
  }
  return out;
}

namespace {

class PauliSumParser {
 public:
  PauliSumParser(std::string_view text, std::size_t qubits)
      : text_(text), qubits_(qubits) {}

  PauliSum parse() {
    PauliSum out(qubits_);
    skip_space();
    if (at_end()) throw StructuralError("empty Pauli sum");
    bool first = true;
    while (!at_end()) {
      double sign = 1.0;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1.0 : 1.0;
        ++pos_;
        skip_space();
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      first = false;
      auto [string, coefficient] = parse_term();
      if (string) out.add(*string, sign * coefficient);
      skip_space();
    }
    return out;
  }

 private:
  std::pair<std::optional<PauliString>, double> parse_term() {
    double coefficient = 1.0;
    if (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '.') {
      const char* begin = text_.data() + pos_;
      const char* end = text_.data() + text_.size();
      auto [ptr, ec] = std::from_chars(begin, end, coefficient);
      if (ec != std::errc()) fail("bad coefficient");
      pos_ += static_cast<std::size_t>(ptr - begin);
      skip_space();
      if (!at_end() && peek() == '*') {
        ++pos_;
        skip_space();
      } else {
        // Bare number: a multiple of the identity, or the literal zero sum.
        return {coefficient == 0.0 ? std::nullopt
                                   : std::optional(PauliString(qubits_)),
                coefficient};
      }
    }
    PauliString s(qubits_);
    bool any = false;
    while (!at_end() && std::isalpha(static_cast<unsigned char>(peek()))) {
      const char letter = peek();
      ++pos_;
      if (letter == 'I' &&
          (at_end() || !std::isdigit(static_cast<unsigned char>(peek())))) {
        any = true;
        continue;
      }
      Pauli p;
      switch (letter) {
        case 'X':
          p = Pauli::X;
          break;
        case 'Y':
          p = Pauli::Y;
          break;
        case 'Z':
          p = Pauli::Z;
          break;
        case 'I':
          p = Pauli::I;
          break;
        default:
          fail(std::string("unknown letter '") + letter + "'");
      }
      std::size_t index = 0;
      const char* begin = text_.data() + pos_;
      const char* end = text_.data() + text_.size();
      auto [ptr, ec] = std::from_chars(begin, end, index);
      if (ec != std::errc()) fail("missing qubit index");
      pos_ += static_cast<std::size_t>(ptr - begin);
      if (index < 1 || index > qubits_) {
        throw StructuralError("qubit index " + std::to_string(index) +
                              " outside 1.." + std::to_string(qubits_));
      }
      if (s[index - 1] != Pauli::I) fail("qubit repeated within a term");
      s.set(index - 1, p);
      any = true;
    }
    if (!any) fail("expected a Pauli term");
    return {s, coefficient};
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw StructuralError("Pauli sum parse error at offset " +
                          std::to_string(pos_) + ": " + what);
  }
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }

  std::string_view text_;
  std::size_t qubits_;
  std::size_t pos_ = 0;
};

}  // namespace

PauliSum parse_pauli_sum(std::string_view text, std::size_t qubits) {
  return PauliSumParser(text, qubits).parse();
}

DenseOperator to_dense(const PauliString& p) {
  DenseOperator m = DenseOperator::Ones(1, 1);
  for (Pauli letter : p.letters()) m = kron(m, letter_matrix(letter));
  return m;
}

DenseOperator to_dense(const PauliSum& h, std::size_t n) {
  if (h.qubits() != n) {
    throw StructuralError("to_dense: sum has " + std::to_string(h.qubits()) +
                          " qubits, expected " + std::to_string(n));
  }
  const std::size_t d = dimension(n);
  DenseOperator m = DenseOperator::Zero(d, d);
  for (const auto& [p, c] : h.terms()) m += c * to_dense(p);
  return m;
}

PauliSum from_dense(const DenseOperator& a) {
  const auto d = static_cast<std::size_t>(a.rows());
  std::size_t n = 0;
  while ((std::size_t{1} << n) < d) ++n;
  if (a.rows() != a.cols() || (std::size_t{1} << n) != d) {
    throw StructuralError("from_dense: not a square power-of-two matrix");
  }
  PauliSum out(n);
  const std::size_t count = std::size_t{1} << (2 * n);
  for (std::size_t code = 0; code < count; ++code) {
    PauliString p(n);
    for (std::size_t q = 0; q < n; ++q) {
      p.set(q, static_cast<Pauli>((code >> (2 * (n - 1 - q))) & 3));
    }
    const Complex c = (to_dense(p) * a).trace() / static_cast<double>(d);
    if (std::abs(c.imag()) > 1e-10) {
      throw NumericIntegrityError("from_dense: operator is not Hermitian");
    }
    out.add(p, c.real());
  }
  return out;
}

double max_abs(const DenseOperator& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

bool is_unitary(const DenseOperator& u, double tol) {
  if (u.rows() != u.cols()) return false;
  return max_abs(u.adjoint() * u -
                 DenseOperator::Identity(u.rows(), u.cols())) <= tol;
}

bool is_hermitian(const DenseOperator& a, double tol) {
  if (a.rows() != a.cols()) return false;
  return max_abs(a - a.adjoint()) <= tol;
}

double commutator_norm(const DenseOperator& a, const DenseOperator& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols() || a.rows() != a.cols()) {
    throw StructuralError("commutator_norm: dimension mismatch");
  }
  return max_abs(a * b - b * a);
}

DenseOperator exp_hermitian(const DenseOperator& a, double theta) {
  if (!is_hermitian(a)) {
    throw ContractViolation("exp_hermitian: generator is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<DenseOperator> solver(a);
  const Eigen::VectorXd& lambda = solver.eigenvalues();
  Eigen::VectorXcd phases(lambda.size());
  for (Eigen::Index k = 0; k < lambda.size(); ++k) {
    phases(k) = std::exp(-kI * (0.5 * theta * lambda(k)));
  }
  const DenseOperator& v = solver.eigenvectors();
  return v * phases.asDiagonal() * v.adjoint();
}

DenseOperator exp_generator(const PauliSum& h, double theta, std::size_t n) {
  if (h.qubits() != n) {
    throw StructuralError("exp_generator: qubit count mismatch");
  }
  const std::size_t d = dimension(n);
  if (h.empty()) return DenseOperator::Identity(d, d);
  if (h.size() == 1) {
    const auto& [p, c] = *h.terms().begin();
    const double half = 0.5 * theta * c;
    return std::cos(half) * DenseOperator::Identity(d, d) -
           kI * std::sin(half) * to_dense(p);
  }
  return exp_hermitian(to_dense(h, n), theta);
}

DenseOperator kron(const DenseOperator& a, const DenseOperator& b) {
  DenseOperator out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

DenseOperator hadamard(std::size_t n, std::size_t qubit) {
  check_qubit(n, qubit);
  DenseOperator h(2, 2);
  const double s = 1.0 / std::sqrt(2.0);
  h << s, s, s, -s;
  DenseOperator m = DenseOperator::Ones(1, 1);
  for (std::size_t q = 1; q <= n; ++q) {
    m = kron(m, q == qubit ? h : DenseOperator::Identity(2, 2));
  }
  return m;
}

DenseOperator pauli_x(std::size_t n, std::size_t qubit) {
  return to_dense(PauliSum::single(n, Pauli::X, qubit), n);
}

DenseOperator cnot(std::size_t n, std::size_t control, std::size_t target) {
  check_qubit(n, control);
  check_qubit(n, target);
  if (control == target) throw StructuralError("cnot: control == target");
  const std::size_t cb = bit_of(n, control);
  const std::size_t tb = bit_of(n, target);
  return permutation(n, [&](std::size_t i) {
    return ((i >> cb) & 1) ? (i ^ (std::size_t{1} << tb)) : i;
  });
}

DenseOperator swap_gate(std::size_t n, std::size_t a, std::size_t b) {
  check_qubit(n, a);
  check_qubit(n, b);
  if (a == b) throw StructuralError("swap: identical qubits");
  const std::size_t ab = bit_of(n, a);
  const std::size_t bb = bit_of(n, b);
  return permutation(n, [&](std::size_t i) {
    const std::size_t x = (i >> ab) & 1;
    const std::size_t y = (i >> bb) & 1;
    if (x == y) return i;
    return i ^ (std::size_t{1} << ab) ^ (std::size_t{1} << bb);
  });
}

}  // namespace gqpinn
