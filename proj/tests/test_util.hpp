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

#include <cmath>
#include <random>
#include <vector>

#include "gqpinn/pauli.hpp"

namespace gqpinn::testing {

inline std::vector<double> uniform_vector(std::mt19937_64& rng, std::size_t n,
                                          double lo, double hi) {
  std::uniform_real_distribution<double> dist(lo, hi);
  std::vector<double> v(n);
  for (auto& x : v) x = dist(rng);
  return v;
}

inline PauliSum random_pauli_sum(std::mt19937_64& rng, std::size_t n,
                                 std::size_t terms) {
  std::uniform_int_distribution<int> letter(0, 3);
  std::normal_distribution<double> coeff(0.0, 1.0);
  PauliSum h(n);
  for (std::size_t k = 0; k < terms; ++k) {
    std::vector<Pauli> letters(n);
    for (auto& l : letters) l = static_cast<Pauli>(letter(rng));
    h.add(PauliString(letters), coeff(rng));
  }
  return h;
}

}  // namespace gqpinn::testing
