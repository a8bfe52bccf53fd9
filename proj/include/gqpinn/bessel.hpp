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
#include <vector>

namespace gqpinn {

/// Bessel function of the first kind, order 0.
double bessel_j0(double x);
/// Bessel function of the first kind, order 1.
double bessel_j1(double x);

/// First m positive roots of J0 in increasing order. Throws
/// NumericIntegrityError if a root fails to converge.
std::vector<double> bessel_j0_zeros(std::size_t m);

}  // namespace gqpinn
