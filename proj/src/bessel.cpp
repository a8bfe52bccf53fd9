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

#include "gqpinn/bessel.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "gqpinn/error.hpp"

namespace gqpinn {

namespace {

// Below this the ascending series (in extended precision) is used.
constexpr double kSeriesLimit = 16.0;

double series(int order, double x) {
  const long double h = 0.5L * static_cast<long double>(x);
  const long double q = -h * h;
  long double term = order == 0 ? 1.0L : h;
  long double sum = term;
  for (int k = 1; k < 200; ++k) {
    term *= q / (static_cast<long double>(k) * static_cast<long double>(k + order));
    sum += term;
    if (std::fabs(term) < 1e-22L * std::fabs(sum) && std::fabs(term) < 1e-30L) break;
    if (term == 0.0L) break;
  }
  return static_cast<double>(sum);
}

// Hankel expansion, summed until the terms stop decreasing.
double asymptotic(int order, double x) {
  const double mu = 4.0 * order * order;
  double p = 0.0, q = 0.0;
  double a = 1.0;  // a_k(order) / x^k
  double last = INFINITY;
  for (int k = 0; k < 60; ++k) {
    if (k > 0) {
      const double odd = 2.0 * k - 1.0;
      a *= (mu - odd * odd) / (8.0 * k * x);
    }
    const double mag = std::fabs(a);
    if (mag > last) break;
    last = mag;
    const double sign = ((k / 2) % 2 == 0) ? 1.0 : -1.0;
    if (k % 2 == 0) {
      p += sign * a;
    } else {
      q += sign * a;
    }
    if (mag < 1e-17) break;
  }
  const double chi = x - (0.5 * order + 0.25) * std::numbers::pi;
  return std::sqrt(2.0 / (std::numbers::pi * x)) * (p * std::cos(chi) - q * std::sin(chi));
}

}  // namespace

double bessel_j0(double x) {
  x = std::fabs(x);
  return x <= kSeriesLimit ? series(0, x) : asymptotic(0, x);
}

double bessel_j1(double x) {
  const double s = x < 0 ? -1.0 : 1.0;
  x = std::fabs(x);
  return s * (x <= kSeriesLimit ? series(1, x) : asymptotic(1, x));
}

std::vector<double> bessel_j0_zeros(std::size_t m) {
  std::vector<double> roots;
  roots.reserve(m);
  for (std::size_t n = 1; n <= m; ++n) {
    const double beta = (static_cast<double>(n) - 0.25) * std::numbers::pi;
    double lo = beta - 0.5, hi = beta + 0.5;
    double x = beta + 1.0 / (8.0 * beta);
    // J0 changes sign on [lo, hi]; keep the bracket while taking Newton steps.
    const double flo = bessel_j0(lo);
    bool converged = false;
    for (int it = 0; it < 100; ++it) {
      const double f = bessel_j0(x);
      if (std::fabs(f) < 1e-13) {
        converged = true;
        break;
      }
      if ((f < 0) == (flo < 0)) {
        lo = x;
      } else {
        hi = x;
      }
      double next = x + f / bessel_j1(x);  // J0' = -J1
      if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
      if (next == x) {
        converged = std::fabs(f) < 1e-13;
        break;
      }
      x = next;
    }
    if (!converged) {
      throw NumericIntegrityError("bessel_j0_zeros: root " + std::to_string(n) +
                                  " did not converge");
    }
    roots.push_back(x);
  }
  return roots;
}

}  // namespace gqpinn
