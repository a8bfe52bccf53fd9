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

#include <cmath>
#include <numeric>

#include "doctest.h"
#include "gqpinn/ansatz.hpp"
#include "gqpinn/error.hpp"
#include "gqpinn/expressibility.hpp"
#include "gqpinn/pde.hpp"

using namespace gqpinn;

TEST_SUITE("expressibility") {

TEST_CASE("haar bin masses") {
  for (std::size_t n : {2u, 4u, 16u}) {
    const auto q = haar_bin_mass(75, n);
    CHECK(std::abs(std::accumulate(q.begin(), q.end(), 0.0) - 1.0) < 1e-14);
    for (double v : q) CHECK(v > 0.0);
  }
  for (double v : haar_bin_mass(75, 2)) CHECK(std::abs(v - 1.0 / 75) < 1e-15);
  CHECK_THROWS_AS(haar_bin_mass(75, 1), StructuralError);
}

TEST_CASE("mean fidelity of the haar density is 1/N") {
  // Midpoint rule on a fine grid of the exact bin masses.
  const std::size_t bins = 20000;
  const auto q = haar_bin_mass(bins, 4);
  double mean = 0.0;
  for (std::size_t b = 0; b < bins; ++b) mean += q[b] * (b + 0.5) / bins;
  CHECK(std::abs(mean - 0.25) < 1e-8);
}

TEST_CASE("kl divergence") {
  FidelityHistogram h(75);
  const auto q = haar_bin_mass(75, 4);
  // A histogram proportional to q has zero divergence up to count rounding.
  for (std::size_t b = 0; b < 75; ++b) {
    const auto n = static_cast<std::uint64_t>(std::llround(q[b] * 1e7));
    for (std::uint64_t k = 0; k < n; ++k) h.add((b + 0.5) / 75);
  }
  CHECK(kl_divergence(h, q) < 1e-6);

  FidelityHistogram point(75);
  for (int i = 0; i < 100; ++i) point.add(1.0);
  const double kl = kl_divergence(point, q);
  CHECK(kl == doctest::Approx(std::log(1.0 / q.back())).epsilon(1e-12));
  CHECK(kl > 5.0);

  std::vector<double> holes(q);
  holes.back() = 0.0;
  CHECK_THROWS_AS(kl_divergence(point, holes), NumericIntegrityError);
  CHECK_THROWS_AS(kl_divergence(point, haar_bin_mass(10, 4)), StructuralError);
}

TEST_CASE("histogram bookkeeping") {
  FidelityHistogram h(4);
  h.add(0.0);
  h.add(0.25);
  h.add(0.999);
  h.add(1.0);
  CHECK(h.total == 4);
  CHECK(h.counts == std::vector<std::uint64_t>{1, 1, 0, 2});
  CHECK_THROWS_AS(h.add(1.5), NumericIntegrityError);
  CHECK_THROWS_AS(h.add(NAN), NumericIntegrityError);
}

TEST_CASE("haar self-test") {
  const auto h = haar_samples(4, 5000, 1);
  CHECK(h.total == 5000);
  CHECK(kl_divergence(h, haar_bin_mass(75, 4)) < 0.02);
}

TEST_CASE("circuit fidelities: identical and orthogonal states") {
  const auto a = make_ansatz("so2", 2);
  const CompiledCircuit cc(a.circuit);
  const std::vector<double> theta(a.circuit.parameter_count(), 0.4), z{0.3, -0.2};
  const auto s = cc.state(theta, z);
  CHECK(std::abs(std::norm(s.dot(s)) - 1.0) < 1e-14);
  StateVector e0 = StateVector::Zero(4), e1 = StateVector::Zero(4);
  e0(0) = 1;
  e1(1) = 1;
  CHECK(std::norm(e0.dot(e1)) == 0.0);
}

TEST_CASE("sampled histograms are deterministic and independent of workers") {
  const auto prob = poisson2d();
  const auto a = make_ansatz("k4", 2);
  const auto h1 = sample_fidelities(a.circuit, prob.sample_domain, 5000, 9, 75, 1);
  const auto h2 = sample_fidelities(a.circuit, prob.sample_domain, 5000, 9, 75, 3);
  CHECK(h1.total == 5000);
  CHECK(h1.counts == h2.counts);
  const auto h3 = sample_fidelities(a.circuit, prob.sample_domain, 5000, 10, 75, 1);
  CHECK(h1.counts != h3.counts);
  const double kl = kl_divergence(h1, haar_bin_mass(75, 4));
  CHECK(kl >= 0.0);
}

TEST_CASE("report metadata") {
  const auto prob = poisson2d();
  const auto a = make_ansatz("qpinn", 1);
  const auto r = kl_report("qpinn", 1, a.circuit, prob.sample_domain, 500, 3);
  CHECK(r.dimension == 4);
  CHECK(r.parameters == 12);
  CHECK(r.pairs == 500);
  CHECK(r.bins == 75);
  CHECK(r.kl >= 0.0);
  CHECK_THROWS_AS(sample_fidelities(a.circuit, prob.sample_domain, 0, 1), StructuralError);
}

}  // TEST_SUITE
