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

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "gqpinn/simulator.hpp"

namespace gqpinn {

struct FidelityHistogram {
  std::size_t bins = 75;
  std::vector<std::uint64_t> counts;
  std::uint64_t total = 0;

  explicit FidelityHistogram(std::size_t bin_count = 75);
  void add(double fidelity);
  void merge(const FidelityHistogram& other);
  std::vector<double> frequencies() const;
};

/// Draws one input point from a problem domain.
using DomainSampler = std::function<std::vector<double>(std::mt19937_64&)>;

/**
 * Histogram of |<psi1|psi2>|^2 over `pairs` independent pairs, each state
 * built from its own theta ~ U[0, 2pi)^P and z from `domain`. Pairs are split
 * into fixed chunks with their own seeded streams, so the result depends only
 * on (seed, pairs, bins) and not on `jobs`.
 */
FidelityHistogram sample_fidelities(const Circuit& c, const DomainSampler& domain,
                                    std::size_t pairs, std::uint64_t seed,
                                    std::size_t bins = 75, unsigned jobs = 1);

/// Haar fidelity probability mass per uniform bin for Hilbert dimension N.
std::vector<double> haar_bin_mass(std::size_t bins, std::size_t dimension);

/// sum p ln(p / q) over bins with p > 0.
double kl_divergence(const FidelityHistogram& h, const std::vector<double>& q);

struct KlReport {
  std::string ansatz;
  std::size_t layers = 0;
  std::size_t parameters = 0;
  std::size_t dimension = 0;
  double kl = 0.0;
  std::size_t pairs = 0;
  std::size_t bins = 0;
  std::uint64_t seed = 0;
};

/// Samples `c` and scores it against the Haar reference of its register.
KlReport kl_report(const std::string& ansatz, std::size_t layers, const Circuit& c,
                   const DomainSampler& domain, std::size_t pairs, std::uint64_t seed,
                   std::size_t bins = 75, unsigned jobs = 1);

/// Fidelities of pairs of normalized complex Gaussian vectors.
FidelityHistogram haar_samples(std::size_t dimension, std::size_t pairs, std::uint64_t seed,
                               std::size_t bins = 75);

}  // namespace gqpinn
