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

#include "gqpinn/expressibility.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <thread>

#include "gqpinn/error.hpp"

namespace gqpinn {

namespace {

constexpr std::size_t kChunk = 250;

std::mt19937_64 chunk_stream(std::uint64_t seed, std::size_t chunk) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(chunk)};
  return std::mt19937_64(seq);
}

}  // namespace

FidelityHistogram::FidelityHistogram(std::size_t bin_count)
    : bins(bin_count), counts(bin_count, 0) {
  if (bin_count == 0) throw StructuralError("histogram needs at least one bin");
}

void FidelityHistogram::add(double f) {
  if (!(f >= -1e-12 && f <= 1.0 + 1e-12)) {
    throw NumericIntegrityError("fidelity outside [0, 1]: " + std::to_string(f));
  }
  f = std::clamp(f, 0.0, 1.0);
  const auto b = std::min(static_cast<std::size_t>(f * static_cast<double>(bins)), bins - 1);
  ++counts[b];
  ++total;
}

void FidelityHistogram::merge(const FidelityHistogram& other) {
  if (other.bins != bins) throw StructuralError("histogram bin mismatch");
  for (std::size_t b = 0; b < bins; ++b) counts[b] += other.counts[b];
  total += other.total;
}

std::vector<double> FidelityHistogram::frequencies() const {
  std::vector<double> p(bins, 0.0);
  if (total == 0) return p;
  for (std::size_t b = 0; b < bins; ++b) {
    p[b] = static_cast<double>(counts[b]) / static_cast<double>(total);
  }
  return p;
}

FidelityHistogram sample_fidelities(const Circuit& c, const DomainSampler& domain,
                                    std::size_t pairs, std::uint64_t seed, std::size_t bins,
                                    unsigned jobs) {
  if (pairs == 0) throw StructuralError("sample_fidelities: pairs must be positive");
  const CompiledCircuit cc(c);
  const std::size_t chunks = (pairs + kChunk - 1) / kChunk;
  std::vector<FidelityHistogram> partial(chunks, FidelityHistogram(bins));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < chunks; k = next++) {
      auto rng = chunk_stream(seed, k);
      std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
      std::vector<double> theta(c.parameter_count());
      auto draw = [&] {
        for (auto& v : theta) v = angle(rng);
        const auto z = domain(rng);
        return cc.state(theta, z);
      };
      const std::size_t count = std::min(kChunk, pairs - k * kChunk);
      for (std::size_t i = 0; i < count; ++i) {
        const StateVector a = draw();
        const StateVector b = draw();
        partial[k].add(std::norm(a.dot(b)));
      }
    }
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(chunks)));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  FidelityHistogram h(bins);
  for (const auto& p : partial) h.merge(p);
  return h;
}

std::vector<double> haar_bin_mass(std::size_t bins, std::size_t dimension) {
  if (dimension < 2) throw StructuralError("haar_bin_mass: dimension must be at least 2");
  const double e = static_cast<double>(dimension - 1);
  std::vector<double> q(bins);
  for (std::size_t b = 0; b < bins; ++b) {
    const double lo = static_cast<double>(b) / static_cast<double>(bins);
    const double hi = static_cast<double>(b + 1) / static_cast<double>(bins);
    q[b] = std::pow(1.0 - lo, e) - std::pow(1.0 - hi, e);
  }
  return q;
}

double kl_divergence(const FidelityHistogram& h, const std::vector<double>& q) {
  if (q.size() != h.bins) throw StructuralError("kl_divergence: bin mismatch");
  const auto p = h.frequencies();
  double kl = 0.0;
  for (std::size_t b = 0; b < p.size(); ++b) {
    if (p[b] == 0.0) continue;
    if (!(q[b] > 0.0)) {
      throw NumericIntegrityError("kl_divergence: empty reference bin " + std::to_string(b));
    }
    kl += p[b] * std::log(p[b] / q[b]);
  }
  return std::max(kl, 0.0);
}

KlReport kl_report(const std::string& ansatz, std::size_t layers, const Circuit& c,
                   const DomainSampler& domain, std::size_t pairs, std::uint64_t seed,
                   std::size_t bins, unsigned jobs) {
  const auto h = sample_fidelities(c, domain, pairs, seed, bins, jobs);
  KlReport r;
  r.ansatz = ansatz;
  r.layers = layers;
  r.parameters = c.parameter_count();
  r.dimension = std::size_t{1} << c.qubits();
  r.kl = kl_divergence(h, haar_bin_mass(bins, r.dimension));
  r.pairs = pairs;
  r.bins = bins;
  r.seed = seed;
  return r;
}

FidelityHistogram haar_samples(std::size_t dimension, std::size_t pairs, std::uint64_t seed,
                               std::size_t bins) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n(0.0, 1.0);
  auto draw = [&] {
    Eigen::VectorXcd v(static_cast<Eigen::Index>(dimension));
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = Complex(n(rng), n(rng));
    return Eigen::VectorXcd(v.normalized());
  };
  FidelityHistogram h(bins);
  for (std::size_t i = 0; i < pairs; ++i) {
    const auto a = draw();
    const auto b = draw();
    h.add(std::norm(a.dot(b)));
  }
  return h;
}

}  // namespace gqpinn
