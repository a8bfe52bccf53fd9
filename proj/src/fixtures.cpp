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

#include "gqpinn/fixtures.hpp"

#include <cmath>
#include <cstdio>
#include <random>

#include "gqpinn/bessel.hpp"
#include "gqpinn/pde.hpp"
#include "gqpinn/symmetry.hpp"

namespace gqpinn::fixtures {

namespace {

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

Check compare(const std::string& name, const std::vector<PauliSum>& pool,
              const GroupRepresentation& rep, const std::vector<PauliSum>& reference,
              bool advisory = false) {
  const auto set = equivariant_generator_set(pool, rep);
  const double d = generator_sets::set_distance(set.generators, reference);
  Check c{name, d <= 1e-12, "", advisory};
  c.detail = std::to_string(set.size()) + " twirled vs " + std::to_string(reference.size()) +
             " reference, mismatch " + (std::isinf(d) ? std::string("unmatched") : sci(d));
  return c;
}

Check commuting(const std::string& name, const std::vector<PauliSum>& gens,
                const GroupRepresentation& rep) {
  GeneratorSet s;
  s.generators = gens;
  s.labels.assign(gens.size(), "");
  return {name, commutes_with(s, rep), std::to_string(gens.size()) + " generators", false};
}

}  // namespace

std::vector<Check> generator_sets() {
  using namespace generator_sets;
  std::vector<Check> out;
  const auto k2 = k4_rep(2).representation, k4 = k4_rep(4).representation;
  const auto s2 = so2_rep(2).representation, s4 = so2_rep(4).representation;
  const auto z2 = z2_rep().representation;
  out.push_back(compare("twirl k4 2q", two_qubit_pool(), k2, k4_two_qubit()));
  out.push_back(compare("twirl so2 2q", two_qubit_pool(), s2, so2_two_qubit()));
  out.push_back(compare("twirl z2 2q", two_qubit_pool(), z2, z2_two_qubit()));
  // The reference 4-qubit Klein set is not the twirl of this pool; see README.
  out.push_back(compare("twirl k4 4q", four_qubit_pool(), k4, k4_four_qubit(), true));
  out.push_back(compare("twirl so2 4q", four_qubit_pool(), s4, so2_four_qubit()));
  out.push_back(commuting("commute k4 4q reference", k4_four_qubit(), k4));
  out.push_back(commuting("commute so2 4q reference", so2_four_qubit(), s4));
  return out;
}

std::vector<Check> residuals(std::size_t points, std::uint64_t seed) {
  struct Case {
    const char* problem;
    double tol;
    StencilConfig cfg;
  };
  // Diffusion and Burgers need a finer step to resolve their steep terms.
  const Case cases[] = {{"poisson2d", 1e-6, {1e-3, 1e-4}},
                        {"diffusion2d", 1e-5, {1e-4, 1e-4}},
                        {"wave1d", 1e-4, {1e-3, 1e-4}},
                        {"burgers1d", 1e-3, {1e-4, 1e-4}}};
  std::vector<Check> out;
  for (const auto& c : cases) {
    const auto prob = make_problem(c.problem);
    std::mt19937_64 rng(seed);
    double worst = 0.0;
    for (std::size_t i = 0; i < points; ++i) {
      const auto z = prob.sample_domain(rng);
      const double r = std::abs(exact_residual(prob, z, c.cfg));
      worst = std::isnan(r) ? r : std::max(worst, r);
      if (std::isnan(worst)) break;
    }
    out.push_back({std::string("residual ") + c.problem, worst <= c.tol,
                   "worst " + sci(worst) + " <= " + sci(c.tol), false});
  }
  return out;
}

std::vector<Check> bessel() {
  std::vector<Check> out;
  const auto zeros = bessel_j0_zeros(50);
  double worst = 0.0;
  for (double a : zeros) worst = std::max(worst, std::abs(bessel_j0(a)));
  out.push_back({"bessel j0 zeros 1..50", worst < 1e-13, "max |J0| " + sci(worst), false});
  const double err = std::abs(zeros[0] - 2.404825557695773);
  out.push_back({"bessel first zero", err <= 1e-12, "error " + sci(err), false});
  return out;
}

}  // namespace gqpinn::fixtures
