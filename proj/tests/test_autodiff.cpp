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
#include <random>

#include "doctest.h"
#include "gqpinn/ansatz.hpp"
#include "gqpinn/autodiff.hpp"
#include "gqpinn/error.hpp"
#include "gqpinn/pde.hpp"
#include "test_util.hpp"

using namespace gqpinn;

namespace {

// <0| R_Y(x)^dagger Z R_Y(x) |0> = cos(x + theta)
QuantumModel cosine_model() {
  Circuit c(1, 1, {},
            {CircuitOp::rotation(parse_pauli_sum("Y1", 1), AngleBinding::input(0)),
             CircuitOp::rotation(parse_pauli_sum("Y1", 1), AngleBinding::parameter(0))},
            parse_pauli_sum("Z1", 1));
  return QuantumModel("cos", std::move(c));
}

}  // namespace

TEST_SUITE("autodiff") {

TEST_CASE("cosine circuit derivatives at the origin") {
  const auto f = cosine_model();
  const std::vector<double> theta{0.0}, z{0.0};
  const StencilConfig cfg;
  CHECK(std::abs(input_partial(f, theta, z, 0, 1, cfg)) < 1e-8);
  CHECK(std::abs(input_partial(f, theta, z, 0, 2, cfg) + 1.0) < 1e-5);
  CHECK(std::abs(f(theta, z) - 1.0) < 1e-15);
  CHECK_THROWS_AS(input_partial(f, theta, z, 0, 3, cfg), StructuralError);
}

TEST_CASE("second-order stencil is exact on quadratics") {
  FunctionModel f("quad", 2, [](std::span<const double> z) {
    return 3.0 * z[0] * z[0] - 2.0 * z[0] + 0.5 * z[1] * z[1] + 7.0;
  });
  const std::vector<double> theta{0.0};
  const StencilConfig cfg;
  for (double x : {-0.7, 0.0, 0.4}) {
    const std::vector<double> z{x, 0.3};
    CHECK(std::abs(input_partial(f, theta, z, 0, 2, cfg) - 6.0) < 1e-6);
    CHECK(std::abs(input_partial(f, theta, z, 1, 2, cfg) - 1.0) < 1e-6);
    CHECK(std::abs(input_partial(f, theta, z, 0, 1, cfg) - (6.0 * x - 2.0)) < 1e-9);
  }
}

TEST_CASE("batched jets agree with single partials") {
  const auto a = make_ansatz("so2_time", 2, 3);
  QuantumModel f("so2_time", a.circuit);
  std::mt19937_64 rng(5);
  const auto theta = testing::uniform_vector(rng, f.parameter_count(), 0, 2 * M_PI);
  PointSet pts(3);
  for (int i = 0; i < 6; ++i) pts.push_back(testing::uniform_vector(rng, 3, -0.6, 0.6));
  const JetRequest req{{2, 2, 1}};
  const StencilConfig cfg;
  std::vector<Jet> jets(pts.size());
  compute_jets(f, theta, pts, req, cfg, jets);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    CHECK(std::abs(jets[i].u - f(theta, pts[i])) < 1e-14);
    for (std::size_t ax = 0; ax < 3; ++ax) {
      CHECK(std::abs(jets[i].d1[ax] - input_partial(f, theta, pts[i], ax, 1, cfg)) < 1e-12);
      if (ax < 2) {
        CHECK(std::abs(jets[i].d2[ax] - input_partial(f, theta, pts[i], ax, 2, cfg)) < 1e-9);
      }
    }
  }
}

TEST_CASE("parameter gradient of a quadratic") {
  const auto g = param_gradient(
      [](std::span<const double> t) { return t[0] * t[0] + t[1] * t[1]; },
      std::vector<double>{1.0, 2.0}, StencilConfig{});
  CHECK(std::abs(g[0] - 2.0) < 1e-8);
  CHECK(std::abs(g[1] - 4.0) < 1e-8);
}

TEST_CASE("gradient vanishes at a circuit stationary point") {
  const auto f = cosine_model();
  // <Z> = cos(theta) at z = 0 is maximal at theta = 0.
  const auto g = param_gradient(
      [&](std::span<const double> t) { return -f(t, std::vector<double>{0.0}); },
      std::vector<double>{0.0}, StencilConfig{});
  CHECK(std::abs(g[0]) < 1e-6);
}

TEST_CASE("non-finite loss names the parameter") {
  try {
    param_gradient([](std::span<const double> t) { return t[1] > 1.0 ? NAN : 0.0; },
                   std::vector<double>{0.0, 1.0}, StencilConfig{});
    FAIL("expected an integrity error");
  } catch (const NumericIntegrityError& e) {
    CHECK(std::string(e.what()).find("1") != std::string::npos);
  }
}

TEST_CASE("stencil steps must be positive") {
  CHECK_THROWS_AS(StencilConfig({0.0, 1e-4}).validate(), StructuralError);
  CHECK_THROWS_AS(StencilConfig({1e-3, -1.0}).validate(), StructuralError);
  CHECK_NOTHROW(StencilConfig{}.validate());
}

TEST_CASE("stencil adjoint matches central differences of the loss") {
  struct Case {
    const char* problem;
    const char* ansatz;
  };
  const Case cases[] = {{"poisson2d", "so2"}, {"wave1d", "z2"}, {"burgers1d", "qpinn"}};
  std::mt19937_64 rng(11);
  const StencilConfig cfg;
  for (const auto& c : cases) {
    CAPTURE(c.problem);
    const auto prob = make_problem(c.problem);
    const auto a = make_ansatz(c.ansatz, 2, prob.input_dim);
    QuantumModel f(c.ansatz, a.circuit);
    for (int draw = 0; draw < 7; ++draw) {
      const auto theta = testing::uniform_vector(rng, f.parameter_count(), 0, 2 * M_PI);
      std::vector<double> ga(theta.size()), gf(theta.size());
      const auto la = loss_and_gradient(f, theta, prob, cfg, ga, GradientMode::Adjoint);
      const auto lf = loss_and_gradient(f, theta, prob, cfg, gf, GradientMode::FiniteDifference);
      CHECK(la.total == lf.total);
      double scale = 0.0;
      for (double v : gf) scale = std::max(scale, std::abs(v));
      for (std::size_t k = 0; k < theta.size(); ++k) {
        CHECK(std::abs(ga[k] - gf[k]) <= 1e-6 * std::max(scale, 1.0));
      }
    }
  }
}

}  // TEST_SUITE
