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

#include "gqpinn/pde.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "gqpinn/bessel.hpp"
#include "gqpinn/error.hpp"

namespace gqpinn {

namespace {

using Kind = PdeTerm::Kind;

PdeTerm::Operator value_minus_target() {
  return [](const Jet& j, double target, Jet* g) {
    if (g) g->u = 1.0;
    return j.u - target;
  };
}

std::vector<double> targets(const PointSet& pts,
                            const std::function<double(std::span<const double>)>& f) {
  std::vector<double> out(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) out[i] = f(pts[i]);
  return out;
}

PdeTerm make_term(std::string name, Kind kind, PointSet pts, JetRequest request,
                  PdeTerm::Operator op,
                  const std::function<double(std::span<const double>)>& target_fn = {}) {
  PdeTerm t;
  t.name = std::move(name);
  t.kind = kind;
  t.target = target_fn ? targets(pts, target_fn) : std::vector<double>(pts.size(), 0.0);
  t.points = std::move(pts);
  t.request = request;
  t.op = std::move(op);
  return t;
}

// 16 x 16 grid on [-1, 1]^2 kept where x^2 + y^2 <= 1.
std::vector<std::array<double, 2>> disk_grid(std::size_t per_axis) {
  std::vector<std::array<double, 2>> out;
  const auto xs = linspace(-1.0, 1.0, per_axis);
  for (double x : xs) {
    for (double y : xs) {
      if (x * x + y * y <= 1.0) out.push_back({x, y});
    }
  }
  return out;
}

std::array<double, 2> random_in_disk(std::mt19937_64& rng, bool open = true) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (;;) {
    const double x = u(rng), y = u(rng);
    const double r2 = x * x + y * y;
    if (open ? r2 < 1.0 : r2 <= 1.0) return {x, y};
  }
}

PointSet grid_1d(std::size_t nx, std::size_t nt, double t_hi) {
  PointSet pts(2);
  for (double x : linspace(-1.0, 1.0, nx)) {
    for (double t : linspace(0.0, t_hi, nt)) pts.push_back({x, t});
  }
  return pts;
}

PointSet initial_line(std::size_t nx) {
  PointSet pts(2);
  for (double x : linspace(-1.0, 1.0, nx)) pts.push_back({x, 0.0});
  return pts;
}

}  // namespace

std::vector<double> linspace(double lo, double hi, std::size_t count) {
  std::vector<double> v(count);
  if (count == 1) {
    v[0] = lo;
    return v;
  }
  for (std::size_t i = 0; i < count; ++i) {
    v[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
  }
  v[count - 1] = hi;
  return v;
}

const PdeTerm& PdeProblem::residual() const {
  for (const auto& t : terms) {
    if (t.kind == Kind::Residual) return t;
  }
  throw StructuralError(name + ": no residual term");
}

std::size_t PdeProblem::count(PdeTerm::Kind kind) const {
  std::size_t n = 0;
  for (const auto& t : terms) {
    if (t.kind == kind) n += t.points.size();
  }
  return n;
}

PdeProblem poisson2d(double diffusivity, std::uint64_t seed) {
  if (!(diffusivity > 0)) throw StructuralError("poisson2d: diffusivity must be positive");
  PdeProblem p;
  p.name = "poisson2d";
  p.input_dim = 2;
  p.spatial_dim = 2;
  p.sampling_seed = seed;
  p.exact = [](std::span<const double> z) { return 0.25 * (z[0] * z[0] + z[1] * z[1] - 1.0); };

  std::mt19937_64 rng(seed);
  PointSet interior(2);
  for (int i = 0; i < 276; ++i) {
    const auto q = random_in_disk(rng);
    interior.push_back({q[0], q[1]});
  }
  const double source = 1.0 / diffusivity;
  p.terms.push_back(make_term("residual", Kind::Residual, std::move(interior), {{2, 2, 0}},
                              [source](const Jet& j, double, Jet* g) {
                                if (g) g->d2 = {1.0, 1.0, 0.0};
                                return j.d2[0] + j.d2[1] - source;
                              }));
  PointSet circle(2);
  for (int k = 0; k < 100; ++k) {
    const double a = 2.0 * std::numbers::pi * k / 100.0;
    circle.push_back({std::cos(a), std::sin(a)});
  }
  p.terms.push_back(make_term("boundary", Kind::Boundary, std::move(circle), {},
                              value_minus_target(), p.exact));

  p.validation = PointSet(2);
  for (double x : linspace(-1.0, 1.0, 41)) {
    for (double y : linspace(-1.0, 1.0, 41)) {
      if (x * x + y * y <= 1.0) p.validation.push_back({x, y});
    }
  }
  p.sample_domain = [](std::mt19937_64& r) {
    const auto q = random_in_disk(r);
    return std::vector<double>{q[0], q[1]};
  };
  return p;
}

PdeProblem diffusion2d(double diffusivity, double radius, std::size_t n_terms) {
  if (!(diffusivity > 0) || !(radius > 0)) {
    throw StructuralError("diffusion2d: diffusivity and radius must be positive");
  }
  PdeProblem p;
  p.name = "diffusion2d";
  p.input_dim = 3;
  p.spatial_dim = 2;

  const auto alpha = bessel_j0_zeros(n_terms);
  std::vector<double> coeff(n_terms), decay(n_terms), wave(n_terms);
  for (std::size_t n = 0; n < n_terms; ++n) {
    const double a = alpha[n];
    coeff[n] = -radius * radius / (2.0 * a * a * a * bessel_j1(a));
    decay[n] = diffusivity * a * a / (radius * radius);
    wave[n] = a / radius;
  }
  p.exact = [coeff, decay, wave](std::span<const double> z) {
    const double r = std::sqrt(z[0] * z[0] + z[1] * z[1]);
    double u = 0.0;
    for (std::size_t n = 0; n < coeff.size(); ++n) {
      u += coeff[n] * bessel_j0(wave[n] * r) * std::exp(-decay[n] * z[2]);
    }
    return u;
  };

  const auto spatial = disk_grid(16);
  const auto times = linspace(0.0, 0.5, 10);
  PointSet interior(3);
  for (const auto& q : spatial) {
    for (double t : times) interior.push_back({q[0], q[1], t});
  }
  const double inv_d = 1.0 / diffusivity;
  p.terms.push_back(make_term("residual", Kind::Residual, std::move(interior), {{2, 2, 1}},
                              [inv_d](const Jet& j, double, Jet* g) {
                                if (g) {
                                  g->d2 = {1.0, 1.0, 0.0};
                                  g->d1 = {0.0, 0.0, -inv_d};
                                }
                                return j.d2[0] + j.d2[1] - inv_d * j.d1[2];
                              }));
  PointSet initial(3);
  for (const auto& q : spatial) initial.push_back({q[0], q[1], 0.0});
  p.terms.push_back(make_term("initial", Kind::Initial, std::move(initial), {},
                              value_minus_target(), p.exact));
  PointSet boundary(3);
  const auto bt = linspace(0.0, 0.5, 20);
  for (int k = 0; k < 200; ++k) {
    const double a = 2.0 * std::numbers::pi * k / 200.0;
    for (std::size_t i = 1; i < bt.size(); ++i) {
      boundary.push_back({radius * std::cos(a), radius * std::sin(a), bt[i]});
    }
  }
  p.terms.push_back(make_term("boundary", Kind::Boundary, std::move(boundary), {},
                              value_minus_target(), p.exact));

  p.validation = PointSet(3);
  for (double t : linspace(0.0, 0.5, 6)) {
    for (const auto& q : spatial) p.validation.push_back({q[0], q[1], t});
  }
  PointSet extra(3);
  for (const auto& q : spatial) extra.push_back({q[0], q[1], 0.6});
  p.extrapolation = std::move(extra);
  p.sample_domain = [radius](std::mt19937_64& r) {
    const auto q = random_in_disk(r);
    // The truncated series is not resolved by stencils as t -> 0.
    std::uniform_real_distribution<double> t(0.01, 0.5);
    return std::vector<double>{radius * q[0], radius * q[1], t(r)};
  };
  return p;
}

PdeProblem wave1d(double speed, double amplitude, double wavenumber) {
  if (!(speed > 0)) throw StructuralError("wave1d: speed must be positive");
  PdeProblem p;
  p.name = "wave1d";
  p.input_dim = 2;
  p.spatial_dim = 1;
  const double omega = speed * wavenumber;
  p.exact = [=](std::span<const double> z) {
    return amplitude * std::cos(wavenumber * z[0]) * std::cos(omega * z[1]);
  };
  auto velocity = [=](std::span<const double> z) {
    return -amplitude * omega * std::cos(wavenumber * z[0]) * std::sin(omega * z[1]);
  };
  const double c2 = speed * speed;
  p.terms.push_back(make_term("residual", Kind::Residual, grid_1d(20, 10, 1.0), {{2, 2, 0}},
                              [c2](const Jet& j, double, Jet* g) {
                                if (g) g->d2 = {-c2, 1.0, 0.0};
                                return j.d2[1] - c2 * j.d2[0];
                              }));
  p.terms.push_back(make_term("initial", Kind::Initial, initial_line(20), {},
                              value_minus_target(), p.exact));
  p.terms.push_back(make_term("velocity", Kind::Initial, initial_line(20), {{0, 1, 0}},
                              [](const Jet& j, double target, Jet* g) {
                                if (g) g->d1 = {0.0, 1.0, 0.0};
                                return j.d1[1] - target;
                              },
                              velocity));
  p.validation = grid_1d(50, 20, 1.0);
  p.sample_domain = [](std::mt19937_64& r) {
    std::uniform_real_distribution<double> x(-1.0, 1.0), t(0.0, 1.0);
    return std::vector<double>{x(r), t(r)};
  };
  return p;
}

PdeProblem burgers1d(double viscosity) {
  if (!(viscosity > 0)) throw StructuralError("burgers1d: viscosity must be positive");
  PdeProblem p;
  p.name = "burgers1d";
  p.input_dim = 2;
  p.spatial_dim = 1;
  const double t0 = std::exp(1.0 / (8.0 * viscosity));
  p.exact = [=](std::span<const double> z) {
    const double x = z[0], s = z[1] + 1.0;
    const double expo = std::min(x * x / (4.0 * viscosity * s), 700.0);
    return (x / s) / (1.0 + std::sqrt(s / t0) * std::exp(expo));
  };
  const double nu = viscosity;
  p.terms.push_back(make_term("residual", Kind::Residual, grid_1d(20, 10, 1.0), {{2, 1, 0}},
                              [nu](const Jet& j, double, Jet* g) {
                                if (g) {
                                  g->u = j.d1[0];
                                  g->d1 = {j.u, 1.0, 0.0};
                                  g->d2 = {-nu, 0.0, 0.0};
                                }
                                return j.d1[1] + j.u * j.d1[0] - nu * j.d2[0];
                              }));
  p.terms.push_back(make_term("initial", Kind::Initial, initial_line(20), {},
                              value_minus_target(), p.exact));
  p.validation = grid_1d(50, 20, 1.0);
  p.sample_domain = [](std::mt19937_64& r) {
    std::uniform_real_distribution<double> x(-1.0, 1.0), t(0.0, 1.0);
    return std::vector<double>{x(r), t(r)};
  };
  return p;
}

const std::vector<std::string>& problem_names() {
  static const std::vector<std::string> names{"poisson2d", "diffusion2d", "wave1d",
                                              "burgers1d"};
  return names;
}

PdeProblem make_problem(const std::string& name) {
  if (name == "poisson2d") return poisson2d();
  if (name == "diffusion2d") return diffusion2d();
  if (name == "wave1d") return wave1d();
  if (name == "burgers1d") return burgers1d();
  throw StructuralError("unknown problem '" + name + "'");
}

namespace {

double term_weight(const PdeProblem& prob, Kind kind) {
  switch (kind) {
    case Kind::Residual:
      return 1.0;
    case Kind::Initial:
      return prob.lambda_initial;
    case Kind::Boundary:
      return prob.lambda_boundary;
  }
  return 0.0;
}

[[noreturn]] void non_finite(const PdeTerm& term, std::size_t i) {
  std::ostringstream msg;
  msg << "non-finite " << term.name << " value at point " << i << " (";
  const auto z = term.points[i];
  for (std::size_t k = 0; k < z.size(); ++k) msg << (k ? ", " : "") << z[k];
  msg << ")";
  throw NumericIntegrityError(msg.str());
}

void add_part(LossParts& parts, Kind kind, double w, double mean) {
  switch (kind) {
    case Kind::Residual:
      parts.residual += mean;
      break;
    case Kind::Initial:
      parts.initial += mean;
      break;
    case Kind::Boundary:
      parts.boundary += mean;
      break;
  }
  parts.total += w * mean;
}

LossParts evaluate_loss(const Model& f, std::span<const double> theta,
                        const PdeProblem& prob, const StencilConfig& cfg,
                        std::span<double> grad) {
  if (f.input_dim() != prob.input_dim) {
    throw StructuralError(f.name() + ": input dimension does not match " + prob.name);
  }
  LossParts parts;
  std::vector<Jet> jets, cot;
  for (const auto& term : prob.terms) {
    const double w = term_weight(prob, term.kind);
    if (w == 0.0 || term.points.empty()) continue;
    const std::size_t n = term.points.size();
    jets.assign(n, Jet{});
    compute_jets(f, theta, term.points, term.request, cfg, jets);
    double sum = 0.0;
    if (!grad.empty()) cot.assign(n, Jet{});
    const double scale = 2.0 * w / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
      Jet d;
      const double v = term.op(jets[i], term.target[i], grad.empty() ? nullptr : &d);
      if (!std::isfinite(v)) non_finite(term, i);
      sum += v * v;
      if (!grad.empty()) {
        const double s = scale * v;
        cot[i].u = s * d.u;
        for (int a = 0; a < 3; ++a) {
          cot[i].d1[a] = s * d.d1[a];
          cot[i].d2[a] = s * d.d2[a];
        }
      }
    }
    add_part(parts, term.kind, w, sum / static_cast<double>(n));
    if (!grad.empty()) jets_vjp(f, theta, term.points, term.request, cfg, cot, grad);
  }
  if (!std::isfinite(parts.total)) throw NumericIntegrityError("non-finite loss");
  return parts;
}

}  // namespace

LossParts loss(const Model& f, std::span<const double> theta, const PdeProblem& prob,
               const StencilConfig& cfg) {
  return evaluate_loss(f, theta, prob, cfg, {});
}

LossParts loss_and_gradient(const Model& f, std::span<const double> theta,
                            const PdeProblem& prob, const StencilConfig& cfg,
                            std::span<double> grad, GradientMode mode) {
  if (grad.size() != theta.size()) throw StructuralError("gradient size mismatch");
  if (mode == GradientMode::Auto) {
    mode = f.has_vjp() && !f.has_analytic_jets() ? GradientMode::Adjoint
                                                  : GradientMode::FiniteDifference;
  }
  std::fill(grad.begin(), grad.end(), 0.0);
  if (mode == GradientMode::Adjoint) return evaluate_loss(f, theta, prob, cfg, grad);
  const LossParts parts = evaluate_loss(f, theta, prob, cfg, {});
  const auto g = param_gradient(
      [&](std::span<const double> t) { return evaluate_loss(f, t, prob, cfg, {}).total; },
      theta, cfg);
  std::copy(g.begin(), g.end(), grad.begin());
  return parts;
}

double mae(const Model& f, std::span<const double> theta, const PointSet& points,
           const std::function<double(std::span<const double>)>& exact) {
  if (points.empty()) throw StructuralError("mae: empty point set");
  std::vector<double> v(points.size());
  f.evaluate(theta, points, v);
  double s = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) s += std::abs(v[i] - exact(points[i]));
  return s / static_cast<double>(points.size());
}

double mae(const Model& f, std::span<const double> theta, const PdeProblem& prob) {
  return mae(f, theta, prob.validation, prob.exact);
}

double exact_residual(const PdeProblem& prob, std::span<const double> z,
                      const StencilConfig& cfg) {
  const FunctionModel oracle("exact", prob.input_dim, prob.exact, false);
  const PdeTerm& r = prob.residual();
  PointSet pts(prob.input_dim);
  pts.push_back(z);
  Jet j;
  const double zero = 0.0;
  compute_jets(oracle, std::span<const double>(&zero, 1), pts, r.request, cfg,
               std::span<Jet>(&j, 1));
  return r.op(j, 0.0, nullptr);
}

}  // namespace gqpinn
