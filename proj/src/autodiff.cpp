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

#include "gqpinn/autodiff.hpp"

#include <cmath>
#include <string>

#include "gqpinn/error.hpp"

namespace gqpinn {

namespace {

std::vector<std::size_t> active_axes(const JetRequest& request, std::size_t dim) {
  std::vector<std::size_t> axes;
  for (std::size_t a = 0; a < 3; ++a) {
    if (request.order[a] < 0 || request.order[a] > 2) {
      throw StructuralError("jet request: derivative order must be 0, 1 or 2");
    }
    if (request.order[a] > 0) {
      if (a >= dim) throw StructuralError("jet request: axis beyond input dimension");
      axes.push_back(a);
    }
  }
  return axes;
}

// centre, then (+h, -h) per active axis
PointSet stencil_points(const PointSet& points, const std::vector<std::size_t>& axes,
                        double h) {
  PointSet batch(points.dim());
  batch.reserve(points.size() * (1 + 2 * axes.size()));
  std::vector<double> z(points.dim());
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto p = points[i];
    batch.push_back(p);
    for (auto a : axes) {
      z.assign(p.begin(), p.end());
      z[a] = p[a] + h;
      batch.push_back(z);
      z[a] = p[a] - h;
      batch.push_back(z);
    }
  }
  return batch;
}

}  // namespace

void StencilConfig::validate() const {
  if (!(h_input > 1e-12) || !(h_param > 1e-12)) {
    throw StructuralError("stencil steps must exceed 1e-12");
  }
}

double input_partial(const Model& f, std::span<const double> theta,
                     std::span<const double> z, std::size_t axis, int order,
                     const StencilConfig& cfg) {
  cfg.validate();
  if (axis >= z.size()) throw StructuralError("input_partial: axis out of range");
  if (order != 1 && order != 2) throw StructuralError("input_partial: order must be 1 or 2");
  const double h = cfg.h_input;
  std::vector<double> zp(z.begin(), z.end()), zm(z.begin(), z.end());
  zp[axis] += h;
  zm[axis] -= h;
  const double fp = f(theta, zp), fm = f(theta, zm);
  if (order == 1) return (fp - fm) / (2 * h);
  return (fp - 2 * f(theta, z) + fm) / (h * h);
}

void compute_jets(const Model& f, std::span<const double> theta, const PointSet& points,
                  const JetRequest& request, const StencilConfig& cfg,
                  std::span<Jet> out) {
  if (out.size() != points.size()) throw StructuralError("compute_jets: size mismatch");
  const auto axes = active_axes(request, points.dim());
  if (f.has_analytic_jets()) {
    f.jets(theta, points, request, out);
    return;
  }
  cfg.validate();
  const double h = cfg.h_input;
  const PointSet batch = stencil_points(points, axes, h);
  std::vector<double> v(batch.size());
  f.evaluate(theta, batch, v);
  const std::size_t stride = 1 + 2 * axes.size();
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double* s = v.data() + i * stride;
    Jet j;
    j.u = s[0];
    for (std::size_t k = 0; k < axes.size(); ++k) {
      const double fp = s[1 + 2 * k], fm = s[2 + 2 * k];
      j.d1[axes[k]] = (fp - fm) / (2 * h);
      j.d2[axes[k]] = (fp - 2 * s[0] + fm) / (h * h);
    }
    out[i] = j;
  }
}

void jets_vjp(const Model& f, std::span<const double> theta, const PointSet& points,
              const JetRequest& request, const StencilConfig& cfg,
              std::span<const Jet> cotangent, std::span<double> grad) {
  if (cotangent.size() != points.size()) throw StructuralError("jets_vjp: size mismatch");
  if (!f.has_vjp()) throw ContractViolation(f.name() + ": no vector-Jacobian product");
  cfg.validate();
  const auto axes = active_axes(request, points.dim());
  const double h = cfg.h_input;
  const PointSet batch = stencil_points(points, axes, h);
  const std::size_t stride = 1 + 2 * axes.size();
  std::vector<double> w(batch.size(), 0.0);
  for (std::size_t i = 0; i < points.size(); ++i) {
    double* s = w.data() + i * stride;
    const Jet& c = cotangent[i];
    s[0] = c.u;
    for (std::size_t k = 0; k < axes.size(); ++k) {
      const double g1 = c.d1[axes[k]] / (2 * h);
      const double g2 = c.d2[axes[k]] / (h * h);
      s[0] -= 2 * g2;
      s[1 + 2 * k] = g1 + g2;
      s[2 + 2 * k] = -g1 + g2;
    }
  }
  f.accumulate_vjp(theta, batch, w, grad);
}

std::vector<double> param_gradient(
    const std::function<double(std::span<const double>)>& loss,
    std::span<const double> theta, const StencilConfig& cfg) {
  cfg.validate();
  const double h = cfg.h_param;
  std::vector<double> t(theta.begin(), theta.end());
  std::vector<double> grad(theta.size());
  for (std::size_t k = 0; k < t.size(); ++k) {
    const double keep = t[k];
    t[k] = keep + h;
    const double lp = loss(t);
    t[k] = keep - h;
    const double lm = loss(t);
    t[k] = keep;
    if (!std::isfinite(lp) || !std::isfinite(lm)) {
      throw NumericIntegrityError("param_gradient: non-finite loss at parameter " +
                                  std::to_string(k));
    }
    grad[k] = (lp - lm) / (2 * h);
  }
  return grad;
}

}  // namespace gqpinn
