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

#include "gqpinn/classical.hpp"

#include <cmath>

#include "gqpinn/error.hpp"

namespace gqpinn {

namespace {

const std::vector<Eigen::MatrixXd>& effective_maps(const SiPinnSpec& s,
                                                    std::vector<Eigen::MatrixXd>& scratch) {
  if (!s.maps.empty()) return s.maps;
  scratch = {Eigen::MatrixXd::Identity(s.base.w1.cols(), s.base.w1.cols())};
  return scratch;
}

Eigen::Map<const Eigen::VectorXd> as_vector(std::span<const double> x) {
  return {x.data(), static_cast<Eigen::Index>(x.size())};
}

}  // namespace

MlpParams MlpParams::unpack(std::span<const double> theta, std::size_t inputs,
                            std::size_t hidden) {
  if (theta.size() != count(inputs, hidden)) {
    throw StructuralError("MLP: expected " + std::to_string(count(inputs, hidden)) +
                          " parameters, got " + std::to_string(theta.size()));
  }
  const auto m = static_cast<Eigen::Index>(hidden);
  const auto n = static_cast<Eigen::Index>(inputs);
  MlpParams p;
  p.w1.resize(m, n);
  p.b1.resize(m);
  p.w2.resize(m);
  std::size_t k = 0;
  for (Eigen::Index j = 0; j < m; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) p.w1(j, i) = theta[k++];
  }
  for (Eigen::Index j = 0; j < m; ++j) p.b1(j) = theta[k++];
  for (Eigen::Index j = 0; j < m; ++j) p.w2(j) = theta[k++];
  p.b2 = theta[k];
  return p;
}

double mlp_forward(const MlpParams& p, std::span<const double> x) {
  if (static_cast<Eigen::Index>(x.size()) != p.w1.cols()) {
    throw StructuralError("mlp_forward: input size mismatch");
  }
  const Eigen::VectorXd a = p.w1 * as_vector(x) + p.b1;
  return p.w2.dot(a.array().tanh().matrix()) + p.b2;
}

double sipinn_forward(const SiPinnSpec& s, std::span<const double> x) {
  return sipinn_jet(s, x, JetRequest{}).u;
}

Jet sipinn_jet(const SiPinnSpec& s, std::span<const double> x, const JetRequest& request) {
  const auto n = s.base.w1.cols();
  if (static_cast<Eigen::Index>(x.size()) != n) {
    throw StructuralError("sipinn: input size mismatch");
  }
  std::vector<Eigen::MatrixXd> scratch;
  const auto& maps = effective_maps(s, scratch);
  const double inv = 1.0 / static_cast<double>(maps.size());
  const Eigen::VectorXd xv = as_vector(x);
  Jet j;
  double hidden_sum = 0.0;
  for (const auto& v : maps) {
    const Eigen::MatrixXd c = s.base.w1 * v;  // effective first-layer weights
    const Eigen::VectorXd a = c * xv + s.base.b1;
    for (Eigen::Index k = 0; k < a.size(); ++k) {
      const double h = std::tanh(a(k));
      const double dh = 1.0 - h * h;
      const double w = s.base.w2(k) * inv;
      hidden_sum += w * h;
      for (Eigen::Index axis = 0; axis < std::min<Eigen::Index>(n, 3); ++axis) {
        const int order = request.order[static_cast<std::size_t>(axis)];
        if (order >= 1) j.d1[axis] += w * dh * c(k, axis);
        if (order >= 2) j.d2[axis] += w * (-2.0 * h * dh) * c(k, axis) * c(k, axis);
      }
    }
  }
  j.u = hidden_sum + s.base.b2;
  return j;
}

double mlp_input_partial(const SiPinnSpec& s, std::span<const double> x, std::size_t axis,
                         int order) {
  if (axis >= 3 || axis >= x.size()) throw StructuralError("mlp_input_partial: bad axis");
  if (order != 1 && order != 2) throw StructuralError("mlp_input_partial: order must be 1 or 2");
  JetRequest r;
  r.order[axis] = order;
  const Jet j = sipinn_jet(s, x, r);
  return order == 1 ? j.d1[axis] : j.d2[axis];
}

std::vector<Eigen::MatrixXd> full_maps(const CoordinateAction& action, std::size_t input_dim) {
  if (!action.is_finite()) {
    throw StructuralError("group-averaged network needs a finite group");
  }
  if (action.spatial_dim() > input_dim) {
    throw StructuralError("group action acts on more coordinates than the input has");
  }
  std::vector<Eigen::MatrixXd> out;
  const auto n = static_cast<Eigen::Index>(input_dim);
  const auto s = static_cast<Eigen::Index>(action.spatial_dim());
  for (std::size_t g = 0; g < action.size(); ++g) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Identity(n, n);
    m.topLeftCorner(s, s) = action.map(g);
    out.push_back(std::move(m));
  }
  return out;
}

MlpModel::MlpModel(std::string name, std::size_t input_dim, std::size_t hidden,
                   std::vector<Eigen::MatrixXd> maps)
    : name_(std::move(name)), inputs_(input_dim), hidden_(hidden), maps_(std::move(maps)) {
  if (hidden_ == 0) throw StructuralError("MLP: hidden width must be positive");
  for (const auto& m : maps_) {
    if (m.rows() != static_cast<Eigen::Index>(inputs_) || m.cols() != m.rows()) {
      throw StructuralError("MLP: group map has the wrong shape");
    }
  }
}

SiPinnSpec MlpModel::spec(std::span<const double> theta) const {
  return {MlpParams::unpack(theta, inputs_, hidden_), maps_};
}

void MlpModel::evaluate(std::span<const double> theta, const PointSet& points,
                        std::span<double> values) const {
  if (values.size() != points.size()) throw StructuralError(name_ + ": output size mismatch");
  const SiPinnSpec s = spec(theta);
  for (std::size_t i = 0; i < points.size(); ++i) values[i] = sipinn_forward(s, points[i]);
}

void MlpModel::jets(std::span<const double> theta, const PointSet& points,
                    const JetRequest& request, std::span<Jet> out) const {
  if (out.size() != points.size()) throw StructuralError(name_ + ": output size mismatch");
  const SiPinnSpec s = spec(theta);
  for (std::size_t i = 0; i < points.size(); ++i) out[i] = sipinn_jet(s, points[i], request);
}

}  // namespace gqpinn
