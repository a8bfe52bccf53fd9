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
#include <span>
#include <vector>

#include "gqpinn/error.hpp"

namespace gqpinn {

/// Flat list of equal-length coordinate tuples (x, y, t, ...).
class PointSet {
 public:
  PointSet() = default;
  explicit PointSet(std::size_t dim) : dim_(dim) {}
  PointSet(std::size_t dim, std::vector<double> coords)
      : dim_(dim), coords_(std::move(coords)) {
    if (dim_ == 0 || coords_.size() % dim_ != 0) {
      throw StructuralError("PointSet: coordinate count not a multiple of dim");
    }
  }

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return dim_ == 0 ? 0 : coords_.size() / dim_; }
  bool empty() const { return coords_.empty(); }

  std::span<const double> operator[](std::size_t i) const {
    return {coords_.data() + i * dim_, dim_};
  }
  std::span<double> mutable_point(std::size_t i) {
    return {coords_.data() + i * dim_, dim_};
  }

  void push_back(std::span<const double> z) {
    if (z.size() != dim_) throw StructuralError("PointSet: wrong point size");
    coords_.insert(coords_.end(), z.begin(), z.end());
  }
  void push_back(std::initializer_list<double> z) {
    push_back(std::span<const double>(z.begin(), z.size()));
  }
  void reserve(std::size_t n) { coords_.reserve(n * dim_); }

  const std::vector<double>& coords() const { return coords_; }

 private:
  std::size_t dim_ = 0;
  std::vector<double> coords_;
};

}  // namespace gqpinn
