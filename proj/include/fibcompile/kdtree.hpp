// Copyright 2026 The fibcompile Authors
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

#include <algorithm>
#include <array>
#include <cstdint>
#include <limits>
#include <numeric>
#include <vector>

namespace fibcompile {

/// Static 4-d kd-tree for exact Euclidean nearest-neighbour queries on
/// quaternions. Ties go to the smallest payload index.
class KdTree4 {
 public:
  using Point = std::array<double, 4>;

  struct Hit {
    std::int64_t index = -1;  // payload index, -1 when the tree is empty
    double distance_sq = std::numeric_limits<double>::infinity();
  };

  KdTree4() = default;
  explicit KdTree4(std::vector<Point> points) : points_(std::move(points)) {
    order_.resize(points_.size());
    std::iota(order_.begin(), order_.end(), 0);
    nodes_.resize(points_.size());
    if (!points_.empty()) build(0, order_.size());
  }

  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }

  Hit nearest(const Point& q) const {
    Hit best;
    if (!points_.empty()) search(0, order_.size(), q, best);
    return best;
  }

 private:
  static constexpr std::size_t kLeaf = 8;

  static double dist_sq(const Point& a, const Point& b) {
    double s = 0;
    for (int d = 0; d < 4; ++d) {
      const double t = a[d] - b[d];
      s += t * t;
    }
    return s;
  }

  void build(std::size_t lo, std::size_t hi) {
    if (hi - lo <= kLeaf) return;
    Point mn, mx;
    mn.fill(std::numeric_limits<double>::infinity());
    mx.fill(-std::numeric_limits<double>::infinity());
    for (std::size_t k = lo; k < hi; ++k) {
      const Point& p = points_[order_[k]];
      for (int d = 0; d < 4; ++d) {
        mn[d] = std::min(mn[d], p[d]);
        mx[d] = std::max(mx[d], p[d]);
      }
    }
    int dim = 0;
    for (int d = 1; d < 4; ++d) {
      if (mx[d] - mn[d] > mx[dim] - mn[dim]) dim = d;
    }
    const std::size_t mid = lo + (hi - lo) / 2;
    std::nth_element(order_.begin() + lo, order_.begin() + mid,
                     order_.begin() + hi, [&](std::uint32_t a, std::uint32_t b) {
                       return points_[a][dim] < points_[b][dim];
                     });
    nodes_[mid] = {dim, points_[order_[mid]][dim]};
    build(lo, mid);
    build(mid + 1, hi);
  }

  void consider(std::uint32_t idx, const Point& q, Hit& best) const {
    const double d = dist_sq(points_[idx], q);
    if (d < best.distance_sq ||
        (d == best.distance_sq && static_cast<std::int64_t>(idx) < best.index)) {
      best.distance_sq = d;
      best.index = idx;
    }
  }

  void search(std::size_t lo, std::size_t hi, const Point& q, Hit& best) const {
    if (hi - lo <= kLeaf) {
      for (std::size_t k = lo; k < hi; ++k) consider(order_[k], q, best);
      return;
    }
    const std::size_t mid = lo + (hi - lo) / 2;
    const Node& node = nodes_[mid];
    const double diff = q[node.dim] - node.split;
    consider(order_[mid], q, best);
    if (diff < 0) {
      search(lo, mid, q, best);
      if (diff * diff <= best.distance_sq) search(mid + 1, hi, q, best);
    } else {
      search(mid + 1, hi, q, best);
      if (diff * diff <= best.distance_sq) search(lo, mid, q, best);
    }
  }

  struct Node {
    int dim = 0;
    double split = 0;
  };

  std::vector<Point> points_;
  std::vector<std::uint32_t> order_;
  std::vector<Node> nodes_;
};

}  // namespace fibcompile
