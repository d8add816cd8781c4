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

// Meet-in-the-middle weave search.
//
// A middle weave is split as (later half) * (earlier half). The earlier half
// R is the longest prefix of length <= H; the later half then has length
// <= l_max - H + 2. Later halves are stored in kd-trees keyed by
// (winding class, first generator, length) so that the best completion of
// each R at every total length is one nearest-neighbour query.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <functional>
#include <thread>

#include "fibcompile/kdtree.hpp"
#include "search_internal.hpp"

namespace fibcompile::detail {

namespace {

struct Half {
  std::uint32_t offset = 0;  // into the exponent pool
  std::uint8_t size = 0;
  std::uint8_t first_gen = 1;
  std::uint8_t last_gen = 0;  // 0 for the empty half
  std::uint8_t length = 0;
  std::uint8_t w = 0;  // exponent sum mod 10
  Quaternion q;        // normalized: block = e^{-i w pi/10} q
};

struct HalfSet {
  std::vector<std::int8_t> pool;
  std::vector<Half> halves;

  std::vector<int> exponents(const Half& h) const {
    return {pool.begin() + h.offset, pool.begin() + h.offset + h.size};
  }
};

void enumerate_halves(long long max_length, HalfSet& out) {
  const LetterTable& table = letter_table();
  std::vector<int> seq;
  std::function<void(const Quaternion&, long long, long long, int, int)> rec =
      [&](const Quaternion& q, long long s, long long length, int first,
          int next_gen) {
        Half h;
        h.offset = static_cast<std::uint32_t>(out.pool.size());
        h.size = static_cast<std::uint8_t>(seq.size());
        h.first_gen = static_cast<std::uint8_t>(seq.empty() ? 1 : first);
        h.last_gen = static_cast<std::uint8_t>(seq.empty() ? 0 : 3 - next_gen);
        h.length = static_cast<std::uint8_t>(length);
        h.w = static_cast<std::uint8_t>(mod10(s));
        h.q = (((s - h.w) / 10) % 2 == 0) ? q : -q;
        out.pool.insert(out.pool.end(), seq.begin(), seq.end());
        out.halves.push_back(h);
        for (std::size_t k = 0; k < kExponents.size(); ++k) {
          const int n = kExponents[k];
          if (length + std::abs(n) > max_length) continue;
          seq.push_back(n);
          rec(table.at(next_gen, static_cast<int>(k)) * q, s + n,
              length + std::abs(n), first, 3 - next_gen);
          seq.pop_back();
        }
      };
  rec(Quaternion{}, 0, 0, 1, 1);
  // Sequences starting with generator 2 (the empty one is already stored).
  for (std::size_t k = 0; k < kExponents.size(); ++k) {
    const int n = kExponents[k];
    if (std::abs(n) > max_length) continue;
    seq = {n};
    rec(table.at(2, static_cast<int>(k)), n, std::abs(n), 2, 1);
  }
  seq.clear();
}

struct Partitions {
  long long max_length;
  std::vector<KdTree4> trees;
  std::vector<std::vector<std::uint32_t>> members;

  explicit Partitions(long long max_len)
      : max_length(max_len),
        trees(static_cast<std::size_t>(20 * (max_len / 2 + 1))),
        members(trees.size()) {}

  std::size_t key(int w, int first_gen, long long length) const {
    return static_cast<std::size_t>((w * 2 + (first_gen - 1)) *
                                        (max_length / 2 + 1) +
                                    length / 2);
  }
};

}  // namespace

bool mitm_applicable(const ReducedTarget& target, long long l_max,
                     const SearchOptions& options) {
  return target.mode == DistanceMode::Exact && options.keep == 1 &&
         options.min_length == 0 && l_max >= 28;
}

SearchOutcome meet_in_middle(const ReducedTarget& target, long long l_max,
                             const SearchOptions& options) {
  if (target.mode != DistanceMode::Exact || options.keep != 1 ||
      options.min_length != 0 || l_max < 8) {
    return depth_first(target, l_max, options);
  }
  const long long h = 2 * (l_max / 4);
  const long long left_max = std::min(l_max, l_max - h + 2);

  HalfSet right_set, left_set;
  enumerate_halves(h, right_set);
  enumerate_halves(left_max, left_set);

  Partitions parts(left_max);
  {
    std::vector<std::vector<KdTree4::Point>> points(parts.trees.size());
    for (std::uint32_t i = 0; i < left_set.halves.size(); ++i) {
      const Half& l = left_set.halves[i];
      if (l.size == 0) continue;
      const std::size_t key = parts.key(l.w, l.first_gen, l.length);
      points[key].push_back({l.q.w, l.q.x, l.q.y, l.q.z});
      parts.members[key].push_back(i);
    }
    for (std::size_t k = 0; k < points.size(); ++k) {
      parts.trees[k] = KdTree4(std::move(points[k]));
    }
  }

  const std::size_t total = right_set.halves.size();
  const int workers = std::max(1, options.workers);
  std::vector<LengthBests> bests(static_cast<std::size_t>(workers),
                                 LengthBests(l_max));
  std::atomic<std::size_t> next{0};
  constexpr std::size_t kChunk = 1024;

  auto process = [&](LengthBests& lb, const Half& r) {
    const long long room = l_max - r.length;
    const bool can_extend = r.size == 0 || r.length >= h - 2;
    for (int wt = 0; wt < 10; ++wt) {
      if (!target.allowed[wt]) continue;
      const Quaternion& qt = target.q[wt];
      // Empty later half.
      if (r.w == wt) {
        const double d = r.q.distance(qt);
        auto& slot = lb.best[static_cast<std::size_t>(r.length / 2)];
        if (d <= slot.distance + 2 * kTieResolution) {
          lb.offer({d, r.length, right_set.exponents(r),
                    r.size == 0 ? 1 : r.first_gen});
        }
      }
      if (!can_extend) continue;
      const int wl = mod10(wt - r.w);
      const double sign = (wl + r.w >= 10) ? -1.0 : 1.0;
      Quaternion x = qt * r.q.conj();
      if (sign < 0) x = -x;
      const KdTree4::Point p{x.w, x.x, x.y, x.z};
      for (int g = 1; g <= 2; ++g) {
        if (r.size != 0 && g == r.last_gen) continue;
        for (long long len = 2; len <= std::min(room, left_max); len += 2) {
          const std::size_t key = parts.key(wl, g, len);
          const KdTree4& tree = parts.trees[key];
          if (tree.empty()) continue;
          const KdTree4::Hit hit = tree.nearest(p);
          const Half& l = left_set.halves[parts.members[key][hit.index]];
          // Recompute along the same path as the depth-first search.
          const double d = l.q.distance(x);
          const long long length = r.length + len;
          auto& slot = lb.best[static_cast<std::size_t>(length / 2)];
          if (d > slot.distance + 2 * kTieResolution) continue;
          std::vector<int> seq = right_set.exponents(r);
          const std::vector<int> tail = left_set.exponents(l);
          seq.insert(seq.end(), tail.begin(), tail.end());
          lb.offer({d, length, std::move(seq), r.size == 0 ? g : r.first_gen});
        }
      }
    }
  };

  auto worker = [&](int id) {
    LengthBests& lb = bests[static_cast<std::size_t>(id)];
    for (std::size_t start = next.fetch_add(kChunk); start < total;
         start = next.fetch_add(kChunk)) {
      const std::size_t stop = std::min(total, start + kChunk);
      for (std::size_t i = start; i < stop; ++i) process(lb, right_set.halves[i]);
    }
  };
  if (workers == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < workers; ++i) pool.emplace_back(worker, i);
    for (auto& th : pool) th.join();
  }

  SearchOutcome out{TopK(1), LengthBests(l_max)};
  for (const LengthBests& lb : bests) out.per_length.merge(lb);
  for (const Candidate& c : out.per_length.best) {
    if (c.distance < kInf) out.top.offer(c);
  }
  return out;
}

}  // namespace fibcompile::detail
