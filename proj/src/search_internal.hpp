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

#include <array>
#include <cmath>
#include <limits>
#include <vector>

#include "fibcompile/search.hpp"
#include "fibcompile/su2.hpp"
#include "fibcompile/weave.hpp"

namespace fibcompile::detail {

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr std::array<int, 4> kExponents{-4, -2, 2, 4};

/// SU(2) parts of sigma_g^n for g in {1, 2}, n in {-4, -2, 2, 4}; the block
/// of sigma_g^n is e^{-i n pi/10} times this quaternion.
struct LetterTable {
  std::array<std::array<Quaternion, 4>, 3> q;
  const Quaternion& at(int gen, int exponent_index) const {
    return q[gen][exponent_index];
  }
};
const LetterTable& letter_table();

/// Search target with boundary letters stripped: the middle weave alone has to
/// approximate end^{-1} T start^{-1}.
struct ReducedTarget {
  DistanceMode mode = DistanceMode::Exact;
  std::array<bool, 10> allowed{};
  std::array<Quaternion, 10> q{};
  Quaternion projective_q{};
};
ReducedTarget reduce(const SearchTarget& target);

inline int mod10(long long s) {
  long long r = s % 10;
  return static_cast<int>(r < 0 ? r + 10 : r);
}

/// Distance of a middle weave with raw quaternion q (product of table
/// entries) and exponent sum s.
inline double reduced_distance(const ReducedTarget& t, const Quaternion& q,
                               long long s) {
  if (t.mode == DistanceMode::Projective) {
    return std::min(q.distance(t.projective_q), q.distance(-t.projective_q));
  }
  const int w = mod10(s);
  if (!t.allowed[w]) return kInf;
  const long long turns = (s - w) / 10;
  return (turns % 2 == 0) ? q.distance(t.q[w]) : (-q).distance(t.q[w]);
}

struct Candidate {
  double distance = kInf;
  long long length = 0;
  std::vector<int> exponents;
  int first_gen = 1;
};

/// Distances closer than this are treated as ties.
inline constexpr double kTieResolution = 1e-12;

inline long long distance_key(double d) {
  return d == kInf ? std::numeric_limits<long long>::max()
                   : std::llround(d / kTieResolution);
}

/// Strict weak order: quantized distance, length, exponents, first generator.
inline bool better(const Candidate& a, const Candidate& b) {
  const long long ka = distance_key(a.distance), kb = distance_key(b.distance);
  if (ka != kb) return ka < kb;
  if (a.length != b.length) return a.length < b.length;
  if (a.exponents != b.exponents) return a.exponents < b.exponents;
  return a.first_gen < b.first_gen;
}

/// Bounded best-k list under `better`.
class TopK {
 public:
  explicit TopK(int keep) : keep_(keep) {}
  bool admits(double distance) const {
    return static_cast<int>(items_.size()) < keep_ ||
           distance <= items_.back().distance + 2 * kTieResolution;
  }
  void offer(Candidate c);
  void merge(const TopK& other) {
    for (const Candidate& c : other.items_) offer(c);
  }
  const std::vector<Candidate>& items() const { return items_; }

 private:
  int keep_;
  std::vector<Candidate> items_;
};

/// Per-length bests for the scaling table; index = L / 2.
struct LengthBests {
  std::vector<Candidate> best;
  explicit LengthBests(long long l_max)
      : best(static_cast<std::size_t>(l_max / 2 + 1)) {}
  void offer(const Candidate& c) {
    auto& slot = best[static_cast<std::size_t>(c.length / 2)];
    if (better(c, slot)) slot = c;
  }
  void merge(const LengthBests& other) {
    for (const Candidate& c : other.best) {
      if (c.distance < kInf) offer(c);
    }
  }
};

struct SearchOutcome {
  TopK top;
  LengthBests per_length;
};

SearchOutcome depth_first(const ReducedTarget& target, long long l_max,
                          const SearchOptions& options);
SearchOutcome meet_in_middle(const ReducedTarget& target, long long l_max,
                             const SearchOptions& options);

/// True when the meet-in-the-middle path supports this request.
bool mitm_applicable(const ReducedTarget& target, long long l_max,
                     const SearchOptions& options);

Weave to_weave(const Candidate& c, const SearchTarget& target);

}  // namespace fibcompile::detail
