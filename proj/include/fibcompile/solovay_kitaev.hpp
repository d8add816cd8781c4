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

#include <cstdint>
#include <filesystem>
#include <functional>
#include <vector>

#include "fibcompile/kdtree.hpp"
#include "fibcompile/weave.hpp"

namespace fibcompile {

struct NetEntry {
  Weave weave;  // middle -> middle
  UnitaryMatrix unitary;
  long long winding = 0;
  WindingClass winding_class() const { return WindingClass::of(winding); }
};

/// All middle -> middle weaves up to a base length, searchable per winding
/// class.
class EpsilonNet {
 public:
  static constexpr std::uint32_t kFormatVersion = 1;

  struct Lookup {
    std::size_t index = 0;
    double distance = 0;
  };

  EpsilonNet() = default;
  static EpsilonNet build(int base_length);
  static EpsilonNet load(const std::filesystem::path& path);
  void save(const std::filesystem::path& path) const;

  int base_length() const { return base_length_; }
  const std::vector<NetEntry>& entries() const { return entries_; }
  const NetEntry& operator[](std::size_t i) const { return entries_[i]; }
  std::size_t size() const { return entries_.size(); }

  /// Nearest entry of class w to a target of the same class (3x3 operator
  /// norm). Ties go to the earliest entry.
  Lookup nearest(const UnitaryMatrix& target, WindingClass w) const;
  /// Same answer by exhaustive scan.
  Lookup nearest_linear(const UnitaryMatrix& target, WindingClass w) const;

 private:
  EpsilonNet(int base_length, std::vector<NetEntry> entries);
  void index();

  int base_length_ = 0;
  std::vector<NetEntry> entries_;
  std::array<KdTree4, 10> trees_;
  std::array<std::vector<std::uint32_t>, 10> members_;
};

/// $FIBCOMPILE_CACHE_DIR, else ~/.cache/fibcompile.
std::filesystem::path cache_directory();
std::filesystem::path default_net_path(int base_length);
/// Load the cached net for L0, building and saving it when absent or stale.
EpsilonNet load_or_build_net(int base_length);

struct CommutatorPair {
  UnitaryMatrix a;
  UnitaryMatrix b;
  double angle = 0;  // common rotation angle of A and B
};

/// A, B with A B A^-1 B^-1 = C, equal-angle rotations about perpendicular
/// axes. C must be in the W = 0 block form and within 0.5 of the identity.
/// `gauge` rotates the pair about C's axis, which leaves the commutator fixed.
CommutatorPair gc_decompose(const UnitaryMatrix& c, double gauge = 0);

/// Level-0 approximation of a middle -> middle target of a given class.
using BaseApproximator =
    std::function<BraidWord(const UnitaryMatrix& target, WindingClass w)>;

/// Holds its own copy of the net.
BaseApproximator net_approximator(const EpsilonNet& net);

struct SkConfig {
  int depth = 1;
  BaseApproximator base;
  double coarseness_guard = 0.14;
  /// Gauge angles tried per step; the closest resulting word is kept.
  int frame_samples = 1;
};

struct SkLevel {
  int level = 0;
  double distance = 0;
  long long length = 0;
  long long winding = 0;
  double seconds = 0;
};

struct SkResult {
  BraidWord word;
  UnitaryMatrix unitary;
  double distance = 0;
  std::vector<SkLevel> levels;
};

/// Improve a middle -> middle 3x3 target. The output winding class equals the
/// class of the level-0 approximation.
SkResult sk_improve(const UnitaryMatrix& target, const SkConfig& config);

/// sk_improve for a weave target with endpoints: boundary letters are
/// stripped, the middle part improved, and the letters put back.
SkResult sk_improve_target(const SearchTarget& target, const SkConfig& config);

}  // namespace fibcompile
