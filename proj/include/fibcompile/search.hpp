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

#include <vector>

#include "fibcompile/weave.hpp"

namespace fibcompile {

enum class SearchStrategy {
  Auto,        // meet-in-the-middle when it applies, otherwise depth-first
  DepthFirst,  // exhaustive enumeration
  MeetInMiddle
};

struct SearchOptions {
  int keep = 1;
  int workers = 1;
  long long min_length = 0;
  SearchStrategy strategy = SearchStrategy::Auto;
};

/// Best weaves of length <= l_max for the target, ordered by distance, then
/// length, then exponent sequence, then starting generator.
std::vector<SearchResult> brute_force_search(const SearchTarget& target,
                                             long long l_max,
                                             const SearchOptions& options = {});

struct ScalingRow {
  long long length;  // L
  double epsilon;    // best distance over weaves of length <= L
};

/// One row per even L where the best distance improved.
std::vector<ScalingRow> scaling_table(const SearchTarget& target,
                                      long long l_max,
                                      const SearchOptions& options = {});

/// Exponent sequences of length <= l_max visited by the depth-first search,
/// counting the empty sequence once.
long long count_weaves(long long l_max);

}  // namespace fibcompile
