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
#include <optional>
#include <string>
#include <vector>

#include "fibcompile/anyon_core.hpp"

namespace fibcompile {

/// Fibonacci topological charge: 0 (vacuum-like) or 1 (the anyon itself).
enum class Charge : std::uint8_t { Zero = 0, One = 1 };

constexpr int to_int(Charge c) { return static_cast<int>(c); }
constexpr Charge charge(int v) { return v == 0 ? Charge::Zero : Charge::One; }

/// True when c appears in a (x) b under 0x0=0, 0x1=1, 1x1=0+1.
constexpr bool fuses(Charge a, Charge b, Charge c) {
  if (a == Charge::Zero) return b == c;
  if (b == Charge::Zero) return a == c;
  return true;
}

/// Recoupling coefficient [F^{abc}_d]_{ef}: |((a,b)_e,c)_d> = sum_f F |(a,(b,c)_f)_d>.
/// Zero for inadmissible labels.
double f_symbol(Charge a, Charge b, Charge c, Charge d, Charge e, Charge f);

/// Running charges g_1..g_n of a chain fusion tree; g_k fuses the first k anyons.
using FusionPath = std::vector<Charge>;

/// Ordered chain basis for n anyons. A basis covers either one total-charge
/// sector or, for the mixed layout, the charge-1 sector followed by charge 0.
struct FusionBasis {
  int n = 0;
  std::optional<Charge> total;  // empty for the mixed layout
  std::vector<FusionPath> paths;

  Eigen::Index dim() const { return static_cast<Eigen::Index>(paths.size()); }
  /// Index of a path, or -1 if absent.
  Eigen::Index index_of(const FusionPath& path) const;
};

/// All valid paths with g_n = total in lexicographic order.
FusionBasis enumerate_basis(int n, Charge total);
/// Charge-1 paths then charge-0 paths. For n = 3 this is the {01, 11, 10} order.
FusionBasis mixed_basis(int n);

/// Elementary clockwise exchange of strands i and i+1 (1-based).
UnitaryMatrix braid_generator(int i, const FusionBasis& basis);

struct Letter {
  int gen = 1;  // 1-based generator index
  int pow = 1;  // nonzero
  bool operator==(const Letter&) const = default;
};

/// Braid word in time order: letters[0] is applied first.
struct BraidWord {
  int strands = 3;
  std::vector<Letter> letters;

  long long winding() const;
  long long length() const;
  bool empty() const { return letters.empty(); }
  BraidWord inverse() const;
  /// Word that applies this word and then `later`.
  BraidWord then(const BraidWord& later) const;
  bool operator==(const BraidWord&) const = default;
};

/// Unitary of a word: M(letters.back()) * ... * M(letters.front()).
UnitaryMatrix evaluate_braid(const BraidWord& word, const FusionBasis& basis);

/// Merge equal neighbouring generators, reduce powers into (-5, 5] and drop
/// zero powers until nothing changes. Preserves the unitary; the winding may
/// change by a multiple of 10.
BraidWord canonicalize(const BraidWord& word);
bool is_canonical(const BraidWord& word);

/// Lift a 3x3 operator written in the {01, 11, 10} basis of strands
/// first..first+2 to the whole chain basis (fixed total charge or mixed).
UnitaryMatrix embed_triple(const FusionBasis& basis, int first_strand,
                           const UnitaryMatrix& local);

/// Change of basis that fuses strands k and k+1 into one object of charge a.
/// Rows list the a = 1 states (as an (n-1)-anyon chain) and then the a = 0
/// states (as an (n-2)-anyon chain).
struct PairReduction {
  UnitaryMatrix matrix;
  FusionBasis pair_one;
  FusionBasis pair_zero;
};
PairReduction pair_reduction(const FusionBasis& basis, int first_strand);

std::string to_string(const FusionPath& path);

}  // namespace fibcompile
