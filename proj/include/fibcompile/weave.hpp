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

#include <string>
#include <vector>

#include "fibcompile/anyon_core.hpp"
#include "fibcompile/fusion_space.hpp"
#include "fibcompile/su2.hpp"

namespace fibcompile {

/// Position of the weft strand among the three strands.
enum class Position { Top, Middle, Bottom };

std::string to_string(Position p);
Position parse_position(const std::string& s);

/// Single-weft three-strand weave. Exponents alternate between generators,
/// starting with `first_gen`, and each lies in {+-2, +-4}. The optional
/// boundary letters are implied by the endpoints.
struct Weave {
  int first_gen = 1;
  std::vector<int> exponents;
  Position start = Position::Middle;
  Position end = Position::Middle;

  /// Sum of |n_i|, boundary letters excluded.
  long long length() const;
  /// Sum of n_i plus one per boundary letter.
  long long winding() const;
  int boundary_letters() const;
  int generator_at(std::size_t k) const {
    return (k % 2 == 0) ? first_gen : 3 - first_gen;
  }
  bool operator==(const Weave&) const = default;
};

/// Throws InvalidArgument on malformed exponents or generators.
void validate(const Weave& w);

UnitaryMatrix weave_unitary(const Weave& w);
/// Three-strand word with boundary letters; adjacent equal generators merged.
BraidWord to_braid_word(const Weave& w);

/// Boundary letters as words: start is applied first, end last.
BraidWord start_letters(Position start);
BraidWord end_letters(Position end);

enum class DistanceMode { Exact, Projective };

std::string to_string(DistanceMode m);
DistanceMode parse_distance_mode(const std::string& s);

struct SearchTarget {
  std::string name;
  UnitaryMatrix matrix;
  std::vector<WindingClass> winding_classes;
  Position start = Position::Middle;
  Position end = Position::Middle;
  DistanceMode mode = DistanceMode::Exact;
};

/// Exact: ||U - T|| on the full 3x3 matrices. Projective: the phase-minimized
/// distance between the q-spin-1 blocks.
double target_distance(const SearchTarget& target, const UnitaryMatrix& u);

/// Classes of `target.winding_classes` whose parity fits the endpoints.
std::vector<WindingClass> feasible_classes(const SearchTarget& target);

struct SearchResult {
  Weave weave;
  double distance = 0;
  double projective_distance = 0;
  long long length = 0;
  long long winding = 0;
  UnitaryMatrix unitary;
};

SearchResult make_result(const SearchTarget& target, const Weave& w);

// Library targets; each matrix is what the full weave (with boundary letters)
// should approximate.
SearchTarget ix_target();
SearchTarget identity_target();
SearchTarget injection_target();
SearchTarget effective_braiding_target(int m);
SearchTarget f_target();
SearchTarget phase_target(double alpha);
/// User matrix; in exact mode the winding class is derived from the matrix.
SearchTarget custom_target(const UnitaryMatrix& m, Position start, Position end,
                           DistanceMode mode);

/// Names: ix, identity, injection, effective-braiding, f, phase.
SearchTarget target_library(const std::string& name, int m = 2,
                            double alpha = kPi);

/// Quaternion of the normalized q-spin-1 block: block = e^{-i w pi/10} q with
/// w = class of `winding`.
Quaternion class_quaternion(const Matrix& m3, WindingClass w);

}  // namespace fibcompile
