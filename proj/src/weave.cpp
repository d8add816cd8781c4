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

#include "fibcompile/weave.hpp"

#include <cmath>

#include "fibcompile/errors.hpp"

namespace fibcompile {

std::string to_string(Position p) {
  switch (p) {
    case Position::Top: return "top";
    case Position::Middle: return "middle";
    case Position::Bottom: return "bottom";
  }
  return "middle";
}

Position parse_position(const std::string& s) {
  if (s == "top") return Position::Top;
  if (s == "middle") return Position::Middle;
  if (s == "bottom") return Position::Bottom;
  throw InvalidArgument("unknown position '" + s + "'");
}

std::string to_string(DistanceMode m) {
  return m == DistanceMode::Exact ? "exact" : "projective";
}

DistanceMode parse_distance_mode(const std::string& s) {
  if (s == "exact") return DistanceMode::Exact;
  if (s == "projective") return DistanceMode::Projective;
  throw InvalidArgument("unknown distance mode '" + s + "'");
}

long long Weave::length() const {
  long long len = 0;
  for (int n : exponents) len += std::abs(n);
  return len;
}

int Weave::boundary_letters() const {
  return (start != Position::Middle ? 1 : 0) + (end != Position::Middle ? 1 : 0);
}

long long Weave::winding() const {
  long long w = boundary_letters();
  for (int n : exponents) w += n;
  return w;
}

void validate(const Weave& w) {
  if (w.first_gen != 1 && w.first_gen != 2) {
    throw InvalidArgument("weave must start on generator 1 or 2");
  }
  for (int n : w.exponents) {
    if (n != 2 && n != -2 && n != 4 && n != -4) {
      throw InvalidArgument("weave exponent " + std::to_string(n) +
                            " is not in {+-2, +-4}");
    }
  }
}

BraidWord start_letters(Position start) {
  BraidWord word{3, {}};
  if (start == Position::Top) word.letters.push_back({2, 1});
  if (start == Position::Bottom) word.letters.push_back({1, 1});
  return word;
}

BraidWord end_letters(Position end) {
  BraidWord word{3, {}};
  if (end == Position::Top) word.letters.push_back({2, 1});
  if (end == Position::Bottom) word.letters.push_back({1, 1});
  return word;
}

BraidWord to_braid_word(const Weave& w) {
  validate(w);
  BraidWord raw = start_letters(w.start);
  for (std::size_t k = 0; k < w.exponents.size(); ++k) {
    raw.letters.push_back({w.generator_at(k), w.exponents[k]});
  }
  for (const Letter& l : end_letters(w.end).letters) raw.letters.push_back(l);
  BraidWord merged{3, {}};
  for (const Letter& l : raw.letters) {
    if (!merged.letters.empty() && merged.letters.back().gen == l.gen) {
      merged.letters.back().pow += l.pow;
      if (merged.letters.back().pow == 0) merged.letters.pop_back();
    } else {
      merged.letters.push_back(l);
    }
  }
  return merged;
}

UnitaryMatrix weave_unitary(const Weave& w) {
  static const FusionBasis basis = mixed_basis(3);
  return evaluate_braid(to_braid_word(w), basis);
}

Quaternion class_quaternion(const Matrix& m3, WindingClass w) {
  const Complex prefactor = winding_phases(w).qspin1_prefactors[0];
  return Quaternion::from_su2(m3.topLeftCorner(2, 2) / prefactor).normalized();
}

double target_distance(const SearchTarget& target, const UnitaryMatrix& u) {
  if (target.mode == DistanceMode::Exact) {
    return operator_distance(u, target.matrix);
  }
  const PhasedSu2 a = PhasedSu2::from_unitary(u.matrix().topLeftCorner(2, 2));
  const PhasedSu2 b =
      PhasedSu2::from_unitary(target.matrix.matrix().topLeftCorner(2, 2));
  return std::min(a.q.distance(b.q), a.q.distance(-b.q));
}

std::vector<WindingClass> feasible_classes(const SearchTarget& target) {
  const int boundary = (target.start != Position::Middle ? 1 : 0) +
                       (target.end != Position::Middle ? 1 : 0);
  std::vector<WindingClass> out;
  for (WindingClass c : target.winding_classes) {
    if (c.value() % 2 == boundary % 2) out.push_back(c);
  }
  return out;
}

SearchResult make_result(const SearchTarget& target, const Weave& w) {
  SearchResult r;
  r.weave = w;
  r.unitary = weave_unitary(w);
  r.length = w.length();
  r.winding = w.winding();
  r.distance = target_distance(target, r.unitary);
  SearchTarget projective = target;
  projective.mode = DistanceMode::Projective;
  r.projective_distance = target_distance(projective, r.unitary);
  return r;
}

namespace {

SearchTarget library_target(std::string name, const Matrix& m, int w,
                            Position start, Position end) {
  SearchTarget t;
  t.name = std::move(name);
  t.matrix = UnitaryMatrix(m, 1e-12);
  t.winding_classes = {WindingClass::of(w)};
  t.start = start;
  t.end = end;
  t.mode = DistanceMode::Exact;
  return t;
}

}  // namespace

SearchTarget ix_target() {
  Matrix m = Matrix::Zero(3, 3);
  m(0, 1) = Complex(0, 1);
  m(1, 0) = Complex(0, 1);
  m(2, 2) = 1.0;
  return library_target("ix", m, 0, Position::Middle, Position::Middle);
}

SearchTarget identity_target() {
  return library_target("identity", Matrix::Identity(3, 3), 0,
                        Position::Middle, Position::Middle);
}

SearchTarget injection_target() {
  return library_target("injection", Matrix::Identity(3, 3), 0, Position::Top,
                        Position::Bottom);
}

SearchTarget effective_braiding_target(int m) {
  if (m % 2 != 0) {
    throw InfeasibleTarget(
        "effective braiding weaves only exist for even m: the weave starts "
        "and ends at the top, so its winding is even, and W = m (mod 10)");
  }
  SearchTarget t = library_target("effective-braiding", sigma1().pow(m).matrix(),
                                  m, Position::Top, Position::Top);
  return t;
}

SearchTarget f_target() {
  return library_target("f", -f_matrix().matrix(), 5, Position::Top,
                        Position::Middle);
}

SearchTarget phase_target(double alpha) {
  Matrix d = Matrix::Zero(3, 3);
  d(0, 0) = std::polar(1.0, alpha);
  d(1, 1) = std::polar(1.0, -alpha);
  d(2, 2) = 1.0;
  const Matrix f = f_matrix().matrix();
  return library_target("phase", f * d * f, 0, Position::Top, Position::Top);
}

SearchTarget custom_target(const UnitaryMatrix& m, Position start, Position end,
                           DistanceMode mode) {
  if (m.dim() != 3) throw DimensionMismatch("search target must be 3x3");
  SearchTarget t;
  t.name = "custom";
  t.matrix = m;
  t.start = start;
  t.end = end;
  t.mode = mode;
  if (mode == DistanceMode::Exact) {
    t.winding_classes = winding_class_of_target(m);
    if (t.winding_classes.empty()) {
      throw InfeasibleTarget(
          "no winding class matches the target: a braid has q-spin-0 entry "
          "e^{i 3 W pi/5} and a q-spin-1 block of determinant e^{-i W pi/5}");
    }
  } else {
    for (int w = 0; w < 10; ++w) t.winding_classes.push_back(WindingClass::of(w));
  }
  return t;
}

SearchTarget target_library(const std::string& name, int m, double alpha) {
  if (name == "ix") return ix_target();
  if (name == "identity") return identity_target();
  if (name == "injection") return injection_target();
  if (name == "effective-braiding") return effective_braiding_target(m);
  if (name == "f") return f_target();
  if (name == "phase") return phase_target(alpha);
  throw InvalidArgument("unknown target '" + name + "'");
}

}  // namespace fibcompile
