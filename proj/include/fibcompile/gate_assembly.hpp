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
#include <optional>
#include <string>
#include <vector>

#include "fibcompile/search.hpp"
#include "fibcompile/solovay_kitaev.hpp"
#include "fibcompile/weave.hpp"

namespace fibcompile {

// Two-qubit layout on six strands, numbered from the bottom:
//   strands 1-3: target qubit (charge t1), strands 4-6: control qubit (t2).
//   The control label a is the charge of strands (4, 5), the control pair.
//   The target label b is the charge of strands (1, 2), or of (2, 3) for the
//   single-weft construction. Computational index = 2a + b.

enum class TargetPair { Lower, Upper };  // strands (1,2) or (2,3)

inline constexpr int kTwoQubitStrands = 6;

struct TwoQubitState {
  int a = 0, b = 0, t1 = 1, t2 = 1;
  bool computational() const { return t1 == 1 && t2 == 1; }
};

struct TwoQubitBasis {
  Charge total;
  std::vector<TwoQubitState> states;  // computational first, by 2a + b
  UnitaryMatrix change;               // rows: states, columns: chain basis
  int computational_dim() const { return 4; }
};

/// Recoupling from the chain basis FusionBasis(6, c) to (a, t2, b, t1) labels.
TwoQubitBasis two_qubit_basis_change(Charge c, TargetPair pair = TargetPair::Lower);

/// A weave slot holds either a found weave or an exact 3x3 matrix.
struct Slot {
  std::string role;
  std::optional<Weave> weave;
  UnitaryMatrix local;  // weave unitary, or the ideal matrix
  UnitaryMatrix ideal_matrix;
  Position start = Position::Middle;
  Position end = Position::Middle;
  double distance = 0;  // to the ideal component

  static Slot from_weave(std::string role, const Weave& w, const SearchTarget& ideal);
  static Slot ideal(std::string role, const SearchTarget& ideal);
  bool is_weave() const { return weave.has_value(); }
};

enum class Construction { InjectionCnot, EffectiveBraiding, FWeaveCz };

std::string to_string(Construction c);
Construction parse_construction(const std::string& s);

/// One component applied to three consecutive objects (1-based).
struct Placement {
  Slot slot;
  bool inverse = false;
  int first_object = 1;
};

struct AssembledGate {
  Construction construction = Construction::InjectionCnot;
  TargetPair target_pair = TargetPair::Lower;
  bool composite = false;  // the weft is the control pair
  std::vector<Placement> placements;
  /// Six-strand canonical word; absent when a slot holds an ideal matrix.
  std::optional<BraidWord> word;
  /// Ideal 4x4 on the computational block.
  UnitaryMatrix ideal_target;

  /// Sum of component distances, counting repeated components each time.
  double error_budget() const;
};

AssembledGate assemble_injection_cnot(const Slot& injection, const Slot& middle);
AssembledGate assemble_effective_braiding(const Slot& eff, int m);
AssembledGate assemble_fweave_cz(const Slot& f, const Slot& phase, double alpha);

/// Operator of the gate on the chain basis of sector c, built by substituting
/// each slot's 3x3 matrix into the six-strand space.
UnitaryMatrix substituted_operator(const AssembledGate& gate, Charge c);

/// Expand a three-strand word acting on objects first..first+2 into strand
/// letters. `widths` lists object widths (1 or 2) and is updated in place.
BraidWord cable_word(const BraidWord& local, int first_object,
                     std::vector<int>& widths, int strands);

struct SectorReport {
  Charge total = Charge::Zero;
  int dimension = 0;
  double leakage = 0;
  double distance_exact = 0;
  double distance_projective = 0;
  double phase = 0;
  Matrix block;  // computational 4x4
};

struct GateReport {
  std::array<SectorReport, 2> sectors;
  double budget = 0;
  /// Phase-minimized distance between the two sectors' blocks.
  double sector_agreement = 0;
  bool within_budget = false;
};

GateReport verify_operator(const std::array<UnitaryMatrix, 2>& sector_ops,
                           const UnitaryMatrix& target_4x4, TargetPair pair,
                           double budget);
/// Evaluates the word when present, else the substituted operator.
GateReport verify(const AssembledGate& gate, const UnitaryMatrix& target_4x4);
GateReport verify_word(const BraidWord& word, const UnitaryMatrix& target_4x4,
                       TargetPair pair = TargetPair::Lower, double budget = 0);

// Ideal two-qubit targets in the 2a + b ordering.
UnitaryMatrix controlled(const Matrix& u2);
UnitaryMatrix controlled_ix();
UnitaryMatrix controlled_sigma2_power(int m);
UnitaryMatrix fweave_phase_gate(double alpha);

/// Intermediate-state bookkeeping of the single-weft construction for one
/// computational input: b' distribution and the phase weave's factor.
struct IntermediateRow {
  int a = 0, b = 0;
  int b_prime = -1;          // -1 when the measurement is not sharp
  double probability = 0;    // of the reported b' (and pair charge a)
  Complex phase_factor = 0;  // phase weave eigenvalue on this state
  double phase_residual = 0; // || P psi - phase psi ||
};
std::vector<IntermediateRow> fweave_intermediate_table(Charge c, double alpha);

/// Single-qubit unitaries used around the two-qubit constructions.
Matrix rz_minus_half_pi();  // exp(i pi sz / 4)
Matrix ry_half_pi();        // exp(-i pi sy / 4)

struct SingleQubitOptions {
  DistanceMode mode = DistanceMode::Projective;
  long long l_max = 24;
  int sk_depth = 0;
  const EpsilonNet* net = nullptr;  // base for deeper levels; else searches
  int workers = 1;
};

struct SingleQubitResult {
  BraidWord word;
  double distance = 0;
  long long winding = 0;
  std::vector<SkLevel> levels;
};

/// Approximate a 2x2 unitary by a three-strand braid acting on the q-spin-1
/// block. Exact mode fixes the q-spin-0 entry from the determinant.
SingleQubitResult compile_single_qubit(const Matrix& target_2x2,
                                       const SingleQubitOptions& options);

}  // namespace fibcompile
