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

#include "fibcompile/gate_assembly.hpp"

#include <cmath>

#include "fibcompile/errors.hpp"
#include "fibcompile/su2.hpp"

namespace fibcompile {

namespace {

int position_offset(Position p) {
  switch (p) {
    case Position::Bottom: return 0;
    case Position::Middle: return 1;
    case Position::Top: return 2;
  }
  return 1;
}

Complex expi(double angle) { return std::polar(1.0, angle); }

}  // namespace

TwoQubitBasis two_qubit_basis_change(Charge c, TargetPair pair) {
  const FusionBasis chain = enumerate_basis(kTwoQubitStrands, c);
  TwoQubitBasis out;
  out.total = c;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) out.states.push_back({a, b, 1, 1});
  }
  for (int t1 = 0; t1 < 2; ++t1) {
    for (int t2 = 0; t2 < 2; ++t2) {
      if (t1 == 1 && t2 == 1) continue;
      if (!fuses(charge(t1), charge(t2), c)) continue;
      for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
          if (!fuses(charge(b), Charge::One, charge(t1))) continue;
          if (!fuses(charge(a), Charge::One, charge(t2))) continue;
          out.states.push_back({a, b, t1, t2});
        }
      }
    }
  }
  const Eigen::Index dim = chain.dim();
  if (static_cast<Eigen::Index>(out.states.size()) != dim) {
    throw Error("two-qubit labels do not span the six-anyon sector");
  }
  auto row_of = [&](int a, int b, int t1, int t2) -> Eigen::Index {
    for (std::size_t k = 0; k < out.states.size(); ++k) {
      const TwoQubitState& s = out.states[k];
      if (s.a == a && s.b == b && s.t1 == t1 && s.t2 == t2) {
        return static_cast<Eigen::Index>(k);
      }
    }
    return -1;
  };
  const Charge one = Charge::One;
  Matrix m = Matrix::Zero(dim, dim);
  for (Eigen::Index col = 0; col < dim; ++col) {
    const FusionPath& g = chain.paths[static_cast<std::size_t>(col)];
    const Charge g2 = g[1], g3 = g[2], g4 = g[3], g5 = g[4];
    for (Charge b : {Charge::Zero, Charge::One}) {
      double target_coeff;
      if (pair == TargetPair::Lower) {
        target_coeff = (b == g2) ? 1.0 : 0.0;
      } else {
        target_coeff = f_symbol(one, one, one, g3, g2, b);
      }
      if (target_coeff == 0.0) continue;
      for (Charge a : {Charge::Zero, Charge::One}) {
        const double c1 = f_symbol(g3, one, one, g5, g4, a);
        if (c1 == 0.0) continue;
        for (Charge t2 : {Charge::Zero, Charge::One}) {
          const double c2 = f_symbol(g3, a, one, c, g5, t2);
          if (c2 == 0.0) continue;
          const Eigen::Index row = row_of(to_int(a), to_int(b), to_int(g3), to_int(t2));
          if (row < 0) throw Error("two-qubit recoupling reached an unknown state");
          m(row, col) += target_coeff * c1 * c2;
        }
      }
    }
  }
  out.change = UnitaryMatrix(std::move(m), 1e-12);
  return out;
}

Slot Slot::from_weave(std::string role, const Weave& w, const SearchTarget& ideal) {
  if (w.start != ideal.start || w.end != ideal.end) {
    throw InvalidArgument(role + " weave runs " + to_string(w.start) + " -> " +
                          to_string(w.end) + ", expected " + to_string(ideal.start) +
                          " -> " + to_string(ideal.end));
  }
  const WindingClass cls = WindingClass::of(w.winding());
  bool ok = false;
  for (WindingClass c : ideal.winding_classes) ok = ok || c == cls;
  if (!ok) {
    throw InvalidArgument(role + " weave has winding " + std::to_string(w.winding()) +
                          ", which is not in the component's winding class");
  }
  Slot s;
  s.role = std::move(role);
  s.weave = w;
  s.local = weave_unitary(w);
  s.ideal_matrix = ideal.matrix;
  s.start = w.start;
  s.end = w.end;
  s.distance = operator_distance(s.local, ideal.matrix);
  return s;
}

Slot Slot::ideal(std::string role, const SearchTarget& ideal) {
  Slot s;
  s.role = std::move(role);
  s.local = ideal.matrix;
  s.ideal_matrix = ideal.matrix;
  s.start = ideal.start;
  s.end = ideal.end;
  return s;
}

std::string to_string(Construction c) {
  switch (c) {
    case Construction::InjectionCnot: return "injection-cnot";
    case Construction::EffectiveBraiding: return "effective-braiding";
    case Construction::FWeaveCz: return "fweave-cz";
  }
  return "injection-cnot";
}

Construction parse_construction(const std::string& s) {
  if (s == "injection-cnot") return Construction::InjectionCnot;
  if (s == "effective-braiding") return Construction::EffectiveBraiding;
  if (s == "fweave-cz") return Construction::FWeaveCz;
  throw InvalidArgument("unknown construction '" + s + "'");
}

double AssembledGate::error_budget() const {
  double total = 0;
  for (const Placement& p : placements) total += p.slot.distance;
  return total;
}

namespace {

// Clockwise exchange of a width-p object at strand s with the width-q object
// right above it.
std::vector<Letter> clockwise_exchange(int s, int p, int q) {
  std::vector<Letter> out;
  for (int j = 1; j <= q; ++j) {
    for (int i = p - 1; i >= 0; --i) out.push_back({s + j - 1 + i, 1});
  }
  return out;
}

std::vector<int> initial_widths(bool composite) {
  return composite ? std::vector<int>{1, 1, 1, 2, 1}
                   : std::vector<int>{1, 1, 1, 1, 1, 1};
}

int strand_of(const std::vector<int>& widths, int object) {
  int s = 1;
  for (int i = 0; i < object - 1; ++i) s += widths[static_cast<std::size_t>(i)];
  return s;
}

BraidWord placement_word(const Placement& p) {
  BraidWord w = to_braid_word(*p.slot.weave);
  return p.inverse ? w.inverse() : w;
}

void build_word(AssembledGate& gate) {
  for (const Placement& p : gate.placements) {
    if (!p.slot.is_weave()) return;
  }
  std::vector<int> widths = initial_widths(gate.composite);
  BraidWord word{kTwoQubitStrands, {}};
  for (const Placement& p : gate.placements) {
    word = word.then(cable_word(placement_word(p), p.first_object, widths,
                                kTwoQubitStrands));
  }
  if (widths != initial_widths(gate.composite)) {
    throw Error("construction does not return the weft to its starting place");
  }
  gate.word = canonicalize(word);
}

void require_endpoints(const Slot& s, Position start, Position end) {
  if (s.start != start || s.end != end) {
    throw InvalidArgument(s.role + " component must run " + to_string(start) +
                          " -> " + to_string(end) + ", got " + to_string(s.start) +
                          " -> " + to_string(s.end));
  }
}

void require_class(const Slot& s, int w) {
  const auto classes = winding_class_of_target(s.ideal_matrix);
  bool ok = false;
  for (WindingClass c : classes) ok = ok || c.value() == w;
  if (!ok) {
    throw InvalidArgument(s.role + " component must have winding " +
                          std::to_string(w) + " (mod 10)");
  }
  if (s.is_weave() && WindingClass::of(s.weave->winding()).value() != w) {
    throw InvalidArgument(s.role + " weave must have winding " + std::to_string(w) +
                          " (mod 10)");
  }
}

}  // namespace

BraidWord cable_word(const BraidWord& local, int first_object,
                     std::vector<int>& widths, int strands) {
  BraidWord out{strands, {}};
  for (const Letter& l : local.letters) {
    const int k = first_object + l.gen - 1;
    if (k < 1 || k + 1 > static_cast<int>(widths.size())) {
      throw InvalidArgument("cabled letter leaves the object list");
    }
    for (int step = 0; step < std::abs(l.pow); ++step) {
      const int s = strand_of(widths, k);
      const int wa = widths[static_cast<std::size_t>(k - 1)];
      const int wb = widths[static_cast<std::size_t>(k)];
      if (l.pow > 0) {
        for (const Letter& x : clockwise_exchange(s, wa, wb)) out.letters.push_back(x);
      } else {
        std::vector<Letter> cw = clockwise_exchange(s, wb, wa);
        for (auto it = cw.rbegin(); it != cw.rend(); ++it) {
          out.letters.push_back({it->gen, -it->pow});
        }
      }
      std::swap(widths[static_cast<std::size_t>(k - 1)],
                widths[static_cast<std::size_t>(k)]);
    }
  }
  return out;
}

AssembledGate assemble_injection_cnot(const Slot& injection, const Slot& middle) {
  require_endpoints(injection, Position::Top, Position::Bottom);
  require_class(injection, 0);
  require_endpoints(middle, Position::Middle, Position::Middle);
  if (middle.is_weave() && middle.weave->winding() % 2 != 0) {
    throw InvalidArgument("the middle weave must have even winding");
  }
  const auto classes = winding_class_of_target(middle.ideal_matrix);
  if (classes.empty() || classes.front().value() % 2 != 0) {
    throw InvalidArgument("the middle component must have even winding");
  }
  AssembledGate gate;
  gate.construction = Construction::InjectionCnot;
  gate.target_pair = TargetPair::Lower;
  gate.composite = true;
  gate.placements = {{injection, false, 2}, {middle, false, 1}, {injection, true, 2}};
  gate.ideal_target = controlled(middle.ideal_matrix.matrix().topLeftCorner(2, 2));
  build_word(gate);
  return gate;
}

AssembledGate assemble_effective_braiding(const Slot& eff, int m) {
  if (m % 2 != 0) {
    throw InfeasibleTarget("effective braiding weaves only exist for even m");
  }
  require_endpoints(eff, Position::Top, Position::Top);
  require_class(eff, WindingClass::of(m).value());
  AssembledGate gate;
  gate.construction = Construction::EffectiveBraiding;
  gate.target_pair = TargetPair::Lower;
  gate.composite = true;
  gate.placements = {{eff, false, 2}};
  gate.ideal_target = controlled_sigma2_power(m);
  build_word(gate);
  return gate;
}

AssembledGate assemble_fweave_cz(const Slot& f, const Slot& phase, double alpha) {
  require_endpoints(f, Position::Top, Position::Middle);
  require_class(f, 5);
  require_endpoints(phase, Position::Top, Position::Top);
  require_class(phase, 0);
  AssembledGate gate;
  gate.construction = Construction::FWeaveCz;
  gate.target_pair = TargetPair::Upper;
  gate.composite = false;
  gate.placements = {{f, false, 3}, {phase, false, 2}, {f, true, 3}};
  gate.ideal_target = fweave_phase_gate(alpha);
  build_word(gate);
  return gate;
}

UnitaryMatrix substituted_operator(const AssembledGate& gate, Charge c) {
  const FusionBasis basis = enumerate_basis(kTwoQubitStrands, c);
  Matrix op = Matrix::Identity(basis.dim(), basis.dim());
  int pair_object = 4;
  for (const Placement& p : gate.placements) {
    const UnitaryMatrix local = p.inverse ? p.slot.local.adjoint() : p.slot.local;
    const Position start = p.inverse ? p.slot.end : p.slot.start;
    const Position end = p.inverse ? p.slot.start : p.slot.end;
    if (!gate.composite) {
      op = embed_triple(basis, p.first_object, local).matrix() * op;
      continue;
    }
    if (pair_object != p.first_object + position_offset(start)) {
      throw InvalidArgument(p.slot.role + " does not start at the control pair");
    }
    const int next_object = p.first_object + position_offset(end);
    // With only the pair composite, its first strand equals its object index.
    const PairReduction before = pair_reduction(basis, pair_object);
    const PairReduction after = pair_reduction(basis, next_object);
    const Eigen::Index n1 = before.pair_one.dim();
    const Eigen::Index n0 = before.pair_zero.dim();
    Matrix inner = Matrix::Identity(n1 + n0, n1 + n0);
    inner.topLeftCorner(n1, n1) = embed_triple(before.pair_one, p.first_object, local).matrix();
    op = after.matrix.adjoint().matrix() * inner * before.matrix.matrix() * op;
    pair_object = next_object;
  }
  return UnitaryMatrix(std::move(op), 1e-9);
}

GateReport verify_operator(const std::array<UnitaryMatrix, 2>& sector_ops,
                           const UnitaryMatrix& target_4x4, TargetPair pair,
                           double budget) {
  if (target_4x4.dim() != 4) throw DimensionMismatch("two-qubit target must be 4x4");
  GateReport report;
  report.budget = budget;
  for (int k = 0; k < 2; ++k) {
    const Charge c = charge(k);
    const TwoQubitBasis tb = two_qubit_basis_change(c, pair);
    const UnitaryMatrix& u = sector_ops[static_cast<std::size_t>(k)];
    if (u.dim() != tb.change.dim()) {
      throw DimensionMismatch("sector operator has the wrong dimension");
    }
    const Matrix v = tb.change.matrix() * u.matrix() * tb.change.adjoint().matrix();
    SectorReport& s = report.sectors[static_cast<std::size_t>(k)];
    s.total = c;
    s.dimension = static_cast<int>(v.rows());
    s.block = v.topLeftCorner(4, 4);
    s.leakage = operator_norm(v.bottomLeftCorner(v.rows() - 4, 4));
    s.distance_exact = operator_norm(s.block - target_4x4.matrix());
    const PhasedDistance pd = projective_distance(s.block, target_4x4.matrix());
    s.distance_projective = pd.distance;
    s.phase = pd.phase;
  }
  report.sector_agreement =
      projective_distance(report.sectors[0].block, report.sectors[1].block).distance;
  constexpr double kSlack = 1e-12;
  report.within_budget = report.sector_agreement <= 2 * budget + kSlack;
  for (const SectorReport& s : report.sectors) {
    report.within_budget = report.within_budget && s.distance_exact <= budget + kSlack;
  }
  return report;
}

GateReport verify(const AssembledGate& gate, const UnitaryMatrix& target_4x4) {
  std::array<UnitaryMatrix, 2> ops;
  for (int k = 0; k < 2; ++k) {
    const Charge c = charge(k);
    ops[static_cast<std::size_t>(k)] =
        gate.word ? evaluate_braid(*gate.word, enumerate_basis(kTwoQubitStrands, c))
                  : substituted_operator(gate, c);
  }
  return verify_operator(ops, target_4x4, gate.target_pair, gate.error_budget());
}

GateReport verify_word(const BraidWord& word, const UnitaryMatrix& target_4x4,
                       TargetPair pair, double budget) {
  if (word.strands != kTwoQubitStrands) {
    throw DimensionMismatch("two-qubit verification needs a six-strand braid");
  }
  const BraidWord canonical = canonicalize(word);
  std::array<UnitaryMatrix, 2> ops;
  for (int k = 0; k < 2; ++k) {
    ops[static_cast<std::size_t>(k)] =
        evaluate_braid(canonical, enumerate_basis(kTwoQubitStrands, charge(k)));
  }
  return verify_operator(ops, target_4x4, pair, budget);
}

UnitaryMatrix controlled(const Matrix& u2) {
  Matrix m = Matrix::Identity(4, 4);
  m.bottomRightCorner(2, 2) = u2;
  return UnitaryMatrix(std::move(m), 1e-10);
}

UnitaryMatrix controlled_ix() {
  Matrix ix = Matrix::Zero(2, 2);
  ix(0, 1) = Complex(0, 1);
  ix(1, 0) = Complex(0, 1);
  return controlled(ix);
}

UnitaryMatrix controlled_sigma2_power(int m) {
  return controlled(sigma2().pow(m).matrix().topLeftCorner(2, 2));
}

UnitaryMatrix fweave_phase_gate(double alpha) {
  Matrix m = Matrix::Zero(4, 4);
  m(0, 0) = expi(alpha);
  m(1, 1) = expi(alpha);
  m(2, 2) = 1.0;
  m(3, 3) = expi(-alpha);
  return UnitaryMatrix(std::move(m), 1e-12);
}

std::vector<IntermediateRow> fweave_intermediate_table(Charge c, double alpha) {
  const FusionBasis basis = enumerate_basis(kTwoQubitStrands, c);
  const TwoQubitBasis tb = two_qubit_basis_change(c, TargetPair::Upper);
  const Eigen::Index dim = basis.dim();
  const Matrix id = Matrix::Identity(dim, dim);
  const Matrix f_op = embed_triple(basis, 3, f_target().matrix).matrix();
  const Matrix phase_op = embed_triple(basis, 2, phase_target(alpha).matrix).matrix();
  // Pair (3,4) charge from the exchange eigenvalues; triple (2,3,4) charge
  // from a sign flip on its charge-0 state.
  const Matrix ex = braid_generator(3, basis).matrix();
  auto pair_projector = [&](int a) {
    const Complex ra = r_phase(a), rb = r_phase(1 - a);
    return Matrix((ex - rb * id) / (ra - rb));
  };
  Matrix flip = Matrix::Identity(3, 3);
  flip(2, 2) = -1.0;
  const Matrix sign = embed_triple(basis, 2, UnitaryMatrix(flip)).matrix();
  auto triple_projector = [&](int bp) {
    const double s = bp == 1 ? 1.0 : -1.0;
    return Matrix((id + s * sign) / 2.0);
  };

  std::vector<IntermediateRow> rows;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      IntermediateRow row;
      row.a = a;
      row.b = b;
      const Eigen::VectorXcd psi =
          tb.change.adjoint().matrix().col(2 * a + b);
      const Eigen::VectorXcd mid = f_op * psi;
      for (int bp = 0; bp < 2; ++bp) {
        const double p = (triple_projector(bp) * pair_projector(a) * mid).squaredNorm();
        if (p > row.probability) {
          row.probability = p;
          row.b_prime = bp;
        }
      }
      if (row.probability < 1 - 1e-10) row.b_prime = -1;
      const Eigen::VectorXcd after = phase_op * mid;
      row.phase_factor = mid.dot(after);
      row.phase_residual = (after - row.phase_factor * mid).norm();
      rows.push_back(row);
    }
  }
  return rows;
}

Matrix rz_minus_half_pi() {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = expi(kPi / 4);
  m(1, 1) = expi(-kPi / 4);
  return m;
}

Matrix ry_half_pi() {
  const double h = 1.0 / std::sqrt(2.0);
  Matrix m(2, 2);
  m << h, -h, h, h;
  return m;
}

namespace {

BaseApproximator search_approximator(long long l_max, int workers) {
  return [l_max, workers](const UnitaryMatrix& u, WindingClass) {
    SearchOptions opts;
    opts.workers = workers;
    const SearchTarget t =
        custom_target(u, Position::Middle, Position::Middle, DistanceMode::Exact);
    return to_braid_word(brute_force_search(t, l_max, opts).front().weave);
  };
}

}  // namespace

SingleQubitResult compile_single_qubit(const Matrix& target_2x2,
                                       const SingleQubitOptions& options) {
  if (target_2x2.rows() != 2 || target_2x2.cols() != 2) {
    throw DimensionMismatch("single-qubit target must be 2x2");
  }
  const UnitaryMatrix checked(target_2x2, 1e-10);
  const Complex det = target_2x2.determinant();
  SearchOptions opts;
  opts.workers = options.workers;

  SearchTarget search;
  if (options.mode == DistanceMode::Exact) {
    const double raw = -std::arg(det) * 5.0 / kPi;
    const double w_real = std::round(raw);
    if (std::abs(raw - w_real) > 1e-9) {
      throw InfeasibleTarget(
          "no winding class fits: a braid's q-spin-1 block has determinant "
          "e^{-i W pi/5}, so det must be a tenth root of unity");
    }
    const long long w = static_cast<long long>(w_real);
    const Position start = (w % 2 == 0) ? Position::Middle : Position::Top;
    search = custom_target(
        UnitaryMatrix(block_matrix(target_2x2, expi(3.0 * w * kPi / 5.0)), 1e-10),
        start, Position::Middle, DistanceMode::Exact);
  } else {
    search = custom_target(UnitaryMatrix(block_matrix(target_2x2, 1.0), 1e-10),
                           Position::Middle, Position::Middle,
                           DistanceMode::Projective);
  }
  const SearchResult base = brute_force_search(search, options.l_max, opts).front();
  SingleQubitResult out;
  out.word = to_braid_word(base.weave);
  out.distance = base.distance;
  out.winding = base.winding;
  out.levels.push_back({0, base.distance, out.word.length(), out.word.winding(), 0});
  if (options.sk_depth == 0) return out;

  SearchTarget exact = search;
  if (options.mode == DistanceMode::Projective) {
    // Fix the phase so that the lifted target sits in the base result's class.
    const long long w = base.winding;
    const double phi = (-static_cast<double>(w) * kPi / 5.0 - std::arg(det)) / 2.0;
    double best = std::numeric_limits<double>::infinity();
    for (double shift : {0.0, kPi}) {
      const UnitaryMatrix lifted(
          block_matrix(expi(phi + shift) * target_2x2, expi(3.0 * w * kPi / 5.0)), 1e-10);
      const double d = operator_distance(lifted, base.unitary);
      if (d < best) {
        best = d;
        exact.matrix = lifted;
      }
    }
    exact.mode = DistanceMode::Exact;
    exact.winding_classes = {WindingClass::of(w)};
  }
  const Weave base_middle{base.weave.first_gen, base.weave.exponents,
                          Position::Middle, Position::Middle};
  const BaseApproximator deeper = options.net ? net_approximator(*options.net)
                                              : search_approximator(options.l_max,
                                                                    options.workers);
  bool first = true;
  SkConfig config;
  config.depth = options.sk_depth;
  config.coarseness_guard = 0;
  config.base = [&](const UnitaryMatrix& u, WindingClass w) {
    if (first) {
      first = false;
      return to_braid_word(base_middle);
    }
    return deeper(u, w);
  };
  const SkResult sk = sk_improve_target(exact, config);
  out.word = sk.word;
  out.winding = sk.word.winding();
  out.levels = sk.levels;
  const UnitaryMatrix u = evaluate_braid(sk.word, mixed_basis(3));
  out.distance = target_distance(search, u);
  return out;
}

}  // namespace fibcompile
