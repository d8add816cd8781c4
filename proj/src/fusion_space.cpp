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

#include "fibcompile/fusion_space.hpp"

#include <map>
#include <mutex>
#include <sstream>
#include <tuple>

#include "fibcompile/errors.hpp"

namespace fibcompile {

double f_symbol(Charge a, Charge b, Charge c, Charge d, Charge e, Charge f) {
  if (!fuses(a, b, e) || !fuses(e, c, d) || !fuses(b, c, f) ||
      !fuses(a, f, d)) {
    return 0.0;
  }
  if (a == Charge::One && b == Charge::One && c == Charge::One &&
      d == Charge::One) {
    const auto& g = golden();
    if (e == Charge::Zero && f == Charge::Zero) return g.tau;
    if (e == Charge::One && f == Charge::One) return -g.tau;
    return g.sqrt_tau;
  }
  return 1.0;
}

Eigen::Index FusionBasis::index_of(const FusionPath& path) const {
  for (std::size_t k = 0; k < paths.size(); ++k) {
    if (paths[k] == path) return static_cast<Eigen::Index>(k);
  }
  return -1;
}

namespace {

void extend(FusionPath& prefix, int n, Charge total,
            std::vector<FusionPath>& out) {
  if (static_cast<int>(prefix.size()) == n) {
    if (prefix.back() == total) out.push_back(prefix);
    return;
  }
  for (Charge next : {Charge::Zero, Charge::One}) {
    if (!fuses(prefix.back(), Charge::One, next)) continue;
    prefix.push_back(next);
    extend(prefix, n, total, out);
    prefix.pop_back();
  }
}

// Label g_k with the vacuum boundary g_0 = 0; k is 1-based.
Charge label(const FusionPath& path, int k) {
  return k == 0 ? Charge::Zero : path[static_cast<std::size_t>(k - 1)];
}

int sector_code(const FusionBasis& basis) {
  return basis.total ? to_int(*basis.total) : 2;
}

Matrix build_generator(int i, const FusionBasis& basis) {
  const Eigen::Index dim = basis.dim();
  Matrix g = Matrix::Zero(dim, dim);
  for (Eigen::Index col = 0; col < dim; ++col) {
    const FusionPath& path = basis.paths[static_cast<std::size_t>(col)];
    const Charge left = label(path, i - 1);
    const Charge x = label(path, i);
    const Charge right = label(path, i + 1);
    for (Charge xp : {Charge::Zero, Charge::One}) {
      FusionPath target = path;
      target[static_cast<std::size_t>(i - 1)] = xp;
      const Eigen::Index row = basis.index_of(target);
      if (row < 0) continue;
      Complex element = 0.0;
      for (Charge y : {Charge::Zero, Charge::One}) {
        element += f_symbol(left, Charge::One, Charge::One, right, xp, y) *
                   r_phase(to_int(y)) *
                   f_symbol(left, Charge::One, Charge::One, right, x, y);
      }
      g(row, col) = element;
    }
  }
  return g;
}

struct GeneratorCache {
  std::mutex mutex;
  std::map<std::tuple<int, int, int, int>, UnitaryMatrix> entries;
};

GeneratorCache& generator_cache() {
  static GeneratorCache cache;
  return cache;
}

bool is_standard_basis(const FusionBasis& basis) {
  if (basis.n < 1) return false;
  const FusionBasis ref =
      basis.total ? enumerate_basis(basis.n, *basis.total) : mixed_basis(basis.n);
  return ref.paths == basis.paths;
}

// Generator i raised to `power`, cached per (n, sector, i, power).
UnitaryMatrix generator_power(int i, int power, const FusionBasis& basis) {
  auto& cache = generator_cache();
  const auto key = std::make_tuple(basis.n, sector_code(basis), i, power);
  {
    std::lock_guard<std::mutex> lock(cache.mutex);
    auto it = cache.entries.find(key);
    if (it != cache.entries.end() && it->second.dim() == basis.dim()) {
      return it->second;
    }
  }
  UnitaryMatrix value =
      power == 1 ? UnitaryMatrix(build_generator(i, basis))
                 : generator_power(i, 1, basis).pow(power);
  if (is_standard_basis(basis)) {
    std::lock_guard<std::mutex> lock(cache.mutex);
    cache.entries.emplace(key, value);
  }
  return value;
}

}  // namespace

FusionBasis enumerate_basis(int n, Charge total) {
  if (n < 1) throw InvalidArgument("a fusion basis needs at least one anyon");
  FusionBasis basis;
  basis.n = n;
  basis.total = total;
  FusionPath prefix{Charge::One};
  extend(prefix, n, total, basis.paths);
  return basis;
}

FusionBasis mixed_basis(int n) {
  FusionBasis basis = enumerate_basis(n, Charge::One);
  const FusionBasis zero = enumerate_basis(n, Charge::Zero);
  basis.total.reset();
  basis.paths.insert(basis.paths.end(), zero.paths.begin(), zero.paths.end());
  return basis;
}

UnitaryMatrix braid_generator(int i, const FusionBasis& basis) {
  if (i < 1 || i > basis.n - 1) {
    std::ostringstream msg;
    msg << "generator index " << i << " out of range for " << basis.n
        << " strands";
    throw InvalidArgument(msg.str());
  }
  return generator_power(i, 1, basis);
}

long long BraidWord::winding() const {
  long long w = 0;
  for (const Letter& l : letters) w += l.pow;
  return w;
}

long long BraidWord::length() const {
  long long len = 0;
  for (const Letter& l : letters) len += l.pow < 0 ? -l.pow : l.pow;
  return len;
}

BraidWord BraidWord::inverse() const {
  BraidWord inv{strands, {}};
  inv.letters.reserve(letters.size());
  for (auto it = letters.rbegin(); it != letters.rend(); ++it) {
    inv.letters.push_back({it->gen, -it->pow});
  }
  return inv;
}

BraidWord BraidWord::then(const BraidWord& later) const {
  if (later.strands != strands) {
    throw DimensionMismatch("cannot concatenate braids on different strands");
  }
  BraidWord out = *this;
  out.letters.insert(out.letters.end(), later.letters.begin(),
                     later.letters.end());
  return out;
}

UnitaryMatrix evaluate_braid(const BraidWord& word, const FusionBasis& basis) {
  if (word.strands != basis.n) {
    std::ostringstream msg;
    msg << "braid on " << word.strands << " strands evaluated on a " << basis.n
        << "-anyon basis";
    throw DimensionMismatch(msg.str());
  }
  Matrix result = Matrix::Identity(basis.dim(), basis.dim());
  for (const Letter& l : word.letters) {
    if (l.gen < 1 || l.gen > word.strands - 1) {
      throw InvalidArgument("braid letter uses generator " +
                            std::to_string(l.gen));
    }
    if (l.pow == 0) continue;
    result = generator_power(l.gen, l.pow, basis).matrix() * result;
  }
  return UnitaryMatrix(std::move(result), 1e-9);
}

namespace {

int reduce_power(long long p) {
  long long r = p % 10;
  if (r < 0) r += 10;
  if (r > 5) r -= 10;
  return static_cast<int>(r);
}

}  // namespace

BraidWord canonicalize(const BraidWord& word) {
  std::vector<Letter> current = word.letters;
  while (true) {
    std::vector<Letter> next;
    next.reserve(current.size());
    for (const Letter& l : current) {
      if (!next.empty() && next.back().gen == l.gen) {
        next.back().pow += l.pow;
      } else {
        next.push_back(l);
      }
    }
    std::vector<Letter> reduced;
    reduced.reserve(next.size());
    for (Letter l : next) {
      l.pow = reduce_power(l.pow);
      if (l.pow != 0) reduced.push_back(l);
    }
    if (reduced == current) break;
    current = std::move(reduced);
  }
  return BraidWord{word.strands, std::move(current)};
}

bool is_canonical(const BraidWord& word) { return canonicalize(word) == word; }

namespace {

// Rows of the recoupled basis for a triple starting at strand j: the chain
// labels with g_j replaced by the inner pair charge x and g_{j+1} by the
// triple charge c.
struct TripleFrame {
  std::vector<FusionPath> states;
  Matrix change;  // recoupled <- chain
};

TripleFrame triple_frame(const FusionBasis& basis, int j) {
  TripleFrame frame;
  const Eigen::Index dim = basis.dim();
  frame.change = Matrix::Zero(dim, dim);
  auto state_index = [&](const FusionPath& s) {
    for (std::size_t k = 0; k < frame.states.size(); ++k) {
      if (frame.states[k] == s) return static_cast<Eigen::Index>(k);
    }
    frame.states.push_back(s);
    return static_cast<Eigen::Index>(frame.states.size() - 1);
  };
  for (Eigen::Index col = 0; col < dim; ++col) {
    const FusionPath& path = basis.paths[static_cast<std::size_t>(col)];
    const Charge left = label(path, j - 1);
    const Charge gj = label(path, j);
    const Charge gj1 = label(path, j + 1);
    const Charge gj2 = label(path, j + 2);
    for (Charge x : {Charge::Zero, Charge::One}) {
      const double f1 =
          f_symbol(left, Charge::One, Charge::One, gj1, gj, x);
      if (f1 == 0.0) continue;
      for (Charge c : {Charge::Zero, Charge::One}) {
        const double f2 = f_symbol(left, x, Charge::One, gj2, gj1, c);
        if (f2 == 0.0) continue;
        FusionPath s = path;
        s[static_cast<std::size_t>(j - 1)] = x;
        s[static_cast<std::size_t>(j)] = c;
        const Eigen::Index row = state_index(s);
        if (row >= dim) throw Error("triple recoupling produced too many states");
        frame.change(row, col) += f1 * f2;
      }
    }
  }
  if (static_cast<Eigen::Index>(frame.states.size()) != dim) {
    throw Error("triple recoupling is not square");
  }
  return frame;
}

// Position of (x, c) in the local {01, 11, 10} ordering.
int local_index(Charge x, Charge c) {
  if (c == Charge::Zero) return 2;
  return x == Charge::Zero ? 0 : 1;
}

}  // namespace

UnitaryMatrix embed_triple(const FusionBasis& basis, int first_strand,
                           const UnitaryMatrix& local) {
  const int j = first_strand;
  if (j < 1 || j + 2 > basis.n) {
    throw InvalidArgument("triple does not fit inside the strands");
  }
  if (local.dim() != 3) throw DimensionMismatch("local operator must be 3x3");
  const TripleFrame frame = triple_frame(basis, j);
  const Eigen::Index dim = basis.dim();
  Matrix op = Matrix::Zero(dim, dim);
  for (Eigen::Index col = 0; col < dim; ++col) {
    const FusionPath& s = frame.states[static_cast<std::size_t>(col)];
    const Charge x = s[static_cast<std::size_t>(j - 1)];
    const Charge c = s[static_cast<std::size_t>(j)];
    for (Eigen::Index row = 0; row < dim; ++row) {
      const FusionPath& t = frame.states[static_cast<std::size_t>(row)];
      bool same_rest = true;
      for (std::size_t k = 0; k < s.size(); ++k) {
        if (k == static_cast<std::size_t>(j - 1)) continue;
        if (s[k] != t[k]) {
          same_rest = false;
          break;
        }
      }
      if (!same_rest) continue;
      const Charge xp = t[static_cast<std::size_t>(j - 1)];
      op(row, col) = local(local_index(xp, c), local_index(x, c));
    }
  }
  return UnitaryMatrix(frame.change.adjoint() * op * frame.change, 1e-9);
}

PairReduction pair_reduction(const FusionBasis& basis, int first_strand) {
  const int k = first_strand;
  if (!basis.total) {
    throw InvalidArgument("pair reduction needs a fixed total charge");
  }
  if (k < 1 || k + 1 > basis.n || basis.n < 3) {
    throw InvalidArgument("pair does not fit inside the strands");
  }
  FusionBasis one = enumerate_basis(basis.n - 1, *basis.total);
  FusionBasis zero = enumerate_basis(basis.n - 2, *basis.total);
  const Eigen::Index dim = basis.dim();
  if (one.dim() + zero.dim() != dim) throw Error("pair reduction size mismatch");
  Matrix change = Matrix::Zero(dim, dim);
  for (Eigen::Index col = 0; col < dim; ++col) {
    const FusionPath& path = basis.paths[static_cast<std::size_t>(col)];
    const Charge left = label(path, k - 1);
    const Charge gk = label(path, k);
    const Charge gk1 = label(path, k + 1);
    for (Charge a : {Charge::Zero, Charge::One}) {
      const double coeff = f_symbol(left, Charge::One, Charge::One, gk1, gk, a);
      if (coeff == 0.0) continue;
      FusionPath reduced;
      for (int m = 1; m <= basis.n; ++m) {
        if (m == k) continue;
        if (a == Charge::Zero && m == k + 1) continue;
        reduced.push_back(label(path, m));
      }
      Eigen::Index row;
      if (a == Charge::One) {
        row = one.index_of(reduced);
      } else {
        const Eigen::Index r = zero.index_of(reduced);
        row = r < 0 ? -1 : one.dim() + r;
      }
      if (row < 0) throw Error("pair reduction produced an invalid path");
      change(row, col) += coeff;
    }
  }
  return PairReduction{UnitaryMatrix(change, 1e-12), std::move(one),
                       std::move(zero)};
}

std::string to_string(const FusionPath& path) {
  std::string s;
  for (Charge c : path) s.push_back(c == Charge::Zero ? '0' : '1');
  return s;
}

}  // namespace fibcompile
