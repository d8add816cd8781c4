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

#include "fibcompile/search.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

#include "fibcompile/errors.hpp"
#include "search_internal.hpp"

namespace fibcompile {
namespace detail {

const LetterTable& letter_table() {
  static const LetterTable table = [] {
    LetterTable t;
    const UnitaryMatrix gens[3] = {UnitaryMatrix::identity(3), sigma1(),
                                   sigma2()};
    for (int g = 1; g <= 2; ++g) {
      const Quaternion base =
          class_quaternion(gens[g].matrix(), WindingClass::of(1));
      for (std::size_t k = 0; k < kExponents.size(); ++k) {
        const int n = kExponents[k];
        Quaternion q;
        const Quaternion step = n > 0 ? base : base.conj();
        for (int r = 0; r < std::abs(n); ++r) q = step * q;
        t.q[g][k] = q;
      }
    }
    return t;
  }();
  return table;
}

ReducedTarget reduce(const SearchTarget& target) {
  static const FusionBasis basis = mixed_basis(3);
  const UnitaryMatrix s = evaluate_braid(start_letters(target.start), basis);
  const UnitaryMatrix e = evaluate_braid(end_letters(target.end), basis);
  const Matrix stripped =
      e.adjoint().matrix() * target.matrix.matrix() * s.adjoint().matrix();
  const int boundary = (target.start != Position::Middle ? 1 : 0) +
                       (target.end != Position::Middle ? 1 : 0);
  ReducedTarget r;
  r.mode = target.mode;
  r.projective_q =
      PhasedSu2::from_unitary(stripped.topLeftCorner(2, 2)).q;
  if (target.mode == DistanceMode::Projective) {
    r.allowed.fill(true);
    return r;
  }
  for (WindingClass c : feasible_classes(target)) {
    const int w = mod10(c.value() - boundary);
    r.allowed[w] = true;
    r.q[w] = class_quaternion(stripped, WindingClass::of(w));
  }
  return r;
}

void TopK::offer(Candidate c) {
  if (keep_ <= 0) return;
  auto pos = std::upper_bound(items_.begin(), items_.end(), c, better);
  if (static_cast<int>(pos - items_.begin()) >= keep_) return;
  items_.insert(pos, std::move(c));
  if (static_cast<int>(items_.size()) > keep_) items_.pop_back();
}

Weave to_weave(const Candidate& c, const SearchTarget& target) {
  Weave w;
  w.first_gen = c.exponents.empty() ? 1 : c.first_gen;
  w.exponents = c.exponents;
  w.start = target.start;
  w.end = target.end;
  return w;
}

namespace {

struct DfsState {
  const ReducedTarget& target;
  long long l_max;
  long long min_length;
  SearchOutcome out;
  std::vector<int> exponents;
  int first_gen = 1;

  DfsState(const ReducedTarget& t, long long l, const SearchOptions& o)
      : target(t),
        l_max(l),
        min_length(o.min_length),
        out{TopK(o.keep), LengthBests(l)} {}

  void consider(const Quaternion& q, long long s, long long length) {
    if (length < min_length) return;
    const double d = reduced_distance(target, q, s);
    if (d == kInf) return;
    const Candidate& slot = out.per_length.best[static_cast<std::size_t>(length / 2)];
    const bool length_best = d <= slot.distance + 2 * kTieResolution;
    if (!length_best && !out.top.admits(d)) return;
    Candidate c{d, length, exponents, exponents.empty() ? 1 : first_gen};
    if (length_best) out.per_length.offer(c);
    if (out.top.admits(d)) out.top.offer(std::move(c));
  }

  void visit(const Quaternion& q, long long s, long long length, int gen) {
    consider(q, s, length);
    const LetterTable& table = letter_table();
    for (std::size_t k = 0; k < kExponents.size(); ++k) {
      const int n = kExponents[k];
      const long long next_length = length + std::abs(n);
      if (next_length > l_max) continue;
      exponents.push_back(n);
      visit(table.at(gen, static_cast<int>(k)) * q, s + n, next_length, 3 - gen);
      exponents.pop_back();
    }
  }
};

}  // namespace

SearchOutcome depth_first(const ReducedTarget& target, long long l_max,
                          const SearchOptions& options) {
  // Tasks: one per (starting generator, first exponent).
  struct Task {
    int gen;
    std::size_t k;
  };
  std::vector<Task> tasks;
  for (int g = 1; g <= 2; ++g) {
    for (std::size_t k = 0; k < kExponents.size(); ++k) {
      if (std::abs(kExponents[k]) <= l_max) tasks.push_back({g, k});
    }
  }
  std::vector<DfsState> states;
  states.reserve(tasks.size());
  for (std::size_t t = 0; t < tasks.size(); ++t) {
    states.emplace_back(target, l_max, options);
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    const LetterTable& table = letter_table();
    for (std::size_t t = next++; t < tasks.size(); t = next++) {
      DfsState& st = states[t];
      const Task& task = tasks[t];
      const int n = kExponents[task.k];
      st.first_gen = task.gen;
      st.exponents = {n};
      st.visit(table.at(task.gen, static_cast<int>(task.k)), n, std::abs(n),
               3 - task.gen);
    }
  };
  const int workers = std::max(1, options.workers);
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < workers; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  DfsState root(target, l_max, options);
  root.consider(Quaternion{}, 0, 0);
  for (const DfsState& st : states) {
    root.out.top.merge(st.out.top);
    root.out.per_length.merge(st.out.per_length);
  }
  return std::move(root.out);
}

}  // namespace detail

namespace {

detail::SearchOutcome run_search(const SearchTarget& target, long long l_max,
                                 const SearchOptions& options) {
  if (l_max < 0) throw InvalidArgument("maximum length must be nonnegative");
  if (options.keep < 1) throw InvalidArgument("keep must be at least 1");
  if (target.matrix.dim() != 3) {
    throw DimensionMismatch("weave search needs a 3x3 target");
  }
  if (target.mode == DistanceMode::Exact && feasible_classes(target).empty()) {
    throw InfeasibleTarget(
        "no weave can reach the target: the winding parity must equal the "
        "number of boundary letters implied by the endpoints (" +
        to_string(target.start) + " -> " + to_string(target.end) + ")");
  }
  const detail::ReducedTarget reduced = detail::reduce(target);
  const bool mitm = options.strategy == SearchStrategy::MeetInMiddle ||
                    (options.strategy == SearchStrategy::Auto &&
                     detail::mitm_applicable(reduced, l_max, options));
  if (mitm) return detail::meet_in_middle(reduced, l_max, options);
  return detail::depth_first(reduced, l_max, options);
}

}  // namespace

std::vector<SearchResult> brute_force_search(const SearchTarget& target,
                                             long long l_max,
                                             const SearchOptions& options) {
  const detail::SearchOutcome outcome = run_search(target, l_max, options);
  if (outcome.top.items().empty()) {
    throw InfeasibleTarget("no weave of length <= " + std::to_string(l_max) +
                           " satisfies the winding and endpoint constraints");
  }
  std::vector<SearchResult> results;
  for (const detail::Candidate& c : outcome.top.items()) {
    results.push_back(make_result(target, detail::to_weave(c, target)));
  }
  return results;
}

std::vector<ScalingRow> scaling_table(const SearchTarget& target,
                                      long long l_max,
                                      const SearchOptions& options) {
  SearchOptions opts = options;
  opts.keep = 1;
  opts.min_length = 0;
  const detail::SearchOutcome outcome = run_search(target, l_max, opts);
  std::vector<ScalingRow> rows;
  double best = detail::kInf;
  for (std::size_t k = 0; k < outcome.per_length.best.size(); ++k) {
    const detail::Candidate& c = outcome.per_length.best[k];
    if (detail::distance_key(c.distance) < detail::distance_key(best)) {
      best = c.distance;
      const SearchResult r = make_result(target, detail::to_weave(c, target));
      rows.push_back({static_cast<long long>(2 * k), r.distance});
    }
  }
  return rows;
}

long long count_weaves(long long l_max) {
  // ways[l] = sequences of total length l ending on a fixed generator.
  std::vector<long long> ways(static_cast<std::size_t>(std::max(0LL, l_max) + 1), 0);
  long long total = 1;
  for (long long l = 2; l <= l_max; l += 2) {
    long long w = 0;
    for (int n : {2, 4}) {
      if (l - n < 0) continue;
      const long long prev = (l - n == 0) ? 1 : ways[static_cast<std::size_t>(l - n)];
      w += 2 * prev;
    }
    ways[static_cast<std::size_t>(l)] = w;
    total += 2 * w;
  }
  return total;
}

}  // namespace fibcompile
