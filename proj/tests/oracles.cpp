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

#include "oracles.hpp"

#include <cmath>
#include <functional>

namespace oracle {

namespace {

const double kPi = std::acos(-1.0);

Complex e(double x) { return std::polar(1.0, x); }

Mat letter(int gen, int power) {
  const Mat base = gen == 1 ? sigma1() : sigma2();
  Mat out = Mat::Identity(3, 3);
  const Mat step = power > 0 ? base : Mat(base.adjoint());
  for (int i = 0; i < std::abs(power); ++i) out = step * out;
  return out;
}

}  // namespace

double tau() { return (std::sqrt(5.0) - 1.0) / 2.0; }

Mat sigma1() {
  Mat m = Mat::Zero(3, 3);
  m(0, 0) = e(-4 * kPi / 5);
  m(1, 1) = e(3 * kPi / 5);
  m(2, 2) = e(3 * kPi / 5);
  return m;
}

Mat sigma2() {
  const double t = tau();
  Mat m = Mat::Zero(3, 3);
  m(0, 0) = -t * e(-kPi / 5);
  m(0, 1) = std::sqrt(t) * e(-3 * kPi / 5);
  m(1, 0) = std::sqrt(t) * e(-3 * kPi / 5);
  m(1, 1) = -t;
  m(2, 2) = e(3 * kPi / 5);
  return m;
}

Mat f_matrix() {
  const double t = tau();
  Mat m = Mat::Zero(3, 3);
  m(0, 0) = t;
  m(0, 1) = std::sqrt(t);
  m(1, 0) = std::sqrt(t);
  m(1, 1) = -t;
  m(2, 2) = 1;
  return m;
}

double norm_distance(const Mat& a, const Mat& b) {
  const Mat d = a - b;
  Eigen::SelfAdjointEigenSolver<Mat> es(d.adjoint() * d);
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

double phase_scan_distance(const Mat& a, const Mat& b, int grid) {
  double best = 1e300, best_phi = 0;
  for (int k = 0; k < grid; ++k) {
    const double phi = 2 * kPi * k / grid;
    const double d = norm_distance(a, e(phi) * b);
    if (d < best) {
      best = d;
      best_phi = phi;
    }
  }
  double lo = best_phi - 2 * kPi / grid, hi = best_phi + 2 * kPi / grid;
  for (int it = 0; it < 100; ++it) {
    const double m1 = lo + (hi - lo) / 3, m2 = hi - (hi - lo) / 3;
    if (norm_distance(a, e(m1) * b) < norm_distance(a, e(m2) * b)) {
      hi = m2;
    } else {
      lo = m1;
    }
  }
  return std::min(best, norm_distance(a, e((lo + hi) / 2) * b));
}

NaiveBest naive_search(const Mat& target, End start, End end, int l_max, bool projective,
                       const std::vector<int>& classes) {
  Mat pre = Mat::Identity(3, 3), post = Mat::Identity(3, 3);
  int boundary = 0;
  if (start == End::Top) pre = letter(2, 1), ++boundary;
  if (start == End::Bottom) pre = letter(1, 1), ++boundary;
  if (end == End::Top) post = letter(2, 1), ++boundary;
  if (end == End::Bottom) post = letter(1, 1), ++boundary;
  const int exps[4] = {-4, -2, 2, 4};
  Mat powers[3][4];
  for (int g = 1; g <= 2; ++g) {
    for (int k = 0; k < 4; ++k) powers[g][k] = letter(g, exps[k]);
  }
  NaiveBest best;
  std::vector<int> seq;
  int first = 1;
  std::function<void(const Mat&, int, int, int)> rec = [&](const Mat& u, int len, int sum,
                                                            int next) {
    bool allowed = classes.empty();
    const int w = ((sum + boundary) % 10 + 10) % 10;
    for (int c : classes) allowed = allowed || c == w;
    if (allowed) {
      const Mat full = post * u * pre;
      const double d = projective ? phase_scan_distance(full.topLeftCorner(2, 2),
                                                        target.topLeftCorner(2, 2), 64)
                                  : norm_distance(full, target);
      if (d < best.distance - 1e-12 ||
          (d <= best.distance + 1e-12 && len < best.length)) {
        best.distance = d;
        best.length = len;
        best.exponents = seq;
        best.first_gen = seq.empty() ? 1 : first;
      }
    }
    for (int k = 0; k < 4; ++k) {
      if (len + std::abs(exps[k]) > l_max) continue;
      seq.push_back(exps[k]);
      rec(powers[next][k] * u, len + std::abs(exps[k]), sum + exps[k], 3 - next);
      seq.pop_back();
    }
  };
  rec(Mat::Identity(3, 3), 0, 0, 1);
  for (int g = 1; g <= 2; ++g) {
    first = g;
    for (int k = 0; k < 4; ++k) {
      if (std::abs(exps[k]) > l_max) continue;
      seq = {exps[k]};
      rec(powers[g][k], std::abs(exps[k]), exps[k], 3 - g);
    }
  }
  return best;
}

long long naive_count(int l_max) {
  // Sequences from one starting generator; exponents alternate generators.
  std::function<long long(int)> rec = [&](int len) {
    long long n = 1;
    for (int e : {-4, -2, 2, 4}) {
      if (len + std::abs(e) <= l_max) n += rec(len + std::abs(e));
    }
    return n;
  };
  return 2 * rec(0) - 1;
}

long long naive_dimension(int n, int c) {
  long long count = 0;
  std::function<void(int, int)> rec = [&](int k, int total) {
    if (k == n) {
      count += total == c;
      return;
    }
    // total (x) 1 = 1 when total is 0; 0 + 1 when total is 1.
    if (total == 0) {
      rec(k + 1, 1);
    } else {
      rec(k + 1, 0);
      rec(k + 1, 1);
    }
  };
  rec(1, 1);
  return count;
}

}  // namespace oracle
