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

#include <cmath>

#include "fibcompile/anyon_core.hpp"

namespace fibcompile {

/// Unit quaternion (w, x, y, z) for the SU(2) element w*I - i(x sx + y sy + z sz).
/// The operator-norm distance between two SU(2) matrices equals the Euclidean
/// distance between their quaternions.
struct Quaternion {
  double w = 1, x = 0, y = 0, z = 0;

  friend Quaternion operator*(const Quaternion& a, const Quaternion& b) {
    return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
            a.w * b.x + b.w * a.x + a.y * b.z - a.z * b.y,
            a.w * b.y + b.w * a.y + a.z * b.x - a.x * b.z,
            a.w * b.z + b.w * a.z + a.x * b.y - a.y * b.x};
  }
  Quaternion conj() const { return {w, -x, -y, -z}; }
  Quaternion operator-() const { return {-w, -x, -y, -z}; }
  double dot(const Quaternion& o) const {
    return w * o.w + x * o.x + y * o.y + z * o.z;
  }
  double distance(const Quaternion& o) const {
    const double dw = w - o.w, dx = x - o.x, dy = y - o.y, dz = z - o.z;
    return std::sqrt(dw * dw + dx * dx + dy * dy + dz * dz);
  }
  double norm() const { return std::sqrt(dot(*this)); }
  Quaternion normalized() const {
    const double n = norm();
    return {w / n, x / n, y / n, z / n};
  }

  static Quaternion rotation(double angle, double nx, double ny, double nz) {
    const double s = std::sin(angle / 2);
    return {std::cos(angle / 2), s * nx, s * ny, s * nz};
  }
  /// Rotation angle in [0, 2 pi] on the Bloch sphere.
  double angle() const { return 2 * std::atan2(std::sqrt(x * x + y * y + z * z), w); }

  /// Quaternion of a 2x2 matrix assumed to be in SU(2).
  static Quaternion from_su2(const Matrix& q) {
    return {0.5 * (q(0, 0) + q(1, 1)).real(),
            -0.5 * (q(0, 1) + q(1, 0)).imag(),
            0.5 * (q(1, 0) - q(0, 1)).real(),
            0.5 * (q(1, 1) - q(0, 0)).imag()};
  }
  Matrix to_matrix() const {
    Matrix m(2, 2);
    m(0, 0) = Complex(w, -z);
    m(0, 1) = Complex(-y, -x);
    m(1, 0) = Complex(y, -x);
    m(1, 1) = Complex(w, z);
    return m;
  }
};

/// A 2x2 unitary written as phase * SU(2). The phase is fixed up to sign.
struct PhasedSu2 {
  Complex phase;
  Quaternion q;

  static PhasedSu2 from_unitary(const Matrix& block) {
    const Complex det = block(0, 0) * block(1, 1) - block(0, 1) * block(1, 0);
    const Complex p = std::sqrt(det);
    return {p, Quaternion::from_su2(block / p).normalized()};
  }
};

/// Exact operator-norm distance between p1*Q1 and p2*Q2 using the eigenangles
/// of Q1^dagger Q2; well conditioned for nearby arguments.
inline double phased_su2_distance(Complex p1, const Quaternion& q1, Complex p2,
                                  const Quaternion& q2) {
  const double chord = q1.distance(q2);
  const double half = 2 * std::asin(std::min(1.0, chord / 2));
  const double psi = std::arg(p2 / p1);
  return std::max(std::abs(2 * std::sin((psi + half) / 2)),
                  std::abs(2 * std::sin((psi - half) / 2)));
}

}  // namespace fibcompile
