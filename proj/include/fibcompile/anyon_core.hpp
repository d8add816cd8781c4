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
#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace fibcompile {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

inline constexpr double kPi = 3.14159265358979323846;
/// Entrywise tolerance for U^dagger U = I.
inline constexpr double kUnitarityTolerance = 1e-12;
/// Tolerance used when matching a matrix against a structural form.
inline constexpr double kTargetTolerance = 1e-10;

struct GoldenConstants {
  double tau;       // (sqrt(5) - 1) / 2
  double sqrt_tau;
};

const GoldenConstants& golden();

/// Dense square complex matrix that was checked to be unitary on construction.
class UnitaryMatrix {
 public:
  UnitaryMatrix() = default;
  explicit UnitaryMatrix(Matrix m, double tolerance = kUnitarityTolerance);

  static UnitaryMatrix identity(Eigen::Index dim);

  Eigen::Index dim() const { return m_.rows(); }
  const Matrix& matrix() const { return m_; }
  Complex operator()(Eigen::Index r, Eigen::Index c) const { return m_(r, c); }

  UnitaryMatrix adjoint() const;
  UnitaryMatrix operator*(const UnitaryMatrix& rhs) const;
  UnitaryMatrix pow(int exponent) const;

  /// Largest entrywise deviation of U^dagger U from the identity.
  double unitarity_error() const;

 private:
  struct Unchecked {};
  UnitaryMatrix(Matrix m, Unchecked) : m_(std::move(m)) {}

  Matrix m_;
};

/// Winding number reduced modulo 10; fixes the sector phases of a three-braid.
class WindingClass {
 public:
  constexpr WindingClass() = default;
  static constexpr WindingClass of(long long winding) {
    long long r = winding % 10;
    if (r < 0) r += 10;
    return WindingClass(static_cast<int>(r));
  }
  constexpr int value() const { return w_; }
  constexpr bool operator==(const WindingClass&) const = default;
  constexpr auto operator<=>(const WindingClass&) const = default;

 private:
  constexpr explicit WindingClass(int w) : w_(w) {}
  int w_ = 0;
};

/// Recoupling matrix in the ordering {01, 11, 10}; real symmetric and F*F = I.
UnitaryMatrix f_matrix();
/// Exchange phases diag(R_0, R_1) keyed by the pair's total charge.
UnitaryMatrix r_matrix();
Complex r_phase(int pair_charge);
UnitaryMatrix sigma1();
UnitaryMatrix sigma2();

double operator_norm(const Matrix& m);
double operator_distance(const UnitaryMatrix& u, const UnitaryMatrix& v);

struct PhasedDistance {
  double distance;  // min over phi of ||U - e^{i phi} V||
  double phase;     // minimizing phi in [0, 2 pi)
};
PhasedDistance projective_distance(const UnitaryMatrix& u,
                                   const UnitaryMatrix& v);
PhasedDistance projective_distance(const Matrix& u, const Matrix& v);

struct WindingPhases {
  std::array<Complex, 2> qspin1_prefactors;  // +e^{-iW pi/10}, -e^{-iW pi/10}
  Complex qspin0_phase;                       // e^{i 3W pi/5}
};
WindingPhases winding_phases(WindingClass w);

/// Every winding class whose sector phases are compatible with the 2+1
/// block-diagonal matrix g. Throws InvalidArgument if g is not block diagonal.
std::vector<WindingClass> winding_class_of_target(const UnitaryMatrix& g);

/// Assemble a 3x3 block-diagonal matrix from a 2x2 block and a scalar.
Matrix block_matrix(const Matrix& qspin1_block, Complex qspin0_entry);

}  // namespace fibcompile
