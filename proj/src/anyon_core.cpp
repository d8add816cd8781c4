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

#include "fibcompile/anyon_core.hpp"

#include <cmath>
#include <sstream>

#include "fibcompile/errors.hpp"

namespace fibcompile {

namespace {

Complex expi(double angle) { return std::polar(1.0, angle); }

void require_same_dim(const Matrix& u, const Matrix& v) {
  if (u.rows() != v.rows() || u.cols() != v.cols()) {
    std::ostringstream msg;
    msg << "dimension mismatch: " << u.rows() << "x" << u.cols() << " vs "
        << v.rows() << "x" << v.cols();
    throw DimensionMismatch(msg.str());
  }
}

}  // namespace

const GoldenConstants& golden() {
  static const GoldenConstants constants = [] {
    const double tau = (std::sqrt(5.0) - 1.0) / 2.0;
    return GoldenConstants{tau, std::sqrt(tau)};
  }();
  return constants;
}

UnitaryMatrix::UnitaryMatrix(Matrix m, double tolerance) : m_(std::move(m)) {
  if (m_.rows() != m_.cols()) {
    throw DimensionMismatch("unitary matrix must be square");
  }
  const double err = unitarity_error();
  if (!(err <= tolerance)) {
    std::ostringstream msg;
    msg << "matrix is not unitary: max |U^dagger U - I| = " << err;
    throw InvalidArgument(msg.str());
  }
}

UnitaryMatrix UnitaryMatrix::identity(Eigen::Index dim) {
  return UnitaryMatrix(Matrix::Identity(dim, dim), Unchecked{});
}

UnitaryMatrix UnitaryMatrix::adjoint() const {
  return UnitaryMatrix(m_.adjoint(), Unchecked{});
}

UnitaryMatrix UnitaryMatrix::operator*(const UnitaryMatrix& rhs) const {
  require_same_dim(m_, rhs.m_);
  return UnitaryMatrix(m_ * rhs.m_, Unchecked{});
}

UnitaryMatrix UnitaryMatrix::pow(int exponent) const {
  Matrix base = exponent < 0 ? Matrix(m_.adjoint()) : m_;
  unsigned e = static_cast<unsigned>(exponent < 0 ? -exponent : exponent);
  Matrix result = Matrix::Identity(dim(), dim());
  while (e != 0) {
    if (e & 1u) result = result * base;
    e >>= 1u;
    if (e != 0) base = base * base;
  }
  return UnitaryMatrix(std::move(result), Unchecked{});
}

double UnitaryMatrix::unitarity_error() const {
  const Matrix d = m_.adjoint() * m_ - Matrix::Identity(dim(), dim());
  return d.cwiseAbs().maxCoeff();
}

UnitaryMatrix f_matrix() {
  const auto& g = golden();
  Matrix f = Matrix::Zero(3, 3);
  f(0, 0) = g.tau;
  f(0, 1) = g.sqrt_tau;
  f(1, 0) = g.sqrt_tau;
  f(1, 1) = -g.tau;
  f(2, 2) = 1.0;
  return UnitaryMatrix(f);
}

Complex r_phase(int pair_charge) {
  return pair_charge == 0 ? expi(-4 * kPi / 5) : expi(3 * kPi / 5);
}

UnitaryMatrix r_matrix() {
  Matrix r = Matrix::Zero(2, 2);
  r(0, 0) = r_phase(0);
  r(1, 1) = r_phase(1);
  return UnitaryMatrix(r);
}

UnitaryMatrix sigma1() {
  Matrix s = Matrix::Zero(3, 3);
  s(0, 0) = r_phase(0);
  s(1, 1) = r_phase(1);
  s(2, 2) = r_phase(1);
  return UnitaryMatrix(s);
}

UnitaryMatrix sigma2() {
  const UnitaryMatrix f = f_matrix();
  return f.adjoint() * sigma1() * f;
}

double operator_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

double operator_distance(const UnitaryMatrix& u, const UnitaryMatrix& v) {
  require_same_dim(u.matrix(), v.matrix());
  return operator_norm(u.matrix() - v.matrix());
}

PhasedDistance projective_distance(const Matrix& u, const Matrix& v) {
  require_same_dim(u, v);
  auto objective = [&](double phi) {
    return operator_norm(u - expi(phi) * v);
  };
  constexpr int kGrid = 10000;
  const double step = 2 * kPi / kGrid;
  int best = 0;
  double best_value = objective(0.0);
  for (int k = 1; k < kGrid; ++k) {
    const double value = objective(k * step);
    if (value < best_value) {
      best_value = value;
      best = k;
    }
  }
  // Golden-section refinement on the bracketing grid cells.
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = (best - 1) * step, hi = (best + 1) * step;
  double x1 = hi - inv_phi * (hi - lo), x2 = lo + inv_phi * (hi - lo);
  double f1 = objective(x1), f2 = objective(x2);
  while (hi - lo > 1e-12) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = objective(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = objective(x2);
    }
  }
  double phi = 0.5 * (lo + hi);
  double value = objective(phi);
  if (best_value < value) {
    phi = best * step;
    value = best_value;
  }
  phi = std::fmod(phi, 2 * kPi);
  if (phi < 0) phi += 2 * kPi;
  return {value, phi};
}

PhasedDistance projective_distance(const UnitaryMatrix& u,
                                   const UnitaryMatrix& v) {
  return projective_distance(u.matrix(), v.matrix());
}

WindingPhases winding_phases(WindingClass w) {
  const Complex prefactor = expi(-w.value() * kPi / 10);
  return {{prefactor, -prefactor}, expi(3 * w.value() * kPi / 5)};
}

Matrix block_matrix(const Matrix& qspin1_block, Complex qspin0_entry) {
  Matrix m = Matrix::Zero(3, 3);
  m.topLeftCorner(2, 2) = qspin1_block;
  m(2, 2) = qspin0_entry;
  return m;
}

std::vector<WindingClass> winding_class_of_target(const UnitaryMatrix& g) {
  if (g.dim() != 3) throw DimensionMismatch("expected a 3x3 matrix");
  const Matrix& m = g.matrix();
  const double off = std::max({std::abs(m(0, 2)), std::abs(m(1, 2)),
                               std::abs(m(2, 0)), std::abs(m(2, 1))});
  if (off > kTargetTolerance) {
    throw InvalidArgument("target is not block diagonal (2+1)");
  }
  std::vector<WindingClass> classes;
  const Matrix block = m.topLeftCorner(2, 2);
  for (int w = 0; w < 10; ++w) {
    const WindingClass cls = WindingClass::of(w);
    const WindingPhases phases = winding_phases(cls);
    if (std::abs(m(2, 2) - phases.qspin0_phase) > kTargetTolerance) continue;
    // The sign of the prefactor does not change the determinant.
    const Matrix normalized = block / phases.qspin1_prefactors[0];
    if (std::abs(normalized.determinant() - 1.0) <= kTargetTolerance) {
      classes.push_back(cls);
    }
  }
  return classes;
}

}  // namespace fibcompile
