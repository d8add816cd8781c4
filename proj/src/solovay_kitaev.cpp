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

#include "fibcompile/solovay_kitaev.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <functional>
#include <limits>
#include <memory>

#include "fibcompile/errors.hpp"
#include "fibcompile/su2.hpp"

namespace fibcompile {

namespace {

constexpr char kMagic[8] = {'F', 'I', 'B', 'N', 'E', 'T', '\0', '\0'};

const FusionBasis& three_strand_basis() {
  static const FusionBasis basis = mixed_basis(3);
  return basis;
}

using Mat3 = Eigen::Matrix3cd;

void enumerate_net(int base_length, std::vector<NetEntry>& out) {
  const Mat3 gens[3] = {Mat3::Identity(), sigma1().matrix(), sigma2().matrix()};
  Mat3 powers[3][9];
  for (int g = 1; g <= 2; ++g) {
    for (int n = -4; n <= 4; ++n) {
      Mat3 p = Mat3::Identity();
      const Mat3 step = n >= 0 ? gens[g] : Mat3(gens[g].adjoint());
      for (int r = 0; r < std::abs(n); ++r) p = step * p;
      powers[g][n + 4] = p;
    }
  }
  Weave w;
  std::function<void(const Mat3&, int, int)> rec = [&](const Mat3& m, int length,
                                                      int next_gen) {
    out.push_back({w, UnitaryMatrix(Matrix(m), 1e-11), w.winding()});
    for (int n : {-4, -2, 2, 4}) {
      if (length + std::abs(n) > base_length) continue;
      w.exponents.push_back(n);
      rec(powers[next_gen][n + 4] * m, length + std::abs(n), 3 - next_gen);
      w.exponents.pop_back();
    }
  };
  w.first_gen = 1;
  rec(Mat3::Identity(), 0, 1);
  w.first_gen = 2;
  for (int n : {-4, -2, 2, 4}) {
    if (std::abs(n) > base_length) continue;
    w.exponents = {n};
    rec(powers[2][n + 4], std::abs(n), 1);
  }
}

template <typename T>
void write_pod(std::ostream& os, const T& v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T read_pod(std::istream& is) {
  T v{};
  is.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!is) throw IoError("truncated net file");
  return v;
}

double block_distance_to_identity(const UnitaryMatrix& c) {
  return operator_distance(c, UnitaryMatrix::identity(c.dim()));
}

}  // namespace

EpsilonNet::EpsilonNet(int base_length, std::vector<NetEntry> entries)
    : base_length_(base_length), entries_(std::move(entries)) {
  index();
}

void EpsilonNet::index() {
  std::array<std::vector<KdTree4::Point>, 10> points;
  for (auto& m : members_) m.clear();
  for (std::uint32_t i = 0; i < entries_.size(); ++i) {
    const NetEntry& e = entries_[i];
    const WindingClass w = e.winding_class();
    const Quaternion q = class_quaternion(e.unitary.matrix(), w);
    points[w.value()].push_back({q.w, q.x, q.y, q.z});
    members_[w.value()].push_back(i);
  }
  for (int w = 0; w < 10; ++w) trees_[w] = KdTree4(std::move(points[w]));
}

EpsilonNet EpsilonNet::build(int base_length) {
  if (base_length < 4) throw InvalidArgument("net base length must be >= 4");
  std::vector<NetEntry> entries;
  enumerate_net(base_length, entries);
  return EpsilonNet(base_length, std::move(entries));
}

void EpsilonNet::save(const std::filesystem::path& path) const {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot write net file " + path.string());
  os.write(kMagic, sizeof(kMagic));
  write_pod<std::uint32_t>(os, kFormatVersion);
  write_pod<std::uint32_t>(os, static_cast<std::uint32_t>(base_length_));
  write_pod<std::uint64_t>(os, entries_.size());
  for (const NetEntry& e : entries_) {
    write_pod<std::uint8_t>(os, static_cast<std::uint8_t>(e.weave.exponents.size()));
    write_pod<std::uint8_t>(os, static_cast<std::uint8_t>(e.weave.first_gen));
    for (int n : e.weave.exponents) write_pod<std::int8_t>(os, static_cast<std::int8_t>(n));
    write_pod<std::int32_t>(os, static_cast<std::int32_t>(e.winding));
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) {
        write_pod<double>(os, e.unitary(r, c).real());
        write_pod<double>(os, e.unitary(r, c).imag());
      }
    }
  }
  if (!os) throw IoError("failed while writing net file " + path.string());
}

EpsilonNet EpsilonNet::load(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open net file " + path.string());
  char magic[8];
  is.read(magic, sizeof(magic));
  if (!is || std::memcmp(magic, kMagic, sizeof(magic)) != 0) {
    throw IoError("not a net file: " + path.string());
  }
  const auto version = read_pod<std::uint32_t>(is);
  if (version != kFormatVersion) {
    throw IoError("net file " + path.string() + " has format version " +
                  std::to_string(version) + ", expected " +
                  std::to_string(kFormatVersion));
  }
  const auto base_length = read_pod<std::uint32_t>(is);
  const auto count = read_pod<std::uint64_t>(is);
  std::vector<NetEntry> entries;
  entries.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    NetEntry e;
    const auto size = read_pod<std::uint8_t>(is);
    e.weave.first_gen = read_pod<std::uint8_t>(is);
    for (int k = 0; k < size; ++k) e.weave.exponents.push_back(read_pod<std::int8_t>(is));
    e.winding = read_pod<std::int32_t>(is);
    Matrix m(3, 3);
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) {
        const double re = read_pod<double>(is);
        const double im = read_pod<double>(is);
        m(r, c) = Complex(re, im);
      }
    }
    validate(e.weave);
    e.unitary = UnitaryMatrix(std::move(m), 1e-11);
    entries.push_back(std::move(e));
  }
  return EpsilonNet(static_cast<int>(base_length), std::move(entries));
}

EpsilonNet::Lookup EpsilonNet::nearest(const UnitaryMatrix& target,
                                       WindingClass w) const {
  const KdTree4& tree = trees_[w.value()];
  if (tree.empty()) {
    throw InfeasibleTarget("the net has no entry of winding class " +
                           std::to_string(w.value()));
  }
  const Quaternion q = class_quaternion(target.matrix(), w);
  const KdTree4::Hit hit = tree.nearest({q.w, q.x, q.y, q.z});
  const std::size_t index = members_[w.value()][hit.index];
  return {index, operator_distance(entries_[index].unitary, target)};
}

EpsilonNet::Lookup EpsilonNet::nearest_linear(const UnitaryMatrix& target,
                                              WindingClass w) const {
  const Quaternion q = class_quaternion(target.matrix(), w);
  Lookup best{0, std::numeric_limits<double>::infinity()};
  double best_sq = std::numeric_limits<double>::infinity();
  bool found = false;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i].winding_class() != w) continue;
    const Quaternion e = class_quaternion(entries_[i].unitary.matrix(), w);
    const double d = q.distance(e);
    if (d * d < best_sq) {
      best_sq = d * d;
      best.index = i;
      found = true;
    }
  }
  if (!found) {
    throw InfeasibleTarget("the net has no entry of winding class " +
                           std::to_string(w.value()));
  }
  best.distance = operator_distance(entries_[best.index].unitary, target);
  return best;
}

std::filesystem::path cache_directory() {
  if (const char* dir = std::getenv("FIBCOMPILE_CACHE_DIR"); dir && *dir) {
    return dir;
  }
  if (const char* home = std::getenv("HOME"); home && *home) {
    return std::filesystem::path(home) / ".cache" / "fibcompile";
  }
  return std::filesystem::temp_directory_path() / "fibcompile";
}

std::filesystem::path default_net_path(int base_length) {
  return cache_directory() / ("net_L" + std::to_string(base_length) + "_v" +
                              std::to_string(EpsilonNet::kFormatVersion) + ".bin");
}

EpsilonNet load_or_build_net(int base_length) {
  const auto path = default_net_path(base_length);
  if (std::filesystem::exists(path)) {
    try {
      EpsilonNet net = EpsilonNet::load(path);
      if (net.base_length() == base_length) return net;
    } catch (const IoError&) {
      // Stale or damaged cache: rebuild below.
    }
  }
  EpsilonNet net = EpsilonNet::build(base_length);
  try {
    net.save(path);
  } catch (const IoError&) {
    // An unwritable cache directory only costs a rebuild next time.
  }
  return net;
}

CommutatorPair gc_decompose(const UnitaryMatrix& c, double gauge) {
  if (c.dim() != 3) throw DimensionMismatch("commutator target must be 3x3");
  const Matrix& m = c.matrix();
  if (std::abs(m(2, 2) - 1.0) > 1e-9 || std::abs(m(0, 2)) > 1e-9 ||
      std::abs(m(1, 2)) > 1e-9 || std::abs(m(2, 0)) > 1e-9 ||
      std::abs(m(2, 1)) > 1e-9) {
    throw InvalidArgument("commutator target must have zero-winding block form");
  }
  const double dist = block_distance_to_identity(c);
  if (dist > 0.5) {
    throw NetTooCoarse("commutator target is " + std::to_string(dist) +
                           " from the identity (limit 0.5)",
                       0);
  }
  const Quaternion q = Quaternion::from_su2(m.topLeftCorner(2, 2)).normalized();
  const double vnorm = std::sqrt(q.x * q.x + q.y * q.y + q.z * q.z);
  if (vnorm == 0.0) {
    return {UnitaryMatrix::identity(3), UnitaryMatrix::identity(3), 0.0};
  }
  // Rotation angle theta of C: cos(theta/2) = q.w.
  const double half_theta = std::atan2(vnorm, q.w);
  const double s = std::sqrt((1.0 - std::cos(half_theta)) / 2.0);  // sin^2(phi/2)
  const double phi = 2.0 * std::asin(std::sqrt(s));
  const Quaternion v = Quaternion::rotation(phi, 1, 0, 0);
  const Quaternion w = Quaternion::rotation(phi, 0, 1, 0);
  const Quaternion comm = v * w * v.conj() * w.conj();
  const double cn = std::sqrt(comm.x * comm.x + comm.y * comm.y + comm.z * comm.z);
  const double a[3] = {comm.x / cn, comm.y / cn, comm.z / cn};
  const double b[3] = {q.x / vnorm, q.y / vnorm, q.z / vnorm};
  // Rotation taking axis a onto axis b.
  double axis[3] = {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
                    a[0] * b[1] - a[1] * b[0]};
  const double sin_t = std::sqrt(axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]);
  const double cos_t = a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
  Quaternion frame;
  if (sin_t > 1e-15) {
    frame = Quaternion::rotation(std::atan2(sin_t, cos_t), axis[0] / sin_t,
                                 axis[1] / sin_t, axis[2] / sin_t);
  } else if (cos_t < 0) {
    // Antiparallel: any axis perpendicular to a.
    const double px = std::abs(a[0]) < 0.9 ? 1.0 : 0.0;
    const double py = 1.0 - px;
    double p[3] = {py * a[2], -px * a[2], px * a[1] - py * a[0]};
    const double pn = std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
    frame = Quaternion::rotation(kPi, p[0] / pn, p[1] / pn, p[2] / pn);
  }
  frame = Quaternion::rotation(gauge, b[0], b[1], b[2]) * frame;
  const Quaternion qa = frame * v * frame.conj();
  const Quaternion qb = frame * w * frame.conj();
  return {UnitaryMatrix(block_matrix(qa.to_matrix(), 1.0), 1e-12),
          UnitaryMatrix(block_matrix(qb.to_matrix(), 1.0), 1e-12), phi};
}

BaseApproximator net_approximator(const EpsilonNet& net) {
  auto owned = std::make_shared<const EpsilonNet>(net);
  return [owned](const UnitaryMatrix& target, WindingClass w) {
    const EpsilonNet::Lookup hit = owned->nearest(target, w);
    return to_braid_word((*owned)[hit.index].weave);
  };
}

namespace {

struct SkRun {
  const SkConfig& config;
  std::vector<SkLevel>* levels = nullptr;

  BraidWord approx(const UnitaryMatrix& u, WindingClass w, int n, bool top) {
    const auto t0 = std::chrono::steady_clock::now();
    BraidWord word;
    if (n == 0) {
      word = canonicalize(config.base(u, w));
    } else {
      const BraidWord prev = approx(u, w, n - 1, top);
      const UnitaryMatrix uprev = evaluate_braid(prev, three_strand_basis());
      const UnitaryMatrix delta = u * uprev.adjoint();
      const int samples = std::max(1, config.frame_samples);
      double best = std::numeric_limits<double>::infinity();
      for (int k = 0; k < samples; ++k) {
        CommutatorPair pair;
        try {
          pair = gc_decompose(delta, 2.0 * kPi * k / samples);
        } catch (const NetTooCoarse& e) {
          throw NetTooCoarse(e.detail(), n);
        }
        const BraidWord a = approx(pair.a, WindingClass::of(0), n - 1, false);
        const BraidWord b = approx(pair.b, WindingClass::of(0), n - 1, false);
        BraidWord candidate =
            canonicalize(prev.then(b.inverse()).then(a.inverse()).then(b).then(a));
        if (samples == 1) {
          word = std::move(candidate);
          break;
        }
        const double d =
            operator_distance(evaluate_braid(candidate, three_strand_basis()), u);
        if (d < best) {
          best = d;
          word = std::move(candidate);
        }
      }
    }
    if (top && levels) {
      const UnitaryMatrix got = evaluate_braid(word, three_strand_basis());
      const double seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      levels->push_back({n, operator_distance(got, u), word.length(),
                         word.winding(), seconds});
      if (n == 0 && config.coarseness_guard > 0 &&
          levels->back().distance >= config.coarseness_guard &&
          levels->size() == 1 && n < depth) {
        throw NetTooCoarse("level-0 distance " +
                               std::to_string(levels->back().distance) +
                               " is not below the coarseness guard " +
                               std::to_string(config.coarseness_guard),
                           0);
      }
    }
    return word;
  }

  int depth = 0;
};

}  // namespace

SkResult sk_improve(const UnitaryMatrix& target, const SkConfig& config) {
  if (target.dim() != 3) throw DimensionMismatch("SK target must be 3x3");
  if (config.depth < 0 || config.depth > 6) {
    throw InvalidArgument("SK depth must be between 0 and 6");
  }
  if (!config.base) throw InvalidArgument("SK needs a base approximator");
  const std::vector<WindingClass> classes = winding_class_of_target(target);
  if (classes.empty()) {
    throw InfeasibleTarget(
        "target matches no winding class: a braid has q-spin-0 entry "
        "e^{i 3 W pi/5} and q-spin-1 block determinant e^{-i W pi/5}");
  }
  SkResult result;
  SkRun run{config, &result.levels};
  run.depth = config.depth;
  result.word = run.approx(target, classes.front(), config.depth, true);
  result.unitary = evaluate_braid(result.word, three_strand_basis());
  result.distance = operator_distance(result.unitary, target);
  return result;
}

SkResult sk_improve_target(const SearchTarget& target, const SkConfig& config) {
  const FusionBasis& basis = three_strand_basis();
  const BraidWord s = start_letters(target.start);
  const BraidWord e = end_letters(target.end);
  const UnitaryMatrix su = evaluate_braid(s, basis);
  const UnitaryMatrix eu = evaluate_braid(e, basis);
  const UnitaryMatrix stripped = eu.adjoint() * target.matrix * su.adjoint();
  SkResult inner = sk_improve(stripped, config);
  SkResult out;
  out.word = canonicalize(s.then(inner.word).then(e));
  out.unitary = evaluate_braid(out.word, basis);
  out.distance = operator_distance(out.unitary, target.matrix);
  out.levels = std::move(inner.levels);
  return out;
}

}  // namespace fibcompile
