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

// fibcompile command-line front end.
//
// Exit codes: 0 success, 1 usage or malformed input, 2 infeasible target,
// 3 I/O failure, 4 epsilon net too coarse.

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include "CLI11.hpp"

#include "fibcompile/errors.hpp"
#include "fibcompile/gate_assembly.hpp"
#include "fibcompile/search.hpp"
#include "fibcompile/serialize.hpp"
#include "fibcompile/solovay_kitaev.hpp"

using namespace fibcompile;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitIo = 3;
constexpr int kExitCoarse = 4;

// Beyond these depths a run takes more than a few minutes.
constexpr long long kDeskDepthFirst = 36;
constexpr long long kDeskMeetInMiddle = 44;

struct TargetOptions {
  std::string name = "ix";
  std::string matrix_file;
  int m = 2;
  double alpha = kPi;
  std::string start = "middle";
  std::string end = "middle";
  std::string mode = "exact";
};

struct RunConfig {
  TargetOptions target;
  long long l_max = 24;
  int keep = 1;
  long long min_length = 0;
  int depth = 1;
  int net_length = 20;
  std::string net_path;
  bool build_net = false;
  int frame_samples = 8;
  std::string construction = "injection-cnot";
  bool ideal = false;
  int sk_depth = 0;
  std::string braid_file;
  std::string pair = "lower";
  double budget = 0;
  std::string output;
  int workers = 1;
  bool long_run = false;
};

void add_target_options(CLI::App* cmd, TargetOptions& t) {
  cmd->add_option("--target", t.name,
                  "Library target: ix, identity, injection, effective-braiding, f, phase")
      ->capture_default_str();
  cmd->add_option("--matrix", t.matrix_file, "3x3 target matrix JSON (overrides --target)");
  cmd->add_option("--m", t.m, "Power for effective-braiding")->capture_default_str();
  cmd->add_option("--alpha", t.alpha, "Phase angle for the phase target")
      ->default_str("3.141592653589793");
  cmd->add_option("--start", t.start, "Weft start for --matrix: top, middle, bottom")
      ->capture_default_str();
  cmd->add_option("--end", t.end, "Weft end for --matrix")->capture_default_str();
  cmd->add_option("--mode", t.mode, "Distance: exact or projective")->capture_default_str();
}

void add_common(CLI::App* cmd, RunConfig& rc) {
  cmd->add_option("-o,--output", rc.output, "Output file (default stdout)");
  cmd->add_option("--workers", rc.workers, "Worker threads")->capture_default_str();
  cmd->add_flag("--long-run", rc.long_run, "Allow runs beyond desk scale");
}

SearchTarget resolve_target(const TargetOptions& t) {
  const DistanceMode mode = parse_distance_mode(t.mode);
  SearchTarget target;
  if (!t.matrix_file.empty()) {
    const Json j = read_json_file(t.matrix_file);
    const Matrix m = matrix_from_json(j.contains("ideal_target") ? j["ideal_target"] : j);
    if (m.rows() != 3 || m.cols() != 3) {
      throw DimensionMismatch("weave targets are 3x3 matrices");
    }
    target = custom_target(UnitaryMatrix(m, 1e-9), parse_position(t.start),
                           parse_position(t.end), mode);
    target.name = t.matrix_file;
    return target;
  }
  target = target_library(t.name, t.m, t.alpha);
  target.mode = mode;
  return target;
}

void require_desk_scale(long long l_max, bool mitm, bool long_run) {
  const long long limit = mitm ? kDeskMeetInMiddle : kDeskDepthFirst;
  if (l_max > limit && !long_run) {
    throw InvalidArgument("--lmax " + std::to_string(l_max) +
                          " is beyond desk scale (" + std::to_string(limit) +
                          " for this search); pass --long-run");
  }
}

bool uses_mitm(const SearchTarget& t, const RunConfig& rc) {
  return t.mode == DistanceMode::Exact && rc.keep == 1 && rc.min_length == 0;
}

void emit(const RunConfig& rc, const std::string& text) {
  if (rc.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(rc.output);
  if (!out) throw IoError("cannot write '" + rc.output + "'");
  out << text;
  if (!out) throw IoError("write to '" + rc.output + "' failed");
}

void emit(const RunConfig& rc, const Json& j) { emit(rc, j.dump(2) + "\n"); }

int cmd_search(const RunConfig& rc) {
  const SearchTarget target = resolve_target(rc.target);
  require_desk_scale(rc.l_max, uses_mitm(target, rc), rc.long_run);
  SearchOptions opts;
  opts.keep = rc.keep;
  opts.min_length = rc.min_length;
  opts.workers = rc.workers;
  const std::vector<SearchResult> results = brute_force_search(target, rc.l_max, opts);
  Json list = Json::array();
  for (const SearchResult& r : results) list.push_back(to_json(r));
  emit(rc, Json{{"target", target.name},
                {"mode", to_string(target.mode)},
                {"l_max", rc.l_max},
                {"target_matrix", to_json(target.matrix.matrix())},
                {"results", list}});
  return 0;
}

int cmd_scaling(const RunConfig& rc) {
  const SearchTarget target = resolve_target(rc.target);
  require_desk_scale(rc.l_max, target.mode == DistanceMode::Exact, rc.long_run);
  SearchOptions opts;
  opts.workers = rc.workers;
  std::ostringstream csv;
  csv << "L,epsilon,ln_inv_epsilon\n" << std::setprecision(17);
  for (const ScalingRow& row : scaling_table(target, rc.l_max, opts)) {
    csv << row.length << ',' << row.epsilon << ',' << std::log(1.0 / row.epsilon) << '\n';
  }
  emit(rc, csv.str());
  return 0;
}

std::filesystem::path net_file(const RunConfig& rc) {
  if (rc.net_path.empty()) return default_net_path(rc.net_length);
  return rc.net_path;
}

EpsilonNet obtain_net(const RunConfig& rc) {
  const std::filesystem::path path = net_file(rc);
  if (std::filesystem::exists(path)) {
    EpsilonNet net = EpsilonNet::load(path);
    if (!rc.net_path.empty() || net.base_length() == rc.net_length) return net;
  }
  if (!rc.build_net) {
    throw IoError("no epsilon net at '" + path.string() +
                  "'; run build-net or pass --build-net");
  }
  EpsilonNet net = EpsilonNet::build(rc.net_length);
  if (!path.parent_path().empty()) std::filesystem::create_directories(path.parent_path());
  net.save(path);
  return net;
}

int cmd_build_net(const RunConfig& rc) {
  RunConfig forced = rc;
  forced.build_net = true;
  const std::filesystem::path path = net_file(rc);
  if (std::filesystem::exists(path)) std::filesystem::remove(path);
  const EpsilonNet net = obtain_net(forced);
  emit(rc, Json{{"path", path.string()},
                {"base_length", net.base_length()},
                {"entries", net.size()},
                {"format_version", EpsilonNet::kFormatVersion}});
  return 0;
}

int cmd_sk(const RunConfig& rc) {
  SearchTarget target = resolve_target(rc.target);
  target.mode = DistanceMode::Exact;
  const EpsilonNet net = obtain_net(rc);
  SkConfig config;
  config.depth = rc.depth;
  config.base = net_approximator(net);
  config.frame_samples = rc.frame_samples;
  const SkResult r = sk_improve_target(target, config);
  Json j = to_json(r);
  j["target"] = target.name;
  j["net_base_length"] = net.base_length();
  j["winding"] = r.word.winding();
  emit(rc, j);
  return 0;
}

Slot component(const std::string& role, const SearchTarget& ideal, const RunConfig& rc,
               const EpsilonNet* net) {
  if (rc.ideal) return Slot::ideal(role, ideal);
  SearchOptions opts;
  opts.workers = rc.workers;
  const SearchResult found = brute_force_search(ideal, rc.l_max, opts).front();
  if (rc.sk_depth == 0) return Slot::from_weave(role, found.weave, ideal);
  // SK output is a general braid, not a single-weft weave; keep its matrix.
  SkConfig config;
  config.depth = rc.sk_depth;
  config.frame_samples = rc.frame_samples;
  config.base = net_approximator(*net);
  const SkResult r = sk_improve_target(ideal, config);
  Slot s = Slot::ideal(role, ideal);
  s.local = r.unitary;
  s.distance = r.distance;
  return s;
}

Json correction(const std::string& name, const std::string& qubit, const Matrix& u,
                const RunConfig& rc, const EpsilonNet* net) {
  SingleQubitOptions opts;
  opts.mode = DistanceMode::Projective;
  opts.l_max = std::min<long long>(rc.l_max, kDeskDepthFirst);
  opts.sk_depth = rc.sk_depth;
  opts.net = net;
  opts.workers = rc.workers;
  Json j = to_json(compile_single_qubit(u, opts));
  j["name"] = name;
  j["qubit"] = qubit;
  j["target"] = to_json(u);
  return j;
}

int cmd_compile2q(const RunConfig& rc) {
  const Construction c = parse_construction(rc.construction);
  require_desk_scale(rc.l_max, true, rc.long_run);
  std::optional<EpsilonNet> net;
  if (rc.sk_depth > 0) net = obtain_net(rc);
  const EpsilonNet* net_ptr = net ? &*net : nullptr;
  AssembledGate gate;
  Json corrections = Json::array();
  switch (c) {
    case Construction::InjectionCnot:
      gate = assemble_injection_cnot(component("injection", injection_target(), rc, net_ptr),
                                     component("middle", ix_target(), rc, net_ptr));
      if (!rc.ideal) {
        corrections.push_back(
            correction("rz_minus_half_pi", "control", rz_minus_half_pi(), rc, net_ptr));
      }
      break;
    case Construction::EffectiveBraiding:
      gate = assemble_effective_braiding(
          component("effective-braiding", effective_braiding_target(rc.target.m), rc,
                    net_ptr),
          rc.target.m);
      break;
    case Construction::FWeaveCz:
      gate = assemble_fweave_cz(component("f", f_target(), rc, net_ptr),
                                component("phase", phase_target(rc.target.alpha), rc, net_ptr),
                                rc.target.alpha);
      if (!rc.ideal) {
        corrections.push_back(
            correction("ry_half_pi", "target", ry_half_pi(), rc, net_ptr));
        corrections.push_back(correction("ry_minus_half_pi", "target",
                                         ry_half_pi().adjoint(), rc, net_ptr));
      }
      break;
  }
  const GateReport report = verify(gate, gate.ideal_target);
  emit(rc, Json{{"gate", to_json(gate)},
                {"report", to_json(report)},
                {"corrections", corrections}});
  return 0;
}

BraidWord braid_from_file(const std::string& path) {
  const Json j = read_json_file(path);
  if (j.contains("word")) return braid_from_json(j);
  if (j.contains("braid")) return braid_from_json(j["braid"]);
  if (j.contains("gate") && j["gate"].contains("braid")) {
    return braid_from_json(j["gate"]["braid"]);
  }
  if (j.contains("results") && !j["results"].empty()) {
    return braid_from_json(j["results"][0]["braid"]);
  }
  throw InvalidArgument("'" + path + "' holds no braid word");
}

Matrix target_from_file(const std::string& path) {
  const Json j = read_json_file(path);
  if (j.contains("data")) return matrix_from_json(j);
  if (j.contains("target_matrix")) return matrix_from_json(j["target_matrix"]);
  if (j.contains("gate")) return matrix_from_json(j["gate"]["ideal_target"]);
  if (j.contains("ideal_target")) return matrix_from_json(j["ideal_target"]);
  throw InvalidArgument("'" + path + "' holds no target matrix");
}

int cmd_verify(const RunConfig& rc) {
  if (rc.braid_file.empty()) throw InvalidArgument("verify needs --braid");
  const BraidWord word = canonicalize(braid_from_file(rc.braid_file));
  Matrix target;
  if (!rc.target.matrix_file.empty()) {
    target = target_from_file(rc.target.matrix_file);
  } else {
    target = target_library(rc.target.name, rc.target.m, rc.target.alpha).matrix.matrix();
  }
  if (word.strands == 3) {
    const UnitaryMatrix u = evaluate_braid(word, mixed_basis(3));
    Json j = {{"strands", 3}, {"length", word.length()}, {"winding", word.winding()}};
    if (target.rows() == 3 && target.cols() == 3) {
      j["distance"] = operator_norm(u.matrix() - target);
      j["projective_distance"] =
          projective_distance(Matrix(u.matrix().topLeftCorner(2, 2)),
                              Matrix(target.topLeftCorner(2, 2)))
              .distance;
    } else if (target.rows() == 2 && target.cols() == 2) {
      j["projective_distance"] =
          projective_distance(Matrix(u.matrix().topLeftCorner(2, 2)), target).distance;
    } else {
      throw DimensionMismatch("a three-strand braid needs a 2x2 or 3x3 target");
    }
    j["unitary"] = to_json(u.matrix());
    emit(rc, j);
    return 0;
  }
  if (word.strands != kTwoQubitStrands || target.rows() != 4 || target.cols() != 4) {
    throw DimensionMismatch("verify takes a 3-strand braid with a 3x3 or 2x2 target, "
                            "or a 6-strand braid with a 4x4 target");
  }
  const TargetPair pair = rc.pair == "upper" ? TargetPair::Upper : TargetPair::Lower;
  if (rc.pair != "upper" && rc.pair != "lower") {
    throw InvalidArgument("--pair must be lower or upper");
  }
  const GateReport report =
      verify_word(word, UnitaryMatrix(target, 1e-9), pair, rc.budget);
  Json j = to_json(report);
  j["length"] = word.length();
  emit(rc, j);
  return 0;
}

void report_error(const char* kind, const std::string& message,
                  std::optional<int> level = std::nullopt) {
  Json j = {{"error", kind}, {"message", message}};
  if (level) j["level"] = *level;
  std::cerr << j.dump() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Compile quantum gates into Fibonacci anyon braids"};
  app.set_config("--config", "", "TOML config; flags given on the command line win");
  app.set_help_all_flag("--help-all");
  app.require_subcommand(1);
  RunConfig rc;
  rc.workers = std::max(1u, std::thread::hardware_concurrency());
  bool dump_config = false;
  app.add_flag("--dump-config", dump_config, "Print the effective config and exit")
      ->configurable(false);

  auto* search = app.add_subcommand("search", "Brute-force weave search");
  add_target_options(search, rc.target);
  add_common(search, rc);
  search->add_option("--lmax", rc.l_max, "Maximum weave length")->capture_default_str();
  search->add_option("--keep", rc.keep, "Number of results")->capture_default_str();
  search->add_option("--min-length", rc.min_length, "Minimum weave length")
      ->capture_default_str();

  auto* scaling = app.add_subcommand("scaling", "Best epsilon against weave length (CSV)");
  add_target_options(scaling, rc.target);
  add_common(scaling, rc);
  scaling->add_option("--lmax", rc.l_max, "Maximum weave length")->capture_default_str();

  auto add_net = [&](CLI::App* cmd) {
    cmd->add_option("--net", rc.net_path, "Epsilon-net file (default: cache directory)");
    cmd->add_option("--net-length", rc.net_length, "Epsilon-net base length L0")
        ->capture_default_str();
    cmd->add_flag("--build-net", rc.build_net, "Build the net when it is missing");
    cmd->add_option("--frame-samples", rc.frame_samples,
                    "Commutator gauge angles tried per SK step")
        ->capture_default_str();
  };

  auto* sk = app.add_subcommand("sk", "Solovay-Kitaev improvement over an epsilon net");
  add_target_options(sk, rc.target);
  add_common(sk, rc);
  add_net(sk);
  sk->add_option("--depth", rc.depth, "Recursion depth (0-6)")->capture_default_str();

  auto* build = app.add_subcommand("build-net", "Build and cache an epsilon net");
  add_common(build, rc);
  add_net(build);

  auto* c2q = app.add_subcommand("compile2q", "Assemble a two-qubit gate on six strands");
  add_common(c2q, rc);
  add_net(c2q);
  c2q->add_option("--construction", rc.construction,
                  "injection-cnot, effective-braiding or fweave-cz")
      ->capture_default_str();
  c2q->add_flag("--ideal", rc.ideal, "Use exact component matrices instead of weaves");
  c2q->add_option("--lmax", rc.l_max, "Component search depth (44 with --long-run)")
      ->capture_default_str();
  c2q->add_option("--sk-depth", rc.sk_depth, "SK levels applied to each component");
  c2q->add_option("--m", rc.target.m, "Power for effective-braiding")->capture_default_str();
  c2q->add_option("--alpha", rc.target.alpha, "Phase angle for fweave-cz")
      ->default_str("3.141592653589793");

  auto* ver = app.add_subcommand("verify", "Evaluate a braid against a target");
  add_common(ver, rc);
  ver->add_option("--braid", rc.braid_file, "Braid JSON or command output")->required();
  ver->add_option("--target", rc.target.name, "Library target for 3-strand braids")
      ->capture_default_str();
  ver->add_option("--matrix", rc.target.matrix_file, "Target matrix JSON or command output");
  ver->add_option("--m", rc.target.m, "Power for effective-braiding")->capture_default_str();
  ver->add_option("--alpha", rc.target.alpha, "Phase angle for the phase target")
      ->default_str("3.141592653589793");
  ver->add_option("--pair", rc.pair, "Target pair for 6-strand braids: lower or upper")
      ->capture_default_str();
  ver->add_option("--budget", rc.budget, "Error budget for the sector checks")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }
  if (dump_config) {
    for (const CLI::App* sub : app.get_subcommands()) {
      std::cout << '[' << sub->get_name() << "]\n" << sub->config_to_str(true, false);
    }
    return 0;
  }
  if (c2q->parsed() && !c2q->count("--lmax") && rc.long_run) rc.l_max = 44;

  try {
    if (search->parsed()) return cmd_search(rc);
    if (scaling->parsed()) return cmd_scaling(rc);
    if (sk->parsed()) return cmd_sk(rc);
    if (build->parsed()) return cmd_build_net(rc);
    if (c2q->parsed()) return cmd_compile2q(rc);
    if (ver->parsed()) return cmd_verify(rc);
  } catch (const InfeasibleTarget& e) {
    report_error("infeasible", e.what());
    return kExitInfeasible;
  } catch (const NetTooCoarse& e) {
    report_error("net_too_coarse", e.what(), e.level());
    return kExitCoarse;
  } catch (const IoError& e) {
    report_error("io", e.what());
    return kExitIo;
  } catch (const std::filesystem::filesystem_error& e) {
    report_error("io", e.what());
    return kExitIo;
  } catch (const Error& e) {
    report_error("invalid", e.what());
    return kExitUsage;
  }
  return kExitUsage;
}
