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

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fibcompile/errors.hpp"
#include "fibcompile/gate_assembly.hpp"
#include "fibcompile/search.hpp"
#include "fibcompile/serialize.hpp"
#include "fibcompile/solovay_kitaev.hpp"

namespace py = pybind11;
using namespace fibcompile;

namespace {

Charge charge_arg(int c) {
  if (c != 0 && c != 1) throw InvalidArgument("charge must be 0 or 1");
  return charge(c);
}

BraidWord word_from(int strands, const std::vector<std::pair<int, int>>& letters) {
  BraidWord w{strands, {}};
  for (const auto& [g, p] : letters) w.letters.push_back({g, p});
  return w;
}

std::vector<std::pair<int, int>> letters_of(const BraidWord& w) {
  std::vector<std::pair<int, int>> out;
  for (const Letter& l : w.letters) out.emplace_back(l.gen, l.pow);
  return out;
}

SearchTarget make_target(const std::string& name, int m, double alpha,
                         const std::string& mode) {
  SearchTarget t = target_library(name, m, alpha);
  t.mode = parse_distance_mode(mode);
  return t;
}

Slot make_slot(const std::string& role, const SearchTarget& ideal, bool exact,
               long long l_max) {
  if (exact) return Slot::ideal(role, ideal);
  const SearchResult r = brute_force_search(ideal, l_max, {}).front();
  return Slot::from_weave(role, r.weave, ideal);
}

}  // namespace

PYBIND11_MODULE(_fibcompile, m) {
  m.doc() = "Fibonacci anyon braid compiler";

  // Translators run most recent first, so the base class goes first.
  const auto& base = py::register_exception<Error>(m, "Error", PyExc_ValueError);
  py::register_exception<InfeasibleTarget>(m, "InfeasibleTarget", base.ptr());
  py::register_exception<NetTooCoarse>(m, "NetTooCoarse", base.ptr());
  py::register_exception<IoError>(m, "IoError", base.ptr());

  m.def("f_matrix", [] { return f_matrix().matrix(); });
  m.def("sigma1", [] { return sigma1().matrix(); });
  m.def("sigma2", [] { return sigma2().matrix(); });
  m.def("basis_dimension",
        [](int n, int c) { return enumerate_basis(n, charge_arg(c)).dim(); },
        py::arg("n"), py::arg("total"));

  m.def(
      "evaluate_braid",
      [](int strands, const std::vector<std::pair<int, int>>& letters, int total) {
        const BraidWord w = word_from(strands, letters);
        const FusionBasis basis =
            strands == 3 && total < 0 ? mixed_basis(3) : enumerate_basis(strands, charge_arg(total));
        return evaluate_braid(w, basis).matrix();
      },
      py::arg("strands"), py::arg("letters"), py::arg("total") = -1,
      "Unitary of a word given as (generator, power) pairs in time order. "
      "For three strands the default basis is {01, 11, 10}.");
  m.def(
      "canonicalize",
      [](int strands, const std::vector<std::pair<int, int>>& letters) {
        return letters_of(canonicalize(word_from(strands, letters)));
      },
      py::arg("strands"), py::arg("letters"));
  m.def(
      "braid_to_json",
      [](int strands, const std::vector<std::pair<int, int>>& letters) {
        return to_json(word_from(strands, letters)).dump();
      },
      py::arg("strands"), py::arg("letters"));

  m.def(
      "_search",
      [](const std::string& target, long long l_max, const std::string& mode, int m,
         double alpha, int keep, int workers) {
        SearchOptions opts;
        opts.keep = keep;
        opts.workers = workers;
        py::gil_scoped_release release;
        Json list = Json::array();
        for (const SearchResult& r :
             brute_force_search(make_target(target, m, alpha, mode), l_max, opts)) {
          list.push_back(to_json(r));
        }
        return list.dump();
      },
      py::arg("target"), py::arg("l_max"), py::arg("mode") = "exact", py::arg("m") = 2,
      py::arg("alpha") = kPi, py::arg("keep") = 1, py::arg("workers") = 1);

  m.def(
      "_scaling",
      [](const std::string& target, long long l_max, int workers) {
        SearchOptions opts;
        opts.workers = workers;
        py::gil_scoped_release release;
        std::vector<std::pair<long long, double>> rows;
        for (const ScalingRow& r : scaling_table(make_target(target, 2, kPi, "exact"),
                                                 l_max, opts)) {
          rows.emplace_back(r.length, r.epsilon);
        }
        return rows;
      },
      py::arg("target"), py::arg("l_max"), py::arg("workers") = 1);

  m.def(
      "_sk",
      [](const std::string& target, int depth, int net_length, int frame_samples) {
        py::gil_scoped_release release;
        const EpsilonNet net = EpsilonNet::build(net_length);
        SkConfig config;
        config.depth = depth;
        config.frame_samples = frame_samples;
        config.base = net_approximator(net);
        return to_json(sk_improve_target(make_target(target, 2, kPi, "exact"), config))
            .dump();
      },
      py::arg("target"), py::arg("depth"), py::arg("net_length") = 16,
      py::arg("frame_samples") = 8);

  m.def(
      "_compile2q",
      [](const std::string& construction, bool ideal, long long l_max, int m,
         double alpha) {
        py::gil_scoped_release release;
        AssembledGate gate;
        switch (parse_construction(construction)) {
          case Construction::InjectionCnot:
            gate = assemble_injection_cnot(
                make_slot("injection", injection_target(), ideal, l_max),
                make_slot("middle", ix_target(), ideal, l_max));
            break;
          case Construction::EffectiveBraiding:
            gate = assemble_effective_braiding(
                make_slot("effective-braiding", effective_braiding_target(m), ideal, l_max),
                m);
            break;
          case Construction::FWeaveCz:
            gate = assemble_fweave_cz(make_slot("f", f_target(), ideal, l_max),
                                      make_slot("phase", phase_target(alpha), ideal, l_max),
                                      alpha);
            break;
        }
        return Json{{"gate", to_json(gate)},
                    {"report", to_json(verify(gate, gate.ideal_target))}}
            .dump();
      },
      py::arg("construction"), py::arg("ideal") = false, py::arg("l_max") = 16,
      py::arg("m") = 2, py::arg("alpha") = kPi);

  m.def(
      "_compile_single_qubit",
      [](const Matrix& u, const std::string& mode, long long l_max, int sk_depth) {
        SingleQubitOptions opts;
        opts.mode = parse_distance_mode(mode);
        opts.l_max = l_max;
        opts.sk_depth = sk_depth;
        py::gil_scoped_release release;
        return to_json(compile_single_qubit(u, opts)).dump();
      },
      py::arg("u"), py::arg("mode") = "projective", py::arg("l_max") = 16,
      py::arg("sk_depth") = 0);
}
