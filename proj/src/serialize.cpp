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

#include "fibcompile/serialize.hpp"

#include <fstream>

#include "fibcompile/errors.hpp"

namespace fibcompile {

namespace {

template <typename T>
T field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw InvalidArgument(std::string("JSON is missing '") + key + "'");
  }
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("bad JSON field '") + key + "': " + e.what());
  }
}

Json complex_json(Complex z) { return Json::array({z.real(), z.imag()}); }

}  // namespace

Json to_json(const BraidWord& w) {
  Json letters = Json::array();
  for (const Letter& l : w.letters) letters.push_back({{"gen", l.gen}, {"pow", l.pow}});
  return {{"strands", w.strands}, {"word", letters}};
}

BraidWord braid_from_json(const Json& j) {
  BraidWord w;
  w.strands = field<int>(j, "strands");
  if (w.strands < 2) throw InvalidArgument("a braid needs at least two strands");
  for (const Json& l : field<Json>(j, "word")) {
    const Letter letter{field<int>(l, "gen"), field<int>(l, "pow")};
    if (letter.gen < 1 || letter.gen >= w.strands) {
      throw InvalidArgument("generator " + std::to_string(letter.gen) +
                            " out of range for " + std::to_string(w.strands) +
                            " strands");
    }
    w.letters.push_back(letter);
  }
  return w;
}

Json to_json(const Matrix& m) {
  Json data = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_json(m(r, c)));
    data.push_back(row);
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", data}};
}

Matrix matrix_from_json(const Json& j) {
  const auto rows = field<Eigen::Index>(j, "rows");
  const auto cols = field<Eigen::Index>(j, "cols");
  const Json data = field<Json>(j, "data");
  if (rows < 1 || cols < 1 || !data.is_array() ||
      static_cast<Eigen::Index>(data.size()) != rows) {
    throw InvalidArgument("matrix JSON rows do not match 'rows'");
  }
  Matrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const Json& row = data[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw InvalidArgument("matrix JSON row " + std::to_string(r) +
                            " does not match 'cols'");
    }
    for (Eigen::Index c = 0; c < cols; ++c) {
      const Json& z = row[static_cast<std::size_t>(c)];
      if (z.is_number()) {
        m(r, c) = z.get<double>();
      } else if (z.is_array() && z.size() == 2) {
        m(r, c) = Complex(z[0].get<double>(), z[1].get<double>());
      } else {
        throw InvalidArgument("matrix entries must be numbers or [re, im]");
      }
    }
  }
  return m;
}

Json to_json(const Weave& w) {
  return {{"first_gen", w.first_gen},
          {"exponents", w.exponents},
          {"start", to_string(w.start)},
          {"end", to_string(w.end)}};
}

Weave weave_from_json(const Json& j) {
  Weave w;
  w.first_gen = field<int>(j, "first_gen");
  w.exponents = field<std::vector<int>>(j, "exponents");
  w.start = parse_position(field<std::string>(j, "start"));
  w.end = parse_position(field<std::string>(j, "end"));
  validate(w);
  return w;
}

Json to_json(const SearchResult& r) {
  return {{"weave", to_json(r.weave)},
          {"braid", to_json(to_braid_word(r.weave))},
          {"length", r.length},
          {"winding", r.winding},
          {"distance", r.distance},
          {"projective_distance", r.projective_distance},
          {"unitary", to_json(r.unitary.matrix())}};
}

Json to_json(const SkLevel& l) {
  return {{"level", l.level},
          {"distance", l.distance},
          {"length", l.length},
          {"winding", l.winding},
          {"seconds", l.seconds}};
}

Json to_json(const SkResult& r) {
  Json levels = Json::array();
  for (const SkLevel& l : r.levels) levels.push_back(to_json(l));
  return {{"braid", to_json(r.word)},
          {"distance", r.distance},
          {"levels", levels},
          {"unitary", to_json(r.unitary.matrix())}};
}

Json to_json(const SectorReport& s) {
  return {{"total_charge", to_int(s.total)},
          {"dimension", s.dimension},
          {"leakage", s.leakage},
          {"distance_exact", s.distance_exact},
          {"distance_projective", s.distance_projective},
          {"phase", s.phase},
          {"block", to_json(s.block)}};
}

Json to_json(const GateReport& r) {
  return {{"sectors", Json::array({to_json(r.sectors[0]), to_json(r.sectors[1])})},
          {"budget", r.budget},
          {"sector_agreement", r.sector_agreement},
          {"within_budget", r.within_budget}};
}

Json to_json(const AssembledGate& g) {
  Json placements = Json::array();
  for (const Placement& p : g.placements) {
    Json slot = {{"role", p.slot.role},
                 {"inverse", p.inverse},
                 {"first_object", p.first_object},
                 {"distance", p.slot.distance}};
    if (p.slot.weave) slot["weave"] = to_json(*p.slot.weave);
    placements.push_back(slot);
  }
  Json j = {{"construction", to_string(g.construction)},
            {"target_pair", g.target_pair == TargetPair::Lower ? "lower" : "upper"},
            {"placements", placements},
            {"error_budget", g.error_budget()},
            {"ideal_target", to_json(g.ideal_target.matrix())}};
  if (g.word) {
    j["braid"] = to_json(*g.word);
    j["length"] = g.word->length();
  }
  return j;
}

Json to_json(const SingleQubitResult& r) {
  Json levels = Json::array();
  for (const SkLevel& l : r.levels) levels.push_back(to_json(l));
  return {{"braid", to_json(r.word)},
          {"distance", r.distance},
          {"winding", r.winding},
          {"levels", levels}};
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidArgument("'" + path.string() + "' is not valid JSON: " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << j.dump(2) << '\n';
  if (!out) throw IoError("write to '" + path.string() + "' failed");
}

}  // namespace fibcompile
