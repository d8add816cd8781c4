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

#include <filesystem>
#include <string>

#include "json.hpp"

#include "fibcompile/gate_assembly.hpp"

namespace fibcompile {

using Json = nlohmann::ordered_json;

/// {"strands": n, "word": [{"gen": i, "pow": p}, ...]}
Json to_json(const BraidWord& w);
BraidWord braid_from_json(const Json& j);

/// {"rows": r, "cols": c, "data": [[[re, im], ...], ...]}
Json to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

Json to_json(const Weave& w);
Weave weave_from_json(const Json& j);

Json to_json(const SearchResult& r);
Json to_json(const SkLevel& l);
Json to_json(const SkResult& r);
Json to_json(const SectorReport& s);
Json to_json(const GateReport& r);
Json to_json(const AssembledGate& g);
Json to_json(const SingleQubitResult& r);

Json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const Json& j);

}  // namespace fibcompile
