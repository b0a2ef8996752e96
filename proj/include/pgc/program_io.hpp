// Copyright 2026 The pgc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

#include "pgc/cost.hpp"
#include "pgc/passes.hpp"

namespace pgc {

inline constexpr const char* kProgramVersion = "pgc-program/1";

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Deterministic pretty printer: sorted keys, two-space indent, doubles as
/// %.17g so every value round-trips bit-exactly.
std::string dump_json(const nlohmann::json& j);

/// Hex digits of a GF(2) row, most significant first; bit q is qubit q.
std::string row_to_hex(const QubitSet& row, std::uint32_t n);
QubitSet row_from_hex(std::string_view hex, std::uint32_t n);

nlohmann::json layer_to_json(const CnotLayer& layer);
CnotLayer layer_from_json(const nlohmann::json& j, std::uint32_t n);

/// The "realized" array is derived from the body and ignored when parsing.
nlohmann::json program_to_json(const CompiledProgram& p);
CompiledProgram program_from_json(const nlohmann::json& j);

std::string serialize_program(const CompiledProgram& p);
/// Throws FormatError on malformed or inconsistent input.
CompiledProgram parse_program(std::string_view text);

nlohmann::json metrics_to_json(const Metrics& m);

}  // namespace pgc
