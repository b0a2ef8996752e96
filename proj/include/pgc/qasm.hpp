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

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pgc/circuit.hpp"

namespace pgc {

/// Parse or lowering failure with a 1-based source location (0 when unknown).
class QasmError : public std::runtime_error {
 public:
  QasmError(const std::string& msg, int line, int column);
  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& message() const { return message_; }

 private:
  std::string message_;
  int line_;
  int column_;
};

/// Parses OpenQASM 2.0. qelib1.inc is built in; custom gates are inlined.
/// One- and two-qubit library gates other than cx come back as SingleQubitGate
/// or NamedGate; cx becomes a canonical GeneralizedCnot.
Circuit parse_qasm(std::string_view source);
Circuit parse_qasm_file(const std::filesystem::path& path);

/// Rewrites every entangling gate into single-qubit gates plus canonical CNOTs
/// and ZZ rotations with angles in (-pi/4, pi/4]. Barriers are dropped,
/// measurements kept.
Circuit to_zz_basis(const Circuit& c);

/// (qubit, classical bit) pairs of the terminal measurements.
using MeasurementMap = std::vector<std::pair<QubitId, std::uint32_t>>;

/// Removes measurements and barriers. Throws CircuitError if a measured qubit
/// is acted on afterwards.
std::pair<Circuit, MeasurementMap> strip_measurements(const Circuit& c);

/// Number of CNOT and ZZ gates; meaningful after to_zz_basis.
std::size_t two_qubit_count(const Circuit& c);

}  // namespace pgc
