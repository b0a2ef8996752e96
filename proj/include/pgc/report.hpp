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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pgc/cost.hpp"
#include "pgc/noise.hpp"
#include "pgc/passes.hpp"

namespace pgc {

#ifndef PGC_VERSION
#define PGC_VERSION "0.0.0"
#endif
inline constexpr const char* kToolVersion = PGC_VERSION;

struct BenchOptions {
  CompileOptions compile;
  NoiseModel noise;
  std::size_t samples = 0;  // Monte Carlo samples; 0 runs the closed form only
  std::size_t shots = 10;
  std::size_t bootstrap = 200;
  std::uint32_t oracle_cap = 10;  // dense verification up to this many qubits
  std::uint32_t sim_cap = 16;     // statevector cap including the ancilla
  int verify_states = 20;
};

/// Stable 64-bit FNV-1a hash of every option that affects the results, in hex.
std::string options_hash(const BenchOptions& o);

struct FidelityRecord {
  std::string method;  // "success-prob" or "success-prob+monte-carlo"
  double f_inp_sp = 0.0, f_comp_sp = 0.0;
  std::optional<double> eps_sp;
  Interval eps_sp_ci;
  std::optional<double> f_inp_mc, f_comp_mc, eps_mc;
  Interval eps_mc_ci;
  std::optional<double> f_inp_exact, f_comp_exact;
};

struct ReportRecord {
  std::string name;
  std::uint32_t num_qubits = 0;
  std::string error;  // non-empty when the circuit was skipped
  Metrics metrics;
  bool ancilla = false;
  std::size_t iterations = 0;
  std::vector<CostVector> history;
  std::optional<double> verify_distance;
  std::optional<double> verify_leakage;
  std::string verify_method;  // "dense", "states" or "n/a"
  std::optional<FidelityRecord> fidelity;
  std::uint64_t seed = 0;
  double wall_seconds = 0.0;
  std::string version = kToolVersion;
  std::string opts_hash;
};

/// Full pipeline on one QASM file; failures are recorded, never thrown.
ReportRecord run_benchmark_file(const std::filesystem::path& path, const BenchOptions& o);
/// Every *.qasm file under `dir`, sorted by (name, N).
std::vector<ReportRecord> run_benchmark_dir(const std::filesystem::path& dir, const BenchOptions& o);

/// RFC-4180 field quoting.
std::string csv_field(const std::string& s);
/// One header row, one row per record. Wall time is left out so reruns are
/// byte-identical.
std::string report_csv(const std::vector<ReportRecord>& records);

struct ReportMeans {
  std::size_t circuits = 0;
  double ratio_two_qubit = 0.0, ratio_baseline = 0.0, ratio_norm = 0.0;
  std::optional<double> eps_sp, eps_mc;
};
/// Arithmetic means over records with finite values.
ReportMeans report_means(const std::vector<ReportRecord>& records);

nlohmann::json record_to_json(const ReportRecord& r);
nlohmann::json report_json(const std::vector<ReportRecord>& records);

}  // namespace pgc
