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

// pgc: compile, verify, benchmark and simulate phase-gadget programs.
// Exit codes: 0 ok, 1 verification failed, 2 bad input or unsupported, 3 internal error.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "pgc/noise.hpp"
#include "pgc/passes.hpp"
#include "pgc/program_io.hpp"
#include "pgc/qasm.hpp"
#include "pgc/report.hpp"

namespace fs = std::filesystem;
using namespace pgc;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerify = 1;
constexpr int kExitInput = 2;
constexpr int kExitInternal = 3;
constexpr double kVerifyTolerance = 1e-8;
constexpr double kLeakageTolerance = 1e-12;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Flags {
  bool no_ancilla = false;
  std::string cost = "lex";
  std::string matching = "greedy";
  int max_iters = 50;
  std::uint64_t seed = 1;
  std::size_t samples = 0;
  std::size_t shots = 10;
  std::size_t bootstrap = 200;
  double p_dephase = 1e-3;
  double p_depol = 1e-3;
  std::uint32_t oracle_cap = 10;
  std::uint32_t sim_cap = 16;
  bool states = false;
  std::string out;
  std::string csv;
  std::string metrics;
};

BenchOptions bench_options(const Flags& f) {
  BenchOptions o;
  o.compile.scheme = f.no_ancilla ? RealizationScheme::NoAncilla : RealizationScheme::AncillaMerged;
  if (f.cost == "lex") {
    o.compile.cost.order = CostOrder::Lexicographic;
  } else if (f.cost.rfind("weighted:", 0) == 0) {
    o.compile.cost.order = CostOrder::WeightedSum;
    try {
      o.compile.cost.norm_weight = std::stod(f.cost.substr(9));
    } catch (const std::exception&) {
      throw InputError("bad --cost weight '" + f.cost + "'");
    }
  } else {
    throw InputError("--cost must be 'lex' or 'weighted:<w>'");
  }
  if (f.matching == "greedy") {
    o.compile.matching = MatchingMode::Greedy;
  } else if (f.matching == "exhaustive") {
    o.compile.matching = MatchingMode::Exhaustive;
  } else {
    throw InputError("--matching must be 'greedy' or 'exhaustive'");
  }
  o.compile.max_iterations = f.max_iters;
  o.noise = {f.p_dephase, f.p_depol, f.seed};
  o.noise.validate();
  o.samples = f.samples;
  o.shots = f.shots;
  o.bootstrap = f.bootstrap;
  o.oracle_cap = f.oracle_cap;
  o.sim_cap = f.sim_cap;
  return o;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw InputError("cannot open '" + p.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw InputError("cannot write '" + p.string() + "'");
  out << text;
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    write_file(path, text);
  }
}

// QASM input reduced to the compiler's zz basis, measurements split off.
std::pair<Circuit, MeasurementMap> load_input(const std::string& path) {
  try {
    return strip_measurements(to_zz_basis(parse_qasm_file(path)));
  } catch (const QasmError& e) {
    throw InputError(path + ":" + e.what());
  }
}

int cmd_compile(const std::string& input, const Flags& f) {
  const BenchOptions o = bench_options(f);
  auto [c, mm] = load_input(input);
  CompiledProgram p = optimize(c, o.compile);
  p.measurement_map = mm;
  for (const auto& w : p.warnings) std::cerr << "warning: " << w << "\n";
  const std::string out = f.out.empty() ? fs::path(input).stem().string() + ".program.json" : f.out;
  emit(out, serialize_program(p));
  nlohmann::json m = metrics_to_json(compute_metrics(c, p.cost));
  m["name"] = fs::path(input).stem().string();
  m["N"] = c.num_qubits;
  m["iterations"] = p.history.empty() ? 0 : p.history.size() - 1;
  m["ancilla"] = p.ancilla_used();
  m["version"] = kToolVersion;
  m["optsHash"] = options_hash(o);
  const std::string mpath =
      !f.metrics.empty() ? f.metrics : (out == "-" ? std::string("-") : fs::path(out).replace_extension("").string() + ".metrics.json");
  emit(mpath, dump_json(m));
  return kExitOk;
}

int cmd_verify(const std::string& program, const std::string& input, const Flags& f) {
  CompiledProgram p;
  try {
    p = parse_program(read_file(program));
  } catch (const FormatError& e) {
    throw InputError(program + ": " + e.what());
  }
  auto [c, mm] = load_input(input);
  (void)mm;
  if (c.num_qubits != p.num_qubits) throw InputError("program and input have different register sizes");
  Verification v;
  std::string method;
  if (c.num_qubits <= f.oracle_cap) {
    v = verify_program(p, c);
    method = "dense";
  } else if (f.states) {
    v = verify_program_states(p, c, 20, f.seed);
    method = "states";
  } else {
    throw InputError(std::to_string(c.num_qubits) + " qubits exceed --oracle-cap " + std::to_string(f.oracle_cap) +
                     "; pass --states for the random-state check");
  }
  const bool pass = v.distance <= kVerifyTolerance && v.leakage <= kLeakageTolerance;
  nlohmann::json j = {{"result", pass ? "pass" : "fail"},
                      {"method", method},
                      {"distance", v.distance},
                      {"leakage", v.leakage},
                      {"tolerance", kVerifyTolerance}};
  emit(f.out, dump_json(j));
  return pass ? kExitOk : kExitVerify;
}

int cmd_bench(const std::string& dir, const Flags& f) {
  if (!fs::is_directory(dir)) throw InputError("'" + dir + "' is not a directory");
  const BenchOptions o = bench_options(f);
  const auto records = run_benchmark_dir(dir, o);
  emit(f.csv.empty() ? "report.csv" : f.csv, report_csv(records));
  emit(f.out.empty() ? "report.json" : f.out, dump_json(report_json(records)));
  for (const auto& r : records) {
    if (!r.error.empty()) std::cerr << r.name << ": " << r.error << "\n";
  }
  return kExitOk;
}

int cmd_simulate(const std::string& program, const std::string& input, const Flags& f) {
  const BenchOptions o = bench_options(f);
  CompiledProgram p;
  try {
    p = parse_program(read_file(program));
  } catch (const FormatError& e) {
    throw InputError(program + ": " + e.what());
  }
  const SimulationTask tc = task_for_program(p);
  nlohmann::json j = {{"seed", o.noise.seed},
                      {"pDephase", o.noise.p_dephase},
                      {"pDepolTq", o.noise.p_depol_tq},
                      {"samples", o.samples},
                      {"shots", o.shots},
                      {"fCompSp", success_probability(tc.circuit, o.noise)}};
  std::optional<SimulationTask> ti;
  if (!input.empty()) {
    auto [c, mm] = load_input(input);
    ti = task_for_circuit(c, mm);
    const double fi = success_probability(ti->circuit, o.noise);
    j["fInpSp"] = fi;
    const auto eps = relative_error(j["fCompSp"].get<double>(), fi);
    j["epsSp"] = eps ? nlohmann::json(*eps) : nlohmann::json(nullptr);
  }
  if (o.samples > 0) {
    try {
      const MonteCarloRun rc = run_monte_carlo(tc, o.noise, o.samples, o.shots, o.sim_cap);
      j["fCompMc"] = rc.fidelity();
      j["fCompExact"] = rc.exact_fidelity();
      if (ti) {
        const MonteCarloRun ri = run_monte_carlo(*ti, o.noise, o.samples, o.shots, o.sim_cap);
        const FidelityComparison cmp = compare_runs(ri, rc, o.bootstrap, o.noise.seed ^ 0x5eedb007ULL);
        auto iv = [](const Interval& i) { return nlohmann::json{{"value", i.value}, {"low", i.low}, {"high", i.high}}; };
        j["fInpMc"] = cmp.f_inp_mc.value;
        j["fInpExact"] = cmp.f_inp_exact;
        j["epsMc"] = iv(cmp.eps_mc);
        j["epsSpCi"] = iv(cmp.eps_sp);
      }
    } catch (const CircuitError& e) {
      throw InputError(e.what());
    }
  }
  emit(f.out, dump_json(j));
  return kExitOk;
}

void add_compile_flags(CLI::App* app, Flags& f) {
  app->add_flag("--no-ancilla{true},--ancilla{false}", f.no_ancilla, "Realization scheme (default: ancilla)");
  app->add_option("--cost", f.cost, "lex or weighted:<w>");
  app->add_option("--matching", f.matching, "greedy or exhaustive");
  app->add_option("--max-iters", f.max_iters, "Iteration cap")->check(CLI::NonNegativeNumber);
}

void add_noise_flags(CLI::App* app, Flags& f) {
  app->add_option("--seed", f.seed, "Noise RNG seed");
  app->add_option("--samples", f.samples, "Monte Carlo noise samples (0: closed form only)");
  app->add_option("--shots", f.shots, "Shots per noise sample");
  app->add_option("--bootstrap", f.bootstrap, "Bootstrap replicates");
  app->add_option("--p-dephase", f.p_dephase, "Dephasing probability")->check(CLI::Range(0.0, 1.0));
  app->add_option("--p-depol", f.p_depol, "Two-qubit depolarization probability")->check(CLI::Range(0.0, 1.0));
  app->add_option("--sim-cap", f.sim_cap, "Statevector cap in qubits");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pgc: phase-gadget compiler for multiqubit-gate hardware"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);
  Flags f;
  std::string input, program;

  auto* compile = app.add_subcommand("compile", "Compile a QASM file to a program JSON and metrics JSON");
  compile->add_option("input", input, "OpenQASM 2.0 file")->required();
  add_compile_flags(compile, f);
  compile->add_option("--out", f.out, "Program JSON path ('-' for stdout)");
  compile->add_option("--metrics", f.metrics, "Metrics JSON path");

  auto* verify = app.add_subcommand("verify", "Check a program against its source circuit");
  verify->add_option("program", program, "Program JSON")->required();
  verify->add_option("input", input, "OpenQASM 2.0 file")->required();
  verify->add_option("--oracle-cap", f.oracle_cap, "Dense comparison up to this many qubits");
  verify->add_flag("--states", f.states, "Allow the 20 random-state check above the cap");
  verify->add_option("--seed", f.seed, "Seed for the random states");
  verify->add_option("--out", f.out, "Result JSON path (default stdout)");

  auto* bench = app.add_subcommand("bench", "Compile every .qasm file in a directory and report metrics");
  bench->add_option("dir", input, "Directory of .qasm files")->required();
  add_compile_flags(bench, f);
  add_noise_flags(bench, f);
  bench->add_option("--oracle-cap", f.oracle_cap, "Dense verification cap");
  bench->add_option("--csv", f.csv, "CSV report path");
  bench->add_option("--out", f.out, "JSON report path");

  auto* simulate = app.add_subcommand("simulate", "Noisy simulation of a program");
  simulate->add_option("program", program, "Program JSON")->required();
  simulate->add_option("--input", input, "Source QASM, for the relative error");
  add_noise_flags(simulate, f);
  simulate->add_option("--out", f.out, "Result JSON path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*compile) return cmd_compile(input, f);
    if (*verify) return cmd_verify(program, input, f);
    if (*bench) return cmd_bench(input, f);
    if (*simulate) return cmd_simulate(program, input, f);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const CircuitError& e) {
    std::cerr << "unsupported: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitInternal;
}
