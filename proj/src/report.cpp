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

#include "pgc/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <tuple>

#include "pgc/program_io.hpp"
#include "pgc/qasm.hpp"

namespace pgc {
namespace {

using nlohmann::json;

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string num(const std::optional<double>& v) { return v ? num(*v) : "n/a"; }

json opt_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json interval_json(const Interval& i) { return {{"value", i.value}, {"low", i.low}, {"high", i.high}}; }

FidelityRecord fidelity_for(const Circuit& input, const MeasurementMap& mm, const CompiledProgram& p,
                            const BenchOptions& o) {
  FidelityRecord f;
  const SimulationTask ti = task_for_circuit(input, mm);
  const SimulationTask tc = task_for_program(p);
  f.f_inp_sp = success_probability(ti.circuit, o.noise);
  f.f_comp_sp = success_probability(tc.circuit, o.noise);
  f.eps_sp = relative_error(f.f_comp_sp, f.f_inp_sp);
  f.eps_sp_ci = {f.eps_sp.value_or(std::nan("")), std::nan(""), std::nan("")};
  f.method = "success-prob";
  if (o.samples == 0 || tc.circuit.num_qubits > o.sim_cap || ti.circuit.num_qubits > o.sim_cap) return f;
  const MonteCarloRun ri = run_monte_carlo(ti, o.noise, o.samples, o.shots, o.sim_cap);
  const MonteCarloRun rc = run_monte_carlo(tc, o.noise, o.samples, o.shots, o.sim_cap);
  const FidelityComparison cmp = compare_runs(ri, rc, o.bootstrap, o.noise.seed ^ 0x5eedb007ULL);
  f.method = "success-prob+monte-carlo";
  f.eps_sp_ci = cmp.eps_sp;
  f.f_inp_mc = cmp.f_inp_mc.value;
  f.f_comp_mc = cmp.f_comp_mc.value;
  f.eps_mc = relative_error(cmp.f_comp_mc.value, cmp.f_inp_mc.value);
  f.eps_mc_ci = cmp.eps_mc;
  f.f_inp_exact = cmp.f_inp_exact;
  f.f_comp_exact = cmp.f_comp_exact;
  return f;
}

template <class T>
double mean_of(const std::vector<T>& v) {
  double s = 0.0;
  for (const auto& x : v) s += x;
  return v.empty() ? std::nan("") : s / static_cast<double>(v.size());
}

}  // namespace

std::string options_hash(const BenchOptions& o) {
  std::ostringstream ss;
  ss << "scheme=" << static_cast<int>(o.compile.scheme) << ";order=" << static_cast<int>(o.compile.cost.order)
     << ";w=" << num(o.compile.cost.norm_weight) << ";tol=" << num(o.compile.cost.tolerance)
     << ";match=" << static_cast<int>(o.compile.matching) << ";iters=" << o.compile.max_iterations
     << ";nr=" << o.compile.norm_reduction << ";pd=" << num(o.noise.p_dephase) << ";pt=" << num(o.noise.p_depol_tq)
     << ";seed=" << o.noise.seed << ";samples=" << o.samples << ";shots=" << o.shots << ";boot=" << o.bootstrap
     << ";oracle=" << o.oracle_cap << ";sim=" << o.sim_cap << ";states=" << o.verify_states;
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : ss.str()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

ReportRecord run_benchmark_file(const std::filesystem::path& path, const BenchOptions& o) {
  const auto start = std::chrono::steady_clock::now();
  ReportRecord r;
  r.name = path.stem().string();
  r.seed = o.noise.seed;
  r.opts_hash = options_hash(o);
  r.verify_method = "n/a";
  try {
    const Circuit raw = parse_qasm_file(path);
    r.num_qubits = raw.num_qubits;
    auto [input, mm] = strip_measurements(to_zz_basis(raw));
    CompiledProgram p = optimize(input, o.compile);
    p.measurement_map = mm;
    r.metrics = compute_metrics(input, p.cost);
    r.ancilla = p.ancilla_used();
    r.history = p.history;
    r.iterations = p.history.empty() ? 0 : p.history.size() - 1;
    const std::uint32_t realized_qubits = input.num_qubits + (r.ancilla ? 1 : 0);
    if (input.num_qubits <= o.oracle_cap) {
      const Verification v = verify_program(p, input);
      r.verify_distance = v.distance;
      r.verify_leakage = v.leakage;
      r.verify_method = "dense";
    } else if (realized_qubits <= o.sim_cap) {
      const Verification v = verify_program_states(p, input, o.verify_states, o.noise.seed);
      r.verify_distance = v.distance;
      r.verify_leakage = v.leakage;
      r.verify_method = "states";
    }
    r.fidelity = fidelity_for(input, mm, p, o);
  } catch (const QasmError& e) {
    r.error = std::string("parse error: ") + e.what();
  } catch (const CircuitError& e) {
    r.error = std::string("unsupported: ") + e.what();
  } catch (const std::exception& e) {
    r.error = std::string("internal error: ") + e.what();
  }
  r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::vector<ReportRecord> run_benchmark_dir(const std::filesystem::path& dir, const BenchOptions& o) {
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().extension() == ".qasm") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<ReportRecord> out(files.size());
  // Circuits run as a worker pool; each pipeline is deterministic on its own.
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(files.size()); ++i) {
    out[static_cast<std::size_t>(i)] = run_benchmark_file(files[static_cast<std::size_t>(i)], o);
  }
  std::stable_sort(out.begin(), out.end(), [](const ReportRecord& a, const ReportRecord& b) {
    return std::tie(a.name, a.num_qubits) < std::tie(b.name, b.num_qubits);
  });
  return out;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string report_csv(const std::vector<ReportRecord>& records) {
  static const std::vector<std::string> header = {
      "name",           "N",          "status",       "twoQubitCount", "baselineMqCount", "compiledMqCount",
      "inputNorm",      "baselineNorm", "compiledNorm", "ratioTwoQubit", "ratioBaseline",   "ratioNorm",
      "ancilla",        "iterations", "verifyMethod", "verifyDistance", "verifyLeakage",  "method",
      "fInpSp",         "fCompSp",    "epsSp",        "epsSpLow",      "epsSpHigh",       "fInpMc",
      "fCompMc",        "epsMc",      "epsMcLow",     "epsMcHigh",     "fInpExact",       "fCompExact",
      "seed",           "version",    "optsHash"};
  std::string out;
  for (std::size_t i = 0; i < header.size(); ++i) out += (i ? "," : "") + header[i];
  out += "\r\n";
  for (const ReportRecord& r : records) {
    std::vector<std::string> row;
    const Metrics& m = r.metrics;
    const bool ok = r.error.empty();
    row.push_back(r.name);
    row.push_back(std::to_string(r.num_qubits));
    row.push_back(ok ? "ok" : r.error);
    auto count = [&](std::size_t v) { return ok ? std::to_string(v) : std::string("n/a"); };
    auto real = [&](double v) { return ok ? num(v) : std::string("n/a"); };
    row.push_back(count(m.two_qubit_count));
    row.push_back(count(m.baseline.mq_count));
    row.push_back(count(m.compiled.mq_count));
    row.push_back(real(m.input_norm));
    row.push_back(real(m.baseline.norm));
    row.push_back(real(m.compiled.norm));
    row.push_back(real(m.ratio_two_qubit));
    row.push_back(real(m.ratio_baseline));
    row.push_back(real(m.ratio_norm));
    row.push_back(ok ? (r.ancilla ? "1" : "0") : "n/a");
    row.push_back(count(r.iterations));
    row.push_back(r.verify_method);
    row.push_back(num(r.verify_distance));
    row.push_back(num(r.verify_leakage));
    if (r.fidelity) {
      const FidelityRecord& f = *r.fidelity;
      const bool mc = f.f_inp_mc.has_value();
      row.push_back(f.method);
      row.push_back(num(f.f_inp_sp));
      row.push_back(num(f.f_comp_sp));
      row.push_back(num(f.eps_sp));
      row.push_back(mc ? num(f.eps_sp_ci.low) : "n/a");
      row.push_back(mc ? num(f.eps_sp_ci.high) : "n/a");
      row.push_back(num(f.f_inp_mc));
      row.push_back(num(f.f_comp_mc));
      row.push_back(num(f.eps_mc));
      row.push_back(mc ? num(f.eps_mc_ci.low) : "n/a");
      row.push_back(mc ? num(f.eps_mc_ci.high) : "n/a");
      row.push_back(num(f.f_inp_exact));
      row.push_back(num(f.f_comp_exact));
    } else {
      row.push_back("n/a");
      for (int i = 0; i < 12; ++i) row.push_back("n/a");
    }
    row.push_back(std::to_string(r.seed));
    row.push_back(r.version);
    row.push_back(r.opts_hash);
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + csv_field(row[i]);
    out += "\r\n";
  }
  return out;
}

ReportMeans report_means(const std::vector<ReportRecord>& records) {
  ReportMeans mns;
  std::vector<double> r3, r4, r5, es, em;
  for (const ReportRecord& r : records) {
    if (!r.error.empty()) continue;
    ++mns.circuits;
    if (std::isfinite(r.metrics.ratio_two_qubit)) r3.push_back(r.metrics.ratio_two_qubit);
    if (std::isfinite(r.metrics.ratio_baseline)) r4.push_back(r.metrics.ratio_baseline);
    if (std::isfinite(r.metrics.ratio_norm)) r5.push_back(r.metrics.ratio_norm);
    if (r.fidelity && r.fidelity->eps_sp && std::isfinite(*r.fidelity->eps_sp)) es.push_back(*r.fidelity->eps_sp);
    if (r.fidelity && r.fidelity->eps_mc && std::isfinite(*r.fidelity->eps_mc)) em.push_back(*r.fidelity->eps_mc);
  }
  mns.ratio_two_qubit = mean_of(r3);
  mns.ratio_baseline = mean_of(r4);
  mns.ratio_norm = mean_of(r5);
  if (!es.empty()) mns.eps_sp = mean_of(es);
  if (!em.empty()) mns.eps_mc = mean_of(em);
  return mns;
}

json record_to_json(const ReportRecord& r) {
  json j = {{"name", r.name},
            {"N", r.num_qubits},
            {"status", r.error.empty() ? "ok" : r.error},
            {"seed", r.seed},
            {"version", r.version},
            {"optsHash", r.opts_hash},
            {"wallSeconds", r.wall_seconds}};
  if (!r.error.empty()) return j;
  j["metrics"] = metrics_to_json(r.metrics);
  j["ancilla"] = r.ancilla;
  j["iterations"] = r.iterations;
  json hist = json::array();
  for (const CostVector& c : r.history) hist.push_back({{"mqCount", c.mq_count}, {"norm", c.norm}});
  j["history"] = hist;
  j["verify"] = {{"method", r.verify_method}, {"distance", opt_json(r.verify_distance)},
                 {"leakage", opt_json(r.verify_leakage)}};
  if (r.fidelity) {
    const FidelityRecord& f = *r.fidelity;
    json fj = {{"method", f.method},
               {"successProbability", {{"fInp", f.f_inp_sp}, {"fComp", f.f_comp_sp}, {"eps", opt_json(f.eps_sp)}}}};
    if (f.f_inp_mc) {
      fj["successProbability"]["epsCi"] = interval_json(f.eps_sp_ci);
      fj["monteCarlo"] = {{"fInp", *f.f_inp_mc},
                          {"fComp", *f.f_comp_mc},
                          {"eps", opt_json(f.eps_mc)},
                          {"epsCi", interval_json(f.eps_mc_ci)},
                          {"fInpExact", opt_json(f.f_inp_exact)},
                          {"fCompExact", opt_json(f.f_comp_exact)}};
    }
    j["fidelity"] = fj;
  }
  return j;
}

json report_json(const std::vector<ReportRecord>& records) {
  json rows = json::array();
  for (const ReportRecord& r : records) rows.push_back(record_to_json(r));
  const ReportMeans m = report_means(records);
  return {{"version", kToolVersion},
          {"records", rows},
          {"means",
           {{"note", "qualitative: arithmetic means over a small circuit set, finite values only"},
            {"circuits", m.circuits},
            {"ratioTwoQubit", m.ratio_two_qubit},
            {"ratioBaseline", m.ratio_baseline},
            {"ratioNorm", m.ratio_norm},
            {"epsSp", opt_json(m.eps_sp)},
            {"epsMc", opt_json(m.eps_mc)}}}};
}

}  // namespace pgc
