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

#include "pgc/noise.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "pgc/cost.hpp"
#include "pgc/linalg.hpp"
#include "pgc/statevector.hpp"

namespace pgc {
namespace {

constexpr std::uint64_t kStreamDephase = 1;
constexpr std::uint64_t kStreamDepol = 2;
constexpr std::uint64_t kStreamDepolAxis = 3;
constexpr std::uint64_t kStreamShot = 4;
constexpr std::uint64_t kStreamBootstrap = 5;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double to_unit(std::uint64_t h) { return static_cast<double>(h >> 11) * 0x1.0p-53; }

std::uint64_t low_mask(const QubitSet& s) { return s.words().empty() ? 0 : s.words()[0]; }

// Per simulated basis index, the classical bit string it is read out as.
std::vector<std::uint32_t> readout_table(const SimulationTask& t) {
  const std::uint32_t n = t.circuit.num_qubits;
  std::vector<std::uint64_t> rows(t.logical_qubits);
  for (std::uint32_t r = 0; r < t.logical_qubits; ++r) rows[r] = low_mask(t.readout.row(r));
  const std::uint64_t logical = (std::uint64_t{1} << t.logical_qubits) - 1;
  std::vector<std::uint32_t> table(std::size_t{1} << n);
  for (std::uint64_t i = 0; i < table.size(); ++i) {
    const std::uint64_t y = i & logical;
    std::uint32_t bits = 0;
    for (const auto& [q, b] : t.measurements) {
      if (std::popcount(rows[q] & y) & 1) bits |= std::uint32_t{1} << b;
    }
    table[i] = bits;
  }
  return table;
}

ShotDistribution project(const std::vector<double>& probs, const std::vector<std::uint32_t>& table,
                         std::uint32_t num_bits) {
  ShotDistribution d;
  d.num_bits = num_bits;
  d.probs.assign(std::size_t{1} << num_bits, 0.0);
  for (std::size_t i = 0; i < probs.size(); ++i) d.probs[table[i]] += probs[i];
  return d;
}

std::vector<double> simulate_probs(const Circuit& c) {
  StateVector sv(c.num_qubits);
  for (const Gate& g : c.gates) sv.apply(g, Backend::Serial);
  return sv.probabilities();
}

void check_task(const SimulationTask& t, std::uint32_t max_qubits) {
  if (t.circuit.num_qubits > max_qubits) {
    throw CircuitError("register of " + std::to_string(t.circuit.num_qubits) + " qubits exceeds the statevector cap of " +
                       std::to_string(max_qubits));
  }
  if (t.num_clbits > 24) throw CircuitError("more than 24 classical bits");
  if (t.logical_qubits > 64 || t.logical_qubits > t.circuit.num_qubits) throw CircuitError("bad logical width");
}

// Inverse CDF sampling over a dense distribution.
std::uint32_t draw(const std::vector<double>& cdf, double u) {
  auto it = std::upper_bound(cdf.begin(), cdf.end(), u * cdf.back());
  if (it == cdf.end()) --it;
  return static_cast<std::uint32_t>(it - cdf.begin());
}

double tvd_fidelity_raw(const std::vector<double>& p, const std::vector<double>& q) {
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) s += std::abs(p[i] - q[i]);
  return 1.0 - 0.5 * s;
}

double quantile(std::vector<double> v, double q) {
  std::sort(v.begin(), v.end());
  const double pos = q * static_cast<double>(v.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

// Basic bootstrap around `center`: reflects the replicate quantiles, which
// cancels the first-order shot-noise bias of the TVD estimator.
Interval interval_of(double value, double center, const std::vector<double>& reps) {
  std::vector<double> finite;
  for (double r : reps) {
    if (std::isfinite(r)) finite.push_back(r);
  }
  if (finite.empty() || !std::isfinite(center)) return {value, value, value};
  return {value, 2 * center - quantile(finite, 0.975), 2 * center - quantile(finite, 0.025)};
}

std::vector<std::size_t> resample(std::size_t n, std::uint64_t seed, std::uint64_t rep, std::uint64_t which) {
  std::vector<std::size_t> pick(n);
  for (std::size_t i = 0; i < n; ++i) {
    pick[i] = static_cast<std::size_t>(noise_hash(seed, rep, which, i, kStreamBootstrap) % n);
  }
  return pick;
}

}  // namespace

void NoiseModel::validate() const {
  if (!(p_dephase >= 0.0 && p_dephase <= 1.0)) throw std::invalid_argument("p_dephase outside [0, 1]");
  if (!(p_depol_tq >= 0.0 && p_depol_tq <= 1.0)) throw std::invalid_argument("p_depol_tq outside [0, 1]");
}

double depol_prob(const Gate& g, const NoiseModel& m) {
  if (!is_entangling(g)) return 0.0;
  double ratio = 1.0;
  if (const auto* mq = std::get_if<MultiQubitGate>(&g)) {
    ratio = nuclear_norm(*mq) / (kPi / 4);
  } else if (const auto* zz = std::get_if<ZzRotation>(&g)) {
    ratio = std::abs(zz->theta) / (kPi / 4);
  }
  // CNOTs and other two-qubit gates count as fully entangling.
  return std::min(1.0, m.p_depol_tq * ratio);
}

std::uint64_t noise_hash(std::uint64_t seed, std::uint64_t sample, std::uint64_t gate, std::uint64_t qubit,
                         std::uint64_t stream) {
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ sample);
  h = splitmix64(h ^ gate);
  h = splitmix64(h ^ qubit);
  return splitmix64(h ^ stream);
}

double noise_uniform(std::uint64_t seed, std::uint64_t sample, std::uint64_t gate, std::uint64_t qubit,
                     std::uint64_t stream) {
  return to_unit(noise_hash(seed, sample, gate, qubit, stream));
}

SimulationTask task_for_circuit(const Circuit& c, const MeasurementMap& m) {
  SimulationTask t;
  auto [body, stripped] = strip_measurements(c);
  t.circuit = std::move(body);
  t.logical_qubits = t.circuit.num_qubits;
  t.readout = BitMatrix::identity(t.logical_qubits);
  t.measurements = m.empty() ? stripped : m;
  if (t.measurements.empty()) {
    for (QubitId q = 0; q < t.logical_qubits; ++q) t.measurements.emplace_back(q, q);
  }
  for (const auto& [q, b] : t.measurements) t.num_clbits = std::max(t.num_clbits, b + 1);
  return t;
}

SimulationTask task_for_program(const CompiledProgram& p) {
  SimulationTask t;
  t.circuit = realize(p.body, p.scheme).circuit;
  t.circuit.num_qubits = std::max(t.circuit.num_qubits, p.num_qubits);
  t.logical_qubits = p.num_qubits;
  t.readout = p.post.matrix();
  t.measurements = p.measurement_map;
  if (t.measurements.empty()) {
    for (QubitId q = 0; q < p.num_qubits; ++q) t.measurements.emplace_back(q, q);
  }
  for (const auto& [q, b] : t.measurements) t.num_clbits = std::max(t.num_clbits, b + 1);
  return t;
}

Circuit inject_noise(const Circuit& c, const NoiseModel& m, std::uint64_t sample, std::size_t* insertions) {
  Circuit out;
  out.num_qubits = c.num_qubits;
  out.num_clbits = c.num_clbits;
  out.global_phase = c.global_phase;
  out.gates.reserve(c.gates.size());
  std::size_t count = 0;
  for (std::size_t gi = 0; gi < c.gates.size(); ++gi) {
    const Gate& g = c.gates[gi];
    if (is_entangling(g)) {
      const double pdep = depol_prob(g, m);
      for (QubitId q : gate_qubits(g)) {
        if (noise_uniform(m.seed, sample, gi, q, kStreamDephase) < m.p_dephase) {
          out.gates.emplace_back(pauli_gate(q, Pauli::Z));
          ++count;
        }
        if (noise_uniform(m.seed, sample, gi, q, kStreamDepol) < pdep) {
          const auto k = noise_hash(m.seed, sample, gi, q, kStreamDepolAxis) % 3;
          out.gates.emplace_back(pauli_gate(q, k == 0 ? Pauli::X : k == 1 ? Pauli::Y : Pauli::Z));
          ++count;
        }
      }
    }
    out.gates.push_back(g);
  }
  if (insertions) *insertions = count;
  return out;
}

double success_probability(const Circuit& c, const NoiseModel& m) {
  // Summed in log space so long circuits do not lose precision.
  double log_p = 0.0;
  for (const Gate& g : c.gates) {
    if (!is_entangling(g)) continue;
    const double per_qubit = std::log1p(-m.p_dephase) + std::log1p(-depol_prob(g, m));
    log_p += per_qubit * static_cast<double>(gate_qubits(g).size());
  }
  return std::exp(log_p);
}

ShotDistribution ideal_distribution(const SimulationTask& t) { return simulate_distribution(t, t.circuit); }

ShotDistribution simulate_distribution(const SimulationTask& t, const Circuit& instance) {
  check_task(t, 30);
  return project(simulate_probs(instance), readout_table(t), t.num_clbits);
}

double tvd_fidelity(const ShotDistribution& ideal, const ShotDistribution& sampled) {
  if (ideal.num_bits != sampled.num_bits || ideal.probs.size() != sampled.probs.size()) {
    throw std::invalid_argument("distributions over different bit widths");
  }
  return tvd_fidelity_raw(ideal.probs, sampled.probs);
}

std::optional<double> relative_error(double f_comp, double f_inp) {
  if (f_inp >= 1.0) return std::nullopt;
  return (f_comp - f_inp) / (1.0 - f_inp);
}

double MonteCarloRun::fidelity(const std::vector<std::size_t>& pick) const {
  std::vector<double> hist(ideal.probs.size(), 0.0);
  std::size_t total = 0;
  auto add = [&](std::size_t s) {
    for (std::size_t k = 0; k < shots; ++k) hist[outcomes[s * shots + k]] += 1.0;
    total += shots;
  };
  if (pick.empty()) {
    for (std::size_t s = 0; s < samples; ++s) add(s);
  } else {
    for (std::size_t s : pick) add(s);
  }
  if (total == 0) return exact_fidelity();
  for (double& h : hist) h /= static_cast<double>(total);
  return tvd_fidelity_raw(ideal.probs, hist);
}

double MonteCarloRun::clean_fraction(const std::vector<std::size_t>& pick) const {
  if (samples == 0) return 1.0;
  std::size_t hits = 0;
  if (pick.empty()) {
    for (auto c : clean) hits += c;
    return static_cast<double>(hits) / static_cast<double>(samples);
  }
  for (std::size_t s : pick) hits += clean[s];
  return static_cast<double>(hits) / static_cast<double>(pick.size());
}

double MonteCarloRun::exact_fidelity() const { return tvd_fidelity_raw(ideal.probs, mean_probs); }

MonteCarloRun run_monte_carlo(const SimulationTask& t, const NoiseModel& m, std::size_t samples, std::size_t shots,
                              std::uint32_t max_qubits) {
  m.validate();
  check_task(t, max_qubits);
  const auto table = readout_table(t);
  MonteCarloRun run;
  run.samples = samples;
  run.shots = shots;
  run.ideal = project(simulate_probs(t.circuit), table, t.num_clbits);
  run.success_probability = success_probability(t.circuit, m);
  run.outcomes.assign(samples * shots, 0);
  run.clean.assign(samples, 0);

  const std::size_t width = run.ideal.probs.size();
  std::vector<double> ideal_cdf(width);
  std::partial_sum(run.ideal.probs.begin(), run.ideal.probs.end(), ideal_cdf.begin());

  // Each sample draws from its own substreams, and noisy distributions are
  // summed in fixed sample blocks merged in block order, so every output is
  // independent of the thread count and schedule.
  constexpr std::size_t kBlocks = 64;
  std::vector<std::vector<double>> partial(kBlocks, std::vector<double>(width, 0.0));
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t bi = 0; bi < static_cast<std::int64_t>(kBlocks); ++bi) {
    const auto blk = static_cast<std::size_t>(bi);
    std::vector<double>& local = partial[blk];
    for (std::size_t s = blk * samples / kBlocks; s < (blk + 1) * samples / kBlocks; ++s) {
      std::size_t inserted = 0;
      Circuit inst = inject_noise(t.circuit, m, s, &inserted);
      const std::vector<double>* cdf = &ideal_cdf;
      std::vector<double> noisy_cdf;
      if (inserted == 0) {
        run.clean[s] = 1;
      } else {
        ShotDistribution d = project(simulate_probs(inst), table, t.num_clbits);
        for (std::size_t i = 0; i < width; ++i) local[i] += d.probs[i];
        noisy_cdf.resize(width);
        std::partial_sum(d.probs.begin(), d.probs.end(), noisy_cdf.begin());
        cdf = &noisy_cdf;
      }
      for (std::size_t k = 0; k < shots; ++k) {
        run.outcomes[s * shots + k] = draw(*cdf, noise_uniform(m.seed, s, k, 0, kStreamShot));
      }
    }
  }
  std::vector<double> mean(width, 0.0);
  for (const auto& local : partial) {
    for (std::size_t i = 0; i < width; ++i) mean[i] += local[i];
  }
  std::size_t noisy_count = 0;
  for (auto c : run.clean) noisy_count += c ? 0 : 1;
  const std::size_t clean_count = samples - noisy_count;
  run.mean_probs.assign(width, 0.0);
  if (samples > 0) {
    for (std::size_t i = 0; i < width; ++i) {
      run.mean_probs[i] = (mean[i] + static_cast<double>(clean_count) * run.ideal.probs[i]) / static_cast<double>(samples);
    }
  } else {
    run.mean_probs = run.ideal.probs;
  }
  return run;
}

FidelityComparison compare_runs(const MonteCarloRun& inp, const MonteCarloRun& comp, std::size_t replicates,
                                std::uint64_t seed) {
  FidelityComparison out;
  const double fi = inp.fidelity(), fc = comp.fidelity();
  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> r_fi, r_fc, r_em, r_si, r_sc, r_es;
  for (std::size_t r = 0; r < replicates; ++r) {
    const auto pi = resample(inp.samples, seed, r, 0);
    const auto pc = resample(comp.samples, seed, r, 1);
    const double a = inp.fidelity(pi), b = comp.fidelity(pc);
    const double c = inp.clean_fraction(pi), d = comp.clean_fraction(pc);
    r_fi.push_back(a);
    r_fc.push_back(b);
    r_em.push_back(relative_error(b, a).value_or(nan));
    r_si.push_back(c);
    r_sc.push_back(d);
    r_es.push_back(relative_error(d, c).value_or(nan));
  }
  const double em = relative_error(fc, fi).value_or(nan);
  out.f_inp_mc = interval_of(fi, fi, r_fi);
  out.f_comp_mc = interval_of(fc, fc, r_fc);
  out.eps_mc = interval_of(em, em, r_em);
  // Point values are the closed form; the interval is that of the clean-instance
  // frequency, an unbiased Monte Carlo estimate of the same quantity.
  const double si = inp.clean_fraction(), sc = comp.clean_fraction();
  out.f_inp_sp = interval_of(inp.success_probability, si, r_si);
  out.f_comp_sp = interval_of(comp.success_probability, sc, r_sc);
  out.eps_sp = interval_of(relative_error(comp.success_probability, inp.success_probability).value_or(nan),
                           relative_error(sc, si).value_or(nan), r_es);
  out.f_inp_exact = inp.exact_fidelity();
  out.f_comp_exact = comp.exact_fidelity();
  return out;
}

}  // namespace pgc
