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

#include "pgc/passes.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>

#include "pgc/statevector.hpp"
#include "pgc/su4.hpp"

namespace pgc {

EulerZxz euler_zxz(const Mat2& u) {
  // Rz(a) Rx(b) Rz(c) = [[cos(b/2) e^{-i(a+c)/2}, -i sin(b/2) e^{-i(a-c)/2}],
  //                      [-i sin(b/2) e^{i(a-c)/2},  cos(b/2) e^{i(a+c)/2}]]
  const cplx det = u.determinant();
  const double gphase = std::arg(det) / 2;
  const Mat2 v = u * std::exp(cplx(0, -gphase));
  EulerZxz e;
  e.phase = gphase;
  e.b = 2 * std::atan2(std::abs(v(1, 0)), std::abs(v(0, 0)));
  const double sum = std::abs(v(1, 1)) > 1e-12 ? 2 * std::arg(v(1, 1)) : 0.0;
  const double diff = std::abs(v(1, 0)) > 1e-12 ? 2 * (std::arg(v(1, 0)) + kPi / 2) : 0.0;
  e.a = (sum + diff) / 2;
  e.c = (sum - diff) / 2;
  return e;
}

namespace {

// Rz(theta) = exp(-i theta Z / 2) = G_Z(-theta / pi).
void push_rotation(std::vector<PhaseGadget>& out, Pauli axis, QubitId q, double theta) {
  const double alpha = -theta / kPi;
  if (std::abs(alpha) < 1e-14) return;
  out.push_back(PhaseGadget{axis, alpha, QubitSet{q}});
}

void push_single(std::vector<PhaseGadget>& out, QubitId q, const Mat2& u) {
  if (is_identity_up_to_phase(u, 1e-13)) return;
  const EulerZxz e = euler_zxz(u);
  push_rotation(out, Pauli::Z, q, e.c);
  push_rotation(out, Pauli::X, q, e.b);
  push_rotation(out, Pauli::Z, q, e.a);
}

// Layering, SU(4) blocks and their LH decompositions, flattened to a gate list.
std::vector<Gate> lh_gates(const Circuit& c) {
  const std::vector<BlockItem> items = form_su4_blocks(layerize(c));
  std::vector<Gate> out;
  for (const auto& it : items) {
    if (const auto* b = std::get_if<Su4Block>(&it)) {
      for (auto& g : minimize_block_phase(b->unitary, b->low, b->high).to_gates()) out.push_back(std::move(g));
    } else {
      out.emplace_back(std::get<SingleQubitGate>(it));
    }
  }
  return out;
}

void check_basic(const Circuit& c) {
  for (const Gate& g : c.gates) {
    if (std::holds_alternative<SingleQubitGate>(g) || std::holds_alternative<ZzRotation>(g)) continue;
    if (std::holds_alternative<Barrier>(g)) continue;
    if (const auto* x = std::get_if<GeneralizedCnot>(&g)) {
      if (x->control_axis == Pauli::Z && x->target_axis == Pauli::X) continue;
    }
    throw CircuitError("pg primitive: unsupported gate '" + gate_name(g) + "'; lower to zz basis first");
  }
}

}  // namespace

Factorization pg_left(const Circuit& c) {
  c.validate();
  check_basic(c);
  Circuit clean;
  clean.num_qubits = c.num_qubits;
  for (const Gate& g : c.gates) {
    if (!std::holds_alternative<Barrier>(g)) clean.gates.push_back(g);
  }

  Factorization f;
  f.layer = CnotLayer(c.num_qubits);
  f.body.num_qubits = c.num_qubits;
  std::vector<PhaseGadget>& seq = f.body.gadgets;

  std::vector<std::optional<Mat2>> pending(c.num_qubits);
  auto flush = [&](QubitId q) {
    if (pending[q]) push_single(seq, q, *pending[q]);
    pending[q].reset();
  };

  for (const Gate& g : lh_gates(clean)) {
    if (const auto* s = std::get_if<SingleQubitGate>(&g)) {
      pending[s->qubit] = pending[s->qubit] ? Mat2(s->matrix * *pending[s->qubit]) : s->matrix;
    } else if (const auto* z = std::get_if<ZzRotation>(&g)) {
      flush(z->a);
      flush(z->b);
      const double alpha = 2 * z->theta / kPi;
      if (std::abs(alpha) > 1e-14) seq.push_back(PhaseGadget{Pauli::Z, alpha, QubitSet{z->a, z->b}});
    } else if (const auto* x = std::get_if<GeneralizedCnot>(&g)) {
      flush(x->control);
      flush(x->target);
      // gadgets C = C (C gadgets C): conjugate everything so far, C moves first.
      for (auto& p : seq) p = commute_cnot(x->control, x->target, p);
      f.commutation_events += seq.size();
      f.layer.append(x->control, x->target);
    } else {
      throw CircuitError("pg_left: unexpected gate after decomposition");
    }
  }
  for (QubitId q = 0; q < c.num_qubits; ++q) flush(q);
  f.body = simplify(f.body);
  return f;
}

Factorization pg_right(const Circuit& c) {
  const Factorization l = pg_left(c.adjoint());
  // c^dagger = layer, gadgets, frame (time order). Hence c = frame, gadgets
  // reversed and negated, layer^-1. The frame is then pushed to the end.
  Factorization r;
  r.commutation_events = l.commutation_events;
  r.body.num_qubits = l.body.num_qubits;
  r.body.frame = l.body.frame;
  for (auto it = l.body.gadgets.rbegin(); it != l.body.gadgets.rend(); ++it) {
    PhaseGadget g = *it;
    g.alpha = -g.alpha;
    if (l.body.frame.anticommutes(g.axis, g.support)) g.alpha = -g.alpha;
    r.body.gadgets.push_back(g);
  }
  r.layer = l.layer.inverse();
  return r;
}

Circuit sequence_to_basic_circuit(const GadgetSequence& seq) {
  Circuit c;
  c.num_qubits = seq.num_qubits;
  for (const PhaseGadget& g : seq.gadgets) {
    if (g.support.empty()) continue;
    const std::vector<QubitId> qs = g.support.to_vector();
    const Mat2 b = basis_change(g.axis);  // b Z b^dagger = axis
    if (qs.size() == 1) {
      c.gates.emplace_back(make_1q(qs[0], pauli_exp(g.axis, g.alpha * kPi / 2), "g1", g.axis));
      continue;
    }
    if (g.axis != Pauli::Z) {
      for (QubitId q : qs) c.gates.emplace_back(make_1q(q, b.adjoint(), "pre"));
    }
    if (qs.size() == 2) {
      c.gates.emplace_back(ZzRotation{qs[0], qs[1], g.alpha * kPi / 2});
    } else {
      const QubitId hub = qs.front();
      for (std::size_t i = 1; i < qs.size(); ++i) c.gates.emplace_back(cx(qs[i], hub));
      c.gates.emplace_back(make_1q(hub, pauli_exp(Pauli::Z, g.alpha * kPi / 2), "g1", Pauli::Z));
      for (std::size_t i = 1; i < qs.size(); ++i) c.gates.emplace_back(cx(qs[i], hub));
    }
    if (g.axis != Pauli::Z) {
      for (QubitId q : qs) c.gates.emplace_back(make_1q(q, b, "post"));
    }
  }
  for (auto& g : seq.frame.gates()) c.gates.push_back(std::move(g));
  return c;
}

GadgetSequence conjugate_sequence(const GadgetSequence& seq, QubitId control, QubitId target) {
  GadgetSequence out = seq;
  for (auto& g : out.gadgets) g = commute_cnot(control, target, g);
  CnotLayer c(seq.num_qubits);
  c.append(control, target);
  out.frame = c.conjugate(seq.frame);
  return out;
}

CostMatrix conjugation_cost_matrix(const GadgetSequence& seq, RealizationScheme scheme) {
  const std::uint32_t n = seq.num_qubits;
  CostMatrix m;
  m.n = n;
  m.cells.assign(static_cast<std::size_t>(n) * n, CostVector{});
  const CostVector here = realization_cost(seq, scheme);
  const auto total = static_cast<std::int64_t>(n) * n;
  // Each cell is independent; the fill order does not affect the result.
#pragma omp parallel for schedule(dynamic) if (total > 16)
  for (std::int64_t idx = 0; idx < total; ++idx) {
    const auto r = static_cast<std::uint32_t>(idx / n);
    const auto c = static_cast<std::uint32_t>(idx % n);
    m.cells[idx] = r == c ? here : realization_cost(conjugate_sequence(seq, r, c), scheme);
  }
  return m;
}

Matching greedy_matching(const Eigen::MatrixXd& w) {
  struct Edge {
    double w;
    QubitId a, b;
  };
  std::vector<Edge> edges;
  for (Eigen::Index i = 0; i < w.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < w.cols(); ++j) {
      if (w(i, j) > 1e-9) edges.push_back({w(i, j), static_cast<QubitId>(i), static_cast<QubitId>(j)});
    }
  }
  std::stable_sort(edges.begin(), edges.end(), [](const Edge& x, const Edge& y) { return x.w > y.w; });
  Matching m;
  QubitSet used;
  for (const Edge& e : edges) {
    if (used.contains(e.a) || used.contains(e.b)) continue;
    used.insert(e.a);
    used.insert(e.b);
    m.pairs.emplace_back(e.a, e.b);
    m.weight += e.w;
  }
  return m;
}

Matching exhaustive_matching(const Eigen::MatrixXd& w) {
  const auto n = static_cast<std::uint32_t>(w.rows());
  if (n > 16) throw std::invalid_argument("exhaustive_matching: at most 16 vertices");
  const std::uint32_t full = (1u << n) - 1;
  std::vector<double> best(full + 1, 0.0);
  std::vector<int> choice(full + 1, -1);  // partner of the lowest vertex, -1 = unmatched
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    const auto i = static_cast<std::uint32_t>(__builtin_ctz(mask));
    const std::uint32_t rest = mask & ~(1u << i);
    best[mask] = best[rest];
    for (std::uint32_t j = i + 1; j < n; ++j) {
      if (!(rest & (1u << j)) || w(i, j) <= 1e-9) continue;
      const double v = w(i, j) + best[rest & ~(1u << j)];
      if (v > best[mask] + 1e-12) {
        best[mask] = v;
        choice[mask] = static_cast<int>(j);
      }
    }
  }
  Matching m;
  m.weight = best[full];
  for (std::uint32_t mask = full; mask != 0;) {
    const auto i = static_cast<std::uint32_t>(__builtin_ctz(mask));
    const int j = choice[mask];
    mask &= ~(1u << i);
    if (j >= 0) {
      m.pairs.emplace_back(i, static_cast<QubitId>(j));
      mask &= ~(1u << j);
    }
  }
  std::sort(m.pairs.begin(), m.pairs.end());
  return m;
}

NormStep norm_reduction_step(const GadgetSequence& seq, const CompileOptions& opts) {
  NormStep out;
  out.seq = seq;
  const std::uint32_t n = seq.num_qubits;
  if (n < 2) return out;
  const CostMatrix cm = conjugation_cost_matrix(seq, opts.scheme);
  const CostVector here = cm.at(0, 0);

  // Weight of the better orientation of each pair; orientations that add MQ
  // gates are never candidates.
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
  std::vector<std::pair<QubitId, QubitId>> orient(static_cast<std::size_t>(n) * n);
  for (std::uint32_t a = 0; a < n; ++a) {
    for (std::uint32_t b = a + 1; b < n; ++b) {
      double gain = 0.0;
      std::pair<QubitId, QubitId> pick{a, b};
      for (auto [c, t] : {std::pair<QubitId, QubitId>{a, b}, std::pair<QubitId, QubitId>{b, a}}) {
        const CostVector& v = cm.at(c, t);
        if (v.mq_count > here.mq_count) continue;
        const double g = here.norm - v.norm;
        if (g > gain + 1e-12) {
          gain = g;
          pick = {c, t};
        }
      }
      w(a, b) = w(b, a) = gain;
      orient[a * n + b] = pick;
    }
  }

  const Matching m = opts.matching == MatchingMode::Exhaustive && n <= 12 ? exhaustive_matching(w) : greedy_matching(w);
  if (m.pairs.empty() || m.weight <= 1e-9) return out;

  auto apply = [&](const std::vector<std::pair<QubitId, QubitId>>& cnots) {
    GadgetSequence s = seq;
    for (auto [c, t] : cnots) s = conjugate_sequence(s, c, t);
    return simplify(s);
  };
  std::vector<std::pair<QubitId, QubitId>> cnots;
  for (auto [a, b] : m.pairs) cnots.push_back(orient[a * n + b]);
  GadgetSequence next = apply(cnots);
  if (!cost_less(realization_cost(next, opts.scheme), here, opts.cost)) {
    // Gains are not additive in general; fall back to the heaviest single pair.
    auto heaviest = std::max_element(m.pairs.begin(), m.pairs.end(), [&](auto x, auto y) {
      return w(x.first, x.second) < w(y.first, y.second);
    });
    cnots = {orient[heaviest->first * n + heaviest->second]};
    next = apply(cnots);
    if (!cost_less(realization_cost(next, opts.scheme), here, opts.cost)) return out;
  }
  out.cnots = cnots;
  out.seq = std::move(next);
  out.improved = true;
  return out;
}

// ---------------------------------------------------------------------------

bool CompiledProgram::ancilla_used() const {
  return realize(body, scheme).ancilla_used;
}

Circuit CompiledProgram::logical_circuit() const {
  Circuit c;
  c.num_qubits = num_qubits;
  for (auto& g : pre.gates()) c.gates.push_back(std::move(g));
  for (auto& g : body.to_circuit().gates) c.gates.push_back(std::move(g));
  for (auto& g : post.gates()) c.gates.push_back(std::move(g));
  return c;
}

Circuit CompiledProgram::realized_circuit() const {
  const Realization r = realize(body, scheme);
  Circuit c;
  c.num_qubits = r.circuit.num_qubits;
  for (auto& g : pre.gates()) c.gates.push_back(std::move(g));
  for (const auto& g : r.circuit.gates) c.gates.push_back(g);
  for (auto& g : post.gates()) c.gates.push_back(std::move(g));
  return c;
}

namespace {

struct Candidate {
  CnotLayer pre;
  GadgetSequence body;
  CnotLayer post;
  CostVector cost;
  std::size_t events = 0;
};

void reduce_to_fixed_point(Candidate& cand, const CompileOptions& opts) {
  if (opts.norm_reduction) {
    for (int guard = 0; guard < 10000; ++guard) {
      NormStep s = norm_reduction_step(cand.body, opts);
      if (!s.improved) break;
      for (auto [c, t] : s.cnots) {
        cand.pre.append(c, t);
        cand.post.prepend(c, t);
      }
      cand.body = std::move(s.seq);
    }
  }
  cand.cost = realization_cost(cand.body, opts.scheme);
}

// Both primitives applied to `body`, keeping the outer layers; returns the cheaper.
Candidate best_of_both(const Circuit& body, const CnotLayer& pre, const CnotLayer& post, const CompileOptions& opts) {
  const Factorization l = pg_left(body);
  Candidate left{pre.then(l.layer), l.body, post, {}, l.commutation_events};
  reduce_to_fixed_point(left, opts);

  const Factorization r = pg_right(body);
  Candidate right{pre, r.body, r.layer.then(post), {}, r.commutation_events};
  reduce_to_fixed_point(right, opts);

  const std::size_t events = left.events + right.events;
  Candidate& pick = cost_less(right.cost, left.cost, opts.cost) ? right : left;
  pick.events = events;
  return pick;
}

}  // namespace

CompiledProgram optimize(const Circuit& c, const CompileOptions& opts) {
  if (c.has_measurements()) throw CircuitError("optimize: strip measurements first");
  const std::uint32_t n = c.num_qubits;
  CompiledProgram p;
  p.num_qubits = n;
  p.scheme = opts.scheme;
  if (const std::size_t depth = layerize(c).size(); depth > opts.depth_warning) {
    p.warnings.push_back("depth " + std::to_string(depth) + " exceeds " + std::to_string(opts.depth_warning) +
                         " layers; compiling without circuit cutting");
  }

  Candidate cur = best_of_both(c, CnotLayer(n), CnotLayer(n), opts);
  p.commutation_events = cur.events;
  p.history.push_back(cur.cost);
  for (int it = 0; it < opts.max_iterations; ++it) {
    Candidate next = best_of_both(sequence_to_basic_circuit(cur.body), cur.pre, cur.post, opts);
    p.commutation_events += next.events;
    if (!cost_less(next.cost, cur.cost, opts.cost)) break;
    cur = std::move(next);
    p.history.push_back(cur.cost);
  }
  p.pre = cur.pre;
  p.body = cur.body;
  p.post = cur.post;
  p.cost = cur.cost;
  return p;
}

Verification verify_program(const CompiledProgram& p, const Circuit& c) {
  Verification v;
  MatX u = to_unitary(p.realized_circuit());
  const MatX want = to_unitary(c);
  const auto d = want.rows();
  if (u.rows() != d) {
    v.leakage = u.block(d, 0, u.rows() - d, d).norm();
    u = u.block(0, 0, d, d).eval();
  }
  v.distance = distance_up_to_phase(u, want);
  return v;
}

Verification verify_program_states(const CompiledProgram& p, const Circuit& c, int states, std::uint64_t seed) {
  Verification v;
  const Circuit realized = p.realized_circuit();
  const std::uint32_t n = c.num_qubits;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::vector<std::vector<cplx>> want, got;
  cplx overlap = 0.0;
  for (int k = 0; k < states; ++k) {
    StateVector a(n), b(realized.num_qubits);
    double nrm = 0.0;
    for (auto& x : a.amplitudes()) {
      x = {normal(rng), normal(rng)};
      nrm += std::norm(x);
    }
    a.scale(1.0 / std::sqrt(nrm));
    // The ancilla is the top qubit, so the |0> block is the low half.
    std::copy(a.amplitudes().begin(), a.amplitudes().end(), b.amplitudes().begin());
    for (const Gate& g : c.gates) a.apply(g);
    for (const Gate& g : realized.gates) b.apply(g);
    const std::size_t d = a.dim();
    double leak = 0.0;
    for (std::size_t i = d; i < b.dim(); ++i) leak += std::norm(b.amplitudes()[i]);
    v.leakage = std::max(v.leakage, std::sqrt(leak));
    want.emplace_back(a.amplitudes().begin(), a.amplitudes().end());
    got.emplace_back(b.amplitudes().begin(), b.amplitudes().begin() + static_cast<std::ptrdiff_t>(d));
    for (std::size_t i = 0; i < d; ++i) overlap += std::conj(got.back()[i]) * want.back()[i];
  }
  const cplx ph = std::abs(overlap) > 0 ? overlap / std::abs(overlap) : cplx{1.0};
  for (std::size_t k = 0; k < want.size(); ++k) {
    for (std::size_t i = 0; i < want[k].size(); ++i) v.distance = std::max(v.distance, std::abs(want[k][i] - ph * got[k][i]));
  }
  return v;
}

}  // namespace pgc
