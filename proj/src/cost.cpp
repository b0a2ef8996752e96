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

#include "pgc/cost.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <optional>

#include <Eigen/Eigenvalues>

#include "pgc/qasm.hpp"

namespace pgc {

double nuclear_norm(const MultiQubitGate& g) {
  if (g.empty()) return 0.0;
  // Compress to the qubits that actually appear so large registers stay cheap.
  std::map<QubitId, Eigen::Index> idx;
  for (const auto& [k, th] : g.pairs()) {
    idx.emplace(k.first, 0);
    idx.emplace(k.second, 0);
  }
  Eigen::Index n = 0;
  for (auto& [q, i] : idx) i = n++;
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (const auto& [k, th] : g.pairs()) {
    m(idx[k.first], idx[k.second]) += th / 2;
    m(idx[k.second], idx[k.first]) += th / 2;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().sum();
}

double star_norm(std::size_t k) { return kPi / 4 * std::sqrt(static_cast<double>(k)); }

bool cost_less(const CostVector& a, const CostVector& b, const CostOptions& opts) {
  if (opts.order == CostOrder::WeightedSum) {
    const double sa = static_cast<double>(a.mq_count) + opts.norm_weight * a.norm;
    const double sb = static_cast<double>(b.mq_count) + opts.norm_weight * b.norm;
    return sa < sb - opts.tolerance;
  }
  if (a.mq_count != b.mq_count) return a.mq_count < b.mq_count;
  return a.norm < b.norm - opts.tolerance;
}

namespace {

int weight_class(const PhaseGadget& g) { return std::min<int>(static_cast<int>(g.support.size()), 3); }

}  // namespace

std::vector<GadgetGroup> group_gadgets(const std::vector<PhaseGadget>& gadgets) {
  struct Slot {
    GadgetGroup group;
    QubitSet support;  // union over members
  };
  std::vector<Slot> slots;
  for (const PhaseGadget& g : gadgets) {
    if (g.support.empty()) continue;
    const int wc = weight_class(g);
    // Walk left while g commutes with the whole group; remember the leftmost
    // compatible group passed on the way.
    std::optional<std::size_t> target;
    for (std::size_t i = slots.size(); i-- > 0;) {
      const Slot& s = slots[i];
      const bool same = s.group.axis == g.axis;
      if (same && s.group.weight_class == wc) target = i;
      if (same || !s.support.intersects(g.support)) continue;
      const bool blocks = std::any_of(s.group.members.begin(), s.group.members.end(),
                                      [&](const PhaseGadget& m) { return !pg_commutes(m, g); });
      if (blocks) break;
    }
    if (!target) {
      slots.push_back(Slot{GadgetGroup{g.axis, wc, {}}, QubitSet{}});
      target = slots.size() - 1;
    }
    slots[*target].group.members.push_back(g);
    slots[*target].support |= g.support;
  }
  std::vector<GadgetGroup> out;
  out.reserve(slots.size());
  for (auto& s : slots) out.push_back(std::move(s.group));
  return out;
}

namespace {

Mat2 gadget_matrix(Pauli p, double alpha) { return pauli_exp(p, alpha * kPi / 2); }

Pauli fanout_hub_axis(Pauli p) { return p == Pauli::Z ? Pauli::X : Pauli::Z; }

// Receives the realization events in time order. Both the gate builder and the
// counter walk the same event stream so they can never disagree.
struct Sink {
  bool build = false;
  Realization* out = nullptr;
  CostVector cost;

  bool touched_ancilla = false;

  void local(const Gate& g) {
    if (build) out->circuit.gates.push_back(g);
  }
  void controlled(const ControlledPauli& f, MqKind kind) {
    if (!f.spokes.empty()) {
      ++cost.mq_count;
      cost.norm += star_norm(f.spokes.size());
    }
    if (!build) return;
    MqRealization r = realize_controlled_pauli(f);
    for (auto& g : r.gates()) out->circuit.gates.push_back(g);
    if (!r.gate.empty()) {
      out->mq_gates.push_back(r.gate);
      out->kinds.push_back(kind);
    }
  }
  // exp(i alpha pi/2 P P) terms of one axis as a single U_MQ in that basis.
  void direct(const GadgetGroup& grp) {
    MultiQubitGate m;
    QubitSet support;
    for (const auto& g : grp.members) {
      const auto qs = g.support.to_vector();
      m.add_pair(qs[0], qs[1], g.alpha * kPi / 2);
      support |= g.support;
    }
    if (m.empty()) return;
    ++cost.mq_count;
    cost.norm += nuclear_norm(m);
    if (!build) return;
    const Mat2 b = basis_change(grp.axis);
    const bool rotate = grp.axis != Pauli::Z;
    if (rotate) {
      for (QubitId q : support.to_vector()) out->circuit.gates.emplace_back(make_1q(q, b.adjoint(), "pre"));
    }
    out->circuit.gates.emplace_back(m);
    if (rotate) {
      for (QubitId q : support.to_vector()) out->circuit.gates.emplace_back(make_1q(q, b, "post"));
    }
    out->mq_gates.push_back(m);
    out->kinds.push_back(MqKind::Direct);
  }
};

void emit_1q(Sink& sink, const PhaseGadget& g) {
  const QubitId q = g.support.to_vector().front();
  sink.local(make_1q(q, gadget_matrix(g.axis, g.alpha), "g1", g.axis));
}

void walk_no_ancilla(const std::vector<GadgetGroup>& groups, Sink& sink) {
  for (const GadgetGroup& grp : groups) {
    if (grp.weight_class == 2) {
      sink.direct(grp);
      continue;
    }
    for (const PhaseGadget& g : grp.members) {
      if (g.support.size() == 1) {
        emit_1q(sink, g);
        continue;
      }
      const QubitId jstar = g.support.to_vector().front();
      const ControlledPauli f = ControlledPauli::from_gadget(g.axis, g.support, jstar, fanout_hub_axis(g.axis));
      sink.controlled(f, MqKind::Fanout);
      sink.local(make_1q(jstar, gadget_matrix(g.axis, g.alpha), "g1", g.axis));
      sink.controlled(f, MqKind::Fanout);
    }
  }
}

// Chains of ancilla fanouts: gadget i is F_i Rz_a F_i and consecutive F's merge.
class AncillaChain {
 public:
  AncillaChain(QubitId a, Sink& sink) : a_(a), sink_(sink) {}

  bool open() const { return open_.has_value(); }

  void single(const PhaseGadget& g) {
    if (open_) {
      pending_.push_back(g);
    } else {
      emit_1q(sink_, g);
    }
  }

  void gadget(const PhaseGadget& g) {
    if (g.support.contains(a_)) throw CircuitError("ancilla index collides with a gadget support");
    const ControlledPauli f = ControlledPauli::from_gadget(g.axis, g.support, a_, Pauli::Y);
    if (open_) {
      // Single-qubit gadgets leave the interface leftwards when they commute
      // with the closing fanout, otherwise rightwards past the opening one.
      std::vector<PhaseGadget> left, right;
      QubitSet stuck;
      bool broken = false;
      for (const PhaseGadget& p : pending_) {
        const QubitId q = p.support.to_vector().front();
        if (!stuck.contains(q) && open_->commutes_with_local(q, p.axis)) {
          left.push_back(p);
          continue;
        }
        stuck.insert(q);
        if (f.commutes_with_local(q, p.axis)) {
          right.push_back(p);
        } else {
          broken = true;
        }
      }
      if (broken) {
        sink_.controlled(*open_, MqKind::Fanout);
        for (const auto& p : pending_) emit_1q(sink_, p);
        sink_.controlled(f, MqKind::Fanout);
      } else {
        for (const auto& p : left) emit_1q(sink_, p);
        sink_.controlled(open_->then(f), MqKind::Interface);
        for (const auto& p : right) emit_1q(sink_, p);
      }
      pending_.clear();
    } else {
      sink_.controlled(f, MqKind::Fanout);
    }
    sink_.touched_ancilla = true;
    sink_.local(make_1q(a_, gadget_matrix(Pauli::Z, g.alpha), "g1", Pauli::Z));
    open_ = f;
  }

  void close() {
    if (open_) sink_.controlled(*open_, MqKind::Fanout);
    for (const auto& p : pending_) emit_1q(sink_, p);
    open_.reset();
    pending_.clear();
  }

 private:
  QubitId a_;
  Sink& sink_;
  std::optional<ControlledPauli> open_;
  std::vector<PhaseGadget> pending_;
};

void walk_ancilla(const std::vector<GadgetGroup>& groups, QubitId a, Sink& sink) {
  AncillaChain chain(a, sink);
  for (const GadgetGroup& grp : groups) {
    if (grp.weight_class == 1) {
      for (const auto& g : grp.members) chain.single(g);
      continue;
    }
    // A lone weight-2 gadget inside a running chain costs one extra gate
    // either way; keeping it in the chain avoids splitting the chain.
    if (grp.weight_class == 2 && (!chain.open() || grp.members.size() >= 2)) {
      chain.close();
      sink.direct(grp);
      continue;
    }
    for (const auto& g : grp.members) chain.gadget(g);
  }
  chain.close();
}

Sink run(const GadgetSequence& seq, RealizationScheme scheme, Realization* out) {
  Sink sink;
  sink.build = out != nullptr;
  sink.out = out;
  const std::vector<GadgetGroup> groups = group_gadgets(seq.gadgets);
  if (scheme == RealizationScheme::NoAncilla) {
    walk_no_ancilla(groups, sink);
  } else {
    walk_ancilla(groups, seq.num_qubits, sink);
  }
  if (sink.build) {
    for (auto& g : seq.frame.gates()) out->circuit.gates.push_back(g);
  }
  return sink;
}

}  // namespace

Realization realize(const GadgetSequence& seq, RealizationScheme scheme) {
  Realization r;
  r.circuit.num_qubits = seq.num_qubits + (scheme == RealizationScheme::AncillaMerged ? 1 : 0);
  const Sink sink = run(seq, scheme, &r);
  r.cost = sink.cost;
  r.ancilla_used = sink.touched_ancilla;
  if (!r.ancilla_used) r.circuit.num_qubits = seq.num_qubits;
  return r;
}

CostVector realization_cost(const GadgetSequence& seq, RealizationScheme scheme) {
  return run(seq, scheme, nullptr).cost;
}

// ---------------------------------------------------------------------------

namespace {

// |theta| of the ZZ content of a two-qubit gate; CNOTs are ZZ(pi/4) up to locals.
double zz_weight(const Gate& g) {
  if (const auto* z = std::get_if<ZzRotation>(&g)) return z->theta;
  if (std::holds_alternative<GeneralizedCnot>(g)) return kPi / 4;
  return 0.0;
}

}  // namespace

CostVector baseline_parallel_merge(const Circuit& c) {
  std::vector<std::size_t> frontier(c.num_qubits, 0);
  std::vector<MultiQubitGate> layers;
  for (const Gate& g : c.gates) {
    if (std::holds_alternative<Measure>(g)) continue;
    const std::vector<QubitId> qs = gate_qubits(g);
    if (qs.empty()) continue;
    std::size_t layer = 0;
    for (QubitId q : qs) layer = std::max(layer, frontier[q]);
    for (QubitId q : qs) frontier[q] = layer + 1;
    if (!is_entangling(g)) continue;
    if (layers.size() <= layer) layers.resize(layer + 1);
    if (const auto* m = std::get_if<MultiQubitGate>(&g)) {
      for (const auto& [k, th] : m->pairs()) layers[layer].add_pair(k.first, k.second, th);
    } else if (qs.size() == 2) {
      layers[layer].add_pair(qs[0], qs[1], zz_weight(g));
    } else {
      throw CircuitError("baseline expects a zz-basis circuit, got " + gate_name(g));
    }
  }
  CostVector out;
  for (const auto& m : layers) {
    if (m.empty()) continue;
    ++out.mq_count;
    out.norm += nuclear_norm(m);
  }
  return out;
}

double input_norm(const Circuit& c) {
  double s = 0.0;
  for (const Gate& g : c.gates) {
    if (const auto* m = std::get_if<MultiQubitGate>(&g)) {
      s += nuclear_norm(*m);
    } else {
      s += std::abs(zz_weight(g));
    }
  }
  return s;
}

namespace {

double ratio(double num, double den) {
  if (den > 0) return num / den;
  return num > 0 ? std::numeric_limits<double>::infinity() : 1.0;
}

}  // namespace

Metrics compute_metrics(const Circuit& input, const CostVector& compiled) {
  Metrics m;
  m.two_qubit_count = two_qubit_count(input);
  m.baseline = baseline_parallel_merge(input);
  m.compiled = compiled;
  m.input_norm = input_norm(input);
  m.ratio_two_qubit = ratio(static_cast<double>(m.two_qubit_count), static_cast<double>(compiled.mq_count));
  m.ratio_baseline = ratio(static_cast<double>(m.baseline.mq_count), static_cast<double>(compiled.mq_count));
  m.ratio_norm = ratio(m.input_norm, compiled.norm);
  return m;
}

}  // namespace pgc
