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

#include "pgc/gadget.hpp"

#include <cmath>

namespace pgc {

namespace {

Mat2 rotation(Pauli p, double alpha) { return pauli_exp(p, alpha * kPi / 2); }

Mat2 plus_projector(Pauli p) { return (Mat2::Identity() + pauli_matrix(p)) / 2.0; }
Mat2 minus_projector(Pauli p) { return (Mat2::Identity() - pauli_matrix(p)) / 2.0; }

Pauli anticommuting_partner(Pauli p) { return p == Pauli::Z ? Pauli::X : Pauli::Z; }

bool paulis_commute(Pauli a, Pauli b) { return a == Pauli::I || b == Pauli::I || a == b; }

}  // namespace

// ---------------------------------------------------------------------------
// PauliFrame

void PauliFrame::multiply(Pauli axis, const QubitSet& support) {
  if (axis == Pauli::X || axis == Pauli::Y) x ^= support;
  if (axis == Pauli::Z || axis == Pauli::Y) z ^= support;
}

bool PauliFrame::anticommutes(Pauli axis, const QubitSet& support) const {
  // X^x Z^z against P_J: count positions where the single-qubit Paulis clash.
  std::size_t n = 0;
  if (axis == Pauli::Z) n = support.intersection_size(x);
  if (axis == Pauli::X) n = support.intersection_size(z);
  if (axis == Pauli::Y) n = support.intersection_size(x ^ z);
  return n % 2 == 1;
}

Pauli PauliFrame::on(QubitId q) const {
  const bool bx = x.contains(q);
  const bool bz = z.contains(q);
  if (bx && bz) return Pauli::Y;
  if (bx) return Pauli::X;
  if (bz) return Pauli::Z;
  return Pauli::I;
}

std::vector<Gate> PauliFrame::gates() const {
  std::vector<Gate> out;
  for (QubitId q : (x | z).to_vector()) out.emplace_back(pauli_gate(q, on(q)));
  return out;
}

// ---------------------------------------------------------------------------
// GadgetSequence

Circuit GadgetSequence::to_circuit() const {
  Circuit c;
  c.num_qubits = num_qubits;
  for (const auto& g : gadgets) c.gates.emplace_back(g);
  for (auto& g : frame.gates()) c.gates.push_back(std::move(g));
  return c;
}

std::size_t GadgetSequence::multi_qubit_count() const {
  std::size_t n = 0;
  for (const auto& g : gadgets) n += g.support.size() >= 2 ? 1 : 0;
  return n;
}

std::pair<cplx, Pauli> pauli_product(Pauli a, Pauli b) {
  if (a == Pauli::I) return {1.0, b};
  if (b == Pauli::I) return {1.0, a};
  if (a == b) return {1.0, Pauli::I};
  // XY = iZ, YZ = iX, ZX = iY; reversed order flips the sign.
  auto idx = [](Pauli p) { return static_cast<int>(p) - 1; };  // X=0, Y=1, Z=2
  const int ia = idx(a);
  const int ib = idx(b);
  const int ic = 3 - ia - ib;
  const bool cyclic = (ib - ia + 3) % 3 == 1;
  return {cyclic ? kI : -kI, static_cast<Pauli>(ic + 1)};
}

// ---------------------------------------------------------------------------
// Decompositions

std::vector<Gate> decompose_pg(const PhaseGadget& g, QubitId jstar) {
  if (!g.support.contains(jstar)) throw CircuitError("decompose_pg: jstar is not in the gadget support");
  const Pauli q = anticommuting_partner(g.axis);
  std::vector<Gate> fan;
  for (QubitId j : g.support.to_vector()) {
    if (j != jstar) fan.emplace_back(GeneralizedCnot{g.axis, j, q, jstar});
  }
  std::vector<Gate> out = fan;
  out.emplace_back(make_1q(jstar, rotation(g.axis, g.alpha), "g1", g.axis));
  out.insert(out.end(), fan.begin(), fan.end());
  return out;
}

std::vector<Gate> decompose_pg_ancilla(const PhaseGadget& g, QubitId a) {
  if (g.support.contains(a)) throw CircuitError("decompose_pg_ancilla: ancilla inside the gadget support");
  std::vector<Gate> fan;
  for (QubitId j : g.support.to_vector()) fan.emplace_back(GeneralizedCnot{g.axis, j, Pauli::Y, a});
  std::vector<Gate> out = fan;
  out.emplace_back(make_1q(a, rotation(Pauli::Z, g.alpha), "g1", Pauli::Z));
  out.insert(out.end(), fan.begin(), fan.end());
  return out;
}

// ---------------------------------------------------------------------------
// ControlledPauli

ControlledPauli ControlledPauli::from_gadget(Pauli axis, const QubitSet& support, QubitId hub, Pauli hub_axis) {
  ControlledPauli f;
  f.hub = hub;
  f.hub_axis = hub_axis;
  for (QubitId q : support.to_vector()) {
    if (q != hub) f.spokes[q] = axis;
  }
  return f;
}

ControlledPauli ControlledPauli::then(const ControlledPauli& next) const {
  if (next.hub != hub || next.hub_axis != hub_axis) throw CircuitError("controlled Paulis with different hubs");
  ControlledPauli out = *this;
  out.phase = phase * next.phase;
  for (const auto& [q, p] : next.spokes) {
    auto it = out.spokes.find(q);
    if (it == out.spokes.end()) {
      out.spokes[q] = p;
      continue;
    }
    // Operator order is next * this.
    auto [ph, r] = pauli_product(p, it->second);
    out.phase *= ph;
    if (r == Pauli::I) {
      out.spokes.erase(it);
    } else {
      it->second = r;
    }
  }
  return out;
}

QubitSet ControlledPauli::support() const {
  QubitSet s;
  for (const auto& [q, p] : spokes) s.insert(q);
  return s;
}

bool ControlledPauli::commutes_with_local(QubitId q, Pauli r) const {
  if (q == hub) return r == hub_axis || r == Pauli::I;
  auto it = spokes.find(q);
  return it == spokes.end() || paulis_commute(it->second, r);
}

std::vector<Gate> ControlledPauli::as_cnots() const {
  std::vector<Gate> out;
  for (const auto& [q, p] : spokes) out.emplace_back(GeneralizedCnot{p, q, hub_axis, hub});
  return out;
}

std::vector<Gate> MqRealization::gates() const {
  std::vector<Gate> out = before;
  if (!gate.empty()) out.emplace_back(gate);
  out.insert(out.end(), after.begin(), after.end());
  return out;
}

MqRealization realize_controlled_pauli(const ControlledPauli& f) {
  // C_{A^Q} = e^{i pi/4} exp(-i pi/4 A) exp(-i pi/4 Q) exp(i pi/4 A Q), and
  // exp(i pi/4 A Q) is a ZZ(pi/4) conjugated by basis changes on both ends.
  MqRealization r;
  const auto k = static_cast<double>(f.spokes.size());
  const Mat2 bh = basis_change(f.hub_axis);
  const Mat2 branch = plus_projector(f.hub_axis) + f.phase * minus_projector(f.hub_axis);
  if (f.spokes.empty()) {
    r.after.emplace_back(make_1q(f.hub, branch, "hub"));
    return r;
  }
  for (const auto& [q, p] : f.spokes) {
    r.before.emplace_back(make_1q(q, basis_change(p).adjoint(), "pre"));
    r.gate.add_pair(q, f.hub, kPi / 4);
  }
  r.before.emplace_back(make_1q(f.hub, bh.adjoint(), "pre"));
  for (const auto& [q, p] : f.spokes) {
    r.after.emplace_back(make_1q(q, pauli_exp(p, -kPi / 4) * basis_change(p), "post"));
  }
  r.after.emplace_back(make_1q(f.hub, branch * pauli_exp(f.hub_axis, -k * kPi / 4) * bh, "post"));
  return r;
}

MqRealization fanout_to_mq(const std::vector<GeneralizedCnot>& fanout) {
  if (fanout.empty()) return {};
  ControlledPauli f;
  f.hub = fanout.front().target;
  f.hub_axis = fanout.front().target_axis;
  for (const auto& c : fanout) {
    if (c.target != f.hub || c.target_axis != f.hub_axis) {
      throw CircuitError("fanout_to_mq: CNOTs do not share one target and axis");
    }
    ControlledPauli one;
    one.hub = f.hub;
    one.hub_axis = f.hub_axis;
    if (c.control_axis != Pauli::I) one.spokes[c.control] = c.control_axis;
    f = f.then(one);
  }
  return realize_controlled_pauli(f);
}

MqRealization merge_interface(const QubitSet& j, Pauli axis_j, const QubitSet& k, Pauli axis_k, QubitId a) {
  if (j.contains(a) || k.contains(a)) throw CircuitError("merge_interface: ancilla inside a gadget support");
  const ControlledPauli fj = ControlledPauli::from_gadget(axis_j, j, a, Pauli::Y);
  const ControlledPauli fk = ControlledPauli::from_gadget(axis_k, k, a, Pauli::Y);
  return realize_controlled_pauli(fj.then(fk));
}

// ---------------------------------------------------------------------------
// Commutation

PhaseGadget commute_cnot(QubitId control, QubitId target, const PhaseGadget& g, Direction /*dir*/) {
  PhaseGadget out = g;
  if (g.axis == Pauli::Z) {
    if (g.support.contains(target)) out.support.toggle(control);
  } else if (g.axis == Pauli::X) {
    if (g.support.contains(control)) out.support.toggle(target);
  } else {
    throw CircuitError("commute_cnot: only X and Z gadgets are supported");
  }
  return out;
}

bool pg_commutes(const PhaseGadget& a, const PhaseGadget& b) {
  return a.axis == b.axis || a.support.intersection_size(b.support) % 2 == 0;
}

// ---------------------------------------------------------------------------
// Simplification

namespace {

bool same_key(const PhaseGadget& a, const PhaseGadget& b) { return a.axis == b.axis && a.support == b.support; }

// Returns true if anything changed.
bool normalize_angles(GadgetSequence& seq) {
  bool changed = false;
  auto& gs = seq.gadgets;
  for (std::size_t i = 0; i < gs.size(); ++i) {
    double a = gs[i].alpha;
    a -= 4.0 * std::floor((a + 2.0) / 4.0);  // [-2, 2)
    if (a == -2.0) a = 2.0;
    const double k = std::nearbyint(a);
    const double r = a - k;
    if (r != gs[i].alpha) changed = true;
    gs[i].alpha = r;
    if (static_cast<long long>(k) % 2 != 0) {
      // exp(i k pi/2 P) = i^k P^k: push P_J to the end of the sequence.
      for (std::size_t j = i + 1; j < gs.size(); ++j) {
        const std::size_t overlap = gs[j].support.intersection_size(gs[i].support);
        if (gs[j].axis != gs[i].axis && overlap % 2 == 1) gs[j].alpha = -gs[j].alpha;
      }
      seq.frame.multiply(gs[i].axis, gs[i].support);
    }
  }
  return changed;
}

bool prune(GadgetSequence& seq) {
  const std::size_t before = seq.gadgets.size();
  std::erase_if(seq.gadgets, [](const PhaseGadget& g) { return std::abs(g.alpha) < 1e-12 || g.support.empty(); });
  return seq.gadgets.size() != before;
}

bool merge_pass(GadgetSequence& seq) {
  auto& gs = seq.gadgets;
  bool changed = false;
  for (std::size_t i = 0; i < gs.size(); ++i) {
    for (std::size_t j = i + 1; j < gs.size();) {
      if (!same_key(gs[i], gs[j])) {
        ++j;
        continue;
      }
      bool free = true;
      for (std::size_t m = i + 1; m < j && free; ++m) free = pg_commutes(gs[m], gs[j]);
      if (!free) {
        ++j;
        continue;
      }
      gs[i].alpha += gs[j].alpha;
      gs.erase(gs.begin() + static_cast<std::ptrdiff_t>(j));
      changed = true;
    }
  }
  return changed;
}

}  // namespace

GadgetSequence simplify(const GadgetSequence& seq) {
  GadgetSequence out = seq;
  for (;;) {
    bool changed = merge_pass(out);
    normalize_angles(out);
    changed = prune(out) || changed;
    if (!changed) break;
  }
  return out;
}

}  // namespace pgc
