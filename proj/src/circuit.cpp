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

#include "pgc/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <cctype>
#include <set>

#include "pgc/statevector.hpp"

namespace pgc {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

Mat2 minus_projector(Pauli p) { return (Mat2::Identity() - pauli_matrix(p)) / 2.0; }

}  // namespace

// ---------------------------------------------------------------------------
// MultiQubitGate

void MultiQubitGate::add_pair(QubitId n, QubitId m, double theta) {
  if (n == m) throw CircuitError("multiqubit gate pair phase on the diagonal");
  auto key = std::minmax(n, m);
  double& v = pairs_[{key.first, key.second}];
  v += theta;
  if (v == 0.0) pairs_.erase({key.first, key.second});
}

double MultiQubitGate::theta(QubitId n, QubitId m) const {
  auto key = std::minmax(n, m);
  auto it = pairs_.find({key.first, key.second});
  return it == pairs_.end() ? 0.0 : it->second;
}

QubitSet MultiQubitGate::support() const {
  QubitSet s;
  for (const auto& [k, th] : pairs_) {
    if (th == 0.0) continue;
    s.insert(k.first);
    s.insert(k.second);
  }
  return s;
}

Eigen::MatrixXd MultiQubitGate::symmetric_matrix(std::size_t dim) const {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (const auto& [k, th] : pairs_) {
    if (k.second >= dim) throw CircuitError("multiqubit gate pair outside register");
    m(k.first, k.second) += th / 2;
    m(k.second, k.first) += th / 2;
  }
  return m;
}

// ---------------------------------------------------------------------------
// Gate helpers

std::vector<QubitId> gate_qubits(const Gate& g) {
  return std::visit(overloaded{
                        [](const SingleQubitGate& s) { return std::vector<QubitId>{s.qubit}; },
                        [](const GeneralizedCnot& c) { return std::vector<QubitId>{c.control, c.target}; },
                        [](const ZzRotation& z) { return std::vector<QubitId>{z.a, z.b}; },
                        [](const MultiQubitGate& m) { return m.support().to_vector(); },
                        [](const PhaseGadget& p) { return p.support.to_vector(); },
                        [](const NamedGate& n) { return n.qubits; },
                        [](const Measure& m) { return std::vector<QubitId>{m.qubit}; },
                        [](const Barrier& b) { return b.qubits; },
                    },
                    g);
}

std::string gate_name(const Gate& g) {
  return std::visit(overloaded{
                        [](const SingleQubitGate& s) { return s.name; },
                        [](const GeneralizedCnot& c) {
                          return std::string("C_") + pauli_char(c.control_axis) + "^" + pauli_char(c.target_axis);
                        },
                        [](const ZzRotation&) { return std::string("zz"); },
                        [](const MultiQubitGate&) { return std::string("mq"); },
                        [](const PhaseGadget& p) { return std::string("G_") + pauli_char(p.axis); },
                        [](const NamedGate& n) { return n.name; },
                        [](const Measure&) { return std::string("measure"); },
                        [](const Barrier&) { return std::string("barrier"); },
                    },
                    g);
}

bool is_entangling(const Gate& g) {
  return std::visit(overloaded{
                        [](const SingleQubitGate&) { return false; },
                        [](const GeneralizedCnot&) { return true; },
                        [](const ZzRotation&) { return true; },
                        [](const MultiQubitGate& m) { return !m.empty(); },
                        [](const PhaseGadget& p) { return p.support.size() > 1; },
                        [](const NamedGate& n) { return n.qubits.size() > 1; },
                        [](const Measure&) { return false; },
                        [](const Barrier&) { return false; },
                    },
                    g);
}

MatX gate_matrix(const Gate& g) {
  return std::visit(
      overloaded{
          [](const SingleQubitGate& s) -> MatX { return s.matrix; },
          [](const GeneralizedCnot& c) -> MatX {
            Mat4 m = Mat4::Identity() - 2.0 * kron2(minus_projector(c.target_axis), minus_projector(c.control_axis));
            return m;
          },
          [](const ZzRotation& z) -> MatX {
            Mat4 m = Mat4::Zero();
            m(0, 0) = m(3, 3) = std::polar(1.0, z.theta);
            m(1, 1) = m(2, 2) = std::polar(1.0, -z.theta);
            return m;
          },
          [](const MultiQubitGate& mq) -> MatX {
            auto qs = mq.support().to_vector();
            const std::size_t dim = std::size_t{1} << qs.size();
            MatX m = MatX::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
            for (std::size_t i = 0; i < dim; ++i) {
              double phase = 0.0;
              for (const auto& [k, th] : mq.pairs()) {
                auto ia = std::find(qs.begin(), qs.end(), k.first) - qs.begin();
                auto ib = std::find(qs.begin(), qs.end(), k.second) - qs.begin();
                bool parity = (((i >> ia) ^ (i >> ib)) & 1U) != 0;
                phase += parity ? -th : th;
              }
              m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = std::polar(1.0, phase);
            }
            return m;
          },
          [](const PhaseGadget& p) -> MatX {
            MatX pm = MatX::Identity(1, 1);
            for (std::size_t k = 0; k < p.support.size(); ++k) pm = kron(pauli_matrix(p.axis), pm);
            const double beta = p.alpha * kPi / 2;
            return std::cos(beta) * MatX::Identity(pm.rows(), pm.cols()) + kI * std::sin(beta) * pm;
          },
          [](const NamedGate& n) -> MatX { return n.matrix; },
          [](const Measure&) -> MatX { throw CircuitError("measurement has no unitary"); },
          [](const Barrier& b) -> MatX {
            const auto dim = static_cast<Eigen::Index>(std::size_t{1} << b.qubits.size());
            return MatX::Identity(dim, dim);
          },
      },
      g);
}

Gate adjoint(const Gate& g) {
  return std::visit(overloaded{
                        [](const SingleQubitGate& s) -> Gate {
                          SingleQubitGate out = s;
                          out.matrix = s.matrix.adjoint();
                          out.name = s.name + "_dg";
                          return out;
                        },
                        [](const GeneralizedCnot& c) -> Gate { return c; },
                        [](const ZzRotation& z) -> Gate { return ZzRotation{z.a, z.b, -z.theta}; },
                        [](const MultiQubitGate& m) -> Gate {
                          MultiQubitGate out;
                          for (const auto& [k, th] : m.pairs()) out.add_pair(k.first, k.second, -th);
                          return out;
                        },
                        [](const PhaseGadget& p) -> Gate { return PhaseGadget{p.axis, -p.alpha, p.support}; },
                        [](const NamedGate& n) -> Gate {
                          NamedGate out = n;
                          out.matrix = n.matrix.adjoint();
                          out.name = n.name + "_dg";
                          return out;
                        },
                        [](const Measure&) -> Gate { throw CircuitError("measurement has no adjoint"); },
                        [](const Barrier& b) -> Gate { return b; },
                    },
                    g);
}

SingleQubitGate make_1q(QubitId q, const Mat2& m, std::string name, Pauli axis) {
  return SingleQubitGate{q, m, std::move(name), axis};
}

// Physics-convention rotations: R_P(theta) = exp(-i theta P / 2).
SingleQubitGate rz(QubitId q, double theta) { return make_1q(q, pauli_exp(Pauli::Z, -theta / 2), "rz", Pauli::Z); }
SingleQubitGate rx(QubitId q, double theta) { return make_1q(q, pauli_exp(Pauli::X, -theta / 2), "rx", Pauli::X); }
SingleQubitGate ry(QubitId q, double theta) { return make_1q(q, pauli_exp(Pauli::Y, -theta / 2), "ry", Pauli::Y); }
SingleQubitGate h(QubitId q) { return make_1q(q, hadamard(), "h"); }
SingleQubitGate pauli_gate(QubitId q, Pauli p) {
  return make_1q(q, pauli_matrix(p), std::string(1, static_cast<char>(std::tolower(pauli_char(p)))), p);
}
GeneralizedCnot cx(QubitId control, QubitId target) { return GeneralizedCnot{Pauli::Z, control, Pauli::X, target}; }

// ---------------------------------------------------------------------------
// Circuit

void Circuit::validate() const {
  for (std::size_t i = 0; i < gates.size(); ++i) {
    const Gate& g = gates[i];
    auto qs = gate_qubits(g);
    std::set<QubitId> seen;
    for (QubitId q : qs) {
      if (q >= num_qubits) {
        throw CircuitError("gate " + std::to_string(i) + " (" + gate_name(g) + ") uses qubit " + std::to_string(q) +
                           " outside a " + std::to_string(num_qubits) + "-qubit register");
      }
      if (!seen.insert(q).second) throw CircuitError("gate " + std::to_string(i) + " repeats qubit " + std::to_string(q));
    }
    if (const auto* m = std::get_if<Measure>(&g); m && m->bit >= num_clbits) {
      throw CircuitError("measurement into classical bit " + std::to_string(m->bit) + " outside register");
    }
    if (const auto* s = std::get_if<SingleQubitGate>(&g); s && !is_unitary(s->matrix, 1e-12)) {
      throw CircuitError("single-qubit gate " + std::to_string(i) + " is not unitary");
    }
    if (const auto* p = std::get_if<PhaseGadget>(&g); p && p->support.empty()) {
      throw CircuitError("phase gadget with empty support");
    }
  }
}

Circuit Circuit::adjoint() const {
  Circuit out;
  out.num_qubits = num_qubits;
  out.num_clbits = num_clbits;
  out.global_phase = -global_phase;
  out.gates.reserve(gates.size());
  for (auto it = gates.rbegin(); it != gates.rend(); ++it) out.gates.push_back(pgc::adjoint(*it));
  return out;
}

bool Circuit::has_measurements() const {
  return std::any_of(gates.begin(), gates.end(), [](const Gate& g) { return std::holds_alternative<Measure>(g); });
}

MatX to_unitary(const Circuit& c, const UnitaryOptions& opts) {
  if (c.num_qubits > opts.max_qubits) {
    throw CircuitError("register of " + std::to_string(c.num_qubits) + " qubits exceeds the dense-oracle cap of " +
                       std::to_string(opts.max_qubits));
  }
  if (c.has_measurements()) throw CircuitError("dense unitary requested for a circuit with measurements");
  c.validate();
  const std::size_t dim = std::size_t{1} << c.num_qubits;
  MatX u(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  const cplx phase = opts.include_global_phase ? std::polar(1.0, c.global_phase) : cplx{1.0};
  StateVector sv(c.num_qubits);
  for (std::size_t col = 0; col < dim; ++col) {
    sv.set_basis_state(col);
    for (const auto& g : c.gates) sv.apply(g, Backend::Serial);
    auto amps = sv.amplitudes();
    for (std::size_t r = 0; r < dim; ++r) u(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(col)) = phase * amps[r];
  }
  return u;
}

namespace {

// The single Pauli axis a gate's generator uses on qubit q, when it has one.
std::optional<Pauli> axis_on(const Gate& g, QubitId q) {
  return std::visit(overloaded{
                        [&](const SingleQubitGate& s) -> std::optional<Pauli> {
                          if (s.axis != Pauli::I) return s.axis;
                          return std::nullopt;
                        },
                        [&](const GeneralizedCnot& c) -> std::optional<Pauli> {
                          return q == c.control ? c.control_axis : c.target_axis;
                        },
                        [](const ZzRotation&) -> std::optional<Pauli> { return Pauli::Z; },
                        [](const MultiQubitGate&) -> std::optional<Pauli> { return Pauli::Z; },
                        [](const PhaseGadget& p) -> std::optional<Pauli> { return p.axis; },
                        [](const NamedGate&) -> std::optional<Pauli> { return std::nullopt; },
                        [](const Measure&) -> std::optional<Pauli> { return std::nullopt; },
                        [](const Barrier&) -> std::optional<Pauli> { return std::nullopt; },
                    },
                    g);
}

Gate remap(const Gate& g, const std::vector<QubitId>& order) {
  auto local = [&](QubitId q) {
    return static_cast<QubitId>(std::find(order.begin(), order.end(), q) - order.begin());
  };
  return std::visit(overloaded{
                        [&](const SingleQubitGate& s) -> Gate {
                          SingleQubitGate o = s;
                          o.qubit = local(s.qubit);
                          return o;
                        },
                        [&](const GeneralizedCnot& c) -> Gate {
                          GeneralizedCnot o = c;
                          o.control = local(c.control);
                          o.target = local(c.target);
                          return o;
                        },
                        [&](const ZzRotation& z) -> Gate { return ZzRotation{local(z.a), local(z.b), z.theta}; },
                        [&](const MultiQubitGate& m) -> Gate {
                          MultiQubitGate o;
                          for (const auto& [k, th] : m.pairs()) o.add_pair(local(k.first), local(k.second), th);
                          return o;
                        },
                        [&](const PhaseGadget& p) -> Gate {
                          PhaseGadget o{p.axis, p.alpha, {}};
                          for (QubitId q : p.support.to_vector()) o.support.insert(local(q));
                          return o;
                        },
                        [&](const NamedGate& n) -> Gate {
                          NamedGate o = n;
                          for (auto& q : o.qubits) q = local(q);
                          return o;
                        },
                        [&](const Measure& m) -> Gate { return Measure{local(m.qubit), m.bit}; },
                        [&](const Barrier& b) -> Gate {
                          Barrier o = b;
                          for (auto& q : o.qubits) q = local(q);
                          return o;
                        },
                    },
                    g);
}

MatX embedded(const Gate& g, const std::vector<QubitId>& order) {
  Circuit c;
  c.num_qubits = static_cast<std::uint32_t>(order.size());
  c.gates.push_back(remap(g, order));
  return to_unitary(c);
}

}  // namespace

bool gates_commute(const Gate& a, const Gate& b) {
  auto qa = gate_qubits(a);
  auto qb = gate_qubits(b);
  std::vector<QubitId> shared;
  for (QubitId q : qa) {
    if (std::find(qb.begin(), qb.end(), q) != qb.end()) shared.push_back(q);
  }
  if (shared.empty()) return true;
  if (std::holds_alternative<Barrier>(a) || std::holds_alternative<Barrier>(b)) return false;
  if (std::holds_alternative<Measure>(a) || std::holds_alternative<Measure>(b)) return false;
  bool symbolic = true;
  for (QubitId q : shared) {
    auto pa = axis_on(a, q);
    auto pb = axis_on(b, q);
    if (!pa || !pb || *pa != *pb) {
      symbolic = false;
      break;
    }
  }
  if (symbolic) return true;
  std::vector<QubitId> order = qa;
  for (QubitId q : qb) {
    if (std::find(order.begin(), order.end(), q) == order.end()) order.push_back(q);
  }
  std::sort(order.begin(), order.end());
  MatX ma = embedded(a, order);
  MatX mb = embedded(b, order);
  return (ma * mb - mb * ma).cwiseAbs().maxCoeff() < 1e-10;
}

std::vector<Layer> layerize(const Circuit& c) {
  std::vector<Layer> layers;
  std::vector<int> last_layer(c.num_qubits, -1);
  for (const Gate& g : c.gates) {
    if (!std::holds_alternative<SingleQubitGate>(g) && !std::holds_alternative<GeneralizedCnot>(g) &&
        !std::holds_alternative<ZzRotation>(g)) {
      throw CircuitError("layerize: unsupported gate kind '" + gate_name(g) + "'");
    }
    auto qs = gate_qubits(g);
    int start = -1;
    for (QubitId q : qs) {
      if (q >= c.num_qubits) throw CircuitError("layerize: qubit outside register");
      start = std::max(start, last_layer[q]);
    }
    int blocking = -1;
    for (int l = start; l >= 0 && blocking < 0; --l) {
      for (const Gate& other : layers[static_cast<std::size_t>(l)].gates) {
        if (!gates_commute(g, other)) {
          blocking = l;
          break;
        }
      }
    }
    const auto target = static_cast<std::size_t>(blocking + 1);
    if (target == layers.size()) layers.emplace_back();
    layers[target].gates.push_back(g);
    for (QubitId q : qs) last_layer[q] = std::max(last_layer[q], static_cast<int>(target));
  }
  return layers;
}

Circuit concat_layers(const std::vector<Layer>& layers, std::uint32_t num_qubits) {
  Circuit out;
  out.num_qubits = num_qubits;
  for (const auto& l : layers) out.gates.insert(out.gates.end(), l.gates.begin(), l.gates.end());
  return out;
}

namespace {

// Embeds a one- or two-qubit gate into the 4x4 space of (low, high).
Mat4 block_embed(const Gate& g, QubitId low) {
  if (const auto* s = std::get_if<SingleQubitGate>(&g)) {
    return s->qubit == low ? kron2(Mat2::Identity(), s->matrix) : kron2(s->matrix, Mat2::Identity());
  }
  auto qs = gate_qubits(g);
  Mat4 m = gate_matrix(g);
  if (qs[0] == low) return m;
  Mat4 swap = Mat4::Zero();
  swap(0, 0) = swap(3, 3) = swap(1, 2) = swap(2, 1) = 1.0;
  return swap * m * swap;
}

}  // namespace

std::vector<BlockItem> form_su4_blocks(const std::vector<Layer>& layers) {
  QubitId max_q = 0;
  for (const auto& l : layers) {
    for (const auto& g : l.gates) {
      for (QubitId q : gate_qubits(g)) max_q = std::max(max_q, q);
    }
  }
  const std::size_t n = static_cast<std::size_t>(max_q) + 1;
  std::vector<BlockItem> out;
  std::vector<std::optional<Su4Block>> open;  // indexed by block slot
  std::vector<int> slot_of(n, -1);
  std::vector<std::optional<Mat2>> pending(n);

  auto close = [&](int slot) {
    if (slot < 0 || !open[static_cast<std::size_t>(slot)]) return;
    Su4Block b = *open[static_cast<std::size_t>(slot)];
    open[static_cast<std::size_t>(slot)].reset();
    slot_of[b.low] = -1;
    slot_of[b.high] = -1;
    out.emplace_back(std::move(b));
  };

  for (const auto& layer : layers) {
    for (const auto& g : layer.gates) {
      auto qs = gate_qubits(g);
      if (qs.size() == 1) {
        const auto& s = std::get<SingleQubitGate>(g);
        int slot = slot_of[s.qubit];
        if (slot >= 0) {
          auto& b = *open[static_cast<std::size_t>(slot)];
          b.unitary = block_embed(g, b.low) * b.unitary;
        } else {
          pending[s.qubit] = s.matrix * pending[s.qubit].value_or(Mat2::Identity());
        }
        continue;
      }
      if (qs.size() != 2) throw CircuitError("form_su4_blocks: gates must act on one or two qubits");
      QubitId a = qs[0];
      QubitId b = qs[1];
      int sa = slot_of[a];
      if (sa >= 0 && sa == slot_of[b]) {
        auto& blk = *open[static_cast<std::size_t>(sa)];
        blk.unitary = block_embed(g, blk.low) * blk.unitary;
        continue;
      }
      close(slot_of[a]);
      close(slot_of[b]);
      Su4Block blk;
      blk.low = std::min(a, b);
      blk.high = std::max(a, b);
      Mat2 pl = pending[blk.low].value_or(Mat2::Identity());
      Mat2 ph = pending[blk.high].value_or(Mat2::Identity());
      pending[blk.low].reset();
      pending[blk.high].reset();
      blk.unitary = block_embed(g, blk.low) * kron2(ph, pl);
      open.emplace_back(blk);
      const int slot = static_cast<int>(open.size() - 1);
      slot_of[blk.low] = slot;
      slot_of[blk.high] = slot;
    }
  }
  for (std::size_t s = 0; s < open.size(); ++s) close(static_cast<int>(s));
  for (std::size_t q = 0; q < n; ++q) {
    if (pending[q]) out.emplace_back(make_1q(static_cast<QubitId>(q), *pending[q]));
  }
  return out;
}

Circuit blocks_to_circuit(const std::vector<BlockItem>& items, std::uint32_t num_qubits) {
  Circuit out;
  out.num_qubits = num_qubits;
  for (const auto& item : items) {
    if (const auto* b = std::get_if<Su4Block>(&item)) {
      out.gates.push_back(NamedGate{"su4", {b->low, b->high}, {}, b->unitary});
    } else {
      out.gates.push_back(std::get<SingleQubitGate>(item));
    }
  }
  return out;
}

}  // namespace pgc
