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

#include "pgc/program_io.hpp"

#include <cmath>
#include <cstdio>

namespace pgc {
namespace {

using nlohmann::json;

void dump_rec(const json& j, int depth, std::string& out) {
  const std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
  const std::string inner(static_cast<std::size_t>(depth + 1) * 2, ' ');
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {  // std::map keeps keys sorted
        if (!first) out += ",\n";
        first = false;
        out += inner + json(it.key()).dump() + ": ";
        dump_rec(it.value(), depth + 1, out);
      }
      out += "\n" + pad + "}";
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // Arrays of scalars stay on one line.
      bool flat = true;
      for (const auto& e : j) flat = flat && !e.is_structured();
      if (flat) {
        out += "[";
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) out += ", ";
          dump_rec(j[i], depth + 1, out);
        }
        out += "]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ",\n";
        out += inner;
        dump_rec(j[i], depth + 1, out);
      }
      out += "\n" + pad + "]";
      return;
    }
    case json::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) {
        out += std::isnan(v) ? "\"nan\"" : (v > 0 ? "\"inf\"" : "\"-inf\"");
        return;
      }
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", v);
      out += buf;
      return;
    }
    default:
      out += j.dump();
  }
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw FormatError(std::string("missing field '") + key + "'");
  return j.at(key);
}

QubitSet support_from_json(const json& j, std::uint32_t n) {
  QubitSet s;
  for (const auto& q : j) {
    const auto v = q.get<std::uint32_t>();
    if (v >= n) throw FormatError("qubit index out of range");
    if (s.contains(v)) throw FormatError("duplicated qubit in support");
    s.insert(v);
  }
  return s;
}

const char* kind_name(MqKind k) {
  switch (k) {
    case MqKind::Fanout:
      return "fanout";
    case MqKind::Interface:
      return "interface";
    case MqKind::Direct:
      return "direct";
  }
  return "?";
}

}  // namespace

std::string dump_json(const json& j) {
  std::string out;
  dump_rec(j, 0, out);
  out += "\n";
  return out;
}

std::string row_to_hex(const QubitSet& row, std::uint32_t n) {
  static const char* digits = "0123456789abcdef";
  const std::uint32_t len = std::max<std::uint32_t>(1, (n + 3) / 4);
  std::string s(len, '0');
  for (QubitId q : row.to_vector()) {
    const std::uint32_t d = q / 4;
    const auto cur = static_cast<int>(std::string_view(digits).find(s[len - 1 - d]));
    s[len - 1 - d] = digits[cur | (1 << (q % 4))];
  }
  return s;
}

QubitSet row_from_hex(std::string_view hex, std::uint32_t n) {
  QubitSet s;
  const auto len = static_cast<std::uint32_t>(hex.size());
  for (std::uint32_t i = 0; i < len; ++i) {
    const char c = hex[len - 1 - i];
    int v;
    if (c >= '0' && c <= '9') {
      v = c - '0';
    } else if (c >= 'a' && c <= 'f') {
      v = c - 'a' + 10;
    } else {
      throw FormatError("bad hex digit in layer row");
    }
    for (int b = 0; b < 4; ++b) {
      if (!(v >> b & 1)) continue;
      const std::uint32_t q = 4 * i + static_cast<std::uint32_t>(b);
      if (q >= n) throw FormatError("layer row wider than the register");
      s.insert(q);
    }
  }
  return s;
}

json layer_to_json(const CnotLayer& layer) {
  json rows = json::array();
  for (std::uint32_t r = 0; r < layer.size(); ++r) rows.push_back(row_to_hex(layer.matrix().row(r), layer.size()));
  json word = json::array();
  for (const auto& [c, t] : layer.word()) word.push_back({c, t});
  return {{"matrix", rows}, {"word", word}};
}

CnotLayer layer_from_json(const json& j, std::uint32_t n) {
  const json& rows = field(j, "matrix");
  if (!rows.is_array() || rows.size() != n) throw FormatError("layer matrix must have one row per qubit");
  BitMatrix a(n);
  for (std::uint32_t r = 0; r < n; ++r) {
    for (QubitId q : row_from_hex(rows[r].get<std::string>(), n).to_vector()) a.set(r, q, true);
  }
  if (!a.invertible()) throw FormatError("layer matrix is singular");
  std::vector<std::pair<QubitId, QubitId>> word;
  for (const auto& e : field(j, "word")) {
    if (!e.is_array() || e.size() != 2) throw FormatError("layer word entries are [control, target]");
    const auto c = e[0].get<QubitId>(), t = e[1].get<QubitId>();
    if (c >= n || t >= n || c == t) throw FormatError("bad CNOT in layer word");
    word.emplace_back(c, t);
  }
  CnotLayer layer = CnotLayer::from_matrix(a);
  if (!(CnotLayer::from_word(n, word) == layer)) throw FormatError("layer word does not match its matrix");
  return layer;
}

json program_to_json(const CompiledProgram& p) {
  json body = json::array();
  for (const PhaseGadget& g : p.body.gadgets) {
    body.push_back({{"type", "gadget"},
                    {"axis", std::string(1, pauli_char(g.axis))},
                    {"alpha", g.alpha},
                    {"support", g.support.to_vector()}});
  }
  const Realization r = realize(p.body, p.scheme);
  json realized = json::array();
  for (std::size_t i = 0; i < r.mq_gates.size(); ++i) {
    json pairs = json::array();
    for (const auto& [k, th] : r.mq_gates[i].pairs()) pairs.push_back({k.first, k.second, th});
    realized.push_back({{"type", "mq"}, {"kind", kind_name(r.kinds[i])}, {"pairs", pairs}});
  }
  json mmap = json::array();
  for (const auto& [q, b] : p.measurement_map) mmap.push_back({q, b});
  json history = json::array();
  for (const CostVector& c : p.history) history.push_back({{"mqCount", c.mq_count}, {"norm", c.norm}});
  return {{"version", kProgramVersion},
          {"numQubits", p.num_qubits},
          {"scheme", p.scheme == RealizationScheme::AncillaMerged ? "ancilla-merged" : "no-ancilla"},
          {"ancilla", r.ancilla_used},
          {"preLayer", layer_to_json(p.pre)},
          {"body", body},
          {"frames", {{"x", p.body.frame.x.to_vector()}, {"z", p.body.frame.z.to_vector()}}},
          {"postLayer", layer_to_json(p.post)},
          {"measurementMap", mmap},
          {"cost", {{"mqCount", p.cost.mq_count}, {"norm", p.cost.norm}}},
          {"history", history},
          {"commutationEvents", p.commutation_events},
          {"realized", realized}};
}

CompiledProgram program_from_json(const json& j) {
  try {
    if (field(j, "version").get<std::string>() != kProgramVersion) throw FormatError("unsupported program version");
    CompiledProgram p;
    p.num_qubits = field(j, "numQubits").get<std::uint32_t>();
    const std::uint32_t n = p.num_qubits;
    const auto scheme = field(j, "scheme").get<std::string>();
    if (scheme == "ancilla-merged") {
      p.scheme = RealizationScheme::AncillaMerged;
    } else if (scheme == "no-ancilla") {
      p.scheme = RealizationScheme::NoAncilla;
    } else {
      throw FormatError("unknown scheme '" + scheme + "'");
    }
    p.pre = layer_from_json(field(j, "preLayer"), n);
    p.post = layer_from_json(field(j, "postLayer"), n);
    p.body.num_qubits = n;
    for (const auto& e : field(j, "body")) {
      if (field(e, "type").get<std::string>() != "gadget") throw FormatError("body entries must be gadgets");
      PhaseGadget g;
      const auto axis = field(e, "axis").get<std::string>();
      if (axis.size() != 1 || (axis[0] != 'X' && axis[0] != 'Y' && axis[0] != 'Z')) throw FormatError("bad gadget axis");
      g.axis = pauli_from_char(axis[0]);
      g.alpha = field(e, "alpha").get<double>();
      if (!std::isfinite(g.alpha)) throw FormatError("non-finite gadget angle");
      g.support = support_from_json(field(e, "support"), n);
      p.body.gadgets.push_back(std::move(g));
    }
    const json& fr = field(j, "frames");
    p.body.frame.x = support_from_json(field(fr, "x"), n);
    p.body.frame.z = support_from_json(field(fr, "z"), n);
    for (const auto& e : field(j, "measurementMap")) {
      if (!e.is_array() || e.size() != 2) throw FormatError("measurement entries are [qubit, bit]");
      const auto q = e[0].get<QubitId>();
      if (q >= n) throw FormatError("measured qubit out of range");
      p.measurement_map.emplace_back(q, e[1].get<std::uint32_t>());
    }
    const json& cost = field(j, "cost");
    p.cost = {field(cost, "mqCount").get<std::size_t>(), field(cost, "norm").get<double>()};
    if (j.contains("history")) {
      for (const auto& h : j.at("history")) p.history.push_back({field(h, "mqCount").get<std::size_t>(), field(h, "norm").get<double>()});
    }
    if (j.contains("commutationEvents")) p.commutation_events = j.at("commutationEvents").get<std::size_t>();
    return p;
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed program: ") + e.what());
  }
}

std::string serialize_program(const CompiledProgram& p) { return dump_json(program_to_json(p)); }

CompiledProgram parse_program(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("invalid JSON: ") + e.what());
  }
  return program_from_json(j);
}

json metrics_to_json(const Metrics& m) {
  return {{"twoQubitCount", m.two_qubit_count},
          {"baselineMqCount", m.baseline.mq_count},
          {"baselineNorm", m.baseline.norm},
          {"compiledMqCount", m.compiled.mq_count},
          {"compiledNorm", m.compiled.norm},
          {"inputNorm", m.input_norm},
          {"ratioTwoQubit", m.ratio_two_qubit},
          {"ratioBaseline", m.ratio_baseline},
          {"ratioNorm", m.ratio_norm}};
}

}  // namespace pgc
