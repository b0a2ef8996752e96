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

#include "pgc/qasm.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <sstream>

#include "pgc/su4.hpp"

namespace pgc {

QasmError::QasmError(const std::string& msg, int line, int column)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
      message_(msg),
      line_(line),
      column_(column) {}

namespace {

// ---------------------------------------------------------------------------
// Lexer

enum class Tok { Ident, Real, Int, String, Symbol, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  double value = 0.0;
  int line = 1;
  int column = 1;
};

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  int line = 1;
  int col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < src.size()) {
    const char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '/' && i + 1 < src.size() && src[i + 1] == '/') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    if (c == '/' && i + 1 < src.size() && src[i + 1] == '*') {
      const int l0 = line, c0 = col;
      advance(2);
      while (i + 1 < src.size() && !(src[i] == '*' && src[i + 1] == '/')) advance(1);
      if (i + 1 >= src.size()) throw QasmError("unterminated block comment", l0, c0);
      advance(2);
      continue;
    }
    Token t;
    t.line = line;
    t.column = col;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      t.kind = Tok::Ident;
      t.text = std::string(src.substr(i, j - i));
      advance(j - i);
    } else if (std::isdigit(static_cast<unsigned char>(c)) || (c == '.' && i + 1 < src.size() &&
                                                               std::isdigit(static_cast<unsigned char>(src[i + 1])))) {
      std::size_t j = i;
      bool real = false;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      if (j < src.size() && src[j] == '.') {
        real = true;
        ++j;
        while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      }
      if (j < src.size() && (src[j] == 'e' || src[j] == 'E')) {
        std::size_t k = j + 1;
        if (k < src.size() && (src[k] == '+' || src[k] == '-')) ++k;
        if (k < src.size() && std::isdigit(static_cast<unsigned char>(src[k]))) {
          real = true;
          j = k;
          while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
        }
      }
      t.kind = real ? Tok::Real : Tok::Int;
      t.text = std::string(src.substr(i, j - i));
      t.value = std::stod(t.text);
      advance(j - i);
    } else if (c == '"') {
      std::size_t j = i + 1;
      while (j < src.size() && src[j] != '"' && src[j] != '\n') ++j;
      if (j >= src.size() || src[j] != '"') throw QasmError("unterminated string", line, col);
      t.kind = Tok::String;
      t.text = std::string(src.substr(i + 1, j - i - 1));
      advance(j - i + 1);
    } else if (c == '-' && i + 1 < src.size() && src[i + 1] == '>') {
      t.kind = Tok::Symbol;
      t.text = "->";
      advance(2);
    } else if (c == '=' && i + 1 < src.size() && src[i + 1] == '=') {
      t.kind = Tok::Symbol;
      t.text = "==";
      advance(2);
    } else if (std::string_view(";,()[]{}+-*/^").find(c) != std::string_view::npos) {
      t.kind = Tok::Symbol;
      t.text = std::string(1, c);
      advance(1);
    } else {
      throw QasmError(std::string("unexpected character '") + c + "'", line, col);
    }
    out.push_back(std::move(t));
  }
  Token end;
  end.line = line;
  end.column = col;
  out.push_back(end);
  return out;
}

// ---------------------------------------------------------------------------
// Expressions

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  enum Kind { Number, Pi, Param, Neg, Binary, Call } kind = Number;
  double value = 0.0;
  std::string name;  // parameter or function name
  char op = 0;
  ExprPtr lhs;
  ExprPtr rhs;
  int line = 0;
  int column = 0;
};

using Env = std::map<std::string, double>;

double eval(const Expr& e, const Env& env) {
  switch (e.kind) {
    case Expr::Number: return e.value;
    case Expr::Pi: return kPi;
    case Expr::Param: {
      auto it = env.find(e.name);
      if (it == env.end()) throw QasmError("unknown parameter '" + e.name + "'", e.line, e.column);
      return it->second;
    }
    case Expr::Neg: return -eval(*e.lhs, env);
    case Expr::Binary: {
      const double a = eval(*e.lhs, env);
      const double b = eval(*e.rhs, env);
      switch (e.op) {
        case '+': return a + b;
        case '-': return a - b;
        case '*': return a * b;
        case '/': return a / b;
        case '^': return std::pow(a, b);
        default: break;
      }
      break;
    }
    case Expr::Call: {
      const double a = eval(*e.lhs, env);
      if (e.name == "sin") return std::sin(a);
      if (e.name == "cos") return std::cos(a);
      if (e.name == "tan") return std::tan(a);
      if (e.name == "exp") return std::exp(a);
      if (e.name == "ln") return std::log(a);
      if (e.name == "sqrt") return std::sqrt(a);
      break;
    }
  }
  throw QasmError("malformed expression", e.line, e.column);
}

// ---------------------------------------------------------------------------
// Gate library

Mat2 u3_matrix(double theta, double phi, double lambda) {
  Mat2 m;
  m << std::cos(theta / 2), -std::polar(1.0, lambda) * std::sin(theta / 2),  //
      std::polar(1.0, phi) * std::sin(theta / 2), std::polar(1.0, phi + lambda) * std::cos(theta / 2);
  return m;
}

Mat2 diag2(cplx a, cplx b) {
  Mat2 m = Mat2::Zero();
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

// Controlled-u on (control, target); control is the least significant factor.
Mat4 controlled(const Mat2& u) {
  Mat4 m = Mat4::Zero();
  m(0, 0) = 1.0;
  m(2, 2) = 1.0;
  m(1, 1) = u(0, 0);
  m(1, 3) = u(0, 1);
  m(3, 1) = u(1, 0);
  m(3, 3) = u(1, 1);
  return m;
}

Mat4 pauli_pair_rotation(Pauli p, double theta) {
  // exp(-i theta/2 P P)
  const Mat4 pp = kron2(pauli_matrix(p), pauli_matrix(p));
  return std::cos(theta / 2) * Mat4::Identity() - kI * std::sin(theta / 2) * pp;
}

struct LibraryGate {
  std::size_t num_params;
  std::size_t num_qubits;
};

const std::map<std::string, LibraryGate>& library() {
  static const std::map<std::string, LibraryGate> lib{
      {"U", {3, 1}},    {"u", {3, 1}},     {"u3", {3, 1}},   {"u2", {2, 1}},   {"u1", {1, 1}},   {"p", {1, 1}},
      {"u0", {1, 1}},   {"rx", {1, 1}},    {"ry", {1, 1}},   {"rz", {1, 1}},   {"h", {0, 1}},    {"x", {0, 1}},
      {"y", {0, 1}},    {"z", {0, 1}},     {"s", {0, 1}},    {"sdg", {0, 1}},  {"t", {0, 1}},    {"tdg", {0, 1}},
      {"id", {0, 1}},   {"sx", {0, 1}},    {"sxdg", {0, 1}}, {"CX", {0, 2}},   {"cx", {0, 2}},   {"cz", {0, 2}},
      {"cy", {0, 2}},   {"ch", {0, 2}},    {"crx", {1, 2}},  {"cry", {1, 2}},  {"crz", {1, 2}},  {"cu1", {1, 2}},
      {"cp", {1, 2}},   {"cu3", {3, 2}},   {"csx", {0, 2}},  {"swap", {0, 2}}, {"rzz", {1, 2}},  {"rxx", {1, 2}},
      {"ryy", {1, 2}},  {"ccx", {0, 3}},   {"cswap", {0, 3}},
  };
  return lib;
}

SingleQubitGate single_qubit_library(const std::string& name, const std::vector<double>& p, QubitId q) {
  const Mat2 sx = 0.5 * (Mat2() << cplx(1, 1), cplx(1, -1), cplx(1, -1), cplx(1, 1)).finished();
  if (name == "U" || name == "u" || name == "u3") return make_1q(q, u3_matrix(p[0], p[1], p[2]), "u3");
  if (name == "u2") return make_1q(q, u3_matrix(kPi / 2, p[0], p[1]), "u2");
  if (name == "u1" || name == "p") return make_1q(q, diag2(1.0, std::polar(1.0, p[0])), name, Pauli::Z);
  if (name == "u0" || name == "id") return make_1q(q, Mat2::Identity(), "id", Pauli::Z);
  if (name == "rx") return rx(q, p[0]);
  if (name == "ry") return ry(q, p[0]);
  if (name == "rz") return rz(q, p[0]);
  if (name == "h") return h(q);
  if (name == "x") return pauli_gate(q, Pauli::X);
  if (name == "y") return pauli_gate(q, Pauli::Y);
  if (name == "z") return pauli_gate(q, Pauli::Z);
  if (name == "s") return make_1q(q, s_gate(), "s", Pauli::Z);
  if (name == "sdg") return make_1q(q, s_gate().adjoint(), "sdg", Pauli::Z);
  if (name == "t") return make_1q(q, diag2(1.0, std::polar(1.0, kPi / 4)), "t", Pauli::Z);
  if (name == "tdg") return make_1q(q, diag2(1.0, std::polar(1.0, -kPi / 4)), "tdg", Pauli::Z);
  if (name == "sx") return make_1q(q, sx, "sx", Pauli::X);
  if (name == "sxdg") return make_1q(q, sx.adjoint(), "sxdg", Pauli::X);
  throw std::logic_error("not a single-qubit library gate: " + name);
}

MatX multi_qubit_library_matrix(const std::string& name, const std::vector<double>& p) {
  const Mat2 sx = 0.5 * (Mat2() << cplx(1, 1), cplx(1, -1), cplx(1, -1), cplx(1, 1)).finished();
  if (name == "cz") return controlled(pauli_matrix(Pauli::Z));
  if (name == "cy") return controlled(pauli_matrix(Pauli::Y));
  if (name == "ch") return controlled(hadamard());
  if (name == "crx") return controlled(pauli_exp(Pauli::X, -p[0] / 2));
  if (name == "cry") return controlled(pauli_exp(Pauli::Y, -p[0] / 2));
  if (name == "crz") return controlled(pauli_exp(Pauli::Z, -p[0] / 2));
  if (name == "cu1" || name == "cp") return controlled(diag2(1.0, std::polar(1.0, p[0])));
  if (name == "cu3") return controlled(u3_matrix(p[0], p[1], p[2]));
  if (name == "csx") return controlled(sx);
  if (name == "swap") {
    Mat4 m = Mat4::Zero();
    m(0, 0) = m(3, 3) = m(1, 2) = m(2, 1) = 1.0;
    return m;
  }
  if (name == "rzz") return pauli_pair_rotation(Pauli::Z, p[0]);
  if (name == "rxx") return pauli_pair_rotation(Pauli::X, p[0]);
  if (name == "ryy") return pauli_pair_rotation(Pauli::Y, p[0]);
  if (name == "ccx" || name == "cswap") {
    MatX m = MatX::Zero(8, 8);
    for (int i = 0; i < 8; ++i) {
      int j = i;
      if (name == "ccx" && (i & 3) == 3) j = i ^ 4;
      if (name == "cswap" && (i & 1) && (((i >> 1) ^ (i >> 2)) & 1)) j = i ^ 6;
      m(j, i) = 1.0;
    }
    return m;
  }
  throw std::logic_error("not a multi-qubit library gate: " + name);
}

// ---------------------------------------------------------------------------
// Parser

struct Argument {
  std::string reg;
  std::optional<std::size_t> index;
  int line = 0;
  int column = 0;
};

struct GateCall {
  std::string name;
  std::vector<ExprPtr> params;
  std::vector<Argument> args;
  int line = 0;
  int column = 0;
};

struct GateDef {
  std::vector<std::string> params;
  std::vector<std::string> qargs;
  std::vector<GateCall> body;  // barriers inside bodies are dropped
};

struct Register {
  std::uint32_t offset;
  std::uint32_t size;
};

class Parser {
 public:
  explicit Parser(std::string_view src) : toks_(lex(src)) {}

  Circuit run() {
    header();
    while (!at_end()) statement();
    circuit_.num_qubits = next_qubit_;
    circuit_.num_clbits = next_clbit_;
    return std::move(circuit_);
  }

 private:
  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  bool at_end() const { return peek().kind == Tok::End; }
  const Token& take() {
    const Token& t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }
  [[noreturn]] void fail(const std::string& msg, const Token& t) const { throw QasmError(msg, t.line, t.column); }
  bool is_symbol(const std::string& s) const { return peek().kind == Tok::Symbol && peek().text == s; }
  void expect_symbol(const std::string& s) {
    if (!is_symbol(s)) {
      fail("expected '" + s + "' but found " + describe(peek()), peek());
    }
    take();
  }
  std::string expect_ident() {
    if (peek().kind != Tok::Ident) fail("expected identifier but found " + describe(peek()), peek());
    return take().text;
  }
  std::size_t expect_int() {
    if (peek().kind != Tok::Int) fail("expected integer but found " + describe(peek()), peek());
    return static_cast<std::size_t>(take().value);
  }
  static std::string describe(const Token& t) {
    if (t.kind == Tok::End) return "end of input";
    return "'" + t.text + "'";
  }

  void header() {
    if (peek().kind == Tok::Ident && peek().text == "OPENQASM") {
      const Token& kw = take();
      const Token& ver = take();
      if (ver.kind != Tok::Real && ver.kind != Tok::Int) fail("expected version number", ver);
      if (ver.value >= 3.0) fail("OpenQASM " + ver.text + " is not supported; only OpenQASM 2.0 is accepted", ver);
      if (ver.value < 2.0) fail("unsupported OpenQASM version " + ver.text, kw);
      expect_symbol(";");
    }
  }

  void statement() {
    const Token& t = peek();
    if (t.kind != Tok::Ident) fail("expected a statement but found " + describe(t), t);
    const std::string& kw = t.text;
    if (kw == "include") {
      take();
      if (peek().kind != Tok::String) fail("expected file name string", peek());
      const Token& f = take();
      if (f.text != "qelib1.inc") fail("only qelib1.inc can be included", f);
      expect_symbol(";");
    } else if (kw == "qreg" || kw == "creg") {
      take();
      const Token& nt = peek();
      std::string name = expect_ident();
      expect_symbol("[");
      auto size = static_cast<std::uint32_t>(expect_int());
      expect_symbol("]");
      expect_symbol(";");
      if (qregs_.count(name) || cregs_.count(name)) fail("register '" + name + "' redeclared", nt);
      if (kw == "qreg") {
        qregs_[name] = {next_qubit_, size};
        next_qubit_ += size;
      } else {
        cregs_[name] = {next_clbit_, size};
        next_clbit_ += size;
      }
    } else if (kw == "gate") {
      take();
      gate_definition();
    } else if (kw == "opaque" || kw == "if" || kw == "reset") {
      fail("unsupported statement '" + kw + "'", t);
    } else if (kw == "measure") {
      take();
      Argument q = argument();
      expect_symbol("->");
      Argument c = argument();
      expect_symbol(";");
      measure(q, c);
    } else if (kw == "barrier") {
      take();
      std::vector<Argument> args = argument_list();
      expect_symbol(";");
      Barrier b;
      for (const auto& a : args) {
        for (QubitId q : resolve_all(a)) b.qubits.push_back(q);
      }
      circuit_.gates.emplace_back(std::move(b));
    } else {
      GateCall call = gate_call(false);
      apply_call(call, {}, {});
    }
  }

  Argument argument() {
    Argument a;
    a.line = peek().line;
    a.column = peek().column;
    a.reg = expect_ident();
    if (is_symbol("[")) {
      take();
      a.index = expect_int();
      expect_symbol("]");
    }
    return a;
  }

  std::vector<Argument> argument_list() {
    std::vector<Argument> out{argument()};
    while (is_symbol(",")) {
      take();
      out.push_back(argument());
    }
    return out;
  }

  GateCall gate_call(bool in_body) {
    GateCall c;
    c.line = peek().line;
    c.column = peek().column;
    c.name = expect_ident();
    if (is_symbol("(")) {
      take();
      if (!is_symbol(")")) {
        c.params.push_back(expression());
        while (is_symbol(",")) {
          take();
          c.params.push_back(expression());
        }
      }
      expect_symbol(")");
    }
    c.args = argument_list();
    if (in_body) {
      for (const auto& a : c.args) {
        if (a.index) throw QasmError("indexed argument inside a gate body", a.line, a.column);
      }
    }
    expect_symbol(";");
    return c;
  }

  void gate_definition() {
    const Token& nt = peek();
    std::string name = expect_ident();
    if (defs_.count(name) || library().count(name)) fail("gate '" + name + "' redefined", nt);
    GateDef def;
    if (is_symbol("(")) {
      take();
      if (!is_symbol(")")) {
        def.params.push_back(expect_ident());
        while (is_symbol(",")) {
          take();
          def.params.push_back(expect_ident());
        }
      }
      expect_symbol(")");
    }
    def.qargs.push_back(expect_ident());
    while (is_symbol(",")) {
      take();
      def.qargs.push_back(expect_ident());
    }
    expect_symbol("{");
    while (!is_symbol("}")) {
      if (at_end()) fail("unterminated gate body", peek());
      if (peek().kind == Tok::Ident && peek().text == "barrier") {
        take();
        argument_list();
        expect_symbol(";");
        continue;
      }
      GateCall call = gate_call(true);
      for (const auto& a : call.args) {
        if (std::find(def.qargs.begin(), def.qargs.end(), a.reg) == def.qargs.end()) {
          throw QasmError("unknown qubit argument '" + a.reg + "' in gate body", a.line, a.column);
        }
      }
      def.body.push_back(std::move(call));
    }
    take();
    defs_[name] = std::move(def);
  }

  // expression := term (('+'|'-') term)*
  ExprPtr expression() {
    ExprPtr lhs = term();
    while (is_symbol("+") || is_symbol("-")) {
      const Token& op = take();
      lhs = binary(op, lhs, term());
    }
    return lhs;
  }
  ExprPtr term() {
    ExprPtr lhs = unary();
    while (is_symbol("*") || is_symbol("/")) {
      const Token& op = take();
      lhs = binary(op, lhs, unary());
    }
    return lhs;
  }
  ExprPtr unary() {
    if (is_symbol("-")) {
      const Token& t = take();
      auto e = std::make_shared<Expr>();
      e->kind = Expr::Neg;
      e->lhs = unary();
      e->line = t.line;
      e->column = t.column;
      return e;
    }
    if (is_symbol("+")) {
      take();
      return unary();
    }
    return power();
  }
  ExprPtr power() {
    ExprPtr base = primary();
    if (is_symbol("^")) {
      const Token& op = take();
      return binary(op, base, unary());
    }
    return base;
  }
  ExprPtr primary() {
    const Token& t = peek();
    auto e = std::make_shared<Expr>();
    e->line = t.line;
    e->column = t.column;
    if (t.kind == Tok::Int || t.kind == Tok::Real) {
      e->kind = Expr::Number;
      e->value = take().value;
      return e;
    }
    if (t.kind == Tok::Ident) {
      std::string name = take().text;
      if (name == "pi") {
        e->kind = Expr::Pi;
        return e;
      }
      static const std::set<std::string> funcs{"sin", "cos", "tan", "exp", "ln", "sqrt"};
      if (funcs.count(name)) {
        expect_symbol("(");
        e->kind = Expr::Call;
        e->name = name;
        e->lhs = expression();
        expect_symbol(")");
        return e;
      }
      e->kind = Expr::Param;
      e->name = name;
      return e;
    }
    if (is_symbol("(")) {
      take();
      ExprPtr inner = expression();
      expect_symbol(")");
      return inner;
    }
    fail("expected an expression but found " + describe(t), t);
  }
  static ExprPtr binary(const Token& op, ExprPtr a, ExprPtr b) {
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Binary;
    e->op = op.text[0];
    e->lhs = std::move(a);
    e->rhs = std::move(b);
    e->line = op.line;
    e->column = op.column;
    return e;
  }

  std::vector<QubitId> resolve_all(const Argument& a) const {
    auto it = qregs_.find(a.reg);
    if (it == qregs_.end()) throw QasmError("unknown quantum register '" + a.reg + "'", a.line, a.column);
    std::vector<QubitId> out;
    if (a.index) {
      if (*a.index >= it->second.size) throw QasmError("index out of range for '" + a.reg + "'", a.line, a.column);
      out.push_back(it->second.offset + static_cast<QubitId>(*a.index));
    } else {
      for (std::uint32_t k = 0; k < it->second.size; ++k) out.push_back(it->second.offset + k);
    }
    return out;
  }

  void measure(const Argument& q, const Argument& c) {
    auto qs = resolve_all(q);
    auto it = cregs_.find(c.reg);
    if (it == cregs_.end()) throw QasmError("unknown classical register '" + c.reg + "'", c.line, c.column);
    std::vector<std::uint32_t> cs;
    if (c.index) {
      if (*c.index >= it->second.size) throw QasmError("index out of range for '" + c.reg + "'", c.line, c.column);
      cs.push_back(it->second.offset + static_cast<std::uint32_t>(*c.index));
    } else {
      for (std::uint32_t k = 0; k < it->second.size; ++k) cs.push_back(it->second.offset + k);
    }
    if (qs.size() != cs.size()) throw QasmError("measure operands have different sizes", q.line, q.column);
    for (std::size_t k = 0; k < qs.size(); ++k) circuit_.gates.emplace_back(Measure{qs[k], cs[k]});
  }

  // Applies a call at top level (qmap empty) or inside an inlined body.
  void apply_call(const GateCall& call, const Env& env, const std::map<std::string, QubitId>& qmap) {
    std::vector<double> params;
    params.reserve(call.params.size());
    for (const auto& e : call.params) params.push_back(eval(*e, env));

    std::size_t want_params = 0;
    std::size_t want_qubits = 0;
    const GateDef* def = nullptr;
    if (auto lit = library().find(call.name); lit != library().end()) {
      want_params = lit->second.num_params;
      want_qubits = lit->second.num_qubits;
    } else if (auto dit = defs_.find(call.name); dit != defs_.end()) {
      def = &dit->second;
      want_params = def->params.size();
      want_qubits = def->qargs.size();
    } else {
      throw QasmError("unknown gate '" + call.name + "'", call.line, call.column);
    }
    if (params.size() != want_params) {
      throw QasmError("gate '" + call.name + "' takes " + std::to_string(want_params) + " parameter(s), got " +
                          std::to_string(params.size()),
                      call.line, call.column);
    }
    if (call.args.size() != want_qubits) {
      throw QasmError("gate '" + call.name + "' takes " + std::to_string(want_qubits) + " qubit argument(s), got " +
                          std::to_string(call.args.size()),
                      call.line, call.column);
    }

    // Resolve operands, broadcasting whole registers at top level.
    std::vector<std::vector<QubitId>> operands;
    std::size_t width = 1;
    for (const auto& a : call.args) {
      if (!qmap.empty()) {
        operands.push_back({qmap.at(a.reg)});
        continue;
      }
      auto qs = resolve_all(a);
      if (!a.index) {
        if (width != 1 && qs.size() != width) {
          throw QasmError("register sizes differ in broadcast", a.line, a.column);
        }
        width = qs.size();
      }
      operands.push_back(std::move(qs));
    }
    for (std::size_t k = 0; k < width; ++k) {
      std::vector<QubitId> qs;
      for (const auto& op : operands) qs.push_back(op.size() == 1 ? op[0] : op[k]);
      std::set<QubitId> uniq(qs.begin(), qs.end());
      if (uniq.size() != qs.size()) {
        throw QasmError("gate '" + call.name + "' applied to a repeated qubit", call.line, call.column);
      }
      if (def) {
        Env inner;
        for (std::size_t i = 0; i < def->params.size(); ++i) inner[def->params[i]] = params[i];
        std::map<std::string, QubitId> qm;
        for (std::size_t i = 0; i < def->qargs.size(); ++i) qm[def->qargs[i]] = qs[i];
        if (++depth_ > 64) throw QasmError("gate definitions nest too deeply", call.line, call.column);
        for (const auto& sub : def->body) apply_call(sub, inner, qm);
        --depth_;
      } else {
        emit_library(call.name, params, qs);
      }
    }
  }

  void emit_library(const std::string& name, const std::vector<double>& params, const std::vector<QubitId>& qs) {
    if (qs.size() == 1) {
      circuit_.gates.emplace_back(single_qubit_library(name, params, qs[0]));
    } else if (name == "cx" || name == "CX") {
      circuit_.gates.emplace_back(cx(qs[0], qs[1]));
    } else {
      circuit_.gates.emplace_back(NamedGate{name, qs, params, multi_qubit_library_matrix(name, params)});
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::map<std::string, Register> qregs_;
  std::map<std::string, Register> cregs_;
  std::map<std::string, GateDef> defs_;
  std::uint32_t next_qubit_ = 0;
  std::uint32_t next_clbit_ = 0;
  int depth_ = 0;
  Circuit circuit_;
};

// ---------------------------------------------------------------------------
// Basis conversion

class ZzEmitter {
 public:
  explicit ZzEmitter(Circuit& out) : out_(out) {}

  void one(QubitId q, const Mat2& m, const std::string& name = "u", Pauli axis = Pauli::I) {
    out_.gates.emplace_back(make_1q(q, m, name, axis));
  }
  void g(const SingleQubitGate& s) { out_.gates.emplace_back(s); }
  void cnot(QubitId c, QubitId t) { out_.gates.emplace_back(cx(c, t)); }

  // exp(i theta Z_a Z_b) with theta folded into (-pi/4, pi/4].
  void zz(QubitId a, QubitId b, double theta) {
    int k = static_cast<int>(std::lround(theta / (kPi / 2)));
    double r = theta - k * (kPi / 2);
    if (r <= -kPi / 4) {
      r += kPi / 2;
      --k;
    }
    if (r > kPi / 4) {
      r -= kPi / 2;
      ++k;
    }
    // exp(i k pi/2 ZZ) = i^k (ZZ)^k
    out_.global_phase += k * (kPi / 2);
    if (std::abs(r) > 0.0) out_.gates.emplace_back(ZzRotation{a, b, r});
    if (k % 2 != 0) {
      g(pauli_gate(a, Pauli::Z));
      g(pauli_gate(b, Pauli::Z));
    }
  }

  void toffoli(QubitId a, QubitId b, QubitId c) {
    const Mat2 t = diag2(1.0, std::polar(1.0, kPi / 4));
    const Mat2 td = t.adjoint();
    g(h(c));
    cnot(b, c);
    one(c, td, "tdg", Pauli::Z);
    cnot(a, c);
    one(c, t, "t", Pauli::Z);
    cnot(b, c);
    one(c, td, "tdg", Pauli::Z);
    cnot(a, c);
    one(b, t, "t", Pauli::Z);
    one(c, t, "t", Pauli::Z);
    g(h(c));
    cnot(a, b);
    one(a, t, "t", Pauli::Z);
    one(b, td, "tdg", Pauli::Z);
    cnot(a, b);
  }

  void generic_two_qubit(QubitId a, QubitId b, const Mat4& m) {
    // Dense matrices use qubits[0] as the least significant factor.
    LhBlock blk = to_lh_block(m);
    for (const auto& s : blk.steps) {
      if (s.is_zz) {
        zz(a, b, s.theta);
      } else {
        if (!is_identity_up_to_phase(s.low, 1e-14)) one(a, s.low);
        if (!is_identity_up_to_phase(s.high, 1e-14)) one(b, s.high);
      }
    }
  }

 private:
  Circuit& out_;
};

}  // namespace

Circuit parse_qasm(std::string_view source) {
  Parser p(source);
  Circuit c = p.run();
  c.validate();
  return c;
}

Circuit parse_qasm_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw QasmError("cannot open '" + path.string() + "'", 0, 0);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_qasm(ss.str());
}

Circuit to_zz_basis(const Circuit& c) {
  Circuit out;
  out.num_qubits = c.num_qubits;
  out.num_clbits = c.num_clbits;
  out.global_phase = c.global_phase;
  ZzEmitter em(out);
  for (const Gate& g : c.gates) {
    if (const auto* s = std::get_if<SingleQubitGate>(&g)) {
      em.g(*s);
    } else if (const auto* gc = std::get_if<GeneralizedCnot>(&g)) {
      if (gc->control_axis == Pauli::Z && gc->target_axis == Pauli::X) {
        out.gates.emplace_back(*gc);
        continue;
      }
      // C_{P^Q} = (B_P (x) D) CX (B_P (x) D)^dagger with D X D^dagger = Q.
      const Mat2 bp = basis_change(gc->control_axis);
      const Mat2 d = basis_change(gc->target_axis) * hadamard();
      em.one(gc->control, bp.adjoint());
      em.one(gc->target, d.adjoint());
      em.cnot(gc->control, gc->target);
      em.one(gc->control, bp);
      em.one(gc->target, d);
    } else if (const auto* z = std::get_if<ZzRotation>(&g)) {
      em.zz(z->a, z->b, z->theta);
    } else if (const auto* mq = std::get_if<MultiQubitGate>(&g)) {
      for (const auto& [k, th] : mq->pairs()) em.zz(k.first, k.second, th);
    } else if (const auto* n = std::get_if<NamedGate>(&g)) {
      const auto& q = n->qubits;
      const auto& p = n->params;
      if (n->name == "cz") {
        em.g(h(q[1]));
        em.cnot(q[0], q[1]);
        em.g(h(q[1]));
      } else if (n->name == "cy") {
        em.one(q[1], s_gate().adjoint(), "sdg", Pauli::Z);
        em.cnot(q[0], q[1]);
        em.one(q[1], s_gate(), "s", Pauli::Z);
      } else if (n->name == "crz") {
        // |1><1| (x) Rz(l) = exp(-i l/4 Z_t) exp(i l/4 Z_c Z_t)
        em.g(rz(q[1], p[0] / 2));
        em.zz(q[0], q[1], p[0] / 4);
      } else if (n->name == "cu1" || n->name == "cp") {
        em.g(rz(q[0], p[0] / 2));
        em.g(rz(q[1], p[0] / 2));
        em.zz(q[0], q[1], p[0] / 4);
        out.global_phase += p[0] / 4;
      } else if (n->name == "rzz") {
        em.zz(q[0], q[1], -p[0] / 2);
      } else if (n->name == "swap") {
        em.cnot(q[0], q[1]);
        em.cnot(q[1], q[0]);
        em.cnot(q[0], q[1]);
      } else if (n->name == "ccx") {
        em.toffoli(q[0], q[1], q[2]);
      } else if (n->name == "cswap") {
        em.cnot(q[2], q[1]);
        em.toffoli(q[0], q[1], q[2]);
        em.cnot(q[2], q[1]);
      } else if (q.size() == 2) {
        em.generic_two_qubit(q[0], q[1], n->matrix);
      } else {
        throw CircuitError("no ZZ-basis lowering for " + std::to_string(q.size()) + "-qubit gate '" + n->name + "'");
      }
    } else if (std::holds_alternative<Measure>(g)) {
      out.gates.push_back(g);
    } else if (std::holds_alternative<Barrier>(g)) {
      continue;
    } else {
      throw CircuitError("to_zz_basis: unsupported gate '" + gate_name(g) + "'");
    }
  }
  return out;
}

std::pair<Circuit, MeasurementMap> strip_measurements(const Circuit& c) {
  Circuit out;
  out.num_qubits = c.num_qubits;
  out.num_clbits = c.num_clbits;
  out.global_phase = c.global_phase;
  MeasurementMap map;
  std::vector<bool> measured(c.num_qubits, false);
  for (const Gate& g : c.gates) {
    if (const auto* m = std::get_if<Measure>(&g)) {
      measured[m->qubit] = true;
      map.emplace_back(m->qubit, m->bit);
      continue;
    }
    if (std::holds_alternative<Barrier>(g)) continue;
    for (QubitId q : gate_qubits(g)) {
      if (measured[q]) throw CircuitError("qubit " + std::to_string(q) + " is used after being measured");
    }
    out.gates.push_back(g);
  }
  return {std::move(out), std::move(map)};
}

std::size_t two_qubit_count(const Circuit& c) {
  std::size_t n = 0;
  for (const Gate& g : c.gates) {
    if (std::holds_alternative<GeneralizedCnot>(g) || std::holds_alternative<ZzRotation>(g)) ++n;
  }
  return n;
}

}  // namespace pgc
