// Copyright 2026 The qroute Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qroute/qasm.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <map>
#include <numbers>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <system_error>
#include <utility>
#include <vector>

#include "qroute/error.hpp"

namespace qroute {
namespace {

enum class Tok { ident, real, integer, string, symbol, end };

struct Token {
  Tok type = Tok::end;
  std::string text;
  std::size_t line = 1;
  std::size_t column = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_space_and_comments();
      Token t;
      t.line = line_;
      t.column = col_;
      if (pos_ >= src_.size()) {
        out.push_back(t);
        return out;
      }
      const char c = src_[pos_];
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        t.type = Tok::ident;
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
                src_[pos_] == '_')) {
          t.text.push_back(take());
        }
      } else if (
          std::isdigit(static_cast<unsigned char>(c)) ||
          (c == '.' && pos_ + 1 < src_.size() &&
           std::isdigit(static_cast<unsigned char>(src_[pos_ + 1])))) {
        lex_number(t);
      } else if (c == '"') {
        t.type = Tok::string;
        take();
        while (pos_ < src_.size() && src_[pos_] != '"' && src_[pos_] != '\n') {
          t.text.push_back(take());
        }
        if (pos_ >= src_.size() || src_[pos_] != '"') {
          throw ParseError("unterminated string", t.line, t.column);
        }
        take();
      } else if (c == '-' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '>') {
        t.type = Tok::symbol;
        t.text = "->";
        take();
        take();
      } else if (std::string_view(";,[](){}+-*/^=<>").find(c) !=
                 std::string_view::npos) {
        t.type = Tok::symbol;
        t.text.push_back(take());
      } else {
        throw ParseError(
            std::string("unexpected character '") + c + "'", t.line,
            t.column);
      }
      out.push_back(std::move(t));
    }
  }

 private:
  char take() {
    const char c = src_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  void skip_space_and_comments() {
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        take();
      } else if (
          c == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '/') {
        while (pos_ < src_.size() && src_[pos_] != '\n') take();
      } else if (
          c == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '*') {
        const std::size_t line = line_, col = col_;
        take();
        take();
        while (pos_ + 1 < src_.size() &&
               !(src_[pos_] == '*' && src_[pos_ + 1] == '/')) {
          take();
        }
        if (pos_ + 1 >= src_.size()) {
          throw ParseError("unterminated block comment", line, col);
        }
        take();
        take();
      } else {
        return;
      }
    }
  }

  void lex_number(Token& t) {
    bool real = false;
    auto digits = [&] {
      while (pos_ < src_.size() &&
             std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        t.text.push_back(take());
      }
    };
    digits();
    if (pos_ < src_.size() && src_[pos_] == '.') {
      real = true;
      t.text.push_back(take());
      digits();
    }
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      real = true;
      t.text.push_back(take());
      if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) {
        t.text.push_back(take());
      }
      const std::size_t before = t.text.size();
      digits();
      if (t.text.size() == before) {
        throw ParseError("malformed exponent", t.line, t.column);
      }
    }
    t.type = real ? Tok::real : Tok::integer;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

struct GateSpec {
  std::size_t params;
  GateKind kind;
};

const std::map<std::string, GateSpec, std::less<>>& single_qubit_gates() {
  static const std::map<std::string, GateSpec, std::less<>> table = {
      {"h", {0, GateKind::h}},      {"x", {0, GateKind::other}},
      {"y", {0, GateKind::other}},  {"z", {0, GateKind::other}},
      {"s", {0, GateKind::other}},  {"sdg", {0, GateKind::other}},
      {"t", {0, GateKind::other}},  {"tdg", {0, GateKind::other}},
      {"u1", {1, GateKind::other}}, {"u2", {2, GateKind::other}},
      {"u3", {3, GateKind::other}}, {"rx", {1, GateKind::other}},
      {"ry", {1, GateKind::other}}, {"rz", {1, GateKind::other}},
  };
  return table;
}

bool is_three_qubit_name(std::string_view name) {
  static const std::set<std::string, std::less<>> names = {
      "ccx", "cswap", "rccx", "c3x", "c3sqrtx", "rc3x", "c4x", "mcx"};
  return names.count(name) != 0;
}

bool is_two_qubit_name(std::string_view name) {
  static const std::set<std::string, std::less<>> names = {
      "cz",  "cy",  "swap", "ch",  "crx", "cry", "crz", "cu1",
      "cu3", "csx", "cu",   "rxx", "rzz", "cp",  "iswap"};
  return names.count(name) != 0;
}

struct Operand {
  std::size_t offset = 0;
  std::size_t count = 1;  // > 1 for a whole-register broadcast
};

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  QasmProgram run() {
    if (at_ident("OPENQASM")) {
      next();
      const Token& v = next();
      if (v.type != Tok::real && v.type != Tok::integer) {
        fail("expected a version number after OPENQASM", v);
      }
      if (v.text.rfind("2", 0) != 0) {
        fail("only OpenQASM 2.x is supported", v);
      }
      expect(";");
    }
    while (peek().type != Tok::end) statement();
    prog_.full.num_qubits = num_qubits_;
    return std::move(prog_);
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() {
    const Token& t = toks_[pos_];
    if (t.type != Tok::end) ++pos_;
    return t;
  }
  bool at_symbol(std::string_view s) const {
    return peek().type == Tok::symbol && peek().text == s;
  }
  bool at_ident(std::string_view s) const {
    return peek().type == Tok::ident && peek().text == s;
  }
  [[noreturn]] static void fail(const std::string& msg, const Token& t) {
    throw ParseError(msg, t.line, t.column);
  }
  void expect(std::string_view sym) {
    const Token& t = next();
    if (t.type != Tok::symbol || t.text != sym) {
      fail(
          "expected '" + std::string(sym) + "'" +
              (t.type == Tok::end ? " before end of input"
                                  : " but found '" + t.text + "'"),
          t);
    }
  }
  const Token& expect_ident() {
    const Token& t = next();
    if (t.type != Tok::ident) fail("expected an identifier", t);
    return t;
  }
  std::size_t expect_index() {
    const Token& t = next();
    if (t.type != Tok::integer) fail("expected a non-negative integer", t);
    std::size_t v = 0;
    const auto [p, ec] =
        std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (ec != std::errc{}) fail("integer out of range", t);
    return v;
  }

  void statement() {
    const Token& head = peek();
    if (head.type != Tok::ident) fail("expected a statement", head);
    const std::string& kw = head.text;
    if (kw == "include") {
      next();
      const Token& s = next();
      if (s.type != Tok::string) fail("expected a file name string", s);
      expect(";");
    } else if (kw == "qreg" || kw == "creg") {
      declare(kw == "qreg");
    } else if (kw == "measure") {
      measure();
    } else if (kw == "barrier") {
      next();
      operands();
      expect(";");
      prog_.meta.warnings.push_back(
          "line " + std::to_string(head.line) + ": barrier dropped");
    } else if (
        kw == "gate" || kw == "opaque" || kw == "if" || kw == "reset") {
      fail("unsupported statement '" + kw + "'", head);
    } else {
      gate_call();
    }
  }

  void declare(bool quantum) {
    next();
    const Token& name = expect_ident();
    expect("[");
    const std::size_t size = expect_index();
    expect("]");
    expect(";");
    if (size == 0) fail("register '" + name.text + "' has size 0", name);
    if (qregs_.count(name.text) || cregs_.count(name.text)) {
      fail("register '" + name.text + "' redeclared", name);
    }
    if (quantum) {
      RegisterSlice r{name.text, size, num_qubits_};
      qregs_.emplace(name.text, r);
      prog_.meta.qregs.push_back(r);
      num_qubits_ += size;
    } else {
      RegisterSlice r{name.text, size, num_clbits_};
      cregs_.emplace(name.text, r);
      prog_.meta.cregs.push_back(r);
      num_clbits_ += size;
    }
  }

  Operand operand(bool quantum) {
    const Token& name = expect_ident();
    const auto& regs = quantum ? qregs_ : cregs_;
    const auto it = regs.find(name.text);
    if (it == regs.end()) {
      fail(
          std::string("unknown ") + (quantum ? "qreg" : "creg") + " '" +
              name.text + "'",
          name);
    }
    const RegisterSlice& r = it->second;
    if (at_symbol("[")) {
      next();
      const Token& idx_tok = peek();
      const std::size_t idx = expect_index();
      expect("]");
      if (idx >= r.size) {
        fail(
            "index " + std::to_string(idx) + " out of range for '" + r.name +
                "[" + std::to_string(r.size) + "]'",
            idx_tok);
      }
      return {r.offset + idx, 1};
    }
    return {r.offset, r.size};
  }

  std::vector<std::pair<Operand, Token>> operands() {
    std::vector<std::pair<Operand, Token>> out;
    do {
      if (!out.empty()) next();
      const Token at = peek();
      out.emplace_back(operand(true), at);
    } while (at_symbol(","));
    return out;
  }

  // Broadcast width of an argument list; every register argument must agree.
  std::size_t broadcast_width(
      const std::vector<std::pair<Operand, Token>>& args) {
    std::size_t width = 1;
    for (const auto& [op, tok] : args) {
      if (op.count == 1) continue;
      if (width != 1 && width != op.count) {
        fail("register arguments of different sizes", tok);
      }
      width = op.count;
    }
    return width;
  }

  static std::size_t lane(const Operand& op, std::size_t i) {
    return op.count == 1 ? op.offset : op.offset + i;
  }

  void measure() {
    next();
    const Operand q = operand(true);
    expect("->");
    const Token ctok = peek();
    const Operand c = operand(false);
    expect(";");
    if (q.count != c.count) {
      fail("measure operands differ in size", ctok);
    }
    for (std::size_t i = 0; i < q.count; ++i) {
      const std::size_t flat = c.offset + i;
      const RegisterSlice* reg = nullptr;
      for (const auto& r : prog_.meta.cregs) {
        if (flat >= r.offset && flat < r.offset + r.size) reg = &r;
      }
      prog_.meta.measures.push_back(
          {static_cast<Qubit>(q.offset + i), reg->name, flat - reg->offset});
    }
  }

  // Expression grammar: sum := product (('+'|'-') product)*
  double expr() {
    double v = term();
    while (at_symbol("+") || at_symbol("-")) {
      const bool plus = next().text == "+";
      const double r = term();
      v = plus ? v + r : v - r;
    }
    return v;
  }
  double term() {
    double v = unary();
    while (at_symbol("*") || at_symbol("/")) {
      const Token& op = next();
      const double r = unary();
      if (op.text == "*") {
        v *= r;
      } else {
        if (r == 0.0) fail("division by zero", op);
        v /= r;
      }
    }
    return v;
  }
  double unary() {
    if (at_symbol("-")) {
      next();
      return -unary();
    }
    if (at_symbol("+")) {
      next();
      return unary();
    }
    return power();
  }
  double power() {
    const double base = primary();
    if (at_symbol("^")) {
      next();
      return std::pow(base, unary());
    }
    return base;
  }
  double primary() {
    const Token& t = next();
    if (t.type == Tok::real || t.type == Tok::integer) {
      double v = 0;
      const auto [p, ec] =
          std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
      if (ec != std::errc{}) fail("malformed number", t);
      return v;
    }
    if (t.type == Tok::symbol && t.text == "(") {
      const double v = expr();
      expect(")");
      return v;
    }
    if (t.type == Tok::ident) {
      if (t.text == "pi") return std::numbers::pi;
      using Fn = double (*)(double);
      static const std::map<std::string, Fn, std::less<>> fns = {
          {"sin", [](double x) { return std::sin(x); }},
          {"cos", [](double x) { return std::cos(x); }},
          {"tan", [](double x) { return std::tan(x); }},
          {"exp", [](double x) { return std::exp(x); }},
          {"ln", [](double x) { return std::log(x); }},
          {"sqrt", [](double x) { return std::sqrt(x); }},
      };
      const auto it = fns.find(t.text);
      if (it != fns.end()) {
        expect("(");
        const double v = expr();
        expect(")");
        return it->second(v);
      }
      fail("unknown identifier '" + t.text + "' in expression", t);
    }
    fail("expected an expression", t);
  }

  void gate_call() {
    const Token name = next();
    std::vector<double> params;
    if (at_symbol("(")) {
      next();
      if (!at_symbol(")")) {
        params.push_back(expr());
        while (at_symbol(",")) {
          next();
          params.push_back(expr());
        }
      }
      expect(")");
    }
    const auto args = operands();
    expect(";");

    if (name.text == "cx" || name.text == "CX") {
      if (args.size() != 2) fail("cx takes exactly two qubits", name);
      if (!params.empty()) fail("cx takes no parameters", name);
      const std::size_t width = broadcast_width(args);
      for (std::size_t i = 0; i < width; ++i) {
        const std::size_t c = lane(args[0].first, i);
        const std::size_t t = lane(args[1].first, i);
        if (c == t) fail("cx control and target coincide", args[1].second);
        prog_.full.gates.push_back(
            Gate::cnot(static_cast<Qubit>(c), static_cast<Qubit>(t)));
      }
      return;
    }
    if (is_three_qubit_name(name.text) || args.size() >= 3) {
      fail(
          "3-qubit gate '" + name.text +
              "' must be decomposed into elementary gates first",
          name);
    }
    const auto& table = single_qubit_gates();
    const auto it = table.find(name.text);
    if (it == table.end()) {
      if (is_two_qubit_name(name.text) || args.size() == 2) {
        fail(
            "unsupported two-qubit gate '" + name.text +
                "' (only cx is supported)",
            name);
      }
      fail("unsupported gate '" + name.text + "'", name);
    }
    if (args.size() != 1) {
      fail("gate '" + name.text + "' takes exactly one qubit", name);
    }
    if (params.size() != it->second.params) {
      fail(
          "gate '" + name.text + "' expects " +
              std::to_string(it->second.params) + " parameter(s)",
          name);
    }
    const Operand& op = args[0].first;
    for (std::size_t i = 0; i < op.count; ++i) {
      const auto q = static_cast<Qubit>(op.offset + i);
      if (it->second.kind == GateKind::h) {
        prog_.full.gates.push_back(Gate::h(q));
      } else {
        prog_.full.gates.push_back(Gate::other(name.text, params, q));
      }
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  QasmProgram prog_;
  std::map<std::string, RegisterSlice, std::less<>> qregs_;
  std::map<std::string, RegisterSlice, std::less<>> cregs_;
  std::size_t num_qubits_ = 0;
  std::size_t num_clbits_ = 0;
};

void emit_gate(std::ostringstream& os, const Gate& g, Qubit a, Qubit b) {
  os << g.mnemonic();
  if (g.kind == GateKind::other && !g.params.empty()) {
    os << '(';
    for (std::size_t i = 0; i < g.params.size(); ++i) {
      if (i) os << ',';
      os << format_real(g.params[i]);
    }
    os << ')';
  }
  os << " q[" << a << ']';
  if (g.is_cnot()) os << ",q[" << b << ']';
  os << ";\n";
}

}  // namespace

SplitCircuit QasmProgram::split() const {
  SplitCircuit s = split_passthrough(full);
  s.plan.measures = meta.measures;
  s.plan.qregs = meta.qregs;
  s.plan.cregs = meta.cregs;
  s.plan.warnings = meta.warnings;
  return s;
}

QasmProgram parse_qasm_program(std::string_view text) {
  return Parser(Lexer(text).run()).run();
}

SplitCircuit parse_qasm(std::string_view text) {
  return parse_qasm_program(text).split();
}

EmitContext identity_context(const Circuit& core) {
  EmitContext ctx;
  ctx.placements.reserve(core.gates.size());
  for (std::size_t i = 0; i < core.gates.size(); ++i) {
    const Gate& g = core.gates[i];
    ctx.placements.push_back(
        {i + 1, g.control(), g.target(), g.control(), g.target()});
  }
  ctx.initial_wire.resize(core.num_qubits);
  for (std::size_t q = 0; q < core.num_qubits; ++q) {
    ctx.initial_wire[q] = static_cast<Qubit>(q);
  }
  ctx.final_wire = ctx.initial_wire;
  return ctx;
}

std::string format_real(double value) {
  std::array<char, 64> buf{};
  const auto [p, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  std::string s(buf.data(), p);
  // Keep a decimal point so the token reads back as a real.
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

std::string emit_qasm(
    const Circuit& pc, const PassthroughPlan& plan, const EmitContext& ctx) {
  // Passthrough gates bucketed by the physical position they follow.
  std::vector<std::vector<std::pair<const Gate*, Qubit>>> after(
      pc.gates.size() + 1);
  for (const Passthrough& p : plan.gates) {
    const Qubit q = p.gate.q0;
    if (p.anchor == kNoGate) {
      after[0].emplace_back(&p.gate, ctx.initial_wire.at(q));
      continue;
    }
    const Placement& at = ctx.placements.at(p.anchor);
    after.at(at.end).emplace_back(&p.gate, at.wire_of(q));
  }

  std::ostringstream os;
  os << "OPENQASM 2.0;\n";
  os << "include \"qelib1.inc\";\n";
  os << "qreg q[" << pc.num_qubits << "];\n";
  for (const RegisterSlice& c : plan.cregs) {
    os << "creg " << c.name << '[' << c.size << "];\n";
  }
  auto flush = [&](std::size_t slot) {
    for (const auto& [g, wire] : after[slot]) emit_gate(os, *g, wire, wire);
  };
  flush(0);
  for (std::size_t i = 0; i < pc.gates.size(); ++i) {
    const Gate& g = pc.gates[i];
    emit_gate(os, g, g.q0, g.q1);
    flush(i + 1);
  }
  for (const Measurement& m : plan.measures) {
    os << "measure q[" << ctx.final_wire.at(m.qubit) << "] -> " << m.creg
       << '[' << m.bit << "];\n";
  }
  return os.str();
}

std::string to_qasm(const Circuit& full) {
  const SplitCircuit s = split_passthrough(full);
  return emit_qasm(s.core, s.plan, identity_context(s.core));
}

}  // namespace qroute
