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

#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "qroute/circuit.hpp"
#include "qroute/dependency_graph.hpp"
#include "qroute/error.hpp"
#include "qroute/generators.hpp"
#include "qroute/qasm.hpp"
#include "support.hpp"

using namespace qroute;

namespace {

// Per-qubit gate sequences. Two circuits with equal sequences on every qubit
// differ only by commuting gates on disjoint qubits.
std::vector<std::vector<Gate>> wire_view(const Circuit& c) {
  std::vector<std::vector<Gate>> w(c.num_qubits);
  for (const Gate& g : c.gates) {
    w[g.q0].push_back(g);
    if (g.is_cnot()) w[g.q1].push_back(g);
  }
  return w;
}

// Layers of the remaining gates, peeled naively from the gate list.
std::vector<std::set<GateId>> peel(const Circuit& core, std::set<GateId> done) {
  std::vector<std::set<GateId>> out;
  while (done.size() < core.size()) {
    std::set<GateId> layer;
    for (GateId i = 0; i < core.size(); ++i) {
      if (done.count(i)) continue;
      bool blocked = false;
      for (GateId j = 0; j < i && !blocked; ++j) {
        if (done.count(j)) continue;
        const Gate& a = core.gates[i];
        const Gate& b = core.gates[j];
        blocked = a.q0 == b.q0 || a.q0 == b.q1 || a.q1 == b.q0 || a.q1 == b.q1;
      }
      if (!blocked) layer.insert(i);
    }
    done.insert(layer.begin(), layer.end());
    out.push_back(layer);
  }
  return out;
}

std::vector<std::set<GateId>> as_sets(const LayerView& v) {
  std::vector<std::set<GateId>> out;
  for (const auto& l : v.layers) out.emplace_back(l.begin(), l.end());
  return out;
}

Circuit interleaved_five() {
  Circuit c(4);
  c.cx(0, 1).cx(2, 3).cx(1, 0).cx(0, 1).cx(1, 2);
  return c;
}

}  // namespace

TEST_SUITE("qasm") {
  TEST_CASE("minimal program") {
    const SplitCircuit s = parse_qasm("OPENQASM 2.0;\nqreg q[2];\ncx q[0],q[1];\n");
    CHECK(s.core.num_qubits == 2);
    REQUIRE(s.core.size() == 1);
    CHECK(s.core.gates[0] == Gate::cnot(0, 1));
  }

  TEST_CASE("alu-v0_27 core") {
    const SplitCircuit s = parse_qasm(testing::fixture("alu-v0_27"));
    CHECK(s.core.num_qubits == 5);
    CHECK(s.core.size() == 17);
    CHECK(s.core.gates[0] == Gate::cnot(3, 4));
    CHECK(s.core.gates[1] == Gate::cnot(2, 1));
    const DependencyGraph dg(s.core);
    CHECK(dg.front(dg.start()) == std::vector<GateId>{0, 1});
  }

  TEST_CASE("rejected inputs carry a location") {
    const char* bad[] = {
        "OPENQASM 2.0;\nqreg q[3];\nh q[0];\ncx q[0],q[1];\nccx q[0],q[1],q[2];\n",
        "OPENQASM 2.0;\nqreg q[2];\ncx q[0],q[2];\n",
        "OPENQASM 2.0;\nqreg q[2];\nfoo q[0];\n",
        "OPENQASM 2.0;\nqreg q[2]\ncx q[0],q[1];\n",
    };
    for (const char* text : bad) {
      CAPTURE(text);
      try {
        parse_qasm(text);
        FAIL("accepted");
      } catch (const ParseError& e) {
        CHECK(e.line() >= 1);
        CHECK(e.column() >= 1);
      }
    }
  }

  TEST_CASE("barriers are dropped with a warning, registers flatten") {
    const QasmProgram p = parse_qasm_program(
        "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg a[2];\nqreg b[3];\n"
        "creg c[1];\ncx a[1],b[2];\nbarrier a;\nmeasure b[0] -> c[0];\n");
    CHECK(p.full.num_qubits == 5);
    REQUIRE(p.full.size() == 1);
    CHECK(p.full.gates[0] == Gate::cnot(1, 4));
    CHECK(p.meta.warnings.size() == 1);
    REQUIRE(p.meta.measures.size() == 1);
    CHECK(p.meta.measures[0].qubit == 2);
  }

  TEST_CASE("empty circuit emits only the header") {
    const std::string out = to_qasm(Circuit(3));
    CHECK(out.find("qreg q[3];") != std::string::npos);
    CHECK(out.find("include \"qelib1.inc\";") != std::string::npos);
    CHECK(out.find("cx") == std::string::npos);
  }

  TEST_CASE("emit then parse gives the same gate list") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      const Circuit c = random_circuit(6, 30, seed, 1.5);
      const SplitCircuit back = parse_qasm(to_qasm(c));
      const Circuit full = merge_passthrough(back.core, back.plan);
      CAPTURE(seed);
      CHECK(full.num_qubits == c.num_qubits);
      CHECK(full.gates == merge_passthrough(split_passthrough(c).core,
                                            split_passthrough(c).plan)
                              .gates);
      CHECK(wire_view(full) == wire_view(c));
    }
  }

  TEST_CASE("split and merge preserve every wire's gate order") {
    for (const char* name : {"alu-v0_27", "4mod5-v1_22", "qft_10", "rd84_142"}) {
      const QasmProgram p = parse_qasm_program(testing::fixture(name));
      const SplitCircuit s = p.split();
      CAPTURE(name);
      CHECK(wire_view(merge_passthrough(s.core, s.plan)) == wire_view(p.full));
    }
  }

  TEST_CASE("format_real keeps a decimal point") {
    CHECK(format_real(2.0) == "2.0");
    CHECK(std::stod(format_real(0.1)) == 0.1);
    CHECK(std::stod(format_real(-3.141592653589793)) == -3.141592653589793);
  }
}

TEST_SUITE("dependency graph") {
  TEST_CASE("five-gate example layers") {
    const Circuit c = interleaved_five();
    const DependencyGraph dg(c);
    const LayerView v = dg.layers(dg.start(), kAllLayers);
    REQUIRE(v.size() == 4);
    CHECK(v.layers[0] == std::vector<GateId>{0, 1});
    CHECK(v.layers[1] == std::vector<GateId>{2});
    CHECK(v.layers[2] == std::vector<GateId>{3});
    CHECK(v.layers[3] == std::vector<GateId>{4});

    const std::vector<GateId> done{0, 1};
    CHECK(dg.layers(done, 0).layers.front() == std::vector<GateId>{2});
  }

  TEST_CASE("disjoint gates form one layer; a chain forms singletons") {
    Circuit a(6);
    a.cx(0, 1).cx(2, 3).cx(5, 4);
    CHECK(DependencyGraph(a).layers(DependencyGraph(a).start(), kAllLayers).size() == 1);

    Circuit b(4);
    b.cx(0, 1).cx(1, 2).cx(2, 3);
    const DependencyGraph dg(b);
    const LayerView v = dg.layers(dg.start(), kAllLayers);
    REQUIRE(v.size() == 3);
    for (GateId g = 0; g < 3; ++g) CHECK(v.layers[g] == std::vector<GateId>{g});
  }

  TEST_CASE("all executed gives no layers") {
    const Circuit c = interleaved_five();
    const DependencyGraph dg(c);
    const std::vector<GateId> all{0, 1, 2, 3, 4};
    CHECK(dg.layers(all, 3).empty());
    CHECK(dg.finished(dg.cursor_for(all)));
  }

  TEST_CASE("non-downward-closed executed set is rejected") {
    const DependencyGraph dg(interleaved_five());
    const std::vector<GateId> bad{2};
    CHECK_THROWS_AS(dg.cursor_for(bad), ContractError);
  }

  TEST_CASE("layers match a naive peel on random prefixes") {
    std::mt19937_64 rng(11);
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
      const Circuit c = random_circuit(7, 40, seed);
      const DependencyGraph dg(c);
      // Random downward-closed prefix built by advancing front gates.
      DagCursor cur = dg.start();
      std::set<GateId> done;
      const std::size_t steps = rng() % 30;
      for (std::size_t k = 0; k < steps && !dg.finished(cur); ++k) {
        const auto f = dg.front(cur);
        const GateId g = f[rng() % f.size()];
        dg.advance(cur, g);
        done.insert(g);
      }
      CAPTURE(seed);
      CHECK(dg.remaining(cur) == c.size() - done.size());
      CHECK(as_sets(dg.layers(cur, kAllLayers)) == peel(c, done));
      const auto limited = dg.layers(cur, 2);
      CHECK(limited.size() <= 3);

      // Parents precede children and share a qubit.
      for (GateId g = 0; g < c.size(); ++g) {
        for (GateId p : dg.parents(g)) {
          CHECK(p < g);
        }
      }
    }
  }
}
