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
#include <cmath>
#include <numeric>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "qroute/error.hpp"
#include "qroute/generators.hpp"
#include "qroute/qasm.hpp"
#include "qroute/router.hpp"
#include "qroute/verify.hpp"
#include "support.hpp"

using namespace qroute;

namespace {

bool close(double a, double b) {
  return std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(b));
}

Mapping random_mapping(std::size_t nq, std::size_t nv, std::mt19937_64& rng) {
  std::vector<Qubit> nodes(nv);
  std::iota(nodes.begin(), nodes.end(), Qubit{0});
  std::shuffle(nodes.begin(), nodes.end(), rng);
  nodes.resize(nq);
  return Mapping::from_assignment(nodes, nv);
}

// Gate relabelled into a dense 0..k-1 index space for the unitary oracle.
std::vector<Gate> relabel(std::vector<Gate> gates, const std::vector<Qubit>& order) {
  auto idx = [&](Qubit q) {
    return static_cast<Qubit>(std::find(order.begin(), order.end(), q) - order.begin());
  };
  for (Gate& g : gates) {
    g.q0 = idx(g.q0);
    if (g.is_cnot()) g.q1 = idx(g.q1);
  }
  return gates;
}

bool cnots_on_edges(const std::vector<Gate>& gates, const ArchGraph& ag) {
  return std::all_of(gates.begin(), gates.end(), [&](const Gate& g) {
    return !g.is_cnot() || ag.has_edge(g.q0, g.q1);
  });
}

std::vector<bool> executed_flags(const Router& r, const SearchState& s) {
  std::vector<bool> out(r.dag().num_gates());
  for (GateId g = 0; g < out.size(); ++g) out[g] = r.dag().is_executed(s.cursor, g);
  return out;
}

// A handful of states reached by random walks through children().
struct Sample {
  ArchGraph ag;
  DistanceTables tables;
  Circuit core;
};

std::vector<Sample> samples(std::mt19937_64& rng, std::size_t count) {
  std::vector<Sample> out;
  const char* names[] = {"qx5", "q20", "grid-3x3", "line-6"};
  for (std::size_t i = 0; i < count; ++i) {
    Sample s;
    if (i % 5 == 4) {
      s.ag = oracle::random_graph(7 + rng() % 4, 0.15, 0.4, rng);
    } else {
      s.ag = load_arch(names[i % 4]);
    }
    s.tables = compute_tables(s.ag);
    const std::size_t nq = 3 + rng() % std::min<std::size_t>(5, s.ag.num_nodes() - 2);
    s.core = random_circuit(nq, 10 + rng() % 25, rng());
    out.push_back(std::move(s));
  }
  return out;
}

SearchState walk(const Router& r, const SearchState& from, std::size_t steps,
                 std::mt19937_64& rng) {
  SearchState s = from;
  for (std::size_t k = 0; k < steps && !r.dag().finished(s.cursor); ++k) {
    auto kids = r.children(s);
    s = kids[rng() % kids.size()];
  }
  return s;
}

}  // namespace

TEST_SUITE("router blocks") {
  TEST_CASE("swap blocks act as SWAP") {
    const ArchGraph two_way("p", 2, {{0, 1}, {1, 0}});
    const ArchGraph one_way("p", 2, {{1, 0}});
    const auto want = oracle::unitary_of(
        {Gate::cnot(0, 1), Gate::cnot(1, 0), Gate::cnot(0, 1)}, 2);
    for (const ArchGraph* ag : {&two_way, &one_way}) {
      for (const auto& [u, v] : {std::pair<Qubit, Qubit>{0, 1}, {1, 0}}) {
        const auto block = swap_block(*ag, u, v);
        CHECK(block.size() == (ag->all_bidirectional() ? 3u : 7u));
        CHECK(cnots_on_edges(block, *ag));
        CHECK(oracle::equal_up_to_global_phase(oracle::unitary_of(block, 2), want));
        CHECK(tableau_of(block, 2) == tableau_of(std::vector<Gate>{Gate::cnot(0, 1),
                                                   Gate::cnot(1, 0), Gate::cnot(0, 1)}, 2));
      }
    }
  }

  TEST_CASE("reverse block acts as the reversed CNOT") {
    const ArchGraph ag("p", 2, {{1, 0}});
    const auto block = reverse_block(ag, 0, 1);
    CHECK(block.size() == 5);
    CHECK(cnots_on_edges(block, ag));
    const std::vector<Gate> want{Gate::cnot(0, 1)};
    CHECK(oracle::equal_up_to_global_phase(oracle::unitary_of(block, 2),
                                           oracle::unitary_of(want, 2)));
    CHECK(tableau_of(block, 2) == tableau_of(want, 2));
    CHECK_THROWS_AS(reverse_block(ag, 1, 0), ContractError);
  }

  TEST_CASE("remote CNOT ladders") {
    for (std::size_t d = 1; d <= 6; ++d) {
      const ArchGraph fwd = line_arch(d + 1);
      // Alternate the direction of every coupling.
      std::vector<Edge> mixed;
      for (Qubit k = 0; k < d; ++k) {
        mixed.push_back(k % 2 ? Edge{k + 1, k} : Edge{k, k + 1});
      }
      const ArchGraph alt("alt", d + 1, mixed);
      std::vector<Qubit> path(d + 1);
      std::iota(path.begin(), path.end(), Qubit{0});
      const std::vector<Gate> want{Gate::cnot(0, static_cast<Qubit>(d))};
      for (const ArchGraph* ag : {&fwd, &alt}) {
        CAPTURE(d);
        const auto block = remote_cnot_block(path, *ag);
        CHECK(cnots_on_edges(block, *ag));
        const auto cnots = std::count_if(block.begin(), block.end(),
                                         [](const Gate& g) { return g.is_cnot(); });
        CHECK(static_cast<std::size_t>(cnots) == (d == 1 ? 1 : 4 * (d - 1)));
        CHECK(tableau_of(block, d + 1) == tableau_of(want, d + 1));
        if (ag == &fwd) {
          CHECK(oracle::basis_simulation(block, d + 1) ==
                oracle::basis_simulation(want, d + 1));
        }
        if (d <= 4) {
          CHECK(oracle::equal_up_to_global_phase(oracle::unitary_of(block, d + 1),
                                                 oracle::unitary_of(want, d + 1)));
        }
      }
    }
  }

  TEST_CASE("two-hop ladder layout") {
    const ArchGraph ag = line_arch(3);
    const std::vector<Qubit> path{0, 1, 2};
    CHECK(remote_cnot_block(path, ag) ==
          std::vector<Gate>{Gate::cnot(0, 1), Gate::cnot(1, 2), Gate::cnot(0, 1),
                            Gate::cnot(1, 2)});
  }

  TEST_CASE("shortest paths are lexicographically first") {
    const ArchGraph ag = load_arch("grid-3x3");
    const DistanceTables t = compute_tables(ag);
    CHECK(shortest_path(ag, t, 0, 8) == std::vector<Qubit>{0, 1, 2, 5, 8});
    CHECK(shortest_path(ag, t, 4, 4) == std::vector<Qubit>{4});
  }
}

TEST_SUITE("router search") {
  TEST_CASE("worked example on the six-node graph") {
    const ArchGraph ag = testing::ag_test();
    const DistanceTables t = compute_tables(ag);
    const Circuit core = parse_qasm(testing::fixture("alu-v0_27")).core;
    const Router r(core, ag, t, CostParams{});
    const SearchState s = r.initial_state(Mapping::identity_prefix(5, 6));
    REQUIRE(s.tail.size() == 1);
    CHECK(s.tail[0] == Gate::cnot(3, 4));
    CHECK(r.dag().remaining(s.cursor) == 16);

    const auto kids = r.children(s);
    REQUIRE(kids.size() == 5);
    std::vector<int> gcosts;
    for (const auto& k : kids) gcosts.push_back(k.gcost);
    CHECK(gcosts == std::vector<int>{7, 7, 7, 7, 4});
    CHECK(kids[0].op_a == 0);
    CHECK(kids[0].op_b == 1);
    CHECK(kids[1].op_a == 1);
    CHECK(kids[1].op_b == 2);
    CHECK(kids[2].op_a == 2);
    CHECK(kids[2].op_b == 3);
    CHECK(kids[3].op_a == 2);
    CHECK(kids[3].op_b == 5);
    CHECK(kids[4].op == OpKind::reversal);

    const SearchState next = r.next_state(s, nullptr);
    CHECK(next.op == OpKind::swap);
    CHECK(next.op_a == 1);
    CHECK(next.op_b == 2);
  }

  TEST_CASE("execute_all follows unlocked chains") {
    Circuit c(3);
    c.cx(0, 1).cx(1, 2);
    const ArchGraph ag = line_arch(3);
    const Router r(c, ag, compute_tables(ag), CostParams{});
    const SearchState s = r.initial_state(Mapping::identity_prefix(3, 3));
    CHECK(r.dag().finished(s.cursor));
    CHECK(s.tail == std::vector<Gate>{Gate::cnot(0, 1), Gate::cnot(1, 2)});

    SearchState again = s;
    r.execute_all(again);
    CHECK(again.tail == s.tail);
  }

  TEST_CASE("bidirectional graphs have no reversal children") {
    std::mt19937_64 rng(3);
    const ArchGraph ag = load_arch("q20");
    const DistanceTables t = compute_tables(ag);
    const Router r(random_circuit(8, 30, 1), ag, t, CostParams{});
    const SearchState s = r.initial_state(random_mapping(8, 20, rng));
    for (const auto& k : r.children(s)) {
      CHECK(k.op == OpKind::swap);
      CHECK(k.gcost == 3);
    }
  }

  TEST_CASE("cost_h of a single satisfied gate is the tail term") {
    const ArchGraph ag = load_arch("q20");
    const DistanceTables t = compute_tables(ag);
    Circuit c(2);
    c.cx(0, 1);
    const Router r(c, ag, t, CostParams{});
    SearchState s;
    s.tau = Mapping::identity_prefix(2, 20);
    s.sigma = WirePermutation(20);
    s.cursor = r.dag().start();
    CHECK(close(r.cost_h(s), 0.4 * (t.diameter - 1) * 3));
    r.execute_all(s);
    CHECK(r.cost_h(s) == 0.0);
  }

  TEST_CASE("cost_h and min_child_hcost match naive recomputation") {
    std::mt19937_64 rng(404);
    int states = 0;
    int expansions = 0;
    for (const Sample& smp : samples(rng, 40)) {
      const CostParams params;
      const Router r(smp.core, smp.ag, smp.tables, params);
      const Mapping tau = random_mapping(smp.core.num_qubits, smp.ag.num_nodes(), rng);
      const SearchState s0 = r.initial_state(tau);
      for (int k = 0; k < 5; ++k) {
        const SearchState s = walk(r, s0, rng() % 6, rng);
        const double want = oracle::naive_cost_h(
            smp.core, executed_flags(r, s), s.tau.assignment(), smp.ag,
            params.layer_weights, params.tail_weight);
        CHECK(close(r.cost_h(s), want));
        ++states;

        if (r.dag().finished(s.cursor) || expansions >= 100) continue;
        double best = std::numeric_limits<double>::infinity();
        for (const auto& kid : r.children(s)) {
          best = std::min(best, kid.gcost + r.cost_h(kid));
        }
        CHECK(close(r.min_child_hcost(s), best));
        ++expansions;
      }
    }
    CHECK(states == 200);
    CHECK(expansions == 100);
  }

  TEST_CASE("children stay inside the expansion bound") {
    std::mt19937_64 rng(77);
    for (const Sample& smp : samples(rng, 30)) {
      const Router r(smp.core, smp.ag, smp.tables, CostParams{});
      const SearchState s = r.initial_state(
          random_mapping(smp.core.num_qubits, smp.ag.num_nodes(), rng));
      if (r.dag().finished(s.cursor)) continue;
      const auto kids = r.children(s);
      CHECK(kids.size() <= smp.ag.pairs().size() + smp.core.num_qubits / 2);
      for (const auto& k : kids) {
        CHECK(cnots_on_edges(k.tail, smp.ag));
        // sigma follows tau through the swaps.
        for (Qubit q = 0; q < smp.core.num_qubits; ++q) {
          CHECK(k.sigma.image(s.sigma.origin(s.tau[q])) == k.tau[q]);
        }
      }
    }
  }

  TEST_CASE("pruning follows the stated rule") {
    std::mt19937_64 rng(9);
    int pruned_some = 0;
    for (const Sample& smp : samples(rng, 60)) {
      const Router r(smp.core, smp.ag, smp.tables, CostParams{});
      const SearchState s = r.initial_state(
          random_mapping(smp.core.num_qubits, smp.ag.num_nodes(), rng));
      if (r.dag().finished(s.cursor)) continue;
      const auto kids = r.children(s);
      const auto kept = r.prune_children(s, kids);
      std::vector<int> want;
      const double parent_layered = r.layered_cost(s);
      for (const auto& k : kids) {
        const bool stalled = r.dag().remaining(k.cursor) >= r.dag().remaining(s.cursor);
        if (stalled && r.layered_cost(k) > parent_layered + 1e-9) continue;
        want.push_back(k.op_id);
      }
      if (want.empty()) {
        const auto best = std::min_element(kids.begin(), kids.end(), [&](auto& a, auto& b) {
          return a.gcost + r.cost_h(a) < b.gcost + r.cost_h(b);
        });
        want.push_back(best->op_id);
      }
      std::vector<int> got;
      for (const auto& k : kept) got.push_back(k.op_id);
      CHECK(got == want);
      pruned_some += kept.size() < kids.size();
      for (const auto& k : kids) {
        if (k.executed_here() > 0) {
          CHECK(std::find(got.begin(), got.end(), k.op_id) != got.end());
        }
      }
    }
    CHECK(pruned_some > 0);
  }

  TEST_CASE("fallback keeps the mapping and runs the closest front gate") {
    std::mt19937_64 rng(21);
    for (const Sample& smp : samples(rng, 30)) {
      const Router r(smp.core, smp.ag, smp.tables, CostParams{});
      SearchState s = r.initial_state(
          random_mapping(smp.core.num_qubits, smp.ag.num_nodes(), rng));
      if (r.dag().finished(s.cursor)) continue;
      int closest = std::numeric_limits<int>::max();
      for (GateId g : r.dag().front(s.cursor)) {
        const Gate& lg = r.dag().gate(g);
        closest = std::min(closest, smp.tables.dist_cnot(s.tau[lg.q0], s.tau[lg.q1]));
      }
      const SearchState f = r.fallback(s);
      CHECK(f.tau == s.tau);
      CHECK(f.sigma == s.sigma);
      CHECK(f.op == OpKind::remote);
      CHECK(f.executed_here() >= 1);
      CHECK(r.dag().remaining(f.cursor) < r.dag().remaining(s.cursor));
      CHECK(cnots_on_edges(f.tail, smp.ag));
      const Gate& lg = r.dag().gate(f.op_gate);
      CHECK(smp.tables.dist_cnot(s.tau[lg.q0], s.tau[lg.q1]) == closest);

      s.stagnation = r.fallback_k();
      RouteReport rep;
      const SearchState via = r.next_state(s, &rep);
      CHECK(via.op == OpKind::remote);
      CHECK(rep.fallback_count == 1);
      CHECK(rep.states_expanded == 0);
    }
  }

  TEST_CASE("cost parameters are validated") {
    CostParams p;
    CHECK_NOTHROW(p.validate());
    p.layer_weights = {1.0, 1.0, 0.8};
    CHECK_THROWS_AS(p.validate(), ContractError);
    p = CostParams{};
    p.layer_weights = {0.9, 0.9, 0.8, 0.6};
    CHECK_THROWS_AS(p.validate(), ContractError);
    p = CostParams{};
    p.layer_weights = {1.0, 0.5, 0.8, 0.6};
    CHECK_THROWS_AS(p.validate(), ContractError);
    p = CostParams{};
    p.tail_weight = 0.7;
    CHECK_THROWS_AS(p.validate(), ContractError);
  }

  TEST_CASE("default K is half the diameter rounded up") {
    CHECK(default_fallback_k(compute_tables(load_arch("qx5"))) == 4);
    CHECK(default_fallback_k(compute_tables(load_arch("line-2"))) == 1);
  }
}

TEST_SUITE("routing end to end") {
  TEST_CASE("routed circuits verify and respect the graph") {
    std::mt19937_64 rng(1234);
    for (const Sample& smp : samples(rng, 40)) {
      for (const bool prune : {true, false}) {
        CostParams params;
        params.prune = prune;
        params.lookahead_depth = static_cast<int>(rng() % 3);
        const Mapping tau =
            random_mapping(smp.core.num_qubits, smp.ag.num_nodes(), rng);
        const RouteResult res = route(smp.core, smp.ag, smp.tables, tau, params);
        CHECK(cnots_on_edges(res.pc.gates, smp.ag));
        const Verdict v = check_equivalence(
            smp.core, res.pc, tau, WirePermutation::from_images(res.report.final_sigma));
        CHECK_MESSAGE(v.pass, v.reason);
        const auto k = static_cast<std::size_t>(res.report.fallback_k);
        CHECK(res.report.states_expanded <= k * smp.core.size());
        CHECK(res.report.added_gates ==
              static_cast<long>(res.pc.size()) - static_cast<long>(smp.core.size()));
      }
    }
  }

  TEST_CASE("fixed K of one still terminates") {
    CostParams params;
    params.fallback_k = 1;
    const ArchGraph ag = load_arch("qx5");
    const DistanceTables t = compute_tables(ag);
    const Circuit core = random_circuit(10, 80, 5);
    const Mapping tau = Mapping::identity_prefix(10, 16);
    const RouteResult res = route(core, ag, t, tau, params);
    CHECK(res.report.fallback_k == 1);
    CHECK(res.report.states_expanded <= core.size());
    CHECK(check_equivalence(core, res.pc, tau,
                            WirePermutation::from_images(res.report.final_sigma))
              .pass);
  }

  TEST_CASE("oscillating search is cut off by the fallback") {
    const Circuit core = parse_qasm(testing::read_text(
        testing::source_dir() / "tests" / "fixtures" / "oscillation.qasm")).core;
    const ArchGraph ag = load_arch("qx5");
    const DistanceTables t = compute_tables(ag);
    const Mapping tau = Mapping::identity_prefix(core.num_qubits, 16);
    for (const int k : {0, 1, 40}) {
      CAPTURE(k);
      CostParams params;
      params.fallback_k = k;
      const RouteResult res = route(core, ag, t, tau, params);
      const auto kk = static_cast<std::size_t>(res.report.fallback_k);
      CHECK(res.report.fallback_count >= 1);
      CHECK(res.report.states_expanded <= kk * core.size());
      CHECK(check_equivalence(core, res.pc, tau,
                              WirePermutation::from_images(res.report.final_sigma))
                .pass);
    }
  }
}
