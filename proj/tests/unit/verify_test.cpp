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

#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "qroute/error.hpp"
#include "qroute/generators.hpp"
#include "qroute/verify.hpp"

using namespace qroute;

namespace {

std::vector<Gate> swap3(Qubit a, Qubit b) {
  return {Gate::cnot(a, b), Gate::cnot(b, a), Gate::cnot(a, b)};
}

}  // namespace

TEST_SUITE("verify") {
  TEST_CASE("gf2 map matches basis-state simulation") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      const Circuit c = random_circuit(7, 25, seed);
      const Gf2Map m = gf2_of(c.gates, 7);
      const auto cols = oracle::basis_simulation(c.gates, 7);
      for (std::size_t i = 0; i < 7; ++i) {
        for (std::size_t j = 0; j < 7; ++j) CHECK(m.at(i, j) == (cols[j][i] != 0));
      }
    }
    CHECK(gf2_of(swap3(0, 1), 2) == gf2_of(std::vector<Gate>{Gate::cnot(1, 0),
                                                Gate::cnot(0, 1), Gate::cnot(1, 0)}, 2));
    CHECK(gf2_of(std::vector<Gate>{Gate::cnot(0, 1), Gate::cnot(0, 1)}, 2).is_identity());
  }

  TEST_CASE("tableau equality is unitary equality up to phase") {
    std::mt19937_64 rng(31);
    int equal_pairs = 0;
    int distinct_pairs = 0;
    for (int i = 0; i < 600; ++i) {
      const std::size_t n = 1 + rng() % 3;
      const auto a = oracle::random_clifford(n, rng() % 5, rng);
      const auto b = oracle::random_clifford(n, rng() % 5, rng);
      const bool tab = tableau_of(a, n) == tableau_of(b, n);
      const bool uni = oracle::equal_up_to_global_phase(oracle::unitary_of(a, n),
                                                        oracle::unitary_of(b, n));
      CAPTURE(i);
      CHECK(tab == uni);
      (tab ? equal_pairs : distinct_pairs)++;
    }
    CHECK(equal_pairs > 20);
    CHECK(distinct_pairs > 20);
  }

  TEST_CASE("known identities") {
    const std::vector<Gate> hh{Gate::h(0), Gate::h(0)};
    CHECK(tableau_of(hh, 1).is_identity());
    const std::vector<Gate> flipped{Gate::h(0), Gate::h(1), Gate::cnot(1, 0),
                                    Gate::h(0), Gate::h(1)};
    CHECK(tableau_of(flipped, 2) == tableau_of(std::vector<Gate>{Gate::cnot(0, 1)}, 2));
    // (H on the control) changes the function.
    const std::vector<Gate> other{Gate::h(0), Gate::cnot(0, 1), Gate::h(0)};
    CHECK_FALSE(tableau_of(other, 2) == tableau_of(std::vector<Gate>{Gate::cnot(0, 1)}, 2));
  }

  TEST_CASE("tableaux stay symplectic") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 100; ++i) {
      const std::size_t n = 1 + rng() % 8;
      CHECK(tableau_of(oracle::random_clifford(n, 40, rng), n).is_symplectic());
    }
  }

  TEST_CASE("permuting wires equals appending swaps") {
    std::mt19937_64 rng(8);
    for (int i = 0; i < 50; ++i) {
      auto c = oracle::random_clifford(4, 20, rng);
      CliffordTableau t = tableau_of(c, 4);
      // image: 0->2, 2->0, 1->3, 3->1.
      const std::vector<Qubit> image{2, 3, 0, 1};
      t.permute_wires(image);
      for (const Gate& g : swap3(0, 2)) c.push_back(g);
      for (const Gate& g : swap3(1, 3)) c.push_back(g);
      CHECK(t == tableau_of(c, 4));
    }
  }

  TEST_CASE("check_equivalence with placement and permutation") {
    Circuit lc(2);
    lc.add(Gate::h(0)).cx(0, 1);
    // Logical 0 -> wire 2, logical 1 -> wire 0, then swap wires 0 and 1.
    const Mapping tau = Mapping::from_assignment({2, 0}, 3);
    Circuit pc(3, Space::physical);
    pc.add(Gate::h(2)).cx(2, 0);
    for (const Gate& g : swap3(0, 1)) pc.add(g);
    const auto sigma = WirePermutation::from_images({1, 0, 2});
    CHECK(check_equivalence(lc, pc, tau, sigma).pass);

    // Wrong permutation.
    CHECK_FALSE(check_equivalence(lc, pc, tau, WirePermutation(3)).pass);
    // Dropped gate.
    Circuit short_pc = pc;
    short_pc.gates.erase(short_pc.gates.begin());
    const Verdict v = check_equivalence(lc, short_pc, tau, sigma);
    CHECK_FALSE(v.pass);
    CHECK_FALSE(v.reason.empty());
    // Wrong dimensions.
    CHECK_THROWS_AS(check_equivalence(lc, pc, tau, WirePermutation(4)), ContractError);
  }

  TEST_CASE("clifford part drops other gates") {
    Circuit c(2);
    c.add(Gate::h(0)).add(Gate::other("t", {}, 1)).cx(0, 1).add(
        Gate::other("rz", {0.5}, 0));
    const Circuit p = clifford_part(c);
    CHECK(p.gates == std::vector<Gate>{Gate::h(0), Gate::cnot(0, 1)});
  }
}
