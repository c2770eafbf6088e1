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

#include "qroute/initial_mapping.hpp"

#include <cmath>
#include <utility>

#include "qroute/error.hpp"

namespace qroute {

void SAParams::validate() const {
  if (!(t_min > 0.0)) throw ContractError("SA t_min must be positive");
  if (!(t_max > t_min)) throw ContractError("SA t_max must exceed t_min");
  if (!(delta > 0.0 && delta < 1.0)) {
    throw ContractError("SA delta must lie strictly between 0 and 1");
  }
  if (r < 1) throw ContractError("SA r must be at least 1");
  if (subset_cap == 0) throw ContractError("SA subset cap must be positive");
  if (restarts < 1) throw ContractError("SA restarts must be at least 1");
}

int gate_cost(const Gate& g, const Mapping& tau, const DistanceTables& tables) {
  return tables.dist_cnot(tau[g.control()], tau[g.target()]);
}

long mapping_cost(
    std::span<const Gate> cstar, const Mapping& tau,
    const DistanceTables& tables) {
  long total = 0;
  for (const Gate& g : cstar) total += gate_cost(g, tau, tables);
  return total;
}

std::vector<Gate> select_cstar(const Circuit& lc, std::size_t cap) {
  if (cap == 0) throw ContractError("C* cap of 0 selects an empty subset");
  std::vector<Gate> out;
  for (const Gate& g : lc.gates) {
    if (out.size() == cap) break;
    if (g.is_cnot()) out.push_back(g);
  }
  return out;
}

Mapping sa_neighbor(const Mapping& tau, Rng& rng) {
  Mapping next = tau;
  const std::size_t nq = tau.num_logical();
  const std::size_t nv = tau.num_physical();
  if (nq == 0 || (nq == 1 && nv == 1)) return next;

  bool move = false;
  if (nq < nv) {
    move = nq < 2 || std::bernoulli_distribution(0.5)(rng);
  }
  if (move) {
    const auto q = static_cast<Qubit>(
        std::uniform_int_distribution<std::size_t>(0, nq - 1)(rng));
    // k-th free node, uniformly.
    std::size_t k =
        std::uniform_int_distribution<std::size_t>(0, nv - nq - 1)(rng);
    for (Qubit v = 0; v < nv; ++v) {
      if (next.occupied(v)) continue;
      if (k-- == 0) {
        next.move_to(q, v);
        break;
      }
    }
    return next;
  }
  std::uniform_int_distribution<std::size_t> pick(0, nq - 1);
  const std::size_t a = pick(rng);
  std::size_t b = std::uniform_int_distribution<std::size_t>(0, nq - 2)(rng);
  if (b >= a) ++b;
  next.swap_nodes(tau[static_cast<Qubit>(a)], tau[static_cast<Qubit>(b)]);
  return next;
}

bool metropolis_accept(
    double cost, double ncost, double temperature, Rng& rng) {
  if (ncost < cost) return true;
  const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  return u < std::exp((cost - ncost) / temperature);
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t run) {
  if (run == 0) return base;
  // splitmix64 finalizer
  std::uint64_t z = base + run * 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {

SAResult anneal_once(
    std::span<const Gate> cstar, const Mapping& start,
    const DistanceTables& tables, const SAParams& p, std::uint64_t seed) {
  Rng rng(seed);
  SAResult res;
  res.run_seed = seed;
  res.runs = 1;

  Mapping tau = start;
  long cost = mapping_cost(cstar, tau, tables);
  res.start_cost = cost;
  res.mapping = tau;
  res.cost = cost;

  std::size_t iteration = 0;
  for (double t = p.t_max; t >= p.t_min; t *= p.delta) {
    for (int i = 0; i < p.r; ++i) {
      Mapping cand = sa_neighbor(tau, rng);
      const long ncost = mapping_cost(cstar, cand, tables);
      if (metropolis_accept(
              static_cast<double>(cost), static_cast<double>(ncost), t, rng)) {
        tau = std::move(cand);
        cost = ncost;
      }
      if (cost < res.cost) {
        res.cost = cost;
        res.mapping = tau;
      }
      res.trace.push_back({iteration++, cost, res.cost});
    }
  }
  return res;
}

}  // namespace

SAResult sa_initial_mapping(
    std::span<const Gate> cstar, std::size_t num_logical,
    const DistanceTables& tables, const SAParams& params,
    const std::optional<Mapping>& start) {
  params.validate();
  const std::size_t nv = tables.dist_u.size();
  const Mapping from =
      start ? *start : Mapping::identity_prefix(num_logical, nv);
  if (from.num_logical() != num_logical || from.num_physical() != nv) {
    throw ContractError("SA start mapping has the wrong dimensions");
  }

  SAResult best;
  for (int run = 0; run < params.restarts; ++run) {
    SAResult r = anneal_once(
        cstar, from, tables, params,
        derive_seed(params.seed, static_cast<std::uint64_t>(run)));
    if (run == 0 || r.cost < best.cost) best = std::move(r);
    best.runs = run + 1;
    if (best.cost == 0) break;
  }
  return best;
}

}  // namespace qroute
