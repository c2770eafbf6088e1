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

#include "qroute/router.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <string>

#include "qroute/error.hpp"

namespace qroute {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kEps = 1e-9;

bool less_than(double a, double b) {
  return a < b - kEps * std::max(1.0, std::abs(b));
}

void append(std::vector<Gate>& out, const std::vector<Gate>& block) {
  out.insert(out.end(), block.begin(), block.end());
}

}  // namespace

void CostParams::validate() const {
  if (layer_weights.size() != lookahead_layers + 1) {
    throw ContractError(
        "expected " + std::to_string(lookahead_layers + 1) +
        " layer weights for " + std::to_string(lookahead_layers) +
        " look-ahead layers, got " + std::to_string(layer_weights.size()));
  }
  if (layer_weights.front() != 1.0) {
    throw ContractError("the front-layer weight w0 must be 1");
  }
  for (std::size_t k = 1; k < layer_weights.size(); ++k) {
    if (layer_weights[k] > layer_weights[k - 1]) {
      throw ContractError("layer weights must be non-increasing");
    }
  }
  if (tail_weight < 0.0 || tail_weight > layer_weights.back()) {
    throw ContractError("tail weight must lie in [0, last layer weight]");
  }
  if (fallback_k < 0) throw ContractError("fallback K must be at least 1");
  if (lookahead_depth < 0 || lookahead_depth > 3) {
    throw ContractError("look-ahead depth must be between 0 and 3");
  }
}

int default_fallback_k(const DistanceTables& tables) {
  return std::max(1, (tables.diameter + 1) / 2);
}

std::vector<Gate> swap_block(const ArchGraph& ag, Qubit u, Qubit v) {
  if (u == v || u >= ag.num_nodes() || v >= ag.num_nodes() ||
      !ag.adjacent(u, v)) {
    throw ContractError(
        "no coupling between " + std::to_string(u) + " and " +
        std::to_string(v) + " for a SWAP");
  }
  const auto in = Origin::inserted;
  if (ag.bidirectional(u, v)) {
    return {Gate::cnot(u, v, in), Gate::cnot(v, u, in), Gate::cnot(u, v, in)};
  }
  const Qubit a = ag.has_edge(u, v) ? u : v;
  const Qubit b = a == u ? v : u;
  return {Gate::cnot(a, b, in), Gate::h(a, in),         Gate::h(b, in),
          Gate::cnot(a, b, in), Gate::h(a, in),         Gate::h(b, in),
          Gate::cnot(a, b, in)};
}

std::vector<Gate> reverse_block(const ArchGraph& ag, Qubit u, Qubit v) {
  if (u >= ag.num_nodes() || v >= ag.num_nodes() || !ag.has_edge(v, u) ||
      ag.has_edge(u, v)) {
    throw ContractError(
        "reverse_block(" + std::to_string(u) + "," + std::to_string(v) +
        ") needs the one-way edge (" + std::to_string(v) + "," +
        std::to_string(u) + ")");
  }
  const auto in = Origin::inserted;
  return {Gate::h(u, in), Gate::h(v, in), Gate::cnot(v, u, in),
          Gate::h(u, in), Gate::h(v, in)};
}

std::vector<Gate> remote_cnot_block(
    std::span<const Qubit> path, const ArchGraph& ag) {
  if (path.size() < 2) throw ContractError("remote CNOT path needs d >= 1");
  for (std::size_t k = 0; k + 1 < path.size(); ++k) {
    if (path[k] >= ag.num_nodes() || path[k + 1] >= ag.num_nodes() ||
        path[k] == path[k + 1] || !ag.adjacent(path[k], path[k + 1])) {
      throw ContractError(
          "remote CNOT path step " + std::to_string(k) + " is not coupled");
    }
  }
  std::vector<Gate> out;
  auto link = [&](std::size_t k) {
    const Qubit u = path[k];
    const Qubit v = path[k + 1];
    if (ag.has_edge(u, v)) {
      out.push_back(Gate::cnot(u, v, Origin::inserted));
    } else {
      append(out, reverse_block(ag, u, v));
    }
  };
  const std::size_t d = path.size() - 1;
  if (d == 1) {
    link(0);
    return out;
  }
  for (std::size_t k = 0; k < d; ++k) link(k);
  for (std::size_t k = d - 1; k-- > 0;) link(k);
  for (std::size_t k = 1; k < d; ++k) link(k);
  for (std::size_t k = d - 1; k-- > 1;) link(k);
  return out;
}

std::vector<Qubit> shortest_path(
    const ArchGraph& ag, const DistanceTables& tables, Qubit a, Qubit b) {
  std::vector<Qubit> path{a};
  Qubit cur = a;
  while (cur != b) {
    const int want = tables.dist_u(cur, b) - 1;
    for (const Qubit n : ag.neighbors(cur)) {
      if (tables.dist_u(n, b) == want) {
        cur = n;
        break;
      }
    }
    path.push_back(cur);
  }
  return path;
}

// Where apply() writes physical gates; null during cost-only expansion.
struct Router::Emit {
  std::vector<Gate>& gates;
  std::vector<TailPlacement>& placed;

  void place(GateId g, const Gate& lg, const Mapping& tau) {
    Placement p;
    p.end = gates.size();
    p.control = lg.control();
    p.target = lg.target();
    p.control_wire = tau[lg.control()];
    p.target_wire = tau[lg.target()];
    placed.push_back({g, p});
  }
};

struct Router::Scratch {
  std::vector<DagCursor> level;  // one cursor per recursion depth
  std::vector<Qubit> work;
  std::vector<std::uint32_t> heads;
  std::vector<GateId> layer;
  std::size_t peak = 0;
  std::size_t evaluated = 0;  // states scored below the top level
};

Router::Router(
    const Circuit& core, const ArchGraph& ag, const DistanceTables& tables,
    CostParams params)
    : dag_(core), ag_(&ag), tables_(&tables), params_(std::move(params)) {
  params_.validate();
  if (tables.dist_u.size() != ag.num_nodes()) {
    throw ContractError("distance tables do not match the architecture");
  }
  if (core.num_qubits > ag.num_nodes()) {
    throw ContractError(
        "circuit needs " + std::to_string(core.num_qubits) +
        " qubits but the device has " + std::to_string(ag.num_nodes()));
  }
  k_ = params_.fallback_k > 0 ? params_.fallback_k : default_fallback_k(tables);
  tail_unit_ = params_.tail_weight * (tables.diameter - 1) * tables.n_swap;
}

std::size_t Router::execute_from(
    Mapping& tau, DagCursor& c, Emit* out, std::vector<Qubit>& work) const {
  std::size_t done = 0;
  while (!work.empty()) {
    const Qubit q = work.back();
    work.pop_back();
    const GateId g = dag_.head(c, q);
    if (g == kNoGate || !dag_.in_front(c, g)) continue;
    const Gate& lg = dag_.gate(g);
    const Qubit u = tau[lg.control()];
    const Qubit v = tau[lg.target()];
    if (!ag_->has_edge(u, v)) continue;
    if (out) {
      out->gates.push_back(Gate::cnot(u, v));
      out->place(g, lg, tau);
    }
    dag_.advance(c, g);
    ++done;
    work.push_back(lg.target());
    work.push_back(lg.control());
  }
  return done;
}

std::size_t Router::apply(
    const Op& op, Mapping& tau, DagCursor& c, Emit* out,
    std::vector<Qubit>& work) const {
  work.clear();
  std::size_t done = 0;
  if (op.kind == OpKind::swap) {
    if (out) append(out->gates, swap_block(*ag_, op.a, op.b));
    tau.swap_nodes(op.a, op.b);
    for (const Qubit v : {op.b, op.a}) {
      if (tau.occupied(v)) work.push_back(static_cast<Qubit>(tau.occupant(v)));
    }
  } else if (op.kind == OpKind::reversal) {
    const Gate& lg = dag_.gate(op.gate);
    if (out) {
      auto block = reverse_block(*ag_, op.a, op.b);
      block[2].origin = Origin::source;
      append(out->gates, block);
      out->place(op.gate, lg, tau);
    }
    dag_.advance(c, op.gate);
    done = 1;
    work.push_back(lg.target());
    work.push_back(lg.control());
  }
  return done + execute_from(tau, c, out, work);
}

std::vector<Router::Op> Router::enumerate_ops(
    const Mapping& tau, const DagCursor& c) const {
  std::vector<GateId> front;
  dag_.front(c, front);
  std::vector<char> touched(ag_->num_nodes(), 0);
  for (const GateId g : front) {
    touched[tau[dag_.gate(g).control()]] = 1;
    touched[tau[dag_.gate(g).target()]] = 1;
  }
  std::vector<Op> ops;
  int id = 0;
  for (const auto& [a, b] : ag_->pairs()) {
    if (!touched[a] && !touched[b]) continue;
    ops.push_back(
        {OpKind::swap, a, b, kNoGate, ag_->bidirectional(a, b) ? 3 : 7, id++});
  }
  for (const GateId g : front) {
    const Qubit u = tau[dag_.gate(g).control()];
    const Qubit v = tau[dag_.gate(g).target()];
    if (!ag_->has_edge(u, v) && ag_->has_edge(v, u)) {
      ops.push_back({OpKind::reversal, u, v, g, 4, id++});
    }
  }
  return ops;
}

double Router::hcost(
    const Mapping& tau, const DagCursor& c, double* layered,
    Scratch& sc) const {
  auto& heads = sc.heads;
  auto& layer = sc.layer;
  heads = c.heads;
  auto head = [&](Qubit q) {
    const auto qu = dag_.queue(q);
    return heads[q] < qu.size() ? qu[heads[q]] : kNoGate;
  };
  double sum = 0.0;
  const auto nq = static_cast<Qubit>(dag_.num_qubits());
  for (std::size_t k = 0; k <= params_.lookahead_layers; ++k) {
    layer.clear();
    long lsum = 0;
    for (Qubit q = 0; q < nq; ++q) {
      const GateId g = head(q);
      if (g == kNoGate) continue;
      const Gate& lg = dag_.gate(g);
      if (lg.control() != q || head(lg.target()) != g) continue;
      layer.push_back(g);
      lsum += tables_->dist_cnot(tau[lg.control()], tau[lg.target()]);
    }
    if (layer.empty()) break;
    sum += params_.layer_weights[k] * static_cast<double>(lsum);
    for (const GateId g : layer) {
      ++heads[dag_.gate(g).control()];
      ++heads[dag_.gate(g).target()];
    }
  }
  if (layered) *layered = sum;
  return sum + tail_unit_ * static_cast<double>(dag_.remaining(c));
}

double Router::value(
    Mapping& tau, const DagCursor& c, int depth, Scratch& sc,
    std::size_t live) const {
  if (depth == 0 || dag_.finished(c)) return hcost(tau, c, nullptr, sc);
  const std::vector<Op> ops = enumerate_ops(tau, c);
  sc.peak = std::max(sc.peak, live + ops.size());
  sc.evaluated += ops.size();
  if (sc.level.size() <= static_cast<std::size_t>(depth)) {
    sc.level.resize(static_cast<std::size_t>(depth) + 1);
  }
  double best = kInf;
  for (const Op& op : ops) {
    DagCursor& next = sc.level[static_cast<std::size_t>(depth)];
    next = c;
    apply(op, tau, next, nullptr, sc.work);
    const double v =
        op.gcost + value(tau, next, depth - 1, sc, live + ops.size());
    if (op.kind == OpKind::swap) tau.swap_nodes(op.a, op.b);
    best = std::min(best, v);
  }
  return best;
}

SearchState Router::initial_state(const Mapping& tau_ini) const {
  if (tau_ini.num_logical() != dag_.num_qubits() ||
      tau_ini.num_physical() != ag_->num_nodes()) {
    throw ContractError("initial mapping has the wrong dimensions");
  }
  SearchState s;
  s.tau = tau_ini;
  s.sigma = WirePermutation(ag_->num_nodes());
  s.cursor = dag_.start();
  execute_all(s);
  return s;
}

void Router::execute_all(SearchState& s) const {
  std::vector<Qubit> work;
  for (auto q = static_cast<Qubit>(dag_.num_qubits()); q-- > 0;) {
    work.push_back(q);
  }
  Emit out{s.tail, s.placed};
  if (execute_from(s.tau, s.cursor, &out, work) > 0) s.stagnation = 0;
}

SearchState Router::materialize(const SearchState& s, const Op& op) const {
  SearchState child;
  child.tau = s.tau;
  child.sigma = s.sigma;
  child.cursor = s.cursor;
  std::vector<Qubit> work;
  Emit out{child.tail, child.placed};
  const std::size_t done = apply(op, child.tau, child.cursor, &out, work);
  if (op.kind == OpKind::swap) child.sigma.swap_wires(op.a, op.b);
  child.stagnation = done > 0 ? 0 : s.stagnation + 1;
  child.gcost = op.gcost;
  child.op = op.kind;
  child.op_id = op.id;
  child.op_a = op.a;
  child.op_b = op.b;
  child.op_gate = op.gate;
  return child;
}

std::vector<SearchState> Router::children(const SearchState& s) const {
  std::vector<SearchState> out;
  for (const Op& op : enumerate_ops(s.tau, s.cursor)) {
    out.push_back(materialize(s, op));
  }
  return out;
}

double Router::cost_h(const SearchState& s) const {
  Scratch sc;
  return hcost(s.tau, s.cursor, nullptr, sc);
}

double Router::layered_cost(const SearchState& s) const {
  Scratch sc;
  double layered = 0.0;
  hcost(s.tau, s.cursor, &layered, sc);
  return layered;
}

double Router::lookahead_value(const SearchState& s, int depth) const {
  Scratch sc;
  Mapping tau = s.tau;
  return value(tau, s.cursor, depth, sc, 0);
}

double Router::min_child_hcost(const SearchState& s) const {
  return lookahead_value(s, 1);
}

std::vector<SearchState> Router::prune_children(
    const SearchState& parent, std::vector<SearchState> kids) const {
  if (kids.empty()) return kids;
  const double parent_layered = layered_cost(parent);
  const std::size_t parent_left = dag_.remaining(parent.cursor);
  std::vector<SearchState> kept;
  std::size_t fallback_pick = 0;
  double fallback_cost = kInf;
  for (std::size_t i = 0; i < kids.size(); ++i) {
    const double total = kids[i].gcost + cost_h(kids[i]);
    if (less_than(total, fallback_cost)) {
      fallback_cost = total;
      fallback_pick = i;
    }
    const bool stalled = dag_.remaining(kids[i].cursor) >= parent_left;
    if (!(stalled && less_than(parent_layered, layered_cost(kids[i])))) {
      kept.push_back(kids[i]);
    }
  }
  if (kept.empty()) kept.push_back(std::move(kids[fallback_pick]));
  return kept;
}

SearchState Router::fallback(const SearchState& s) const {
  const std::vector<GateId> front = dag_.front(s.cursor);
  if (front.empty()) throw ContractError("fallback on a finished state");
  GateId pick = kNoGate;
  int pick_cost = 0;
  for (const GateId g : front) {
    const Gate& lg = dag_.gate(g);
    const int c = tables_->dist_cnot(s.tau[lg.control()], s.tau[lg.target()]);
    if (pick == kNoGate || c < pick_cost ||
        (c == pick_cost && lg.control() < dag_.gate(pick).control())) {
      pick = g;
      pick_cost = c;
    }
  }
  const Gate& lg = dag_.gate(pick);
  SearchState next;
  next.tau = s.tau;
  next.sigma = s.sigma;
  next.cursor = s.cursor;
  const auto path =
      shortest_path(*ag_, *tables_, s.tau[lg.control()], s.tau[lg.target()]);
  next.tail = remote_cnot_block(path, *ag_);
  Emit out{next.tail, next.placed};
  out.place(pick, lg, next.tau);
  dag_.advance(next.cursor, pick);
  std::vector<Qubit> work{lg.target(), lg.control()};
  execute_from(next.tau, next.cursor, &out, work);
  next.stagnation = 0;
  next.gcost = static_cast<int>(next.tail.size()) - 1;
  next.op = OpKind::remote;
  next.op_gate = pick;
  return next;
}

SearchState Router::next_state(const SearchState& s, RouteReport* stats) const {
  RouteReport local;
  RouteReport& rep = stats ? *stats : local;
  if (dag_.finished(s.cursor)) throw ContractError("no gates left to route");
  if (s.stagnation >= k_) {
    ++rep.fallback_count;
    return fallback(s);
  }
  Scratch sc;
  std::vector<Qubit> work;
  const int depth = params_.lookahead_depth;
  const std::vector<Op> ops = enumerate_ops(s.tau, s.cursor);
  rep.peak_live_states = std::max(rep.peak_live_states, ops.size());

  double parent_layered = 0.0;
  hcost(s.tau, s.cursor, &parent_layered, sc);
  const std::size_t parent_left = dag_.remaining(s.cursor);

  struct Candidate {
    std::size_t index;
    double score;
    double guard;  // gcost + cost_h, for the keep-one rule
    std::size_t left;
    bool pruned;
  };
  std::vector<Candidate> cands;
  cands.reserve(ops.size());
  Mapping tau = s.tau;
  DagCursor next;
  for (std::size_t i = 0; i < ops.size(); ++i) {
    const Op& op = ops[i];
    next = s.cursor;
    apply(op, tau, next, nullptr, work);
    double layered = 0.0;
    const double h = hcost(tau, next, &layered, sc);
    const std::size_t left = dag_.remaining(next);
    const bool pruned = params_.prune && left >= parent_left &&
                        less_than(parent_layered, layered);
    double score = op.gcost + h;
    if (!pruned && depth > 0 && left > 0) {
      score = op.gcost + value(tau, next, depth, sc, ops.size());
    }
    cands.push_back({i, score, op.gcost + h, left, pruned});
    if (op.kind == OpKind::swap) tau.swap_nodes(op.a, op.b);
  }
  rep.peak_live_states = std::max(rep.peak_live_states, sc.peak);
  rep.states_evaluated += ops.size() + sc.evaluated;

  const Candidate* best = nullptr;
  std::size_t pruned = 0;
  for (const Candidate& c : cands) {
    if (c.pruned) {
      ++pruned;
      continue;
    }
    if (!best || less_than(c.score, best->score) ||
        (!less_than(best->score, c.score) &&
         (c.left < best->left ||
          (c.left == best->left && ops[c.index].id < ops[best->index].id)))) {
      best = &c;
    }
  }
  if (!best) {
    // Every child was pruned: keep the cheapest one by gcost + cost_h.
    for (const Candidate& c : cands) {
      if (!best || less_than(c.guard, best->guard)) best = &c;
    }
    --pruned;
  }
  rep.pruned_children += pruned;

  SearchState out = materialize(s, ops[best->index]);
  if (out.op == OpKind::swap) ++rep.swap_count;
  if (out.op == OpKind::reversal) ++rep.reversal_count;
  ++rep.states_expanded;
  return out;
}

RouteResult Router::route(const Mapping& tau_ini) const {
  const auto t0 = std::chrono::steady_clock::now();
  RouteResult res;
  RouteReport& rep = res.report;
  rep.fallback_k = k_;
  rep.original_size = dag_.num_gates();
  res.pc = Circuit(ag_->num_nodes(), Space::physical);
  res.context.placements.assign(dag_.num_gates(), Placement{});

  auto commit = [&](SearchState& s) {
    const std::size_t offset = res.pc.gates.size();
    append(res.pc.gates, s.tail);
    for (const TailPlacement& tp : s.placed) {
      Placement p = tp.placement;
      p.end += offset;
      res.context.placements[tp.gate] = p;
    }
    s.tail.clear();
    s.placed.clear();
  };

  SearchState st = initial_state(tau_ini);
  commit(st);

  while (!dag_.finished(st.cursor)) {
    st = next_state(st, &rep);
    commit(st);
  }

  for (const Gate& g : res.pc.gates) {
    if (g.is_cnot() && !ag_->has_edge(g.control(), g.target())) {
      throw ContractError(
          "router emitted CNOT(" + std::to_string(g.control()) + "," +
          std::to_string(g.target()) + ") off the coupling graph");
    }
  }
  for (Qubit q = 0; q < tau_ini.num_logical(); ++q) {
    if (st.sigma.image(tau_ini[q]) != st.tau[q]) {
      throw ContractError("wire permutation drifted from the mapping");
    }
  }

  rep.output_size = res.pc.size();
  rep.added_gates = static_cast<long>(rep.output_size) -
                    static_cast<long>(rep.original_size);
  rep.tau_ini = tau_ini.assignment();
  rep.tau_final = st.tau.assignment();
  rep.final_sigma = st.sigma.images();
  res.context.initial_wire = tau_ini.assignment();
  res.context.final_wire = st.tau.assignment();
  rep.wall_time = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
  return res;
}

RouteResult route(
    const Circuit& core, const ArchGraph& ag, const DistanceTables& tables,
    const Mapping& tau_ini, const CostParams& params) {
  return Router(core, ag, tables, params).route(tau_ini);
}

}  // namespace qroute
