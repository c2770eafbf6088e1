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

#include "qroute/arch_graph.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <fstream>
#include <sstream>
#include <string>
#include <system_error>

#include "json.hpp"

#include "builtin_arch_data.hpp"
#include "qroute/error.hpp"

namespace qroute {
namespace {

bool parse_size(std::string_view s, std::size_t& out) {
  if (s.empty()) return false;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && p == s.data() + s.size();
}

std::vector<Edge> both_ways(
    const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
  std::vector<Edge> edges;
  for (const auto& [a, b] : pairs) {
    edges.push_back({static_cast<Qubit>(a), static_cast<Qubit>(b)});
    edges.push_back({static_cast<Qubit>(b), static_cast<Qubit>(a)});
  }
  return edges;
}

}  // namespace

ArchGraph::ArchGraph(
    std::string name, std::size_t num_nodes, std::vector<Edge> edges)
    : name_(std::move(name)), n_(num_nodes) {
  if (n_ == 0) throw ArchError("architecture '" + name_ + "' has no nodes");
  for (const Edge& e : edges) {
    if (e.from >= n_ || e.to >= n_) {
      throw ArchError(
          "architecture '" + name_ + "': edge (" + std::to_string(e.from) +
          "," + std::to_string(e.to) + ") references a node outside [0, " +
          std::to_string(n_) + ")");
    }
    if (e.from == e.to) {
      throw ArchError(
          "architecture '" + name_ + "': self-loop on node " +
          std::to_string(e.from));
    }
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  edges_ = std::move(edges);

  directed_.assign(n_ * n_, 0);
  neighbors_.assign(n_, {});
  for (const Edge& e : edges_) directed_[e.from * n_ + e.to] = 1;
  for (Qubit a = 0; a < n_; ++a) {
    for (Qubit b = 0; b < n_; ++b) {
      if (a != b && adjacent(a, b)) neighbors_[a].push_back(b);
      if (a < b && adjacent(a, b)) {
        pairs_.emplace_back(a, b);
        if (!bidirectional(a, b)) all_bidirectional_ = false;
      }
    }
  }

  // Connectivity of the underlying undirected graph.
  std::vector<char> seen(n_, 0);
  std::deque<Qubit> todo{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!todo.empty()) {
    const Qubit v = todo.front();
    todo.pop_front();
    for (const Qubit w : neighbors_[v]) {
      if (!seen[w]) {
        seen[w] = 1;
        ++reached;
        todo.push_back(w);
      }
    }
  }
  if (reached != n_) {
    throw ArchError("architecture '" + name_ + "' is disconnected");
  }
}

ArchGraph line_arch(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i + 1 < n; ++i) pairs.emplace_back(i, i + 1);
  return ArchGraph("line-" + std::to_string(n), n, both_ways(pairs));
}

ArchGraph grid_arch(std::size_t rows, std::size_t cols) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      const std::size_t v = r * cols + c;
      if (c + 1 < cols) pairs.emplace_back(v, v + 1);
      if (r + 1 < rows) pairs.emplace_back(v, v + cols);
    }
  }
  return ArchGraph(
      "grid-" + std::to_string(rows) + "x" + std::to_string(cols), rows * cols,
      both_ways(pairs));
}

ArchGraph arch_from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ArchError(std::string("malformed architecture file: ") + e.what());
  }
  try {
    const std::string name = j.at("name").get<std::string>();
    const auto n = j.at("num_qubits").get<std::int64_t>();
    if (n <= 0) throw ArchError("num_qubits must be positive");
    const bool bidir = j.value("bidirectional", false);
    std::vector<Edge> edges;
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2) {
        throw ArchError("each edge must be a two-element array");
      }
      const auto a = e[0].get<std::int64_t>();
      const auto b = e[1].get<std::int64_t>();
      if (a < 0 || b < 0) throw ArchError("negative node index in edge");
      edges.push_back({static_cast<Qubit>(a), static_cast<Qubit>(b)});
      if (bidir) {
        edges.push_back({static_cast<Qubit>(b), static_cast<Qubit>(a)});
      }
    }
    return ArchGraph(name, static_cast<std::size_t>(n), std::move(edges));
  } catch (const nlohmann::json::exception& e) {
    throw ArchError(std::string("malformed architecture file: ") + e.what());
  }
}

std::vector<std::string> builtin_arch_names() {
  return {"qx5", "q20", "line-N", "grid-RxC"};
}

ArchGraph load_arch(std::string_view source) {
  if (const auto data = detail::builtin_arch_json(source); !data.empty()) {
    return arch_from_json(data);
  }
  std::size_t a = 0, b = 0;
  if (source.starts_with("line-") && parse_size(source.substr(5), a)) {
    if (a < 2) throw ArchError("line-N needs N >= 2");
    return line_arch(a);
  }
  if (source.starts_with("grid-")) {
    const auto rest = source.substr(5);
    const auto x = rest.find('x');
    if (x != std::string_view::npos && parse_size(rest.substr(0, x), a) &&
        parse_size(rest.substr(x + 1), b)) {
      if (a * b < 2) throw ArchError("grid-RxC needs at least two nodes");
      return grid_arch(a, b);
    }
  }
  std::ifstream in{std::string(source)};
  if (!in) {
    throw ArchError(
        "unknown architecture '" + std::string(source) +
        "' (not a built-in name and not a readable file)");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return arch_from_json(buf.str());
}

DistanceMatrix undirected_distances(const ArchGraph& ag) {
  const std::size_t n = ag.num_nodes();
  DistanceMatrix d(n, -1);
  std::vector<Qubit> queue;
  queue.reserve(n);
  for (Qubit s = 0; s < n; ++s) {
    queue.clear();
    queue.push_back(s);
    d(s, s) = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const Qubit v = queue[head];
      for (const Qubit w : ag.neighbors(v)) {
        if (d(s, w) < 0) {
          d(s, w) = d(s, v) + 1;
          queue.push_back(w);
        }
      }
    }
  }
  return d;
}

int cnot_distance(
    const ArchGraph& ag, const DistanceMatrix& dist_u, Qubit v, Qubit w) {
  if (v == w) {
    throw ArchError(
        "CNOT distance requested for identical nodes " + std::to_string(v));
  }
  const int d = dist_u(v, w);
  if (ag.all_bidirectional()) return 3 * (d - 1);
  // Some undirected shortest path crosses a forward-directed edge.
  for (const Edge& e : ag.edges()) {
    if (dist_u(v, e.from) + 1 + dist_u(e.to, w) == d) return 7 * (d - 1);
  }
  return 7 * (d - 1) + 4;
}

int cnot_distance(const ArchGraph& ag, Qubit v, Qubit w) {
  return cnot_distance(ag, undirected_distances(ag), v, w);
}

int diameter(const DistanceMatrix& dist_u) {
  int best = 0;
  for (std::size_t a = 0; a < dist_u.size(); ++a) {
    for (std::size_t b = 0; b < dist_u.size(); ++b) {
      best = std::max(best, dist_u(a, b));
    }
  }
  return best;
}

int diameter(const ArchGraph& ag) {
  return diameter(undirected_distances(ag));
}

DistanceTables compute_tables(const ArchGraph& ag) {
  DistanceTables t;
  t.dist_u = undirected_distances(ag);
  t.diameter = diameter(t.dist_u);
  t.n_swap = ag.all_bidirectional() ? 3 : 7;
  const std::size_t n = ag.num_nodes();
  t.dist_cnot = DistanceMatrix(n, 0);
  for (Qubit a = 0; a < n; ++a) {
    for (Qubit b = 0; b < n; ++b) {
      if (a != b) t.dist_cnot(a, b) = cnot_distance(ag, t.dist_u, a, b);
    }
  }
  return t;
}

}  // namespace qroute
