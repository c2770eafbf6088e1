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

#include "qroute/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "qroute/error.hpp"
#include "qroute/qasm.hpp"

namespace qroute {
namespace {

using ordered_json = nlohmann::ordered_json;

std::string gate_key(const Gate& g) {
  std::string key = g.mnemonic();
  if (!g.params.empty()) {
    key += '(';
    for (std::size_t i = 0; i < g.params.size(); ++i) {
      if (i) key += ',';
      key += format_real(g.params[i]);
    }
    key += ')';
  }
  return key;
}

std::map<std::string, long> non_clifford_counts(const Circuit& c) {
  std::map<std::string, long> out;
  for (const Gate& g : c.gates) {
    if (g.kind == GateKind::other) ++out[gate_key(g)];
  }
  return out;
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error("cannot read " + p.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
    s.remove_prefix(1);
  }
  while (!s.empty() &&
         (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> split_csv_line(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    cells.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return cells;
}

std::string fixed(double v, int digits) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << v;
  return os.str();
}

}  // namespace

Verdict verify_programs(
    const Circuit& logical_full, const Circuit& physical_full,
    const Mapping& tau_ini, const WirePermutation& sigma_final) {
  if (non_clifford_counts(logical_full) != non_clifford_counts(physical_full)) {
    return {false, "single-qubit non-Clifford gates differ between programs"};
  }
  return check_equivalence(
      clifford_part(logical_full), clifford_part(physical_full), tau_ini,
      sigma_final);
}

TransformResult transform(
    const SplitCircuit& input, const ArchGraph& ag,
    const DistanceTables& tables, const TransformOptions& opts) {
  TransformResult r;
  r.input = input;
  const Circuit& core = input.core;
  const std::size_t nv = ag.num_nodes();
  if (core.num_qubits > nv) {
    throw ContractError(
        "circuit needs " + std::to_string(core.num_qubits) +
        " qubits but " + ag.name() + " has " + std::to_string(nv));
  }
  const Mapping naive = Mapping::identity_prefix(core.num_qubits, nv);
  std::vector<Gate> cstar;
  if (core.cnot_count() > 0) cstar = select_cstar(core, opts.sa.subset_cap);
  r.naive_cost = mapping_cost(cstar, naive, tables);
  r.tau_ini = naive;
  if (opts.use_sa && !cstar.empty()) {
    r.sa = sa_initial_mapping(cstar, core.num_qubits, tables, opts.sa);
    r.sa_used = true;
    r.tau_ini = r.sa.mapping;
  }

  r.routed = Router(core, ag, tables, opts.cost).route(r.tau_ini);
  RouteReport& rep = r.routed.report;
  rep.original_size += input.plan.size();
  rep.output_size += input.plan.size();
  r.qasm = emit_qasm(r.routed.pc, input.plan, r.routed.context);

  if (opts.self_check) {
    const WirePermutation sigma =
        WirePermutation::from_images(rep.final_sigma);
    Verdict v = check_equivalence(core, r.routed.pc, r.tau_ini, sigma);
    if (v) {
      const Circuit emitted = parse_qasm_program(r.qasm).full;
      v = verify_programs(
          merge_passthrough(core, input.plan), emitted, r.tau_ini, sigma);
    }
    r.check = v;
    if (!v) throw VerificationError("self-check failed: " + v.reason);
  }
  return r;
}

std::string report_json(
    const TransformResult& r, const TransformOptions& opts,
    const ReportInfo& info) {
  const RouteReport& rep = r.routed.report;
  ordered_json j;
  j["input"] = info.input;
  j["arch"] = info.arch;
  j["seed"] = info.seed;
  j["seed_generated"] = info.seed_generated;
  j["original_size"] = rep.original_size;
  j["output_size"] = rep.output_size;
  j["added_gates"] = rep.added_gates;
  j["original_cnots"] = r.input.core.size();
  j["output_cnots"] = r.routed.pc.cnot_count();
  j["swap_count"] = rep.swap_count;
  j["reversal_count"] = rep.reversal_count;
  j["fallback_count"] = rep.fallback_count;
  j["pruned_children"] = rep.pruned_children;
  j["states_expanded"] = rep.states_expanded;
  j["states_evaluated"] = rep.states_evaluated;
  j["peak_live_states"] = rep.peak_live_states;
  j["fallback_k"] = rep.fallback_k;
  j["tau_ini"] = rep.tau_ini;
  j["tau_final"] = rep.tau_final;
  j["final_sigma"] = rep.final_sigma;

  ordered_json sa;
  sa["used"] = r.sa_used;
  sa["t_max"] = opts.sa.t_max;
  sa["t_min"] = opts.sa.t_min;
  sa["delta"] = opts.sa.delta;
  sa["r"] = opts.sa.r;
  sa["subset_cap"] = opts.sa.subset_cap;
  sa["restarts"] = opts.sa.restarts;
  sa["naive_cost"] = r.naive_cost;
  if (r.sa_used) {
    sa["start_cost"] = r.sa.start_cost;
    sa["cost"] = r.sa.cost;
    sa["runs"] = r.sa.runs;
    sa["run_seed"] = r.sa.run_seed;
  }
  j["sa"] = sa;

  ordered_json rt;
  rt["layers"] = opts.cost.lookahead_layers;
  rt["weights"] = opts.cost.layer_weights;
  rt["tail_weight"] = opts.cost.tail_weight;
  rt["depth"] = opts.cost.lookahead_depth;
  rt["prune"] = opts.cost.prune;
  j["router"] = rt;

  ordered_json regs = ordered_json::array();
  for (const RegisterSlice& q : r.input.plan.qregs) {
    regs.push_back({{"name", q.name}, {"size", q.size}, {"offset", q.offset}});
  }
  j["qreg_flattening"] = regs;
  j["warnings"] = r.input.plan.warnings;
  j["self_check"] = !r.check ? "skipped" : (r.check->pass ? "pass" : "fail");
  if (info.include_timing) j["wall_time"] = rep.wall_time;
  return j.dump(2) + "\n";
}

ReportMapping read_report_mapping(std::string_view json_text) {
  try {
    const auto j = nlohmann::json::parse(json_text);
    ReportMapping m;
    m.tau_ini = j.at("tau_ini").get<std::vector<Qubit>>();
    m.final_sigma = j.at("final_sigma").get<std::vector<Qubit>>();
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed report: ") + e.what());
  }
}

std::uint64_t circuit_seed(std::uint64_t seed, std::string_view name) {
  std::uint64_t h = 14695981039346656037ULL;
  auto mix = [&](unsigned char b) {
    h ^= b;
    h *= 1099511628211ULL;
  };
  for (int i = 0; i < 8; ++i) mix(static_cast<unsigned char>(seed >> (8 * i)));
  for (const char c : name) mix(static_cast<unsigned char>(c));
  return h;
}

Baseline parse_baseline_csv(std::string_view text) {
  Baseline b;
  std::istringstream in{std::string(text)};
  std::string line;
  int name_col = -1, added_col = -1, output_col = -1;
  bool header = true;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const auto cells = split_csv_line(line);
    if (header) {
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (cells[i] == "name") name_col = static_cast<int>(i);
        if (cells[i] == "added") added_col = static_cast<int>(i);
        if (cells[i] == "output") output_col = static_cast<int>(i);
      }
      if (name_col < 0 || (added_col < 0 && output_col < 0)) {
        throw Error("baseline CSV needs a name column and an added or "
                    "output column");
      }
      header = false;
      continue;
    }
    auto number = [&](int col) -> std::optional<long> {
      if (col < 0 || static_cast<std::size_t>(col) >= cells.size() ||
          cells[col].empty()) {
        return std::nullopt;
      }
      long v = 0;
      const auto s = cells[col];
      const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
      if (ec != std::errc{} || p != s.data() + s.size()) {
        throw Error("baseline CSV line " + std::to_string(lineno) +
                    ": not an integer: " + std::string(s));
      }
      return v;
    };
    if (static_cast<std::size_t>(name_col) >= cells.size()) continue;
    const std::string name(cells[name_col]);
    if (auto v = number(added_col)) b.added[name] = *v;
    if (auto v = number(output_col)) b.output[name] = *v;
  }
  if (header) throw Error("baseline CSV is empty");
  return b;
}

std::optional<double> improvement_ratio(long n_comp, long n_ours) {
  if (n_comp == 0) return std::nullopt;
  return static_cast<double>(n_comp - n_ours) / static_cast<double>(n_comp);
}

std::vector<std::filesystem::path> list_corpus(
    const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) throw Error(dir.string() + " is not a directory");
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().extension() == ".qasm") {
      files.push_back(e.path());
    }
  }
  std::sort(files.begin(), files.end());
  return files;
}

BenchSummary run_bench(
    const std::vector<std::filesystem::path>& files, const ArchGraph& ag,
    const DistanceTables& tables, const TransformOptions& opts,
    const std::optional<Baseline>& baseline, unsigned jobs) {
  if (files.empty()) throw Error("benchmark corpus is empty");
  BenchSummary s;
  s.rows.resize(files.size());

  auto run_one = [&](std::size_t i) {
    BenchRow& row = s.rows[i];
    row.name = files[i].stem().string();
    try {
      const SplitCircuit input = parse_qasm(read_file(files[i]));
      TransformOptions o = opts;
      o.sa.seed = circuit_seed(opts.sa.seed, row.name);
      o.self_check = true;
      const auto t0 = std::chrono::steady_clock::now();
      const TransformResult r = transform(input, ag, tables, o);
      row.seconds = std::chrono::duration<double>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
      row.original = r.routed.report.original_size;
      row.output = r.routed.report.output_size;
      row.added = r.routed.report.added_gates;
      row.cnots = input.core.size();
      row.verified = r.check && r.check->pass;
      row.ok = true;
    } catch (const std::exception& e) {
      row.error = e.what();
    }
  };

  jobs = std::max(1u, jobs);
  if (jobs == 1) {
    for (std::size_t i = 0; i < files.size(); ++i) run_one(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < jobs; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < files.size(); i = next++) run_one(i);
      });
    }
    for (auto& t : pool) t.join();
  }

  if (baseline) {
    long comp_total = 0, ours_total = 0;
    bool any = false;
    for (BenchRow& row : s.rows) {
      if (!row.ok) continue;
      std::optional<long> comp;
      if (auto it = baseline->added.find(row.name); it != baseline->added.end()) {
        comp = it->second;
      } else if (auto ot = baseline->output.find(row.name);
                 ot != baseline->output.end()) {
        comp = ot->second - static_cast<long>(row.original);
      }
      if (!comp) continue;
      row.baseline_added = comp;
      row.improvement = improvement_ratio(*comp, row.added);
      comp_total += *comp;
      ours_total += row.added;
      any = true;
    }
    if (any) s.improvement = improvement_ratio(comp_total, ours_total);
  }
  return s;
}

std::string bench_csv(const BenchSummary& s, bool timing) {
  std::ostringstream os;
  os << "name,status,original,output,added,cnots,verified,baseline_added,"
        "improvement";
  if (timing) os << ",seconds";
  os << '\n';
  for (const BenchRow& r : s.rows) {
    os << r.name << ',' << (r.ok ? "ok" : "failed") << ',';
    if (r.ok) {
      os << r.original << ',' << r.output << ',' << r.added << ',' << r.cnots
         << ',' << (r.verified ? "yes" : "no");
    } else {
      os << ",,,,";
    }
    os << ',';
    if (r.baseline_added) os << *r.baseline_added;
    os << ',';
    if (r.improvement) os << fixed(*r.improvement, 4);
    if (timing) os << ',' << (r.ok ? fixed(r.seconds, 3) : "");
    os << '\n';
  }
  return os.str();
}

std::string bench_table(const BenchSummary& s, bool timing) {
  std::ostringstream os;
  os << std::left << std::setw(24) << "circuit" << std::right << std::setw(10)
     << "original" << std::setw(10) << "output" << std::setw(8) << "added"
     << std::setw(10) << "baseline" << std::setw(10) << "improv";
  if (timing) os << std::setw(10) << "time(s)";
  os << '\n';
  std::size_t failed = 0;
  for (const BenchRow& r : s.rows) {
    os << std::left << std::setw(24) << r.name << std::right;
    if (!r.ok) {
      ++failed;
      os << "  FAILED: " << r.error << '\n';
      continue;
    }
    os << std::setw(10) << r.original << std::setw(10) << r.output
       << std::setw(8) << r.added << std::setw(10)
       << (r.baseline_added ? std::to_string(*r.baseline_added) : "-")
       << std::setw(10)
       << (r.improvement ? fixed(100.0 * *r.improvement, 2) + "%" : "-");
    if (timing) os << std::setw(10) << fixed(r.seconds, 3);
    os << '\n';
  }
  if (s.improvement) {
    os << "aggregate improvement: " << fixed(100.0 * *s.improvement, 2)
       << "%\n";
  }
  if (failed) os << failed << " circuit(s) failed\n";
  return os.str();
}

}  // namespace qroute
