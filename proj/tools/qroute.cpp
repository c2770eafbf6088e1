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

// qroute: batch front end. Exit codes: 0 ok, 1 usage, 2 input error,
// 3 verification failure.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "qroute/arch_graph.hpp"
#include "qroute/error.hpp"
#include "qroute/generators.hpp"
#include "qroute/pipeline.hpp"
#include "qroute/qasm.hpp"

namespace {

using namespace qroute;

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kInput = 2;
constexpr int kVerify = 3;

// Usage problems found after CLI11 accepted the command line.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << text;
  if (!out) throw Error("write failed: " + path);
}

// Flags shared by transform and bench.
struct SearchFlags {
  std::optional<std::uint64_t> seed;
  bool no_sa = false;
  SAParams sa;
  std::optional<std::size_t> layers;
  std::vector<double> weights;
  int fallback_k = 0;
  int depth = 1;
  bool no_prune = false;

  void attach(CLI::App* app) {
    app->add_option("--seed", seed, "Random seed (generated when absent)");
    app->add_flag("--no-sa", no_sa, "Use the identity-prefix initial mapping");
    app->add_option("--sa-tmax", sa.t_max, "Initial temperature")
        ->capture_default_str();
    app->add_option("--sa-tmin", sa.t_min, "Final temperature")
        ->capture_default_str();
    app->add_option("--sa-delta", sa.delta, "Cooling factor in (0,1)")
        ->capture_default_str();
    app->add_option("--sa-r", sa.r, "Iterations per temperature")
        ->capture_default_str();
    app->add_option("--sa-cap", sa.subset_cap, "Leading CNOTs scored by SA")
        ->capture_default_str();
    app->add_option("--sa-restarts", sa.restarts,
                    "Annealing runs with derived seeds (stops at cost 0)")
        ->capture_default_str();
    app->add_option("--layers", layers, "Look-ahead layers beyond the front");
    app->add_option("--weights", weights,
                    "Layer weights w0,...,wl followed by the tail weight ws")
        ->delimiter(',');
    app->add_option("--fallback-k", fallback_k,
                    "Stagnant rounds before a remote CNOT (0 = ceil(D/2))")
        ->capture_default_str();
    app->add_option("--depth", depth, "Selection look-ahead depth")
        ->check(CLI::Range(0, 2))
        ->capture_default_str();
    app->add_flag("--no-prune", no_prune, "Disable child pruning");
  }

  TransformOptions options() const {
    TransformOptions o;
    o.sa = sa;
    o.use_sa = !no_sa;
    CostParams& c = o.cost;
    if (!weights.empty()) {
      if (weights.size() < 2) {
        throw UsageError("--weights needs at least w0 and ws");
      }
      c.layer_weights.assign(weights.begin(), weights.end() - 1);
      c.tail_weight = weights.back();
      c.lookahead_layers = c.layer_weights.size() - 1;
      if (layers && *layers != c.lookahead_layers) {
        throw UsageError("--layers " + std::to_string(*layers) + " needs " +
                         std::to_string(*layers + 2) + " --weights values");
      }
    } else if (layers) {
      c.lookahead_layers = *layers;
      c.layer_weights.resize(*layers + 1, c.layer_weights.back());
    }
    c.fallback_k = fallback_k;
    c.lookahead_depth = depth;
    c.prune = !no_prune;
    try {
      o.sa.validate();
      c.validate();
    } catch (const ContractError& e) {
      throw UsageError(e.what());
    }
    return o;
  }

  std::uint64_t resolve_seed(bool& generated) const {
    generated = !seed.has_value();
    if (seed) return *seed;
    std::random_device rd;
    return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
  }
};

struct Loaded {
  ArchGraph ag;
  DistanceTables tables;
};

Loaded load(const std::string& arch) {
  Loaded l{load_arch(arch), {}};
  l.tables = compute_tables(l.ag);
  return l;
}

int cmd_transform(SearchFlags& f, const std::string& arch,
                  const std::string& input, const std::string& output,
                  const std::string& report, const std::string& trace,
                  bool self_check, bool timing) {
  TransformOptions opts = f.options();
  bool generated = false;
  opts.sa.seed = f.resolve_seed(generated);
  opts.self_check = self_check;

  const Loaded dev = load(arch);
  const SplitCircuit in = parse_qasm(read_text(input));
  for (const std::string& w : in.plan.warnings) {
    std::cerr << "warning: " << input << ": " << w << '\n';
  }
  const TransformResult r = transform(in, dev.ag, dev.tables, opts);
  write_text(output, r.qasm);
  if (!report.empty()) {
    ReportInfo info{input, dev.ag.name(), opts.sa.seed, generated, timing};
    write_text(report, report_json(r, opts, info));
  }
  if (!trace.empty()) {
    std::ostringstream csv;
    csv << "iteration,accepted_cost,best_cost\n";
    for (const SATracePoint& p : r.sa.trace) {
      csv << p.iteration << ',' << p.accepted_cost << ',' << p.best_cost
          << '\n';
    }
    write_text(trace, csv.str());
  }
  return kOk;
}

int cmd_verify(const std::string& logical, const std::string& physical,
               const std::string& report) {
  const Circuit lc = parse_qasm_program(read_text(logical)).full;
  const Circuit pc = parse_qasm_program(read_text(physical)).full;
  const ReportMapping rm = read_report_mapping(read_text(report));
  if (rm.tau_ini.size() < lc.num_qubits) {
    throw Error("report mapping covers fewer qubits than the logical circuit");
  }
  const Mapping tau = Mapping::from_assignment(rm.tau_ini, pc.num_qubits);
  const WirePermutation sigma = WirePermutation::from_images(rm.final_sigma);
  const Verdict v = verify_programs(lc, pc, tau, sigma);
  if (!v) {
    std::cerr << "NOT equivalent: " << v.reason << '\n';
    return kVerify;
  }
  std::cout << "equivalent\n";
  return kOk;
}

int cmd_bench(SearchFlags& f, const std::string& arch,
              const std::string& corpus, const std::string& baseline,
              const std::string& csv, unsigned jobs, bool no_timing) {
  TransformOptions opts = f.options();
  bool generated = false;
  opts.sa.seed = f.resolve_seed(generated);
  const Loaded dev = load(arch);
  const auto files = list_corpus(corpus);
  std::optional<Baseline> base;
  if (!baseline.empty()) base = parse_baseline_csv(read_text(baseline));
  const BenchSummary s =
      run_bench(files, dev.ag, dev.tables, opts, base, jobs);
  std::cout << "arch " << dev.ag.name() << ", seed " << opts.sa.seed << '\n'
            << bench_table(s, !no_timing);
  if (!csv.empty()) write_text(csv, bench_csv(s, !no_timing));
  for (const BenchRow& r : s.rows) {
    if (!r.ok) return kInput;
  }
  return kOk;
}

int cmd_gen(const std::string& family, std::size_t n, std::size_t steps,
            std::size_t cnots, std::uint64_t seed, double single_rate,
            const std::string& output) {
  Circuit c;
  if (family == "qft") {
    c = qft_circuit(n);
  } else if (family == "ising") {
    c = ising_circuit(n, steps);
  } else {
    c = random_circuit(n, cnots, seed, single_rate);
  }
  write_text(output, to_qasm(c));
  return kOk;
}

int cmd_dist(const std::string& arch, const std::string& kind,
             const std::string& output) {
  const Loaded dev = load(arch);
  const DistanceMatrix& m =
      kind == "cnot" ? dev.tables.dist_cnot : dev.tables.dist_u;
  std::ostringstream os;
  os << "node";
  for (std::size_t b = 0; b < m.size(); ++b) os << ',' << b;
  os << '\n';
  for (std::size_t a = 0; a < m.size(); ++a) {
    os << a;
    for (std::size_t b = 0; b < m.size(); ++b) os << ',' << m(a, b);
    os << '\n';
  }
  write_text(output, os.str());
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qroute: qubit mapping and routing for coupling-constrained "
               "devices"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "qroute 0.1.0");

  // transform
  SearchFlags tf;
  std::string t_arch, t_in, t_out, t_report, t_trace;
  bool t_check = false, t_timing = false;
  auto* transform = app.add_subcommand("transform", "Route one circuit");
  transform->add_option("--arch", t_arch, "Built-in name or JSON file")
      ->required();
  transform->add_option("--input,-i", t_in, "Logical OpenQASM 2.0 file")
      ->required();
  transform->add_option("--output,-o", t_out, "Physical QASM (default stdout)");
  transform->add_option("--report", t_report, "JSON report path");
  transform->add_option("--sa-trace", t_trace, "Annealing trace CSV path");
  transform->add_flag("--self-check", t_check, "Verify the output");
  transform->add_flag("--report-timing", t_timing,
                      "Include wall_time in the report");
  tf.attach(transform);

  // verify
  std::string v_log, v_phys, v_report;
  auto* verify = app.add_subcommand("verify", "Check a routed circuit");
  verify->add_option("--logical", v_log, "Source circuit")->required();
  verify->add_option("--physical", v_phys, "Routed circuit")->required();
  verify->add_option("--report", v_report, "Report of the routing run")
      ->required();

  // bench
  SearchFlags bf;
  std::string b_arch, b_corpus, b_baseline, b_csv;
  unsigned b_jobs = 1;
  bool b_no_timing = false;
  auto* bench = app.add_subcommand("bench", "Route every .qasm in a directory");
  bench->add_option("--arch", b_arch, "Built-in name or JSON file")->required();
  bench->add_option("--corpus", b_corpus, "Directory of .qasm files")
      ->required();
  bench->add_option("--baseline", b_baseline,
                    "CSV with name and added or output columns");
  bench->add_option("--csv", b_csv, "Write the summary as CSV");
  bench->add_option("--jobs,-j", b_jobs, "Parallel workers")
      ->check(CLI::Range(1u, 256u))
      ->capture_default_str();
  bench->add_flag("--no-timing", b_no_timing, "Omit the time column");
  bf.attach(bench);

  // gen
  std::string g_family, g_out;
  std::size_t g_n = 0, g_steps = 5, g_cnots = 100;
  std::uint64_t g_seed = 0;
  double g_rate = 0.0;
  auto* gen = app.add_subcommand("gen", "Write a generated benchmark circuit");
  gen->add_option("family", g_family, "qft, ising or random")
      ->required()
      ->check(CLI::IsMember({"qft", "ising", "random"}));
  gen->add_option("--qubits,-n", g_n, "Number of qubits")
      ->required()
      ->check(CLI::Range(std::size_t{2}, std::size_t{4096}));
  gen->add_option("--steps", g_steps, "Ising time steps")->capture_default_str();
  gen->add_option("--cnots", g_cnots, "Random circuit CNOT count")
      ->capture_default_str();
  gen->add_option("--seed", g_seed, "Random circuit seed")
      ->capture_default_str();
  gen->add_option("--single-rate", g_rate,
                  "Random single-qubit gates per CNOT")
      ->check(CLI::NonNegativeNumber);
  gen->add_option("--output,-o", g_out, "Output path (default stdout)");

  // dist
  std::string d_arch, d_kind = "undirected", d_out;
  auto* dist = app.add_subcommand("dist", "Dump a distance matrix as CSV");
  dist->add_option("--arch", d_arch, "Built-in name or JSON file")->required();
  dist->add_option("--kind", d_kind, "undirected or cnot")
      ->check(CLI::IsMember({"undirected", "cnot"}))
      ->capture_default_str();
  dist->add_option("--output,-o", d_out, "Output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*transform) {
      return cmd_transform(tf, t_arch, t_in, t_out, t_report, t_trace,
                           t_check, t_timing);
    }
    if (*verify) return cmd_verify(v_log, v_phys, v_report);
    if (*bench) {
      return cmd_bench(bf, b_arch, b_corpus, b_baseline, b_csv, b_jobs,
                       b_no_timing);
    }
    if (*gen) {
      return cmd_gen(g_family, g_n, g_steps, g_cnots, g_seed, g_rate, g_out);
    }
    if (*dist) return cmd_dist(d_arch, d_kind, d_out);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const VerificationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kVerify;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInput;
  }
  return kUsage;
}
