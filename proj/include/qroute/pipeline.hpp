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

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qroute/arch_graph.hpp"
#include "qroute/circuit.hpp"
#include "qroute/error.hpp"
#include "qroute/initial_mapping.hpp"
#include "qroute/router.hpp"
#include "qroute/verify.hpp"

namespace qroute {

/// Raised when a self-check or the verify command finds a mismatch.
class VerificationError : public Error {
 public:
  using Error::Error;
};

struct TransformOptions {
  SAParams sa;
  CostParams cost;
  /// false: identity-prefix initial mapping.
  bool use_sa = true;
  /// Re-parse the emitted QASM and verify it against the input.
  bool self_check = false;
};

struct TransformResult {
  SplitCircuit input;
  RouteResult routed;
  std::string qasm;
  Mapping tau_ini;
  bool sa_used = false;
  SAResult sa;
  /// C* cost of the identity-prefix mapping, for comparison with sa.cost.
  long naive_cost = 0;
  std::optional<Verdict> check;
};

/**
 * Parse-independent core of the transform command: initial mapping, routing,
 * emission and the optional self-check. Report sizes include passthrough
 * gates. Throws VerificationError when the self-check fails.
 */
TransformResult transform(
    const SplitCircuit& input, const ArchGraph& ag,
    const DistanceTables& tables, const TransformOptions& opts);

/**
 * Checks a physical program against its logical source. Gates outside
 * {H, CNOT} are removed from both sides before the tableau comparison and
 * must match as a multiset.
 */
Verdict verify_programs(
    const Circuit& logical_full, const Circuit& physical_full,
    const Mapping& tau_ini, const WirePermutation& sigma_final);

struct ReportInfo {
  std::string input;
  std::string arch;
  std::uint64_t seed = 0;
  bool seed_generated = false;
  bool include_timing = false;
};

/// JSON report of one transform run (schema in docs/report-schema.md).
std::string report_json(
    const TransformResult& r, const TransformOptions& opts,
    const ReportInfo& info);

/// The parts of a report the verify command needs.
struct ReportMapping {
  std::vector<Qubit> tau_ini;
  std::vector<Qubit> final_sigma;
};

/// Throws Error on malformed JSON or missing fields.
ReportMapping read_report_mapping(std::string_view json_text);

/// FNV-1a over the seed bytes and the name; stable per-circuit seeds.
std::uint64_t circuit_seed(std::uint64_t seed, std::string_view name);

struct BenchRow {
  std::string name;
  bool ok = false;
  std::string error;
  std::size_t original = 0;
  std::size_t output = 0;
  long added = 0;
  std::size_t cnots = 0;
  double seconds = 0.0;
  bool verified = false;
  std::optional<long> baseline_added;
  std::optional<double> improvement;
};

struct BenchSummary {
  std::vector<BenchRow> rows;
  /// (sum n_comp - sum n_ours) / sum n_comp over rows with a baseline.
  std::optional<double> improvement;
};

/// Baseline CSV: header with `name` and either `added` or `output`.
struct Baseline {
  std::map<std::string, long> added;
  std::map<std::string, long> output;
};
Baseline parse_baseline_csv(std::string_view text);

/// (n_comp - n_ours) / n_comp; empty when n_comp is 0.
std::optional<double> improvement_ratio(long n_comp, long n_ours);

/**
 * Routes every .qasm file (sorted by name) with a per-circuit seed. Failures
 * become rows with ok = false. Throws Error on an empty corpus.
 */
BenchSummary run_bench(
    const std::vector<std::filesystem::path>& files, const ArchGraph& ag,
    const DistanceTables& tables, const TransformOptions& opts,
    const std::optional<Baseline>& baseline, unsigned jobs = 1);

/// All *.qasm files directly inside dir, sorted.
std::vector<std::filesystem::path> list_corpus(const std::filesystem::path& dir);

std::string bench_csv(const BenchSummary& s, bool timing);
std::string bench_table(const BenchSummary& s, bool timing);

}  // namespace qroute
