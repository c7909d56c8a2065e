/**
 * @file bench.hpp
 * @brief Benchmark harness: runs algorithm/epsilon grids over instance
 *        lists, measures quality against exact references, and emits a
 *        versioned CSV plus standalone SVG line plots.
 */

#ifndef MOCA_BENCH_HPP
#define MOCA_BENCH_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "moca/generators.hpp"

namespace moca {

struct BenchInstanceSpec {
  std::optional<GeneratorSpec> generated;
  std::string file;  // used when no generator spec is given
};

struct BenchConfig {
  std::vector<BenchInstanceSpec> instances;
  std::vector<std::string> algorithms = {"oaa"};  // oaa, grid, benson-exact
  std::vector<std::string> epsilons = {"0.5"};
  int repetitions = 1;
  std::optional<std::int64_t> time_budget_ms;  // per run
  bool compute_reference = true;
  std::string knapsack_oracle = "greedy";
  std::string tsp_oracle = "christofides";
  std::string knapsack_reference_oracle = "dp";
  std::string tsp_reference_oracle = "held-karp";
  std::uint64_t grid_key_budget = 500000;
  std::string out_dir = "bench-out";

  static BenchConfig from_json_file(const std::string& path);
  static BenchConfig from_json(const std::string& text);
};

struct BenchRecord {
  std::string instance_id;
  int n = 0;
  std::string type;
  std::string algorithm;
  std::string epsilon;  // empty for benson-exact
  double runtime_ms = 0.0;
  std::uint64_t oracle_calls = 0;
  std::size_t solution_count = 0;
  std::string indicator;          // empty when the reference was skipped
  std::size_t reference_count = 0;
  std::string cardinality_ratio;  // solution_count / reference_count
  std::string status;             // ok, timeout, skipped
};

/// Fixed, versioned CSV schema (comment line + header).
std::string bench_csv_header();

std::vector<BenchRecord> run_bench(const BenchConfig& config);

std::string render_csv(const std::vector<BenchRecord>& records);

/// Writes bench.csv and one SVG per metric (runtime, indicator, cardinality
/// ratio, each against n) into config.out_dir.
void write_bench_outputs(const BenchConfig& config, const std::vector<BenchRecord>& records);

}  // namespace moca

#endif  // MOCA_BENCH_HPP
