// Command-line interface: instance generation, convex approximation solves,
// exact references, indicator evaluation, and the benchmark harness.
//
// Exit codes: 0 success, 2 configuration error, 3 resource limit or
// timeout, 4 feasibility error.

#include <chrono>
#include <iostream>

#include "CLI11.hpp"
#include "moca/algorithms.hpp"
#include "moca/bench.hpp"
#include "moca/generators.hpp"
#include "moca/io.hpp"
#include "moca/quality.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using namespace moca;

void apply_threads(int threads) {
#ifdef _OPENMP
  if (threads > 0) omp_set_num_threads(threads);
#else
  (void)threads;
#endif
}

int run(int argc, char** argv) {
  CLI::App app{"convex approximation sets for multiobjective knapsack and metric TSP instances"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "limit the number of worker threads (default: all cores)");

  // generate
  auto* gen = app.add_subcommand("generate", "generate a pseudorandom instance");
  GeneratorSpec spec;
  std::string gen_out;
  gen->add_option("--problem", spec.problem, "knapsack-uniform, knapsack-conflicting, or tsp")->required();
  gen->add_option("--n", spec.n, "items or cities")->required();
  gen->add_option("--d", spec.d, "objectives (default 3)");
  gen->add_option("--seed", spec.seed, "64-bit seed")->required();
  gen->add_option("--out", gen_out, "output file (default: derived from the spec)");

  // solve
  auto* solve = app.add_subcommand("solve", "compute a convex approximation set");
  std::string solve_instance, solve_algorithm = "oaa", solve_oracle, solve_epsilon = "0.5", solve_out;
  std::uint64_t solve_grid_budget = 500000;
  std::int64_t solve_budget_ms = 0;
  solve->add_option("--instance", solve_instance, "instance file")->required();
  solve->add_option("--algorithm", solve_algorithm, "oaa, grid, or benson-exact");
  solve->add_option("--epsilon", solve_epsilon, "approximation parameter in (0,1), e.g. 0.25 or 1/4");
  solve->add_option("--oracle", solve_oracle, "greedy, dp, christofides, double-tree, held-karp");
  solve->add_option("--out", solve_out, "solution file to write");
  solve->add_option("--grid-budget", solve_grid_budget, "grid key budget for the grid algorithm");
  solve->add_option("--time-budget-ms", solve_budget_ms, "wall-clock budget (0 = unlimited)");

  // reference
  auto* reference = app.add_subcommand("reference", "exact reference set (dual outer approximation + filter)");
  std::string ref_instance, ref_oracle, ref_out;
  reference->add_option("--instance", ref_instance, "instance file")->required();
  reference->add_option("--oracle", ref_oracle, "exact oracle: dp or held-karp");
  reference->add_option("--out", ref_out, "solution file to write");

  // indicator
  auto* indicator = app.add_subcommand("indicator", "convex indicator of a solution set against a reference");
  std::string ind_instance, ind_solutions, ind_reference;
  indicator->add_option("--instance", ind_instance, "instance file")->required();
  indicator->add_option("--solutions", ind_solutions, "solution file to measure")->required();
  indicator->add_option("--reference", ind_reference, "reference solution file")->required();

  // bench
  auto* bench = app.add_subcommand("bench", "run the benchmark harness");
  std::string bench_config;
  bench->add_option("--config", bench_config, "JSON configuration file")->required();

  CLI11_PARSE(app, argc, argv);
  apply_threads(threads);

  if (gen->parsed()) {
    ProblemInstance instance = make_instance(spec);
    std::string path = gen_out.empty() ? spec_id(spec) + ".txt" : gen_out;
    write_instance(instance, path);
    std::cout << "wrote " << path << "\n";
    return 0;
  }

  if (solve->parsed()) {
    ProblemInstance instance = read_instance(solve_instance);
    if (solve_oracle.empty()) solve_oracle = instance.is_knapsack() ? "greedy" : "christofides";
    auto oracle = make_oracle(solve_oracle);
    RunOptions opts;
    opts.grid_key_budget = solve_grid_budget;
    if (solve_budget_ms > 0)
      opts.deadline = std::chrono::steady_clock::now() + std::chrono::milliseconds(solve_budget_ms);

    std::vector<SolutionRecord> solutions;
    if (solve_algorithm == "benson-exact") {
      solutions = filter_redundant(dual_benson_exact(instance, *oracle, opts), instance.sense());
      std::cout << "benson-exact: " << solutions.size() << " solutions, " << oracle->call_count()
                << " oracle calls\n";
    } else {
      Rational epsilon = Rational::parse(solve_epsilon);
      ConvexApproxResult result;
      if (solve_algorithm == "oaa") {
        result = oaa(instance, *oracle, epsilon, opts);
      } else if (solve_algorithm == "grid") {
        result = grid_algorithm(instance, *oracle, epsilon, opts);
      } else {
        throw ConfigError("unknown algorithm '" + solve_algorithm + "'");
      }
      solutions = std::move(result.solutions);
      std::cout << solve_algorithm << ": " << solutions.size() << " solutions, " << result.oracle_calls
                << " oracle calls, " << result.wall_time.count() << " ms, guarantee (1+eps)*alpha = "
                << ((Rational(1) + epsilon) * oracle->alpha()).str() << "\n";
    }
    if (!solve_out.empty()) {
      write_solutions(solutions, instance, solve_out);
      std::cout << "wrote " << solve_out << "\n";
    }
    return 0;
  }

  if (reference->parsed()) {
    ProblemInstance instance = read_instance(ref_instance);
    if (ref_oracle.empty()) ref_oracle = instance.is_knapsack() ? "dp" : "held-karp";
    auto oracle = make_oracle(ref_oracle);
    auto solutions = filter_redundant(dual_benson_exact(instance, *oracle), instance.sense());
    std::cout << "reference: " << solutions.size() << " solutions, " << oracle->call_count() << " oracle calls\n";
    if (!ref_out.empty()) {
      write_solutions(solutions, instance, ref_out);
      std::cout << "wrote " << ref_out << "\n";
    }
    return 0;
  }

  if (indicator->parsed()) {
    ProblemInstance instance = read_instance(ind_instance);
    auto measured = read_solutions(ind_solutions, instance);
    auto ref = read_solutions(ind_reference, instance);
    std::vector<ObjectiveVector> s, r;
    for (const auto& rec : measured) s.push_back(rec.image);
    for (const auto& rec : ref) r.push_back(rec.image);
    auto report = convex_indicator(s, r, instance.sense(), instance.objectives());
    std::cout << "indicator = " << report.value.str() << " (~" << report.value.to_double() << ")\n"
              << "witness lambda = " << report.argmax_weight.str() << "\n"
              << "candidates evaluated = " << report.candidate_count << "\n";
    return 0;
  }

  if (bench->parsed()) {
    BenchConfig config = BenchConfig::from_json_file(bench_config);
    auto records = run_bench(config);
    write_bench_outputs(config, records);
    std::cout << "wrote " << records.size() << " records to " << config.out_dir << "\n";
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const moca::TimeoutError& e) {
    std::cerr << "timeout: " << e.what() << "\n";
    return 3;
  } catch (const moca::ResourceError& e) {
    std::cerr << "resource error: " << e.what() << "\n";
    return 3;
  } catch (const moca::FeasibilityError& e) {
    std::cerr << "feasibility error: " << e.what() << "\n";
    return 4;
  } catch (const moca::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const moca::ContractError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
