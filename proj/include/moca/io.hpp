/**
 * @file io.hpp
 * @brief Plain-text, line-oriented instance and solution file formats.
 *
 * Knapsack instances:   `n d W` on the first line, then n lines `w p1 .. pd`.
 * TSP instances:        `n d` on the first line, then d blocks of n lines
 *                       `x y` (per-objective city coordinates); cost
 *                       matrices are derived on load.
 * Solution files:       header `# problem d sense`, then one solution per
 *                       line: space-separated item indices (knapsack) or a
 *                       city permutation (tsp), 0-based.
 *
 * parse(serialize(instance)) round-trips byte-for-byte.
 */

#ifndef MOCA_IO_HPP
#define MOCA_IO_HPP

#include <string>
#include <vector>

#include "moca/instance.hpp"

namespace moca {

std::string serialize_instance(const ProblemInstance& instance);
ProblemInstance parse_instance(const std::string& text);

void write_instance(const ProblemInstance& instance, const std::string& path);
ProblemInstance read_instance(const std::string& path);

std::string serialize_solutions(const std::vector<SolutionRecord>& solutions, const ProblemInstance& instance);
/// Parses encodings and re-evaluates each image on the given instance.
std::vector<SolutionRecord> parse_solutions(const std::string& text, const ProblemInstance& instance);

void write_solutions(const std::vector<SolutionRecord>& solutions, const ProblemInstance& instance,
                     const std::string& path);
std::vector<SolutionRecord> read_solutions(const std::string& path, const ProblemInstance& instance);

}  // namespace moca

#endif  // MOCA_IO_HPP
