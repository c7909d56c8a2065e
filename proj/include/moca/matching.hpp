/**
 * @file matching.hpp
 * @brief Exact minimum-weight perfect matching on complete graphs.
 */

#ifndef MOCA_MATCHING_HPP
#define MOCA_MATCHING_HPP

#include <gmpxx.h>

#include <vector>

namespace moca {

/// Computes a minimum-weight perfect matching on the complete graph given by
/// a symmetric cost matrix with an even number of vertices. Primal-dual
/// algorithm with blossom shrinking, cubic-ish in the vertex count, exact
/// integer arithmetic throughout. Returns mate[v] for every vertex v.
std::vector<int> min_weight_perfect_matching(const std::vector<std::vector<mpz_class>>& cost);

}  // namespace moca

#endif  // MOCA_MATCHING_HPP
