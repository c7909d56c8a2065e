/**
 * @file weightspace.hpp
 * @brief Geometry of the lifted weight set: half-spaces, the polyhedron cut
 *        out by a solution set, and exact extreme-point enumeration.
 *
 * Every feasible image y induces the half-space
 *   { (lambda, z) : lambda^T y >= z }   (minimize)
 *   { (lambda, z) : lambda^T y <= z }   (maximize)
 * over the weight set. The extreme points of the intersection drive both
 * the exact dual outer-approximation loop and its approximate variant.
 *
 * enumerate_extreme_points() is the OpenMP production kernel (integer
 * arithmetic with an overflow-checked fast path); the *_serial variant is
 * the straightforward rational reference kept for testing. Both return
 * identical, canonically sorted output.
 */

#ifndef MOCA_WEIGHTSPACE_HPP
#define MOCA_WEIGHTSPACE_HPP

#include <vector>

#include "moca/types.hpp"

namespace moca {

struct HalfSpace {
  ObjectiveVector image;
  Sense sense;

  /// Membership test for a lifted point (lambda, z).
  bool contains(const WeightVector& lambda, const Rational& z) const {
    Rational value = weighted_value(lambda, image);
    return sense == Sense::minimize ? value >= z : value <= z;
  }
};

inline HalfSpace build_halfspace(ObjectiveVector y, Sense sense) { return HalfSpace{std::move(y), sense}; }

/// An extreme point (lambda, z) of the lifted polyhedron, with the full set
/// of constraints tight at it: indices of vanishing weight components and
/// indices (into the input image list) of envelope-tight images.
struct LiftedVertex {
  WeightVector weight;
  Rational z;
  std::vector<int> zero_weights;
  std::vector<int> tight_images;
};

/// Exact extreme points of the polyhedron induced by `images`, equivalently
/// the lifted vertices of the envelope subdivision of the weight set
/// (including its corners). Brute-force subset enumeration: every size-d
/// subset of the constraint pool {lambda_i = 0} u {lambda^T y = z} is
/// solved together with the normalization sum(lambda) = 1; nonsingular,
/// feasible solutions with at least one tight image constraint are kept,
/// deduplicated by exact (lambda, z), and sorted lexicographically.
std::vector<LiftedVertex> enumerate_extreme_points(const std::vector<ObjectiveVector>& images, Sense sense);

/// Single-threaded rational-arithmetic reference implementation.
std::vector<LiftedVertex> enumerate_extreme_points_serial(const std::vector<ObjectiveVector>& images, Sense sense);

/// Sorted-prefix membership test for the compact weight subset: after
/// sorting components ascending, sum of the first k components must reach
/// c times the (k+1)-th for every k.
bool in_compact(const WeightVector& lambda, const Rational& c);

}  // namespace moca

#endif  // MOCA_WEIGHTSPACE_HPP
