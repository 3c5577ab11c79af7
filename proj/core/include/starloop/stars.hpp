#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "starloop/graph.hpp"

namespace starloop {

inline constexpr double kDefaultWeightTolerance = 1e-12;

/// A (m,k,s)-star of a graph: an inner class V1 whose members share the
/// neighborhood V2 with identical weights. V1 is a clique with uniform weight
/// `internal_weight` when s = 1 and independent when s = 0. A looped star
/// carries the same loop on every V1 vertex; m = 1 is only produced for a
/// lone looped vertex.
struct Star {
  std::vector<VertexId> v1;  // sorted
  std::vector<VertexId> v2;  // sorted
  int s = 0;
  bool looped = false;
  std::vector<double> edge_weight_to_v2;  // b_j, aligned with v2
  double internal_weight = 0.0;           // a
  double loop_weight = 0.0;               // l

  std::size_t m() const noexcept { return v1.size(); }
  std::size_t k() const noexcept { return v2.size(); }

  bool operator==(const Star&) const = default;
};

struct StarMetrics {
  std::size_t degree = 0;
  double weight = 0.0;  // strength of any V1 vertex
  double central_weight_edge = 0.0;
  double loop_weight = 0.0;
};

struct StarValidation {
  bool valid = true;
  std::vector<std::string> violations;
};

/// Maximal weighted twin classes of g, one Star per class of size >= 2,
/// plus a degree-0 star for every looped vertex left without a twin.
/// Sorted by smallest V1 vertex.
std::vector<Star> find_stars(const WeightedGraph& g, double wtol = kDefaultWeightTolerance);

StarMetrics star_metrics(const Star& star);

StarValidation validate_star(const WeightedGraph& g, const Star& star, double wtol = kDefaultWeightTolerance);

}  // namespace starloop
