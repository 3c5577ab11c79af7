#pragma once

// Seeded random inputs for property tests and the acceptance suite.

#include <algorithm>
#include <cstddef>
#include <random>
#include <string>
#include <vector>

#include "starloop/graph.hpp"
#include "starloop/matrix.hpp"

namespace starloop::gen {

using Rng = std::mt19937_64;

inline double weight_1_to_9(Rng& rng) { return static_cast<double>(std::uniform_int_distribution<int>(1, 9)(rng)); }

inline bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

inline std::size_t pick(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

/// Random spanning tree on `labels` plus extra edges with probability `p`.
inline void connected_edges(Rng& rng, const std::vector<std::string>& labels, double p,
                            std::vector<LabeledEdge>& out) {
  const std::size_t n = labels.size();
  std::vector<std::vector<bool>> used(n, std::vector<bool>(n, false));
  for (std::size_t i = 1; i < n; ++i) {
    const std::size_t j = pick(rng, 0, i - 1);
    used[i][j] = used[j][i] = true;
    out.push_back({labels[i], labels[j], weight_1_to_9(rng)});
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (!used[i][j] && coin(rng, p)) out.push_back({labels[i], labels[j], weight_1_to_9(rng)});
}

/// Builds the graph with vertex numbering and edge order shuffled.
inline WeightedGraph shuffled_graph(Rng& rng, std::vector<std::string> nodes, std::vector<LabeledEdge> edges) {
  std::shuffle(nodes.begin(), nodes.end(), rng);
  std::shuffle(edges.begin(), edges.end(), rng);
  for (auto& e : edges)
    if (coin(rng, 0.5)) std::swap(e.u, e.v);
  return build_graph(edges, nodes);
}

struct PlantedStar {
  std::vector<std::string> v1;
  std::vector<std::string> v2;
  int s = 0;
  bool looped = false;
  double a = 0.0;
  double loop = 0.0;
  std::vector<double> b;

  double weight() const {
    double w = loop + static_cast<double>(v1.size() - 1) * a;
    for (double x : b) w += x;
    return w;
  }
};

struct PlantedGraph {
  WeightedGraph graph;
  PlantedStar star;
};

/// A connected graph of order n with one planted (m,k,s)-star. `rest_loop_p`
/// puts loops on non-star vertices.
inline PlantedGraph planted_star_graph(Rng& rng, std::size_t n, std::size_t m, int s, bool looped,
                                       double rest_loop_p = 0.0) {
  std::vector<std::string> rest;
  for (std::size_t i = 0; i + m < n; ++i) rest.push_back("r" + std::to_string(i));
  std::vector<LabeledEdge> edges;
  connected_edges(rng, rest, 0.15, edges);
  for (const auto& r : rest)
    if (coin(rng, rest_loop_p)) edges.push_back({r, r, weight_1_to_9(rng)});

  PlantedStar star;
  star.s = s;
  star.looped = looped;
  std::vector<std::string> pool = rest;
  std::shuffle(pool.begin(), pool.end(), rng);
  const std::size_t k = pick(rng, 1, std::min<std::size_t>(4, pool.size()));
  star.v2.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(k));
  for (std::size_t j = 0; j < k; ++j) star.b.push_back(weight_1_to_9(rng));
  if (s == 1) star.a = weight_1_to_9(rng);
  if (looped) star.loop = weight_1_to_9(rng);

  for (std::size_t i = 0; i < m; ++i) star.v1.push_back("s" + std::to_string(i));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < k; ++j) edges.push_back({star.v1[i], star.v2[j], star.b[j]});
    if (looped) edges.push_back({star.v1[i], star.v1[i], star.loop});
    if (s == 1)
      for (std::size_t t = i + 1; t < m; ++t) edges.push_back({star.v1[i], star.v1[t], star.a});
  }

  std::vector<std::string> nodes = rest;
  nodes.insert(nodes.end(), star.v1.begin(), star.v1.end());
  return {shuffled_graph(rng, nodes, edges), star};
}

/// Connected graph of order n, weights in {1..9}, each vertex looped with
/// probability `loop_p`; at least one loop is always present.
inline WeightedGraph looped_graph(Rng& rng, std::size_t n, double loop_p) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back("v" + std::to_string(i));
  std::vector<LabeledEdge> edges;
  connected_edges(rng, labels, 0.2, edges);
  bool any = false;
  for (const auto& l : labels)
    if (coin(rng, loop_p)) {
      edges.push_back({l, l, weight_1_to_9(rng)});
      any = true;
    }
  if (!any) {
    const auto& l = labels[pick(rng, 0, n - 1)];
    edges.push_back({l, l, weight_1_to_9(rng)});
  }
  return shuffled_graph(rng, labels, edges);
}

/// Connected loopless graph of order n.
inline WeightedGraph loopless_graph(Rng& rng, std::size_t n, double p = 0.25) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back("v" + std::to_string(i));
  std::vector<LabeledEdge> edges;
  connected_edges(rng, labels, p, edges);
  return shuffled_graph(rng, labels, edges);
}

/// Entries uniform in [-5, 5].
inline SymmetricMatrix symmetric_matrix(Rng& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  SymmetricMatrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) m.set(i, j, u(rng));
  return m;
}

}  // namespace starloop::gen
