#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "starloop/matrix.hpp"

namespace starloop {

using VertexId = std::size_t;

struct LabeledEdge {
  std::string u;
  std::string v;
  double w = 0.0;
};

/// Undirected graph with strictly positive edge weights. A loop is an edge
/// {v,v}; at most one entry per unordered vertex pair.
class WeightedGraph {
 public:
  struct Edge {
    VertexId u;  // u <= v
    VertexId v;
    double w;

    bool is_loop() const noexcept { return u == v; }
    bool operator==(const Edge&) const = default;
  };

  struct Neighbor {
    VertexId vertex;
    double w;
  };

  WeightedGraph() = default;
  /// Validates weights and uniqueness; endpoint order inside an edge is irrelevant.
  WeightedGraph(std::vector<std::string> labels, std::vector<Edge> edges);

  std::size_t order() const noexcept { return labels_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::string& label(VertexId v) const { return labels_.at(v); }
  std::optional<VertexId> find(const std::string& label) const;

  /// Edges sorted by (u, v) with u <= v.
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  /// Non-loop neighbors sorted by vertex index.
  std::span<const Neighbor> neighbors(VertexId v) const { return adjacency_.at(v); }
  double loop_weight(VertexId v) const { return loops_.at(v); }
  bool has_loop(VertexId v) const { return loops_.at(v) > 0.0; }
  bool has_loops() const noexcept;
  std::size_t loop_count() const noexcept;
  std::vector<VertexId> looped_vertices() const;

  /// w(u,v), 0 when absent; weight(v,v) is the loop weight.
  double weight(VertexId u, VertexId v) const;

  bool operator==(const WeightedGraph& other) const {
    return labels_ == other.labels_ && edges_ == other.edges_;
  }

 private:
  std::vector<std::string> labels_;
  std::vector<Edge> edges_;
  std::vector<std::vector<Neighbor>> adjacency_;
  std::vector<double> loops_;
  std::unordered_map<std::string, VertexId> index_;
};

/// Vertices are numbered in first-appearance order; `nodes` (if given) are
/// registered before any edge endpoint, which lets isolated vertices exist.
WeightedGraph build_graph(std::span<const LabeledEdge> edges, std::span<const std::string> nodes = {});

SymmetricMatrix adjacency_matrix(const WeightedGraph& g);
/// D_ii is the row sum of the adjacency matrix; a loop counts once.
DiagonalMatrix strength_matrix(const WeightedGraph& g);
SymmetricMatrix laplacian(const WeightedGraph& g);
SymmetricMatrix signless_laplacian(const WeightedGraph& g);
SymmetricMatrix normalized_laplacian(const WeightedGraph& g);
SquareMatrix transition_matrix(const WeightedGraph& g);

/// D^{-1/2} A D^{-1/2}, the symmetric matrix similar to the transition matrix.
SymmetricMatrix normalized_adjacency(const WeightedGraph& g);

/// Component id per vertex, components numbered by smallest member.
std::vector<std::size_t> connected_components(const WeightedGraph& g);

}  // namespace starloop
