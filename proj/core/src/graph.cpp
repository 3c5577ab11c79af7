#include "starloop/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "starloop/errors.hpp"

namespace starloop {
namespace {

void require_loopless(const WeightedGraph& g, const char* what) {
  if (g.has_loops())
    throw Error(ErrorKind::LoopsNotSupported,
                std::string(what) + " is undefined for graphs with loops; deloop the graph first");
}

Vector positive_strengths(const WeightedGraph& g) {
  auto d = strength_matrix(g).diagonal;
  for (std::size_t i = 0; i < d.size(); ++i)
    if (!(d[i] > 0.0)) throw Error(ErrorKind::ZeroStrength, "vertex '" + g.label(i) + "' has zero strength");
  return d;
}

}  // namespace

WeightedGraph::WeightedGraph(std::vector<std::string> labels, std::vector<Edge> edges)
    : labels_(std::move(labels)), adjacency_(labels_.size()), loops_(labels_.size(), 0.0) {
  for (VertexId i = 0; i < labels_.size(); ++i) {
    if (!index_.emplace(labels_[i], i).second)
      throw Error(ErrorKind::InvalidArgument, "duplicate vertex label '" + labels_[i] + "'");
  }
  for (auto& e : edges) {
    if (e.u >= labels_.size() || e.v >= labels_.size())
      throw Error(ErrorKind::DimensionError, "edge endpoint out of range");
    if (!(e.w > 0.0) || !std::isfinite(e.w))
      throw Error(ErrorKind::InvalidWeight, "edge {" + labels_[e.u] + "," + labels_[e.v] +
                                                "} has non-positive or non-finite weight");
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges.begin(), edges.end(),
            [](const Edge& a, const Edge& b) { return std::pair(a.u, a.v) < std::pair(b.u, b.v); });
  for (std::size_t i = 1; i < edges.size(); ++i) {
    if (edges[i].u == edges[i - 1].u && edges[i].v == edges[i - 1].v)
      throw Error(ErrorKind::DuplicateEdge,
                  "edge {" + labels_[edges[i].u] + "," + labels_[edges[i].v] + "} appears more than once");
  }
  edges_ = std::move(edges);
  for (const auto& e : edges_) {
    if (e.is_loop()) {
      loops_[e.u] = e.w;
    } else {
      adjacency_[e.u].push_back({e.v, e.w});
      adjacency_[e.v].push_back({e.u, e.w});
    }
  }
  for (auto& nbrs : adjacency_)
    std::sort(nbrs.begin(), nbrs.end(), [](const Neighbor& a, const Neighbor& b) { return a.vertex < b.vertex; });
}

std::optional<VertexId> WeightedGraph::find(const std::string& label) const {
  auto it = index_.find(label);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool WeightedGraph::has_loops() const noexcept {
  return std::any_of(loops_.begin(), loops_.end(), [](double w) { return w > 0.0; });
}

std::size_t WeightedGraph::loop_count() const noexcept {
  return static_cast<std::size_t>(std::count_if(loops_.begin(), loops_.end(), [](double w) { return w > 0.0; }));
}

std::vector<VertexId> WeightedGraph::looped_vertices() const {
  std::vector<VertexId> out;
  for (VertexId v = 0; v < loops_.size(); ++v)
    if (loops_[v] > 0.0) out.push_back(v);
  return out;
}

double WeightedGraph::weight(VertexId u, VertexId v) const {
  if (u == v) return loops_.at(u);
  const auto& nbrs = adjacency_.at(u);
  auto it = std::lower_bound(nbrs.begin(), nbrs.end(), v,
                             [](const Neighbor& n, VertexId x) { return n.vertex < x; });
  return (it != nbrs.end() && it->vertex == v) ? it->w : 0.0;
}

WeightedGraph build_graph(std::span<const LabeledEdge> edges, std::span<const std::string> nodes) {
  std::vector<std::string> labels;
  std::unordered_map<std::string, VertexId> index;
  auto intern = [&](const std::string& label) {
    auto [it, inserted] = index.emplace(label, labels.size());
    if (inserted) labels.push_back(label);
    return it->second;
  };
  for (const auto& node : nodes) intern(node);

  std::vector<WeightedGraph::Edge> indexed;
  indexed.reserve(edges.size());
  for (const auto& e : edges) {
    const VertexId u = intern(e.u);
    const VertexId v = intern(e.v);
    indexed.push_back({u, v, e.w});
  }
  return WeightedGraph(std::move(labels), std::move(indexed));
}

SymmetricMatrix adjacency_matrix(const WeightedGraph& g) {
  SymmetricMatrix a(g.order());
  for (const auto& e : g.edges()) a.set(e.u, e.v, e.w);
  return a;
}

DiagonalMatrix strength_matrix(const WeightedGraph& g) {
  const auto a = adjacency_matrix(g);
  DiagonalMatrix d{Vector(g.order(), 0.0)};
  for (std::size_t i = 0; i < g.order(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < g.order(); ++j) s += a(i, j);
    d.diagonal[i] = s;
  }
  return d;
}

SymmetricMatrix laplacian(const WeightedGraph& g) {
  require_loopless(g, "the Laplacian");
  const auto d = strength_matrix(g);
  SymmetricMatrix l(g.order());
  for (std::size_t i = 0; i < g.order(); ++i) l.set(i, i, d.diagonal[i]);
  for (const auto& e : g.edges()) l.set(e.u, e.v, -e.w);
  return l;
}

SymmetricMatrix signless_laplacian(const WeightedGraph& g) {
  require_loopless(g, "the signless Laplacian");
  const auto d = strength_matrix(g);
  SymmetricMatrix b(g.order());
  for (std::size_t i = 0; i < g.order(); ++i) b.set(i, i, d.diagonal[i]);
  for (const auto& e : g.edges()) b.set(e.u, e.v, e.w);
  return b;
}

SymmetricMatrix normalized_laplacian(const WeightedGraph& g) {
  require_loopless(g, "the normalized Laplacian");
  const auto d = positive_strengths(g);
  SymmetricMatrix l(g.order());
  for (std::size_t i = 0; i < g.order(); ++i) l.set(i, i, 1.0);
  for (const auto& e : g.edges()) l.set(e.u, e.v, -e.w / std::sqrt(d[e.u] * d[e.v]));
  return l;
}

SymmetricMatrix normalized_adjacency(const WeightedGraph& g) {
  const auto d = positive_strengths(g);
  SymmetricMatrix a(g.order());
  for (const auto& e : g.edges()) a.set(e.u, e.v, e.w / std::sqrt(d[e.u] * d[e.v]));
  return a;
}

SquareMatrix transition_matrix(const WeightedGraph& g) {
  const auto d = positive_strengths(g);
  SquareMatrix t(g.order());
  for (const auto& e : g.edges()) {
    t(e.u, e.v) = e.w / d[e.u];
    t(e.v, e.u) = e.w / d[e.v];
  }
  return t;
}

std::vector<std::size_t> connected_components(const WeightedGraph& g) {
  std::vector<std::size_t> parent(g.order());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto root = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& e : g.edges()) {
    auto a = root(e.u);
    auto b = root(e.v);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<std::size_t> out(g.order());
  for (std::size_t v = 0; v < g.order(); ++v) out[v] = root(v);
  return out;
}

}  // namespace starloop
