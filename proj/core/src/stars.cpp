#include "starloop/stars.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>

namespace starloop {
namespace {

bool close(double a, double b, double wtol) { return std::abs(a - b) <= wtol; }

// u and v agree on loops and on every weighted edge leaving {u, v}.
bool weighted_twins(const WeightedGraph& g, VertexId u, VertexId v, double wtol) {
  if (g.has_loop(u) != g.has_loop(v) || !close(g.loop_weight(u), g.loop_weight(v), wtol)) return false;
  auto nu = g.neighbors(u);
  auto nv = g.neighbors(v);
  auto skip = [&](std::span<const WeightedGraph::Neighbor> ns, std::size_t i) {
    while (i < ns.size() && (ns[i].vertex == u || ns[i].vertex == v)) ++i;
    return i;
  };
  std::size_t i = skip(nu, 0);
  std::size_t j = skip(nv, 0);
  while (i < nu.size() && j < nv.size()) {
    if (nu[i].vertex != nv[j].vertex || !close(nu[i].w, nv[j].w, wtol)) return false;
    i = skip(nu, i + 1);
    j = skip(nv, j + 1);
  }
  return i == nu.size() && j == nv.size();
}

using NeighborhoodKey = std::vector<VertexId>;

NeighborhoodKey open_key(const WeightedGraph& g, VertexId v) {
  NeighborhoodKey key;
  for (const auto& n : g.neighbors(v)) key.push_back(n.vertex);
  return key;
}

NeighborhoodKey closed_key(const WeightedGraph& g, VertexId v) {
  auto key = open_key(g, v);
  key.insert(std::lower_bound(key.begin(), key.end(), v), v);
  return key;
}

Star make_star(const WeightedGraph& g, std::vector<VertexId> v1, bool adjacent) {
  Star star;
  const VertexId first = v1.front();
  star.s = adjacent ? 1 : 0;
  star.loop_weight = g.loop_weight(first);
  star.looped = star.loop_weight > 0.0;
  if (adjacent && v1.size() >= 2) star.internal_weight = g.weight(first, v1[1]);
  for (const auto& n : g.neighbors(first)) {
    if (std::binary_search(v1.begin(), v1.end(), n.vertex)) continue;
    star.v2.push_back(n.vertex);
    star.edge_weight_to_v2.push_back(n.w);
  }
  star.v1 = std::move(v1);
  return star;
}

}  // namespace

std::vector<Star> find_stars(const WeightedGraph& g, double wtol) {
  const std::size_t n = g.order();
  // Unweighted neighborhood sets give the candidate grouping; weights are
  // confirmed pairwise afterwards, so a tolerance never splits a class at a
  // hashing boundary.
  std::map<NeighborhoodKey, std::vector<VertexId>> open_groups;
  std::map<NeighborhoodKey, std::vector<VertexId>> closed_groups;
  for (VertexId v = 0; v < n; ++v) {
    open_groups[open_key(g, v)].push_back(v);
    closed_groups[closed_key(g, v)].push_back(v);
  }

  std::vector<bool> assigned(n, false);
  std::vector<Star> stars;
  auto split_group = [&](const std::vector<VertexId>& group, bool adjacent) {
    if (group.size() < 2) return;
    for (std::size_t i = 0; i < group.size(); ++i) {
      const VertexId seed = group[i];
      if (assigned[seed]) continue;
      std::vector<VertexId> cls{seed};
      std::optional<double> internal;
      for (std::size_t j = i + 1; j < group.size(); ++j) {
        const VertexId cand = group[j];
        if (assigned[cand]) continue;
        bool ok = true;
        for (VertexId member : cls) {
          if (!weighted_twins(g, member, cand, wtol)) {
            ok = false;
            break;
          }
          if (adjacent) {
            const double a = g.weight(member, cand);
            if (internal && !close(*internal, a, wtol)) {
              ok = false;
              break;
            }
          }
        }
        if (!ok) continue;
        if (adjacent && !internal) internal = g.weight(seed, cand);
        cls.push_back(cand);
      }
      if (cls.size() < 2) continue;
      for (VertexId v : cls) assigned[v] = true;
      stars.push_back(make_star(g, std::move(cls), adjacent));
    }
  };
  for (const auto& [key, group] : open_groups) split_group(group, false);
  for (const auto& [key, group] : closed_groups) split_group(group, true);

  for (VertexId v = 0; v < n; ++v)
    if (!assigned[v] && g.has_loop(v)) stars.push_back(make_star(g, {v}, false));

  std::sort(stars.begin(), stars.end(), [](const Star& a, const Star& b) { return a.v1.front() < b.v1.front(); });
  return stars;
}

StarMetrics star_metrics(const Star& star) {
  StarMetrics m;
  m.degree = star.v1.empty() ? 0 : star.v1.size() - 1;
  m.central_weight_edge = star.s == 1 ? star.internal_weight : 0.0;
  m.loop_weight = star.looped ? star.loop_weight : 0.0;
  double b = 0.0;
  for (double x : star.edge_weight_to_v2) b += x;
  m.weight = m.loop_weight + static_cast<double>(m.degree) * m.central_weight_edge + b;
  return m;
}

StarValidation validate_star(const WeightedGraph& g, const Star& star, double wtol) {
  StarValidation out;
  auto fail = [&](std::string msg) {
    if (std::find(out.violations.begin(), out.violations.end(), msg) == out.violations.end())
      out.violations.push_back(std::move(msg));
  };

  const std::size_t n = g.order();
  if (star.v1.empty()) fail("empty V1");
  for (VertexId v : star.v1)
    if (v >= n) fail("vertex index out of range");
  for (VertexId v : star.v2)
    if (v >= n) fail("vertex index out of range");
  if (star.edge_weight_to_v2.size() != star.v2.size()) fail("V2 weight list length mismatch");
  if (!out.violations.empty()) {
    out.valid = false;
    return out;
  }

  std::vector<int> role(n, 0);  // 1 = V1, 2 = V2
  for (VertexId v : star.v1) {
    if (role[v] == 1) fail("repeated V1 vertex");
    role[v] = 1;
  }
  for (VertexId v : star.v2) {
    if (role[v] == 1) fail("V1 and V2 intersect");
    role[v] = 2;
  }

  const double expected_loop = star.looped ? star.loop_weight : 0.0;
  for (std::size_t idx = 0; idx < star.v1.size(); ++idx) {
    const VertexId i = star.v1[idx];
    if (!close(g.loop_weight(i), expected_loop, wtol) || g.has_loop(i) != star.looped) fail("loop mismatch");

    for (std::size_t j = 0; j < star.v2.size(); ++j) {
      const double w = g.weight(i, star.v2[j]);
      if (w == 0.0)
        fail("missing V1-V2 edge");
      else if (!close(w, star.edge_weight_to_v2[j], wtol))
        fail("nonuniform V2 weight");
    }
    for (std::size_t jdx = idx + 1; jdx < star.v1.size(); ++jdx) {
      const double w = g.weight(i, star.v1[jdx]);
      if (star.s == 1) {
        if (w == 0.0)
          fail("missing V1 internal edge");
        else if (!close(w, star.internal_weight, wtol))
          fail("nonuniform internal weight");
      } else if (w != 0.0) {
        fail("unexpected V1 internal edge");
      }
    }
    for (const auto& nb : g.neighbors(i))
      if (role[nb.vertex] == 0) fail("external edge from V1");
  }
  out.valid = out.violations.empty();
  return out;
}

}  // namespace starloop
