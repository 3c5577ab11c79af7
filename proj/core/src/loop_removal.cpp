#include "starloop/loop_removal.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_set>

#include "starloop/certificates.hpp"
#include "starloop/errors.hpp"

namespace starloop {
namespace {

std::string unique_label(const std::unordered_set<std::string>& taken, const std::string& base, std::size_t copy) {
  std::string label = base + "#" + std::to_string(copy);
  while (taken.count(label) != 0) label += "'";
  return label;
}

double max_weight(const WeightedGraph& g) {
  double m = 1.0;
  for (const auto& e : g.edges()) m = std::max(m, e.w);
  return m;
}

void add_edge(std::vector<WeightedGraph::Edge>& edges, VertexId u, VertexId v, double w) {
  if (w > 0.0) edges.push_back({u, v, w});
}

DomainCheck check_adjacency(const WeightedGraph& large, const WeightedGraph& small, const LiftingMatrix& lifting,
                            const VerifyOptions& options) {
  DomainCheck check;
  check.domain = MatrixKind::adjacency;
  const auto a_large = adjacency_matrix(large).to_dense();
  const auto a_small = adjacency_matrix(small).to_dense();
  check.large_spectrum = sym_eigen(adjacency_matrix(large), tolerance::jacobi, MatrixKind::adjacency);
  check.small_spectrum = sym_eigen(adjacency_matrix(small), tolerance::jacobi, MatrixKind::adjacency);
  check.containment = spectrum_contains(check.small_spectrum, check.large_spectrum, options.containment);

  const Matrix k =
      lifting.normalization() == Normalization::orthonormal ? lifting.entries() : lifting.orthonormal();
  const Matrix kt = k.transpose();
  check.orthonormality_error = max_abs_diff(kt * k, Matrix::identity(small.order()));
  check.identity_error = max_abs_diff(kt * a_large * k, a_small);
  for (std::size_t i = 0; i < check.small_spectrum.order(); ++i) {
    const Vector lifted = k.apply(check.small_spectrum.vectors[i]);
    check.max_lift_residual =
        std::max(check.max_lift_residual, eigenpair_residual(a_large, lifted, check.small_spectrum.values[i]));
  }
  if (small.order() < large.order()) {
    check.interlacing = check_interlacing(check.large_spectrum, check.small_spectrum,
                                          options.interlacing * check.large_spectrum.scale());
  } else {
    check.interlacing = {true, true, 0.0};
  }
  check.pass = check.containment.contained && *check.orthonormality_error <= options.orthonormality &&
               check.identity_error <= options.identity && check.max_lift_residual <= options.residual &&
               check.interlacing.interlaces;
  return check;
}

DomainCheck check_transition(const WeightedGraph& large, const WeightedGraph& small, const LiftingMatrix& lifting,
                             const VerifyOptions& options) {
  DomainCheck check;
  check.domain = MatrixKind::transition;
  const auto t_large = transition_matrix(large);
  const auto t_small = transition_matrix(small);
  check.large_spectrum = transition_spectrum(large);
  check.small_spectrum = transition_spectrum(small);
  check.containment = spectrum_contains(check.small_spectrum, check.large_spectrum, options.containment);

  const Matrix k =
      lifting.normalization() == Normalization::replication ? lifting.entries() : lifting.characteristic();
  check.identity_error = max_abs_diff(t_large * k, k * t_small);
  for (std::size_t i = 0; i < check.small_spectrum.order(); ++i) {
    const Vector lifted = k.apply(check.small_spectrum.vectors[i]);
    check.max_lift_residual =
        std::max(check.max_lift_residual, eigenpair_residual(t_large, lifted, check.small_spectrum.values[i]));
  }
  // The transition spectra are those of the symmetric D^{-1/2} A D^{-1/2}, which
  // compress through D^{1/2} K~ D^{-1/2}, so interlacing applies here too.
  if (small.order() < large.order()) {
    check.interlacing = check_interlacing(check.large_spectrum, check.small_spectrum, options.interlacing);
  } else {
    check.interlacing = {true, true, 0.0};
  }
  check.pass = check.containment.contained && check.identity_error <= options.identity &&
               check.max_lift_residual <= options.residual && check.interlacing.interlaces;
  return check;
}

}  // namespace

std::string_view to_string(ScalingMode mode) noexcept {
  switch (mode) {
    case ScalingMode::adjacency_exact: return "adjacency_exact";
    case ScalingMode::transition_exact: return "transition_exact";
    case ScalingMode::literal: return "paper_literal";
  }
  return "adjacency_exact";
}

std::optional<ScalingMode> parse_scaling_mode(std::string_view name) noexcept {
  if (name == "adjacency_exact") return ScalingMode::adjacency_exact;
  if (name == "transition_exact") return ScalingMode::transition_exact;
  if (name == "paper_literal" || name == "literal") return ScalingMode::literal;
  return std::nullopt;
}

std::string_view to_string(Normalization n) noexcept {
  return n == Normalization::orthonormal ? "orthonormal" : "replication";
}

Normalization lifting_normalization(ScalingMode mode) noexcept {
  return mode == ScalingMode::transition_exact ? Normalization::replication : Normalization::orthonormal;
}

LiftingMatrix::LiftingMatrix(std::vector<VertexId> partition, std::size_t small_order, Normalization normalization)
    : partition_(std::move(partition)), small_order_(small_order), normalization_(normalization) {
  for (VertexId c : partition_)
    if (c >= small_order_) throw Error(ErrorKind::DimensionError, "partition refers to a missing class");
  row_values_.assign(partition_.size(), 1.0);
  if (normalization_ == Normalization::orthonormal) {
    const auto m = mass();
    for (std::size_t v = 0; v < partition_.size(); ++v) row_values_[v] = 1.0 / std::sqrt(m.diagonal[partition_[v]]);
  }
}

Matrix LiftingMatrix::entries() const {
  Matrix k(partition_.size(), small_order_);
  for (std::size_t v = 0; v < partition_.size(); ++v) k(v, partition_[v]) = row_values_[v];
  return k;
}

Vector LiftingMatrix::lift(std::span<const double> v) const {
  if (v.size() != small_order_) throw Error(ErrorKind::DimensionError, "vector does not match the lifting");
  Vector out(partition_.size());
  for (std::size_t r = 0; r < partition_.size(); ++r) out[r] = row_values_[r] * v[partition_[r]];
  return out;
}

LiftingMatrix LiftingMatrix::identity(std::size_t n, Normalization normalization) {
  std::vector<VertexId> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = i;
  return LiftingMatrix(std::move(p), n, normalization);
}

LiftingMatrix LiftingMatrix::from_entries(const Matrix& entries, Normalization normalization) {
  LiftingMatrix out;
  out.small_order_ = entries.cols();
  out.normalization_ = normalization;
  for (std::size_t r = 0; r < entries.rows(); ++r) {
    std::size_t nonzeros = 0;
    for (std::size_t c = 0; c < entries.cols(); ++c) {
      if (entries(r, c) == 0.0) continue;
      ++nonzeros;
      out.partition_.push_back(c);
      out.row_values_.push_back(entries(r, c));
    }
    if (nonzeros != 1)
      throw Error(ErrorKind::DimensionError, "lifting row " + std::to_string(r) + " must have exactly one nonzero");
  }
  return out;
}

MassMatrix LiftingMatrix::mass() const {
  MassMatrix m{Vector(small_order_, 0.0)};
  for (VertexId c : partition_) m.diagonal[c] += 1.0;
  return m;
}

Matrix LiftingMatrix::characteristic() const {
  Matrix k(partition_.size(), small_order_);
  for (std::size_t v = 0; v < partition_.size(); ++v) k(v, partition_[v]) = 1.0;
  return k;
}

Matrix LiftingMatrix::orthonormal() const {
  const auto m = mass();
  Matrix k(partition_.size(), small_order_);
  for (std::size_t v = 0; v < partition_.size(); ++v) k(v, partition_[v]) = 1.0 / std::sqrt(m.diagonal[partition_[v]]);
  return k;
}

LiftingMatrix LiftingMatrix::compose(const LiftingMatrix& inner) const {
  if (inner.large_order() != small_order_)
    throw Error(ErrorKind::DimensionError, "lifting matrices do not chain");
  if (inner.normalization() != normalization_)
    throw Error(ErrorKind::InvalidArgument, "cannot compose liftings with different normalizations");
  LiftingMatrix out;
  out.small_order_ = inner.small_order_;
  out.normalization_ = normalization_;
  out.partition_.resize(partition_.size());
  out.row_values_.resize(partition_.size());
  for (std::size_t v = 0; v < partition_.size(); ++v) {
    const VertexId mid = partition_[v];
    out.partition_[v] = inner.partition_[mid];
    out.row_values_[v] = row_values_[v] * inner.row_values_[mid];
  }
  return out;
}

Transformation reduce_star(const WeightedGraph& g, const Star& star, std::size_t q, ScalingMode mode) {
  const std::size_t m = star.m();
  if (q < 1 || q >= m)
    throw Error(ErrorKind::InvalidReduction,
                "q = " + std::to_string(q) + " must satisfy 1 <= q < m = " + std::to_string(m));
  const std::size_t kept = m - q;
  if (m % kept != 0)
    throw Error(ErrorKind::NotEquitable, std::to_string(m) + " inner vertices cannot form " +
                                             std::to_string(kept) + " equal classes");
  if (mode == ScalingMode::transition_exact && q != m - 1)
    throw Error(ErrorKind::UnsupportedMode, "transition_exact reduction only collapses the whole class (q = m-1)");
  const auto check = validate_star(g, star, kDefaultWeightTolerance * max_weight(g));
  if (!check.valid) throw Error(ErrorKind::InvalidArgument, "star is not valid in this graph: " + check.violations.front());

  const double t = static_cast<double>(m / kept);
  const double a = star.s == 1 ? star.internal_weight : 0.0;
  const double l = star.looped ? star.loop_weight : 0.0;
  double loop_new = 0.0;
  double intra_new = 0.0;
  double edge_scale = 1.0;
  switch (mode) {
    case ScalingMode::literal:
      loop_new = static_cast<double>(q) / static_cast<double>(kept) * a + l;
      intra_new = t * a;
      edge_scale = t;
      break;
    case ScalingMode::adjacency_exact:
      loop_new = (t - 1.0) * a + l;
      intra_new = t * a;
      edge_scale = std::sqrt(t);
      break;
    case ScalingMode::transition_exact:
      loop_new = static_cast<double>(m) * (l + static_cast<double>(m - 1) * a);
      edge_scale = static_cast<double>(m);
      break;
  }

  // Consecutive blocks of t members of V1 form the classes; each class keeps its first member.
  const std::size_t n = g.order();
  const std::size_t class_size = m / kept;
  std::vector<long> class_of(n, -1);
  std::vector<bool> removed(n, false);
  std::vector<VertexId> representatives;
  for (std::size_t i = 0; i < m; ++i) {
    class_of[star.v1[i]] = static_cast<long>(i / class_size);
    if (i % class_size == 0)
      representatives.push_back(star.v1[i]);
    else
      removed[star.v1[i]] = true;
  }

  std::vector<VertexId> new_index(n, 0);
  std::vector<std::string> labels;
  for (VertexId v = 0; v < n; ++v) {
    if (removed[v]) continue;
    new_index[v] = labels.size();
    labels.push_back(g.label(v));
  }

  std::vector<WeightedGraph::Edge> edges;
  for (const auto& e : g.edges())
    if (class_of[e.u] < 0 && class_of[e.v] < 0) edges.push_back({new_index[e.u], new_index[e.v], e.w});
  for (std::size_t c = 0; c < representatives.size(); ++c) {
    const VertexId r = new_index[representatives[c]];
    add_edge(edges, r, r, loop_new);
    for (std::size_t d = c + 1; d < representatives.size(); ++d) add_edge(edges, r, new_index[representatives[d]], intra_new);
    for (std::size_t j = 0; j < star.v2.size(); ++j)
      add_edge(edges, r, new_index[star.v2[j]], edge_scale * star.edge_weight_to_v2[j]);
  }

  std::vector<VertexId> partition(n);
  for (VertexId v = 0; v < n; ++v)
    partition[v] = class_of[v] < 0 ? new_index[v] : new_index[representatives[static_cast<std::size_t>(class_of[v])]];

  return {WeightedGraph(std::move(labels), std::move(edges)),
          LiftingMatrix(std::move(partition), n - q, lifting_normalization(mode))};
}

Transformation enlarge_looped_vertex(const WeightedGraph& g, VertexId v, std::size_t q, ScalingMode mode) {
  if (v >= g.order()) throw Error(ErrorKind::DimensionError, "vertex index out of range");
  if (!g.has_loop(v)) throw Error(ErrorKind::NoLoop, "vertex '" + g.label(v) + "' has no loop");
  if (q < 1) throw Error(ErrorKind::InvalidEnlargement, "q must be at least 1");

  const double l = g.loop_weight(v);
  const double copies = static_cast<double>(q + 1);
  double intra = l / static_cast<double>(q);
  double edge_scale = 1.0 / copies;
  switch (mode) {
    case ScalingMode::literal: break;
    case ScalingMode::adjacency_exact: edge_scale = 1.0 / std::sqrt(copies); break;
    case ScalingMode::transition_exact: intra = l / (static_cast<double>(q) * copies); break;
  }

  const std::size_t n = g.order();
  std::vector<std::string> labels = g.labels();
  std::unordered_set<std::string> taken(labels.begin(), labels.end());
  std::vector<VertexId> cls{v};
  for (std::size_t c = 1; c <= q; ++c) {
    auto label = unique_label(taken, g.label(v), c);
    taken.insert(label);
    cls.push_back(labels.size());
    labels.push_back(std::move(label));
  }

  std::vector<WeightedGraph::Edge> edges;
  for (const auto& e : g.edges())
    if (e.u != v && e.v != v) edges.push_back(e);
  for (const auto& nb : g.neighbors(v))
    for (VertexId c : cls) add_edge(edges, c, nb.vertex, nb.w * edge_scale);
  for (std::size_t i = 0; i < cls.size(); ++i)
    for (std::size_t j = i + 1; j < cls.size(); ++j) add_edge(edges, cls[i], cls[j], intra);

  std::vector<VertexId> partition(n + q);
  for (VertexId u = 0; u < n; ++u) partition[u] = u;
  for (std::size_t c = 1; c <= q; ++c) partition[n + c - 1] = v;

  return {WeightedGraph(std::move(labels), std::move(edges)),
          LiftingMatrix(std::move(partition), n, lifting_normalization(mode))};
}

DeloopResult deloop(const WeightedGraph& g, std::size_t q, ScalingMode mode) {
  if (q < 1) throw Error(ErrorKind::InvalidEnlargement, "q must be at least 1");
  DeloopResult result;
  result.mode = mode;
  result.q = q;
  result.graph = g;
  result.lifting = LiftingMatrix::identity(g.order(), lifting_normalization(mode));
  // Copies are appended and created loopless, so original indices stay valid
  // and no vertex is processed twice.
  for (VertexId v : g.looped_vertices()) {
    auto step = enlarge_looped_vertex(result.graph, v, q, mode);
    result.lifting = step.lifting.compose(result.lifting);
    result.graph = std::move(step.graph);
    ++result.loops_removed;
  }
  result.provenance.assign(g.order(), {});
  const auto& p = result.lifting.partition();
  for (VertexId u = 0; u < p.size(); ++u) result.provenance[p[u]].push_back(u);
  return result;
}

VerificationReport verify_transformation(const WeightedGraph& large, const WeightedGraph& small,
                                         const LiftingMatrix& lifting, ScalingMode mode,
                                         const VerifyOptions& options) {
  if (lifting.large_order() != large.order() || lifting.small_order() != small.order())
    throw Error(ErrorKind::DimensionError, "lifting matrix is " + std::to_string(lifting.large_order()) + "x" +
                                               std::to_string(lifting.small_order()) + " but graphs have orders " +
                                               std::to_string(large.order()) + " and " + std::to_string(small.order()));
  VerificationReport report;
  report.mode = mode;
  if (mode != ScalingMode::transition_exact) report.checks.push_back(check_adjacency(large, small, lifting, options));
  if (mode != ScalingMode::adjacency_exact) report.checks.push_back(check_transition(large, small, lifting, options));
  report.pass = std::all_of(report.checks.begin(), report.checks.end(), [](const DomainCheck& c) { return c.pass; });
  return report;
}

VerificationReport verify_removal(const WeightedGraph& original, const DeloopResult& result,
                                  const VerifyOptions& options) {
  return verify_transformation(result.graph, original, result.lifting, result.mode, options);
}

VerificationReport verify_reduction(const WeightedGraph& original, const Transformation& reduced, ScalingMode mode,
                                    const VerifyOptions& options) {
  return verify_transformation(original, reduced.graph, reduced.lifting, mode, options);
}

LoopedLaplacian laplacian_of_looped_graph(const WeightedGraph& g, ScalingMode mode, std::size_t q, double tol) {
  if (!g.has_loops()) throw Error(ErrorKind::NothingToDo, "graph has no loops");
  if (mode == ScalingMode::literal)
    throw Error(ErrorKind::UnsupportedMode, "a Laplacian of a looped graph needs an exact scaling mode");

  LoopedLaplacian out;
  out.deloop = deloop(g, q, mode);
  if (mode == ScalingMode::adjacency_exact) {
    out.matrix = laplacian(out.deloop.graph);
    return out;
  }

  out.matrix = normalized_laplacian(out.deloop.graph);
  LoopedCorrespondence corr;
  for (const auto& star : find_stars(g)) {
    if (star.m() < 2) continue;
    corr.excluded.push_back(predicted_eigenvalue(star_metrics(star), star.looped, MatrixKind::transition));
  }
  std::sort(corr.excluded.begin(), corr.excluded.end());
  corr.excluded.erase(std::unique(corr.excluded.begin(), corr.excluded.end()), corr.excluded.end());

  const auto t = transition_spectrum(g);
  const auto lap_spectrum = sym_eigen(out.matrix, tolerance::jacobi, MatrixKind::normalized_laplacian);
  const auto lap = out.matrix.to_dense();
  const auto d_large = strength_matrix(out.deloop.graph).diagonal;
  const Matrix k = out.deloop.lifting.characteristic();

  Vector mapped;
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < t.order(); ++i) {
    const bool excluded = std::any_of(corr.excluded.begin(), corr.excluded.end(),
                                      [&](double x) { return std::abs(x - t.values[i]) <= tol; });
    if (excluded) continue;
    kept.push_back(i);
    mapped.push_back(1.0 - t.values[i]);
  }
  const auto match = spectrum_contains(std::span<const double>(mapped), std::span<const double>(lap_spectrum.values), tol);
  std::vector<double> gap_of(mapped.size(), 0.0);
  for (const auto& pair : match.pairs) gap_of[pair.small_index] = pair.gap;

  for (std::size_t idx = 0; idx < kept.size(); ++idx) {
    const std::size_t i = kept[idx];
    Vector x = k.apply(t.vectors[i]);
    for (std::size_t j = 0; j < x.size(); ++j) x[j] *= std::sqrt(d_large[j]);
    CorrespondenceCheck c{t.values[i], mapped[idx], gap_of[idx], eigenpair_residual(lap, x, mapped[idx])};
    corr.max_gap = std::max(corr.max_gap, c.gap);
    corr.max_residual = std::max(corr.max_residual, c.residual);
    corr.checked.push_back(c);
  }
  corr.pass = corr.max_gap <= tol && corr.max_residual <= tol;
  out.correspondence = std::move(corr);
  return out;
}

}  // namespace starloop
