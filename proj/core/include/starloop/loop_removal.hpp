#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "starloop/graph.hpp"
#include "starloop/matrix.hpp"
#include "starloop/spectra.hpp"
#include "starloop/stars.hpp"

namespace starloop {

/// How weights are rescaled when a star is collapsed or a looped vertex is
/// expanded into a clique.
///  - adjacency_exact: the class partition is equitable for A and the
///    orthonormal lift K satisfies K^T A_large K = A_small.
///  - transition_exact: the replication lift satisfies T_large K = K T_small.
///  - literal: the constants m/(m-q) and 1/(1+q) applied as printed; kept to
///    reproduce the containment failures they cause.
enum class ScalingMode { adjacency_exact, transition_exact, literal };

std::string_view to_string(ScalingMode mode) noexcept;
std::optional<ScalingMode> parse_scaling_mode(std::string_view name) noexcept;

enum class Normalization { orthonormal, replication };

std::string_view to_string(Normalization n) noexcept;

/// Diagonal of K~^T K~: the size of each class of the partition.
struct MassMatrix {
  Vector diagonal;
};

/// Maps eigenvectors of the smaller graph onto the larger one. Each row has
/// exactly one nonzero, in the column of the class the row vertex belongs to.
class LiftingMatrix {
 public:
  LiftingMatrix() = default;
  /// partition[v] is the small-graph vertex that large-graph vertex v maps to.
  LiftingMatrix(std::vector<VertexId> partition, std::size_t small_order, Normalization normalization);

  static LiftingMatrix identity(std::size_t n, Normalization normalization);
  /// Rebuilds a lifting from its dense form; throws DimensionError unless every
  /// row has exactly one nonzero.
  static LiftingMatrix from_entries(const Matrix& entries, Normalization normalization);

  std::size_t large_order() const noexcept { return partition_.size(); }
  std::size_t small_order() const noexcept { return small_order_; }
  Normalization normalization() const noexcept { return normalization_; }
  const std::vector<VertexId>& partition() const noexcept { return partition_; }
  /// The single nonzero of each row.
  const Vector& row_values() const noexcept { return row_values_; }
  Matrix entries() const;

  MassMatrix mass() const;
  /// 0/1 class indicator matrix K~.
  Matrix characteristic() const;
  /// K~ M^{-1/2}, columns orthonormal.
  Matrix orthonormal() const;

  Vector lift(std::span<const double> v) const;

  /// The product this * inner, i.e. inner applied first.
  LiftingMatrix compose(const LiftingMatrix& inner) const;

 private:
  std::vector<VertexId> partition_;
  std::size_t small_order_ = 0;
  Normalization normalization_ = Normalization::orthonormal;
  Vector row_values_;
};

Normalization lifting_normalization(ScalingMode mode) noexcept;

struct Transformation {
  WeightedGraph graph;
  LiftingMatrix lifting;
};

/// Collapses V1 of `star` to m - q vertices (classes of t = m/(m-q) vertices).
/// With a, l, b_j the star's internal, loop and V2 weights:
///   literal          loop' = (q/(m-q)) a + l, intra' = t a, b' = t b
///   adjacency_exact  loop' = (t-1) a + l,     intra' = t a, b' = sqrt(t) b
///   transition_exact (q = m-1 only) loop' = m (l + (m-1) a), b' = m b
/// The lifting maps the reduced graph (columns) onto g (rows).
Transformation reduce_star(const WeightedGraph& g, const Star& star, std::size_t q, ScalingMode mode);

/// Replaces looped vertex v (loop l, edges b_j) by 1+q loopless mutually
/// adjacent copies; copies are appended after the existing vertices.
///   literal          intra = l/q,          edge = b/(1+q)
///   adjacency_exact  intra = l/q,          edge = b/sqrt(1+q)
///   transition_exact intra = l/(q(1+q)),   edge = b/(1+q)
Transformation enlarge_looped_vertex(const WeightedGraph& g, VertexId v, std::size_t q, ScalingMode mode);

struct DeloopResult {
  WeightedGraph graph;
  LiftingMatrix lifting;  // rows: graph, columns: original
  ScalingMode mode = ScalingMode::adjacency_exact;
  std::size_t q = 1;
  /// provenance[v] lists the output vertices standing for original vertex v.
  std::vector<std::vector<VertexId>> provenance;
  std::size_t loops_removed = 0;
};

/// Enlarges every looped vertex in ascending index order.
DeloopResult deloop(const WeightedGraph& g, std::size_t q = 1, ScalingMode mode = ScalingMode::adjacency_exact);

struct VerifyOptions {
  double containment = tolerance::containment;
  double orthonormality = 1e-12;
  double identity = 1e-10;
  double residual = 1e-8;
  double interlacing = 1e-8;
};

struct DomainCheck {
  MatrixKind domain = MatrixKind::adjacency;
  Spectrum small_spectrum;
  Spectrum large_spectrum;
  ContainmentReport containment;
  /// max |K^T K - I|; only for orthonormal lifts.
  std::optional<double> orthonormality_error;
  /// adjacency: max |K^T A_large K - A_small|; transition: max |T_large K~ - K~ T_small|.
  double identity_error = 0.0;
  double max_lift_residual = 0.0;
  InterlacingReport interlacing;
  bool pass = false;
};

struct VerificationReport {
  ScalingMode mode = ScalingMode::adjacency_exact;
  std::vector<DomainCheck> checks;
  bool pass = false;
};

/// Checks that `small` embeds spectrally in `large` through `lifting`, in the
/// matrix domain(s) the mode is exact for (both for literal).
VerificationReport verify_transformation(const WeightedGraph& large, const WeightedGraph& small,
                                         const LiftingMatrix& lifting, ScalingMode mode,
                                         const VerifyOptions& options = {});

VerificationReport verify_removal(const WeightedGraph& original, const DeloopResult& result,
                                  const VerifyOptions& options = {});

VerificationReport verify_reduction(const WeightedGraph& original, const Transformation& reduced, ScalingMode mode,
                                    const VerifyOptions& options = {});

struct CorrespondenceCheck {
  double transition_value = 0.0;
  double laplacian_value = 0.0;
  double gap = 0.0;       // distance to the matched normalized-Laplacian eigenvalue
  double residual = 0.0;  // of D^{1/2} K~ v against the delooped normalized Laplacian
};

struct LoopedCorrespondence {
  std::vector<CorrespondenceCheck> checked;
  std::vector<double> excluded;
  double max_gap = 0.0;
  double max_residual = 0.0;
  bool pass = false;
};

struct LoopedLaplacian {
  SymmetricMatrix matrix;  // Laplacian (adjacency_exact) or normalized Laplacian (transition_exact)
  DeloopResult deloop;
  std::optional<LoopedCorrespondence> correspondence;  // transition_exact only
};

/// Deloops g and returns a Laplacian for the loopless result. For
/// transition_exact, also checks that each transition eigenvalue lambda of g
/// (other than the star values (l - a)/w) reappears as 1 - lambda.
LoopedLaplacian laplacian_of_looped_graph(const WeightedGraph& g, ScalingMode mode, std::size_t q = 1,
                                          double tol = tolerance::containment);

}  // namespace starloop
