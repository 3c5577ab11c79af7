#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "starloop/graph.hpp"
#include "starloop/matrix.hpp"

namespace starloop {

enum class MatrixKind { adjacency, laplacian, signless, normalized_laplacian, transition, generic };

std::string_view to_string(MatrixKind kind) noexcept;
/// Accepts the canonical names plus the short forms "signless_laplacian" and "normalized".
std::optional<MatrixKind> parse_matrix_kind(std::string_view name) noexcept;

namespace tolerance {
inline constexpr double jacobi = 1e-12;
inline constexpr double residual = 1e-9;
inline constexpr double cluster = 1e-9;
inline constexpr double containment = 1e-8;
}  // namespace tolerance

struct Spectrum {
  Vector values;               // ascending
  std::vector<Vector> vectors; // vectors[i] pairs with values[i]
  MatrixKind source = MatrixKind::generic;

  std::size_t order() const noexcept { return values.size(); }
  /// max(1, max |value|), the scale all relative tolerances are measured against.
  double scale() const noexcept;
};

struct Cluster {
  double value = 0.0;  // mean of members
  std::size_t multiplicity = 0;
  std::vector<std::size_t> members;
};

struct MultiplicitySet {
  std::vector<Cluster> clusters;

  /// The cluster whose representative lies within `tol` of `value`, if any.
  const Cluster* find(double value, double tol) const;
};

struct MatchedPair {
  std::size_t small_index = 0;
  std::size_t large_index = 0;
  double small_value = 0.0;
  double large_value = 0.0;
  double gap = 0.0;
};

struct ContainmentReport {
  std::vector<MatchedPair> pairs;
  double max_gap = 0.0;
  double threshold = 0.0;  // tol scaled by the large spectrum
  bool contained = true;
};

struct InterlacingReport {
  bool interlaces = true;
  bool tight = false;
  double max_violation = 0.0;
};

struct CorrespondencePair {
  double transition_value = 0.0;
  double laplacian_value = 0.0;
  double residual = 0.0;
};

struct CorrespondenceReport {
  std::vector<CorrespondencePair> pairs;
  double max_residual = 0.0;
  bool pass = true;
};

/// Cyclic Jacobi with threshold sweeps. Converges when the off-diagonal
/// Frobenius norm drops to tol * ||M||_F; at most 100 sweeps.
Spectrum sym_eigen(const SymmetricMatrix& m, double tol = tolerance::jacobi,
                   MatrixKind source = MatrixKind::generic);

/// Spectrum of T = D^{-1}A computed through the similar matrix D^{-1/2}AD^{-1/2};
/// the vectors are unit-length right eigenvectors of T.
Spectrum transition_spectrum(const WeightedGraph& g, double tol = tolerance::jacobi);

/// Spectrum of the matrix of the given kind built from g.
Spectrum graph_spectrum(const WeightedGraph& g, MatrixKind kind, double tol = tolerance::jacobi);

/// Single linkage over the sorted values; gaps <= ctol * scale join a cluster.
MultiplicitySet cluster_multiplicities(const Spectrum& s, double ctol = tolerance::cluster);

ContainmentReport spectrum_contains(std::span<const double> small, std::span<const double> large,
                                    double tol = tolerance::containment);
ContainmentReport spectrum_contains(const Spectrum& small, const Spectrum& large,
                                    double tol = tolerance::containment);

/// Cauchy interlacing of `small` (order n_B) inside `large` (order n_A > n_B).
InterlacingReport check_interlacing(std::span<const double> large, std::span<const double> small, double tol);
InterlacingReport check_interlacing(const Spectrum& large, const Spectrum& small, double tol);

/// ||Mv - lambda v||_2 / ||v||_2.
double eigenpair_residual(const Matrix& m, std::span<const double> v, double lambda);
double eigenpair_residual(const SymmetricMatrix& m, std::span<const double> v, double lambda);

/// Largest eigenpair residual of a spectrum against the matrix it came from.
double max_residual(const Matrix& m, const Spectrum& s);

/// For each right eigenpair (lambda, v) of T, checks that D^{1/2}v is an
/// eigenvector of the normalized Laplacian for 1 - lambda.
CorrespondenceReport normalized_laplacian_correspondence(const WeightedGraph& g,
                                                         double tol = tolerance::residual);

}  // namespace starloop
