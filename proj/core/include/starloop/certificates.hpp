#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "starloop/graph.hpp"
#include "starloop/spectra.hpp"
#include "starloop/stars.hpp"

namespace starloop {

/// Eigenvalue forced by the star's difference vectors for the given matrix:
///   laplacian            w + a
///   adjacency            l - a
///   signless             w - a
///   normalized_laplacian 1 + a/w
///   transition           (l - a)/w
/// Laplacian kinds reject looped stars with LoopsNotSupported.
double predicted_eigenvalue(const StarMetrics& metrics, bool looped, MatrixKind kind);

/// e_{v1[0]} - e_{v1[t]} for t = 1..m-1; throws DegenerateStar when m < 2.
std::vector<Vector> difference_eigenvectors(const Star& star, std::size_t n);

struct CertifyOptions {
  double residual_tol = tolerance::residual;
  double cluster_tol = tolerance::cluster;
  double match_tol = tolerance::containment;
  double weight_tol = kDefaultWeightTolerance;
};

struct Prediction {
  MatrixKind kind = MatrixKind::generic;
  double value = 0.0;
  std::size_t required = 0;  // sum of star degrees sharing the value
  std::size_t observed = 0;
  double max_residual = 0.0;
  bool pass = false;
  std::vector<Star> stars;
};

struct CertificateReport {
  MatrixKind kind = MatrixKind::generic;
  std::vector<Prediction> predictions;  // ascending by value
  std::vector<std::string> variance_notes;
  CertifyOptions options;

  bool pass() const noexcept;
};

CertificateReport certify(const WeightedGraph& g, MatrixKind kind, const CertifyOptions& options = {});

}  // namespace starloop
