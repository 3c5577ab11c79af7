#include "starloop/certificates.hpp"

#include <algorithm>
#include <cmath>

#include "starloop/errors.hpp"

namespace starloop {
namespace {

Matrix kind_matrix(const WeightedGraph& g, MatrixKind kind) {
  switch (kind) {
    case MatrixKind::adjacency: return adjacency_matrix(g).to_dense();
    case MatrixKind::laplacian: return laplacian(g).to_dense();
    case MatrixKind::signless: return signless_laplacian(g).to_dense();
    case MatrixKind::normalized_laplacian: return normalized_laplacian(g).to_dense();
    case MatrixKind::transition: return transition_matrix(g);
    case MatrixKind::generic: break;
  }
  throw Error(ErrorKind::InvalidArgument, "certificates need a concrete matrix kind");
}

constexpr const char* kLoopSignNote =
    "looped stars: adjacency eigenvalue taken as loop - a; adding the loop to the central weight "
    "(w_c = a + loop) would predict -(a + loop), which the difference vectors contradict";
constexpr const char* kTransitionSignNote =
    "loopless stars: transition eigenvalue taken as -a/w (the normalized-Laplacian value 1 + a/w maps "
    "to 1 - lambda), not +a/w";

}  // namespace

double predicted_eigenvalue(const StarMetrics& metrics, bool looped, MatrixKind kind) {
  const double w = metrics.weight;
  const double a = metrics.central_weight_edge;
  const double l = looped ? metrics.loop_weight : 0.0;
  switch (kind) {
    case MatrixKind::laplacian:
    case MatrixKind::signless:
    case MatrixKind::normalized_laplacian:
      if (looped)
        throw Error(ErrorKind::LoopsNotSupported,
                    std::string(to_string(kind)) + " predictions are undefined for looped stars");
      if (kind == MatrixKind::laplacian) return w + a;
      if (kind == MatrixKind::signless) return w - a;
      return 1.0 + a / w;
    case MatrixKind::adjacency: return l - a;
    case MatrixKind::transition: return (l - a) / w;
    case MatrixKind::generic: break;
  }
  throw Error(ErrorKind::InvalidArgument, "predictions need a concrete matrix kind");
}

std::vector<Vector> difference_eigenvectors(const Star& star, std::size_t n) {
  if (star.m() < 2) throw Error(ErrorKind::DegenerateStar, "a star needs at least two inner vertices");
  std::vector<Vector> out;
  out.reserve(star.m() - 1);
  for (std::size_t t = 1; t < star.m(); ++t) {
    if (star.v1[t] >= n || star.v1[0] >= n) throw Error(ErrorKind::DimensionError, "star vertex out of range");
    Vector x(n, 0.0);
    x[star.v1[0]] = 1.0;
    x[star.v1[t]] = -1.0;
    out.push_back(std::move(x));
  }
  return out;
}

bool CertificateReport::pass() const noexcept {
  return std::all_of(predictions.begin(), predictions.end(), [](const Prediction& p) { return p.pass; });
}

CertificateReport certify(const WeightedGraph& g, MatrixKind kind, const CertifyOptions& options) {
  const Matrix matrix = kind_matrix(g, kind);
  const Spectrum spectrum = graph_spectrum(g, kind);
  const MultiplicitySet clusters = cluster_multiplicities(spectrum, options.cluster_tol);
  const double residual_threshold = options.residual_tol * std::max(1.0, matrix.infinity_norm());

  struct Candidate {
    double value;
    Star star;
  };
  std::vector<Candidate> candidates;
  for (auto& star : find_stars(g, options.weight_tol)) {
    if (star.m() < 2) continue;
    const double value = predicted_eigenvalue(star_metrics(star), star.looped, kind);
    candidates.push_back({value, std::move(star)});
  }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const Candidate& a, const Candidate& b) { return a.value < b.value; });

  double scale = 1.0;
  for (const auto& c : candidates) scale = std::max(scale, std::abs(c.value));
  const double group_gap = options.cluster_tol * scale;

  CertificateReport report;
  report.kind = kind;
  report.options = options;
  bool loop_note = false;
  bool transition_note = false;

  for (std::size_t i = 0; i < candidates.size();) {
    std::size_t j = i + 1;
    while (j < candidates.size() && candidates[j].value - candidates[j - 1].value <= group_gap) ++j;

    Prediction p;
    p.kind = kind;
    double sum = 0.0;
    for (std::size_t t = i; t < j; ++t) {
      const auto& c = candidates[t];
      sum += c.value;
      p.required += c.star.m() - 1;
      for (const auto& x : difference_eigenvectors(c.star, g.order()))
        p.max_residual = std::max(p.max_residual, eigenpair_residual(matrix, x, c.value));
      loop_note = loop_note || (c.star.looped && kind == MatrixKind::adjacency);
      transition_note = transition_note || (!c.star.looped && c.star.s == 1 && kind == MatrixKind::transition);
      p.stars.push_back(c.star);
    }
    p.value = sum / static_cast<double>(j - i);
    if (const Cluster* hit = clusters.find(p.value, options.match_tol * spectrum.scale())) p.observed = hit->multiplicity;
    p.pass = p.observed >= p.required && p.max_residual <= residual_threshold;
    report.predictions.push_back(std::move(p));
    i = j;
  }
  if (loop_note) report.variance_notes.emplace_back(kLoopSignNote);
  if (transition_note) report.variance_notes.emplace_back(kTransitionSignNote);
  return report;
}

}  // namespace starloop
