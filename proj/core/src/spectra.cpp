#include "starloop/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "starloop/errors.hpp"

namespace starloop {
namespace {

constexpr int kMaxSweeps = 100;

double off_diagonal_norm(const Matrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) s += a(i, j) * a(i, j);
  return std::sqrt(s);
}

// Zero a(p,q) with a Jacobi rotation, accumulating it into v.
void rotate(Matrix& a, Matrix& v, std::size_t p, std::size_t q) {
  const double apq = a(p, q);
  const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
  double t;
  if (std::abs(theta) > 1e150) {
    t = 0.5 / theta;
  } else {
    t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
    if (theta < 0.0) t = -t;
  }
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;
  const double tau = s / (1.0 + c);

  a(p, p) -= t * apq;
  a(q, q) += t * apq;
  a(p, q) = a(q, p) = 0.0;
  const std::size_t n = a.rows();
  for (std::size_t r = 0; r < n; ++r) {
    if (r == p || r == q) continue;
    const double g = a(r, p);
    const double h = a(r, q);
    a(r, p) = a(p, r) = g - s * (h + g * tau);
    a(r, q) = a(q, r) = h + s * (g - h * tau);
  }
  for (std::size_t r = 0; r < n; ++r) {
    const double g = v(r, p);
    const double h = v(r, q);
    v(r, p) = g - s * (h + g * tau);
    v(r, q) = h + s * (g - h * tau);
  }
}

// Largest-magnitude component positive, so output is reproducible.
void fix_sign(Vector& x) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < x.size(); ++i)
    if (std::abs(x[i]) > std::abs(x[best]) * (1.0 + 1e-12)) best = i;
  if (!x.empty() && x[best] < 0.0)
    for (double& e : x) e = -e;
}

Vector sorted_descending(std::span<const double> values) {
  Vector out(values.begin(), values.end());
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

}  // namespace

std::string_view to_string(MatrixKind kind) noexcept {
  switch (kind) {
    case MatrixKind::adjacency: return "adjacency";
    case MatrixKind::laplacian: return "laplacian";
    case MatrixKind::signless: return "signless";
    case MatrixKind::normalized_laplacian: return "normalized_laplacian";
    case MatrixKind::transition: return "transition";
    case MatrixKind::generic: return "generic";
  }
  return "generic";
}

std::optional<MatrixKind> parse_matrix_kind(std::string_view name) noexcept {
  if (name == "adjacency") return MatrixKind::adjacency;
  if (name == "laplacian") return MatrixKind::laplacian;
  if (name == "signless" || name == "signless_laplacian") return MatrixKind::signless;
  if (name == "normalized_laplacian" || name == "normalized") return MatrixKind::normalized_laplacian;
  if (name == "transition") return MatrixKind::transition;
  if (name == "generic") return MatrixKind::generic;
  return std::nullopt;
}

double Spectrum::scale() const noexcept {
  double s = 1.0;
  for (double v : values) s = std::max(s, std::abs(v));
  return s;
}

const Cluster* MultiplicitySet::find(double value, double tol) const {
  const Cluster* best = nullptr;
  for (const auto& c : clusters) {
    const double gap = std::abs(c.value - value);
    if (gap <= tol && (best == nullptr || gap < std::abs(best->value - value))) best = &c;
  }
  return best;
}

Spectrum sym_eigen(const SymmetricMatrix& m, double tol, MatrixKind source) {
  if (!(tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "eigensolver tolerance must be positive");
  if (!m.all_finite()) throw Error(ErrorKind::NumericalError, "matrix has non-finite entries");

  const std::size_t n = m.order();
  Matrix a = m.to_dense();
  Matrix v = Matrix::identity(n);
  const double norm = m.frobenius_norm();
  const double target = tol * norm;
  // Entries at or below this are skipped; if all are, the off norm is already below target.
  const double threshold = n > 0 ? target / static_cast<double>(n) : 0.0;

  bool converged = norm == 0.0 || off_diagonal_norm(a) <= target;
  for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q)
        if (std::abs(a(p, q)) > threshold) rotate(a, v, p, q);
    converged = off_diagonal_norm(a) <= target;
  }
  if (!converged)
    throw Error(ErrorKind::NumericalError, "Jacobi iteration did not converge in " +
                                               std::to_string(kMaxSweeps) + " sweeps");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return a(i, i) < a(j, j); });

  Spectrum out;
  out.source = source;
  out.values.reserve(n);
  out.vectors.reserve(n);
  for (std::size_t idx : order) {
    out.values.push_back(a(idx, idx));
    Vector x(n);
    for (std::size_t r = 0; r < n; ++r) x[r] = v(r, idx);
    fix_sign(x);
    out.vectors.push_back(std::move(x));
  }
  return out;
}

Spectrum transition_spectrum(const WeightedGraph& g, double tol) {
  const auto similar = normalized_adjacency(g);
  const auto d = strength_matrix(g).diagonal;
  Spectrum s = sym_eigen(similar, tol, MatrixKind::transition);
  for (auto& x : s.vectors) {
    for (std::size_t i = 0; i < x.size(); ++i) x[i] /= std::sqrt(d[i]);
    const double len = norm2(x);
    for (double& e : x) e /= len;
    fix_sign(x);
  }
  return s;
}

Spectrum graph_spectrum(const WeightedGraph& g, MatrixKind kind, double tol) {
  switch (kind) {
    case MatrixKind::adjacency: return sym_eigen(adjacency_matrix(g), tol, kind);
    case MatrixKind::laplacian: return sym_eigen(laplacian(g), tol, kind);
    case MatrixKind::signless: return sym_eigen(signless_laplacian(g), tol, kind);
    case MatrixKind::normalized_laplacian: return sym_eigen(normalized_laplacian(g), tol, kind);
    case MatrixKind::transition: return transition_spectrum(g, tol);
    case MatrixKind::generic: break;
  }
  throw Error(ErrorKind::InvalidArgument, "a graph spectrum needs a concrete matrix kind");
}

MultiplicitySet cluster_multiplicities(const Spectrum& s, double ctol) {
  if (!(ctol > 0.0)) throw Error(ErrorKind::InvalidArgument, "clustering tolerance must be positive");
  MultiplicitySet out;
  const double gap = ctol * s.scale();
  for (std::size_t i = 0; i < s.values.size(); ++i) {
    if (out.clusters.empty() || s.values[i] - s.values[i - 1] > gap) out.clusters.emplace_back();
    out.clusters.back().members.push_back(i);
  }
  for (auto& c : out.clusters) {
    c.multiplicity = c.members.size();
    double sum = 0.0;
    for (auto i : c.members) sum += s.values[i];
    c.value = sum / static_cast<double>(c.multiplicity);
  }
  return out;
}

ContainmentReport spectrum_contains(std::span<const double> small, std::span<const double> large, double tol) {
  if (small.size() > large.size())
    throw Error(ErrorKind::DimensionError, "contained spectrum is larger than the containing one");
  std::vector<std::size_t> small_order(small.size());
  std::iota(small_order.begin(), small_order.end(), std::size_t{0});
  std::stable_sort(small_order.begin(), small_order.end(),
                   [&](std::size_t i, std::size_t j) { return small[i] < small[j]; });

  double scale = 1.0;
  for (double x : large) scale = std::max(scale, std::abs(x));

  ContainmentReport report;
  report.threshold = tol * scale;
  std::vector<bool> used(large.size(), false);
  for (std::size_t i : small_order) {
    std::size_t best = large.size();
    for (std::size_t j = 0; j < large.size(); ++j) {
      if (used[j]) continue;
      if (best == large.size() || std::abs(large[j] - small[i]) < std::abs(large[best] - small[i])) best = j;
    }
    used[best] = true;
    const double gap = std::abs(large[best] - small[i]);
    report.pairs.push_back({i, best, small[i], large[best], gap});
    report.max_gap = std::max(report.max_gap, gap);
  }
  report.contained = report.max_gap <= report.threshold;
  return report;
}

ContainmentReport spectrum_contains(const Spectrum& small, const Spectrum& large, double tol) {
  return spectrum_contains(std::span<const double>(small.values), std::span<const double>(large.values), tol);
}

InterlacingReport check_interlacing(std::span<const double> large, std::span<const double> small, double tol) {
  const std::size_t na = large.size();
  const std::size_t nb = small.size();
  if (nb >= na)
    throw Error(ErrorKind::DimensionError, "interlacing needs the compressed spectrum to be strictly smaller");
  const Vector a = sorted_descending(large);
  const Vector b = sorted_descending(small);

  InterlacingReport report;
  for (std::size_t i = 0; i < nb; ++i) {
    const double upper = b[i] - a[i];            // must be <= 0
    const double lower = a[na - nb + i] - b[i];  // must be <= 0
    report.max_violation = std::max({report.max_violation, upper, lower});
  }
  report.interlaces = report.max_violation <= tol;

  // Tight: for some k, the top k values of b sit on the top of a and the rest on the bottom.
  std::vector<bool> top_prefix(nb + 1, true);
  for (std::size_t i = 0; i < nb; ++i) top_prefix[i + 1] = top_prefix[i] && std::abs(a[i] - b[i]) <= tol;
  std::vector<bool> bottom_suffix(nb + 1, true);
  for (std::size_t i = nb; i-- > 0;)
    bottom_suffix[i] = bottom_suffix[i + 1] && std::abs(b[i] - a[na - nb + i]) <= tol;
  for (std::size_t k = 0; k <= nb && !report.tight; ++k) report.tight = top_prefix[k] && bottom_suffix[k];
  report.tight = report.tight && report.interlaces;
  return report;
}

InterlacingReport check_interlacing(const Spectrum& large, const Spectrum& small, double tol) {
  return check_interlacing(std::span<const double>(large.values), std::span<const double>(small.values), tol);
}

double eigenpair_residual(const Matrix& m, std::span<const double> v, double lambda) {
  if (m.rows() != m.cols() || m.cols() != v.size())
    throw Error(ErrorKind::DimensionError, "eigenpair residual needs a square matrix matching the vector");
  const double len = norm2(v);
  if (!(len > 0.0)) throw Error(ErrorKind::InvalidVector, "eigenvector must be nonzero");
  Vector r = m.apply(v);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= lambda * v[i];
  return norm2(r) / len;
}

double eigenpair_residual(const SymmetricMatrix& m, std::span<const double> v, double lambda) {
  return eigenpair_residual(static_cast<const Matrix&>(m.to_dense()), v, lambda);
}

double max_residual(const Matrix& m, const Spectrum& s) {
  double worst = 0.0;
  for (std::size_t i = 0; i < s.order(); ++i)
    worst = std::max(worst, eigenpair_residual(m, s.vectors[i], s.values[i]));
  return worst;
}

CorrespondenceReport normalized_laplacian_correspondence(const WeightedGraph& g, double tol) {
  const auto lap = normalized_laplacian(g).to_dense();
  const auto d = strength_matrix(g).diagonal;
  const auto t = transition_spectrum(g);
  const double threshold = tol * std::max(1.0, lap.infinity_norm());

  CorrespondenceReport report;
  for (std::size_t i = 0; i < t.order(); ++i) {
    Vector x = t.vectors[i];
    for (std::size_t j = 0; j < x.size(); ++j) x[j] *= std::sqrt(d[j]);
    const double mapped = 1.0 - t.values[i];
    const double r = eigenpair_residual(lap, x, mapped);
    report.pairs.push_back({t.values[i], mapped, r});
    report.max_residual = std::max(report.max_residual, r);
  }
  report.pass = report.max_residual <= threshold;
  return report;
}

}  // namespace starloop
