#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "generators.hpp"
#include "oracles.hpp"
#include "starloop/certificates.hpp"
#include "starloop/errors.hpp"
#include "starloop/graph.hpp"
#include "starloop/stars.hpp"

namespace starloop {
namespace {

WeightedGraph graph_of(std::vector<LabeledEdge> edges) { return build_graph(edges); }

// S_{2,1,1}: inner 1,2 joined with a = 1, hub 3 with b = 2.
WeightedGraph s211() { return graph_of({{"1", "2", 1}, {"1", "3", 2}, {"2", "3", 2}}); }

// Looped S_{2,1,0}: inner 1,2 with loop 2, hub 3 with b = 1.
WeightedGraph looped_s210() { return graph_of({{"1", "1", 2}, {"2", "2", 2}, {"1", "3", 1}, {"2", "3", 1}}); }

WeightedGraph s331_graph() {
  std::vector<LabeledEdge> e;
  for (std::string v : {"x", "y", "z"})
    for (std::string h : {"p", "q", "r"}) e.push_back({v, h, 1});
  e.push_back({"x", "y", 1});
  e.push_back({"x", "z", 1});
  e.push_back({"y", "z", 1});
  e.push_back({"p", "q", 2});
  e.push_back({"q", "r", 5});
  e.push_back({"r", "o", 3});
  e.push_back({"p", "o", 1.5});
  e.push_back({"o", "u", 0.5});
  return build_graph(e);
}

SymmetricMatrix symmetric_of(const WeightedGraph& g, MatrixKind kind) {
  switch (kind) {
    case MatrixKind::adjacency: return adjacency_matrix(g);
    case MatrixKind::laplacian: return laplacian(g);
    case MatrixKind::signless: return signless_laplacian(g);
    case MatrixKind::normalized_laplacian: return normalized_laplacian(g);
    default: return normalized_adjacency(g);
  }
}

TEST(PredictedEigenvalue, S211AllKinds) {
  const auto star = find_stars(s211()).front();
  const auto m = star_metrics(star);
  EXPECT_DOUBLE_EQ(predicted_eigenvalue(m, false, MatrixKind::laplacian), 4.0);
  EXPECT_DOUBLE_EQ(predicted_eigenvalue(m, false, MatrixKind::adjacency), -1.0);
  EXPECT_DOUBLE_EQ(predicted_eigenvalue(m, false, MatrixKind::signless), 2.0);
  EXPECT_DOUBLE_EQ(predicted_eigenvalue(m, false, MatrixKind::normalized_laplacian), 4.0 / 3.0);
  EXPECT_DOUBLE_EQ(predicted_eigenvalue(m, false, MatrixKind::transition), -1.0 / 3.0);
}

TEST(PredictedEigenvalue, S211MatchesOracleSpectra) {
  // Each predicted value is a root of the characteristic polynomial of the
  // corresponding matrix, and (1,-1,0) is an exact eigenvector.
  const auto g = s211();
  const auto m = star_metrics(find_stars(g).front());
  const Vector d{1, -1, 0};
  for (auto kind : {MatrixKind::laplacian, MatrixKind::adjacency, MatrixKind::signless,
                    MatrixKind::normalized_laplacian}) {
    const double lambda = predicted_eigenvalue(m, false, kind);
    const auto mat = symmetric_of(g, kind);
    const auto roots = oracle::charpoly_roots(mat);
    EXPECT_TRUE(std::any_of(roots.begin(), roots.end(), [&](double r) { return std::abs(r - lambda) < 1e-12; }))
        << to_string(kind);
    EXPECT_LE(eigenpair_residual(mat, d, lambda), 1e-14) << to_string(kind);
  }
  EXPECT_LE(eigenpair_residual(transition_matrix(g), d, -1.0 / 3.0), 1e-15);
}

TEST(PredictedEigenvalue, LoopedS210) {
  const auto g = looped_s210();
  const auto stars = find_stars(g);
  ASSERT_EQ(stars.size(), 1u);
  const auto m = star_metrics(stars[0]);
  EXPECT_DOUBLE_EQ(predicted_eigenvalue(m, true, MatrixKind::adjacency), 2.0);
  EXPECT_DOUBLE_EQ(predicted_eigenvalue(m, true, MatrixKind::transition), 2.0 / 3.0);
  const Vector d{1, -1, 0};
  EXPECT_EQ(eigenpair_residual(adjacency_matrix(g), d, 2.0), 0.0);
  EXPECT_LE(eigenpair_residual(transition_matrix(g), d, 2.0 / 3.0), 1e-15);
  for (auto kind : {MatrixKind::laplacian, MatrixKind::signless, MatrixKind::normalized_laplacian}) {
    try {
      predicted_eigenvalue(m, true, kind);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::LoopsNotSupported);
    }
  }
}

TEST(PredictedEigenvalue, IndependentStarsReduceToKernel) {
  // S_{3,2,0}: adjacency value 0, laplacian value w.
  const auto g = graph_of({{"a", "h", 2}, {"b", "h", 2}, {"c", "h", 2}, {"a", "k", 1}, {"b", "k", 1}, {"c", "k", 1}});
  const auto stars = find_stars(g);
  const auto inner = std::find_if(stars.begin(), stars.end(), [](const Star& s) { return s.m() == 3; });
  ASSERT_NE(inner, stars.end());
  const auto m = star_metrics(*inner);
  EXPECT_EQ(predicted_eigenvalue(m, false, MatrixKind::adjacency), 0.0);
  EXPECT_EQ(predicted_eigenvalue(m, false, MatrixKind::laplacian), 3.0);
}

TEST(DifferenceEigenvectors, Examples) {
  Star two{{0, 1}, {2}, 1, false, {2}, 1, 0};
  EXPECT_EQ(difference_eigenvectors(two, 3), (std::vector<Vector>{{1, -1, 0}}));
  Star three{{0, 1, 2}, {3}, 0, false, {1}, 0, 0};
  EXPECT_EQ(difference_eigenvectors(three, 4), (std::vector<Vector>{{1, -1, 0, 0}, {1, 0, -1, 0}}));
  EXPECT_EQ(eigenpair_residual(laplacian(s211()), difference_eigenvectors(two, 3)[0], 4.0), 0.0);
  Star lone{{0}, {1}, 0, true, {1}, 0, 3};
  try {
    difference_eigenvectors(lone, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DegenerateStar);
  }
}

TEST(Certify, Figure2Fixture) {
  const auto report = certify(s331_graph(), MatrixKind::laplacian);
  EXPECT_TRUE(report.pass());
  const auto it = std::find_if(report.predictions.begin(), report.predictions.end(),
                               [](const Prediction& p) { return std::abs(p.value - 6.0) < 1e-12; });
  ASSERT_NE(it, report.predictions.end());
  EXPECT_EQ(it->required, 2u);
  EXPECT_GE(it->observed, 2u);
  EXPECT_TRUE(it->pass);
}

TEST(Certify, TriangleAdjacency) {
  const auto report = certify(graph_of({{"a", "b", 1}, {"b", "c", 1}, {"a", "c", 1}}), MatrixKind::adjacency);
  ASSERT_EQ(report.predictions.size(), 1u);
  EXPECT_DOUBLE_EQ(report.predictions[0].value, -1.0);
  EXPECT_EQ(report.predictions[0].required, 2u);
  EXPECT_EQ(report.predictions[0].observed, 2u);
  EXPECT_TRUE(report.pass());
}

TEST(Certify, TwoEqualStarsShareOnePrediction) {
  // Two disjoint S_{2,1,0} stars with b = 2, hubs joined by an edge.
  const auto g = graph_of({{"a1", "h1", 2}, {"a2", "h1", 2}, {"b1", "h2", 2}, {"b2", "h2", 2}, {"h1", "h2", 1}});
  for (auto kind : {MatrixKind::adjacency, MatrixKind::laplacian}) {
    const auto report = certify(g, kind);
    ASSERT_EQ(report.predictions.size(), 1u) << to_string(kind);
    EXPECT_EQ(report.predictions[0].required, 2u);
    EXPECT_EQ(report.predictions[0].stars.size(), 2u);
    EXPECT_TRUE(report.pass());
  }
}

TEST(Certify, DistinctKeysGiveSeparatePredictions) {
  const auto g = graph_of({{"a1", "h1", 2}, {"a2", "h1", 2}, {"b1", "h2", 3}, {"b2", "h2", 3}, {"h1", "h2", 1}});
  const auto report = certify(g, MatrixKind::laplacian);
  ASSERT_EQ(report.predictions.size(), 2u);
  EXPECT_DOUBLE_EQ(report.predictions[0].value, 2.0);
  EXPECT_DOUBLE_EQ(report.predictions[1].value, 3.0);
  EXPECT_TRUE(report.pass());
}

TEST(Certify, NoStarsIsVacuousPass) {
  const auto report = certify(graph_of({{"a", "b", 1}, {"b", "c", 2}}), MatrixKind::adjacency);
  EXPECT_TRUE(report.predictions.empty());
  EXPECT_TRUE(report.pass());
}

TEST(Certify, LaplacianOfLoopedGraphRejected) {
  try {
    certify(looped_s210(), MatrixKind::laplacian);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::LoopsNotSupported);
  }
}

TEST(Certify, LoopedStarCarriesVarianceNote) {
  const auto report = certify(looped_s210(), MatrixKind::adjacency);
  EXPECT_TRUE(report.pass());
  EXPECT_FALSE(report.variance_notes.empty());
  const auto t = certify(looped_s210(), MatrixKind::transition);
  ASSERT_EQ(t.predictions.size(), 1u);
  EXPECT_NEAR(t.predictions[0].value, 2.0 / 3.0, 1e-15);
  EXPECT_TRUE(t.pass());
}

TEST(Certify, PassRequiresResidualBound) {
  // Make the residual requirement impossible to meet.
  CertifyOptions opts;
  opts.residual_tol = -1.0;
  const auto report = certify(s211(), MatrixKind::adjacency, opts);
  EXPECT_FALSE(report.pass());
}

class PlantedCertificates : public ::testing::TestWithParam<int> {};

TEST_P(PlantedCertificates, LooplessAllKinds) {
  gen::Rng rng(6000 + GetParam());
  const std::size_t m = gen::pick(rng, 2, 5);
  const int s = static_cast<int>(gen::pick(rng, 0, 1));
  const auto planted = gen::planted_star_graph(rng, gen::pick(rng, m + 2, 40), m, s, false);
  const auto& p = planted.star;
  const double w = p.weight();
  const std::pair<MatrixKind, double> expected[] = {{MatrixKind::laplacian, w + p.a},
                                                    {MatrixKind::adjacency, -p.a},
                                                    {MatrixKind::signless, w - p.a},
                                                    {MatrixKind::normalized_laplacian, 1 + p.a / w},
                                                    {MatrixKind::transition, -p.a / w}};
  for (const auto& [kind, value] : expected) {
    const auto report = certify(planted.graph, kind);
    EXPECT_TRUE(report.pass()) << to_string(kind);
    const auto it = std::find_if(report.predictions.begin(), report.predictions.end(), [&](const Prediction& pr) {
      return std::abs(pr.value - value) <= 1e-8 * std::max(1.0, std::abs(value));
    });
    ASSERT_NE(it, report.predictions.end()) << to_string(kind);
    EXPECT_GE(it->observed, m - 1);
    EXPECT_LE(it->max_residual, 1e-10 * std::max(1.0, w));
  }
}

TEST_P(PlantedCertificates, LoopedAdjacencyAndTransition) {
  gen::Rng rng(7000 + GetParam());
  const std::size_t m = gen::pick(rng, 2, 5);
  const int s = static_cast<int>(gen::pick(rng, 0, 1));
  const auto planted = gen::planted_star_graph(rng, gen::pick(rng, m + 2, 40), m, s, true, 0.2);
  const auto& p = planted.star;
  const double w = p.weight();
  for (const auto& [kind, value] : {std::pair{MatrixKind::adjacency, p.loop - p.a},
                                    std::pair{MatrixKind::transition, (p.loop - p.a) / w}}) {
    const auto report = certify(planted.graph, kind);
    EXPECT_TRUE(report.pass()) << to_string(kind);
    const auto it = std::find_if(report.predictions.begin(), report.predictions.end(), [&](const Prediction& pr) {
      return std::abs(pr.value - value) <= 1e-8 * std::max(1.0, std::abs(value));
    });
    ASSERT_NE(it, report.predictions.end()) << to_string(kind);
    EXPECT_GE(it->observed, m - 1);
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, PlantedCertificates, ::testing::Range(0, 30));

}  // namespace
}  // namespace starloop
