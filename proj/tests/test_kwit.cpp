#include <gtest/gtest.h>

#include "spq/kwit.hpp"

using namespace spq;

namespace {

double dist(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace

TEST(Uk, UnitaryOnWholeTruncation) {
  for (int k = 1; k <= 4; ++k) {
    auto u = build_uk(k, 2, 6, 0.5);
    TorusPoint t{std::polar(1.0, 0.4), 1.0};
    t.resize(static_cast<std::size_t>(u.ntorus()), 1.0);
    auto d = to_dense(u, t);
    EXPECT_LT(dist(d * d.adjoint(), Eigen::MatrixXcd::Identity(d.rows(), d.cols())), 1e-14) << k;
  }
}

TEST(Uk, SphereRouteAgreesUpToVacuumPhase) {
  for (int k = 1; k <= 4; ++k) {
    auto g = sphere_generators(k, 2, 6, 0.5);
    auto a = build_uk_from_sphere(g);
    auto b = build_uk(k, 2, 6, 0.5);
    const cplx t1 = std::polar(1.0, 0.9);
    TorusPoint ta(static_cast<std::size_t>(a.ntorus()), 1.0), tb(static_cast<std::size_t>(b.ntorus()), 1.0);
    ta[0] = t1;
    tb[0] = g.vacuum_phase * t1;
    auto da = to_dense(a, ta), db = to_dense(b, tb);
    // compare away from the top index of each slot
    const int D = 6;
    for (Eigen::Index c = 0; c < da.cols(); ++c) {
      auto alpha = multi_index(static_cast<std::uint64_t>(c), g.slots(), D);
      bool inside = true;
      for (int x : alpha) inside = inside && x <= D - 3;
      if (inside) EXPECT_LT((da.col(c) - db.col(c)).norm(), 1e-9) << "k=" << k;
    }
  }
}

TEST(Winding, GeneratorAndInverse) {
  for (int k = 1; k <= 4; ++k) {
    auto u = build_uk(k, 2, 6, 0.5);
    EXPECT_EQ(winding_number(u), 1);
    EXPECT_EQ(winding_number(adjoint(u)), -1);
    EXPECT_EQ(winding_number(u * u), 2);
  }
  EXPECT_EQ(winding_number(TensorOperator::identity(2, 1, 6)), 0);
}

TEST(Winding, LoopSamples) {
  auto loop = sample_loop(build_uk(2, 2, 6, 0.5), 64);
  ASSERT_GE(loop.samples.size(), 64u);
  EXPECT_NEAR(std::abs(loop.samples.front().first - loop.samples.back().first), 0.0, 1e-12);
}

TEST(X, IsometryAndDefects) {
  const int D = 8;
  auto ts = diagonal_torus_samples(2, 3);
  for (int k = 2; k <= 4; ++k) {
    auto w = build_kwitness(k, 2, D, 0.5);
    auto rep = index_defects(w, ts);
    EXPECT_TRUE(rep.passed()) << rep.to_text();
  }
}

TEST(X, InteriorRankOfVacuumProjection) {
  auto w = build_kwitness(3, 2, 8, 0.5);
  EXPECT_EQ(interior_rank(w.defects.first, {1.0, 1.0}), 0);
  EXPECT_EQ(interior_rank(w.defects.second, {1.0, 1.0}), 1);
}

TEST(Suite, AllChecksForRankTwo) {
  auto ts = diagonal_torus_samples(2, 4);
  for (int k = 1; k <= 4; ++k) {
    auto rep = check_kwitness(k, 2, 8, 0.5, ts);
    EXPECT_TRUE(rep.passed()) << rep.to_text();
  }
}
