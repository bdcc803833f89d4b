#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "spq/sphere.hpp"

using namespace spq;

namespace {

double dist(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) { return (a - b).cwiseAbs().maxCoeff(); }

// torus point with t_1 given and the remaining coordinates 1
TorusPoint at(int n, cplx t1) {
  TorusPoint t(static_cast<std::size_t>(n), 1.0);
  t[0] = t1;
  return t;
}

}  // namespace

TEST(Generators, LastRowOfWordRepresentation) {
  const int n = 2, D = 6;
  const double q = 0.5;
  const TorusPoint t{std::polar(1.0, 1.1), 1.0};
  for (int k = 2; k <= 2 * n; ++k) {
    auto g = sphere_generators(k, n, D, q);
    ASSERT_EQ(g.slots(), k - 1);
    auto u = oracle::word_dense(omega_word(k, n).letters, n, D, q, &t);
    for (int j = 1; j <= 2 * n; ++j) {
      const auto& ref = u[static_cast<std::size_t>((2 * n - 1) * 2 * n + (2 * n - j))];
      TorusPoint tt(static_cast<std::size_t>(g[j].ntorus()), 1.0);
      tt[0] = t[0];
      EXPECT_LT(dist(to_dense(g[j], tt), ref), 1e-13) << "k=" << k << " z_" << j;
    }
  }
}

TEST(Generators, RowNormOnInterior) {
  const int n = 2, D = 6;
  for (int k = 1; k <= 2 * n; ++k) {
    auto g = sphere_generators(k, n, D, 0.5);
    TensorOperator s = TensorOperator::zero(g.z[0].ntorus(), g.slots(), D);
    for (int j = 1; j <= 2 * n; ++j) s = s + g[j] * adjoint(g[j]);
    s = s - TensorOperator::identity(g.z[0].ntorus(), g.slots(), D);
    EXPECT_LT(interior_residual(s, diagonal_torus_samples(g.z[0].ntorus(), 4)), 1e-12) << k;
  }
}

TEST(Relations, HoldForAllK) {
  for (int n = 2; n <= 3; ++n)
    for (int k = 1; k <= 2 * n; ++k) {
      auto ts = diagonal_torus_samples(n, 3);
      auto g = sphere_generators(k, n, n == 2 ? 7 : 5, 0.5);
      SphereCheckOptions o;
      o.interior.max_vectors = 300;
      o.interior.seed = 3;
      auto rep = check_sphere_relations(g, ts, o);
      EXPECT_TRUE(rep.passed()) << "n=" << n << " k=" << k << "\n" << rep.to_text();
    }
}

TEST(Relations, NegativeControl) {
  auto g = sphere_generators(4, 2, 7, 0.5);
  auto bad = with_perturbed_generator(g, 2, 1e-3);
  auto rep = check_sphere_relations(bad, diagonal_torus_samples(2, 3));
  EXPECT_FALSE(rep.passed());
  EXPECT_GE(rep.max_residual(), 1e-4);
}

TEST(Relations, VacuumPhaseIsUnimodular) {
  for (int k = 1; k <= 4; ++k) {
    auto g = sphere_generators(k, 2, 6, 0.5);
    EXPECT_NEAR(std::abs(g.vacuum_phase), 1.0, 1e-15);
    auto v = apply_to_basis(g[k], g.vacuum(), at(2, 1.0));
    EXPECT_NEAR(std::abs(v.at(linear_index(g.vacuum(), 6)) - g.vacuum_phase), 0.0, 1e-14);
  }
}

TEST(Spectrum, LatticeAndVacuum) {
  const double q = 0.5;
  for (int D : {6, 8}) {
    auto g = sphere_generators(4, 2, D, q);
    auto lines = omega_spectrum(g);
    ASSERT_FALSE(lines.empty());
    EXPECT_NEAR(lines.front().value, 1.0, 1e-12);
    EXPECT_EQ(lines.front().multiplicity, 1);
    for (const auto& l : lines) {
      bool ok = std::abs(l.value) < 1e-8;
      for (int m = 0; m < 40 && !ok; ++m) ok = std::abs(l.value - std::pow(q, 2 * m)) < 1e-8;
      EXPECT_TRUE(ok) << l.value;
    }
    EXPECT_TRUE(check_spectrum(g).passed());
  }
}

TEST(Basis, OrthogonalAndTorusIndependent) {
  auto g = sphere_generators(4, 2, 8, 0.5);
  auto rep = check_basis(g, 3, at(2, 1.0), at(2, std::polar(1.0, 2.0)));
  EXPECT_TRUE(rep.passed()) << rep.to_text();
  auto fam = basis_family(g, 2, at(2, 1.0));
  EXPECT_EQ(fam.labels.size(), fam.vectors.size());
  auto gr = gram_matrix(fam);
  EXPECT_LT(gr.max_offdiag, 1e-8);
  EXPECT_GT(gr.min_diag, 0);
}

TEST(Basis, WeightBoundBeyondInteriorThrows) {
  auto g = sphere_generators(4, 2, 4, 0.5);
  EXPECT_THROW(basis_family(g, 6, at(2, 1.0)), std::domain_error);
}

TEST(Corner, Examples) {
  auto g4 = sphere_generators(4, 2, 8, 0.5);
  EXPECT_TRUE(corner_elements(g4, {0, 0, 1, 0}, at(2, 1.0)).passed());
  EXPECT_TRUE(corner_elements(g4, {1, 0, 0, 0}, at(2, 1.0)).passed());
  auto g2 = sphere_generators(2, 2, 8, 0.5);
  EXPECT_TRUE(corner_elements(g2, {0, 2, 0, 0}, at(2, 1.0)).passed());
  EXPECT_THROW(corner_elements(g2, {0, 0, 1, 0}, at(2, 1.0)), std::invalid_argument);
}

TEST(Symbol, ExactSequenceCompatibility) {
  auto ts = diagonal_torus_samples(2, 3);
  for (int k = 2; k <= 4; ++k) EXPECT_TRUE(symbol_compatibility(k, 2, 7, 0.5, ts).passed()) << k;
}

TEST(Identities, DerivedIdentitiesSmall) {
  auto g = sphere_generators(4, 2, 8, 0.5);
  auto rep = check_derived_identities(g, diagonal_torus_samples(2, 2), {}, 2, 2);
  EXPECT_TRUE(rep.passed()) << rep.to_text();
  EXPECT_GT(rep.count(Status::info), 0u);
  EXPECT_THROW(check_derived_identities(sphere_generators(3, 2, 8, 0.5), {at(2, 1.0)}), std::invalid_argument);
}

TEST(Collinearity, Defect) {
  auto a = basis_vector({1}, 4), b = basis_vector({2}, 4);
  EXPECT_NEAR(collinearity_defect(a, cplx(0, 3) * a), 0.0, 1e-15);
  EXPECT_NEAR(collinearity_defect(a, b), 1.0, 1e-15);
  EXPECT_NEAR(collinearity_defect(a, SparseVector{}), 1.0, 1e-15);
  EXPECT_NEAR(collinearity_defect(SparseVector{}, SparseVector{}), 0.0, 1e-15);
  EXPECT_NEAR(collinearity_defect(a, a + b), std::sqrt(0.5), 1e-14);
}
