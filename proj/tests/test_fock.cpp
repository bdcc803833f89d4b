#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "spq/fock.hpp"
#include "spq/product_sum.hpp"

using namespace spq;

namespace {

double dist(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) { return (a - b).cwiseAbs().maxCoeff(); }

TorusPoint random_torus(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> ang(0, 2 * M_PI);
  TorusPoint t;
  for (int i = 0; i < n; ++i) t.push_back(std::polar(1.0, ang(rng)));
  return t;
}

// Random sum of elementary tensors built from primitives.
TensorOperator random_operator(std::mt19937_64& rng, int nt, int slots, int D, double q) {
  const std::vector<Primitive> prims{Primitive::S(),       Primitive::Sstar(),   Primitive::qpow(1, 0),
                                     Primitive::qpow(2, 1), Primitive::sqrt1m2(), Primitive::sqrt1m4(),
                                     Primitive::p(0, 0),    Primitive::p(1, 0),   Primitive::id()};
  std::uniform_int_distribution<int> pick(0, static_cast<int>(prims.size()) - 1), ex(-2, 2), nterms(1, 3);
  std::normal_distribution<double> g;
  TensorOperator T(nt, slots, D);
  for (int r = nterms(rng); r > 0; --r) {
    TorusMonomial m{cplx(g(rng), g(rng)), std::vector<int>(static_cast<std::size_t>(nt))};
    for (auto& e : m.exps) e = ex(rng);
    std::vector<FockFactor> legs;
    for (int s = 0; s < slots; ++s) {
      FockFactor f = primitive_factor(prims[static_cast<std::size_t>(pick(rng))], D, q);
      if (pick(rng) % 2) f = f * primitive_factor(prims[static_cast<std::size_t>(pick(rng))], D, q);
      legs.push_back(f);
    }
    bool zero = false;
    for (const auto& l : legs) zero = zero || l.is_zero();
    if (!zero) T.add_term({m, legs});
  }
  return T;
}

}  // namespace

TEST(Primitives, MatchOracleMatrices) {
  const int D = 7;
  const double q = 0.6;
  EXPECT_LT(dist(primitive_factor(Primitive::S(), D, q).dense(), oracle::S(D)), 1e-15);
  EXPECT_LT(dist(primitive_factor(Primitive::Sstar(), D, q).dense(), oracle::Sstar(D)), 1e-15);
  EXPECT_LT(dist(primitive_factor(Primitive::qpow(2, 1), D, q).dense(), oracle::qN(D, q, 2, 1)), 1e-15);
  EXPECT_LT(dist(primitive_factor(Primitive::sqrt1m2(), D, q).dense(), oracle::root(D, q, 2)), 1e-15);
  EXPECT_LT(dist(primitive_factor(Primitive::sqrt1m4(), D, q).dense(), oracle::root(D, q, 4)), 1e-15);
  EXPECT_LT(dist(primitive_factor(Primitive::p(2, 3), D, q).dense(), oracle::proj(D, 2, 3)), 1e-15);
  EXPECT_LT(dist(primitive_factor(Primitive::id(), D, q).dense(), oracle::Mat::Identity(D, D)), 1e-15);
}

TEST(Primitives, Symbols) {
  const int D = 6;
  EXPECT_EQ(primitive_factor(Primitive::S(), D, 0.5).symbol(), cplx(1.0));
  EXPECT_EQ(primitive_factor(Primitive::sqrt1m2(), D, 0.5).symbol(), cplx(1.0));
  EXPECT_EQ(primitive_factor(Primitive::qpow(1, 0), D, 0.5).symbol(), cplx(0.0));
  EXPECT_EQ(primitive_factor(Primitive::p(0, 0), D, 0.5).symbol(), cplx(0.0));
}

TEST(FockFactor, ProductIsComposition) {
  const int D = 6;
  auto a = primitive_factor(Primitive::S(), D, 0.5), b = primitive_factor(Primitive::Sstar(), D, 0.5);
  EXPECT_LT(dist((a * b).dense(), a.dense() * b.dense()), 1e-15);
  EXPECT_LT(dist((b * a).dense(), b.dense() * a.dense()), 1e-15);
  EXPECT_LT(dist(a.adjoint().dense(), b.dense()), 1e-15);
  EXPECT_EQ((a * b).bwidth(), a.bwidth() + b.bwidth());
}

class TensorProperty : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(TensorProperty, DenseHomomorphism) {
  std::mt19937_64 rng(GetParam());
  const int nt = 2, slots = 2, D = 5;
  const double q = 0.55;
  auto A = random_operator(rng, nt, slots, D, q), B = random_operator(rng, nt, slots, D, q);
  auto t = random_torus(rng, nt);
  auto dA = to_dense(A, t), dB = to_dense(B, t);
  EXPECT_LT(dist(dA, oracle::dense(A, t)), 1e-13);
  EXPECT_LT(dist(to_dense(A * B, t), dA * dB), 1e-12);
  EXPECT_LT(dist(to_dense(A + B, t), dA + dB), 1e-12);
  EXPECT_LT(dist(to_dense(A - B, t), dA - dB), 1e-12);
  EXPECT_LT(dist(to_dense(cplx(0.3, -1.1) * A, t), cplx(0.3, -1.1) * dA), 1e-12);
  EXPECT_LT(dist(to_dense(adjoint(A), t), dA.adjoint()), 1e-12);
  EXPECT_LT(dist(to_dense(adjoint(A * B), t), to_dense(adjoint(B) * adjoint(A), t)), 1e-12);
  EXPECT_LT(dist(to_dense(A.simplified(), t), dA), 1e-12);
  EXPECT_LT(dist(to_dense(combine(Combine::mul, A, &B), t), dA * dB), 1e-12);
}

TEST_P(TensorProperty, TensorIsKronecker) {
  std::mt19937_64 rng(GetParam() ^ 0x9e3779b97f4a7c15ULL);
  const int nt = 2, D = 5;
  auto A = random_operator(rng, nt, 1, D, 0.4), B = random_operator(rng, nt, 2, D, 0.4);
  auto t = random_torus(rng, nt);
  EXPECT_LT(dist(to_dense(tensor(A, B), t), oracle::kron(to_dense(A, t), to_dense(B, t))), 1e-12);
}

TEST_P(TensorProperty, SparseApplyMatchesDense) {
  std::mt19937_64 rng(GetParam() + 17);
  const int D = 5;
  auto A = random_operator(rng, 1, 2, D, 0.5);
  auto t = random_torus(rng, 1);
  auto dA = to_dense(A, t);
  std::normal_distribution<double> g;
  SparseVector v;
  Eigen::VectorXcd dv = Eigen::VectorXcd::Zero(D * D);
  for (std::uint64_t i = 0; i < static_cast<std::uint64_t>(D * D); i += 3) {
    cplx c(g(rng), g(rng));
    v.entries.emplace_back(i, c);
    dv(static_cast<Eigen::Index>(i)) = c;
  }
  Eigen::VectorXcd ref = dA * dv;
  auto w = apply(A, v, t);
  for (Eigen::Index i = 0; i < ref.size(); ++i) EXPECT_LT(std::abs(w.at(static_cast<std::uint64_t>(i)) - ref(i)), 1e-12);
}

INSTANTIATE_TEST_SUITE_P(Seeds, TensorProperty, ::testing::Values(1u, 2u, 3u, 5u, 8u, 13u, 21u, 34u, 55u, 89u));

TEST(Interior, IndexSetsAndSampling) {
  auto all = interior_indices({1, 2}, 6, {});
  EXPECT_EQ(all.size(), 5u * 4u);
  for (const auto& a : all) {
    EXPECT_LE(a[0], 4);
    EXPECT_LE(a[1], 3);
  }
  InteriorOptions o;
  o.max_vectors = 7;
  o.seed = 42;
  auto s1 = interior_indices({0, 0, 0}, 6, o), s2 = interior_indices({0, 0, 0}, 6, o);
  EXPECT_EQ(s1.size(), 7u);
  EXPECT_EQ(s1, s2);
}

TEST(Interior, ResidualSeesOnlyInterior) {
  // S S^* - 1 vanishes away from the top index
  const int D = 6;
  auto S = TensorOperator::elementary(1, {1.0, {0}}, {primitive_factor(Primitive::S(), D, 0.5)});
  auto one = TensorOperator::identity(1, 1, D);
  auto ts = diagonal_torus_samples(1, 4);
  EXPECT_LT(interior_residual(S * adjoint(S) - one, ts), 1e-15);
  EXPECT_GT(interior_residual(S * adjoint(S) - one, ts, std::vector<int>{0}), 0.5);
  EXPECT_GT(interior_residual(adjoint(S) * S - one, ts), 0.5);
}

TEST(Indexing, RoundTrip) {
  for (std::uint64_t i = 0; i < 125; ++i) EXPECT_EQ(linear_index(multi_index(i, 3, 5), 5), i);
  EXPECT_EQ(linear_index({1, 2}, 5), 7u);
  EXPECT_THROW(linear_index({5}, 5), std::out_of_range);
}

TEST(Sparse, Arithmetic) {
  auto a = basis_vector({1}, 4), b = basis_vector({2}, 4);
  auto c = cplx(0, 2) * a + b;
  EXPECT_NEAR(c.norm(), std::sqrt(5.0), 1e-15);
  EXPECT_EQ(inner(a, c), cplx(0, 2));
  EXPECT_TRUE((c - c).empty());
  auto d = collect({{3, 1.0}, {1, 2.0}, {3, -1.0}});
  ASSERT_EQ(d.entries.size(), 1u);
  EXPECT_EQ(d.entries[0].first, 1u);
}

TEST(Symbol, LastLeg) {
  const int D = 6;
  const double q = 0.5;
  auto T = TensorOperator::elementary(1, {2.0, {1}},
                                      {primitive_factor(Primitive::qpow(1, 0), D, q), primitive_factor(Primitive::S(), D, q)});
  auto s = symbol_last(T);
  EXPECT_EQ(s.slots(), 1);
  auto t = TorusPoint{cplx(0, 1)};
  EXPECT_LT(dist(to_dense(s, t), 2.0 * cplx(0, 1) * oracle::qN(D, q, 1, 0)), 1e-15);
  auto U = TensorOperator::elementary(1, {1.0, {0}},
                                      {primitive_factor(Primitive::id(), D, q), primitive_factor(Primitive::p(0, 0), D, q)});
  EXPECT_TRUE(symbol_last(U).is_zero());
}

TEST(Spectral, ProjectionOntoEigenvalueOne) {
  const int D = 6;
  auto T = TensorOperator::elementary(1, {1.0, {0}}, {primitive_factor(Primitive::qpow(2, 0), D, 0.5)});
  auto P = spectral_projection_one(T);
  EXPECT_LT(dist(to_dense(P, {1.0}), oracle::proj(D, 0, 0)), 1e-15);
}

TEST(ProductSum, MatchesOperatorProducts) {
  std::mt19937_64 rng(7);
  const int D = 6;
  auto A = random_operator(rng, 1, 2, D, 0.5), B = random_operator(rng, 1, 2, D, 0.5);
  ProductSum P(1, 2, D);
  int a = P.letter(A), b = P.letter(B);
  P.add(2.0, {a, b});
  P.add(-2.0, {a, b});
  auto ts = diagonal_torus_samples(1, 3);
  EXPECT_LT(interior_residual(P, ts), 1e-15);
  ProductSum Q(1, 2, D);
  a = Q.letter(A);
  b = Q.letter(B);
  int c = Q.letter(A * B);
  Q.add(1.0, {a, b});
  Q.add(-1.0, {c});
  EXPECT_LT(interior_residual(Q, ts), 1e-12);
}

TEST(Torus, Samples) {
  auto d = diagonal_torus_samples(3, 8);
  ASSERT_EQ(d.size(), 8u);
  for (const auto& t : d) {
    EXPECT_EQ(t.size(), 3u);
    for (auto z : t) EXPECT_NEAR(std::abs(z), 1.0, 1e-15);
  }
  EXPECT_EQ(grid_torus_samples(2).size(), 64u);
}
