#include "spq/kwit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace spq {

namespace {

TorusMonomial constant(int n, cplx c = 1.0) { return {c, std::vector<int>(static_cast<std::size_t>(n), 0)}; }
TorusMonomial t1(int n) {
  TorusMonomial m = constant(n);
  m.exps[0] = 1;
  return m;
}

// c · mono ⊗ p^{⊗m}
TensorOperator vacuum_corner(int n, int m, int D, const TorusMonomial& mono) {
  TensorOperator T(n, m, D);
  FockFactor p = primitive_factor(Primitive::p(0, 0), D, 0.5);
  T.add_term(Term{mono, std::vector<FockFactor>(static_cast<std::size_t>(m), p)});
  return T;
}

void check_k(int k, int n) {
  if (n < 1) throw std::invalid_argument("kwit: n >= 1");
  if (k < 1 || k > 2 * n) throw std::invalid_argument("kwit: need 1 <= k <= 2n");
}

std::vector<int> max_bw(const TensorOperator& a, const TensorOperator& b) {
  auto x = a.bwidth(), y = b.bwidth();
  for (std::size_t s = 0; s < x.size(); ++s) x[s] = std::max(x[s], y[s]);
  return x;
}

double residual(const TensorOperator& T, const std::vector<TorusPoint>& ts) {
  return T.is_zero() ? 0.0 : interior_residual(T, ts);
}

}  // namespace

TensorOperator build_uk(int k, int n, int D, double q) {
  check_k(k, n);
  if (!(q > 0 && q < 1)) throw std::invalid_argument("q must lie in (0,1)");
  const int m = k - 1;
  return vacuum_corner(n, m, D, t1(n)) + TensorOperator::identity(n, m, D) - vacuum_corner(n, m, D, constant(n));
}

TensorOperator build_uk_from_sphere(const SphereGenerators& g) {
  const TensorOperator& zk = g[g.k];
  TensorOperator P = spectral_projection_one(adjoint(zk) * zk);
  return zk * P + TensorOperator::identity(g.n, g.slots(), g.cutoff) - P;
}

TensorOperator build_X_tilde(int k, int n, int D, double q) {
  check_k(k, n);
  if (k < 2) throw std::invalid_argument("build_X: need k >= 2");
  std::vector<FockFactor> legs(static_cast<std::size_t>(k - 2), primitive_factor(Primitive::qpow(1, 0), D, q));
  legs.push_back(primitive_factor(Primitive::Sstar(), D, q));
  return TensorOperator::elementary(n, t1(n), std::move(legs));
}

TensorOperator build_X(int k, int n, int D, double q) {
  TensorOperator Xt = build_X_tilde(k, n, D, q);
  TensorOperator P = spectral_projection_one(adjoint(Xt) * Xt);
  return P * Xt + TensorOperator::identity(n, k - 1, D) - P;
}

KWitness build_kwitness(int k, int n, int D, double q) {
  KWitness w;
  w.k = k;
  w.uk = build_uk(k, n, D, q);
  if (k >= 2) {
    w.X = build_X(k, n, D, q);
    TensorOperator one = TensorOperator::identity(n, k - 1, D);
    w.defects = {one - adjoint(w.X) * w.X, one - w.X * adjoint(w.X)};
  }
  return w;
}

long long interior_rank(const TensorOperator& T, const TorusPoint& t) {
  if (T.is_zero()) return 0;
  const int D = T.cutoff();
  auto idx = interior_indices(T.bwidth(), D);
  std::vector<SparseVector> cols;
  std::set<std::uint64_t> rows;
  for (const auto& a : idx) {
    SparseVector v = apply_to_basis(T, a, t);
    if (v.norm() <= 1e-14) continue;
    for (const auto& [r, x] : v.entries) rows.insert(r);
    cols.push_back(std::move(v));
  }
  if (cols.empty()) return 0;
  if (cols.size() > 4096 || rows.size() > 4096) throw std::length_error("interior_rank: support too large");
  std::unordered_map<std::uint64_t, Eigen::Index> pos;
  for (auto r : rows) pos.emplace(r, static_cast<Eigen::Index>(pos.size()));
  Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (const auto& [r, x] : cols[c].entries) M(pos.at(r), static_cast<Eigen::Index>(c)) = x;
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(M);
  return (svd.singularValues().array() > 0.5).count();
}

VerificationReport index_defects(const KWitness& w, const std::vector<TorusPoint>& ts, double tol) {
  if (w.k < 2) throw std::invalid_argument("index_defects: need k >= 2");
  VerificationReport rep("defects");
  const auto& [d1, d2] = w.defects;
  const int n = w.X.ntorus(), m = w.X.slots(), D = w.X.cutoff();
  for (const auto& [name, d] : {std::pair<const char*, const TensorOperator*>{"1-X*X", &d1}, {"1-XX*", &d2}}) {
    std::string s = name;
    rep.residual("idempotent(" + s + ")", residual(*d * *d - *d, ts), tol);
    rep.residual("selfadjoint(" + s + ")", residual(*d - adjoint(*d), ts), tol);
  }
  rep.residual("1-X*X=0", residual(d1, ts), tol);
  TensorOperator corner = vacuum_corner(n, m, D, constant(n));
  rep.residual("1-XX*=corner", residual(d2 - corner, ts), tol);
  long long r1 = interior_rank(d1, ts.front()), r2 = interior_rank(d2, ts.front());
  bool stable = true;
  for (const auto& t : ts) stable = stable && interior_rank(d1, t) == r1 && interior_rank(d2, t) == r2;
  rep.integer("rank(1-X*X)", r1, 0);
  rep.integer("rank(1-XX*)", r2, 1);
  rep.flag("rank_torus_independent", stable);
  rep.info_integer("signed_rank_difference", r1 - r2,
                   "rank(1-X*X) - rank(1-XX*); opposite in sign to the usual boundary class convention");
  return rep;
}

Loop sample_loop(const TensorOperator& u, int count) {
  if (count < 8) throw std::invalid_argument("winding: insufficient samples");
  const int n = u.ntorus(), D = u.cutoff();
  const TensorOperator one = TensorOperator::identity(n, u.slots(), D);
  const TensorOperator diff = u - one;
  auto idx = interior_indices(u.bwidth(), D);
  std::set<std::uint64_t> interior;
  for (const auto& a : idx) interior.insert(linear_index(a, D));
  auto point = [&](double th) {
    TorusPoint t(static_cast<std::size_t>(n), 1.0);
    if (n > 0) t[0] = std::polar(1.0, th);
    return t;
  };
  // support of u - 1 from a few generic angles
  std::set<std::uint64_t> supp;
  for (double th : {0.37, 1.91, 4.02})
    for (const auto& a : idx) {
      SparseVector v = apply_to_basis(diff, a, point(th));
      if (v.norm() <= 1e-14) continue;
      supp.insert(linear_index(a, D));
      for (const auto& [r, x] : v.entries) supp.insert(r);
    }
  for (auto s : supp)
    if (!interior.count(s)) throw std::domain_error("winding: support of u - 1 leaves the interior");
  std::vector<std::uint64_t> S(supp.begin(), supp.end());
  std::unordered_map<std::uint64_t, Eigen::Index> pos;
  for (std::size_t i = 0; i < S.size(); ++i) pos[S[i]] = static_cast<Eigen::Index>(i);
  const int m = u.slots();
  Loop loop;
  for (int j = 0; j <= count; ++j) {
    const double th = 2.0 * std::numbers::pi * (j == count ? 0 : j) / count;
    TorusPoint t = point(th);
    const auto K = static_cast<Eigen::Index>(S.size());
    Eigen::MatrixXcd B = Eigen::MatrixXcd::Zero(K, K);
    for (Eigen::Index c = 0; c < K; ++c)
      for (const auto& [r, x] : apply_to_basis(u, multi_index(S[static_cast<std::size_t>(c)], m, D), t).entries)
        if (auto it = pos.find(r); it != pos.end()) B(it->second, c) = x;
    loop.samples.emplace_back(n > 0 ? t[0] : cplx(1.0), std::move(B));
  }
  return loop;
}

int winding_number(const Loop& loop) {
  if (loop.samples.size() < 2) throw std::invalid_argument("winding: insufficient samples");
  double total = 0, prev = 0;
  for (std::size_t j = 0; j < loop.samples.size(); ++j) {
    const auto& B = loop.samples[j].second;
    cplx d = B.size() == 0 ? cplx(1.0) : B.determinant();
    if (std::abs(d) < 1e-8) throw std::domain_error("winding: near-singular block");
    double ph = std::arg(d);
    if (j > 0) {
      double step = std::remainder(ph - prev, 2.0 * std::numbers::pi);
      if (std::abs(step) >= std::numbers::pi / 2) throw std::domain_error("winding: insufficient samples");
      total += step;
    }
    prev = ph;
  }
  return static_cast<int>(std::lround(total / (2.0 * std::numbers::pi)));
}

int winding_number(const TensorOperator& u, int count) { return winding_number(sample_loop(u, count)); }

VerificationReport check_kwitness(int k, int n, int D, double q, const std::vector<TorusPoint>& ts) {
  VerificationReport rep("kwitness");
  const std::string K = "k=" + std::to_string(k) + "/";
  KWitness w = build_kwitness(k, n, D, q);
  const int m = k - 1;
  const TensorOperator one = TensorOperator::identity(n, m, D);
  rep.residual(K + "unitary(uu*)", residual(w.uk * adjoint(w.uk) - one, ts), 1e-10);
  rep.residual(K + "unitary(u*u)", residual(adjoint(w.uk) * w.uk - one, ts), 1e-10);

  SphereGenerators g = sphere_generators(k, n, D, q);
  TensorOperator us = build_uk_from_sphere(g);
  {
    auto idx = interior_indices(max_bw(us, w.uk), D);
    double worst = 0;
    for (const auto& t : ts) {
      TorusPoint tp = t;
      tp[0] *= g.vacuum_phase;
      for (const auto& a : idx) worst = std::max(worst, (apply_to_basis(us, a, t) - apply_to_basis(w.uk, a, tp)).norm());
    }
    rep.residual(K + "routes_agree", worst, 1e-9, "sphere route compared at t_1 -> phase·t_1");
    rep.info(K + "vacuum_phase", g.vacuum_phase.real());
  }
  rep.integer(K + "winding(u)", winding_number(w.uk), 1);
  rep.integer(K + "winding(u*)", winding_number(adjoint(w.uk)), -1);

  if (k >= 2) {
    rep.residual(K + "isometry(X*X=I)", residual(adjoint(w.X) * w.X - one, ts), 1e-12);
    TensorOperator lift = symbol_last(w.X) - build_uk(k - 1, n, D, q);
    rep.residual(K + "lift(sigma(X)=u_{k-1})", residual(lift, ts), 1e-9);
    TensorOperator unit = symbol_last(one) - TensorOperator::identity(n, m - 1, D);
    rep.residual(K + "sigma(1)=1", residual(unit, ts), 0.0);
    rep.append(index_defects(w, ts, 1e-10), "k=" + std::to_string(k));
  }
  return rep;
}

}  // namespace spq
