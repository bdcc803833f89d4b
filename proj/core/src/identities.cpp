#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

#include "expr.hpp"
#include "spq/qsymp.hpp"
#include "spq/sphere.hpp"

namespace spq {

using detail::cat;
using detail::Expr;
using detail::pow;
using detail::Word;

namespace {

std::string key(const std::string& tag, std::initializer_list<int> idx) {
  std::ostringstream os;
  os << tag << '(';
  bool first = true;
  for (int i : idx) {
    os << (first ? "" : ",") << i;
    first = false;
  }
  os << ')';
  return os.str();
}

SparseVector power_apply(const TensorOperator& A, int m, SparseVector v, const TorusPoint& t) {
  for (int i = 0; i < m; ++i) v = apply(A, v, t);
  return v;
}

struct Identities {
  const SphereGenerators& g;
  const std::vector<TorusPoint>& ts;
  const SphereCheckOptions& opt;
  int n, N, m, D;
  double q, q2;
  IndexConstants ic;
  std::vector<TensorOperator> zs;
  TensorOperator B, Bs;
  VerificationReport rep{"identities"};

  Identities(const SphereGenerators& gen, const std::vector<TorusPoint>& t, const SphereCheckOptions& o)
      : g(gen),
        ts(t),
        opt(o),
        n(gen.n),
        N(2 * gen.n),
        m(gen.slots()),
        D(gen.cutoff),
        q(gen.q),
        q2(gen.q * gen.q),
        ic(index_constants(gen.n, gen.q)),
        B(gen.commutator()),
        Bs(adjoint(B)) {
    for (int i = 1; i <= N; ++i) zs.push_back(adjoint(g[i]));
  }

  const TensorOperator* Z(int i) const { return &g.z[static_cast<std::size_t>(i - 1)]; }
  const TensorOperator* Zs(int i) const { return &zs[static_cast<std::size_t>(i - 1)]; }
  Expr expr() const { return Expr(n, m, D); }

  double residual(const Expr& e) const {
    ProductSum ps = e.build();
    auto bw = ps.bwidth();
    if (std::any_of(bw.begin(), bw.end(), [&](int b) { return b > D - 1; }))
      throw std::domain_error("interior too small for requested power; raise the cutoff");
    return interior_residual(ps, ts, bw, opt.interior);
  }

  void gate(const std::string& k, const Expr& e) { rep.residual(k, residual(e), opt.tol); }
  void uncorrected(const std::string& k, const Expr& e) {
    double r = residual(e);
    rep.info(k, r, r <= opt.tol ? "uncorrected form holds" : "uncorrected form does not hold");
  }

  void omega_relations() {
    for (int i = 1; i <= N; ++i) {
      if (i == N) continue;
      const int s = i == 1 ? 4 : 2;
      const std::string tag = i == 1 ? "z1_omega" : "zi_omega";
      Expr a = expr();
      a.add(1.0, {Z(i), &g.omega}).add(-std::pow(q, -s), {&g.omega, Z(i)});
      gate(key(tag, {i}), a);
      Expr b = expr();
      b.add(1.0, {Zs(i), &g.omega}).add(-std::pow(q, s), {&g.omega, Zs(i)});
      gate(key(tag + "*", {i}), b);
    }
  }

  void operator_identities(int max_power) {
    for (int p = 1; p <= max_power; ++p) {
      const double f = 1 - std::pow(q, 2 * p);
      // z_i^* z_i^m for i > n
      for (int i = n + 1; i <= N; ++i) {
        Expr e = expr();
        e.add(1.0, cat({{Zs(i)}, pow(Z(i), p)})).add(-1.0, cat({pow(Z(i), p), {Zs(i)}}));
        for (int k = i + 1; k <= N; ++k) e.add(-f, cat({pow(Z(i), p - 1), {Z(k), Zs(k)}}));
        gate(key("pow_normal", {i, p}), e);
      }
      // same for i <= n, uncorrected
      for (int i = 1; i <= n; ++i) {
        Expr e = expr();
        e.add(1.0, cat({{Zs(i)}, pow(Z(i), p)})).add(-1.0, cat({pow(Z(i), p), {Zs(i)}}));
        e.add(-std::pow(q, 2 * ic.r(i)) * f, cat({pow(Z(i), p - 1), {Z(ic.ip(i)), Zs(ic.ip(i))}}));
        for (int k = i + 1; k <= N; ++k) e.add(-f, cat({pow(Z(i), p - 1), {Z(k), Zs(k)}}));
        uncorrected(key("pow_normal_low", {i, p}), e);
      }
      // z_i^* z_j^m for i + j < 2n+1, i != j
      for (int i = 1; i <= N; ++i)
        for (int j = 1; j <= N; ++j) {
          if (i == j || i + j >= N + 1) continue;
          const double c = ic.e(i) * ic.e(j) * std::pow(q, ic.r(i) + ic.r(j));
          Expr lit = expr(), cor = expr();
          for (Expr* e : {&lit, &cor})
            e->add(1.0, cat({{Zs(i)}, pow(Z(j), p)})).add(-std::pow(q, p), cat({pow(Z(j), p), {Zs(i)}}));
          Word tail = cat({pow(Z(j), p - 1), {Z(ic.ip(i)), Zs(ic.ip(j))}});
          lit.add(-p * std::pow(q, p) * (1 - q2) * c, tail);
          cor.add(-std::pow(q, p - 1) * f * c, tail);
          uncorrected(key("cross_uncorrected", {i, j, p}), lit);
          gate(key("cross", {i, j, p}), cor);
        }
      // z_i^* B^m for i > n
      for (int i = n + 1; i <= N; ++i) {
        Expr e = expr();
        e.add(1.0, cat({{Zs(i)}, pow(&B, p)})).add(-std::pow(q, 2 * p), cat({pow(&B, p), {Zs(i)}}));
        gate(key("comm_power", {i, p}), e);
      }
      // z_n^* B^m
      {
        const double c = (1 - q2 * q2) * (1 - q2);
        Expr lit = expr(), cor = expr();
        for (Expr* e : {&lit, &cor})
          e->add(1.0, cat({{Zs(n)}, pow(&B, p)})).add(-std::pow(q, 2 * p), cat({pow(&B, p), {Zs(n)}}));
        for (int l = 0; l <= p - 1; ++l) {
          for (int k = n + 2; k <= N; ++k)
            lit.add(-c * std::pow(q, 4 * l), cat({pow(&B, p - 1 - l), {Z(n + 1)}, pow(&B, l), {Z(k), Zs(k)}}));
          for (int k = n + 1; k <= N; ++k)
            cor.add(-c * std::pow(q, 2 * l), cat({pow(&B, l), {Z(n + 1), Z(k), Zs(k)}, pow(&B, p - 1 - l)}));
        }
        uncorrected(key("zn_comm_power_uncorrected", {p}), lit);
        gate(key("zn_comm_power", {p}), cor);
      }
      // z_i z_{i'}^m: uncorrected for 1 < i <= n, corrected for i > n
      for (int i = 2; i <= n; ++i) {
        Expr e = expr();
        e.add(1.0, cat({{Z(i)}, pow(Z(ic.ip(i)), p)})).add(-std::pow(q, 2 * p), cat({pow(Z(ic.ip(i)), p), {Z(i)}}));
        for (int k = i + 1; k <= N; ++k) e.add(f * std::pow(q, i - k), cat({{Z(k), Z(ic.ip(k))}, pow(Z(i), p - 1)}));
        uncorrected(key("conj_power_uncorrected", {i, p}), e);
      }
      for (int i = n + 1; i <= N; ++i) {
        Expr e = expr();
        e.add(1.0, cat({{Z(i)}, pow(Z(ic.ip(i)), p)})).add(-std::pow(q, 2 * p), cat({pow(Z(ic.ip(i)), p), {Z(i)}}));
        for (int k = i + 1; k <= N; ++k)
          e.add(f * std::pow(q, i - k), cat({pow(Z(ic.ip(i)), p - 1), {Z(k), Z(ic.ip(k))}}));
        gate(key("conj_power", {i, p}), e);
      }
    }
  }

  // ---------------------------------------------------------------- vectors
  std::vector<int> word_bw(const std::vector<int>& label) const {
    std::vector<int> bw(static_cast<std::size_t>(m), 0);
    auto add = [&](const std::vector<int>& b, int times) {
      for (std::size_t s = 0; s < bw.size(); ++s) bw[s] += times * b[s];
    };
    add(B.bwidth(), label.back());
    for (int l = 2; l <= N - 1; ++l) add(g[l].bwidth(), label[static_cast<std::size_t>(l - 2)]);
    return bw;
  }

  bool room(std::vector<int> bw, std::initializer_list<const TensorOperator*> extra) const {
    for (const auto* op : extra) {
      auto b = op->bwidth();
      for (std::size_t s = 0; s < bw.size(); ++s) bw[s] += b[s];
    }
    return std::all_of(bw.begin(), bw.end(), [&](int b) { return b <= D - 1; });
  }

  void vectors(int max_power, int L) {
    const TorusPoint& t = ts.front();
    BasisFamily fam = basis_family(g, L, t);
    std::map<std::vector<int>, std::size_t> at;
    for (std::size_t i = 0; i < fam.labels.size(); ++i) at[fam.labels[i]] = i;
    const double tol = 1e-8;
    long long skipped = 0;
    const SparseVector vac = basis_vector(g.vacuum(), D);

    // z_i^* u_α: lowers α_i (α_i > 0) or vanishes (α_i = 0), n < i < 2n
    for (int i = n + 1; i <= N - 1; ++i) {
      double lower = 0, zero = 0;
      for (std::size_t a = 0; a < fam.labels.size(); ++a) {
        const auto& lab = fam.labels[a];
        if (!room(word_bw(lab), {Zs(i)})) {
          ++skipped;
          continue;
        }
        SparseVector v = apply(*Zs(i), fam.vectors[a], t);
        const int ai = lab[static_cast<std::size_t>(i - 2)];
        if (ai == 0) {
          zero = std::max(zero, v.norm());
        } else {
          auto low = lab;
          --low[static_cast<std::size_t>(i - 2)];
          lower = std::max(lower, v.norm() > 1e-12 ? collinearity_defect(v, fam.vectors[at.at(low)]) : 1.0);
        }
      }
      rep.residual(key("lowering", {i}), lower, tol);
      rep.residual(key("annihilation", {i}), zero, opt.tol);
    }

    // z_i^* commutes with the z_l (l < i) part up to a nonzero constant, 1 < i <= n
    for (int i = 2; i <= n; ++i) {
      double worst = 0;
      for (std::size_t a = 0; a < fam.labels.size(); ++a) {
        const auto& lab = fam.labels[a];
        bool ok = true;
        for (int l = i; l <= N - 1; ++l) ok = ok && lab[static_cast<std::size_t>(l - 2)] == 0;
        if (!ok) continue;
        if (!room(word_bw(lab), {Zs(i)})) {
          ++skipped;
          continue;
        }
        SparseVector lhs = apply(*Zs(i), fam.vectors[a], t);
        SparseVector rhs = apply(*Zs(i), power_apply(B, lab.back(), vac, t), t);
        for (int l = 2; l <= i - 1; ++l) rhs = power_apply(g[l], lab[static_cast<std::size_t>(l - 2)], rhs, t);
        worst = std::max(worst, collinearity_defect(lhs, rhs));
      }
      rep.residual(key("reorder", {i}), worst, tol);
    }

    // B^* B^m u ∝ B^{m-1} u, z_i^* B^m u ∝ z_{i'} B^{m-1} u
    for (int p = 1; p <= max_power; ++p) {
      std::vector<int> bw(static_cast<std::size_t>(m), 0);
      for (std::size_t s = 0; s < bw.size(); ++s) bw[s] = p * B.bwidth()[s];
      if (!room(bw, {&Bs})) {
        ++skipped;
        continue;
      }
      SparseVector Bp = power_apply(B, p, vac, t), Bp1 = power_apply(B, p - 1, vac, t);
      SparseVector lhs = apply(Bs, Bp, t);
      rep.residual(key("comm_lowering", {p}), lhs.norm() > 1e-12 ? collinearity_defect(lhs, Bp1) : 1.0, tol);
      for (int i = 1; i <= n - 1; ++i) {
        SparseVector a = apply(*Zs(i), Bp, t);
        SparseVector b = apply(*Z(ic.ip(i)), Bp1, t);
        rep.residual(key("comm_cross", {i, p}), a.norm() <= 1e-12 ? 0.0 : collinearity_defect(a, b), tol);
      }
    }

    // z_1^* u_{α_2..α_n,0..0,α_0} ∝ u_{…,α_0-1}
    {
      double worst = 0;
      for (std::size_t a = 0; a < fam.labels.size(); ++a) {
        const auto& lab = fam.labels[a];
        bool ok = lab.back() >= 1;
        for (int l = n + 1; l <= N - 1; ++l) ok = ok && lab[static_cast<std::size_t>(l - 2)] == 0;
        if (!ok) continue;
        if (!room(word_bw(lab), {Zs(1)})) {
          ++skipped;
          continue;
        }
        SparseVector v = apply(*Zs(1), fam.vectors[a], t);
        auto low = lab;
        --low.back();
        worst = std::max(worst, v.norm() > 1e-12 ? collinearity_defect(v, fam.vectors[at.at(low)]) : 1.0);
      }
      rep.residual("z1_lowering", worst, tol);
    }

    // B^r z_{n+1} B^s u ∝ z_{n+1} B^{r+s} u
    {
      double worst = 0;
      for (int r = 1; 2 * r + 1 <= L; ++r)
        for (int s = 0; 2 * (r + s) + 1 <= L; ++s) {
          SparseVector a = power_apply(B, r, apply(*Z(n + 1), power_apply(B, s, vac, t), t), t);
          SparseVector b = apply(*Z(n + 1), power_apply(B, r + s, vac, t), t);
          worst = std::max(worst, collinearity_defect(a, b));
        }
      rep.residual("comm_zn1_shuffle", worst, tol);
    }

    // z_{2n}^* on the vacuum
    {
      double worst = 0;
      for (const auto& tt : ts) {
        SparseVector v = apply(*Zs(N), vac, tt);
        worst = std::max(worst, (v - std::conj(g.vacuum_phase * tt[0]) * vac).norm());
      }
      rep.residual("z2n*_vacuum", worst, opt.tol);
    }
    rep.info_integer("vector_checks_skipped", skipped);
  }
};

}  // namespace

VerificationReport check_derived_identities(const SphereGenerators& g, const std::vector<TorusPoint>& ts,
                                            const SphereCheckOptions& opt, int max_power, int L) {
  if (g.k != 2 * g.n) throw std::invalid_argument("derived identities need k = 2n");
  if (ts.empty()) throw std::invalid_argument("derived identities need at least one torus sample");
  if (max_power < 1) throw std::invalid_argument("max power must be >= 1");
  Identities id(g, ts, opt);
  id.omega_relations();
  id.operator_identities(max_power);
  id.vectors(max_power, L);
  return id.rep;
}

}  // namespace spq
