#include "spq/sphere.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "expr.hpp"
#include "spq/qsymp.hpp"

namespace spq {

using detail::cat;
using detail::Expr;
using detail::pow;

namespace {

std::string key(const char* tag, std::initializer_list<int> idx) {
  std::ostringstream os;
  os << tag << '(';
  bool first = true;
  for (int i : idx) {
    if (!first) os << ',';
    os << i;
    first = false;
  }
  os << ')';
  return os.str();
}

TorusPoint ones(int n) { return TorusPoint(static_cast<std::size_t>(n), 1.0); }

void add_bw(std::vector<int>& acc, const std::vector<int>& bw, int times = 1) {
  for (std::size_t s = 0; s < acc.size(); ++s) acc[s] += times * bw[s];
}

bool fits(const std::vector<int>& bw, int D) {
  return std::all_of(bw.begin(), bw.end(), [D](int b) { return b <= D - 1; });
}

SparseVector power_apply(const TensorOperator& A, int m, SparseVector v, const TorusPoint& t) {
  for (int i = 0; i < m; ++i) v = apply(A, v, t);
  return v;
}

// All tuples of `len` non-negative entries with Σ c_l a_l <= L, ordered by weight then lexicographically.
std::vector<std::vector<int>> weighted_tuples(const std::vector<int>& cost, int L) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(cost.size(), 0);
  auto rec = [&](auto&& self, std::size_t pos, int used) -> void {
    if (pos == cost.size()) {
      out.push_back(cur);
      return;
    }
    for (int a = 0; used + a * cost[pos] <= L; ++a) {
      cur[pos] = a;
      self(self, pos + 1, used + a * cost[pos]);
    }
    cur[pos] = 0;
  };
  rec(rec, 0, 0);
  auto weight = [&](const std::vector<int>& a) {
    int w = 0;
    for (std::size_t i = 0; i < a.size(); ++i) w += a[i] * cost[i];
    return w;
  };
  std::stable_sort(out.begin(), out.end(), [&](const auto& x, const auto& y) {
    int wx = weight(x), wy = weight(y);
    return wx != wy ? wx < wy : x < y;
  });
  return out;
}

// Kernel dimension of the interior compression of a positive operator,
// block by block over the connected components of its sparsity graph.
long long kernel_dimension(const TensorOperator& A, const std::vector<std::vector<int>>& idx, const TorusPoint& t,
                           double tol) {
  const int D = A.cutoff();
  std::unordered_map<std::uint64_t, std::size_t> pos;
  for (std::size_t i = 0; i < idx.size(); ++i) pos[linear_index(idx[i], D)] = i;
  std::vector<std::size_t> parent(idx.size());
  for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = i;
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<std::vector<std::pair<std::size_t, cplx>>> cols(idx.size());
  for (std::size_t c = 0; c < idx.size(); ++c)
    for (const auto& [r, v] : apply_to_basis(A, idx[c], t).entries)
      if (auto it = pos.find(r); it != pos.end()) {
        cols[c].emplace_back(it->second, v);
        parent[find(it->second)] = find(c);
      }
  std::unordered_map<std::size_t, std::vector<std::size_t>> blocks;
  for (std::size_t i = 0; i < idx.size(); ++i) blocks[find(i)].push_back(i);
  long long dim = 0;
  for (const auto& [root, members] : blocks) {
    const auto K = static_cast<Eigen::Index>(members.size());
    if (K > 4096) throw std::length_error("kernel_dimension: block too large");
    std::unordered_map<std::size_t, Eigen::Index> local;
    for (Eigen::Index i = 0; i < K; ++i) local[members[static_cast<std::size_t>(i)]] = i;
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(K, K);
    for (Eigen::Index c = 0; c < K; ++c)
      for (const auto& [r, v] : cols[members[static_cast<std::size_t>(c)]]) M(local.at(r), c) = v;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (M + M.adjoint()), Eigen::EigenvaluesOnly);
    dim += (es.eigenvalues().array().abs() <= tol).count();
  }
  return dim;
}

}  // namespace

TensorOperator SphereGenerators::commutator() const {
  if (n < 1 || static_cast<int>(z.size()) < n + 1) throw std::logic_error("commutator: generators missing");
  return (*this)[n] * (*this)[n + 1] - (*this)[n + 1] * (*this)[n];
}

SphereGenerators sphere_generators(int k, int n, int D, double q) {
  if (n < 2) throw std::invalid_argument("sphere: n >= 2");
  if (k < 1 || k > 2 * n) throw std::invalid_argument("sphere: need 1 <= k <= 2n");
  Corepresentation a = corep_of_word(omega_word(k, n), true, D, q);
  SphereGenerators g;
  g.n = n;
  g.k = k;
  g.cutoff = D;
  g.q = q;
  for (int j = 1; j <= 2 * n; ++j) g.z.push_back(a(2 * n, 2 * n + 1 - j));
  const TensorOperator& zk = g[k];
  g.omega = k == 2 * n ? adjoint(g[2 * n]) * g[2 * n] : adjoint(zk) * zk;
  SparseVector v = apply_to_basis(zk, g.vacuum(), ones(n));
  cplx c = v.at(0);
  g.vacuum_phase = std::abs(c) > 0 ? c / std::abs(c) : cplx(1.0);
  return g;
}

SphereGenerators with_perturbed_generator(const SphereGenerators& g, int j, double dq) {
  if (j < 1 || j > 2 * g.n) throw std::invalid_argument("perturbed generator index out of range");
  SphereGenerators other = sphere_generators(g.k, g.n, g.cutoff, g.q + dq);
  SphereGenerators out = g;
  out.z[static_cast<std::size_t>(j - 1)] = other[j];
  return out;
}

VerificationReport check_sphere_relations(const SphereGenerators& g, const std::vector<TorusPoint>& ts,
                                          const SphereCheckOptions& opt) {
  VerificationReport rep("sphere");
  const int n = g.n, N = 2 * n, m = g.slots(), D = g.cutoff;
  const double q = g.q, q2 = q * q;
  IndexConstants ic = index_constants(n, q);
  std::vector<TensorOperator> zs;
  for (int i = 1; i <= N; ++i) zs.push_back(adjoint(g[i]));
  const TensorOperator one = TensorOperator::identity(n, m, D);
  auto Z = [&](int i) { return &g.z[static_cast<std::size_t>(i - 1)]; };
  auto Zs = [&](int i) { return &zs[static_cast<std::size_t>(i - 1)]; };
  auto run = [&](const std::string& k, const Expr& e) {
    rep.residual(k, interior_residual(e.build(), ts, opt.interior), opt.tol);
  };

  for (int i = 1; i <= N; ++i)
    for (int j = 1; j < i; ++j) {
      if (i + j == N + 1) continue;
      Expr e(n, m, D);
      e.add(1.0, {Z(i), Z(j)}).add(-q, {Z(j), Z(i)});
      run(key("c1", {i, j}), e);
    }
  for (int i = n + 1; i <= N; ++i) {
    Expr e(n, m, D);
    e.add(1.0, {Z(i), Z(ic.ip(i))}).add(-q2, {Z(ic.ip(i)), Z(i)});
    for (int k = i + 1; k <= N; ++k) e.add((1 - q2) * std::pow(q, i - k), {Z(k), Z(ic.ip(k))});
    run(key("c2", {i}), e);
  }
  for (int i = 1; i <= N; ++i) {
    Expr e(n, m, D);
    e.add(1.0, {Zs(i), Z(ic.ip(i))}).add(-q2, {Z(ic.ip(i)), Zs(i)});
    run(key("c3", {i}), e);
  }
  for (int i = 1; i <= N; ++i)
    for (int j = 1; j <= N; ++j) {
      if (i == j || i + j == N + 1) continue;
      Expr e(n, m, D);
      e.add(1.0, {Zs(i), Z(j)}).add(-q, {Z(j), Zs(i)});
      if (i + j < N + 1) {
        e.add(-(1 - q2) * ic.e(i) * ic.e(j) * std::pow(q, ic.r(i) + ic.r(j)), {Z(ic.ip(i)), Zs(ic.ip(j))});
        run(key("c5", {i, j}), e);
      } else {
        run(key("c4", {i, j}), e);
      }
    }
  for (int i = 1; i <= N; ++i) {
    Expr e(n, m, D);
    e.add(1.0, {Zs(i), Z(i)}).add(-1.0, {Z(i), Zs(i)});
    if (i <= n) e.add(-(1 - q2) * std::pow(q, 2 * ic.r(i)), {Z(ic.ip(i)), Zs(ic.ip(i))});
    for (int k = i + 1; k <= N; ++k) e.add(-(1 - q2), {Z(k), Zs(k)});
    run(key(i > n ? "c6" : "c7", {i}), e);
  }
  {
    Expr e(n, m, D);
    for (int i = 1; i <= N; ++i) e.add(1.0, {Z(i), Zs(i)});
    e.add(-1.0, {&one});
    run("c8", e);
  }

  {
    Expr e(n, m, D);
    e.add(1.0, {Zs(N), Z(N)}).add(-1.0, {Z(N), Zs(N)});
    run("normal(z_2n)", e);
  }
  for (int i = 1; i <= N; ++i) {
    double colnorm = g[i].is_zero() ? 0.0 : interior_residual(g[i], ts, opt.interior);
    rep.residual(key("norm", {i}), std::max(0.0, colnorm - 1.0), opt.tol, "excess of max column norm over 1");
  }

  // generators depend on t_1 only, with degree at most 1
  bool t1_only = true;
  for (const auto& op : g.z)
    for (const auto& term : op.terms())
      for (std::size_t c = 0; c < term.mono.exps.size(); ++c) {
        int e = term.mono.exps[c];
        if ((c == 0 && std::abs(e) > 1) || (c > 0 && e != 0)) t1_only = false;
      }
  rep.flag("torus(t_1 only)", t1_only);
  for (int j = g.k + 1; j <= N; ++j) rep.flag(key("vanishes", {j}), g[j].is_zero());

  // z_k u = phase·t·u
  {
    double worst = 0;
    for (const auto& t : ts) {
      SparseVector v = apply_to_basis(g[g.k], g.vacuum(), t);
      SparseVector w = (g.vacuum_phase * t[0]) * basis_vector(g.vacuum(), D);
      worst = std::max(worst, (v - w).norm());
    }
    rep.residual("vacuum(z_k)", worst, opt.tol);
  }

  // grading: ω z_i = q^{2s} z_i ω with s = 1 (1<i<2n), 2 (i=1), 0 (i=2n)
  if (g.k == N) {
    for (int i = 1; i <= N; ++i) {
      int s = i == 1 ? 2 : (i == N ? 0 : 1);
      Expr e(n, m, D);
      e.add(1.0, {&g.omega, Z(i)}).add(-std::pow(q, 2 * s), {Z(i), &g.omega});
      run(key("grade", {i}), e);
    }
  }

  // joint kernel of z_i^* (i != k) is the vacuum line
  if (m > 0) {
    TensorOperator A = TensorOperator::zero(n, m, D);
    for (int i = 1; i <= N; ++i)
      if (i != g.k && !g[i].is_zero()) A = A + g[i] * adjoint(g[i]);
    auto bw = A.bwidth();
    auto idx = interior_indices(bw, D);
    if (A.is_diagonal()) {
      long long dim = 0;
      bool vac = false;
      for (const auto& a : idx) {
        double v = std::abs(apply_to_basis(A, a, ones(n)).at(linear_index(a, D)));
        if (v <= 1e-9) {
          ++dim;
          vac = vac || std::all_of(a.begin(), a.end(), [](int x) { return x == 0; });
        }
      }
      rep.integer("joint_kernel_dim", dim, 1);
      rep.flag("joint_kernel_contains_vacuum", vac);
    } else {
      rep.integer("joint_kernel_dim", kernel_dimension(A, idx, ones(n), 1e-9), 1);
    }
  }
  return rep;
}

std::vector<SpectralLine> omega_spectrum(const SphereGenerators& g, double cluster_tol) {
  const TensorOperator& w = g.omega;
  const int D = g.cutoff;
  const TorusPoint t = ones(g.n);
  std::vector<double> values;
  if (w.slots() == 0) {
    values.push_back(apply_to_basis(w, {}, t).at(0).real());
  } else {
    auto idx = interior_indices(w.bwidth(), D);
    if (w.is_diagonal()) {
      for (const auto& a : idx) values.push_back(apply_to_basis(w, a, t).at(linear_index(a, D)).real());
    } else {
      if (idx.size() > 4096) throw std::length_error("omega_spectrum: interior too large for dense fallback");
      std::unordered_map<std::uint64_t, Eigen::Index> pos;
      for (std::size_t i = 0; i < idx.size(); ++i) pos[linear_index(idx[i], D)] = static_cast<Eigen::Index>(i);
      const auto N = static_cast<Eigen::Index>(idx.size());
      Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(N, N);
      for (Eigen::Index c = 0; c < N; ++c)
        for (const auto& [r, v] : apply_to_basis(w, idx[static_cast<std::size_t>(c)], t).entries)
          if (auto it = pos.find(r); it != pos.end()) M(it->second, c) = v;
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (M + M.adjoint()));
      for (Eigen::Index i = 0; i < N; ++i) values.push_back(es.eigenvalues()(i));
    }
  }
  std::sort(values.begin(), values.end(), std::greater<>());
  std::vector<SpectralLine> out;
  for (double v : values) {
    if (!out.empty() && std::abs(out.back().value - v) <= cluster_tol)
      ++out.back().multiplicity;
    else
      out.push_back({v, 1});
  }
  return out;
}

VerificationReport check_spectrum(const SphereGenerators& g, double tol) {
  VerificationReport rep("spectrum");
  auto lines = omega_spectrum(g, tol);
  const double q2 = g.q * g.q;
  double worst = 0;
  long long inside = 0;
  for (const auto& l : lines) {
    double d = std::abs(l.value);
    for (double p = 1.0; p > 1e-300; p *= q2) {
      d = std::min(d, std::abs(l.value - p));
      if (p < l.value - 1.0) break;
    }
    worst = std::max(worst, d);
    if (d > tol && l.value > 0 && l.value < 1) ++inside;
    std::ostringstream k;
    k.precision(12);
    k << "line(" << l.value << ")";
    rep.info_integer(k.str(), l.multiplicity);
  }
  rep.residual("lattice_distance", worst, tol);
  rep.integer("inside_gaps", inside, 0);
  cplx vac = apply_to_basis(g.omega, g.vacuum(), ones(g.n)).at(0);
  rep.residual("vacuum_eigenvalue", std::abs(vac - 1.0), tol);
  long long mult1 = 0;
  for (const auto& l : lines)
    if (std::abs(l.value - 1.0) <= tol) mult1 += l.multiplicity;
  rep.integer("H0_dim", mult1, 1);
  return rep;
}

BasisFamily basis_family(const SphereGenerators& g, int L, const TorusPoint& t) {
  const int n = g.n, N = 2 * n, D = g.cutoff;
  if (L < 0) throw std::invalid_argument("basis_family: negative weight bound");
  BasisFamily b;
  b.n = n;
  b.k = g.k;
  b.L = L;
  b.t = t;
  const auto wbw = g.omega.bwidth();
  if (g.k == N) {
    // labels (α_2..α_{2n-1}, α_0)
    std::vector<int> cost(static_cast<std::size_t>(N - 1), 1);
    cost.back() = 2;
    const TensorOperator B = g.commutator();
    for (auto& a : weighted_tuples(cost, L)) {
      std::vector<int> bw = wbw;
      add_bw(bw, B.bwidth(), a.back());
      for (int l = 2; l <= N - 1; ++l) add_bw(bw, g[l].bwidth(), a[static_cast<std::size_t>(l - 2)]);
      if (!fits(bw, D)) throw std::domain_error("weight bound exceeds interior validity");
      SparseVector v = power_apply(B, a.back(), basis_vector(g.vacuum(), D), t);
      for (int l = 2; l <= N - 1; ++l) v = power_apply(g[l], a[static_cast<std::size_t>(l - 2)], v, t);
      int w = 0;
      for (std::size_t i = 0; i + 1 < a.size(); ++i) w += a[i];
      w += 2 * a.back();
      b.weights.push_back(w);
      b.vectors.push_back(std::move(v));
      b.labels.push_back(std::move(a));
    }
  } else if (g.k <= n) {
    std::vector<int> cost(static_cast<std::size_t>(g.k - 1), 1);
    for (auto& a : weighted_tuples(cost, L)) {
      std::vector<int> bw = wbw;
      for (int l = 1; l <= g.k - 1; ++l) add_bw(bw, g[l].bwidth(), a[static_cast<std::size_t>(l - 1)]);
      if (!fits(bw, D)) throw std::domain_error("weight bound exceeds interior validity");
      SparseVector v = basis_vector(g.vacuum(), D);
      for (int l = g.k - 1; l >= 1; --l) v = power_apply(g[l], a[static_cast<std::size_t>(l - 1)], v, t);
      int w = 0;
      for (int x : a) w += x;
      b.weights.push_back(w);
      b.vectors.push_back(std::move(v));
      b.labels.push_back(std::move(a));
    }
  } else {
    throw std::invalid_argument("basis_family: implemented for k = 2n and k <= n");
  }
  return b;
}

GramResult gram_matrix(const BasisFamily& b) {
  const auto N = static_cast<Eigen::Index>(b.vectors.size());
  GramResult r;
  r.gram = Eigen::MatrixXcd::Zero(N, N);
  r.min_diag = N > 0 ? std::numeric_limits<double>::infinity() : 0.0;
  for (Eigen::Index i = 0; i < N; ++i)
    for (Eigen::Index j = 0; j < N; ++j) {
      cplx v = inner(b.vectors[static_cast<std::size_t>(i)], b.vectors[static_cast<std::size_t>(j)]);
      r.gram(i, j) = v;
      if (i == j)
        r.min_diag = std::min(r.min_diag, v.real());
      else
        r.max_offdiag = std::max(r.max_offdiag, std::abs(v));
    }
  return r;
}

VerificationReport check_basis(const SphereGenerators& g, int L, const TorusPoint& t1, const TorusPoint& t2,
                               double tol_offdiag, double tol_norm) {
  VerificationReport rep("gram");
  BasisFamily b1 = basis_family(g, L, t1);
  BasisFamily b2 = basis_family(g, L, t2);
  rep.info_integer("family_size", static_cast<long long>(b1.vectors.size()));
  double min_norm = std::numeric_limits<double>::infinity(), grade = 0, ndiff = 0;
  const double q2 = g.q * g.q;
  for (std::size_t i = 0; i < b1.vectors.size(); ++i) {
    const auto& v = b1.vectors[i];
    double nv = v.norm();
    min_norm = std::min(min_norm, nv);
    if (nv > 0) {
      SparseVector d = apply(g.omega, v, t1) - std::pow(q2, b1.weights[i]) * v;
      grade = std::max(grade, d.norm() / nv);
    }
    ndiff = std::max(ndiff, std::abs(nv - b2.vectors[i].norm()));
  }
  rep.flag("all_nonzero", min_norm > 1e-12);
  rep.info("min_norm", min_norm);
  rep.residual("omega_grading", grade, 1e-9);
  GramResult gr = gram_matrix(b1);
  rep.residual("gram_offdiag", gr.max_offdiag, tol_offdiag);
  rep.flag("gram_diag_positive", gr.min_diag > 0);
  rep.residual("norm_torus_independence", ndiff, tol_norm);
  return rep;
}

VerificationReport corner_elements(const SphereGenerators& g, const std::vector<int>& alpha, const TorusPoint& t,
                                   double tol) {
  const int n = g.n, N = 2 * n, k = g.k, D = g.cutoff, m = g.slots();
  if (static_cast<int>(alpha.size()) != N) throw std::invalid_argument("corner: alpha needs 2n entries (α_0..α_{2n-1})");
  if (k < 2) throw std::invalid_argument("corner: needs k >= 2");
  auto A = [&](int l) { return alpha[static_cast<std::size_t>(l)]; };
  std::vector<bool> used(static_cast<std::size_t>(N), false);
  std::vector<int> target;
  const TensorOperator B = g.commutator();
  TensorOperator P = spectral_projection_one(adjoint(g[k]) * g[k]);
  Expr e(n, m, D);
  detail::Word w;
  if (k <= n) {
    for (int l = 1; l <= k - 1; ++l) {
      used[static_cast<std::size_t>(l)] = true;
      target.push_back(A(l));
      w = cat({w, pow(&g.z[static_cast<std::size_t>(l - 1)], A(l))});
    }
  } else {
    for (int l = 1; l <= N - k; ++l) {
      used[static_cast<std::size_t>(l)] = true;
      target.push_back(A(l));
      w = cat({w, pow(&g.z[static_cast<std::size_t>(l - 1)], A(l))});
    }
    for (int l = k - 1; l >= N - k + 2; --l) {
      used[static_cast<std::size_t>(l)] = true;
      w = cat({w, pow(&g.z[static_cast<std::size_t>(l - 1)], A(l))});
    }
    for (int l = N - k + 2; l <= n; ++l) target.push_back(A(l));
    used[0] = true;
    target.push_back(A(0));
    for (int l = n + 1; l <= k - 1; ++l) target.push_back(A(l));
    w = cat({w, pow(&B, A(0))});
  }
  for (int l = 0; l < N; ++l)
    if (!used[static_cast<std::size_t>(l)] && A(l) != 0)
      throw std::invalid_argument("corner: α_" + std::to_string(l) + " is not used for this k");
  w.push_back(&P);
  e.add(1.0, w);
  ProductSum ps = e.build();
  auto margin = ps.bwidth();
  for (std::size_t s = 0; s < target.size(); ++s)
    if (target[s] > D - 1 - margin[s]) throw std::domain_error("corner: target index outside the interior");
  auto idx = interior_indices(margin, D);

  VerificationReport rep("corner");
  std::ostringstream lab;
  for (std::size_t i = 0; i < alpha.size(); ++i) lab << (i ? "," : "") << alpha[i];
  rep.echo("alpha", lab.str());
  const std::uint64_t tgt = linear_index(target, D);
  cplx C = 0;
  double off = 0, on = 0;
  for (const auto& a : idx) {
    SparseVector r = ps.apply(basis_vector(a, D), t);
    if (std::all_of(a.begin(), a.end(), [](int x) { return x == 0; })) {
      C = r.at(tgt);
      SparseVector expect;
      expect.entries.emplace_back(tgt, C);
      on = (r - expect).norm();
    } else {
      off = std::max(off, r.norm());
    }
  }
  const double scale = std::abs(C);
  rep.info("abs(C)", scale);
  rep.flag("C_nonzero", scale > 1e-12);
  rep.residual("relative_deviation", scale > 0 ? std::max(on, off) / scale : std::numeric_limits<double>::infinity(),
               tol);
  rep.flag("projection_torus_constant", P.is_torus_constant());
  return rep;
}

VerificationReport symbol_compatibility(int k, int n, int D, double q, const std::vector<TorusPoint>& ts, double tol) {
  if (k < 2 || k > 2 * n) throw std::invalid_argument("symbol_compatibility: need 2 <= k <= 2n");
  VerificationReport rep("symbol");
  SphereGenerators hi = sphere_generators(k, n, D, q);
  SphereGenerators lo = sphere_generators(k - 1, n, D, q);
  for (int j = 1; j <= 2 * n; ++j) {
    TensorOperator d = symbol_last(hi[j]) - lo[j];
    double r = 0;
    if (!d.is_zero()) {
      std::vector<int> margin = d.bwidth();
      r = interior_residual(d, ts, margin);
    }
    rep.residual(key("sigma", {k, j}), r, tol);
  }
  return rep;
}

double collinearity_defect(const SparseVector& a, const SparseVector& b, double zero_tol) {
  const double na = a.norm(), nb = b.norm();
  const bool za = na <= zero_tol, zb = nb <= zero_tol;
  if (za && zb) return 0.0;
  if (za || zb) return 1.0;
  cplx c = inner(b, a) / (nb * nb);
  return (a - c * b).norm() / na;
}

}  // namespace spq
