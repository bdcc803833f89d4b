#pragma once

// Test-side reference implementations. Written from the formulas, not from
// the library code, so the two can disagree.

#include <cmath>
#include <complex>
#include <map>
#include <queue>
#include <set>
#include <vector>

#include <Eigen/Dense>

#include "spq/fock.hpp"

namespace oracle {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;

inline int ip(int i, int n) { return 2 * n + 1 - i; }
inline int rho(int i, int n) { return i <= n ? n + 1 - i : -(n + 1 - ip(i, n)); }
inline int eps(int i, int n) { return i <= n ? 1 : -1; }

inline double r_standard(int n, double q, int i, int j, int m, int k) {
  auto d = [](int a, int b) { return a == b ? 1.0 : 0.0; };
  double v = std::pow(q, d(i, j) - d(j, ip(i, n))) * d(i, m) * d(j, k);
  if (i > m)
    v += (q - 1 / q) * (d(j, m) * d(i, k) - eps(i, n) * eps(m, n) * std::pow(q, rho(i, n) - rho(m, n)) *
                                                 d(j, ip(i, n)) * d(k, ip(m, n)));
  return v;
}

// Truncated operators on span{e_0..e_{D-1}}, S e_k = e_{k-1}.
inline Mat S(int D) {
  Mat m = Mat::Zero(D, D);
  for (int k = 1; k < D; ++k) m(k - 1, k) = 1;
  return m;
}
inline Mat Sstar(int D) { return S(D).adjoint(); }
inline Mat diag(int D, double (*f)(int, double), double q) {
  Mat m = Mat::Zero(D, D);
  for (int k = 0; k < D; ++k) m(k, k) = f(k, q);
  return m;
}
inline Mat qN(int D, double q, int a, int b) {
  Mat m = Mat::Zero(D, D);
  for (int k = 0; k < D; ++k) m(k, k) = std::pow(q, a * k + b);
  return m;
}
inline Mat root(int D, double q, int a) {
  Mat m = Mat::Zero(D, D);
  for (int k = 0; k < D; ++k) m(k, k) = std::sqrt(1 - std::pow(q, a * k + a));
  return m;
}
inline Mat proj(int D, int i, int j) {
  Mat m = Mat::Zero(D, D);
  m(i, j) = 1;
  return m;
}

inline Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// π_{s_i}(u^a_b) from the elementary-representation table.
inline Mat elementary(int i, int n, int D, double q, int a, int b) {
  const Mat I = Mat::Identity(D, D);
  const Mat Z = Mat::Zero(D, D);
  if (i < n) {
    const int r1 = i, r2 = i + 1, r3 = 2 * n - i, r4 = 2 * n - i + 1;
    if ((a == r1 && b == r1) || (a == r3 && b == r3)) return root(D, q, 2) * S(D);
    if ((a == r2 && b == r2) || (a == r4 && b == r4)) return Sstar(D) * root(D, q, 2);
    if (a == r1 && b == r2) return -qN(D, q, 1, 1);
    if (a == r2 && b == r1) return qN(D, q, 1, 0);
    if (a == r3 && b == r4) return qN(D, q, 1, 1);
    if (a == r4 && b == r3) return -qN(D, q, 1, 0);
  } else {
    if (a == n && b == n) return root(D, q, 4) * S(D);
    if (a == n + 1 && b == n + 1) return Sstar(D) * root(D, q, 4);
    if (a == n && b == n + 1) return -qN(D, q, 2, 2);
    if (a == n + 1 && b == n) return qN(D, q, 2, 0);
  }
  return a == b ? I : Z;
}

// Dense matrix of a TensorOperator from its terms, rebuilt from offsets and weights.
inline Mat dense(const spq::TensorOperator& T, const spq::TorusPoint& t) {
  const int D = T.cutoff();
  Eigen::Index N = 1;
  for (int s = 0; s < T.slots(); ++s) N *= D;
  Mat out = Mat::Zero(N, N);
  for (const auto& term : T.terms()) {
    Mat acc = Mat::Identity(1, 1) * term.mono.eval(t);
    for (const auto& leg : term.legs) {
      Mat m = Mat::Zero(D, D);
      for (int c = 0; c < D; ++c) {
        int r = c + leg.offset();
        if (r >= 0 && r < D) m(r, c) = leg.weights()[static_cast<std::size_t>(c)];
      }
      acc = kron(acc, m);
    }
    out += acc;
  }
  return out;
}

// Rows and columns whose multi-index satisfies α_s <= D-1-margin.
inline std::vector<Eigen::Index> interior(int slots, int D, int margin) {
  std::vector<Eigen::Index> out;
  Eigen::Index N = 1;
  for (int s = 0; s < slots; ++s) N *= D;
  for (Eigen::Index i = 0; i < N; ++i) {
    Eigen::Index r = i;
    bool ok = true;
    for (int s = 0; s < slots; ++s) {
      ok = ok && r % D <= D - 1 - margin;
      r /= D;
    }
    if (ok) out.push_back(i);
  }
  return out;
}

// Max modulus of M on interior columns.
inline double interior_norm(const Mat& M, const std::vector<Eigen::Index>& cols) {
  double m = 0;
  for (auto c : cols) m = std::max(m, M.col(c).norm());
  return m;
}

// Zhelobenko interlacing, counted over the full box.
inline long long branching(const std::vector<int>& lambda, const std::vector<int>& mu, int n) {
  auto L = [&](int i) { return i >= 1 && i <= static_cast<int>(lambda.size()) ? lambda[static_cast<std::size_t>(i - 1)] : 0; };
  auto M = [&](int i) { return i >= 1 && i <= static_cast<int>(mu.size()) ? mu[static_cast<std::size_t>(i - 1)] : 0; };
  const int top = L(1);
  std::vector<int> nu(static_cast<std::size_t>(n), 0);
  long long count = 0;
  while (true) {
    bool ok = true;
    for (int i = 1; i <= n && ok; ++i) {
      int v = nu[static_cast<std::size_t>(i - 1)];
      ok = L(i) >= v && v >= L(i + 1);
    }
    for (int i = 1; i <= n - 1 && ok; ++i) {
      ok = nu[static_cast<std::size_t>(i - 1)] >= M(i) && M(i) >= nu[static_cast<std::size_t>(i)];
    }
    if (ok) ++count;
    int p = 0;
    while (p < n && ++nu[static_cast<std::size_t>(p)] > top) nu[static_cast<std::size_t>(p++)] = 0;
    if (p == n) break;
  }
  return count;
}

// Word length in W_n by breadth-first search, elements keyed by signed images.
inline std::map<std::vector<int>, int> cayley_lengths(int n) {
  auto apply = [n](const std::vector<int>& w, int s) {
    // right multiplication by s: acts on positions
    std::vector<int> out = w;
    if (s < n)
      std::swap(out[static_cast<std::size_t>(s - 1)], out[static_cast<std::size_t>(s)]);
    else
      out[static_cast<std::size_t>(n - 1)] = -out[static_cast<std::size_t>(n - 1)];
    return out;
  };
  std::vector<int> id(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) id[static_cast<std::size_t>(i)] = i + 1;
  std::map<std::vector<int>, int> dist{{id, 0}};
  std::queue<std::vector<int>> todo;
  todo.push(id);
  while (!todo.empty()) {
    auto w = todo.front();
    todo.pop();
    for (int s = 1; s <= n; ++s) {
      auto v = apply(w, s);
      if (!dist.count(v)) {
        dist[v] = dist[w] + 1;
        todo.push(v);
      }
    }
  }
  return dist;
}

// π_{t,w}(u^a_b) as a dense matrix: torus character, then Kronecker chains
// of elementary tables, (φ*ψ)(u^a_b) = Σ_c φ(u^a_c) ⊗ ψ(u^c_b).
inline std::vector<Mat> word_dense(const std::vector<int>& letters, int n, int D, double q,
                                   const std::vector<cplx>* t) {
  const int d = 2 * n;
  std::vector<Mat> cur(static_cast<std::size_t>(d * d), Mat::Zero(1, 1));
  for (int a = 1; a <= d; ++a) {
    cplx v = 1.0;
    if (t) v = a <= n ? std::conj((*t)[static_cast<std::size_t>(a - 1)]) : (*t)[static_cast<std::size_t>(2 * n - a)];
    cur[static_cast<std::size_t>((a - 1) * d + (a - 1))](0, 0) = v;
  }
  for (int l : letters) {
    const Eigen::Index N = cur[0].rows() * D;
    std::vector<Mat> next(static_cast<std::size_t>(d * d), Mat::Zero(N, N));
    for (int a = 1; a <= d; ++a)
      for (int b = 1; b <= d; ++b)
        for (int c = 1; c <= d; ++c) {
          const Mat& left = cur[static_cast<std::size_t>((a - 1) * d + (c - 1))];
          if (left.isZero(0)) continue;
          next[static_cast<std::size_t>((a - 1) * d + (b - 1))] += kron(left, elementary(l, n, D, q, c, b));
        }
    cur = std::move(next);
  }
  return cur;
}

}  // namespace oracle
