#include "spq/weyl.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <stdexcept>

namespace spq {

namespace {

std::vector<int> parse_int_list(std::string_view text) {
  std::vector<int> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find(',', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view tok = text.substr(pos, end - pos);
    while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
    while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
    if (tok.empty()) {
      if (end == text.size() && out.empty() && pos == 0) break;  // empty list
      throw std::invalid_argument("empty entry in list '" + std::string(text) + "'");
    }
    int v = 0;
    auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (res.ec != std::errc() || res.ptr != tok.data() + tok.size())
      throw std::invalid_argument("not an integer: '" + std::string(tok) + "'");
    out.push_back(v);
    if (end == text.size()) break;
    pos = end + 1;
  }
  return out;
}

}  // namespace

SignedPermutation::SignedPermutation(int n) : n_(n), m_(static_cast<std::size_t>(n * n), 0) {
  if (n < 1) throw std::invalid_argument("rank must be >= 1");
  for (int i = 1; i <= n; ++i) m_[idx(i, i)] = 1;
}

SignedPermutation::SignedPermutation(int n, std::vector<int> entries) : n_(n), m_(std::move(entries)) {
  if (n < 1 || m_.size() != static_cast<std::size_t>(n * n))
    throw std::invalid_argument("signed permutation: bad size");
  for (int c = 1; c <= n; ++c) {
    int nz = 0;
    for (int r = 1; r <= n; ++r) {
      int v = m_[idx(r, c)];
      if (v != 0 && v != 1 && v != -1) throw std::invalid_argument("signed permutation: entry not in {-1,0,1}");
      nz += v != 0;
    }
    if (nz != 1) throw std::invalid_argument("signed permutation: column without a unique nonzero");
  }
  for (int r = 1; r <= n; ++r) {
    int nz = 0;
    for (int c = 1; c <= n; ++c) nz += m_[idx(r, c)] != 0;
    if (nz != 1) throw std::invalid_argument("signed permutation: row without a unique nonzero");
  }
}

SignedPermutation SignedPermutation::generator(int i, int n) { return generator_matrix(i, n); }

SignedPermutation SignedPermutation::operator*(const SignedPermutation& rhs) const {
  if (rhs.n_ != n_) throw std::invalid_argument("rank mismatch");
  std::vector<int> out(m_.size(), 0);
  for (int r = 1; r <= n_; ++r)
    for (int c = 1; c <= n_; ++c) {
      int s = 0;
      for (int k = 1; k <= n_; ++k) s += m_[idx(r, k)] * rhs.m_[rhs.idx(k, c)];
      out[idx(r, c)] = s;
    }
  return SignedPermutation(n_, std::move(out));
}

SignedPermutation SignedPermutation::inverse() const {
  std::vector<int> out(m_.size());
  for (int r = 1; r <= n_; ++r)
    for (int c = 1; c <= n_; ++c) out[idx(c, r)] = m_[idx(r, c)];
  return SignedPermutation(n_, std::move(out));
}

int SignedPermutation::column_image(int col) const {
  for (int r = 1; r <= n_; ++r) {
    int v = m_[idx(r, col)];
    if (v != 0) return v * r;
  }
  throw std::logic_error("unreachable: empty column");
}

void validate(const WeylWord& w) {
  if (w.n < 1) throw std::invalid_argument("word rank must be >= 1");
  for (int l : w.letters)
    if (l < 1 || l > w.n)
      throw std::invalid_argument("letter " + std::to_string(l) + " outside 1.." + std::to_string(w.n));
}

void validate(const Partition& p) {
  for (std::size_t i = 0; i < p.parts.size(); ++i) {
    if (p.parts[i] < 0) throw std::invalid_argument("negative partition part");
    if (i > 0 && p.parts[i] > p.parts[i - 1]) throw std::invalid_argument("partition not weakly decreasing");
  }
}

SignedPermutation generator_matrix(int i, int n) {
  if (i < 1 || i > n) throw std::invalid_argument("generator index out of range");
  std::vector<int> m(static_cast<std::size_t>(n * n), 0);
  auto at = [&](int r, int c) -> int& { return m[static_cast<std::size_t>((r - 1) * n + (c - 1))]; };
  for (int k = 1; k <= n; ++k) at(k, k) = 1;
  if (i < n) {
    at(i, i) = 0;
    at(i + 1, i + 1) = 0;
    at(i, i + 1) = 1;
    at(i + 1, i) = 1;
  } else {
    at(n, n) = -1;
  }
  return SignedPermutation(n, std::move(m));
}

SignedPermutation evaluate_word(const WeylWord& w) {
  validate(w);
  SignedPermutation g(w.n);
  for (int l : w.letters) g = g * generator_matrix(l, w.n);
  return g;
}

WeylWord omega_word(int k, int n) {
  if (n < 1 || k < 1 || k > 2 * n) throw std::invalid_argument("omega_word: need 1 <= k <= 2n");
  WeylWord w{n, {}};
  if (k == 1) return w;
  if (k <= n) {
    for (int i = 1; i <= k - 1; ++i) w.letters.push_back(i);
    return w;
  }
  for (int i = 1; i <= n; ++i) w.letters.push_back(i);
  for (int i = n - 1; i >= 2 * n - k + 1; --i) w.letters.push_back(i);
  return w;
}

WeylWord longest_word(int n) {
  if (n < 1) throw std::invalid_argument("longest_word: n >= 1");
  WeylWord w{n, {}};
  // (s_n)(s_{n-1} s_n s_{n-1}) ... (s_1 ... s_n ... s_1)
  for (int r = n; r >= 1; --r) {
    for (int i = r; i <= n; ++i) w.letters.push_back(i);
    for (int i = n - 1; i >= r; --i) w.letters.push_back(i);
  }
  return w;
}

WeylWord psi_word(const PsiFactor& f, int n) {
  if (f.r < 1 || f.r > n || f.k < f.r || f.k > n || f.kind < 0 || f.kind > 2)
    throw std::invalid_argument("psi factor out of range");
  WeylWord w{n, {}};
  if (f.kind == 0) return w;
  if (f.kind == 2) {
    for (int i = f.k; i <= n; ++i) w.letters.push_back(i);
    for (int i = n - 1; i >= f.k; --i) w.letters.push_back(i);
  }
  for (int i = f.k - 1; i >= f.r; --i) w.letters.push_back(i);
  return w;
}

WeylWord CanonicalFactorization::word() const {
  WeylWord w{n, {}};
  for (const auto& f : factors) {
    auto part = psi_word(f, n);
    w.letters.insert(w.letters.end(), part.letters.begin(), part.letters.end());
  }
  return w;
}

CanonicalFactorization canonical_factorization(const SignedPermutation& g) {
  const int n = g.n();
  CanonicalFactorization out{n, {}};
  SignedPermutation rest = g;
  for (int r = 1; r <= n; ++r) {
    // rest fixes e_1..e_{r-1}; ψ_r is fixed by where rest sends e_r
    int img = rest.column_image(r);
    PsiFactor f{r, 0, r};
    int k = std::abs(img);
    if (k < r) throw std::logic_error("canonical_factorization: not a signed permutation");
    if (img > 0) {
      f.kind = k == r ? 0 : 1;
      f.k = k;
    } else {
      f.kind = 2;
      f.k = k;
    }
    out.factors.push_back(f);
    rest = evaluate_word(psi_word(f, n)).inverse() * rest;
  }
  return out;
}

int coxeter_length(const SignedPermutation& g) {
  // length = inv + neg + nsp with
  // inv = #{i<j : w(i) > w(j)}, nsp = #{i<j : w(i) + w(j) < 0}, neg = #{i : w(i) < 0}
  // for the sign change on coordinate 1; s_n flips coordinate n, so reverse indices first.
  const int n = g.n();
  std::vector<int> w(static_cast<std::size_t>(n + 1));
  for (int c = 1; c <= n; ++c) {
    int img = g.column_image(n + 1 - c);
    w[static_cast<std::size_t>(c)] = img > 0 ? n + 1 - img : -(n + 1 + img);
  }
  int len = 0;
  for (int i = 1; i <= n; ++i) {
    if (w[static_cast<std::size_t>(i)] < 0) ++len;
    for (int j = i + 1; j <= n; ++j) {
      if (w[static_cast<std::size_t>(i)] > w[static_cast<std::size_t>(j)]) ++len;
      if (w[static_cast<std::size_t>(i)] + w[static_cast<std::size_t>(j)] < 0) ++len;
    }
  }
  return len;
}

bool is_subword(const WeylWord& sub, const WeylWord& w) {
  std::size_t j = 0;
  for (int l : w.letters) {
    if (j < sub.letters.size() && sub.letters[j] == l) ++j;
  }
  return j == sub.letters.size();
}

std::int64_t branching_multiplicity(const Partition& lambda, const Partition& mu, int n) {
  if (n < 1) throw std::invalid_argument("branching: n >= 1");
  validate(lambda);
  validate(mu);
  if (lambda.parts.size() > static_cast<std::size_t>(n))
    throw std::invalid_argument("branching: λ has more than n parts");
  if (mu.parts.size() > static_cast<std::size_t>(n - 1))
    throw std::invalid_argument("branching: μ has more than n-1 parts");
  auto part = [](const Partition& p, int i) {
    return i >= 1 && i <= static_cast<int>(p.parts.size()) ? p.parts[static_cast<std::size_t>(i - 1)] : 0;
  };
  // ν interlaces λ from below (λ_{i+1} <= ν_i <= λ_i) and μ interlaces ν
  // (ν_{i+1} <= μ_i <= ν_i). Count by enumerating ν coordinatewise.
  std::int64_t count = 0;
  std::vector<int> nu(static_cast<std::size_t>(n + 1), 0);
  auto rec = [&](auto&& self, int i) -> void {
    if (i > n) {
      for (int j = 1; j <= n - 1; ++j) {
        int m = part(mu, j);
        if (m > nu[static_cast<std::size_t>(j)] || m < nu[static_cast<std::size_t>(j + 1)]) return;
      }
      ++count;
      return;
    }
    int lo = part(lambda, i + 1), hi = part(lambda, i);
    for (int v = lo; v <= hi; ++v) {
      nu[static_cast<std::size_t>(i)] = v;
      // early prune on μ_{i-1} >= ν_i
      if (i >= 2 && part(mu, i - 1) < v) break;
      self(self, i + 1);
    }
  };
  rec(rec, 1);
  return count;
}

std::int64_t branching_closed_form_trivial(const Partition& lambda) {
  validate(lambda);
  if (lambda.parts.size() > 2 && lambda.parts[2] > 0) return 0;
  int l1 = lambda.parts.empty() ? 0 : lambda.parts[0];
  int l2 = lambda.parts.size() > 1 ? lambda.parts[1] : 0;
  return l1 - l2 + 1;
}

WeylWord parse_word(std::string_view text, int n) {
  WeylWord w{n, parse_int_list(text)};
  validate(w);
  return w;
}

std::string format_word(const WeylWord& w) {
  std::string s;
  for (std::size_t i = 0; i < w.letters.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(w.letters[i]);
  }
  return s;
}

Partition parse_partition(std::string_view text) {
  Partition p{parse_int_list(text)};
  validate(p);
  return p;
}

}  // namespace spq
