#include "spq/fock.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <stdexcept>
#include <thread>
#include <unordered_map>

namespace spq {

namespace {

void hash_mix(std::size_t& seed, std::size_t v) { seed ^= v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2); }

std::size_t hash_double(double d) { return std::hash<double>{}(d == 0.0 ? 0.0 : d); }

std::size_t term_key(const Term& t) {
  std::size_t h = 0;
  for (int e : t.mono.exps) hash_mix(h, std::hash<int>{}(e));
  for (const auto& f : t.legs) hash_mix(h, f.hash());
  return h;
}

bool same_structure(const Term& a, const Term& b) { return a.mono.exps == b.mono.exps && a.legs == b.legs; }

bool term_is_zero(const Term& t) {
  if (t.mono.coeff == 0.0) return true;
  for (const auto& f : t.legs)
    if (f.is_zero()) return true;
  return false;
}

void check_same_shape(const TensorOperator& a, const TensorOperator& b, const char* what) {
  if (a.slots() != b.slots() || a.cutoff() != b.cutoff() || a.ntorus() != b.ntorus())
    throw std::invalid_argument(std::string(what) + ": incompatible operator shapes");
}

}  // namespace

// ---------------------------------------------------------------- FockFactor

FockFactor::FockFactor(int offset, std::vector<cplx> weights, cplx symbol, int bwidth)
    : off_(offset), w_(std::move(weights)), sym_(symbol), bw_(bwidth) {
  if (w_.size() < 2) throw std::invalid_argument("Fock cutoff must be >= 2");
  if (bw_ < 0) throw std::invalid_argument("negative boundary width");
  const int D = dim();
  for (int c = 0; c < D; ++c)
    if (c + off_ < 0 || c + off_ >= D) w_[static_cast<std::size_t>(c)] = 0.0;
}

bool FockFactor::is_zero() const {
  return std::all_of(w_.begin(), w_.end(), [](cplx v) { return v == 0.0; });
}

std::optional<std::pair<int, cplx>> FockFactor::act(int c) const {
  if (c < 0 || c >= dim()) throw std::out_of_range("Fock index out of range");
  cplx v = w_[static_cast<std::size_t>(c)];
  if (v == 0.0) return std::nullopt;
  return std::make_pair(c + off_, v);
}

FockFactor FockFactor::operator*(const FockFactor& rhs) const {
  if (rhs.dim() != dim()) throw std::invalid_argument("Fock factor cutoff mismatch");
  const int D = dim();
  std::vector<cplx> w(static_cast<std::size_t>(D), 0.0);
  for (int c = 0; c < D; ++c) {
    int mid = c + rhs.off_;
    if (mid < 0 || mid >= D) continue;
    w[static_cast<std::size_t>(c)] = rhs.w_[static_cast<std::size_t>(c)] * w_[static_cast<std::size_t>(mid)];
  }
  return FockFactor(off_ + rhs.off_, std::move(w), sym_ * rhs.sym_, bw_ + rhs.bw_);
}

FockFactor FockFactor::adjoint() const {
  const int D = dim();
  std::vector<cplx> w(static_cast<std::size_t>(D), 0.0);
  for (int c = 0; c < D; ++c) {
    int t = c + off_;
    if (t >= 0 && t < D) w[static_cast<std::size_t>(t)] = std::conj(w_[static_cast<std::size_t>(c)]);
  }
  // rows of the truncated matrix are exact for inputs c <= D-1-bw+offset
  return FockFactor(-off_, std::move(w), std::conj(sym_), std::max(0, bw_ - off_));
}

FockFactor FockFactor::scaled(cplx c) const {
  std::vector<cplx> w = w_;
  for (auto& v : w) v *= c;
  return FockFactor(off_, std::move(w), sym_ * c, bw_);
}

Eigen::MatrixXcd FockFactor::dense() const {
  const int D = dim();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(D, D);
  for (int c = 0; c < D; ++c)
    if (auto r = act(c)) m(r->first, c) = r->second;
  return m;
}

std::size_t FockFactor::hash() const {
  std::size_t h = std::hash<int>{}(off_);
  hash_mix(h, std::hash<int>{}(bw_));
  for (const auto& v : w_) {
    hash_mix(h, hash_double(v.real()));
    hash_mix(h, hash_double(v.imag()));
  }
  hash_mix(h, hash_double(sym_.real()));
  hash_mix(h, hash_double(sym_.imag()));
  return h;
}

FockFactor primitive_factor(const Primitive& p, int D, double q) {
  if (D < 2) throw std::invalid_argument("Fock cutoff must be >= 2");
  if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("q must lie in (0,1)");
  std::vector<cplx> w(static_cast<std::size_t>(D), 0.0);
  auto fill = [&](auto f) {
    for (int k = 0; k < D; ++k) w[static_cast<std::size_t>(k)] = f(k);
  };
  switch (p.kind) {
    case PrimitiveKind::shift_down:
      fill([](int) { return 1.0; });
      return FockFactor(-1, std::move(w), 1.0, 0);
    case PrimitiveKind::shift_up:
      fill([](int) { return 1.0; });
      return FockFactor(1, std::move(w), 1.0, 1);
    case PrimitiveKind::qpow:
      if (p.a < 0) throw std::invalid_argument("qpow: exponent slope must be >= 0");
      fill([&](int k) { return std::pow(q, p.a * k + p.b); });
      return FockFactor(0, std::move(w), p.a == 0 ? std::pow(q, p.b) : 0.0, 0);
    case PrimitiveKind::sqrt1m2:
      fill([&](int k) { return std::sqrt(1.0 - std::pow(q, 2 * k + 2)); });
      return FockFactor(0, std::move(w), 1.0, 0);
    case PrimitiveKind::sqrt1m4:
      fill([&](int k) { return std::sqrt(1.0 - std::pow(q, 4 * k + 4)); });
      return FockFactor(0, std::move(w), 1.0, 0);
    case PrimitiveKind::rank_one:
      if (p.a < 0 || p.a >= D || p.b < 0 || p.b >= D) throw std::invalid_argument("rank_one: index out of range");
      w[static_cast<std::size_t>(p.b)] = 1.0;
      return FockFactor(p.a - p.b, std::move(w), 0.0, 0);
    case PrimitiveKind::identity:
      fill([](int) { return 1.0; });
      return FockFactor(0, std::move(w), 1.0, 0);
  }
  throw std::invalid_argument("unknown primitive kind");
}

FockFactor diagonal_factor(std::vector<cplx> values, cplx symbol, int bwidth) {
  return FockFactor(0, std::move(values), symbol, bwidth);
}

// ---------------------------------------------------------------- TorusMonomial

cplx TorusMonomial::eval(const TorusPoint& t) const {
  if (t.size() < exps.size()) throw std::invalid_argument("torus point has too few coordinates");
  cplx v = coeff;
  for (std::size_t i = 0; i < exps.size(); ++i) {
    int e = exps[i];
    if (e == 0) continue;
    cplx base = e > 0 ? t[i] : std::conj(t[i]);  // |t_i| = 1
    for (int k = 0; k < std::abs(e); ++k) v *= base;
  }
  return v;
}

TorusMonomial TorusMonomial::operator*(const TorusMonomial& rhs) const {
  if (exps.size() != rhs.exps.size()) throw std::invalid_argument("torus rank mismatch");
  TorusMonomial out{coeff * rhs.coeff, exps};
  for (std::size_t i = 0; i < exps.size(); ++i) out.exps[i] += rhs.exps[i];
  return out;
}

TorusMonomial TorusMonomial::adjoint() const {
  TorusMonomial out{std::conj(coeff), exps};
  for (auto& e : out.exps) e = -e;
  return out;
}

bool TorusMonomial::is_constant() const {
  return std::all_of(exps.begin(), exps.end(), [](int e) { return e == 0; });
}

// ---------------------------------------------------------------- TensorOperator

TensorOperator::TensorOperator(int ntorus, int slots, int cutoff) : nt_(ntorus), m_(slots), D_(cutoff) {
  if (ntorus < 0 || slots < 0) throw std::invalid_argument("negative operator shape");
  if (cutoff < 2) throw std::invalid_argument("Fock cutoff must be >= 2");
}

TensorOperator TensorOperator::zero(int ntorus, int slots, int cutoff) { return TensorOperator(ntorus, slots, cutoff); }

TensorOperator TensorOperator::identity(int ntorus, int slots, int cutoff) {
  return scalar(ntorus, slots, cutoff, 1.0);
}

TensorOperator TensorOperator::scalar(int ntorus, int slots, int cutoff, cplx c) {
  return monomial(ntorus, slots, cutoff, TorusMonomial{c, std::vector<int>(static_cast<std::size_t>(ntorus), 0)});
}

TensorOperator TensorOperator::monomial(int ntorus, int slots, int cutoff, TorusMonomial m) {
  TensorOperator T(ntorus, slots, cutoff);
  if (m.exps.size() != static_cast<std::size_t>(ntorus)) throw std::invalid_argument("monomial rank mismatch");
  FockFactor id = primitive_factor(Primitive::id(), cutoff, 0.5);
  T.add_term(Term{std::move(m), std::vector<FockFactor>(static_cast<std::size_t>(slots), id)});
  return T;
}

TensorOperator TensorOperator::elementary(int ntorus, TorusMonomial m, std::vector<FockFactor> legs) {
  if (legs.empty()) throw std::invalid_argument("elementary: need at least one leg (use monomial)");
  TensorOperator T(ntorus, static_cast<int>(legs.size()), legs.front().dim());
  T.add_term(Term{std::move(m), std::move(legs)});
  return T;
}

void TensorOperator::add_term(Term t) {
  if (t.legs.size() != static_cast<std::size_t>(m_)) throw std::invalid_argument("term slot count mismatch");
  if (t.mono.exps.size() != static_cast<std::size_t>(nt_)) throw std::invalid_argument("term torus rank mismatch");
  for (const auto& f : t.legs)
    if (f.dim() != D_) throw std::invalid_argument("term cutoff mismatch");
  if (term_is_zero(t)) return;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (same_structure(terms_[i], t)) {
      terms_[i].mono.coeff += t.mono.coeff;
      if (terms_[i].mono.coeff == 0.0) terms_.erase(terms_.begin() + static_cast<std::ptrdiff_t>(i));
      return;
    }
  }
  terms_.push_back(std::move(t));
}

std::vector<int> TensorOperator::bwidth() const {
  std::vector<int> bw(static_cast<std::size_t>(m_), 0);
  for (const auto& t : terms_)
    for (std::size_t s = 0; s < bw.size(); ++s) bw[s] = std::max(bw[s], t.legs[s].bwidth());
  return bw;
}

bool TensorOperator::is_diagonal() const {
  for (const auto& t : terms_)
    for (const auto& f : t.legs)
      if (!f.is_diagonal()) return false;
  return true;
}

bool TensorOperator::is_torus_constant() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const Term& t) { return t.mono.is_constant(); });
}

TensorOperator TensorOperator::simplified() const {
  std::vector<Term> ts = terms_;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t a = 0; a < ts.size() && !changed; ++a)
      for (std::size_t b = a + 1; b < ts.size() && !changed; ++b) {
        if (ts[a].mono.exps != ts[b].mono.exps) continue;
        int diff = -1, ndiff = 0;
        for (int s = 0; s < m_; ++s)
          if (!(ts[a].legs[static_cast<std::size_t>(s)] == ts[b].legs[static_cast<std::size_t>(s)])) {
            diff = s;
            ++ndiff;
          }
        if (ndiff != 1) continue;
        const auto& fa = ts[a].legs[static_cast<std::size_t>(diff)];
        const auto& fb = ts[b].legs[static_cast<std::size_t>(diff)];
        if (fa.offset() != fb.offset()) continue;
        std::vector<cplx> w(fa.weights().size());
        for (std::size_t c = 0; c < w.size(); ++c)
          w[c] = ts[a].mono.coeff * fa.weights()[c] + ts[b].mono.coeff * fb.weights()[c];
        cplx sym = ts[a].mono.coeff * fa.symbol() + ts[b].mono.coeff * fb.symbol();
        ts[a].legs[static_cast<std::size_t>(diff)] =
            FockFactor(fa.offset(), std::move(w), sym, std::max(fa.bwidth(), fb.bwidth()));
        ts[a].mono.coeff = 1.0;
        ts.erase(ts.begin() + static_cast<std::ptrdiff_t>(b));
        changed = true;
      }
  }
  TensorOperator out(nt_, m_, D_);
  for (auto& t : ts) out.add_term(std::move(t));
  return out;
}

namespace {

// Bulk builder with hashed merging; avoids the quadratic scan of add_term.
class TermAccumulator {
 public:
  explicit TermAccumulator(TensorOperator shape) : shape_(std::move(shape)) {}
  void add(Term t) {
    if (term_is_zero(t)) return;
    std::size_t h = term_key(t);
    auto range = index_.equal_range(h);
    for (auto it = range.first; it != range.second; ++it) {
      if (same_structure(terms_[it->second], t)) {
        terms_[it->second].mono.coeff += t.mono.coeff;
        return;
      }
    }
    index_.emplace(h, terms_.size());
    terms_.push_back(std::move(t));
  }
  TensorOperator finish() {
    TensorOperator out(shape_.ntorus(), shape_.slots(), shape_.cutoff());
    for (auto& t : terms_)
      if (t.mono.coeff != 0.0) out.add_term_unchecked(std::move(t));
    return out;
  }

 private:
  TensorOperator shape_;
  std::vector<Term> terms_;
  std::unordered_multimap<std::size_t, std::size_t> index_;
};

}  // namespace

void TensorOperator::add_term_unchecked(Term t) { terms_.push_back(std::move(t)); }

TensorOperator operator*(const TensorOperator& a, const TensorOperator& b) {
  check_same_shape(a, b, "mul");
  TermAccumulator acc(TensorOperator(a.ntorus(), a.slots(), a.cutoff()));
  for (const auto& ta : a.terms())
    for (const auto& tb : b.terms()) {
      Term t{ta.mono * tb.mono, {}};
      t.legs.reserve(ta.legs.size());
      bool zero = false;
      for (std::size_t s = 0; s < ta.legs.size() && !zero; ++s) {
        t.legs.push_back(ta.legs[s] * tb.legs[s]);
        zero = t.legs.back().is_zero();
      }
      if (!zero) acc.add(std::move(t));
    }
  return acc.finish();
}

TensorOperator operator+(const TensorOperator& a, const TensorOperator& b) {
  check_same_shape(a, b, "add");
  TermAccumulator acc(TensorOperator(a.ntorus(), a.slots(), a.cutoff()));
  for (const auto& t : a.terms()) acc.add(t);
  for (const auto& t : b.terms()) acc.add(t);
  return acc.finish();
}

TensorOperator operator*(cplx c, const TensorOperator& a) {
  TermAccumulator acc(TensorOperator(a.ntorus(), a.slots(), a.cutoff()));
  if (c == 0.0) return acc.finish();
  for (auto t : a.terms()) {
    t.mono.coeff *= c;
    acc.add(std::move(t));
  }
  return acc.finish();
}

TensorOperator operator-(const TensorOperator& a, const TensorOperator& b) { return a + (-1.0) * b; }

TensorOperator adjoint(const TensorOperator& a) {
  TermAccumulator acc(TensorOperator(a.ntorus(), a.slots(), a.cutoff()));
  for (const auto& t : a.terms()) {
    Term out{t.mono.adjoint(), {}};
    for (const auto& f : t.legs) out.legs.push_back(f.adjoint());
    acc.add(std::move(out));
  }
  return acc.finish();
}

TensorOperator tensor(const TensorOperator& a, const TensorOperator& b) {
  if (a.ntorus() != b.ntorus() || a.cutoff() != b.cutoff())
    throw std::invalid_argument("tensor: incompatible torus rank or cutoff");
  TermAccumulator acc(TensorOperator(a.ntorus(), a.slots() + b.slots(), a.cutoff()));
  for (const auto& ta : a.terms())
    for (const auto& tb : b.terms()) {
      Term t{ta.mono * tb.mono, ta.legs};
      t.legs.insert(t.legs.end(), tb.legs.begin(), tb.legs.end());
      acc.add(std::move(t));
    }
  return acc.finish();
}

TensorOperator combine(Combine v, const TensorOperator& a, const TensorOperator* b, cplx c) {
  auto need_b = [&]() -> const TensorOperator& {
    if (!b) throw std::invalid_argument("combine: second operand required");
    return *b;
  };
  switch (v) {
    case Combine::mul: return a * need_b();
    case Combine::add: return a + need_b();
    case Combine::scalar: return c * a;
    case Combine::adjoint: return adjoint(a);
    case Combine::tensor: return tensor(a, need_b());
  }
  throw std::invalid_argument("combine: unknown variant");
}

bool structurally_equal(const TensorOperator& a, const TensorOperator& b) {
  if (a.slots() != b.slots() || a.cutoff() != b.cutoff() || a.ntorus() != b.ntorus()) return false;
  if (a.terms().size() != b.terms().size()) return false;
  std::vector<bool> used(b.terms().size(), false);
  for (const auto& ta : a.terms()) {
    bool found = false;
    for (std::size_t j = 0; j < b.terms().size() && !found; ++j) {
      if (used[j]) continue;
      const auto& tb = b.terms()[j];
      if (same_structure(ta, tb) && ta.mono.coeff == tb.mono.coeff) {
        used[j] = true;
        found = true;
      }
    }
    if (!found) return false;
  }
  return true;
}

// ---------------------------------------------------------------- sparse vectors

double SparseVector::norm() const {
  double s = 0.0;
  for (const auto& [i, v] : entries) s += std::norm(v);
  return std::sqrt(s);
}

cplx SparseVector::at(std::uint64_t idx) const {
  auto it = std::lower_bound(entries.begin(), entries.end(), idx,
                             [](const auto& e, std::uint64_t k) { return e.first < k; });
  return it != entries.end() && it->first == idx ? it->second : cplx(0.0);
}

SparseVector collect(std::vector<std::pair<std::uint64_t, cplx>> raw) {
  std::stable_sort(raw.begin(), raw.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  SparseVector out;
  out.entries.reserve(raw.size());
  for (const auto& [i, v] : raw) {
    if (!out.entries.empty() && out.entries.back().first == i)
      out.entries.back().second += v;
    else
      out.entries.emplace_back(i, v);
  }
  std::erase_if(out.entries, [](const auto& e) { return e.second == 0.0; });
  return out;
}

SparseVector operator+(const SparseVector& a, const SparseVector& b) {
  std::vector<std::pair<std::uint64_t, cplx>> raw = a.entries;
  raw.insert(raw.end(), b.entries.begin(), b.entries.end());
  return collect(std::move(raw));
}

SparseVector operator*(cplx c, const SparseVector& a) {
  SparseVector out = a;
  for (auto& e : out.entries) e.second *= c;
  std::erase_if(out.entries, [](const auto& e) { return e.second == 0.0; });
  return out;
}

SparseVector operator-(const SparseVector& a, const SparseVector& b) { return a + (-1.0) * b; }

cplx inner(const SparseVector& a, const SparseVector& b) {
  cplx s = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.entries.size() && j < b.entries.size()) {
    if (a.entries[i].first < b.entries[j].first)
      ++i;
    else if (a.entries[i].first > b.entries[j].first)
      ++j;
    else {
      s += std::conj(a.entries[i].second) * b.entries[j].second;
      ++i;
      ++j;
    }
  }
  return s;
}

std::uint64_t linear_index(const std::vector<int>& alpha, int D) {
  std::uint64_t idx = 0;
  for (int a : alpha) {
    if (a < 0 || a >= D) throw std::out_of_range("multi-index component out of range");
    idx = idx * static_cast<std::uint64_t>(D) + static_cast<std::uint64_t>(a);
  }
  return idx;
}

std::vector<int> multi_index(std::uint64_t idx, int slots, int D) {
  std::vector<int> alpha(static_cast<std::size_t>(slots));
  for (int s = slots - 1; s >= 0; --s) {
    alpha[static_cast<std::size_t>(s)] = static_cast<int>(idx % static_cast<std::uint64_t>(D));
    idx /= static_cast<std::uint64_t>(D);
  }
  return alpha;
}

SparseVector basis_vector(const std::vector<int>& alpha, int D) {
  SparseVector v;
  v.entries.emplace_back(linear_index(alpha, D), 1.0);
  return v;
}

SparseVector apply(const TensorOperator& T, const SparseVector& v, const TorusPoint& t) {
  const int m = T.slots(), D = T.cutoff();
  std::vector<cplx> mono;
  mono.reserve(T.terms().size());
  for (const auto& term : T.terms()) mono.push_back(term.mono.eval(t));
  std::vector<std::pair<std::uint64_t, cplx>> raw;
  raw.reserve(v.entries.size() * T.terms().size());
  std::vector<int> alpha(static_cast<std::size_t>(m));
  for (const auto& [idx, val] : v.entries) {
    std::uint64_t r = idx;
    for (int s = m - 1; s >= 0; --s) {
      alpha[static_cast<std::size_t>(s)] = static_cast<int>(r % static_cast<std::uint64_t>(D));
      r /= static_cast<std::uint64_t>(D);
    }
    for (std::size_t k = 0; k < T.terms().size(); ++k) {
      const auto& legs = T.terms()[k].legs;
      cplx w = val * mono[k];
      std::uint64_t out = 0;
      bool ok = true;
      for (int s = 0; s < m; ++s) {
        const auto& f = legs[static_cast<std::size_t>(s)];
        int c = alpha[static_cast<std::size_t>(s)];
        cplx fw = f.weights()[static_cast<std::size_t>(c)];
        if (fw == 0.0) {
          ok = false;
          break;
        }
        w *= fw;
        out = out * static_cast<std::uint64_t>(D) + static_cast<std::uint64_t>(c + f.offset());
      }
      if (ok) raw.emplace_back(out, w);
    }
  }
  return collect(std::move(raw));
}

SparseVector apply_to_basis(const TensorOperator& T, const std::vector<int>& alpha, const TorusPoint& t) {
  if (alpha.size() != static_cast<std::size_t>(T.slots())) throw std::invalid_argument("multi-index length mismatch");
  return apply(T, basis_vector(alpha, T.cutoff()), t);
}

std::vector<std::vector<int>> interior_indices(const std::vector<int>& bw, int D, const InteriorOptions& opt) {
  const std::size_t m = bw.size();
  std::vector<int> extent(m);
  std::uint64_t total = 1;
  for (std::size_t s = 0; s < m; ++s) {
    extent[s] = D - bw[s];
    if (extent[s] < 1) throw std::domain_error("interior is empty: boundary width >= cutoff");
    total *= static_cast<std::uint64_t>(extent[s]);
  }
  std::vector<std::vector<int>> out;
  auto decode = [&](std::uint64_t r) {
    std::vector<int> a(m);
    for (std::size_t s = m; s-- > 0;) {
      a[s] = static_cast<int>(r % static_cast<std::uint64_t>(extent[s]));
      r /= static_cast<std::uint64_t>(extent[s]);
    }
    return a;
  };
  if (opt.max_vectors == 0 || total <= opt.max_vectors) {
    out.reserve(total);
    for (std::uint64_t r = 0; r < total; ++r) out.push_back(decode(r));
    return out;
  }
  std::mt19937_64 rng(opt.seed);
  std::uniform_int_distribution<std::uint64_t> dist(0, total - 1);
  std::set<std::uint64_t> picked;
  picked.insert(0);  // always include the vacuum
  while (picked.size() < opt.max_vectors) picked.insert(dist(rng));
  for (auto r : picked) out.push_back(decode(r));
  return out;
}

namespace {

double residual_over(const TensorOperator& T, const std::vector<TorusPoint>& tsamples,
                     const std::vector<std::vector<int>>& idx, int jobs) {
  auto work = [&](std::size_t lo, std::size_t hi) {
    double worst = 0.0;
    for (std::size_t i = lo; i < hi; ++i)
      for (const auto& t : tsamples) worst = std::max(worst, apply_to_basis(T, idx[i], t).norm());
    return worst;
  };
  if (jobs <= 1 || idx.size() < 64) return work(0, idx.size());
  std::vector<double> part(static_cast<std::size_t>(jobs), 0.0);
  std::vector<std::thread> pool;
  const std::size_t chunk = (idx.size() + static_cast<std::size_t>(jobs) - 1) / static_cast<std::size_t>(jobs);
  for (int j = 0; j < jobs; ++j) {
    std::size_t lo = static_cast<std::size_t>(j) * chunk, hi = std::min(idx.size(), lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&, j, lo, hi] { part[static_cast<std::size_t>(j)] = work(lo, hi); });
  }
  for (auto& th : pool) th.join();
  return *std::max_element(part.begin(), part.end());
}

}  // namespace

double interior_residual(const TensorOperator& T, const std::vector<TorusPoint>& tsamples,
                         const std::vector<int>& margin, const InteriorOptions& opt) {
  if (margin.size() != static_cast<std::size_t>(T.slots())) throw std::invalid_argument("margin length mismatch");
  auto idx = interior_indices(margin, T.cutoff(), opt);
  if (T.is_zero()) return 0.0;
  std::vector<TorusPoint> ts = tsamples;
  if (ts.empty()) ts.push_back(TorusPoint(static_cast<std::size_t>(T.ntorus()), 1.0));
  return residual_over(T, ts, idx, opt.jobs);
}

double interior_residual(const TensorOperator& T, const std::vector<TorusPoint>& tsamples,
                         const InteriorOptions& opt) {
  return interior_residual(T, tsamples, T.bwidth(), opt);
}

TensorOperator symbol_last(const TensorOperator& T) {
  if (T.slots() < 1) throw std::invalid_argument("symbol_last: operator has no Fock slots");
  TermAccumulator acc(TensorOperator(T.ntorus(), T.slots() - 1, T.cutoff()));
  for (const auto& t : T.terms()) {
    cplx s = t.legs.back().symbol();
    if (s == 0.0) continue;
    Term out{t.mono, std::vector<FockFactor>(t.legs.begin(), t.legs.end() - 1)};
    out.mono.coeff *= s;
    acc.add(std::move(out));
  }
  return acc.finish();
}

Eigen::MatrixXcd to_dense(const TensorOperator& T, const TorusPoint& t) {
  std::uint64_t total = 1;
  for (int s = 0; s < T.slots(); ++s) total *= static_cast<std::uint64_t>(T.cutoff());
  if (total > 4096) throw std::length_error("to_dense: space too large");
  const auto N = static_cast<Eigen::Index>(total);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(N, N);
  for (std::uint64_t c = 0; c < total; ++c) {
    SparseVector e;
    e.entries.emplace_back(c, 1.0);
    for (const auto& [r, v] : apply(T, e, t).entries) m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = v;
  }
  return m;
}

TensorOperator spectral_projection_one(const TensorOperator& T, double tol) {
  if (!(tol > 0)) throw std::invalid_argument("projection tolerance must be positive");
  if (!T.is_torus_constant()) throw std::invalid_argument("spectral projection needs a torus-independent operator");
  const int m = T.slots(), D = T.cutoff();
  const TorusPoint t1(static_cast<std::size_t>(T.ntorus()), 1.0);
  const std::vector<int> bw = T.bwidth();
  {
    InteriorOptions opt;
    double asym = interior_residual(T - adjoint(T), {t1}, bw, opt);
    if (asym > tol) throw std::invalid_argument("spectral projection of a non-self-adjoint operator");
  }
  auto idx = interior_indices(bw, D);
  TensorOperator out(T.ntorus(), m, D);
  const TorusMonomial one{1.0, std::vector<int>(static_cast<std::size_t>(T.ntorus()), 0)};

  if (T.is_diagonal()) {
    std::vector<std::vector<int>> hits;
    for (const auto& a : idx) {
      cplx v = apply_to_basis(T, a, t1).at(linear_index(a, D));
      if (std::abs(v - 1.0) <= tol) hits.push_back(a);
    }
    if (hits.empty()) return out;
    // Cartesian product of per-slot sets gives a single elementary tensor
    std::vector<std::set<int>> per(static_cast<std::size_t>(m));
    for (const auto& a : hits)
      for (int s = 0; s < m; ++s) per[static_cast<std::size_t>(s)].insert(a[static_cast<std::size_t>(s)]);
    std::size_t prod = 1;
    for (const auto& p : per) prod *= p.size();
    if (prod == hits.size()) {
      Term term{one, {}};
      for (int s = 0; s < m; ++s) {
        const auto& set = per[static_cast<std::size_t>(s)];
        const int top = D - 1 - bw[static_cast<std::size_t>(s)];
        const double tail = set.count(top) ? 1.0 : 0.0;
        std::vector<cplx> diag(static_cast<std::size_t>(D));
        for (int c = 0; c < D; ++c) diag[static_cast<std::size_t>(c)] = c <= top ? (set.count(c) ? 1.0 : 0.0) : tail;
        term.legs.push_back(FockFactor(0, std::move(diag), tail, bw[static_cast<std::size_t>(s)]));
      }
      if (m == 0) term.legs.clear();
      out.add_term(std::move(term));
      return out;
    }
    for (const auto& a : hits) {
      Term term{one, {}};
      for (int s = 0; s < m; ++s) {
        FockFactor p = primitive_factor(Primitive::p(a[static_cast<std::size_t>(s)], a[static_cast<std::size_t>(s)]), D, 0.5);
        term.legs.push_back(FockFactor(p.offset(), p.weights(), 0.0, bw[static_cast<std::size_t>(s)]));
      }
      out.add_term(std::move(term));
    }
    return out;
  }

  // general case: eigen-decomposition of the interior compression
  if (idx.size() > 4096) throw std::length_error("spectral projection: interior too large for dense fallback");
  const auto N = static_cast<Eigen::Index>(idx.size());
  std::unordered_map<std::uint64_t, Eigen::Index> pos;
  for (Eigen::Index i = 0; i < N; ++i) pos[linear_index(idx[static_cast<std::size_t>(i)], D)] = i;
  Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(N, N);
  for (Eigen::Index c = 0; c < N; ++c)
    for (const auto& [r, v] : apply_to_basis(T, idx[static_cast<std::size_t>(c)], t1).entries)
      if (auto it = pos.find(r); it != pos.end()) M(it->second, c) = v;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (M + M.adjoint()));
  Eigen::MatrixXcd P = Eigen::MatrixXcd::Zero(N, N);
  for (Eigen::Index k = 0; k < N; ++k)
    if (std::abs(es.eigenvalues()(k) - 1.0) <= tol) P += es.eigenvectors().col(k) * es.eigenvectors().col(k).adjoint();
  for (Eigen::Index c = 0; c < N; ++c)
    for (Eigen::Index r = 0; r < N; ++r) {
      if (std::abs(P(r, c)) < 1e-14) continue;
      const auto& ar = idx[static_cast<std::size_t>(r)];
      const auto& ac = idx[static_cast<std::size_t>(c)];
      Term term{TorusMonomial{P(r, c), one.exps}, {}};
      for (int s = 0; s < m; ++s) {
        FockFactor p = primitive_factor(Primitive::p(ar[static_cast<std::size_t>(s)], ac[static_cast<std::size_t>(s)]), D, 0.5);
        term.legs.push_back(FockFactor(p.offset(), p.weights(), 0.0, bw[static_cast<std::size_t>(s)]));
      }
      out.add_term(std::move(term));
    }
  return out;
}

std::vector<TorusPoint> diagonal_torus_samples(int ntorus, int count) {
  if (count < 1) throw std::invalid_argument("need at least one torus sample");
  std::vector<TorusPoint> out;
  for (int j = 0; j < count; ++j) {
    cplx z = std::polar(1.0, 2.0 * std::numbers::pi * j / count);
    out.emplace_back(static_cast<std::size_t>(ntorus), z);
  }
  return out;
}

std::vector<TorusPoint> grid_torus_samples(int ntorus) {
  std::vector<TorusPoint> out{TorusPoint{}};
  for (int c = 0; c < ntorus; ++c) {
    std::vector<TorusPoint> next;
    for (const auto& p : out)
      for (int j = 0; j < 8; ++j) {
        TorusPoint q = p;
        q.push_back(std::polar(1.0, 2.0 * std::numbers::pi * j / 8));
        next.push_back(std::move(q));
      }
    out = std::move(next);
  }
  return out;
}

}  // namespace spq
