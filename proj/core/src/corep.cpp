#include "spq/corep.hpp"

#include <algorithm>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <nlohmann/json.hpp>

namespace spq {

Corepresentation::Corepresentation(int n, int slots, int cutoff, double q) : n_(n), m_(slots), D_(cutoff), q_(q) {
  if (n < 2) throw std::invalid_argument("rank n must be >= 2");
  e_.assign(static_cast<std::size_t>(4 * n * n), TensorOperator(n, slots, cutoff));
}

const TensorOperator& Corepresentation::operator()(int i, int j) const {
  if (i < 1 || j < 1 || i > dim() || j > dim()) throw std::out_of_range("corep index out of range");
  return e_[static_cast<std::size_t>((i - 1) * dim() + (j - 1))];
}

TensorOperator& Corepresentation::at(int i, int j) {
  if (i < 1 || j < 1 || i > dim() || j > dim()) throw std::out_of_range("corep index out of range");
  return e_[static_cast<std::size_t>((i - 1) * dim() + (j - 1))];
}

std::vector<int> Corepresentation::bwidth() const {
  std::vector<int> bw(static_cast<std::size_t>(m_), 0);
  for (const auto& e : e_) {
    auto b = e.bwidth();
    for (std::size_t s = 0; s < bw.size(); ++s) bw[s] = std::max(bw[s], b[s]);
  }
  return bw;
}

std::size_t Corepresentation::term_count() const {
  std::size_t c = 0;
  for (const auto& e : e_) c += e.terms().size();
  return c;
}

Corepresentation identity_corep(int n, int D, double q) {
  Corepresentation a(n, 0, D, q);
  for (int i = 1; i <= 2 * n; ++i) a.at(i, i) = TensorOperator::identity(n, 0, D);
  return a;
}

Corepresentation elementary_corep(int i, int n, int D, double q) {
  if (n < 2) throw std::invalid_argument("rank n must be >= 2");
  if (i < 1 || i > n) throw std::invalid_argument("elementary_corep: i must be in 1..n");
  Corepresentation a(n, 1, D, q);
  const std::vector<int> zero(static_cast<std::size_t>(n), 0);
  auto f = [&](Primitive p) { return primitive_factor(p, D, q); };
  auto put = [&](int k, int l, const FockFactor& leg) {
    a.at(k, l) = TensorOperator::elementary(n, TorusMonomial{1.0, zero}, {leg});
  };
  for (int k = 1; k <= 2 * n; ++k) put(k, k, f(Primitive::id()));
  if (i < n) {
    FockFactor down = f(Primitive::sqrt1m2()) * f(Primitive::S());   // √(1-q^{2N+2}) S
    FockFactor up = f(Primitive::Sstar()) * f(Primitive::sqrt1m2());  // S* √(1-q^{2N+2})
    put(i, i, down);
    put(2 * n - i, 2 * n - i, down);
    put(i + 1, i + 1, up);
    put(2 * n - i + 1, 2 * n - i + 1, up);
    put(i, i + 1, f(Primitive::qpow(1, 1)).scaled(-1.0));
    put(i + 1, i, f(Primitive::qpow(1, 0)));
    put(2 * n - i, 2 * n - i + 1, f(Primitive::qpow(1, 1)));
    put(2 * n - i + 1, 2 * n - i, f(Primitive::qpow(1, 0)).scaled(-1.0));
  } else {
    put(n, n, f(Primitive::sqrt1m4()) * f(Primitive::S()));
    put(n + 1, n + 1, f(Primitive::Sstar()) * f(Primitive::sqrt1m4()));
    put(n, n + 1, f(Primitive::qpow(2, 2)).scaled(-1.0));
    put(n + 1, n, f(Primitive::qpow(2, 0)));
  }
  return a;
}

Corepresentation torus_corep(int n, int D, double q) {
  Corepresentation a(n, 0, D, q);
  for (int i = 1; i <= 2 * n; ++i) {
    std::vector<int> e(static_cast<std::size_t>(n), 0);
    if (i <= n)
      e[static_cast<std::size_t>(i - 1)] = -1;  // conj(t_i)
    else
      e[static_cast<std::size_t>(2 * n - i)] = 1;  // t_{2n+1-i}
    a.at(i, i) = TensorOperator::monomial(n, 0, D, TorusMonomial{1.0, e});
  }
  return a;
}

Corepresentation convolve(const Corepresentation& a, const Corepresentation& b) {
  if (a.n() != b.n() || a.cutoff() != b.cutoff() || a.q() != b.q())
    throw std::invalid_argument("convolve: rank, cutoff or q mismatch");
  Corepresentation out(a.n(), a.slots() + b.slots(), a.cutoff(), a.q());
  const int d = a.dim();
  for (int i = 1; i <= d; ++i)
    for (int j = 1; j <= d; ++j) {
      TensorOperator acc(a.n(), a.slots() + b.slots(), a.cutoff());
      for (int k = 1; k <= d; ++k) {
        if (a(i, k).is_zero() || b(k, j).is_zero()) continue;
        acc = acc + tensor(a(i, k), b(k, j));
      }
      out.at(i, j) = std::move(acc);
    }
  return out;
}

Corepresentation corep_of_word(const WeylWord& w, bool with_torus, int D, double q) {
  validate(w);
  Corepresentation a = with_torus ? torus_corep(w.n, D, q) : identity_corep(w.n, D, q);
  for (int l : w.letters) a = convolve(a, elementary_corep(l, w.n, D, q));
  return a;
}

namespace {

struct GenRef {
  int row, col;
  bool star;
};

struct SweepTerm {
  cplx coeff;
  std::vector<GenRef> factors;
};

struct SweepRelation {
  std::string key;
  std::vector<SweepTerm> terms;
};

// Evaluates every relation on interior basis vectors, caching A(x)v and A(x)A(y)v.
std::vector<double> sweep(const Corepresentation& a, const std::vector<SweepRelation>& rels,
                          const std::vector<TorusPoint>& tsamples, const InteriorOptions& iopt) {
  const int d = a.dim();
  const auto nd = static_cast<std::size_t>(d);
  std::vector<TensorOperator> ops;  // plain entries then adjoints
  ops.reserve(2 * nd * nd);
  for (int i = 1; i <= d; ++i)
    for (int j = 1; j <= d; ++j) ops.push_back(a(i, j));
  for (int i = 1; i <= d; ++i)
    for (int j = 1; j <= d; ++j) ops.push_back(adjoint(a(i, j)));
  auto op_id = [&](const GenRef& g) {
    return static_cast<std::size_t>((g.star ? d * d : 0) + (g.row - 1) * d + (g.col - 1));
  };
  std::vector<int> margin(static_cast<std::size_t>(a.slots()), 0);
  for (const auto& op : ops) {
    auto b = op.bwidth();
    for (std::size_t s = 0; s < margin.size(); ++s) margin[s] = std::max(margin[s], b[s]);
  }
  for (auto& m : margin) m *= 2;
  auto idx = interior_indices(margin, a.cutoff(), iopt);
  std::vector<TorusPoint> ts = tsamples;
  if (ts.empty()) ts.push_back(TorusPoint(static_cast<std::size_t>(a.n()), 1.0));

  const std::size_t nops = ops.size();
  auto work = [&](std::size_t lo, std::size_t hi) {
    std::vector<double> worst(rels.size(), 0.0);
    for (std::size_t v = lo; v < hi; ++v) {
      SparseVector e = basis_vector(idx[v], a.cutoff());
      for (const auto& t : ts) {
        std::vector<std::optional<SparseVector>> one(nops);
        std::vector<std::optional<SparseVector>> two(nops * nops);
        auto first = [&](std::size_t y) -> const SparseVector& {
          if (!one[y]) one[y] = apply(ops[y], e, t);
          return *one[y];
        };
        auto second = [&](std::size_t x, std::size_t y) -> const SparseVector& {
          auto& slot = two[x * nops + y];
          if (!slot) slot = apply(ops[x], first(y), t);
          return *slot;
        };
        for (std::size_t r = 0; r < rels.size(); ++r) {
          std::vector<std::pair<std::uint64_t, cplx>> raw;
          for (const auto& term : rels[r].terms) {
            const SparseVector* img = nullptr;
            if (term.factors.empty())
              img = &e;
            else if (term.factors.size() == 1)
              img = &first(op_id(term.factors[0]));
            else
              img = &second(op_id(term.factors[0]), op_id(term.factors[1]));
            for (const auto& [k, x] : img->entries) raw.emplace_back(k, term.coeff * x);
          }
          worst[r] = std::max(worst[r], collect(std::move(raw)).norm());
        }
      }
    }
    return worst;
  };
  const int jobs = std::max(1, iopt.jobs);
  if (jobs == 1 || idx.size() < 16) return work(0, idx.size());
  std::vector<std::vector<double>> parts(static_cast<std::size_t>(jobs));
  std::vector<std::thread> pool;
  const std::size_t chunk = (idx.size() + static_cast<std::size_t>(jobs) - 1) / static_cast<std::size_t>(jobs);
  for (int j = 0; j < jobs; ++j) {
    std::size_t lo = static_cast<std::size_t>(j) * chunk, hi = std::min(idx.size(), lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&, j, lo, hi] { parts[static_cast<std::size_t>(j)] = work(lo, hi); });
  }
  for (auto& th : pool) th.join();
  std::vector<double> worst(rels.size(), 0.0);
  for (const auto& p : parts)
    for (std::size_t r = 0; r < p.size(); ++r) worst[r] = std::max(worst[r], p[r]);
  return worst;
}

std::string label_key(const QuadraticRelation& r) {
  std::ostringstream os;
  os << r.tag << '(' << r.label[0] << ',' << r.label[1];
  if (r.tag == "rtt") os << ',' << r.label[2] << ',' << r.label[3];
  os << ')';
  return os.str();
}

}  // namespace

VerificationReport check_corep_relations(const Corepresentation& a, const std::vector<QuadraticRelation>& rels,
                                         const std::vector<TorusPoint>& tsamples, const CheckOptions& opt) {
  std::vector<SweepRelation> sr;
  sr.reserve(rels.size());
  for (const auto& r : rels) {
    SweepRelation s{label_key(r), {}};
    for (const auto& t : r.terms) {
      if (t.factors.size() > 2) throw std::invalid_argument("relation term of degree > 2");
      SweepTerm st{t.coeff, {}};
      for (const auto& g : t.factors) {
        if (g.row < 1 || g.col < 1 || g.row > a.dim() || g.col > a.dim())
          throw std::out_of_range("relation label outside 1..2n");
        st.factors.push_back({g.row, g.col, false});
      }
      s.terms.push_back(std::move(st));
    }
    sr.push_back(std::move(s));
  }
  auto worst = sweep(a, sr, tsamples, opt.interior);
  VerificationReport rep("relations");
  for (std::size_t r = 0; r < sr.size(); ++r) rep.residual(sr[r].key, worst[r], opt.tol);
  return rep;
}

VerificationReport check_corep_unitary(const Corepresentation& a, const std::vector<TorusPoint>& tsamples,
                                       const CheckOptions& opt) {
  const int d = a.dim();
  std::vector<SweepRelation> sr;
  for (int i = 1; i <= d; ++i)
    for (int j = 1; j <= d; ++j) {
      SweepRelation uu{"uu*(" + std::to_string(i) + "," + std::to_string(j) + ")", {}};
      SweepRelation u_u{"u*u(" + std::to_string(i) + "," + std::to_string(j) + ")", {}};
      for (int k = 1; k <= d; ++k) {
        // (U U^*)_{ij} = Σ_k u^i_k (u^j_k)^*,  (U^* U)_{ij} = Σ_k (u^k_i)^* u^k_j
        if (!a(i, k).is_zero() && !a(j, k).is_zero()) uu.terms.push_back({1.0, {{i, k, false}, {j, k, true}}});
        if (!a(k, i).is_zero() && !a(k, j).is_zero()) u_u.terms.push_back({1.0, {{k, i, true}, {k, j, false}}});
      }
      if (i == j) {
        uu.terms.push_back({-1.0, {}});
        u_u.terms.push_back({-1.0, {}});
      }
      sr.push_back(std::move(uu));
      sr.push_back(std::move(u_u));
    }
  auto worst = sweep(a, sr, tsamples, opt.interior);
  VerificationReport rep("unitarity");
  for (std::size_t r = 0; r < sr.size(); ++r) rep.residual(sr[r].key, worst[r], opt.tol);
  return rep;
}

std::vector<bool> zero_pattern(const Corepresentation& a) {
  std::vector<bool> z;
  for (int i = 1; i <= a.dim(); ++i)
    for (int j = 1; j <= a.dim(); ++j) z.push_back(a(i, j).is_zero());
  return z;
}

std::string corep_metadata_json(const Corepresentation& a) {
  nlohmann::ordered_json j;
  j["n"] = a.n();
  j["slots"] = a.slots();
  j["cutoff"] = a.cutoff();
  j["q"] = a.q();
  nlohmann::ordered_json entries = nlohmann::ordered_json::array();
  for (int r = 1; r <= a.dim(); ++r)
    for (int c = 1; c <= a.dim(); ++c) {
      const auto& e = a(r, c);
      if (e.is_zero()) continue;
      entries.push_back({{"row", r}, {"col", c}, {"terms", e.terms().size()}, {"bwidth", e.bwidth()}});
    }
  j["nonzero_entries"] = entries;
  return j.dump(2);
}

}  // namespace spq
