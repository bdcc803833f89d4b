#include "spq/qsymp.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace spq {

namespace {

void check_params(int n, double q) {
  if (n < 2) throw std::invalid_argument("rank n must be >= 2");
  if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("q must lie in (0,1)");
}

int delta(int a, int b) { return a == b ? 1 : 0; }

}  // namespace

IndexConstants index_constants(int n, double q) {
  check_params(n, q);
  IndexConstants ic;
  ic.n = n;
  ic.q = q;
  const auto N = static_cast<std::size_t>(2 * n + 1);
  ic.iprime.assign(N, 0);
  ic.rho.assign(N, 0);
  ic.eps.assign(N, 0);
  for (int i = 1; i <= 2 * n; ++i) {
    auto u = static_cast<std::size_t>(i);
    ic.iprime[u] = 2 * n + 1 - i;
    ic.rho[u] = i <= n ? n + 1 - i : -(n + 1 - (2 * n + 1 - i));
    ic.eps[u] = i <= n ? 1 : -1;
  }
  ic.cmat = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
  for (int i = 1; i <= 2 * n; ++i)
    ic.cmat(i - 1, ic.ip(i) - 1) = static_cast<double>(ic.e(i)) * std::pow(q, -ic.r(i));
  return ic;
}

const char* to_string(RMatrixForm f) { return f == RMatrixForm::literal ? "literal" : "standard"; }

RMatrix::RMatrix(int n, double q, RMatrixForm form) : n_(n), q_(q), form_(form) {
  IndexConstants ic = index_constants(n, q);
  const int d = 2 * n;
  const double qq = q - 1.0 / q;
  for (int i = 1; i <= d; ++i)
    for (int j = 1; j <= d; ++j)
      for (int m = 1; m <= d; ++m)
        for (int nn = 1; nn <= d; ++nn) {
          cplx v = 0.0;
          if (i == m && j == nn) v += std::pow(q, delta(i, j) - delta(j, ic.ip(i)));
          if (theta(i - m)) {
            double coupled = 0.0;
            if (form == RMatrixForm::literal) {
              coupled = ic.c(i, j).real() * ic.c(m, nn).real();
            } else if (j == ic.ip(i) && nn == ic.ip(m)) {
              coupled = -ic.e(i) * ic.e(m) * std::pow(q, ic.r(i) - ic.r(m));
            }
            v += qq * (static_cast<double>(delta(j, m) * delta(i, nn)) + coupled);
          }
          if (v != 0.0) entries_[{i, j, m, nn}] = v;
        }
}

cplx RMatrix::operator()(int i, int j, int m, int nn) const {
  auto it = entries_.find({i, j, m, nn});
  return it == entries_.end() ? cplx(0.0) : it->second;
}

RMatrix RMatrix::with_entry(int i, int j, int m, int nn, cplx value) const {
  const int d = 2 * n_;
  for (int x : {i, j, m, nn})
    if (x < 1 || x > d) throw std::out_of_range("R-matrix index out of range");
  RMatrix out = *this;
  if (value == 0.0)
    out.entries_.erase({i, j, m, nn});
  else
    out.entries_[{i, j, m, nn}] = value;
  return out;
}

RMatrix r_matrix(int n, double q, RMatrixForm form) { return RMatrix(n, q, form); }

std::vector<QuadraticRelation> rtt_relations(const RMatrix& R) {
  const int d = 2 * R.n();
  // index R by its first two indices for the left sum and its last two for the right sum
  std::map<std::pair<int, int>, std::vector<std::pair<std::array<int, 2>, cplx>>> by_upper, by_lower;
  for (const auto& [key, v] : R.entries()) {
    by_upper[{key[0], key[1]}].push_back({{key[2], key[3]}, v});
    by_lower[{key[2], key[3]}].push_back({{key[0], key[1]}, v});
  }
  std::vector<QuadraticRelation> out;
  out.reserve(static_cast<std::size_t>(d * d * d * d));
  for (int i = 1; i <= d; ++i)
    for (int j = 1; j <= d; ++j)
      for (int s = 1; s <= d; ++s)
        for (int t = 1; t <= d; ++t) {
          QuadraticRelation rel{"rtt", {i, j, s, t}, {}};
          // Σ_{k,l} R^{ji}_{kl} u^k_s u^l_t
          if (auto it = by_upper.find({j, i}); it != by_upper.end())
            for (const auto& [kl, v] : it->second)
              rel.terms.push_back({v, {{kl[0], s}, {kl[1], t}}});
          // - Σ_{k,l} R^{lk}_{st} u^i_k u^j_l
          if (auto it = by_lower.find({s, t}); it != by_lower.end())
            for (const auto& [lk, v] : it->second)
              rel.terms.push_back({-v, {{i, lk[1]}, {j, lk[0]}}});
          out.push_back(std::move(rel));
        }
  return out;
}

std::vector<QuadraticRelation> rtt_relations(int n, double q, RMatrixForm form) {
  return rtt_relations(r_matrix(n, q, form));
}

std::vector<QuadraticRelation> cuc_relations(int n, double q) {
  IndexConstants ic = index_constants(n, q);
  const int d = 2 * n;
  Eigen::MatrixXcd cinv = ic.cmat.inverse();
  std::vector<QuadraticRelation> out;
  // U C U^t C^{-1}: (a,b) = Σ u^a_c C^c_e u^f_e (C^{-1})^f_b
  for (int a = 1; a <= d; ++a)
    for (int b = 1; b <= d; ++b) {
      QuadraticRelation rel{"cuc1", {a, b, 0, 0}, {}};
      for (int c = 1; c <= d; ++c)
        for (int e = 1; e <= d; ++e)
          for (int f = 1; f <= d; ++f) {
            cplx v = ic.c(c, e) * cinv(f - 1, b - 1);
            if (std::abs(v) > 0) rel.terms.push_back({v, {{a, c}, {f, e}}});
          }
      if (a == b) rel.terms.push_back({-1.0, {}});
      out.push_back(std::move(rel));
    }
  // C U^t C^{-1} U: (a,b) = Σ C^a_c u^e_c (C^{-1})^e_f u^f_b
  for (int a = 1; a <= d; ++a)
    for (int b = 1; b <= d; ++b) {
      QuadraticRelation rel{"cuc2", {a, b, 0, 0}, {}};
      for (int c = 1; c <= d; ++c)
        for (int e = 1; e <= d; ++e)
          for (int f = 1; f <= d; ++f) {
            cplx v = ic.c(a, c) * cinv(e - 1, f - 1);
            if (std::abs(v) > 0) rel.terms.push_back({v, {{e, c}, {f, b}}});
          }
      if (a == b) rel.terms.push_back({-1.0, {}});
      out.push_back(std::move(rel));
    }
  return out;
}

std::string export_relations(const std::vector<QuadraticRelation>& rels) {
  std::ostringstream os;
  os.precision(17);
  for (const auto& rel : rels) {
    os << '(' << rel.label[0] << ',' << rel.label[1];
    if (rel.tag == "rtt") os << ',' << rel.label[2] << ',' << rel.label[3];
    os << ")";
    if (rel.tag != "rtt") os << '[' << rel.tag << ']';
    os << ':';
    bool first = true;
    for (const auto& term : rel.terms) {
      double re = term.coeff.real(), im = term.coeff.imag();
      if (im == 0.0) {
        os << (first ? (re < 0 ? " -" : " ") : (re < 0 ? " - " : " + ")) << std::abs(re);
      } else {
        os << (first ? " " : " + ") << '(' << re << (im < 0 ? "-" : "+") << std::abs(im) << "i)";
      }
      if (term.factors.empty()) os << " · 1";
      for (std::size_t f = 0; f < term.factors.size(); ++f)
        os << (f == 0 ? " · " : "·") << "u[" << term.factors[f].row << ',' << term.factors[f].col << ']';
      first = false;
    }
    if (rel.terms.empty()) os << " 0";
    os << '\n';
  }
  return os.str();
}

ScaledGenerator HopfTables::star(int i, int j) const {
  double s = ic.e(i) * ic.e(j) * std::pow(q, ic.r(i) - ic.r(j));
  return {s, {ic.ip(i), ic.ip(j)}};
}

ScaledGenerator HopfTables::antipode(int i, int j) const {
  double s = ic.e(i) * ic.e(j) * std::pow(q, ic.r(i) - ic.r(j));
  return {s, {ic.ip(j), ic.ip(i)}};
}

HopfTables hopf_tables(int n, double q) {
  HopfTables h;
  h.n = n;
  h.q = q;
  h.ic = index_constants(n, q);
  return h;
}

double star_vs_cmatrix_deviation(const IndexConstants& ic) {
  // (U^*)^i_j = (u^j_i)^* as a scaled generator, versus (C U^t C^{-1})^i_j
  HopfTables h{ic.n, ic.q, ic};
  const int d = ic.dim();
  Eigen::MatrixXcd cinv = ic.cmat.inverse();
  double worst = 0.0;
  for (int i = 1; i <= d; ++i)
    for (int j = 1; j <= d; ++j) {
      // expand C U^t C^{-1} into generator coefficients
      std::map<GeneratorSymbol, cplx> rhs;
      for (int a = 1; a <= d; ++a)
        for (int b = 1; b <= d; ++b) {
          cplx v = ic.c(i, a) * cinv(b - 1, j - 1);
          if (std::abs(v) > 0) rhs[{b, a}] += v;  // (U^t)^a_b = u^b_a
        }
      // (U^*)^i_j = (u^j_i)^*
      ScaledGenerator lhs = h.star(j, i);
      for (const auto& [g, v] : rhs) {
        cplx expect = g == lhs.gen ? lhs.scalar : cplx(0.0);
        worst = std::max(worst, std::abs(v - expect));
      }
      if (!rhs.count(lhs.gen)) worst = std::max(worst, std::abs(lhs.scalar));
    }
  return worst;
}

double T1Matrices::qi(int i) const { return i < n ? q : q * q; }

int T1Matrices::cartan(int i, int j) const {
  if (i == j) return 2;
  if (i == j + 1) return -1;
  if (i == j - 1) return i == n - 1 ? -2 : -1;
  return 0;
}

T1Matrices t1_matrices(int n, double q) {
  check_params(n, q);
  const int d = 2 * n;
  auto D = [&](int j, int power) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(d, d);
    m(j - 1, j - 1) = std::pow(q, power);
    return m;
  };
  auto unit = [&](int r, int c) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
    m(r - 1, c - 1) = 1.0;
    return m;
  };
  T1Matrices t;
  t.n = n;
  t.q = q;
  for (int i = 1; i < n; ++i) {
    t.K.push_back(D(i, -1) * D(i + 1, 1) * D(2 * n - i, -1) * D(2 * n - i + 1, 1));
    t.E.push_back(unit(i + 1, i) - unit(2 * n - i + 1, 2 * n - i));
    t.F.push_back(unit(i, i + 1) - unit(2 * n - i, 2 * n - i + 1));
  }
  t.K.push_back(D(n, -2) * D(n + 1, 2));
  t.E.push_back(unit(n + 1, n));
  t.F.push_back(unit(n, n + 1));
  for (const auto& k : t.K) t.Kinv.push_back(k.inverse());
  return t;
}

double q_integer(int m, double q) { return (std::pow(q, m) - std::pow(q, -m)) / (q - 1.0 / q); }

double q_binomial(int m, int r, double q) {
  if (r < 0 || r > m) return 0.0;
  double num = 1.0, den = 1.0;
  for (int k = 1; k <= r; ++k) {
    num *= q_integer(m - k + 1, q);
    den *= q_integer(k, q);
  }
  return num / den;
}

T1Residuals check_t1_relations(const T1Matrices& t) {
  T1Residuals res;
  const int n = t.n;
  auto sz = [](int i) { return static_cast<std::size_t>(i - 1); };
  auto dev = [](const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); };
  const auto I = Eigen::MatrixXcd::Identity(2 * n, 2 * n);
  auto mpow = [&](const Eigen::MatrixXcd& m, int p) {
    Eigen::MatrixXcd r = I;
    for (int k = 0; k < p; ++k) r = r * m;
    return r;
  };
  for (int i = 1; i <= n; ++i) {
    const auto& Ki = t.K[sz(i)];
    const auto& Kinv = t.Kinv[sz(i)];
    res.k_inverse = std::max({res.k_inverse, dev(Ki * Kinv - I), dev(Kinv * Ki - I)});
    for (int j = 1; j <= n; ++j) {
      const auto& Kj = t.K[sz(j)];
      const auto& Ej = t.E[sz(j)];
      const auto& Fj = t.F[sz(j)];
      res.k_commute = std::max(res.k_commute, dev(Ki * Kj - Kj * Ki));
      double f = std::pow(t.qi(i), t.cartan(i, j));
      res.ke_conj = std::max(res.ke_conj, dev(Ki * Ej * Kinv - f * Ej));
      res.kf_conj = std::max(res.kf_conj, dev(Ki * Fj * Kinv - Fj / f));
      res.kf_conj_literal = std::max(res.kf_conj_literal, dev(Ki * Fj * Kinv - f * Fj));
      Eigen::MatrixXcd comm = t.E[sz(i)] * Fj - Fj * t.E[sz(i)];
      Eigen::MatrixXcd rhs = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
      if (i == j) rhs = (Ki - Kinv) / (t.qi(i) - 1.0 / t.qi(i));
      res.ef_commutator = std::max(res.ef_commutator, dev(comm - rhs));
      if (i != j) {
        const int top = 1 - t.cartan(i, j);
        Eigen::MatrixXcd se = Eigen::MatrixXcd::Zero(2 * n, 2 * n), sf = se;
        for (int r = 0; r <= top; ++r) {
          double c = (r % 2 ? -1.0 : 1.0) * q_binomial(top, r, t.qi(i));
          se += c * mpow(t.E[sz(i)], top - r) * Ej * mpow(t.E[sz(i)], r);
          sf += c * mpow(t.F[sz(i)], top - r) * Fj * mpow(t.F[sz(i)], r);
        }
        res.serre_e = std::max(res.serre_e, dev(se));
        res.serre_f = std::max(res.serre_f, dev(sf));
      }
    }
  }
  return res;
}

}  // namespace spq
