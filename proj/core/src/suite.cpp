#include "spq/suite.hpp"

#include <algorithm>
#include <chrono>
#include <set>
#include <sstream>
#include <stdexcept>

#include "spq/corep.hpp"
#include "spq/kwit.hpp"
#include "spq/qsymp.hpp"
#include "spq/sphere.hpp"
#include "spq/weyl.hpp"

namespace spq {

namespace {

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

int cutoff_of(const SuiteConfig& c) { return c.cutoff > 0 ? c.cutoff : (c.n == 2 ? 8 : 6); }

// The defect operators stack four boundary widths on the last slot.
int kwitness_cutoff(const SuiteConfig& c) { return c.cutoff > 0 ? c.cutoff : (c.n == 2 ? 8 : 10); }

std::vector<TorusPoint> samples(const SuiteConfig& c) {
  return c.grid ? grid_torus_samples(c.n) : diagonal_torus_samples(c.n, c.tsamples);
}

InteriorOptions interior(const SuiteConfig& c, std::size_t letters) {
  InteriorOptions o;
  o.seed = c.seed;
  o.jobs = c.jobs;
  o.max_vectors = c.max_vectors > 0 ? c.max_vectors : (letters >= 6 ? 256 : 0);
  return o;
}

struct NamedWord {
  std::string name;
  WeylWord word;
  bool torus;
};

std::vector<NamedWord> corep_words(const SuiteConfig& c) {
  std::vector<NamedWord> out;
  for (int i = 1; i <= c.n; ++i) out.push_back({"pi_s" + std::to_string(i), WeylWord{c.n, {i}}, false});
  for (int k = 1; k <= 2 * c.n; ++k) out.push_back({"pi_t_omega" + std::to_string(k), omega_word(k, c.n), true});
  out.push_back({"chi_theta", longest_word(c.n), true});
  for (const auto& w : c.words) out.push_back({"pi_t_word(" + w + ")", parse_word(w, c.n), true});
  return out;
}

// One summary record per relation family, plus every failing relation.
void summarize(VerificationReport& rep, const std::string& name, const VerificationReport& part, double tol) {
  double worst = 0;
  for (const auto& r : part.records)
    if (r.residual) worst = std::max(worst, *r.residual);
  rep.residual(name, worst, tol, std::to_string(part.records.size()) + " relations");
  for (const auto& r : part.records)
    if (r.status == Status::fail) {
      auto copy = r;
      copy.key = name + "/" + r.key;
      rep.records.push_back(std::move(copy));
    }
}

void suite_rtt(const SuiteConfig& c, VerificationReport& rep) {
  const int D = cutoff_of(c);
  auto ts = samples(c);
  auto rels = rtt_relations(c.n, c.q, RMatrixForm::standard);
  auto cuc = cuc_relations(c.n, c.q);
  for (const auto& w : corep_words(c)) {
    CheckOptions o{c.tol, interior(c, w.word.length())};
    Corepresentation a = corep_of_word(w.word, w.torus, D, c.q);
    summarize(rep, "rtt[" + w.name + "]", check_corep_relations(a, rels, ts, o), c.tol);
    summarize(rep, "cuc[" + w.name + "]", check_corep_relations(a, cuc, ts, o), c.tol);
  }
  // the literal C-coupled R-matrix, for comparison only
  Corepresentation s1 = elementary_corep(1, c.n, D, c.q);
  auto lit = check_corep_relations(s1, rtt_relations(c.n, c.q, RMatrixForm::literal), ts, {c.tol, interior(c, 1)});
  double worst = 0;
  for (const auto& r : lit.records) worst = std::max(worst, r.residual.value_or(0.0));
  rep.info("rtt_literal_form[pi_s1]", worst, "literal C-coupled term");
}

void suite_unitarity(const SuiteConfig& c, VerificationReport& rep) {
  const int D = cutoff_of(c);
  auto ts = samples(c);
  for (const auto& w : corep_words(c)) {
    Corepresentation a = corep_of_word(w.word, w.torus, D, c.q);
    summarize(rep, "unitary[" + w.name + "]", check_corep_unitary(a, ts, {c.tol, interior(c, w.word.length())}), c.tol);
  }
}

void suite_sphere(const SuiteConfig& c, VerificationReport& rep) {
  const int D = cutoff_of(c);
  auto ts = samples(c);
  for (int k = 1; k <= 2 * c.n; ++k) {
    SphereGenerators g = sphere_generators(k, c.n, D, c.q);
    SphereCheckOptions o{c.tol, interior(c, static_cast<std::size_t>(k - 1))};
    rep.append(check_sphere_relations(g, ts, o), "k=" + std::to_string(k));
  }
  SphereGenerators g = sphere_generators(2 * c.n, c.n, D, c.q);
  SphereGenerators bad = with_perturbed_generator(g, c.n, 1e-3);
  SphereCheckOptions o{c.tol, interior(c, static_cast<std::size_t>(2 * c.n - 1))};
  rep.at_least("negative_control(z_n, dq=1e-3)", check_sphere_relations(bad, ts, o).max_residual(), 1e-4);
}

void suite_identities(const SuiteConfig& c, VerificationReport& rep) {
  SphereGenerators g = sphere_generators(2 * c.n, c.n, cutoff_of(c), c.q);
  SphereCheckOptions o{c.tol, interior(c, static_cast<std::size_t>(2 * c.n - 1))};
  rep.append(check_derived_identities(g, samples(c), o, c.max_power, c.weight_bound));
}

void suite_spectrum(const SuiteConfig& c, VerificationReport& rep) {
  rep.append(check_spectrum(sphere_generators(2 * c.n, c.n, cutoff_of(c), c.q), 1e-8));
}

void suite_gram(const SuiteConfig& c, VerificationReport& rep) {
  auto ts = samples(c);
  if (ts.size() < 2) throw std::invalid_argument("gram suite needs at least two torus samples");
  rep.append(check_basis(sphere_generators(2 * c.n, c.n, cutoff_of(c), c.q), c.weight_bound, ts[0], ts[1]));
}

std::vector<int> corner_positions(int k, int n) {
  std::vector<int> pos;
  if (k <= n) {
    for (int l = 1; l <= k - 1; ++l) pos.push_back(l);
  } else {
    for (int l = 1; l <= 2 * n - k; ++l) pos.push_back(l);
    for (int l = 2 * n - k + 2; l <= k - 1; ++l) pos.push_back(l);
    pos.push_back(0);
  }
  return pos;
}

void suite_corner(const SuiteConfig& c, VerificationReport& rep) {
  const int D = cutoff_of(c);
  auto ts = samples(c);
  long long skipped = 0;
  for (int k = 2; k <= 2 * c.n; ++k) {
    SphereGenerators g = sphere_generators(k, c.n, D, c.q);
    auto pos = corner_positions(k, c.n);
    std::vector<std::vector<int>> alphas{std::vector<int>(static_cast<std::size_t>(2 * c.n), 0)};
    for (int l : pos) {
      alphas.emplace_back(static_cast<std::size_t>(2 * c.n), 0);
      alphas.back()[static_cast<std::size_t>(l)] = 1;
    }
    if (pos.size() > 1) {
      alphas.emplace_back(static_cast<std::size_t>(2 * c.n), 0);
      for (int l : pos) alphas.back()[static_cast<std::size_t>(l)] = 1;
    }
    for (const auto& a : alphas) {
      try {
        VerificationReport r = corner_elements(g, a, ts.size() > 1 ? ts[1] : ts[0], 1e-8);
        rep.append(r, "k=" + std::to_string(k) + ",alpha=" + r.config.front().second);
      } catch (const std::domain_error&) {
        ++skipped;
      }
    }
  }
  rep.info_integer("skipped_outside_interior", skipped);
}

void suite_symbol(const SuiteConfig& c, VerificationReport& rep) {
  auto ts = samples(c);
  for (int k = 2; k <= 2 * c.n; ++k) rep.append(symbol_compatibility(k, c.n, cutoff_of(c), c.q, ts, c.tol));
}

void suite_kwitness(const SuiteConfig& c, VerificationReport& rep) {
  auto ts = samples(c);
  for (int k = 1; k <= 2 * c.n; ++k) rep.append(check_kwitness(k, c.n, kwitness_cutoff(c), c.q, ts));
}

std::vector<SignedPermutation> enumerate_group(int n) {
  std::vector<SignedPermutation> out{SignedPermutation(n)};
  std::set<std::vector<int>> seen{out.front().entries()};
  for (std::size_t i = 0; i < out.size(); ++i)
    for (int s = 1; s <= n; ++s) {
      SignedPermutation g = out[i] * generator_matrix(s, n);
      if (seen.insert(g.entries()).second) out.push_back(g);
    }
  return out;
}

void suite_weyl(const SuiteConfig& c, VerificationReport& rep) {
  const int n = c.n;
  const SignedPermutation I(n);
  bool squares = true, braids = true;
  for (int i = 1; i <= n; ++i) {
    auto si = generator_matrix(i, n);
    squares = squares && si * si == I;
    for (int j = i + 1; j <= n; ++j) {
      auto sj = generator_matrix(j, n);
      if (j - i >= 2) braids = braids && si * sj == sj * si;
    }
    if (i + 1 < n) {
      auto sj = generator_matrix(i + 1, n);
      braids = braids && si * sj * si == sj * si * sj;
    }
  }
  auto a = generator_matrix(n - 1, n) * generator_matrix(n, n);
  braids = braids && a * a * a * a == I && !(a * a == I);
  rep.flag("involutions", squares);
  rep.flag("braid_relations", braids);
  const WeylWord th = longest_word(n);
  std::vector<int> minus(static_cast<std::size_t>(n * n), 0);
  for (int i = 0; i < n; ++i) minus[static_cast<std::size_t>(i * n + i)] = -1;
  rep.flag("evaluate(theta)=-I", evaluate_word(th) == SignedPermutation(n, minus));
  rep.integer("length(theta)", static_cast<long long>(th.length()), n * n);
  rep.integer("coxeter_length(theta)", coxeter_length(evaluate_word(th)), n * n);
  for (int k = 1; k <= 2 * n; ++k) {
    WeylWord w = omega_word(k, n);
    rep.integer("length(omega_" + std::to_string(k) + ")", coxeter_length(evaluate_word(w)), k - 1);
    rep.flag("omega_" + std::to_string(k) + " subword of theta", is_subword(w, th));
  }
  auto group = enumerate_group(n);
  long long order = 1 << n;
  for (int i = 2; i <= n; ++i) order *= i;
  rep.integer("group_order", static_cast<long long>(group.size()), order);
  long long bad = 0;
  for (const auto& g : group)
    if (!(evaluate_word(canonical_factorization(g).word()) == g)) ++bad;
  rep.integer("normal_form_roundtrip_failures", bad, 0);
}

void suite_branching(const SuiteConfig& c, VerificationReport& rep) {
  const int n = c.n;
  if (!c.lambda.empty()) {
    Partition l = parse_partition(c.lambda);
    Partition m = c.mu.empty() ? Partition{} : parse_partition(c.mu);
    auto v = branching_multiplicity(l, m, n);
    bool trivial = std::all_of(m.parts.begin(), m.parts.end(), [](int x) { return x == 0; });
    std::string k = "multiplicity(" + c.lambda + ";" + (c.mu.empty() ? "0" : c.mu) + ")";
    if (trivial)
      rep.integer(k, v, branching_closed_form_trivial(l));
    else
      rep.info_integer(k, v);
  }
  long long bad = 0, checked = 0;
  for (int l1 = 0; l1 <= 6; ++l1)
    for (int l2 = 0; l2 <= l1; ++l2) {
      Partition l{{l1, l2}};
      ++checked;
      if (branching_multiplicity(l, {}, n) != branching_closed_form_trivial(l)) ++bad;
      if (n >= 3)
        for (int l3 = 1; l3 <= l2; ++l3) {
          ++checked;
          if (branching_multiplicity(Partition{{l1, l2, l3}}, {}, n) != 0) ++bad;
        }
    }
  rep.info_integer("closed_form_cases", checked);
  rep.integer("closed_form_mismatches", bad, 0);
}

void suite_t1(const SuiteConfig& c, VerificationReport& rep) {
  T1Residuals r = check_t1_relations(t1_matrices(c.n, c.q));
  const double tol = 1e-12;
  rep.residual("K_commute", r.k_commute, tol);
  rep.residual("K_inverse", r.k_inverse, tol);
  rep.residual("KEK^-1", r.ke_conj, tol);
  rep.residual("KFK^-1", r.kf_conj, tol);
  rep.info("KFK^-1_literal_exponent", r.kf_conj_literal, "opposite exponent sign");
  rep.residual("[E,F]", r.ef_commutator, tol);
  rep.residual("serre_E", r.serre_e, tol);
  rep.residual("serre_F", r.serre_f, tol);
}

using SuiteFn = void (*)(const SuiteConfig&, VerificationReport&);

const std::vector<std::pair<std::string, SuiteFn>>& table() {
  static const std::vector<std::pair<std::string, SuiteFn>> t{
      {"rtt", suite_rtt},       {"unitarity", suite_unitarity}, {"sphere", suite_sphere},
      {"identities", suite_identities}, {"spectrum", suite_spectrum}, {"gram", suite_gram},
      {"corner", suite_corner}, {"symbol", suite_symbol},       {"kwitness", suite_kwitness},
      {"weyl", suite_weyl},     {"branching", suite_branching}, {"t1", suite_t1}};
  return t;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [k, f] : table()) v.push_back(k);
    return v;
  }();
  return names;
}

void validate(const SuiteConfig& c) {
  if (c.n < 2) throw std::invalid_argument("n must be >= 2");
  if (!(c.q > 0 && c.q < 1)) throw std::invalid_argument("q must lie in (0,1)");
  if (c.cutoff != 0 && c.cutoff < 3) throw std::invalid_argument("cutoff must be >= 3");
  if (!(c.tol > 0)) throw std::invalid_argument("tol must be positive");
  if (c.tsamples < 1) throw std::invalid_argument("t-samples must be >= 1");
  if (c.jobs < 1) throw std::invalid_argument("jobs must be >= 1");
  if (c.weight_bound < 0 || c.max_power < 1) throw std::invalid_argument("weight bound >= 0 and max power >= 1");
  for (const auto& w : c.words) (void)parse_word(w, c.n);
}

VerificationReport run_suite(const SuiteConfig& c, const std::string& suite) {
  validate(c);
  auto it = std::find_if(table().begin(), table().end(), [&](const auto& p) { return p.first == suite; });
  if (it == table().end()) throw std::invalid_argument("unknown suite '" + suite + "'");
  VerificationReport rep(suite);
  rep.echo("n", std::to_string(c.n));
  rep.echo("q", fmt(c.q));
  rep.echo("cutoff", std::to_string(suite == "kwitness" ? kwitness_cutoff(c) : cutoff_of(c)));
  rep.echo("tol", fmt(c.tol));
  rep.echo("t_samples", c.grid ? "grid" : std::to_string(c.tsamples));
  rep.echo("seed", std::to_string(c.seed));
  if (c.max_vectors > 0) rep.echo("max_vectors", std::to_string(c.max_vectors));
  auto t0 = std::chrono::steady_clock::now();
  it->second(c, rep);
  if (c.timing) rep.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

}  // namespace spq
