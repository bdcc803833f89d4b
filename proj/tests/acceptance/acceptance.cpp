// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "spq/qsymp.hpp"
#include "spq/suite.hpp"
#include "spq/weyl.hpp"

using namespace spq;

namespace {

struct Outcome {
  bool ok = true;
  std::ostringstream detail;

  void add(const std::string& label, const VerificationReport& r) {
    ok = ok && r.passed();
    detail << label << ": " << (r.passed() ? "ok" : "FAILED") << " max " << r.max_residual() << "; ";
    for (const auto& rec : r.records)
      if (rec.status == Status::fail) detail << "[" << rec.key << "] ";
  }
  void require(const std::string& label, bool cond) {
    ok = ok && cond;
    if (!cond) detail << label << " FAILED; ";
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

VerificationReport run(int n, const std::string& suite, int cutoff = 0, int weight_bound = 3) {
  SuiteConfig c;
  c.n = n;
  c.q = 0.5;
  c.cutoff = cutoff;
  c.tol = 1e-9;
  c.tsamples = 8;
  c.weight_bound = weight_bound;
  return run_suite(c, suite);
}

void closure(Outcome& o) {
  o.require("256 RTT relations", rtt_relations(2, 0.5, RMatrixForm::standard).size() == 256);
  o.require("32 CUC relations", cuc_relations(2, 0.5).size() == 32);
  auto t0 = std::chrono::steady_clock::now();
  o.add("n=2 D=8", run(2, "rtt", 8));
  double t2 = seconds_since(t0);
  o.require("n=2 within 60 s", t2 <= 60);
  t0 = std::chrono::steady_clock::now();
  // the longest word has 9 letters, so it is checked on 256 sampled vectors
  o.add("n=3 D=6", run(3, "rtt", 6));
  double t3 = seconds_since(t0);
  o.require("n=3 within 600 s", t3 <= 600);
  o.detail << "time n=2 " << t2 << " s, n=3 " << t3 << " s";
}

void unitarity(Outcome& o) {
  o.add("n=2 D=8", run(2, "unitarity", 8));
  o.add("n=3 D=6", run(3, "unitarity", 6));
}

void sphere(Outcome& o) {
  for (int n : {2, 3}) {
    auto r = run(n, "sphere");
    o.add("n=" + std::to_string(n), r);
    for (const auto& rec : r.records)
      if (rec.lower_bound) o.detail << "control " << rec.residual.value_or(0) << " >= 1e-4; ";
  }
}

void spectrum(Outcome& o) {
  o.add("D=6", run(2, "spectrum", 6));
  o.add("D=8", run(2, "spectrum", 8));
}

void orthogonality(Outcome& o) { o.add("n=2 D=8 L=3", run(2, "gram", 8, 3)); }

void exact_sequence(Outcome& o) { o.add("n=2 D=8", run(2, "symbol", 8)); }

void kwitness(Outcome& o) { o.add("n=2 D=8", run(2, "kwitness", 8)); }

void weyl(Outcome& o) {
  auto t0 = std::chrono::steady_clock::now();
  o.add("W_2", run(2, "weyl"));
  o.add("W_3", run(3, "weyl"));
  double t = seconds_since(t0);
  o.require("within 1 s", t <= 1.0);
  o.detail << "time " << t << " s";
}

void branching(Outcome& o) {
  auto t0 = std::chrono::steady_clock::now();
  long long cases = 0, bad = 0;
  for (int n : {2, 3})
    for (int l1 = 0; l1 <= 6; ++l1)
      for (int l2 = 0; l2 <= l1; ++l2)
        for (int l3 = 0; l3 <= (n >= 3 ? l2 : 0); ++l3) {
          std::vector<int> l = n >= 3 ? std::vector<int>{l1, l2, l3} : std::vector<int>{l1, l2};
          long long lib = branching_multiplicity({l}, {}, n);
          long long brute = oracle::branching(l, {}, n);
          long long closed = l3 > 0 ? 0 : l1 - l2 + 1;
          ++cases;
          if (lib != brute || lib != closed) ++bad;
        }
  double t = seconds_since(t0);
  o.require("library = brute force = closed form", bad == 0);
  o.require("within 1 s", t <= 1.0);
  o.detail << cases << " partitions, " << bad << " mismatches, " << t << " s";
}

void t1(Outcome& o) {
  o.add("n=2", run(2, "t1"));
  o.add("n=3", run(3, "t1"));
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
      {"RTT/CUC closure", closure},      {"unitarity", unitarity},         {"sphere relations", sphere},
      {"omega spectrum", spectrum},      {"orthogonality", orthogonality}, {"exact sequence", exact_sequence},
      {"K-witnesses", kwitness},         {"Weyl exactness", weyl},         {"branching oracle", branching},
      {"T1 relations", t1}};
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail << "exception: " << e.what();
    }
    failed += !o.ok;
    std::printf("[%s] %2zu %-18s %s\n", o.ok ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.str().c_str());
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - static_cast<std::size_t>(failed), criteria.size());
  return failed == 0 ? 0 : 1;
}
