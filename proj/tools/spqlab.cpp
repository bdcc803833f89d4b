#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>

#include "spq/corep.hpp"
#include "spq/sphere.hpp"
#include "spq/suite.hpp"
#include "spq/weyl.hpp"

namespace {

// exit codes
constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kConfig = 2;

void write_to(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text << '\n';
    return;
  }
  std::ofstream f(path);
  if (!f) throw std::invalid_argument("cannot open '" + path + "' for writing");
  f << text << '\n';
}

int emit(const spq::VerificationReport& rep, const std::string& json_out) {
  std::cout << rep.to_text();
  if (!json_out.empty()) write_to(json_out, rep.to_json());
  return rep.passed() ? kPass : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verification laboratory for quantum symplectic groups and quaternion spheres"};
  app.require_subcommand(1);

  spq::SuiteConfig cfg;
  std::string json_out, dot_out, word;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--n", cfg.n, "rank n (>= 2)");
    sub->add_option("--q", cfg.q, "deformation parameter in (0,1)");
    sub->add_option("--cutoff", cfg.cutoff, "Fock cutoff D (0: 8 for n=2, 6 above)");
    sub->add_option("--tol", cfg.tol, "residual tolerance");
    sub->add_option("--t-samples", cfg.tsamples, "number of diagonal torus samples");
    sub->add_flag("--grid", cfg.grid, "use the full grid of 8th roots of unity");
    sub->add_option("--jobs", cfg.jobs, "worker threads");
    sub->add_option("--seed", cfg.seed, "seed for sampled interior vectors");
    sub->add_option("--max-vectors", cfg.max_vectors, "cap on interior vectors per check (0: default policy)");
    sub->add_option("--json-out", json_out, "write the JSON report here ('-' for stdout)");
    sub->add_flag("--timing", cfg.timing, "include wall time in the report");
  };

  std::string suite;
  auto* verify = app.add_subcommand("verify", "run one verification suite");
  verify->add_option("suite", suite, "suite name")->required()->check(CLI::IsMember(spq::suite_names()));
  verify->add_option("--word", cfg.words, "extra Weyl word for rtt/unitarity, e.g. 1,2,1")->delimiter(';');
  verify->add_option("--lambda", cfg.lambda, "branching: λ as comma list");
  verify->add_option("--mu", cfg.mu, "branching: μ as comma list");
  verify->add_option("--weight-bound", cfg.weight_bound, "basis weight bound L");
  verify->add_option("--max-power", cfg.max_power, "largest power m in the commutation identities");
  common(verify);

  auto* diagram = app.add_subcommand("diagram", "export the arrow diagram of a word");
  diagram->add_option("WORD", word, "Weyl word, e.g. 1,2,1");
  diagram->add_option("--word", word, "Weyl word (alternative to the positional form)");
  diagram->add_option("--dot-out", dot_out, "write DOT here ('-' for stdout)");
  common(diagram);

  auto* spectrum = app.add_subcommand("spectrum", "spectrum of ω = z_2n^* z_2n on the interior");
  common(spectrum);

  auto* kwitness = app.add_subcommand("kwitness", "K-theory witnesses u_k and X");
  common(kwitness);

  app.add_subcommand("report-schema", "print the JSON schema of reports");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kPass : kConfig;
  }

  try {
    if (app.got_subcommand("report-schema")) {
      std::cout << spq::report_schema() << '\n';
      return kPass;
    }
    if (*verify) return emit(spq::run_suite(cfg, suite), json_out);
    if (*kwitness) return emit(spq::run_suite(cfg, "kwitness"), json_out);
    if (*spectrum) {
      spq::validate(cfg);
      const int D = cfg.cutoff > 0 ? cfg.cutoff : (cfg.n == 2 ? 8 : 6);
      auto g = spq::sphere_generators(2 * cfg.n, cfg.n, D, cfg.q);
      for (const auto& l : spq::omega_spectrum(g)) std::cout << l.value << "  x" << l.multiplicity << '\n';
      return emit(spq::run_suite(cfg, "spectrum"), json_out);
    }
    if (*diagram) {
      spq::validate(cfg);
      if (word.empty()) throw std::invalid_argument("diagram needs a word");
      spq::Diagram d = spq::export_diagram(spq::parse_word(word, cfg.n));
      std::cout << spq::to_ascii(d);
      if (!dot_out.empty()) write_to(dot_out, spq::to_dot(d));
      if (!json_out.empty()) {
        auto a = spq::corep_of_word(d.word, true, cfg.cutoff > 0 ? cfg.cutoff : 8, cfg.q);
        write_to(json_out, spq::corep_metadata_json(a));
      }
      return kPass;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kConfig;
  } catch (const std::domain_error& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kConfig;
  } catch (const std::length_error& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kConfig;
  }
  return kConfig;
}
