#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "spq/report.hpp"

namespace spq {

struct SuiteConfig {
  int n = 2;
  double q = 0.5;
  int cutoff = 0;  // 0 picks 8 for n = 2 and 6 above
  std::vector<std::string> words;  // extra words for rtt/unitarity, "1,2,1"
  double tol = 1e-9;
  int tsamples = 8;
  bool grid = false;  // full grid of 8th roots instead of the diagonal
  int jobs = 1;
  std::uint64_t seed = 0;
  std::size_t max_vectors = 0;  // 0: exhaustive, except words with >= 6 letters get 256
  std::string lambda;  // branching
  std::string mu;
  int weight_bound = 3;
  int max_power = 3;
  bool timing = false;
};

const std::vector<std::string>& suite_names();

// Throws std::invalid_argument for an unknown suite or an invalid configuration.
void validate(const SuiteConfig& c);
VerificationReport run_suite(const SuiteConfig& c, const std::string& suite);

}  // namespace spq
