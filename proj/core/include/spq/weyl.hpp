#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace spq {

// A word in the Coxeter generators s_1..s_n of the hyperoctahedral group W_n.
// s_i (i < n) swaps coordinates i, i+1; s_n flips the sign of coordinate n.
struct WeylWord {
  int n = 0;
  std::vector<int> letters;  // 1-based generator indices

  std::size_t length() const { return letters.size(); }
  bool operator==(const WeylWord&) const = default;
};

// n×n signed permutation matrix, row-major, entries in {-1, 0, 1}.
class SignedPermutation {
 public:
  explicit SignedPermutation(int n);  // identity
  SignedPermutation(int n, std::vector<int> entries);

  static SignedPermutation generator(int i, int n);

  int n() const { return n_; }
  int operator()(int row, int col) const { return m_[idx(row, col)]; }  // 1-based
  SignedPermutation operator*(const SignedPermutation& rhs) const;
  SignedPermutation inverse() const;  // transpose
  bool operator==(const SignedPermutation&) const = default;

  // Image of e_col as (signed) basis index: +k for e_k, -k for -e_k.
  int column_image(int col) const;
  const std::vector<int>& entries() const { return m_; }

 private:
  std::size_t idx(int r, int c) const { return static_cast<std::size_t>((r - 1) * n_ + (c - 1)); }
  int n_;
  std::vector<int> m_;
};

// Partition with at most n parts, weakly decreasing, non-negative.
struct Partition {
  std::vector<int> parts;
  bool operator==(const Partition&) const = default;
};

void validate(const WeylWord& w);
void validate(const Partition& p);

SignedPermutation generator_matrix(int i, int n);
SignedPermutation evaluate_word(const WeylWord& w);

WeylWord omega_word(int k, int n);
WeylWord longest_word(int n);

// ψ factor of the canonical form. kind 0 is the empty word; kind 1 is
// s_{k-1}..s_r; kind 2 climbs to s_n and back down to s_r.
struct PsiFactor {
  int r = 1;
  int kind = 0;
  int k = 1;
  bool operator==(const PsiFactor&) const = default;
};

WeylWord psi_word(const PsiFactor& f, int n);

struct CanonicalFactorization {
  int n = 0;
  std::vector<PsiFactor> factors;  // factors[r-1] is ψ_r
  WeylWord word() const;           // concatenation ψ_1 ψ_2 ⋯ ψ_n
};

CanonicalFactorization canonical_factorization(const SignedPermutation& g);

// Number of type B inversions; equals the length of any reduced word.
int coxeter_length(const SignedPermutation& g);

// Subsequence test: letters of `sub` appear in `w` in order.
bool is_subword(const WeylWord& sub, const WeylWord& w);

// Multiplicity of the Sp(2n-2) representation μ in the Sp(2n) representation λ.
std::int64_t branching_multiplicity(const Partition& lambda, const Partition& mu, int n);
// Multiplicity of the trivial Sp(2n-2) representation: λ1 - λ2 + 1 if λ3 = 0, else 0.
std::int64_t branching_closed_form_trivial(const Partition& lambda);

// "3,2,3" <-> {3,2,3}
WeylWord parse_word(std::string_view text, int n);
std::string format_word(const WeylWord& w);
Partition parse_partition(std::string_view text);

}  // namespace spq
