#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace spq {

using cplx = std::complex<double>;
using TorusPoint = std::vector<cplx>;

// Operator on the truncated Fock space span{e_0..e_{D-1}}. Every primitive
// and every product of primitives is a weighted shift e_c -> w[c] e_{c+offset},
// so that is the storage format.
class FockFactor {
 public:
  FockFactor(int offset, std::vector<cplx> weights, cplx symbol, int bwidth);

  int dim() const { return static_cast<int>(w_.size()); }
  int offset() const { return off_; }
  const std::vector<cplx>& weights() const { return w_; }
  cplx symbol() const { return sym_; }
  int bwidth() const { return bw_; }

  bool is_zero() const;
  bool is_diagonal() const { return off_ == 0; }
  // Image of e_c: (target index, weight), or nothing if it vanishes.
  std::optional<std::pair<int, cplx>> act(int c) const;

  FockFactor operator*(const FockFactor& rhs) const;  // this after rhs
  FockFactor adjoint() const;
  FockFactor scaled(cplx c) const;  // scales weights and symbol
  Eigen::MatrixXcd dense() const;

  bool operator==(const FockFactor&) const = default;
  std::size_t hash() const;

 private:
  int off_;
  std::vector<cplx> w_;
  cplx sym_;
  int bw_;
};

enum class PrimitiveKind { shift_down, shift_up, qpow, sqrt1m2, sqrt1m4, rank_one, identity };

struct Primitive {
  PrimitiveKind kind = PrimitiveKind::identity;
  int a = 0;  // qpow: diag(q^{a k + b}); rank_one: p_{a,b}
  int b = 0;

  static Primitive S() { return {PrimitiveKind::shift_down}; }
  static Primitive Sstar() { return {PrimitiveKind::shift_up}; }
  static Primitive qpow(int a, int b) { return {PrimitiveKind::qpow, a, b}; }
  static Primitive sqrt1m2() { return {PrimitiveKind::sqrt1m2}; }
  static Primitive sqrt1m4() { return {PrimitiveKind::sqrt1m4}; }
  static Primitive p(int i, int j) { return {PrimitiveKind::rank_one, i, j}; }
  static Primitive id() { return {PrimitiveKind::identity}; }
};

FockFactor primitive_factor(const Primitive& p, int D, double q);
// Diagonal factor from explicit values.
FockFactor diagonal_factor(std::vector<cplx> values, cplx symbol, int bwidth);

struct TorusMonomial {
  cplx coeff = 1.0;
  std::vector<int> exps;  // powers of t_1..t_n

  cplx eval(const TorusPoint& t) const;
  TorusMonomial operator*(const TorusMonomial& rhs) const;
  TorusMonomial adjoint() const;  // conj coefficient, negate exponents
  bool is_constant() const;
};

struct Term {
  TorusMonomial mono;
  std::vector<FockFactor> legs;
};

// Finite sum of (monomial ⊗ Fock legs) in C(T^n) ⊗ T^{⊗m}, truncated at D.
class TensorOperator {
 public:
  TensorOperator(int ntorus, int slots, int cutoff);

  static TensorOperator zero(int ntorus, int slots, int cutoff);
  static TensorOperator identity(int ntorus, int slots, int cutoff);
  static TensorOperator scalar(int ntorus, int slots, int cutoff, cplx c);
  static TensorOperator monomial(int ntorus, int slots, int cutoff, TorusMonomial m);
  static TensorOperator elementary(int ntorus, TorusMonomial m, std::vector<FockFactor> legs);

  int ntorus() const { return nt_; }
  int slots() const { return m_; }
  int cutoff() const { return D_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(Term t);  // appends and merges with an identical-structure term
  // Appends without merging or validation; caller guarantees a distinct, nonzero term.
  void add_term_unchecked(Term t);
  std::vector<int> bwidth() const;  // per slot
  bool is_diagonal() const;
  bool is_torus_constant() const;

  // Merge terms that differ in one leg with equal offsets.
  TensorOperator simplified() const;

 private:
  int nt_;
  int m_;
  int D_;
  std::vector<Term> terms_;
};

TensorOperator operator*(const TensorOperator& a, const TensorOperator& b);
TensorOperator operator+(const TensorOperator& a, const TensorOperator& b);
TensorOperator operator-(const TensorOperator& a, const TensorOperator& b);
TensorOperator operator*(cplx c, const TensorOperator& a);
TensorOperator adjoint(const TensorOperator& a);
TensorOperator tensor(const TensorOperator& a, const TensorOperator& b);

enum class Combine { mul, add, scalar, adjoint, tensor };
// Dispatches to the functions above. scalar uses `c`; adjoint ignores `b`.
TensorOperator combine(Combine v, const TensorOperator& a, const TensorOperator* b = nullptr, cplx c = 1.0);

bool structurally_equal(const TensorOperator& a, const TensorOperator& b);

// Sparse vector over the multi-index basis, sorted by linear index.
struct SparseVector {
  std::vector<std::pair<std::uint64_t, cplx>> entries;

  double norm() const;
  cplx at(std::uint64_t idx) const;
  bool empty() const { return entries.empty(); }
};

SparseVector operator+(const SparseVector& a, const SparseVector& b);
SparseVector operator-(const SparseVector& a, const SparseVector& b);
SparseVector operator*(cplx c, const SparseVector& a);
cplx inner(const SparseVector& a, const SparseVector& b);  // <a, b>, antilinear in a
// Accumulates unsorted (index, value) pairs into a sorted vector, dropping exact zeros.
SparseVector collect(std::vector<std::pair<std::uint64_t, cplx>> raw);

std::uint64_t linear_index(const std::vector<int>& alpha, int D);
std::vector<int> multi_index(std::uint64_t idx, int slots, int D);
SparseVector basis_vector(const std::vector<int>& alpha, int D);

SparseVector apply(const TensorOperator& T, const SparseVector& v, const TorusPoint& t);
SparseVector apply_to_basis(const TensorOperator& T, const std::vector<int>& alpha, const TorusPoint& t);

// Basis multi-indices with alpha_s <= D-1-bw[s], optionally a seeded sample.
struct InteriorOptions {
  std::size_t max_vectors = 0;  // 0 = all
  std::uint64_t seed = 0;
  int jobs = 1;
};
std::vector<std::vector<int>> interior_indices(const std::vector<int>& bw, int D, const InteriorOptions& opt = {});

double interior_residual(const TensorOperator& T, const std::vector<TorusPoint>& tsamples,
                         const InteriorOptions& opt = {});
// Residual with an explicit per-slot margin instead of T's own bwidth.
double interior_residual(const TensorOperator& T, const std::vector<TorusPoint>& tsamples,
                         const std::vector<int>& margin, const InteriorOptions& opt = {});

TensorOperator symbol_last(const TensorOperator& T);

TensorOperator spectral_projection_one(const TensorOperator& T, double tol = 1e-8);

// Dense matrix on the full truncated space, D^slots ≤ 4096.
Eigen::MatrixXcd to_dense(const TensorOperator& T, const TorusPoint& t);

// t = (ζ^j, …, ζ^j), ζ = e^{2πi/count}, j = 0..count-1; count = 8 gives the 8th roots
std::vector<TorusPoint> diagonal_torus_samples(int ntorus, int count);
// full grid of 8th roots per coordinate
std::vector<TorusPoint> grid_torus_samples(int ntorus);

}  // namespace spq
