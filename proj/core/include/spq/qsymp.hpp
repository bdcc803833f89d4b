#pragma once

#include <array>
#include <complex>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace spq {

using cplx = std::complex<double>;

struct IndexConstants {
  int n = 0;
  double q = 0;
  std::vector<int> iprime;  // 1-based, index 0 unused
  std::vector<int> rho;
  std::vector<int> eps;
  Eigen::MatrixXcd cmat;  // 0-based storage of C^i_j

  int dim() const { return 2 * n; }
  int ip(int i) const { return iprime[static_cast<std::size_t>(i)]; }
  int r(int i) const { return rho[static_cast<std::size_t>(i)]; }
  int e(int i) const { return eps[static_cast<std::size_t>(i)]; }
  cplx c(int i, int j) const { return cmat(i - 1, j - 1); }
};

IndexConstants index_constants(int n, double q);

inline int theta(int x) { return x > 0 ? 1 : 0; }

// literal: (q - 1/q) θ(i-m) (δ_jm δ_in + C^i_j C^m_n) with antidiagonal C.
// standard: C-coupled term replaced by -ε_i ε_m q^{ρ_i - ρ_m} δ_{j,i'} δ_{n,m'},
// the type C FRT R-matrix. Only the standard form is compatible with the
// elementary representations.
enum class RMatrixForm { literal, standard };

const char* to_string(RMatrixForm f);

class RMatrix {
 public:
  RMatrix(int n, double q, RMatrixForm form);

  int n() const { return n_; }
  double q() const { return q_; }
  RMatrixForm form() const { return form_; }
  // R^{ij}_{mn}, 1-based
  cplx operator()(int i, int j, int m, int nn) const;
  // Nonzero entries keyed by (i,j,m,n).
  const std::map<std::array<int, 4>, cplx>& entries() const { return entries_; }
  // Copy with one entry overwritten; used for fault injection.
  RMatrix with_entry(int i, int j, int m, int nn, cplx value) const;

 private:
  int n_;
  double q_;
  RMatrixForm form_;
  std::map<std::array<int, 4>, cplx> entries_;
};

RMatrix r_matrix(int n, double q, RMatrixForm form);

struct GeneratorSymbol {
  int row = 1;
  int col = 1;
  auto operator<=>(const GeneratorSymbol&) const = default;
};

struct RelationTerm {
  cplx coeff;
  std::vector<GeneratorSymbol> factors;  // 0, 1 or 2 generators, left to right
};

struct QuadraticRelation {
  std::string tag;          // "rtt", "cuc1", "cuc2"
  std::array<int, 4> label{};  // (i,j,s,t) for rtt, (i,j,0,0) for cuc
  std::vector<RelationTerm> terms;
};

// I^{ij}_{st} = Σ_{k,l} R^{ji}_{kl} u^k_s u^l_t - R^{lk}_{st} u^i_k u^j_l
std::vector<QuadraticRelation> rtt_relations(const RMatrix& R);
std::vector<QuadraticRelation> rtt_relations(int n, double q, RMatrixForm form);
// Entries of U C U^t C^{-1} - I and C U^t C^{-1} U - I.
std::vector<QuadraticRelation> cuc_relations(int n, double q);

// "(i,j,s,t): c · u[k,s]·u[l,t] + …", one relation per line.
std::string export_relations(const std::vector<QuadraticRelation>& rels);

struct ScaledGenerator {
  cplx scalar;
  GeneratorSymbol gen;
};

struct HopfTables {
  int n = 0;
  double q = 0;
  ScaledGenerator star(int i, int j) const;
  ScaledGenerator antipode(int i, int j) const;
  int counit(int i, int j) const { return i == j ? 1 : 0; }

  IndexConstants ic;
};

HopfTables hopf_tables(int n, double q);

// Max deviation between star-table and C U^t C^{-1}, entry by entry.
double star_vs_cmatrix_deviation(const IndexConstants& ic);

struct T1Matrices {
  int n = 0;
  double q = 0;
  std::vector<Eigen::MatrixXcd> K, Kinv, E, F;  // index i-1

  double qi(int i) const;
  int cartan(int i, int j) const;
};

T1Matrices t1_matrices(int n, double q);

struct T1Residuals {
  double k_commute = 0;
  double k_inverse = 0;
  double ke_conj = 0;          // K_i E_j K_i^{-1} = q_i^{a_ij} E_j
  double kf_conj = 0;          // K_i F_j K_i^{-1} = q_i^{-a_ij} F_j
  double kf_conj_literal = 0;  // K_i F_j K_i^{-1} = q_i^{a_ij} F_j
  double ef_commutator = 0;
  double serre_e = 0;
  double serre_f = 0;
};

T1Residuals check_t1_relations(const T1Matrices& t);

// Symmetric q-integers and Gaussian binomials.
double q_integer(int m, double q);
double q_binomial(int m, int r, double q);

}  // namespace spq
