#pragma once

#include <vector>

#include "spq/corep.hpp"
#include "spq/fock.hpp"
#include "spq/report.hpp"

namespace spq {

// z_j = η_{t,ω_k}(z_j) = π_{t,ω_k}(u^{2n}_{2n+1-j}) on C(T) ⊗ T^{⊗(k-1)}.
struct SphereGenerators {
  int n = 0;
  int k = 0;
  int cutoff = 0;
  double q = 0;
  std::vector<TensorOperator> z;  // z[j-1]
  TensorOperator omega{1, 0, 2};  // z_{2n}^* z_{2n} for k = 2n, z_k^* z_k otherwise
  // z_k u = vacuum_phase · t · u. The sign comes from the -q^N arrows on the
  // path from row 2n to row 2n+1-k.
  cplx vacuum_phase = 1.0;

  int slots() const { return k - 1; }
  const TensorOperator& operator[](int j) const { return z.at(static_cast<std::size_t>(j - 1)); }
  std::vector<int> vacuum() const { return std::vector<int>(static_cast<std::size_t>(k - 1), 0); }
  // [z_n, z_{n+1}]
  TensorOperator commutator() const;
};

SphereGenerators sphere_generators(int k, int n, int D, double q);
// Same generators with z_j rebuilt at q + dq (negative control).
SphereGenerators with_perturbed_generator(const SphereGenerators& g, int j, double dq);

struct SphereCheckOptions {
  double tol = 1e-9;
  InteriorOptions interior;
};

// (c1)-(c8) per index instance, plus normality of z_{2n} and ‖z_i‖ ≤ 1.
VerificationReport check_sphere_relations(const SphereGenerators& g, const std::vector<TorusPoint>& tsamples,
                                          const SphereCheckOptions& opt = {});

struct SpectralLine {
  double value = 0;
  int multiplicity = 0;
};

// Eigenvalues of omega on the interior, clustered at `cluster_tol`, descending.
std::vector<SpectralLine> omega_spectrum(const SphereGenerators& g, double cluster_tol = 1e-8);
// Lines near {q^{2m}} ∪ {0}, nothing strictly between, vacuum eigenvalue 1 with a one-dimensional eigenspace.
VerificationReport check_spectrum(const SphereGenerators& g, double tol = 1e-8);

struct BasisFamily {
  int n = 0, k = 0, L = 0;
  TorusPoint t;
  // k = 2n: (α_2..α_{2n-1}, α_0); k <= n: (α_1..α_{k-1})
  std::vector<std::vector<int>> labels;
  std::vector<int> weights;
  std::vector<SparseVector> vectors;
};

// k = 2n: u_α = z_{2n-1}^{α_{2n-1}} ⋯ z_2^{α_2} [z_n,z_{n+1}]^{α_0} u, weight Σα_l + 2α_0.
// k <= n: u_α = z_1^{α_1} ⋯ z_{k-1}^{α_{k-1}} u, weight Σα_l.
BasisFamily basis_family(const SphereGenerators& g, int L, const TorusPoint& t);

struct GramResult {
  Eigen::MatrixXcd gram;
  double max_offdiag = 0;
  double min_diag = 0;
};

GramResult gram_matrix(const BasisFamily& b);
// ω u_α = q^{2·weight} u_α, all u_α nonzero, Gram orthogonality, norms equal across `t2`.
VerificationReport check_basis(const SphereGenerators& g, int L, const TorusPoint& t1, const TorusPoint& t2,
                               double tol_offdiag = 1e-8, double tol_norm = 1e-10);

// alpha[0] = α_0, alpha[l] = α_l for 1 <= l <= 2n-1. Entries not used by the
// case of k must be zero.
VerificationReport corner_elements(const SphereGenerators& g, const std::vector<int>& alpha, const TorusPoint& t,
                                   double tol = 1e-8);

// symbol_last(η_{ω_k}(z_j)) against η_{ω_{k-1}}(z_j) for all j.
VerificationReport symbol_compatibility(int k, int n, int D, double q, const std::vector<TorusPoint>& tsamples,
                                        double tol = 1e-9);

// Eqs. for z_i ω, the commutation identities (operator and vector forms) and
// the collinearity statements; needs k = 2n.
VerificationReport check_derived_identities(const SphereGenerators& g, const std::vector<TorusPoint>& tsamples,
                                            const SphereCheckOptions& opt = {}, int max_power = 3, int L = 3);

// sin of the angle between a and b; 0 when both vanish, 1 when exactly one does.
double collinearity_defect(const SparseVector& a, const SparseVector& b, double zero_tol = 1e-12);

}  // namespace spq
