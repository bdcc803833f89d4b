#pragma once

#include <utility>
#include <vector>

#include "spq/fock.hpp"
#include "spq/report.hpp"
#include "spq/sphere.hpp"

namespace spq {

// u_k = t ⊗ p^{⊗(k-1)} + 1 - 1 ⊗ p^{⊗(k-1)} on C(T^n) ⊗ T^{⊗(k-1)}, t = t_1.
TensorOperator build_uk(int k, int n, int D, double q);
// z_k P + 1 - P with P = 1_{1}(z_k^* z_k). Equals build_uk at t_1 -> vacuum_phase · t_1.
TensorOperator build_uk_from_sphere(const SphereGenerators& g);

// X̃ = t ⊗ q^N ⊗ ⋯ ⊗ q^N ⊗ S^* and X = P X̃ + 1 - P, P = 1_{1}(X̃^* X̃).
TensorOperator build_X_tilde(int k, int n, int D, double q);
TensorOperator build_X(int k, int n, int D, double q);

struct KWitness {
  int k = 0;
  TensorOperator uk{1, 0, 2};
  TensorOperator X{1, 0, 2};
  std::pair<TensorOperator, TensorOperator> defects{TensorOperator{1, 0, 2}, TensorOperator{1, 0, 2}};  // 1-X*X, 1-XX*
};

KWitness build_kwitness(int k, int n, int D, double q);

// Projection checks, the expected forms 0 and 1 ⊗ p^{⊗(k-1)}, ranks and their signed difference.
VerificationReport index_defects(const KWitness& w, const std::vector<TorusPoint>& tsamples, double tol = 1e-10);

// Rank of the interior compression at t; singular values above 1/2 count.
long long interior_rank(const TensorOperator& T, const TorusPoint& t);

struct Loop {
  std::vector<std::pair<cplx, Eigen::MatrixXcd>> samples;  // (t_1, block of u); first and last coincide
};

// Block of u on the support of u - 1, sampled along t_1 = e^{iθ} (other coordinates 1).
Loop sample_loop(const TensorOperator& u, int count = 256);
// Winding number of t ↦ det(block). Throws on near-singular blocks or steps of at least π/2.
int winding_number(const Loop& loop);
int winding_number(const TensorOperator& u, int count = 256);

// All K-witness checks for one k.
VerificationReport check_kwitness(int k, int n, int D, double q, const std::vector<TorusPoint>& tsamples);

}  // namespace spq
