#pragma once

#include <vector>

#include "spq/fock.hpp"

namespace spq {

// Σ_w c_w A_{w[0]} A_{w[1]} ⋯ A_{w[r-1]}, evaluated on vectors right to left
// without forming the operator products.
class ProductSum {
 public:
  ProductSum(int ntorus, int slots, int cutoff);

  // Registers an operator and returns its letter id.
  int letter(const TensorOperator& op);
  void add(cplx c, std::vector<int> word);

  int ntorus() const { return nt_; }
  int slots() const { return m_; }
  int cutoff() const { return D_; }
  // Per-slot margin: max over words of the summed letter bwidths.
  std::vector<int> bwidth() const;
  SparseVector apply(const SparseVector& v, const TorusPoint& t) const;

 private:
  int nt_, m_, D_;
  std::vector<TensorOperator> ops_;
  std::vector<std::pair<cplx, std::vector<int>>> words_;
};

double interior_residual(const ProductSum& P, const std::vector<TorusPoint>& tsamples,
                         const InteriorOptions& opt = {});
double interior_residual(const ProductSum& P, const std::vector<TorusPoint>& tsamples,
                         const std::vector<int>& margin, const InteriorOptions& opt = {});

}  // namespace spq
