#pragma once

#include <string>
#include <vector>

#include "spq/fock.hpp"
#include "spq/qsymp.hpp"
#include "spq/report.hpp"
#include "spq/weyl.hpp"

namespace spq {

// ((π(u^i_j))) for a representation on C(T^n) ⊗ T^{⊗slots}.
class Corepresentation {
 public:
  Corepresentation(int n, int slots, int cutoff, double q);

  int n() const { return n_; }
  int dim() const { return 2 * n_; }
  int slots() const { return m_; }
  int cutoff() const { return D_; }
  double q() const { return q_; }

  const TensorOperator& operator()(int i, int j) const;  // 1-based
  TensorOperator& at(int i, int j);
  // Per-slot max bwidth over all entries.
  std::vector<int> bwidth() const;
  std::size_t term_count() const;

 private:
  int n_, m_, D_;
  double q_;
  std::vector<TensorOperator> e_;
};

Corepresentation identity_corep(int n, int D, double q);
Corepresentation elementary_corep(int i, int n, int D, double q);
Corepresentation torus_corep(int n, int D, double q);
Corepresentation convolve(const Corepresentation& a, const Corepresentation& b);
Corepresentation corep_of_word(const WeylWord& w, bool with_torus, int D, double q);

struct CheckOptions {
  double tol = 1e-9;
  InteriorOptions interior;
};

// One residual record per relation, keyed "tag(i,j,s,t)".
VerificationReport check_corep_relations(const Corepresentation& a, const std::vector<QuadraticRelation>& rels,
                                         const std::vector<TorusPoint>& tsamples, const CheckOptions& opt = {});
// Records "uu*(i,j)" and "u*u(i,j)".
VerificationReport check_corep_unitary(const Corepresentation& a, const std::vector<TorusPoint>& tsamples,
                                       const CheckOptions& opt = {});

// Zero pattern as a 2n×2n boolean table, row-major.
std::vector<bool> zero_pattern(const Corepresentation& a);
std::string corep_metadata_json(const Corepresentation& a);

enum class ArrowKind { identity, horizontal, up, down };

struct Arrow {
  int from = 1;  // row on the left of the layer
  int to = 1;    // row on the right
  ArrowKind kind = ArrowKind::identity;
  std::string label;  // "", "+", "-", "++", "--"
};

struct Diagram {
  WeylWord word;
  std::vector<std::vector<Arrow>> layers;
};

Diagram export_diagram(const WeylWord& w);
std::string to_dot(const Diagram& d);
std::string to_ascii(const Diagram& d);
// reach[(i-1)*2n + (j-1)]: a path from row i to row j exists.
std::vector<bool> reachability(const Diagram& d);
// Operator attached to an arrow label, as a single Fock factor.
FockFactor arrow_operator(const Arrow& a, int D, double q);

}  // namespace spq
