#pragma once

#include <map>
#include <utility>
#include <vector>

#include "spq/product_sum.hpp"

namespace spq::detail {

using Word = std::vector<const TensorOperator*>;

inline Word pow(const TensorOperator* a, int m) { return Word(static_cast<std::size_t>(std::max(0, m)), a); }

inline Word cat(std::initializer_list<Word> parts) {
  Word w;
  for (const auto& p : parts) w.insert(w.end(), p.begin(), p.end());
  return w;
}

// Linear combination of operator words, left to right.
struct Expr {
  int ntorus, slots, cutoff;
  std::vector<std::pair<cplx, Word>> words;

  Expr(int nt, int m, int D) : ntorus(nt), slots(m), cutoff(D) {}

  Expr& add(cplx c, Word w) {
    words.emplace_back(c, std::move(w));
    return *this;
  }

  ProductSum build() const {
    ProductSum P(ntorus, slots, cutoff);
    std::map<const TensorOperator*, int> id;
    for (const auto& [c, w] : words) {
      std::vector<int> ids;
      for (const auto* op : w) {
        auto it = id.find(op);
        if (it == id.end()) it = id.emplace(op, P.letter(*op)).first;
        ids.push_back(it->second);
      }
      P.add(c, std::move(ids));
    }
    return P;
  }
};

}  // namespace spq::detail
