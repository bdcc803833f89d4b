#include "spq/product_sum.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <thread>

namespace spq {

ProductSum::ProductSum(int ntorus, int slots, int cutoff) : nt_(ntorus), m_(slots), D_(cutoff) {}

int ProductSum::letter(const TensorOperator& op) {
  if (op.ntorus() != nt_ || op.slots() != m_ || op.cutoff() != D_)
    throw std::invalid_argument("ProductSum: letter shape mismatch");
  ops_.push_back(op);
  return static_cast<int>(ops_.size() - 1);
}

void ProductSum::add(cplx c, std::vector<int> word) {
  for (int w : word)
    if (w < 0 || w >= static_cast<int>(ops_.size())) throw std::out_of_range("ProductSum: unknown letter");
  if (c != 0.0) words_.emplace_back(c, std::move(word));
}

std::vector<int> ProductSum::bwidth() const {
  std::vector<std::vector<int>> lb;
  for (const auto& op : ops_) lb.push_back(op.bwidth());
  std::vector<int> bw(static_cast<std::size_t>(m_), 0);
  for (const auto& [c, word] : words_) {
    std::vector<int> sum(static_cast<std::size_t>(m_), 0);
    for (int w : word)
      for (std::size_t s = 0; s < sum.size(); ++s) sum[s] += lb[static_cast<std::size_t>(w)][s];
    for (std::size_t s = 0; s < sum.size(); ++s) bw[s] = std::max(bw[s], sum[s]);
  }
  return bw;
}

SparseVector ProductSum::apply(const SparseVector& v, const TorusPoint& t) const {
  // suffix cache: words sharing a right factor reuse its image
  std::map<std::vector<int>, SparseVector> cache;
  std::vector<std::pair<std::uint64_t, cplx>> raw;
  for (const auto& [c, word] : words_) {
    const SparseVector* cur = &v;
    std::vector<int> suffix;
    for (std::size_t k = word.size(); k-- > 0;) {
      suffix.insert(suffix.begin(), word[k]);
      auto it = cache.find(suffix);
      if (it == cache.end())
        it = cache.emplace(suffix, spq::apply(ops_[static_cast<std::size_t>(word[k])], *cur, t)).first;
      cur = &it->second;
    }
    for (const auto& [i, x] : cur->entries) raw.emplace_back(i, c * x);
  }
  return collect(std::move(raw));
}

double interior_residual(const ProductSum& P, const std::vector<TorusPoint>& tsamples,
                         const std::vector<int>& margin, const InteriorOptions& opt) {
  auto idx = interior_indices(margin, P.cutoff(), opt);
  std::vector<TorusPoint> ts = tsamples;
  if (ts.empty()) ts.push_back(TorusPoint(static_cast<std::size_t>(P.ntorus()), 1.0));
  auto work = [&](std::size_t lo, std::size_t hi) {
    double worst = 0.0;
    for (std::size_t i = lo; i < hi; ++i) {
      SparseVector e = basis_vector(idx[i], P.cutoff());
      for (const auto& t : ts) worst = std::max(worst, P.apply(e, t).norm());
    }
    return worst;
  };
  const int jobs = std::max(1, opt.jobs);
  if (jobs == 1 || idx.size() < 64) return work(0, idx.size());
  std::vector<double> part(static_cast<std::size_t>(jobs), 0.0);
  std::vector<std::thread> pool;
  const std::size_t chunk = (idx.size() + static_cast<std::size_t>(jobs) - 1) / static_cast<std::size_t>(jobs);
  for (int j = 0; j < jobs; ++j) {
    std::size_t lo = static_cast<std::size_t>(j) * chunk, hi = std::min(idx.size(), lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&, j, lo, hi] { part[static_cast<std::size_t>(j)] = work(lo, hi); });
  }
  for (auto& th : pool) th.join();
  return *std::max_element(part.begin(), part.end());
}

double interior_residual(const ProductSum& P, const std::vector<TorusPoint>& tsamples, const InteriorOptions& opt) {
  return interior_residual(P, tsamples, P.bwidth(), opt);
}

}  // namespace spq
