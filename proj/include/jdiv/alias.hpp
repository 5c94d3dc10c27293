#pragma once

#include <span>
#include <vector>

#include "jdiv/error.hpp"
#include "jdiv/rng.hpp"

namespace jdiv {

/// Vose alias table: O(n) construction, O(1) sampling from a fixed discrete
/// distribution proportional to the given nonnegative weights.
class AliasTable {
 public:
  AliasTable() = default;

  explicit AliasTable(std::span<const double> weights) {
    const size_t n = weights.size();
    if (n == 0) throw Error("alias table: empty weight vector");
    double total = 0;
    for (double w : weights) {
      if (w < 0) throw Error("alias table: negative weight");
      total += w;
    }
    if (total <= 0) throw Error("alias table: weights sum to zero");

    prob_.assign(n, 0.0);
    alias_.assign(n, 0);
    std::vector<double> scaled(n);
    for (size_t i = 0; i < n; ++i) {
      scaled[i] = weights[i] * static_cast<double>(n) / total;
    }
    std::vector<int> small, large;
    small.reserve(n);
    large.reserve(n);
    for (size_t i = 0; i < n; ++i) {
      (scaled[i] < 1.0 ? small : large).push_back(static_cast<int>(i));
    }
    while (!small.empty() && !large.empty()) {
      int s = small.back();
      small.pop_back();
      int l = large.back();
      large.pop_back();
      prob_[s] = scaled[s];
      alias_[s] = l;
      scaled[l] = (scaled[l] + scaled[s]) - 1.0;
      (scaled[l] < 1.0 ? small : large).push_back(l);
    }
    // Leftovers are 1 up to rounding.
    for (int i : large) prob_[i] = 1.0;
    for (int i : small) prob_[i] = 1.0;
  }

  int sample(Rng& rng) const {
    const size_t i = static_cast<size_t>(rng.next_below(prob_.size()));
    return rng.next_double() < prob_[i] ? static_cast<int>(i) : alias_[i];
  }

  size_t size() const { return prob_.size(); }
  bool empty() const { return prob_.empty(); }

 private:
  std::vector<double> prob_;
  std::vector<int> alias_;
};

}  // namespace jdiv
