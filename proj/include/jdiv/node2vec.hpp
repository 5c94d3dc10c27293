#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "jdiv/alias.hpp"
#include "jdiv/error.hpp"
#include "jdiv/graph.hpp"
#include "jdiv/rng.hpp"

namespace jdiv {

struct WalkParams {
  double return_p = 1.0;   // bias against revisiting the previous node
  double inout_q = 1.0;    // bias between inward and outward moves
  int walk_length = 80;
  int walks_per_node = 10;
  bool include_self_loops = false;
  uint64_t seed = 1;

  void validate() const {
    if (return_p <= 0) throw ConfigError("return_p must be positive");
    if (inout_q <= 0) throw ConfigError("inout_q must be positive");
    if (walk_length < 2) throw ConfigError("walk_length must be >= 2");
    if (walks_per_node < 1) throw ConfigError("walks_per_node must be >= 1");
  }
};

/// Neighbor lists (sorted by node id) with parallel weights.
struct Adjacency {
  std::vector<std::vector<int>> nbr;
  std::vector<std::vector<double>> wt;

  static Adjacency from_graph(const DisciplineGraph& g,
                              bool include_self_loops) {
    Adjacency adj;
    const int n = static_cast<int>(g.node_count());
    adj.nbr.resize(n);
    adj.wt.resize(n);
    for (const auto& [edge, w] : g.sorted_edges()) {
      auto [i, j] = edge;
      if (i == j) {
        if (!include_self_loops) continue;
        adj.nbr[i].push_back(i);
        adj.wt[i].push_back(static_cast<double>(w));
      } else {
        adj.nbr[i].push_back(j);
        adj.wt[i].push_back(static_cast<double>(w));
        adj.nbr[j].push_back(i);
        adj.wt[j].push_back(static_cast<double>(w));
      }
    }
    for (int v = 0; v < n; ++v) {
      // sorted_edges is ordered by (i, j), so nbr[i] collects ascending j
      // first, then the i < j insertions also ascend; merge by full sort.
      std::vector<size_t> order(adj.nbr[v].size());
      for (size_t k = 0; k < order.size(); ++k) order[k] = k;
      std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        return adj.nbr[v][a] < adj.nbr[v][b];
      });
      std::vector<int> nbr_sorted(order.size());
      std::vector<double> wt_sorted(order.size());
      for (size_t k = 0; k < order.size(); ++k) {
        nbr_sorted[k] = adj.nbr[v][order[k]];
        wt_sorted[k] = adj.wt[v][order[k]];
      }
      adj.nbr[v] = std::move(nbr_sorted);
      adj.wt[v] = std::move(wt_sorted);
    }
    return adj;
  }

  bool adjacent(int u, int v) const {
    const auto& list = nbr[u];
    return std::binary_search(list.begin(), list.end(), v);
  }

  size_t size() const { return nbr.size(); }
};

/// Normalized sampling tables for second-order biased walks.
///
/// For a step that arrived at `cur` from `prev`, the next node x is drawn
/// with unnormalized weight w(cur, x) * alpha where
///   alpha = 1/p  if x == prev,
///   alpha = 1    if x is adjacent to prev,
///   alpha = 1/q  otherwise.
///
/// Sampling is O(1): with p == q == 1 the step reduces to the first-order
/// weighted walk and only per-node alias tables are kept; otherwise per
/// directed edge alias tables are built, unless their total size would
/// exceed a memory budget, in which case rejection sampling against the
/// first-order table is used (accept with alpha / alpha_max).
class TransitionTables {
 public:
  static TransitionTables build(const DisciplineGraph& g,
                                const WalkParams& params,
                                size_t max_precomputed = kMaxPrecomputedEntries) {
    params.validate();
    if (g.node_count() == 0) throw DataError("transition tables: empty graph");
    TransitionTables t;
    t.params_ = params;
    t.adj_ = Adjacency::from_graph(g, params.include_self_loops);
    const int n = static_cast<int>(t.adj_.size());

    t.first_order_.resize(n);
    for (int v = 0; v < n; ++v) {
      if (!t.adj_.nbr[v].empty()) {
        t.first_order_[v] = AliasTable(t.adj_.wt[v]);
      }
    }

    t.biased_ = params.return_p != 1.0 || params.inout_q != 1.0;
    if (t.biased_) {
      size_t entries = 0;
      for (int v = 0; v < n; ++v) {
        entries += t.adj_.nbr[v].size() * t.adj_.nbr[v].size();
      }
      if (entries <= max_precomputed) {
        t.second_order_.resize(n);
        for (int v = 0; v < n; ++v) {
          const auto& prevs = t.adj_.nbr[v];
          t.second_order_[v].resize(prevs.size());
          for (size_t k = 0; k < prevs.size(); ++k) {
            auto weights = t.step_weights(prevs[k], v);
            t.second_order_[v][k] = AliasTable(weights);
          }
        }
      } else {
        t.rejection_ = true;
        t.alpha_max_ = std::max({1.0 / params.return_p, 1.0,
                                 1.0 / params.inout_q});
      }
    }
    return t;
  }

  const Adjacency& adjacency() const { return adj_; }

  bool has_neighbors(int node) const { return !adj_.nbr[node].empty(); }

  /// First step of a walk (no previous node yet); -1 when isolated.
  int sample_first(int node, Rng& rng) const {
    if (adj_.nbr[node].empty()) return -1;
    return adj_.nbr[node][first_order_[node].sample(rng)];
  }

  /// Step after arriving at cur from prev; -1 when cur has no neighbors.
  int sample_step(int prev, int cur, Rng& rng) const {
    const auto& nbrs = adj_.nbr[cur];
    if (nbrs.empty()) return -1;
    if (!biased_) return nbrs[first_order_[cur].sample(rng)];
    if (!rejection_) {
      size_t k = prev_slot(prev, cur);
      return nbrs[second_order_[cur][k].sample(rng)];
    }
    // Rejection sampling: candidate from the first-order table, accepted
    // with probability alpha / alpha_max.
    for (;;) {
      int x = nbrs[first_order_[cur].sample(rng)];
      double a = alpha(prev, x);
      if (a >= alpha_max_ || rng.next_double() < a / alpha_max_) return x;
    }
  }

  /// Unnormalized step weights over cur's neighbor list (test surface and
  /// table construction share this).
  std::vector<double> step_weights(int prev, int cur) const {
    const auto& nbrs = adj_.nbr[cur];
    const auto& wts = adj_.wt[cur];
    std::vector<double> out(nbrs.size());
    for (size_t i = 0; i < nbrs.size(); ++i) {
      out[i] = wts[i] * alpha(prev, nbrs[i]);
    }
    return out;
  }

  /// Normalized step distribution as (node, probability) pairs.
  std::vector<std::pair<int, double>> step_distribution(int prev,
                                                        int cur) const {
    auto weights = step_weights(prev, cur);
    double total = 0;
    for (double w : weights) total += w;
    std::vector<std::pair<int, double>> out;
    out.reserve(weights.size());
    for (size_t i = 0; i < weights.size(); ++i) {
      out.emplace_back(adj_.nbr[cur][i], weights[i] / total);
    }
    return out;
  }

 private:
  static constexpr size_t kMaxPrecomputedEntries = 1u << 26;

  double alpha(int prev, int x) const {
    if (x == prev) return 1.0 / params_.return_p;
    if (adj_.adjacent(prev, x)) return 1.0;
    return 1.0 / params_.inout_q;
  }

  size_t prev_slot(int prev, int cur) const {
    const auto& list = adj_.nbr[cur];
    auto it = std::lower_bound(list.begin(), list.end(), prev);
    return static_cast<size_t>(it - list.begin());
  }

  WalkParams params_;
  Adjacency adj_;
  std::vector<AliasTable> first_order_;
  std::vector<std::vector<AliasTable>> second_order_;
  bool biased_ = false;
  bool rejection_ = false;
  double alpha_max_ = 1.0;
};

/// Random-walk corpus over graph nodes (stored as node ids).
struct WalkSet {
  std::vector<std::vector<int>> walks;
  int node_count = 0;
};

inline std::vector<int> walk_from(const TransitionTables& t, int start,
                                  int walk_length, Rng& rng) {
  std::vector<int> walk;
  walk.reserve(static_cast<size_t>(walk_length));
  walk.push_back(start);
  int next = t.sample_first(start, rng);
  if (next < 0) return walk;  // isolated node: singleton walk
  walk.push_back(next);
  while (static_cast<int>(walk.size()) < walk_length) {
    int cur = walk[walk.size() - 1];
    int prev = walk[walk.size() - 2];
    int step = t.sample_step(prev, cur, rng);
    if (step < 0) break;
    walk.push_back(step);
  }
  return walk;
}

/// walks_per_node walks from every node. Each walk draws from its own RNG
/// stream derived from (seed, repetition, start node), so the result is
/// byte-identical regardless of the number of worker threads.
inline WalkSet generate_walks(const DisciplineGraph& g,
                              const WalkParams& params, int threads = 1) {
  TransitionTables tables = TransitionTables::build(g, params);
  const int n = static_cast<int>(g.node_count());
  const size_t total =
      static_cast<size_t>(n) * static_cast<size_t>(params.walks_per_node);

  WalkSet set;
  set.node_count = n;
  set.walks.resize(total);

  auto fill_range = [&](size_t begin, size_t end) {
    for (size_t slot = begin; slot < end; ++slot) {
      const int rep = static_cast<int>(slot / n);
      const int node = static_cast<int>(slot % n);
      Rng rng(derive_seed(params.seed, static_cast<uint64_t>(rep),
                          static_cast<uint64_t>(node)));
      set.walks[slot] = walk_from(tables, node, params.walk_length, rng);
    }
  };

  if (threads <= 1 || total < 2) {
    fill_range(0, total);
  } else {
    const size_t workers = std::min<size_t>(static_cast<size_t>(threads), total);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const size_t chunk = (total + workers - 1) / workers;
    for (size_t w = 0; w < workers; ++w) {
      size_t begin = w * chunk;
      size_t end = std::min(total, begin + chunk);
      if (begin >= end) break;
      pool.emplace_back(fill_range, begin, end);
    }
    for (auto& th : pool) th.join();
  }
  return set;
}

}  // namespace jdiv
