#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "jdiv/alias.hpp"
#include "jdiv/error.hpp"
#include "jdiv/node2vec.hpp"
#include "jdiv/rng.hpp"

namespace jdiv {

struct TrainParams {
  int dimensions = 64;
  int window = 10;
  int negative_samples = 5;
  int epochs = 5;
  double initial_learning_rate = 0.025;
  uint64_t seed = 1;
  int threads = 1;  // >1 trains hogwild-style; deterministic only when 1

  void validate() const {
    if (dimensions < 1) throw ConfigError("dimensions must be >= 1");
    if (window < 1) throw ConfigError("window must be >= 1");
    if (negative_samples < 1)
      throw ConfigError("negative_samples must be >= 1");
    if (epochs < 1) throw ConfigError("epochs must be >= 1");
    if (initial_learning_rate <= 0)
      throw ConfigError("initial_learning_rate must be positive");
  }
};

/// One trained vector per graph node, row-major.
struct EmbeddingMatrix {
  Level level = Level::Macro;
  std::vector<std::string> nodes;
  int dimensions = 0;
  std::vector<float> data;

  std::span<const float> row(size_t i) const {
    return {data.data() + i * static_cast<size_t>(dimensions),
            static_cast<size_t>(dimensions)};
  }
};

namespace detail {

class SigmoidTable {
 public:
  SigmoidTable() {
    for (int i = 0; i < kSize; ++i) {
      double x = (static_cast<double>(i) / kSize * 2.0 - 1.0) * kMaxExp;
      table_[i] = static_cast<float>(1.0 / (1.0 + std::exp(-x)));
    }
  }

  float operator()(float x) const {
    if (x >= kMaxExp) return 1.0f;
    if (x <= -kMaxExp) return 0.0f;
    int i = static_cast<int>((x + kMaxExp) * (kSize / kMaxExp / 2.0f));
    return table_[i];
  }

 private:
  static constexpr int kSize = 1000;
  static constexpr float kMaxExp = 6.0f;
  float table_[kSize];
};

}  // namespace detail

/// Skip-gram with negative sampling over the walk corpus.
///
/// For every (center, context) pair within `window`, the center's input
/// vector is pushed toward the context's output vector and away from
/// `negative_samples` noise nodes drawn from the walk unigram distribution
/// raised to the 3/4 power. The learning rate decays linearly over all
/// processed positions down to a floor of 1e-4 of its initial value. Only
/// the input vectors are returned.
inline EmbeddingMatrix train_sgns(const WalkSet& walks,
                                  const std::vector<std::string>& node_codes,
                                  const TrainParams& params) {
  params.validate();
  const int n = static_cast<int>(node_codes.size());
  if (n == 0) throw DataError("sgns: no nodes");
  if (walks.node_count != n) {
    throw DataError("sgns: walk set does not match the node list");
  }

  std::vector<long long> counts(n, 0);
  size_t positions_per_epoch = 0;
  for (const auto& walk : walks.walks) {
    positions_per_epoch += walk.size();
    for (int v : walk) ++counts[static_cast<size_t>(v)];
  }
  for (int v = 0; v < n; ++v) {
    if (counts[v] == 0) {
      throw DataError("sgns: node absent from every walk: " + node_codes[v]);
    }
  }

  std::vector<double> noise_weights(n);
  for (int v = 0; v < n; ++v) {
    noise_weights[v] = std::pow(static_cast<double>(counts[v]), 0.75);
  }
  const AliasTable noise(noise_weights);

  const int dim = params.dimensions;
  EmbeddingMatrix emb;
  emb.nodes = node_codes;
  emb.dimensions = dim;
  emb.data.assign(static_cast<size_t>(n) * dim, 0.0f);
  std::vector<float> out_vecs(static_cast<size_t>(n) * dim, 0.0f);

  {
    Rng init_rng(derive_seed(params.seed, 0x696e6974, 0));  // "init"
    for (auto& x : emb.data) {
      x = static_cast<float>((init_rng.next_double() - 0.5) / dim);
    }
  }

  const detail::SigmoidTable sigmoid;
  const size_t total_positions =
      positions_per_epoch * static_cast<size_t>(params.epochs);
  const double lr0 = params.initial_learning_rate;
  std::atomic<size_t> processed{0};

  auto train_range = [&](size_t walk_begin, size_t walk_end, Rng rng) {
    std::vector<float> grad(static_cast<size_t>(dim));
    size_t local_done = 0;
    for (int epoch = 0; epoch < params.epochs; ++epoch) {
      for (size_t wi = walk_begin; wi < walk_end; ++wi) {
        const auto& walk = walks.walks[wi];
        const int len = static_cast<int>(walk.size());
        for (int t = 0; t < len; ++t) {
          // lr decay is tracked per processed position across all epochs
          size_t done = processed.load(std::memory_order_relaxed) + local_done;
          double frac = static_cast<double>(done) / total_positions;
          float lr = static_cast<float>(lr0 * std::max(1.0 - frac, 1e-4));
          ++local_done;
          if (local_done >= 4096) {
            processed.fetch_add(local_done, std::memory_order_relaxed);
            local_done = 0;
          }

          const int center = walk[t];
          float* l1 = emb.data.data() + static_cast<size_t>(center) * dim;
          for (int d = -params.window; d <= params.window; ++d) {
            if (d == 0) continue;
            int j = t + d;
            if (j < 0 || j >= len) continue;
            const int context = walk[j];

            std::fill(grad.begin(), grad.end(), 0.0f);
            for (int k = 0; k <= params.negative_samples; ++k) {
              int target;
              float label;
              if (k == 0) {
                target = context;
                label = 1.0f;
              } else {
                target = noise.sample(rng);
                if (target == context) continue;
                label = 0.0f;
              }
              float* l2 = out_vecs.data() + static_cast<size_t>(target) * dim;
              float f = 0.0f;
              for (int c = 0; c < dim; ++c) f += l1[c] * l2[c];
              float g = (label - sigmoid(f)) * lr;
              for (int c = 0; c < dim; ++c) grad[c] += g * l2[c];
              for (int c = 0; c < dim; ++c) l2[c] += g * l1[c];
            }
            for (int c = 0; c < dim; ++c) l1[c] += grad[c];
          }
        }
      }
    }
  };

  const size_t walk_count = walks.walks.size();
  if (params.threads <= 1 || walk_count < 2) {
    train_range(0, walk_count, Rng(derive_seed(params.seed, 0x7367, 0)));
  } else {
    const size_t workers =
        std::min<size_t>(static_cast<size_t>(params.threads), walk_count);
    const size_t chunk = (walk_count + workers - 1) / workers;
    std::vector<std::thread> pool;
    for (size_t w = 0; w < workers; ++w) {
      size_t begin = w * chunk;
      size_t end = std::min(walk_count, begin + chunk);
      if (begin >= end) break;
      pool.emplace_back(train_range, begin, end,
                        Rng(derive_seed(params.seed, 0x7367, w)));
    }
    for (auto& th : pool) th.join();
  }

  for (int v = 0; v < n; ++v) {
    bool all_zero = true;
    for (int c = 0; c < dim; ++c) {
      if (emb.data[static_cast<size_t>(v) * dim + c] != 0.0f) {
        all_zero = false;
        break;
      }
    }
    if (all_zero) {
      throw Error("sgns: training produced an all-zero vector for node " +
                  node_codes[v]);
    }
  }
  return emb;
}

}  // namespace jdiv
