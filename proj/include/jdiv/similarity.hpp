#pragma once

#include <cmath>
#include <string>
#include <unordered_map>
#include <vector>

#include "jdiv/error.hpp"
#include "jdiv/sgns.hpp"

namespace jdiv {

/// Symmetric pairwise field similarity, diagonal exactly 1.
struct SimilarityMatrix {
  Level level = Level::Macro;
  std::vector<std::string> nodes;
  std::vector<double> values;  // n*n row-major
  std::unordered_map<std::string, int> index;

  size_t size() const { return nodes.size(); }

  double at(size_t i, size_t j) const { return values[i * nodes.size() + j]; }

  int index_of(const std::string& code) const {
    auto it = index.find(code);
    return it == index.end() ? -1 : it->second;
  }

  void rebuild_index() {
    index.clear();
    for (size_t i = 0; i < nodes.size(); ++i) {
      index.emplace(nodes[i], static_cast<int>(i));
    }
  }
};

/// Pairwise cosine similarity of the trained vectors. Negative cosines are
/// clamped to 0 by default so the diversity quadratic form stays within the
/// [0, 1] similarity framework; pass clamp_negative=false to inspect raw
/// values.
inline SimilarityMatrix cosine_similarity_matrix(const EmbeddingMatrix& emb,
                                                 bool clamp_negative = true) {
  const size_t n = emb.nodes.size();
  const int dim = emb.dimensions;
  SimilarityMatrix sim;
  sim.level = emb.level;
  sim.nodes = emb.nodes;
  sim.values.assign(n * n, 0.0);

  std::vector<double> norms(n);
  for (size_t i = 0; i < n; ++i) {
    double s = 0;
    auto row = emb.row(i);
    for (int c = 0; c < dim; ++c) s += static_cast<double>(row[c]) * row[c];
    if (s <= 0) {
      throw Error("cosine similarity: zero vector for node " + emb.nodes[i]);
    }
    norms[i] = std::sqrt(s);
  }

  for (size_t i = 0; i < n; ++i) {
    sim.values[i * n + i] = 1.0;
    auto ri = emb.row(i);
    for (size_t j = i + 1; j < n; ++j) {
      auto rj = emb.row(j);
      double dot = 0;
      for (int c = 0; c < dim; ++c) {
        dot += static_cast<double>(ri[c]) * rj[c];
      }
      double v = dot / (norms[i] * norms[j]);
      if (v > 1.0) v = 1.0;  // rounding guard
      if (v < -1.0) v = -1.0;
      if (clamp_negative && v < 0) v = 0.0;
      sim.values[i * n + j] = v;
      sim.values[j * n + i] = v;
    }
  }
  sim.rebuild_index();
  return sim;
}

}  // namespace jdiv
