#include <catch_amalgamated.hpp>

#include <cmath>
#include <string>
#include <vector>

#include "jdiv/node2vec.hpp"
#include "jdiv/rng.hpp"
#include "jdiv/sgns.hpp"

using jdiv::DisciplineGraph;
using jdiv::EmbeddingMatrix;
using jdiv::Rng;
using jdiv::TrainParams;
using jdiv::WalkParams;
using jdiv::WalkSet;

namespace {

// Two planted communities of 8 nodes each: a ring inside every block plus
// random intra edges, and a single weak bridge between the blocks.
DisciplineGraph two_blocks(uint64_t seed) {
  DisciplineGraph g;
  const int block = 8;
  g.nodes.resize(2 * block);
  for (int v = 0; v < 2 * block; ++v) {
    g.nodes[v] = (v < block ? "a" : "b") + std::to_string(v % block);
  }
  Rng rng(seed);
  for (int b = 0; b < 2; ++b) {
    const int base = b * block;
    for (int i = 0; i < block; ++i) {
      g.add(base + i, base + (i + 1) % block, 2);
      for (int j = i + 2; j < block; ++j) {
        if (rng.next_double() < 0.4) g.add(base + i, base + j, 1);
      }
    }
  }
  g.add(0, block, 1);
  return g;
}

WalkSet walks_for(const DisciplineGraph& g, uint64_t seed) {
  WalkParams wp;
  wp.walk_length = 20;
  wp.walks_per_node = 8;
  wp.seed = seed;
  return jdiv::generate_walks(g, wp);
}

TrainParams small_train(uint64_t seed) {
  TrainParams tp;
  tp.dimensions = 16;
  tp.window = 4;
  tp.negative_samples = 4;
  tp.epochs = 8;
  tp.initial_learning_rate = 0.05;
  tp.seed = seed;
  return tp;
}

double cosine(const EmbeddingMatrix& emb, size_t i, size_t j) {
  auto a = emb.row(i);
  auto b = emb.row(j);
  double dot = 0, na = 0, nb = 0;
  for (size_t k = 0; k < a.size(); ++k) {
    dot += static_cast<double>(a[k]) * b[k];
    na += static_cast<double>(a[k]) * a[k];
    nb += static_cast<double>(b[k]) * b[k];
  }
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

}  // namespace

TEST_CASE("training output has the expected shape", "[sgns]") {
  auto g = two_blocks(3);
  auto walks = walks_for(g, 3);
  auto emb = jdiv::train_sgns(walks, g.nodes, small_train(3));

  REQUIRE(emb.nodes == g.nodes);
  REQUIRE(emb.dimensions == 16);
  REQUIRE(emb.data.size() == g.nodes.size() * 16);
  for (float x : emb.data) REQUIRE(std::isfinite(x));
  for (size_t i = 0; i < emb.nodes.size(); ++i) {
    double norm = 0;
    for (float x : emb.row(i)) norm += static_cast<double>(x) * x;
    REQUIRE(norm > 0.0);
  }
}

TEST_CASE("planted blocks separate in embedding space", "[sgns]") {
  auto g = two_blocks(5);
  auto walks = walks_for(g, 5);
  auto emb = jdiv::train_sgns(walks, g.nodes, small_train(5));

  double intra = 0, inter = 0;
  int n_intra = 0, n_inter = 0;
  for (size_t i = 0; i < 16; ++i) {
    for (size_t j = i + 1; j < 16; ++j) {
      const bool same = (i < 8) == (j < 8);
      const double c = cosine(emb, i, j);
      if (same) {
        intra += c;
        ++n_intra;
      } else {
        inter += c;
        ++n_inter;
      }
    }
  }
  intra /= n_intra;
  inter /= n_inter;
  REQUIRE(intra > inter + 0.05);
}

TEST_CASE("training is bitwise deterministic for a fixed seed", "[sgns]") {
  auto g = two_blocks(7);
  auto walks = walks_for(g, 7);
  auto params = small_train(7);

  auto first = jdiv::train_sgns(walks, g.nodes, params);
  auto second = jdiv::train_sgns(walks, g.nodes, params);
  REQUIRE(first.data == second.data);

  params.seed = 8;
  auto other = jdiv::train_sgns(walks, g.nodes, params);
  REQUIRE(first.data != other.data);
}

TEST_CASE("hogwild training completes and stays finite", "[sgns]") {
  auto g = two_blocks(9);
  auto walks = walks_for(g, 9);
  auto params = small_train(9);
  params.threads = 2;

  auto emb = jdiv::train_sgns(walks, g.nodes, params);
  REQUIRE(emb.data.size() == g.nodes.size() * 16);
  for (float x : emb.data) REQUIRE(std::isfinite(x));
  for (size_t i = 0; i < emb.nodes.size(); ++i) {
    double norm = 0;
    for (float x : emb.row(i)) norm += static_cast<double>(x) * x;
    REQUIRE(norm > 0.0);
  }
}

TEST_CASE("trainer rejects inconsistent inputs", "[sgns]") {
  auto g = two_blocks(11);
  auto walks = walks_for(g, 11);
  auto params = small_train(11);

  REQUIRE_THROWS_AS(jdiv::train_sgns(walks, {}, params), jdiv::DataError);

  WalkSet mismatched = walks;
  mismatched.node_count = 5;
  REQUIRE_THROWS_AS(jdiv::train_sgns(mismatched, g.nodes, params),
                    jdiv::DataError);

  // node 16 exists in the list but never appears in a walk
  auto extended = g.nodes;
  extended.push_back("ghost");
  WalkSet wider = walks;
  wider.node_count = static_cast<int>(extended.size());
  REQUIRE_THROWS_WITH(jdiv::train_sgns(wider, extended, params),
                      Catch::Matchers::ContainsSubstring("ghost"));
}

TEST_CASE("trainer validates hyperparameters", "[sgns]") {
  auto g = two_blocks(13);
  auto walks = walks_for(g, 13);

  auto bad = small_train(13);
  bad.dimensions = 0;
  REQUIRE_THROWS_AS(jdiv::train_sgns(walks, g.nodes, bad), jdiv::ConfigError);
  bad = small_train(13);
  bad.window = 0;
  REQUIRE_THROWS_AS(jdiv::train_sgns(walks, g.nodes, bad), jdiv::ConfigError);
  bad = small_train(13);
  bad.negative_samples = 0;
  REQUIRE_THROWS_AS(jdiv::train_sgns(walks, g.nodes, bad), jdiv::ConfigError);
  bad = small_train(13);
  bad.epochs = 0;
  REQUIRE_THROWS_AS(jdiv::train_sgns(walks, g.nodes, bad), jdiv::ConfigError);
  bad = small_train(13);
  bad.initial_learning_rate = 0.0;
  REQUIRE_THROWS_AS(jdiv::train_sgns(walks, g.nodes, bad), jdiv::ConfigError);
}
