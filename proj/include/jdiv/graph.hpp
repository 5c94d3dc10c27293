#pragma once

#include <algorithm>
#include <cstdint>
#include <cmath>
#include <string>
#include <unordered_map>
#include <vector>

#include "jdiv/corpus.hpp"
#include "jdiv/error.hpp"

namespace jdiv {

/// Weighted undirected discipline citation graph at one granularity.
/// Edges are keyed by unordered node pair; self-pairs are kept as self-loops.
struct DisciplineGraph {
  Level level = Level::Macro;
  std::vector<std::string> nodes;  // topic codes, sorted
  std::unordered_map<uint64_t, long long> weights;
  size_t skipped_citations = 0;  // endpoints without a topic at this level

  static uint64_t pack(int i, int j) {
    if (i > j) std::swap(i, j);
    return (static_cast<uint64_t>(static_cast<uint32_t>(i)) << 32) |
           static_cast<uint32_t>(j);
  }

  void add(int i, int j, long long w) { weights[pack(i, j)] += w; }

  long long weight(int i, int j) const {
    auto it = weights.find(pack(i, j));
    return it == weights.end() ? 0 : it->second;
  }

  size_t node_count() const { return nodes.size(); }
  size_t edge_count() const { return weights.size(); }

  long long total_weight() const {
    long long sum = 0;
    for (const auto& [key, w] : weights) sum += w;
    return sum;
  }

  /// Edges in canonical (i, j) order, i <= j. Used by every dump.
  std::vector<std::pair<std::pair<int, int>, long long>> sorted_edges() const {
    std::vector<std::pair<std::pair<int, int>, long long>> out;
    out.reserve(weights.size());
    for (const auto& [key, w] : weights) {
      int i = static_cast<int>(key >> 32);
      int j = static_cast<int>(key & 0xffffffffu);
      out.push_back({{i, j}, w});
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  /// Weighted degree per node, self-loop weight counted once.
  std::vector<long long> weighted_degrees() const {
    std::vector<long long> deg(nodes.size(), 0);
    for (const auto& [key, w] : weights) {
      int i = static_cast<int>(key >> 32);
      int j = static_cast<int>(key & 0xffffffffu);
      deg[i] += w;
      if (j != i) deg[j] += w;
    }
    return deg;
  }
};

/// Aggregates paper-level citations into discipline-level weights. Each
/// accepted citation row adds 1 to the weight of the unordered topic pair of
/// its endpoints; same-topic citations become self-loop weight.
inline DisciplineGraph build_discipline_graph(const Corpus& corpus,
                                              Level level) {
  DisciplineGraph g;
  g.level = level;
  g.nodes = corpus.taxonomy.codes(level);
  if (g.nodes.empty()) {
    throw DataError(std::string("no papers carry a ") + level_name(level) +
                    "-level topic");
  }
  const int li = level_index(level);
  for (const CitationEdge& e : corpus.citations) {
    int a = corpus.paper_topics[e.citing][li];
    int b = corpus.paper_topics[e.cited][li];
    if (a < 0 || b < 0) {
      ++g.skipped_citations;
      continue;
    }
    g.add(a, b, 1);
  }
  return g;
}

/// Per-journal topic counts and shares at one level.
struct JournalProfile {
  std::string journal_id;
  Level level = Level::Macro;
  std::vector<std::string> topics;   // sorted codes, zero-count topics absent
  std::vector<long long> counts;     // parallel to topics, all positive
  std::vector<double> shares;        // parallel, sums to 1
  long long total = 0;
};

/// One profile per journal with at least one paper, ordered by journal_id.
inline std::vector<JournalProfile> build_journal_profiles(const Corpus& corpus,
                                                          Level level) {
  const int li = level_index(level);
  std::vector<JournalProfile> profiles;
  for (size_t j = 0; j < corpus.journals.size(); ++j) {
    const auto& paper_ids = corpus.papers_by_journal[j];
    if (paper_ids.empty()) continue;
    std::unordered_map<int, long long> counts;
    for (int p : paper_ids) ++counts[corpus.paper_topics[p][li]];

    JournalProfile prof;
    prof.journal_id = corpus.journals[j].journal_id;
    prof.level = level;
    std::vector<std::pair<int, long long>> items(counts.begin(), counts.end());
    std::sort(items.begin(), items.end());
    prof.total = static_cast<long long>(paper_ids.size());
    for (const auto& [topic_id, count] : items) {
      prof.topics.push_back(corpus.taxonomy.code_of(level, topic_id));
      prof.counts.push_back(count);
      prof.shares.push_back(static_cast<double>(count) /
                            static_cast<double>(prof.total));
    }
    profiles.push_back(std::move(prof));
  }
  return profiles;
}

}  // namespace jdiv
