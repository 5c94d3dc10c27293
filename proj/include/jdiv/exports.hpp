#pragma once

#include <algorithm>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "jdiv/csv.hpp"
#include "jdiv/detect.hpp"
#include "jdiv/diversity.hpp"
#include "jdiv/error.hpp"
#include "jdiv/graph.hpp"
#include "jdiv/stats.hpp"
#include "jdiv/topics.hpp"

namespace jdiv {

/// Node table for external network tools. Cluster is the macro root of the
/// topic code; weight is the weighted degree with self-loops counted once.
inline void export_network_nodes(const DisciplineGraph& g, std::ostream& os) {
  os << "topic_code,label,cluster,weight\n";
  std::vector<long long> degrees = g.weighted_degrees();
  for (size_t i = 0; i < g.nodes.size(); ++i) {
    os << csv::escape_field(g.nodes[i]) << ','
       << csv::escape_field(g.nodes[i]) << ','
       << csv::escape_field(topic_macro_root(g.nodes[i])) << ',' << degrees[i]
       << '\n';
  }
}

/// Edge table for external network tools; self-loops are omitted.
inline void export_network_edges(const DisciplineGraph& g, std::ostream& os) {
  os << "source,target,weight\n";
  for (const auto& [ij, w] : g.sorted_edges()) {
    if (ij.first == ij.second) continue;
    os << csv::escape_field(g.nodes[ij.first]) << ','
       << csv::escape_field(g.nodes[ij.second]) << ',' << w << '\n';
  }
}

/// Topic overlay of a single journal: topics with a single paper are
/// dropped, the remaining counts are min-max rescaled so the strongest
/// topic gets weight 1. When every remaining count is equal the scale is
/// undefined and all weights are set to 1. Returns the number of rows.
inline size_t export_journal_overlay(const JournalProfile& profile,
                                     std::ostream& os) {
  os << "topic_code,paper_count,weight\n";
  std::vector<size_t> keep;
  for (size_t i = 0; i < profile.topics.size(); ++i) {
    if (profile.counts[i] > 1) keep.push_back(i);
  }
  if (keep.empty()) return 0;

  std::vector<double> counts;
  counts.reserve(keep.size());
  for (size_t i : keep) counts.push_back(static_cast<double>(profile.counts[i]));
  MinMaxResult norm = min_max_normalize(counts);
  if (norm.degenerate) norm.values.assign(keep.size(), 1.0);

  for (size_t k = 0; k < keep.size(); ++k) {
    size_t i = keep[k];
    os << csv::escape_field(profile.topics[i]) << ',' << profile.counts[i]
       << ',' << csv::format_double(norm.values[k]) << '\n';
  }
  return keep.size();
}

/// Scatter table of one diversity level against another.
inline void export_scatter(const JournalDiversityTable& table, Level level_x,
                           Level level_y, std::ostream& os) {
  if (level_x == level_y) {
    throw ConfigError("scatter export: axes must use different levels");
  }
  os << "journal_id,name,is_multidisciplinary,d_" << level_name(level_x)
     << ",d_" << level_name(level_y) << '\n';
  for (const auto& row : table.rows) {
    os << csv::escape_field(row.journal_id) << ','
       << csv::escape_field(row.name) << ','
       << (row.is_multidisciplinary ? 1 : 0) << ','
       << csv::format_double(row.value(level_x)) << ','
       << csv::format_double(row.value(level_y)) << '\n';
  }
}

inline void export_quadrants(const JournalDiversityTable& table,
                             const std::map<std::string, QuadrantLabel>& labels,
                             std::ostream& os) {
  os << "journal_id,name,is_multidisciplinary,d_macro,d_meso,quadrant\n";
  for (const auto& row : table.rows) {
    auto it = labels.find(row.journal_id);
    if (it == labels.end()) {
      throw Error("quadrant export: journal '" + row.journal_id +
                  "' has no label");
    }
    os << csv::escape_field(row.journal_id) << ','
       << csv::escape_field(row.name) << ','
       << (row.is_multidisciplinary ? 1 : 0) << ','
       << csv::format_double(row.d_macro) << ','
       << csv::format_double(row.d_meso) << ',' << quadrant_name(it->second)
       << '\n';
  }
}

inline void export_candidates(const CandidateRanking& ranking,
                              std::ostream& os) {
  os << "rank,journal_id,name,norm_macro,norm_meso,distance\n";
  for (size_t i = 0; i < ranking.rows.size(); ++i) {
    const auto& row = ranking.rows[i];
    os << (i + 1) << ',' << csv::escape_field(row.journal_id) << ','
       << csv::escape_field(row.name) << ','
       << csv::format_double(row.norm_macro) << ','
       << csv::format_double(row.norm_meso) << ','
       << csv::format_double(row.distance) << '\n';
  }
}

/// All journals in ascending distance order, for plotting the two
/// distributions against the detection threshold.
inline void export_distance_curve(const CandidateRanking& ranking,
                                  std::ostream& os) {
  os << "journal_id,name,is_multidisciplinary,distance\n";
  std::vector<const CandidateRow*> rows;
  rows.reserve(ranking.all_rows.size());
  for (const auto& row : ranking.all_rows) rows.push_back(&row);
  std::sort(rows.begin(), rows.end(),
            [](const CandidateRow* a, const CandidateRow* b) {
              if (a->distance != b->distance) return a->distance < b->distance;
              return a->journal_id < b->journal_id;
            });
  for (const CandidateRow* row : rows) {
    os << csv::escape_field(row->journal_id) << ','
       << csv::escape_field(row->name) << ','
       << (row->is_multidisciplinary ? 1 : 0) << ','
       << csv::format_double(row->distance) << '\n';
  }
}

}  // namespace jdiv
