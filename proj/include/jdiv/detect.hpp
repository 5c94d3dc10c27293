#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "jdiv/diversity.hpp"
#include "jdiv/error.hpp"

namespace jdiv {

struct MinMaxResult {
  std::vector<double> values;
  bool degenerate = false;  // all inputs equal; values forced to 0
};

/// Rescale to [0, 1] by (v - min) / (max - min). A constant sequence has no
/// scale; it maps to all zeros and is flagged.
inline MinMaxResult min_max_normalize(std::span<const double> values) {
  if (values.empty()) throw Error("min-max: empty sequence");
  auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  double lo = *lo_it, hi = *hi_it;
  MinMaxResult result;
  result.values.reserve(values.size());
  if (hi == lo) {
    result.degenerate = true;
    result.values.assign(values.size(), 0.0);
    return result;
  }
  for (double v : values) result.values.push_back((v - lo) / (hi - lo));
  return result;
}

/// Euclidean distance from a normalized (macro, meso) point to (1, 1).
inline double distance_to_ideal(double norm_macro, double norm_meso) {
  double dx = 1.0 - norm_macro;
  double dy = 1.0 - norm_meso;
  return std::sqrt(dx * dx + dy * dy);
}

struct CandidateRow {
  std::string journal_id;
  std::string name;
  bool is_multidisciplinary = false;
  double norm_macro = 0;
  double norm_meso = 0;
  double distance = 0;
};

struct CandidateRanking {
  // journals outside the multidisciplinary group, ascending distance
  std::vector<CandidateRow> rows;
  // every journal's distance, for the distribution summary
  std::vector<CandidateRow> all_rows;
};

/// Rank non-multidisciplinary journals by closeness to the ideal point.
/// Normalization spans ALL journals so the reference frame matches the
/// group the candidates are compared against.
inline CandidateRanking rank_potential_multidisciplinary(
    const JournalDiversityTable& table) {
  if (table.rows.empty()) throw Error("candidate ranking: empty table");

  std::vector<double> macro, meso;
  macro.reserve(table.rows.size());
  meso.reserve(table.rows.size());
  for (const auto& row : table.rows) {
    macro.push_back(row.d_macro);
    meso.push_back(row.d_meso);
  }
  MinMaxResult nm = min_max_normalize(macro);
  MinMaxResult ns = min_max_normalize(meso);

  CandidateRanking ranking;
  ranking.all_rows.reserve(table.rows.size());
  for (size_t i = 0; i < table.rows.size(); ++i) {
    CandidateRow row;
    row.journal_id = table.rows[i].journal_id;
    row.name = table.rows[i].name;
    row.is_multidisciplinary = table.rows[i].is_multidisciplinary;
    row.norm_macro = nm.values[i];
    row.norm_meso = ns.values[i];
    row.distance = distance_to_ideal(row.norm_macro, row.norm_meso);
    ranking.all_rows.push_back(std::move(row));
  }
  for (const auto& row : ranking.all_rows) {
    if (!row.is_multidisciplinary) ranking.rows.push_back(row);
  }
  std::sort(ranking.rows.begin(), ranking.rows.end(),
            [](const CandidateRow& a, const CandidateRow& b) {
              if (a.distance != b.distance) return a.distance < b.distance;
              return a.journal_id < b.journal_id;
            });
  return ranking;
}

struct DistanceDistribution {
  double threshold = 0.6;
  size_t n_multi = 0;
  size_t n_other = 0;
  size_t multi_above = 0;   // not expected, but reported for symmetry
  size_t other_above = 0;
  double fraction_multi_above = 0;
  double fraction_other_above = 0;
};

/// Fraction of each group whose ideal-point distance exceeds the threshold.
/// Specialist journals should sit mostly above it, multidisciplinary ones
/// mostly below.
inline DistanceDistribution distance_distribution(
    const CandidateRanking& ranking, double threshold = 0.6) {
  DistanceDistribution dist;
  dist.threshold = threshold;
  for (const auto& row : ranking.all_rows) {
    if (row.is_multidisciplinary) {
      ++dist.n_multi;
      if (row.distance > threshold) ++dist.multi_above;
    } else {
      ++dist.n_other;
      if (row.distance > threshold) ++dist.other_above;
    }
  }
  if (dist.n_multi > 0) {
    dist.fraction_multi_above =
        static_cast<double>(dist.multi_above) / dist.n_multi;
  }
  if (dist.n_other > 0) {
    dist.fraction_other_above =
        static_cast<double>(dist.other_above) / dist.n_other;
  }
  return dist;
}

}  // namespace jdiv
