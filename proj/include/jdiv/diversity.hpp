#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "jdiv/corpus.hpp"
#include "jdiv/error.hpp"
#include "jdiv/graph.hpp"
#include "jdiv/similarity.hpp"

namespace jdiv {

/// Shares, aligned similarity matrix, and order for one diversity evaluation.
struct DiversityInput {
  std::vector<double> shares;      // nonnegative, sums to 1
  std::vector<double> similarity;  // n*n row-major, symmetric, diag 1, [0,1]
  double order_q = 2.0;

  size_t size() const { return shares.size(); }
};

namespace detail {

inline void validate_diversity_input(const DiversityInput& in) {
  const size_t n = in.shares.size();
  if (n == 0) throw Error("diversity: empty share vector");
  if (in.similarity.size() != n * n) {
    throw Error("diversity: similarity matrix does not match share count");
  }
  if (in.order_q < 0) throw Error("diversity: order q must be nonnegative");
  double sum = 0;
  for (double p : in.shares) {
    if (p < 0) throw Error("diversity: negative share");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw Error("diversity: shares do not sum to 1");
  }
  for (size_t i = 0; i < n; ++i) {
    if (in.similarity[i * n + i] != 1.0) {
      throw Error("diversity: similarity diagonal must be exactly 1");
    }
    for (size_t j = i + 1; j < n; ++j) {
      double a = in.similarity[i * n + j];
      double b = in.similarity[j * n + i];
      if (std::abs(a - b) > 1e-12) {
        throw Error("diversity: similarity matrix is not symmetric");
      }
      if (a < 0.0 || a > 1.0) {
        throw Error("diversity: similarity entry outside [0, 1]");
      }
    }
  }
}

}  // namespace detail

/// Similarity-sensitive diversity of order q (effective number of fields).
///
/// With ordinariness (Sp)_i = sum_j S_ij p_j and support restricted to
/// p_i > 0:
///   q = 2          1 / sum_{i,j} S_ij p_i p_j
///   q = 1 (limit)  prod_i (Sp)_i^(-p_i)
///   otherwise      ( sum_i p_i (Sp)_i^(q-1) )^(1/(1-q))
inline double lc_div(const DiversityInput& in) {
  detail::validate_diversity_input(in);
  const size_t n = in.shares.size();
  const double q = in.order_q;

  std::vector<double> ordinariness(n, 0.0);
  for (size_t i = 0; i < n; ++i) {
    if (in.shares[i] == 0.0) continue;
    double s = 0;
    for (size_t j = 0; j < n; ++j) {
      s += in.similarity[i * n + j] * in.shares[j];
    }
    if (s <= 0) {
      throw Error("diversity: zero ordinariness for a positive share");
    }
    ordinariness[i] = s;
  }

  if (q == 2.0) {
    double denom = 0;
    for (size_t i = 0; i < n; ++i) denom += in.shares[i] * ordinariness[i];
    return 1.0 / denom;
  }
  if (q == 1.0) {
    double log_sum = 0;
    for (size_t i = 0; i < n; ++i) {
      if (in.shares[i] > 0) log_sum += in.shares[i] * std::log(ordinariness[i]);
    }
    return std::exp(-log_sum);
  }
  double acc = 0;
  for (size_t i = 0; i < n; ++i) {
    if (in.shares[i] > 0) {
      acc += in.shares[i] * std::pow(ordinariness[i], q - 1.0);
    }
  }
  return std::pow(acc, 1.0 / (1.0 - q));
}

/// Diversity of one journal: its shares against the similarity matrix
/// restricted to its own topics. Shares are renormalized once after the
/// restriction to absorb rounding.
inline double journal_diversity(const JournalProfile& profile,
                                const SimilarityMatrix& sim, double q) {
  const size_t n = profile.topics.size();
  if (n == 0) throw Error("journal diversity: empty profile");

  std::vector<int> cols(n);
  for (size_t i = 0; i < n; ++i) {
    int idx = sim.index_of(profile.topics[i]);
    if (idx < 0) {
      throw Error("journal diversity: topic '" + profile.topics[i] +
                  "' missing from the similarity matrix (journal " +
                  profile.journal_id + ")");
    }
    cols[i] = idx;
  }

  DiversityInput in;
  in.order_q = q;
  in.shares = profile.shares;
  double sum = 0;
  for (double p : in.shares) sum += p;
  for (double& p : in.shares) p /= sum;
  in.similarity.resize(n * n);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) {
      in.similarity[i * n + j] =
          sim.at(static_cast<size_t>(cols[i]), static_cast<size_t>(cols[j]));
    }
  }
  return lc_div(in);
}

struct DiversityRow {
  std::string journal_id;
  std::string name;
  bool is_multidisciplinary = false;
  long long paper_count = 0;
  double d_macro = 0;
  double d_meso = 0;
  double d_micro = 0;

  double value(Level l) const {
    switch (l) {
      case Level::Macro: return d_macro;
      case Level::Meso: return d_meso;
      case Level::Micro: return d_micro;
    }
    return 0;
  }
};

/// Per-journal diversity at all three levels; rows ordered by journal_id.
struct JournalDiversityTable {
  std::vector<DiversityRow> rows;
};

inline JournalDiversityTable build_diversity_table(
    const Corpus& corpus, const SimilarityMatrix& s_macro,
    const SimilarityMatrix& s_meso, const SimilarityMatrix& s_micro,
    double q = 2.0) {
  auto p_macro = build_journal_profiles(corpus, Level::Macro);
  auto p_meso = build_journal_profiles(corpus, Level::Meso);
  auto p_micro = build_journal_profiles(corpus, Level::Micro);

  JournalDiversityTable table;
  table.rows.reserve(p_macro.size());
  for (size_t k = 0; k < p_macro.size(); ++k) {
    DiversityRow row;
    row.journal_id = p_macro[k].journal_id;
    const JournalRecord& rec =
        corpus.journals[corpus.journal_index.at(row.journal_id)];
    row.name = rec.name;
    row.is_multidisciplinary = rec.is_multidisciplinary;
    row.paper_count = p_macro[k].total;
    row.d_macro = journal_diversity(p_macro[k], s_macro, q);
    row.d_meso = journal_diversity(p_meso[k], s_meso, q);
    row.d_micro = journal_diversity(p_micro[k], s_micro, q);
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace jdiv
