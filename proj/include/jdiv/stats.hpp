#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <span>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "jdiv/csv.hpp"
#include "jdiv/diversity.hpp"
#include "jdiv/error.hpp"

namespace jdiv {

/// 1-based ranks with tied values assigned their average rank.
inline std::vector<double> average_ranks(std::span<const double> values) {
  const size_t n = values.size();
  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), size_t{0});
  std::sort(order.begin(), order.end(),
            [&](size_t a, size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(n);
  size_t i = 0;
  while (i < n) {
    size_t j = i;
    while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
    // positions i..j (0-based) share the average of ranks i+1..j+1
    double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
    i = j + 1;
  }
  return ranks;
}

struct MWTestResult {
  enum class Method { exact, normal_approx };

  double U = 0;  // statistic of the first sample
  double z = 0;  // continuity-corrected normal deviate (signed)
  double p_two_sided = 1.0;
  size_t n_a = 0;
  size_t n_b = 0;
  Method method = Method::normal_approx;
};

namespace detail {

/// Null-distribution counts of the integer U statistic for tie-free samples:
/// N(n1, n2, u) = N(n1-1, n2, u-n2) + N(n1, n2-1, u). Feasible for the small
/// sizes the exact mode accepts.
class MannWhitneyNullCounts {
 public:
  MannWhitneyNullCounts(int n1, int n2) : n2_(n2), u_max_(n1 * n2) {
    table_.assign(static_cast<size_t>(n1 + 1) * (n2 + 1) * (u_max_ + 1), 0);
    for (int b = 0; b <= n2; ++b) at(0, b, 0) = 1;
    for (int a = 1; a <= n1; ++a) {
      for (int b = 0; b <= n2; ++b) {
        for (int u = 0; u <= a * b; ++u) {
          uint64_t c = (u >= b) ? at(a - 1, b, u - b) : 0;
          if (b > 0) c += at(a, b - 1, u);
          if (b == 0) c = (u == 0) ? 1 : 0;
          at(a, b, u) = c;
        }
      }
    }
  }

  uint64_t count(int n1, int n2, int u) const {
    if (u < 0 || u > n1 * n2) return 0;
    return at_const(n1, n2, u);
  }

  uint64_t cumulative(int n1, int n2, int u_inclusive) const {
    uint64_t c = 0;
    for (int u = 0; u <= u_inclusive; ++u) c += count(n1, n2, u);
    return c;
  }

 private:
  uint64_t& at(int a, int b, int u) {
    return table_[(static_cast<size_t>(a) * (n2_ + 1) + b) * (u_max_ + 1) + u];
  }
  uint64_t at_const(int a, int b, int u) const {
    return table_[(static_cast<size_t>(a) * (n2_ + 1) + b) * (u_max_ + 1) + u];
  }

  int n2_;
  int u_max_;
  std::vector<uint64_t> table_;
};

inline double normal_sf_two_sided(double z_abs) {
  return std::erfc(z_abs / std::sqrt(2.0));
}

}  // namespace detail

/// Two-sided Mann-Whitney-Wilcoxon test.
///
/// U is computed from average ranks. For tie-free samples with
/// max(n_a, n_b) <= 8, p comes from exact enumeration of the null
/// distribution; otherwise the normal approximation with continuity
/// correction and tie-corrected variance
///   sigma^2 = (n_a n_b / 12) * [(N + 1) - sum(t^3 - t) / (N (N - 1))]
/// is used.
inline MWTestResult mann_whitney_two_sided(std::span<const double> a,
                                           std::span<const double> b) {
  if (a.empty() || b.empty()) {
    throw Error("mann-whitney: both groups must be non-empty");
  }
  const size_t n_a = a.size();
  const size_t n_b = b.size();
  const size_t n = n_a + n_b;

  std::vector<double> pooled;
  pooled.reserve(n);
  pooled.insert(pooled.end(), a.begin(), a.end());
  pooled.insert(pooled.end(), b.begin(), b.end());
  std::vector<double> ranks = average_ranks(pooled);

  double rank_sum_a = 0;
  for (size_t i = 0; i < n_a; ++i) rank_sum_a += ranks[i];
  const double u_a =
      rank_sum_a - static_cast<double>(n_a) * (n_a + 1) / 2.0;
  const double u_b = static_cast<double>(n_a) * n_b - u_a;

  // tie term: sum of t^3 - t over tie groups of the pooled sample
  double tie_sum = 0;
  {
    std::vector<double> sorted(pooled);
    std::sort(sorted.begin(), sorted.end());
    size_t i = 0;
    while (i < sorted.size()) {
      size_t j = i;
      while (j + 1 < sorted.size() && sorted[j + 1] == sorted[i]) ++j;
      double t = static_cast<double>(j - i + 1);
      tie_sum += t * t * t - t;
      i = j + 1;
    }
  }

  MWTestResult result;
  result.U = u_a;
  result.n_a = n_a;
  result.n_b = n_b;

  const double mean_u = static_cast<double>(n_a) * n_b / 2.0;
  const double var_u = static_cast<double>(n_a) * n_b / 12.0 *
                       ((static_cast<double>(n) + 1.0) -
                        tie_sum / (static_cast<double>(n) * (n - 1)));
  if (var_u > 0) {
    double shift = std::max(std::abs(u_a - mean_u) - 0.5, 0.0);
    double z_abs = shift / std::sqrt(var_u);
    result.z = (u_a >= mean_u) ? z_abs : -z_abs;
  } else {
    result.z = 0;
  }

  if (std::max(n_a, n_b) <= 8 && tie_sum == 0) {
    result.method = MWTestResult::Method::exact;
    detail::MannWhitneyNullCounts counts(static_cast<int>(n_a),
                                         static_cast<int>(n_b));
    // U is integral when there are no ties; two-sided p doubles the smaller
    // tail (the null distribution is symmetric around n_a*n_b/2).
    int u_min = static_cast<int>(std::llround(std::min(u_a, u_b)));
    uint64_t tail = counts.cumulative(static_cast<int>(n_a),
                                      static_cast<int>(n_b), u_min);
    uint64_t total = counts.cumulative(static_cast<int>(n_a),
                                       static_cast<int>(n_b),
                                       static_cast<int>(n_a * n_b));
    result.p_two_sided =
        std::min(1.0, 2.0 * static_cast<double>(tail) / total);
  } else {
    result.method = MWTestResult::Method::normal_approx;
    if (var_u <= 0) {
      result.p_two_sided = 1.0;  // every observation tied
    } else {
      double shift = std::max(std::abs(u_a - mean_u) - 0.5, 0.0);
      result.p_two_sided =
          std::min(1.0, detail::normal_sf_two_sided(shift / std::sqrt(var_u)));
    }
  }
  return result;
}

/// Spearman rank correlation: Pearson on average ranks. Tie-free input uses
/// the equivalent 1 - 6*sum(d^2)/(n(n^2-1)) form directly.
inline double spearman_rho(std::span<const double> x,
                           std::span<const double> y) {
  if (x.size() != y.size()) {
    throw Error("spearman: sequences differ in length");
  }
  if (x.size() < 2) throw Error("spearman: need at least two observations");

  auto has_ties = [](std::span<const double> v) {
    std::vector<double> sorted(v.begin(), v.end());
    std::sort(sorted.begin(), sorted.end());
    return std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end();
  };

  std::vector<double> rx = average_ranks(x);
  std::vector<double> ry = average_ranks(y);
  const size_t n = rx.size();

  if (!has_ties(x) && !has_ties(y)) {
    double d2 = 0;
    for (size_t i = 0; i < n; ++i) d2 += (rx[i] - ry[i]) * (rx[i] - ry[i]);
    return 1.0 - 6.0 * d2 /
                     (static_cast<double>(n) *
                      (static_cast<double>(n) * n - 1.0));
  }

  const double mean = (static_cast<double>(n) + 1.0) / 2.0;
  double sxx = 0, syy = 0, sxy = 0;
  for (size_t i = 0; i < n; ++i) {
    double dx = rx[i] - mean;
    double dy = ry[i] - mean;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx == 0 || syy == 0) {
    throw Error("spearman: constant input has no defined rank correlation");
  }
  return sxy / std::sqrt(sxx * syy);
}

/// Size of the intersection of the two top-k sets. "Top" means largest
/// score; ties at the boundary are broken by ascending journal_id.
inline size_t top_k_overlap(
    const std::unordered_map<std::string, double>& scores_a,
    const std::unordered_map<std::string, double>& scores_b, size_t k) {
  if (k == 0) throw Error("top-k overlap: k must be positive");
  if (scores_a.size() != scores_b.size()) {
    throw Error("top-k overlap: score maps cover different journal sets");
  }
  if (k > scores_a.size()) {
    throw Error("top-k overlap: k exceeds the journal count");
  }

  auto top_set = [k](const std::unordered_map<std::string, double>& scores) {
    std::vector<std::pair<std::string, double>> items(scores.begin(),
                                                      scores.end());
    std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
      if (a.second != b.second) return a.second > b.second;
      return a.first < b.first;
    });
    std::vector<std::string> ids;
    ids.reserve(k);
    for (size_t i = 0; i < k; ++i) ids.push_back(items[i].first);
    std::sort(ids.begin(), ids.end());
    return ids;
  };

  std::vector<std::string> ta = top_set(scores_a);
  std::vector<std::string> tb = top_set(scores_b);
  for (const auto& [id, score] : scores_a) {
    if (!scores_b.count(id)) {
      throw Error("top-k overlap: journal '" + id +
                  "' missing from the second score map");
    }
  }
  std::vector<std::string> common;
  std::set_intersection(ta.begin(), ta.end(), tb.begin(), tb.end(),
                        std::back_inserter(common));
  return common.size();
}

enum class QuadrantLabel {
  high_macro_high_meso,
  high_macro_low_meso,
  low_macro_high_meso,
  low_macro_low_meso,
};

inline const char* quadrant_name(QuadrantLabel q) {
  switch (q) {
    case QuadrantLabel::high_macro_high_meso: return "high_macro_high_meso";
    case QuadrantLabel::high_macro_low_meso: return "high_macro_low_meso";
    case QuadrantLabel::low_macro_high_meso: return "low_macro_high_meso";
    case QuadrantLabel::low_macro_low_meso: return "low_macro_low_meso";
  }
  return "?";
}

inline double median(std::vector<double> values) {
  if (values.empty()) throw Error("median of empty sequence");
  std::sort(values.begin(), values.end());
  size_t n = values.size();
  if (n % 2 == 1) return values[n / 2];
  return (values[n / 2 - 1] + values[n / 2]) / 2.0;
}

inline double mean(const std::vector<double>& values) {
  if (values.empty()) throw Error("mean of empty sequence");
  double s = 0;
  for (double v : values) s += v;
  return s / static_cast<double>(values.size());
}

/// Per-axis medians of the multidisciplinary subgroup: the default
/// (macro, meso) quadrant thresholds.
inline std::pair<double, double> default_quadrant_thresholds(
    const JournalDiversityTable& table) {
  std::vector<double> macro, meso;
  for (const auto& row : table.rows) {
    if (row.is_multidisciplinary) {
      macro.push_back(row.d_macro);
      meso.push_back(row.d_meso);
    }
  }
  if (macro.empty()) {
    throw Error("quadrant thresholds: no multidisciplinary journals in table");
  }
  return {median(std::move(macro)), median(std::move(meso))};
}

/// Deterministic four-way split on (d_macro, d_meso); "high" means >= the
/// axis threshold.
inline std::map<std::string, QuadrantLabel> quadrant_classify(
    const JournalDiversityTable& table, double macro_threshold,
    double meso_threshold) {
  if (table.rows.empty()) throw Error("quadrant classify: empty table");
  std::map<std::string, QuadrantLabel> labels;
  for (const auto& row : table.rows) {
    bool high_macro = row.d_macro >= macro_threshold;
    bool high_meso = row.d_meso >= meso_threshold;
    QuadrantLabel label =
        high_macro ? (high_meso ? QuadrantLabel::high_macro_high_meso
                                : QuadrantLabel::high_macro_low_meso)
                   : (high_meso ? QuadrantLabel::low_macro_high_meso
                                : QuadrantLabel::low_macro_low_meso);
    labels.emplace(row.journal_id, label);
  }
  return labels;
}

struct GroupLevelStats {
  Level level = Level::Macro;
  double mean_multi = 0, mean_other = 0;
  double median_multi = 0, median_other = 0;
  MWTestResult test;
  std::vector<double> values_multi;
  std::vector<double> values_other;
};

/// Multidisciplinary vs other comparison at every level, with the raw
/// per-group values kept for external violin plotting.
struct GroupCompareReport {
  std::array<GroupLevelStats, 3> levels;

  std::string to_text() const {
    std::ostringstream os;
    for (const auto& s : levels) {
      const char* l = level_name(s.level);
      os << l << ".n_multidisciplinary: " << s.values_multi.size() << "\n";
      os << l << ".n_other: " << s.values_other.size() << "\n";
      os << l << ".mean_multidisciplinary: " << csv::format_double(s.mean_multi)
         << "\n";
      os << l << ".mean_other: " << csv::format_double(s.mean_other) << "\n";
      os << l << ".median_multidisciplinary: "
         << csv::format_double(s.median_multi) << "\n";
      os << l << ".median_other: " << csv::format_double(s.median_other)
         << "\n";
      os << l << ".mw_u: " << csv::format_double(s.test.U) << "\n";
      os << l << ".mw_z: " << csv::format_double(s.test.z) << "\n";
      os << l << ".mw_p_two_sided: " << csv::format_double(s.test.p_two_sided)
         << "\n";
      os << l << ".mw_method: "
         << (s.test.method == MWTestResult::Method::exact ? "exact"
                                                          : "normal_approx")
         << "\n";
    }
    return os.str();
  }
};

inline GroupCompareReport group_compare_report(
    const JournalDiversityTable& table) {
  GroupCompareReport report;
  for (Level l : kLevels) {
    GroupLevelStats s;
    s.level = l;
    for (const auto& row : table.rows) {
      (row.is_multidisciplinary ? s.values_multi : s.values_other)
          .push_back(row.value(l));
    }
    if (s.values_multi.empty() || s.values_other.empty()) {
      throw Error("group comparison: one of the groups is empty");
    }
    s.mean_multi = mean(s.values_multi);
    s.mean_other = mean(s.values_other);
    s.median_multi = median(s.values_multi);
    s.median_other = median(s.values_other);
    s.test = mann_whitney_two_sided(s.values_multi, s.values_other);
    report.levels[level_index(l)] = std::move(s);
  }
  return report;
}

}  // namespace jdiv
