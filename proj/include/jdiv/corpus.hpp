#pragma once

#include <array>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "jdiv/topics.hpp"

namespace jdiv {

struct PaperRecord {
  std::string paper_id;
  std::string journal_id;
  int year = 0;
  std::array<std::string, 3> topics;  // macro, meso, micro codes

  const std::string& topic(Level l) const { return topics[level_index(l)]; }
};

struct JournalRecord {
  std::string journal_id;
  std::string name;
  std::set<std::string> categories;
  bool is_multidisciplinary = false;
};

struct CitationEdge {
  int citing = -1;  // paper index
  int cited = -1;
};

/// Accepted/rejected row tallies for one input file.
struct FileLoadStats {
  size_t rows_total = 0;
  size_t rows_accepted = 0;
  std::map<std::string, size_t> rejected;  // reason -> count

  size_t rows_rejected() const {
    size_t n = 0;
    for (const auto& [reason, count] : rejected) n += count;
    return n;
  }
};

struct LoadStats {
  FileLoadStats papers;
  FileLoadStats citations;
  FileLoadStats journals;
};

/// The single product of ingestion. Immutable once built; all later stages
/// read it concurrently without synchronization.
struct Corpus {
  std::vector<PaperRecord> papers;
  std::vector<JournalRecord> journals;             // sorted by journal_id
  std::vector<CitationEdge> citations;             // endpoints resolved
  TopicTaxonomy taxonomy;

  std::unordered_map<std::string, int> paper_index;
  std::unordered_map<std::string, int> journal_index;
  std::vector<int> paper_journal;                  // paper idx -> journal idx
  std::vector<std::array<int, 3>> paper_topics;    // paper idx -> topic ids
  std::vector<std::vector<int>> papers_by_journal; // journal idx -> paper idxs

  int year_min = 0;
  int year_max = 0;
  LoadStats stats;
};

struct ValidationReport {
  size_t paper_count = 0;
  size_t citation_count = 0;
  size_t journal_count = 0;
  size_t multidisciplinary_count = 0;
  size_t publishing_journal_count = 0;
  std::array<size_t, 3> topic_counts = {0, 0, 0};
  int year_min = 0;
  int year_max = 0;
  LoadStats stats;

  /// key: value lines; deterministic order.
  std::string to_text() const {
    std::ostringstream os;
    os << "paper_count: " << paper_count << "\n";
    os << "citation_count: " << citation_count << "\n";
    os << "journal_count: " << journal_count << "\n";
    os << "multidisciplinary_journal_count: " << multidisciplinary_count
       << "\n";
    os << "publishing_journal_count: " << publishing_journal_count << "\n";
    for (Level l : kLevels) {
      os << "topic_count." << level_name(l) << ": "
         << topic_counts[level_index(l)] << "\n";
    }
    os << "year_window: " << year_min << "-" << year_max << "\n";
    auto dump_file = [&os](const char* label, const FileLoadStats& f) {
      os << label << ".rows_total: " << f.rows_total << "\n";
      os << label << ".rows_accepted: " << f.rows_accepted << "\n";
      os << label << ".rows_rejected: " << f.rows_rejected() << "\n";
      for (const auto& [reason, count] : f.rejected) {
        os << label << ".rejected." << reason << ": " << count << "\n";
      }
    };
    dump_file("papers", stats.papers);
    dump_file("citations", stats.citations);
    dump_file("journals", stats.journals);
    return os.str();
  }
};

}  // namespace jdiv
