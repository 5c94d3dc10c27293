#pragma once

#include <charconv>
#include <string>
#include <vector>

#include "jdiv/corpus.hpp"
#include "jdiv/csv.hpp"
#include "jdiv/error.hpp"

namespace jdiv {

struct LoadOptions {
  int year_min = 2016;
  int year_max = 2020;
  char delimiter = ',';
};

namespace detail {

inline bool parse_int(const std::string& s, int& out) {
  const char* first = s.data();
  const char* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last && !s.empty();
}

inline void reject(FileLoadStats& stats, const std::string& reason) {
  ++stats.rejected[reason];
}

}  // namespace detail

/// Loads journals, papers, and citations from delimited text files.
///
/// Rows violating an invariant are dropped and counted per reason, never
/// repaired. Citation rows whose endpoints do not resolve to accepted papers
/// are counted as "dangling". The topic taxonomy is derived from the accepted
/// papers, so every paper topic is guaranteed to appear in it.
inline Corpus load_corpus(const std::string& papers_path,
                          const std::string& citations_path,
                          const std::string& journals_path,
                          const LoadOptions& opts = {}) {
  if (opts.year_min > opts.year_max) {
    throw ConfigError("year window is empty: " + std::to_string(opts.year_min) +
                      "-" + std::to_string(opts.year_max));
  }
  Corpus corpus;
  corpus.year_min = opts.year_min;
  corpus.year_max = opts.year_max;

  // Journals must be available before papers so journal_id can be resolved.
  {
    csv::Reader reader(journals_path, opts.delimiter);
    auto header = reader.header({"journal_id", "name", "categories"});
    int c_id = header.col("journal_id");
    int c_name = header.col("name");
    int c_cat = header.col("categories");
    int width = std::max({c_id, c_name, c_cat}) + 1;

    std::vector<std::string> fields;
    auto& stats = corpus.stats.journals;
    while (reader.next(fields)) {
      ++stats.rows_total;
      if (static_cast<int>(fields.size()) < width) {
        detail::reject(stats, "malformed_row");
        continue;
      }
      JournalRecord rec;
      rec.journal_id = csv::trim(fields[c_id]);
      rec.name = csv::trim(fields[c_name]);
      if (rec.journal_id.empty()) {
        detail::reject(stats, "malformed_row");
        continue;
      }
      for (const auto& cat : csv::split_record(fields[c_cat], ';')) {
        std::string trimmed = csv::trim(cat);
        if (!trimmed.empty()) rec.categories.insert(std::move(trimmed));
      }
      if (rec.categories.empty()) {
        detail::reject(stats, "empty_categories");
        continue;
      }
      rec.is_multidisciplinary =
          rec.categories.count("Multidisciplinary Sciences") > 0;
      if (corpus.journal_index.count(rec.journal_id)) {
        detail::reject(stats, "duplicate_journal_id");
        continue;
      }
      corpus.journal_index.emplace(rec.journal_id, 0);  // placeholder
      corpus.journals.push_back(std::move(rec));
      ++stats.rows_accepted;
    }
  }
  std::sort(corpus.journals.begin(), corpus.journals.end(),
            [](const JournalRecord& a, const JournalRecord& b) {
              return a.journal_id < b.journal_id;
            });
  corpus.journal_index.clear();
  for (size_t i = 0; i < corpus.journals.size(); ++i) {
    corpus.journal_index.emplace(corpus.journals[i].journal_id,
                                 static_cast<int>(i));
  }

  // Papers.
  std::array<std::vector<std::string>, 3> topic_codes;
  {
    csv::Reader reader(papers_path, opts.delimiter);
    auto header = reader.header({"paper_id", "journal_id", "year",
                                 "macro_topic", "meso_topic", "micro_topic"});
    int c_pid = header.col("paper_id");
    int c_jid = header.col("journal_id");
    int c_year = header.col("year");
    std::array<int, 3> c_topic = {header.col("macro_topic"),
                                  header.col("meso_topic"),
                                  header.col("micro_topic")};
    int width =
        std::max({c_pid, c_jid, c_year, c_topic[0], c_topic[1], c_topic[2]}) +
        1;

    std::vector<std::string> fields;
    auto& stats = corpus.stats.papers;
    while (reader.next(fields)) {
      ++stats.rows_total;
      if (static_cast<int>(fields.size()) < width) {
        detail::reject(stats, "malformed_row");
        continue;
      }
      PaperRecord rec;
      rec.paper_id = csv::trim(fields[c_pid]);
      rec.journal_id = csv::trim(fields[c_jid]);
      if (rec.paper_id.empty() || rec.journal_id.empty()) {
        detail::reject(stats, "malformed_row");
        continue;
      }
      if (!detail::parse_int(csv::trim(fields[c_year]), rec.year)) {
        detail::reject(stats, "bad_year");
        continue;
      }
      if (rec.year < opts.year_min || rec.year > opts.year_max) {
        detail::reject(stats, "year_out_of_window");
        continue;
      }
      bool missing = false;
      for (int l = 0; l < 3; ++l) {
        rec.topics[l] = csv::trim(fields[c_topic[l]]);
        if (rec.topics[l].empty()) missing = true;
      }
      if (missing) {
        detail::reject(stats, "missing_level");
        continue;
      }
      bool bad_code = false;
      for (int l = 0; l < 3; ++l) {
        auto lvl = topic_level(rec.topics[l]);
        if (!lvl || level_index(*lvl) != l) bad_code = true;
      }
      if (bad_code) {
        detail::reject(stats, "bad_topic_code");
        continue;
      }
      // A finer code's prefix must name the paper's coarser topic.
      if (topic_parent(rec.topics[1]) != rec.topics[0] ||
          topic_parent(rec.topics[2]) != rec.topics[1]) {
        detail::reject(stats, "parent_mismatch");
        continue;
      }
      if (!corpus.journal_index.count(rec.journal_id)) {
        detail::reject(stats, "unknown_journal");
        continue;
      }
      if (corpus.paper_index.count(rec.paper_id)) {
        detail::reject(stats, "duplicate_paper_id");
        continue;
      }
      corpus.paper_index.emplace(rec.paper_id,
                                 static_cast<int>(corpus.papers.size()));
      for (int l = 0; l < 3; ++l) topic_codes[l].push_back(rec.topics[l]);
      corpus.papers.push_back(std::move(rec));
      ++stats.rows_accepted;
    }
  }
  if (corpus.papers.empty()) {
    throw DataError("no valid paper rows in " + papers_path);
  }

  corpus.taxonomy = TopicTaxonomy::from_codes(std::move(topic_codes));
  corpus.paper_topics.resize(corpus.papers.size());
  corpus.paper_journal.resize(corpus.papers.size());
  corpus.papers_by_journal.assign(corpus.journals.size(), {});
  for (size_t i = 0; i < corpus.papers.size(); ++i) {
    const PaperRecord& p = corpus.papers[i];
    for (Level l : kLevels) {
      corpus.paper_topics[i][level_index(l)] =
          corpus.taxonomy.id_of(l, p.topic(l));
    }
    int j = corpus.journal_index.at(p.journal_id);
    corpus.paper_journal[i] = j;
    corpus.papers_by_journal[j].push_back(static_cast<int>(i));
  }

  // Citations: both endpoints must resolve to accepted papers.
  {
    csv::Reader reader(citations_path, opts.delimiter);
    auto header = reader.header({"citing_paper_id", "cited_paper_id"});
    int c_citing = header.col("citing_paper_id");
    int c_cited = header.col("cited_paper_id");
    int width = std::max(c_citing, c_cited) + 1;

    std::vector<std::string> fields;
    auto& stats = corpus.stats.citations;
    while (reader.next(fields)) {
      ++stats.rows_total;
      if (static_cast<int>(fields.size()) < width) {
        detail::reject(stats, "malformed_row");
        continue;
      }
      std::string citing = csv::trim(fields[c_citing]);
      std::string cited = csv::trim(fields[c_cited]);
      if (citing.empty() || cited.empty()) {
        detail::reject(stats, "malformed_row");
        continue;
      }
      if (citing == cited) {
        detail::reject(stats, "self_citation");
        continue;
      }
      auto a = corpus.paper_index.find(citing);
      auto b = corpus.paper_index.find(cited);
      if (a == corpus.paper_index.end() || b == corpus.paper_index.end()) {
        detail::reject(stats, "dangling");
        continue;
      }
      corpus.citations.push_back(CitationEdge{a->second, b->second});
      ++stats.rows_accepted;
    }
  }

  return corpus;
}

inline ValidationReport validate_report(const Corpus& corpus) {
  ValidationReport report;
  report.paper_count = corpus.papers.size();
  report.citation_count = corpus.citations.size();
  report.journal_count = corpus.journals.size();
  for (const auto& j : corpus.journals) {
    if (j.is_multidisciplinary) ++report.multidisciplinary_count;
  }
  for (const auto& papers : corpus.papers_by_journal) {
    if (!papers.empty()) ++report.publishing_journal_count;
  }
  for (Level l : kLevels) {
    report.topic_counts[level_index(l)] = corpus.taxonomy.count(l);
  }
  report.year_min = corpus.year_min;
  report.year_max = corpus.year_max;
  report.stats = corpus.stats;
  return report;
}

}  // namespace jdiv
