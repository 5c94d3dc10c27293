#pragma once

#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "jdiv/artifacts.hpp"
#include "jdiv/config.hpp"
#include "jdiv/detect.hpp"
#include "jdiv/diversity.hpp"
#include "jdiv/error.hpp"
#include "jdiv/exports.hpp"
#include "jdiv/graph.hpp"
#include "jdiv/ingest.hpp"
#include "jdiv/node2vec.hpp"
#include "jdiv/sgns.hpp"
#include "jdiv/similarity.hpp"
#include "jdiv/stats.hpp"

namespace jdiv {

/// Input locations plus the naming scheme of every staged artifact.
struct PipelinePaths {
  std::string papers;
  std::string citations;
  std::string journals;
  std::string out_dir = ".";

  std::string in_out(const std::string& name) const {
    return out_dir + "/" + name;
  }

  std::string validation_report() const {
    return in_out("validation_report.txt");
  }
  std::string graph_csv(Level l) const {
    return in_out(std::string("graph_") + level_name(l) + ".csv");
  }
  std::string network_nodes_csv(Level l) const {
    return in_out(std::string("network_") + level_name(l) + "_nodes.csv");
  }
  std::string network_edges_csv(Level l) const {
    return in_out(std::string("network_") + level_name(l) + "_edges.csv");
  }
  std::string walks_txt(Level l) const {
    return in_out(std::string("walks_") + level_name(l) + ".txt");
  }
  std::string embeddings_csv(Level l) const {
    return in_out(std::string("embeddings_") + level_name(l) + ".csv");
  }
  std::string similarity_csv(Level l) const {
    return in_out(std::string("similarity_") + level_name(l) + ".csv");
  }
  std::string diversity_csv() const { return in_out("diversity.csv"); }
  std::string stats_report() const { return in_out("stats_report.txt"); }
  std::string values_txt(Level l, bool multidisciplinary) const {
    return in_out(std::string("values_") + level_name(l) + "_" +
                  (multidisciplinary ? "multidisciplinary" : "other") +
                  ".txt");
  }
  std::string scatter_csv(Level x, Level y) const {
    return in_out(std::string("scatter_") + level_name(x) + "_" +
                  level_name(y) + ".csv");
  }
  std::string quadrants_csv() const { return in_out("quadrants.csv"); }
  std::string candidates_csv() const { return in_out("candidates.csv"); }
  std::string distance_curve_csv() const {
    return in_out("distance_curve.csv");
  }
  std::string detect_report() const { return in_out("detect_report.txt"); }
  std::string overlay_csv(const std::string& journal_id) const {
    return in_out("overlay_" + journal_id + ".csv");
  }
};

/// Runs the pipeline stages against a fixed config and path layout. Every
/// stage reads raw inputs or prior artifacts from disk and writes its own
/// artifacts, so stages can run in separate processes. A stage whose
/// prerequisite artifact is missing reports which stage to run first.
class Pipeline {
 public:
  Pipeline(PipelineConfig cfg, PipelinePaths paths, std::ostream* log = nullptr)
      : cfg_(std::move(cfg)), paths_(std::move(paths)), log_(log) {
    cfg_.validate();
    std::filesystem::create_directories(paths_.out_dir);
  }

  const PipelineConfig& config() const { return cfg_; }
  const PipelinePaths& paths() const { return paths_; }

  ArtifactMeta meta() const {
    ArtifactMeta m;
    m.seed = cfg_.seed;
    m.config_digest = cfg_.digest();
    return m;
  }

  Corpus load_corpus() const {
    return jdiv::load_corpus(paths_.papers, paths_.citations, paths_.journals,
                             cfg_.load_options());
  }

  void run_ingest() {
    Corpus corpus = load_corpus();
    ValidationReport report = validate_report(corpus);
    std::ofstream out = open_artifact(paths_.validation_report());
    write_meta(out, meta());
    out << report.to_text();
    note(paths_.validation_report());
  }

  void run_graph() {
    Corpus corpus = load_corpus();
    for (Level level : kLevels) {
      DisciplineGraph g = build_discipline_graph(corpus, level);
      save_graph(paths_.graph_csv(level), g, meta());
      note(paths_.graph_csv(level));

      std::ofstream nodes = open_artifact(paths_.network_nodes_csv(level));
      write_meta(nodes, meta(), level_name(level));
      export_network_nodes(g, nodes);
      note(paths_.network_nodes_csv(level));

      std::ofstream edges = open_artifact(paths_.network_edges_csv(level));
      write_meta(edges, meta(), level_name(level));
      export_network_edges(g, edges);
      note(paths_.network_edges_csv(level));
    }
  }

  void run_embed(std::optional<Level> only = std::nullopt) {
    for (Level level : kLevels) {
      if (only && *only != level) continue;
      require(paths_.graph_csv(level), "graph");
      DisciplineGraph g = load_graph(paths_.graph_csv(level));

      WalkSet walks = generate_walks(g, cfg_.walk_params(level), cfg_.threads);
      save_walks(paths_.walks_txt(level), walks, g.nodes, level, meta());
      note(paths_.walks_txt(level));

      EmbeddingMatrix emb = train_sgns(walks, g.nodes, cfg_.train_params(level));
      emb.level = level;
      save_embeddings(paths_.embeddings_csv(level), emb, meta());
      note(paths_.embeddings_csv(level));

      SimilarityMatrix sim = cosine_similarity_matrix(emb);
      save_similarity(paths_.similarity_csv(level), sim, meta());
      note(paths_.similarity_csv(level));
    }
  }

  void run_diversity() {
    std::array<SimilarityMatrix, 3> sims;
    for (Level level : kLevels) {
      require(paths_.similarity_csv(level), "embed");
      sims[level_index(level)] = load_similarity(paths_.similarity_csv(level));
      if (sims[level_index(level)].level != level) {
        throw DataError("similarity artifact level mismatch: " +
                        paths_.similarity_csv(level));
      }
    }
    Corpus corpus = load_corpus();
    JournalDiversityTable table = build_diversity_table(
        corpus, sims[0], sims[1], sims[2], cfg_.order_q);
    save_diversity(paths_.diversity_csv(), table, meta());
    note(paths_.diversity_csv());
  }

  void run_analyze() {
    require(paths_.diversity_csv(), "diversity");
    JournalDiversityTable table = load_diversity(paths_.diversity_csv());

    GroupCompareReport groups = group_compare_report(table);
    auto [macro_thr, meso_thr] = default_quadrant_thresholds(table);
    auto labels = quadrant_classify(table, macro_thr, meso_thr);

    const size_t n = table.rows.size();
    const size_t k = std::min<size_t>(static_cast<size_t>(cfg_.top_n), n);
    std::array<std::unordered_map<std::string, double>, 3> scores;
    std::array<std::vector<double>, 3> columns;
    for (const auto& row : table.rows) {
      for (Level l : kLevels) {
        scores[level_index(l)][row.journal_id] = row.value(l);
        columns[level_index(l)].push_back(row.value(l));
      }
    }

    std::ofstream out = open_artifact(paths_.stats_report());
    write_meta(out, meta());
    out << groups.to_text();
    out << "spearman.macro_meso: "
        << csv::format_double(spearman_rho(columns[0], columns[1])) << "\n";
    out << "spearman.macro_micro: "
        << csv::format_double(spearman_rho(columns[0], columns[2])) << "\n";
    out << "spearman.meso_micro: "
        << csv::format_double(spearman_rho(columns[1], columns[2])) << "\n";
    out << "overlap.k: " << k << "\n";
    out << "overlap.macro_meso: " << top_k_overlap(scores[0], scores[1], k)
        << "\n";
    out << "overlap.macro_micro: " << top_k_overlap(scores[0], scores[2], k)
        << "\n";
    out << "overlap.meso_micro: " << top_k_overlap(scores[1], scores[2], k)
        << "\n";
    out << "quadrant.threshold_macro: " << csv::format_double(macro_thr)
        << "\n";
    out << "quadrant.threshold_meso: " << csv::format_double(meso_thr) << "\n";
    std::map<std::string, size_t> quadrant_counts;
    for (const auto& [id, label] : labels) ++quadrant_counts[quadrant_name(label)];
    for (const auto& [name, count] : quadrant_counts) {
      out << "quadrant.count." << name << ": " << count << "\n";
    }
    note(paths_.stats_report());

    for (Level l : kLevels) {
      const auto& stats = groups.levels[level_index(l)];
      for (bool multi : {true, false}) {
        std::ofstream values = open_artifact(paths_.values_txt(l, multi));
        write_meta(values, meta(), level_name(l));
        const auto& group = multi ? stats.values_multi : stats.values_other;
        for (double v : group) values << csv::format_double(v) << "\n";
        note(paths_.values_txt(l, multi));
      }
    }

    const std::array<std::pair<Level, Level>, 3> pairs = {
        std::pair{Level::Macro, Level::Meso},
        std::pair{Level::Macro, Level::Micro},
        std::pair{Level::Meso, Level::Micro}};
    for (auto [x, y] : pairs) {
      std::ofstream scatter = open_artifact(paths_.scatter_csv(x, y));
      write_meta(scatter, meta());
      export_scatter(table, x, y, scatter);
      note(paths_.scatter_csv(x, y));
    }

    std::ofstream quadrants = open_artifact(paths_.quadrants_csv());
    write_meta(quadrants, meta());
    export_quadrants(table, labels, quadrants);
    note(paths_.quadrants_csv());
  }

  void run_detect() {
    require(paths_.diversity_csv(), "diversity");
    JournalDiversityTable table = load_diversity(paths_.diversity_csv());
    CandidateRanking ranking = rank_potential_multidisciplinary(table);
    DistanceDistribution dist =
        distance_distribution(ranking, cfg_.detect_threshold);

    std::ofstream candidates = open_artifact(paths_.candidates_csv());
    write_meta(candidates, meta());
    export_candidates(ranking, candidates);
    note(paths_.candidates_csv());

    std::ofstream curve = open_artifact(paths_.distance_curve_csv());
    write_meta(curve, meta());
    export_distance_curve(ranking, curve);
    note(paths_.distance_curve_csv());

    std::ofstream report = open_artifact(paths_.detect_report());
    write_meta(report, meta());
    report << "threshold: " << csv::format_double(dist.threshold) << "\n";
    report << "n_multidisciplinary: " << dist.n_multi << "\n";
    report << "n_other: " << dist.n_other << "\n";
    report << "fraction_multidisciplinary_above: "
           << csv::format_double(dist.fraction_multi_above) << "\n";
    report << "fraction_other_above: "
           << csv::format_double(dist.fraction_other_above) << "\n";
    size_t shown = std::min<size_t>(static_cast<size_t>(cfg_.top_n),
                                    ranking.rows.size());
    for (size_t i = 0; i < shown; ++i) {
      report << "candidate." << (i + 1) << ": "
             << ranking.rows[i].journal_id << " distance="
             << csv::format_double(ranking.rows[i].distance) << "\n";
    }
    note(paths_.detect_report());
  }

  /// Writes the topic overlay of one journal; returns the row count.
  size_t run_export_overlay(const std::string& journal_id,
                            Level level = Level::Micro) {
    Corpus corpus = load_corpus();
    return write_overlay(corpus, journal_id, level);
  }

  void run_all() {
    run_ingest();
    run_graph();
    run_embed();
    run_diversity();
    run_analyze();
    run_detect();
    Corpus corpus = load_corpus();
    for (size_t j = 0; j < corpus.journals.size(); ++j) {
      const auto& journal = corpus.journals[j];
      if (!journal.is_multidisciplinary) continue;
      if (corpus.papers_by_journal[j].empty()) continue;
      write_overlay(corpus, journal.journal_id, Level::Micro);
    }
  }

 private:
  void require(const std::string& path, const std::string& stage) const {
    if (!std::filesystem::exists(path)) {
      throw MissingArtifactError(path, stage);
    }
  }

  size_t write_overlay(const Corpus& corpus, const std::string& journal_id,
                       Level level) {
    std::vector<JournalProfile> profiles = build_journal_profiles(corpus, level);
    const JournalProfile* found = nullptr;
    for (const auto& p : profiles) {
      if (p.journal_id == journal_id) {
        found = &p;
        break;
      }
    }
    if (!found) {
      throw DataError("journal '" + journal_id +
                      "' has no papers in the corpus");
    }
    std::ofstream out = open_artifact(paths_.overlay_csv(journal_id));
    write_meta(out, meta(), level_name(level));
    size_t rows = export_journal_overlay(*found, out);
    note(paths_.overlay_csv(journal_id));
    return rows;
  }

  void note(const std::string& path) const {
    if (log_) (*log_) << "wrote " << path << "\n";
  }

  PipelineConfig cfg_;
  PipelinePaths paths_;
  std::ostream* log_;
};

}  // namespace jdiv
