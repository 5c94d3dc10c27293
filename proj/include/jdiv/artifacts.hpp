#pragma once

#include <cstdint>
#include <ctime>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "jdiv/csv.hpp"
#include "jdiv/diversity.hpp"
#include "jdiv/error.hpp"
#include "jdiv/graph.hpp"
#include "jdiv/node2vec.hpp"
#include "jdiv/sgns.hpp"
#include "jdiv/similarity.hpp"
#include "jdiv/topics.hpp"
#include "jdiv/version.hpp"

namespace jdiv {

/// Header block written at the top of every artifact. Rerunning a stage with
/// the same inputs, seed and config reproduces the file byte for byte except
/// for the "# created:" line, which carries the wall-clock timestamp.
struct ArtifactMeta {
  uint64_t seed = 0;
  std::string config_digest;
  bool include_timestamp = true;
};

inline std::string now_iso8601_utc() {
  std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

inline void write_meta(std::ostream& os, const ArtifactMeta& meta,
                       const std::string& level = "") {
  os << "# tool: jdiv " << kVersion << "\n";
  os << "# seed: " << meta.seed << "\n";
  if (!meta.config_digest.empty()) {
    os << "# config: " << meta.config_digest << "\n";
  }
  if (!level.empty()) os << "# level: " << level << "\n";
  if (meta.include_timestamp) os << "# created: " << now_iso8601_utc() << "\n";
}

/// Leading "# key: value" lines of an artifact.
inline std::map<std::string, std::string> read_meta(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open file: " + path);
  std::map<std::string, std::string> meta;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] != '#') break;
    std::string body = line.substr(1);
    auto colon = body.find(':');
    if (colon == std::string::npos) continue;
    meta[csv::trim(body.substr(0, colon))] = csv::trim(body.substr(colon + 1));
  }
  return meta;
}

inline std::ofstream open_artifact(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write file: " + path);
  return out;
}

inline Level level_from_meta(const std::map<std::string, std::string>& meta,
                             const std::string& path) {
  auto it = meta.find("level");
  if (it == meta.end()) {
    throw DataError("artifact '" + path + "' has no level metadata");
  }
  std::optional<Level> level = level_from_name(it->second);
  if (!level) {
    throw DataError("artifact '" + path + "' has unknown level '" +
                    it->second + "'");
  }
  return *level;
}

// ---------------------------------------------------------------------------
// discipline graph: source,target,weight rows in canonical node order;
// isolated nodes appear as weight-0 self rows so the node set round-trips
// ---------------------------------------------------------------------------

inline void save_graph(const std::string& path, const DisciplineGraph& g,
                       const ArtifactMeta& meta) {
  std::ofstream out = open_artifact(path);
  write_meta(out, meta, level_name(g.level));
  out << "source,target,weight\n";

  std::vector<char> touched(g.nodes.size(), 0);
  auto edges = g.sorted_edges();
  for (const auto& [ij, w] : edges) {
    touched[ij.first] = 1;
    touched[ij.second] = 1;
  }
  for (size_t i = 0; i < g.nodes.size(); ++i) {
    if (!touched[i]) edges.push_back({{static_cast<int>(i), static_cast<int>(i)}, 0});
  }
  std::sort(edges.begin(), edges.end());
  for (const auto& [ij, w] : edges) {
    out << csv::escape_field(g.nodes[ij.first]) << ','
        << csv::escape_field(g.nodes[ij.second]) << ',' << w << '\n';
  }
}

inline DisciplineGraph load_graph(const std::string& path) {
  auto meta = read_meta(path);
  DisciplineGraph g;
  g.level = level_from_meta(meta, path);

  csv::Reader reader(path);
  csv::HeaderMap header = reader.header({"source", "target", "weight"});
  int c_src = header.col("source");
  int c_tgt = header.col("target");
  int c_w = header.col("weight");

  struct Row {
    std::string src, tgt;
    long long w;
  };
  std::vector<Row> rows;
  std::vector<std::string> fields;
  while (reader.next(fields)) {
    if (static_cast<int>(fields.size()) <= std::max({c_src, c_tgt, c_w})) {
      throw DataError("malformed row in " + path);
    }
    long long w = 0;
    try {
      w = std::stoll(fields[c_w]);
    } catch (const std::exception&) {
      throw DataError("bad weight in " + path + ": " + fields[c_w]);
    }
    if (w < 0) throw DataError("negative weight in " + path);
    rows.push_back({fields[c_src], fields[c_tgt], w});
  }

  for (const auto& r : rows) {
    g.nodes.push_back(r.src);
    g.nodes.push_back(r.tgt);
  }
  std::sort(g.nodes.begin(), g.nodes.end());
  g.nodes.erase(std::unique(g.nodes.begin(), g.nodes.end()), g.nodes.end());
  std::unordered_map<std::string, int> index;
  for (size_t i = 0; i < g.nodes.size(); ++i) {
    index.emplace(g.nodes[i], static_cast<int>(i));
  }
  for (const auto& r : rows) {
    if (r.w > 0) g.add(index[r.src], index[r.tgt], r.w);
  }
  return g;
}

// ---------------------------------------------------------------------------
// random walks: one walk per line, space-separated topic codes
// ---------------------------------------------------------------------------

inline void save_walks(const std::string& path, const WalkSet& walks,
                       const std::vector<std::string>& nodes, Level level,
                       const ArtifactMeta& meta) {
  std::ofstream out = open_artifact(path);
  write_meta(out, meta, level_name(level));
  for (const auto& walk : walks.walks) {
    for (size_t i = 0; i < walk.size(); ++i) {
      if (i) out << ' ';
      out << nodes[walk[i]];
    }
    out << '\n';
  }
}

inline WalkSet load_walks(const std::string& path,
                          const std::vector<std::string>& nodes) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open file: " + path);
  std::unordered_map<std::string, int> index;
  for (size_t i = 0; i < nodes.size(); ++i) {
    index.emplace(nodes[i], static_cast<int>(i));
  }
  WalkSet walks;
  walks.node_count = static_cast<int>(nodes.size());
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<int> walk;
    std::istringstream ss(line);
    std::string code;
    while (ss >> code) {
      auto it = index.find(code);
      if (it == index.end()) {
        throw DataError("walk references unknown node '" + code + "' in " +
                        path);
      }
      walk.push_back(it->second);
    }
    if (!walk.empty()) walks.walks.push_back(std::move(walk));
  }
  return walks;
}

// ---------------------------------------------------------------------------
// embeddings: topic_code,v0..v{d-1}; floats printed with round-trip precision
// ---------------------------------------------------------------------------

inline void save_embeddings(const std::string& path,
                            const EmbeddingMatrix& emb,
                            const ArtifactMeta& meta) {
  std::ofstream out = open_artifact(path);
  write_meta(out, meta, level_name(emb.level));
  out << "topic_code";
  for (int d = 0; d < emb.dimensions; ++d) out << ",v" << d;
  out << '\n';
  for (size_t i = 0; i < emb.nodes.size(); ++i) {
    out << csv::escape_field(emb.nodes[i]);
    auto row = emb.row(i);
    for (float v : row) out << ',' << csv::format_double(v);
    out << '\n';
  }
}

inline EmbeddingMatrix load_embeddings(const std::string& path) {
  auto meta = read_meta(path);
  EmbeddingMatrix emb;
  emb.level = level_from_meta(meta, path);

  csv::Reader reader(path);
  csv::HeaderMap header = reader.header({"topic_code"});
  emb.dimensions = static_cast<int>(header.size()) - 1;
  if (emb.dimensions < 1) {
    throw DataError("embedding file has no vector columns: " + path);
  }
  std::vector<std::string> fields;
  while (reader.next(fields)) {
    if (fields.size() != header.size()) {
      throw DataError("malformed row in " + path);
    }
    emb.nodes.push_back(fields[0]);
    for (int d = 0; d < emb.dimensions; ++d) {
      try {
        emb.data.push_back(static_cast<float>(std::stod(fields[1 + d])));
      } catch (const std::exception&) {
        throw DataError("bad vector component in " + path);
      }
    }
  }
  if (emb.nodes.empty()) throw DataError("empty embedding file: " + path);
  return emb;
}

// ---------------------------------------------------------------------------
// similarity: upper triangle as node_i,node_j,value (self pairs included)
// ---------------------------------------------------------------------------

inline void save_similarity(const std::string& path,
                            const SimilarityMatrix& sim,
                            const ArtifactMeta& meta) {
  std::ofstream out = open_artifact(path);
  write_meta(out, meta, level_name(sim.level));
  out << "node_i,node_j,value\n";
  const size_t n = sim.size();
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i; j < n; ++j) {
      out << csv::escape_field(sim.nodes[i]) << ','
          << csv::escape_field(sim.nodes[j]) << ','
          << csv::format_double(sim.at(i, j)) << '\n';
    }
  }
}

inline SimilarityMatrix load_similarity(const std::string& path) {
  auto meta = read_meta(path);
  SimilarityMatrix sim;
  sim.level = level_from_meta(meta, path);

  csv::Reader reader(path);
  csv::HeaderMap header = reader.header({"node_i", "node_j", "value"});
  int c_i = header.col("node_i");
  int c_j = header.col("node_j");
  int c_v = header.col("value");

  struct Row {
    std::string a, b;
    double v;
  };
  std::vector<Row> rows;
  std::vector<std::string> fields;
  while (reader.next(fields)) {
    if (static_cast<int>(fields.size()) <= std::max({c_i, c_j, c_v})) {
      throw DataError("malformed row in " + path);
    }
    double v = 0;
    try {
      v = std::stod(fields[c_v]);
    } catch (const std::exception&) {
      throw DataError("bad similarity value in " + path);
    }
    rows.push_back({fields[c_i], fields[c_j], v});
    if (fields[c_i] == fields[c_j]) sim.nodes.push_back(fields[c_i]);
  }
  const size_t n = sim.nodes.size();
  if (n == 0) throw DataError("empty similarity file: " + path);
  if (rows.size() != n * (n + 1) / 2) {
    throw DataError("incomplete similarity matrix in " + path);
  }
  sim.rebuild_index();
  sim.values.assign(n * n, 0.0);
  for (const auto& r : rows) {
    int i = sim.index_of(r.a);
    int j = sim.index_of(r.b);
    if (i < 0 || j < 0) {
      throw DataError("similarity row references node without a self pair in " +
                      path);
    }
    sim.values[static_cast<size_t>(i) * n + j] = r.v;
    sim.values[static_cast<size_t>(j) * n + i] = r.v;
  }
  return sim;
}

// ---------------------------------------------------------------------------
// diversity table
// ---------------------------------------------------------------------------

inline void save_diversity(const std::string& path,
                           const JournalDiversityTable& table,
                           const ArtifactMeta& meta) {
  std::ofstream out = open_artifact(path);
  write_meta(out, meta);
  out << "journal_id,name,is_multidisciplinary,paper_count,d_macro,d_meso,"
         "d_micro\n";
  for (const auto& row : table.rows) {
    out << csv::escape_field(row.journal_id) << ','
        << csv::escape_field(row.name) << ','
        << (row.is_multidisciplinary ? 1 : 0) << ',' << row.paper_count << ','
        << csv::format_double(row.d_macro) << ','
        << csv::format_double(row.d_meso) << ','
        << csv::format_double(row.d_micro) << '\n';
  }
}

inline JournalDiversityTable load_diversity(const std::string& path) {
  csv::Reader reader(path);
  csv::HeaderMap header = reader.header(
      {"journal_id", "name", "is_multidisciplinary", "paper_count", "d_macro",
       "d_meso", "d_micro"});
  JournalDiversityTable table;
  std::vector<std::string> fields;
  while (reader.next(fields)) {
    if (fields.size() < 7) throw DataError("malformed row in " + path);
    DiversityRow row;
    row.journal_id = fields[header.col("journal_id")];
    row.name = fields[header.col("name")];
    try {
      row.is_multidisciplinary =
          std::stoi(fields[header.col("is_multidisciplinary")]) != 0;
      row.paper_count = std::stoll(fields[header.col("paper_count")]);
      row.d_macro = std::stod(fields[header.col("d_macro")]);
      row.d_meso = std::stod(fields[header.col("d_meso")]);
      row.d_micro = std::stod(fields[header.col("d_micro")]);
    } catch (const std::exception&) {
      throw DataError("malformed row in " + path);
    }
    table.rows.push_back(std::move(row));
  }
  if (table.rows.empty()) throw DataError("empty diversity table: " + path);
  return table;
}

}  // namespace jdiv
