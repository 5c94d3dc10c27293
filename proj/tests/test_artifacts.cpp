#include <catch_amalgamated.hpp>

#include <string>
#include <vector>

#include "jdiv/artifacts.hpp"
#include "jdiv/diversity.hpp"
#include "jdiv/graph.hpp"
#include "jdiv/node2vec.hpp"
#include "jdiv/sgns.hpp"
#include "jdiv/similarity.hpp"
#include "support/tmpdir.hpp"

using jdiv::ArtifactMeta;
using jdiv::DisciplineGraph;
using jdiv::Level;
using support::TmpDir;
using support::write_file;

namespace {

ArtifactMeta meta_of(uint64_t seed) {
  ArtifactMeta meta;
  meta.seed = seed;
  meta.config_digest = "cafef00dcafef00d";
  return meta;
}

}  // namespace

TEST_CASE("artifact metadata header round-trips", "[artifacts]") {
  TmpDir dir("artifacts");
  DisciplineGraph g;
  g.level = Level::Meso;
  g.nodes = {"1.1", "1.2"};
  g.add(0, 1, 2);

  const std::string path = dir.file("graph.csv");
  jdiv::save_graph(path, g, meta_of(42));
  auto meta = jdiv::read_meta(path);

  REQUIRE(meta.at("seed") == "42");
  REQUIRE(meta.at("config") == "cafef00dcafef00d");
  REQUIRE(meta.at("level") == "meso");
  REQUIRE(meta.at("tool").rfind("jdiv", 0) == 0);
  REQUIRE(meta.count("created") == 1);

  ArtifactMeta no_stamp = meta_of(42);
  no_stamp.include_timestamp = false;
  jdiv::save_graph(path, g, no_stamp);
  REQUIRE(jdiv::read_meta(path).count("created") == 0);
}

TEST_CASE("graph artifacts round-trip including isolated nodes", "[artifacts]") {
  TmpDir dir("artifacts");
  DisciplineGraph g;
  g.level = Level::Macro;
  g.nodes = {"1", "2", "3", "4"};  // node 4 is isolated
  g.add(0, 1, 5);
  g.add(0, 0, 2);
  g.add(1, 2, 1);

  const std::string path = dir.file("graph.csv");
  jdiv::save_graph(path, g, meta_of(1));
  auto loaded = jdiv::load_graph(path);

  REQUIRE(loaded.level == Level::Macro);
  REQUIRE(loaded.nodes == g.nodes);
  REQUIRE(loaded.sorted_edges() == g.sorted_edges());
  REQUIRE(loaded.weight(3, 3) == 0);
}

TEST_CASE("graph loader rejects bad files", "[artifacts]") {
  TmpDir dir("artifacts");

  const std::string no_level = dir.file("no_level.csv");
  write_file(no_level, "# seed: 1\nsource,target,weight\na,b,1\n");
  REQUIRE_THROWS_AS(jdiv::load_graph(no_level), jdiv::DataError);

  const std::string bad_level = dir.file("bad_level.csv");
  write_file(bad_level, "# level: nano\nsource,target,weight\na,b,1\n");
  REQUIRE_THROWS_AS(jdiv::load_graph(bad_level), jdiv::DataError);

  const std::string negative = dir.file("negative.csv");
  write_file(negative, "# level: macro\nsource,target,weight\na,b,-3\n");
  REQUIRE_THROWS_AS(jdiv::load_graph(negative), jdiv::DataError);

  const std::string bad_weight = dir.file("bad_weight.csv");
  write_file(bad_weight, "# level: macro\nsource,target,weight\na,b,heavy\n");
  REQUIRE_THROWS_AS(jdiv::load_graph(bad_weight), jdiv::DataError);

  REQUIRE_THROWS_AS(jdiv::load_graph(dir.file("missing.csv")), jdiv::DataError);
}

TEST_CASE("walk artifacts round-trip", "[artifacts]") {
  TmpDir dir("artifacts");
  const std::vector<std::string> nodes = {"1.1", "1.2", "2.1"};
  jdiv::WalkSet walks;
  walks.node_count = 3;
  walks.walks = {{0, 1, 0, 2}, {2}, {1, 2, 1}};

  const std::string path = dir.file("walks.txt");
  jdiv::save_walks(path, walks, nodes, Level::Meso, meta_of(9));
  auto loaded = jdiv::load_walks(path, nodes);

  REQUIRE(loaded.node_count == 3);
  REQUIRE(loaded.walks == walks.walks);

  const std::string alien = dir.file("alien.txt");
  write_file(alien, "1.1 9.9\n");
  REQUIRE_THROWS_AS(jdiv::load_walks(alien, nodes), jdiv::DataError);
}

TEST_CASE("embedding artifacts round-trip bitwise", "[artifacts]") {
  TmpDir dir("artifacts");
  jdiv::EmbeddingMatrix emb;
  emb.level = Level::Micro;
  emb.nodes = {"1.1.1", "1.1.2"};
  emb.dimensions = 3;
  emb.data = {0.1f, -2.5f, 1e-8f, 3.1415927f, -0.0f, 123456.78f};

  const std::string path = dir.file("emb.csv");
  jdiv::save_embeddings(path, emb, meta_of(3));
  auto loaded = jdiv::load_embeddings(path);

  REQUIRE(loaded.level == Level::Micro);
  REQUIRE(loaded.nodes == emb.nodes);
  REQUIRE(loaded.dimensions == 3);
  REQUIRE(loaded.data == emb.data);

  const std::string no_vec = dir.file("novec.csv");
  write_file(no_vec, "# level: micro\ntopic_code\n1.1.1\n");
  REQUIRE_THROWS_AS(jdiv::load_embeddings(no_vec), jdiv::DataError);
}

TEST_CASE("similarity artifacts round-trip bitwise", "[artifacts]") {
  TmpDir dir("artifacts");
  jdiv::SimilarityMatrix sim;
  sim.level = Level::Macro;
  sim.nodes = {"1", "2", "3"};
  sim.values = {1.0, 0.25, 0.1234567890123456,
                0.25, 1.0, 0.75,
                0.1234567890123456, 0.75, 1.0};
  sim.rebuild_index();

  const std::string path = dir.file("sim.csv");
  jdiv::save_similarity(path, sim, meta_of(4));
  auto loaded = jdiv::load_similarity(path);

  REQUIRE(loaded.level == Level::Macro);
  REQUIRE(loaded.nodes == sim.nodes);
  REQUIRE(loaded.values == sim.values);
  REQUIRE(loaded.index_of("2") == 1);

  const std::string partial = dir.file("partial.csv");
  write_file(partial,
             "# level: macro\nnode_i,node_j,value\n1,1,1\n2,2,1\n");
  REQUIRE_THROWS_AS(jdiv::load_similarity(partial), jdiv::DataError);

  const std::string stray = dir.file("stray.csv");
  write_file(stray,
             "# level: macro\nnode_i,node_j,value\n1,1,1\n1,9,0.5\n");
  REQUIRE_THROWS_AS(jdiv::load_similarity(stray), jdiv::DataError);
}

TEST_CASE("diversity table round-trips", "[artifacts]") {
  TmpDir dir("artifacts");
  jdiv::JournalDiversityTable table;
  jdiv::DiversityRow row;
  row.journal_id = "J1";
  row.name = "Annals of Everything, Letters";
  row.is_multidisciplinary = true;
  row.paper_count = 321;
  row.d_macro = 3.0000000000000004;
  row.d_meso = 7.25;
  row.d_micro = 11.119999999999999;
  table.rows.push_back(row);
  row.journal_id = "J2";
  row.name = "Narrow Results";
  row.is_multidisciplinary = false;
  row.paper_count = 17;
  row.d_macro = 1.0;
  row.d_meso = 1.5;
  row.d_micro = 2.0;
  table.rows.push_back(row);

  const std::string path = dir.file("diversity.csv");
  jdiv::save_diversity(path, table, meta_of(6));
  auto loaded = jdiv::load_diversity(path);

  REQUIRE(loaded.rows.size() == 2);
  REQUIRE(loaded.rows[0].journal_id == "J1");
  REQUIRE(loaded.rows[0].name == "Annals of Everything, Letters");
  REQUIRE(loaded.rows[0].is_multidisciplinary);
  REQUIRE(loaded.rows[0].paper_count == 321);
  REQUIRE(loaded.rows[0].d_macro == 3.0000000000000004);
  REQUIRE(loaded.rows[0].d_micro == 11.119999999999999);
  REQUIRE_FALSE(loaded.rows[1].is_multidisciplinary);
  REQUIRE(loaded.rows[1].d_meso == 1.5);

  const std::string empty = dir.file("empty.csv");
  write_file(empty,
             "journal_id,name,is_multidisciplinary,paper_count,d_macro,d_meso,"
             "d_micro\n");
  REQUIRE_THROWS_AS(jdiv::load_diversity(empty), jdiv::DataError);
}
