#include <catch_amalgamated.hpp>

#include <cmath>
#include <string>
#include <vector>

#include "jdiv/detect.hpp"
#include "jdiv/diversity.hpp"

using jdiv::CandidateRanking;
using jdiv::DiversityRow;
using jdiv::JournalDiversityTable;

namespace {

DiversityRow row(const std::string& id, bool multi, double macro, double meso) {
  DiversityRow r;
  r.journal_id = id;
  r.name = "Journal " + id;
  r.is_multidisciplinary = multi;
  r.paper_count = 100;
  r.d_macro = macro;
  r.d_meso = meso;
  r.d_micro = meso;
  return r;
}

}  // namespace

TEST_CASE("min-max normalization", "[detect]") {
  const std::vector<double> values = {1.0, 2.0, 3.0};
  auto result = jdiv::min_max_normalize(values);
  REQUIRE_FALSE(result.degenerate);
  REQUIRE(result.values == std::vector<double>{0.0, 0.5, 1.0});

  const std::vector<double> constant = {4.2, 4.2, 4.2};
  auto flat = jdiv::min_max_normalize(constant);
  REQUIRE(flat.degenerate);
  REQUIRE(flat.values == std::vector<double>{0.0, 0.0, 0.0});

  REQUIRE_THROWS_AS(jdiv::min_max_normalize(std::vector<double>{}), jdiv::Error);
}

TEST_CASE("distance to the ideal point", "[detect]") {
  REQUIRE(jdiv::distance_to_ideal(1.0, 1.0) == 0.0);
  REQUIRE(jdiv::distance_to_ideal(0.0, 0.0) == std::sqrt(2.0));
  REQUIRE(jdiv::distance_to_ideal(0.5, 1.0) == 0.5);
  REQUIRE(jdiv::distance_to_ideal(1.0, 0.25) == 0.75);
}

TEST_CASE("candidate ranking normalizes over every journal", "[detect]") {
  JournalDiversityTable table;
  table.rows = {
      row("J-multi", true, 5.0, 9.0),   // sets the max on both axes
      row("J-low", false, 1.0, 1.0),    // sets the min on both axes
      row("J-near", false, 4.0, 7.0),
      row("J-mid", false, 3.0, 5.0),
  };
  auto ranking = jdiv::rank_potential_multidisciplinary(table);

  REQUIRE(ranking.all_rows.size() == 4);
  REQUIRE(ranking.rows.size() == 3);

  // the multidisciplinary row is excluded from candidates but anchors the scale
  REQUIRE(ranking.all_rows[0].journal_id == "J-multi");
  REQUIRE(ranking.all_rows[0].norm_macro == 1.0);
  REQUIRE(ranking.all_rows[0].norm_meso == 1.0);
  REQUIRE(ranking.all_rows[0].distance == 0.0);

  REQUIRE(ranking.rows[0].journal_id == "J-near");
  REQUIRE(ranking.rows[0].norm_macro == 0.75);
  REQUIRE(ranking.rows[0].norm_meso == 0.75);
  REQUIRE(ranking.rows[0].distance == std::sqrt(2.0 * 0.25 * 0.25));
  REQUIRE(ranking.rows[1].journal_id == "J-mid");
  REQUIRE(ranking.rows[2].journal_id == "J-low");
  REQUIRE(ranking.rows[2].distance == std::sqrt(2.0));

  for (const auto& r : ranking.rows) REQUIRE_FALSE(r.is_multidisciplinary);
  for (size_t i = 1; i < ranking.rows.size(); ++i) {
    REQUIRE(ranking.rows[i - 1].distance <= ranking.rows[i].distance);
  }
}

TEST_CASE("equal distances break ties by journal id", "[detect]") {
  JournalDiversityTable table;
  table.rows = {
      row("Jz", false, 2.0, 3.0),
      row("Ja", false, 2.0, 3.0),
      row("Jhi", false, 4.0, 6.0),
      row("Jlo", false, 1.0, 2.0),
  };
  auto ranking = jdiv::rank_potential_multidisciplinary(table);
  REQUIRE(ranking.rows[0].journal_id == "Jhi");
  REQUIRE(ranking.rows[1].journal_id == "Ja");
  REQUIRE(ranking.rows[2].journal_id == "Jz");
  REQUIRE(ranking.rows[1].distance == ranking.rows[2].distance);
}

TEST_CASE("ranking rejects an empty table", "[detect]") {
  JournalDiversityTable table;
  REQUIRE_THROWS_AS(jdiv::rank_potential_multidisciplinary(table), jdiv::Error);
}

TEST_CASE("distance distribution splits by group", "[detect]") {
  JournalDiversityTable table;
  table.rows = {
      row("M1", true, 10.0, 10.0),  // distance 0
      row("M2", true, 9.0, 9.5),
      row("S1", false, 1.0, 1.0),   // distance sqrt(2)
      row("S2", false, 2.0, 2.0),
      row("S3", false, 8.0, 9.0),   // close to ideal, below threshold
  };
  auto ranking = jdiv::rank_potential_multidisciplinary(table);
  auto dist = jdiv::distance_distribution(ranking, 0.6);

  REQUIRE(dist.threshold == 0.6);
  REQUIRE(dist.n_multi == 2);
  REQUIRE(dist.n_other == 3);
  REQUIRE(dist.multi_above == 0);
  REQUIRE(dist.other_above == 2);
  REQUIRE(dist.fraction_multi_above == 0.0);
  REQUIRE(dist.fraction_other_above == 2.0 / 3.0);
}

TEST_CASE("degenerate axes collapse every distance to sqrt(2)", "[detect]") {
  JournalDiversityTable table;
  table.rows = {
      row("A", false, 3.0, 3.0),
      row("B", true, 3.0, 3.0),
  };
  auto ranking = jdiv::rank_potential_multidisciplinary(table);
  for (const auto& r : ranking.all_rows) {
    REQUIRE(r.norm_macro == 0.0);
    REQUIRE(r.norm_meso == 0.0);
    REQUIRE(r.distance == std::sqrt(2.0));
  }
}
