#include <catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "jdiv/diversity.hpp"
#include "jdiv/rng.hpp"

using jdiv::DiversityInput;
using jdiv::lc_div;

namespace {

DiversityInput make_input(std::vector<double> shares,
                          std::vector<double> similarity, double q) {
  DiversityInput in;
  in.shares = std::move(shares);
  in.similarity = std::move(similarity);
  in.order_q = q;
  return in;
}

std::vector<double> identity(size_t n) {
  std::vector<double> s(n * n, 0.0);
  for (size_t i = 0; i < n; ++i) s[i * n + i] = 1.0;
  return s;
}

// symmetric, unit diagonal, off-diagonal uniform in [0, 1]
std::vector<double> random_similarity(size_t n, jdiv::Rng& rng) {
  std::vector<double> s(n * n, 0.0);
  for (size_t i = 0; i < n; ++i) {
    s[i * n + i] = 1.0;
    for (size_t j = i + 1; j < n; ++j) {
      double v = rng.next_double();
      s[i * n + j] = v;
      s[j * n + i] = v;
    }
  }
  return s;
}

std::vector<double> random_shares(size_t n, jdiv::Rng& rng) {
  std::vector<double> p(n);
  double sum = 0;
  for (auto& x : p) {
    x = rng.next_double() + 1e-3;
    sum += x;
  }
  for (auto& x : p) x /= sum;
  return p;
}

const std::vector<double> kShares3 = {0.6, 0.3, 0.1};
const std::vector<double> kSim3 = {1.0, 0.5, 0.2,  //
                                   0.5, 1.0, 0.4,  //
                                   0.2, 0.4, 1.0};

}  // namespace

TEST_CASE("identity similarity at q=2 is inverse Simpson", "[diversity]") {
  auto in = make_input({0.5, 0.3, 0.2}, identity(3), 2.0);
  REQUIRE(lc_div(in) == Catch::Approx(2.6315789473684212).margin(1e-12));
}

TEST_CASE("general-q values match precomputed oracles", "[diversity]") {
  CHECK(lc_div(make_input(kShares3, kSim3, 2.0)) ==
        Catch::Approx(1.4534883720930233).margin(1e-12));
  CHECK(lc_div(make_input(kShares3, kSim3, 3.0)) ==
        Catch::Approx(1.4283091101700589).margin(1e-12));
  CHECK(lc_div(make_input(kShares3, kSim3, 1.0)) ==
        Catch::Approx(1.4897166817584002).margin(1e-12));
  CHECK(lc_div(make_input(kShares3, kSim3, 0.0)) ==
        Catch::Approx(1.5420884262796029).margin(1e-12));
}

TEST_CASE("q=1 is the limit of neighboring orders", "[diversity]") {
  double at_one = lc_div(make_input(kShares3, kSim3, 1.0));
  CHECK(lc_div(make_input(kShares3, kSim3, 1.0 - 1e-7)) ==
        Catch::Approx(at_one).margin(1e-6));
  CHECK(lc_div(make_input(kShares3, kSim3, 1.0 + 1e-7)) ==
        Catch::Approx(at_one).margin(1e-6));
}

TEST_CASE("shannon-style q=1 on identity similarity", "[diversity]") {
  // exp(entropy) of [0.5, 0.25, 0.25] is 2^1.5
  auto in = make_input({0.5, 0.25, 0.25}, identity(3), 1.0);
  REQUIRE(lc_div(in) == Catch::Approx(2.8284271247461903).margin(1e-12));
}

TEST_CASE("all-ones similarity collapses to 1", "[diversity]") {
  std::vector<double> ones(9, 1.0);
  REQUIRE(lc_div(make_input({0.5, 0.25, 0.25}, ones, 2.0)) == 1.0);
}

TEST_CASE("uniform shares with identity similarity give richness",
          "[diversity]") {
  for (size_t n : {1u, 2u, 4u, 8u, 16u, 32u}) {
    auto in = make_input(std::vector<double>(n, 1.0 / n), identity(n), 2.0);
    REQUIRE(lc_div(in) == static_cast<double>(n));
  }
}

TEST_CASE("zero-share species do not affect the value", "[diversity]") {
  double with_zero =
      lc_div(make_input({0.6, 0.3, 0.0, 0.1},
                        {1.0, 0.5, 0.9, 0.2,  //
                         0.5, 1.0, 0.9, 0.4,  //
                         0.9, 0.9, 1.0, 0.9,  //
                         0.2, 0.4, 0.9, 1.0},
                        2.0));
  double without = lc_div(make_input(kShares3, kSim3, 2.0));
  REQUIRE(with_zero == Catch::Approx(without).margin(1e-15));
}

TEST_CASE("bounds 1 <= D <= n on random inputs", "[diversity]") {
  jdiv::Rng rng(42);
  for (int trial = 0; trial < 200; ++trial) {
    size_t n = 1 + rng.next_below(20);
    auto sim = random_similarity(n, rng);
    auto shares = random_shares(n, rng);
    for (double q : {0.0, 0.5, 1.0, 2.0, 3.0, 10.0}) {
      double d = lc_div(make_input(shares, sim, q));
      CHECK(d >= 1.0 - 1e-9);
      CHECK(d <= static_cast<double>(n) + 1e-9);
    }
  }
}

TEST_CASE("splitting a species into identical twins preserves diversity",
          "[diversity]") {
  jdiv::Rng rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    size_t n = 2 + rng.next_below(10);
    auto sim = random_similarity(n, rng);
    auto shares = random_shares(n, rng);
    size_t split = rng.next_below(n);

    // twin appended at the end: same similarity row, S(twin, split) = 1
    size_t m = n + 1;
    std::vector<double> sim2(m * m);
    for (size_t i = 0; i < n; ++i) {
      for (size_t j = 0; j < n; ++j) sim2[i * m + j] = sim[i * n + j];
    }
    for (size_t j = 0; j < n; ++j) {
      sim2[n * m + j] = sim[split * n + j];
      sim2[j * m + n] = sim[j * n + split];
    }
    sim2[n * m + n] = 1.0;
    sim2[n * m + split] = 1.0;
    sim2[split * m + n] = 1.0;

    std::vector<double> shares2(shares);
    shares2.push_back(shares[split] / 2.0);
    shares2[split] /= 2.0;

    for (double q : {0.0, 1.0, 2.0, 3.0}) {
      double before = lc_div(make_input(shares, sim, q));
      double after = lc_div(make_input(shares2, sim2, q));
      CHECK(after == Catch::Approx(before).margin(1e-9));
    }
  }
}

TEST_CASE("invalid inputs are rejected", "[diversity]") {
  CHECK_THROWS_AS(lc_div(make_input({0.5, 0.4}, identity(2), 2.0)),
                  jdiv::Error);  // shares do not sum to 1
  CHECK_THROWS_AS(lc_div(make_input({0.5, 0.5}, identity(3), 2.0)),
                  jdiv::Error);  // size mismatch
  CHECK_THROWS_AS(lc_div(make_input({0.5, 0.5}, identity(2), -1.0)),
                  jdiv::Error);  // negative order
  CHECK_THROWS_AS(lc_div(make_input({1.5, -0.5}, identity(2), 2.0)),
                  jdiv::Error);  // negative share
  CHECK_THROWS_AS(lc_div(make_input({}, {}, 2.0)), jdiv::Error);

  auto asym = identity(2);
  asym[1] = 0.3;  // S(0,1) != S(1,0)
  CHECK_THROWS_AS(lc_div(make_input({0.5, 0.5}, asym, 2.0)), jdiv::Error);

  auto off_diag = identity(2);
  off_diag[0] = 0.99;
  CHECK_THROWS_AS(lc_div(make_input({0.5, 0.5}, off_diag, 2.0)), jdiv::Error);

  auto out_of_range = identity(2);
  out_of_range[1] = 1.5;
  out_of_range[2] = 1.5;
  CHECK_THROWS_AS(lc_div(make_input({0.5, 0.5}, out_of_range, 2.0)),
                  jdiv::Error);
}

TEST_CASE("journal diversity restricts the similarity matrix", "[diversity]") {
  jdiv::SimilarityMatrix sim;
  sim.level = jdiv::Level::Macro;
  sim.nodes = {"A", "B", "C"};
  sim.values = kSim3;
  sim.rebuild_index();

  jdiv::JournalProfile profile;
  profile.journal_id = "J1";
  profile.level = jdiv::Level::Macro;
  profile.topics = {"A", "C"};
  profile.counts = {3, 1};
  profile.shares = {0.75, 0.25};
  profile.total = 4;

  // submatrix {{1, 0.2}, {0.2, 1}} with shares {0.75, 0.25}
  REQUIRE(jdiv::journal_diversity(profile, sim, 2.0) ==
          Catch::Approx(1.4285714285714286).margin(1e-12));

  profile.topics = {"A", "Z"};
  REQUIRE_THROWS_WITH(jdiv::journal_diversity(profile, sim, 2.0),
                      Catch::Matchers::ContainsSubstring("Z") &&
                          Catch::Matchers::ContainsSubstring("J1"));
}
