#include <doctest.h>

#include <array>
#include <vector>

#include "revsim/evolution.hpp"

using namespace revsim;

// Three recorded population snapshots of a 3-strategy game (labels 10/20/30)
// with hand-checked weighted means.
namespace {
const std::array<std::array<double, 3>, 3> kFractions = {{
    {0.19, 0.47, 0.24},
    {0.16, 0.48, 0.25},
    {0.11, 0.49, 0.29},
}};
const std::array<std::array<double, 3>, 3> kUtilities = {{
    {5356.0, 16142.0, 15319.0},
    {5372.0, 16171.0, 15326.0},
    {5383.0, 16200.0, 15333.0},
}};
const std::array<double, 3> kOverall = {13645.489, 13992.247, 14580.562};
}  // namespace

TEST_CASE("overall utility reproduces recorded snapshots") {
  for (int k = 0; k < 3; ++k) {
    CHECK(std::abs(overall_utility(kFractions[k], kUtilities[k]) - kOverall[k]) <
          1e-3);
  }
}

TEST_CASE("overall utility ignores absent strategies and normalizes by presence") {
  std::vector<double> fr = {0.5, 0.0, 0.25};
  std::vector<double> ut = {10.0, 1e9, 30.0};
  CHECK(overall_utility(fr, ut) == doctest::Approx((0.5 * 10 + 0.25 * 30) / 0.75));
  std::vector<double> uniform_fr = {0.2, 0.2, 0.2};
  std::vector<double> same = {7.0, 7.0, 7.0};
  CHECK(overall_utility(uniform_fr, same) == doctest::Approx(7.0));
}

TEST_CASE("overall utility error cases") {
  std::vector<double> fr = {0.5, 0.5};
  std::vector<double> ut = {1.0};
  CHECK_THROWS_AS(overall_utility(fr, ut), std::invalid_argument);
  std::vector<double> none = {0.0, 0.0};
  std::vector<double> u2 = {1.0, 2.0};
  CHECK_THROWS_AS(overall_utility(none, u2), std::domain_error);
}

TEST_CASE("predominant set strictly above the weighted mean") {
  // Third snapshot: strategies 20 and 30 outperform the overall utility.
  std::vector<int> idx = predominant_set(kFractions[2], kUtilities[2]);
  REQUIRE(idx.size() == 2);
  const std::array<int, 3> labels = {10, 20, 30};
  CHECK(labels[idx[0]] == 20);
  CHECK(labels[idx[1]] == 30);

  // Equal utilities leave the set empty (nothing strictly above the mean).
  std::vector<double> fr = {0.3, 0.3};
  std::vector<double> same = {5.0, 5.0};
  CHECK(predominant_set(fr, same).empty());

  // An extinct population has no predominant strategies.
  std::vector<double> none = {0.0, 0.0};
  CHECK(predominant_set(none, same).empty());
}

TEST_CASE("population fractions divide by the nominal size") {
  std::vector<int> counts = {3, 0, 1};
  auto fr = population_fractions(counts, 4);
  CHECK(fr[0] == doctest::Approx(0.75));
  CHECK(fr[1] == 0.0);
  CHECK(fr[2] == doctest::Approx(0.25));
  // Zero nominal population is only valid when nobody is alive.
  std::vector<int> empty = {0, 0};
  auto zero = population_fractions(empty, 0);
  CHECK(zero == std::vector<double>{0.0, 0.0});
  CHECK_THROWS_AS(population_fractions(counts, 0), std::invalid_argument);
  CHECK_THROWS_AS(population_fractions(counts, -1), std::invalid_argument);
}

TEST_CASE("static selection reuses the removed strategy") {
  Rng rng = make_rng(1);
  std::vector<int> pred = {5, 6};
  for (int removed = 0; removed < 10; ++removed) {
    CHECK(select_strategy(Mode::Static, 1.0, pred, 100, removed, rng) == removed);
  }
}

TEST_CASE("full imitation draws only from the predominant set") {
  Rng rng = make_rng(2);
  std::vector<int> pred = {3, 17, 41};
  std::array<int, 100> seen{};
  for (int k = 0; k < 3000; ++k) {
    int s = select_strategy(Mode::Evolve, 1.0, pred, 100, 0, rng);
    REQUIRE((s == 3 || s == 17 || s == 41));
    ++seen[s];
  }
  CHECK(seen[3] > 0);
  CHECK(seen[17] > 0);
  CHECK(seen[41] > 0);
}

TEST_CASE("zero imitation is uniform over the whole strategy space") {
  Rng rng = make_rng(3);
  std::vector<int> pred = {7};  // must be ignored at epsilon = 0
  const int n = 100;
  const int draws = 10000;
  std::array<int, 100> seen{};
  for (int k = 0; k < draws; ++k) {
    ++seen[select_strategy(Mode::Evolve, 0.0, pred, n, 0, rng)];
  }
  const double expected = static_cast<double>(draws) / n;
  double chi2 = 0.0;
  for (int c : seen) {
    const double d = c - expected;
    chi2 += d * d / expected;
  }
  // 99 degrees of freedom; 148.23 is the 0.001 upper tail.
  CHECK(chi2 < 148.23);
}

TEST_CASE("an empty predominant set falls back to a uniform draw") {
  Rng rng = make_rng(4);
  std::vector<int> pred;
  std::array<int, 10> seen{};
  for (int k = 0; k < 5000; ++k) {
    int s = select_strategy(Mode::Evolve, 1.0, pred, 10, 0, rng);
    REQUIRE(s >= 0);
    REQUIRE(s < 10);
    ++seen[s];
  }
  for (int c : seen) CHECK(c > 0);
}

TEST_CASE("selection parameter validation") {
  Rng rng = make_rng(5);
  std::vector<int> pred = {1};
  CHECK_THROWS_AS(select_strategy(Mode::Evolve, 1.5, pred, 10, 0, rng),
                  std::invalid_argument);
  CHECK_THROWS_AS(select_strategy(Mode::Evolve, -0.1, pred, 10, 0, rng),
                  std::invalid_argument);
  CHECK_THROWS_AS(select_strategy(Mode::Evolve, 0.5, pred, 0, 0, rng),
                  std::invalid_argument);
}
