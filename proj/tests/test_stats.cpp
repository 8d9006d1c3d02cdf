#include <doctest.h>

#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <limits>
#include <random>

#include "casemark/error.hpp"
#include "casemark/stats.hpp"
#include "support/fisher_oracle.hpp"

using namespace casemark;
using casemark::testing::Float50;

TEST_CASE("log_choose") {
  CHECK(log_choose(5, 2) == doctest::Approx(std::log(10.0)).epsilon(1e-14));
  CHECK(log_choose(0, 0) == 0.0);
  CHECK(log_choose(17, 0) == 0.0);
  CHECK(log_choose(17, 17) == doctest::Approx(0.0));
  CHECK_THROWS_AS(log_choose(3, 4), DomainError);

  auto exact = casemark::testing::binomial(52, 5);
  CHECK(exact == 2598960);
  double oracle = static_cast<double>(log(Float50(exact)));
  CHECK(log_choose(52, 5) == doctest::Approx(oracle).epsilon(1e-14));
}

TEST_CASE("log_choose at large n") {
  for (auto [n, k] : {std::pair<std::uint64_t, std::uint64_t>{1'000'000, 500'000}, {123'456, 789}, {40'000, 39'999}}) {
    Float50 N(n), K(k);
    Float50 oracle = boost::math::lgamma(N + 1) - boost::math::lgamma(K + 1) - boost::math::lgamma(N - K + 1);
    CHECK(log_choose(n, k) == doctest::Approx(static_cast<double>(oracle)).epsilon(1e-12));
  }
}

TEST_CASE("Fisher exact test examples") {
  CHECK(fisher_exact_two_sided({5, 5, 5, 5}) == 1.0);
  CHECK(fisher_exact_two_sided({3, 0, 0, 3}) == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(std::abs(fisher_exact_two_sided({10, 90, 10, 890}) - casemark::testing::fisher_oracle(10, 90, 10, 890)) < 1e-10);
  CHECK(fisher_exact_two_sided({0, 0, 0, 1}) == 1.0);
  CHECK_THROWS_AS(fisher_exact_two_sided({0, 0, 0, 0}), DomainError);
}

TEST_CASE("Fisher exact test against the oracle on random tables") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::uint64_t> cell(0, 120);
  for (int i = 0; i < 300; ++i) {
    ContingencyTable t{cell(rng), cell(rng), cell(rng), cell(rng)};
    if (t.total() == 0) continue;
    double p = fisher_exact_two_sided(t);
    CHECK(p >= 0.0);
    CHECK(p <= 1.0);
    CHECK(std::abs(p - casemark::testing::fisher_oracle(t.a, t.b, t.c, t.d)) < 1e-10);
  }
}

TEST_CASE("Fisher symmetry and balanced scaling") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::uint64_t> cell(0, 400);
  for (int i = 0; i < 1000; ++i) {
    ContingencyTable t{cell(rng), cell(rng), cell(rng), cell(rng)};
    if (t.total() == 0) continue;
    double p = fisher_exact_two_sided(t);
    double swapped = fisher_exact_two_sided({t.d, t.c, t.b, t.a});
    CHECK(p == doctest::Approx(swapped).epsilon(1e-9));
  }
  for (std::uint64_t k : {1, 2, 7, 50, 1000, 100000}) CHECK(fisher_exact_two_sided({k, k, k, k}) == 1.0);
}

TEST_CASE("odds ratio") {
  CHECK(odds_ratio({5, 5, 5, 5}) == 1.0);
  CHECK(odds_ratio({2, 1, 1, 2}) == 4.0);
  CHECK(odds_ratio({3, 0, 1, 2}) == std::numeric_limits<double>::infinity());
  CHECK(odds_ratio({0, 1, 1, 2}) == 0.0);
  CHECK_THROWS_AS(odds_ratio({0, 0, 1, 2}), UndefinedOddsError);
  CHECK(try_odds_ratio({1, 0, 0, 1}) == std::numeric_limits<double>::infinity());
  CHECK_FALSE(try_odds_ratio({0, 1, 0, 1}).has_value());
  double r = odds_ratio({20, 480, 300, 1200});
  CHECK(r < 1.0);
}

TEST_CASE("odds ratio transposition and reciprocity") {
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<std::uint64_t> cell(0, 50);
  for (int i = 0; i < 1000; ++i) {
    ContingencyTable t{cell(rng), cell(rng), cell(rng), cell(rng)};
    auto r = try_odds_ratio(t);
    auto transposed = try_odds_ratio({t.a, t.c, t.b, t.d});
    CHECK(r.has_value() == transposed.has_value());
    if (r) CHECK(*r == *transposed);
    auto flipped = try_odds_ratio({t.b, t.a, t.d, t.c});
    if (r && flipped && std::isfinite(*r) && std::isfinite(*flipped) && *r > 0 && *flipped > 0)
      CHECK(*r * *flipped == doctest::Approx(1.0).epsilon(1e-12));
  }
}
