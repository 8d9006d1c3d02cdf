#include <doctest.h>

#include <algorithm>
#include <random>

#include "casemark/error.hpp"
#include "casemark/eval.hpp"
#include "support/synthetic.hpp"
#include "support/tempdir.hpp"

using namespace casemark;
using casemark::testing::TempDir;

namespace {

using Set = std::set<std::string>;

void check_prf(const PRF& got, double p, double r, double f) {
  CHECK(got.precision == doctest::Approx(p));
  CHECK(got.recall == doctest::Approx(r));
  CHECK(got.f1 == doctest::Approx(f));
}

}  // namespace

TEST_CASE("set scoring") {
  check_prf(score({"a$"}, {"a$"}), 1, 1, 1);
  check_prf(score({"a$", "b$"}, {"b$", "c$"}), 0.5, 0.5, 0.5);
  check_prf(score({}, {}), 1, 1, 1);
  check_prf(score({}, {"a$"}), 0, 0, 0);
  check_prf(score({"a$"}, {}), 0, 0, 0);
  check_prf(score({"a$", "b$", "c$", "d$"}, {"a$"}), 0.25, 1, 0.4);
}

TEST_CASE("macro average") {
  std::vector<PRF> two{{1, 1, 1}, {0, 0, 0}};
  check_prf(macro_average(two), 0.5, 0.5, 0.5);
  std::vector<PRF> one{{0.3, 0.6, 0.4}};
  check_prf(macro_average(one), 0.3, 0.6, 0.4);
  CHECK_THROWS_AS(macro_average(std::vector<PRF>{}), DomainError);
}

TEST_CASE("published per-language rows average to the published means") {
  // language rows of the results table: P, R, F1
  const std::vector<PRF> rows{{.74, .47, .58}, {.43, .41, .42}, {.50, .40, .44}, {.50, .58, .54}, {.54, .47, .50},
                              {.67, .19, .30}, {.83, .31, .45}, {.31, .42, .36}, {.42, .30, .35}, {.65, .56, .60},
                              {.18, .38, .24}, {.79, .48, .59}, {.67, .45, .54}, {.52, .33, .40}, {.54, .54, .54},
                              {.41, .28, .33}, {.68, .25, .36}, {.45, .48, .47}};
  REQUIRE(rows.size() == 18);
  auto avg = macro_average(rows);
  // two-decimal inputs; the printed precision mean differs by one unit in the last place
  CHECK(std::abs(avg.precision - 0.54) <= 0.01);
  CHECK(std::abs(avg.recall - 0.41) <= 0.005);
  CHECK(std::abs(avg.f1 - 0.45) <= 0.005);
}

TEST_CASE("diff report") {
  auto same = diff_report({"x"}, {"x"});
  CHECK(same.intersection == Set{"x"});
  CHECK(same.predicted_only.empty());
  CHECK(same.gold_only.empty());
  auto apart = diff_report({"x"}, {"y"});
  CHECK(apart.intersection.empty());
  CHECK(apart.predicted_only == Set{"x"});
  CHECK(apart.gold_only == Set{"y"});

  TempDir dir;
  write_diff_report(diff_report({"a$", "b$", "c$"}, {"a$", "d$"}), dir / "d.tsv");
  CHECK(casemark::testing::read_file(dir / "d.tsv") ==
        "Intersection\tAlgorithm Only\tSilver Standard Only\na$\tb$\td$\n\tc$\t\n");
}

TEST_CASE("scoring invariants on random sets") {
  std::mt19937 rng(41);
  std::uniform_int_distribution<int> size(0, 8), gram(0, 12);
  auto draw = [&] {
    Set s;
    for (int k = size(rng); k > 0; --k) s.insert("g" + std::to_string(gram(rng)) + "$");
    return s;
  };
  for (int round = 0; round < 1000; ++round) {
    Set a = draw(), b = draw();
    PRF ab = score(a, b), ba = score(b, a);
    if (!a.empty() && !b.empty()) {
      CHECK(ab.precision == ba.recall);
      CHECK(ab.recall == ba.precision);
    }
    CHECK(ab.f1 >= 0.0);
    CHECK(ab.f1 <= 1.0);
    auto d = diff_report(a, b);
    if (!(a.empty() && b.empty())) CHECK((ab.f1 == 0.0) == d.intersection.empty());

    Set joined = d.intersection;
    joined.insert(d.predicted_only.begin(), d.predicted_only.end());
    joined.insert(d.gold_only.begin(), d.gold_only.end());
    Set uni = a;
    uni.insert(b.begin(), b.end());
    CHECK(joined == uni);
    CHECK(d.intersection.size() + d.predicted_only.size() + d.gold_only.size() == uni.size());

    std::vector<PRF> list{ab, ba, score(a, a), score(b, Set{})};
    auto m = macro_average(list);
    std::shuffle(list.begin(), list.end(), rng);
    auto m2 = macro_average(list);
    CHECK(m.precision == doctest::Approx(m2.precision));
    CHECK(m.f1 == doctest::Approx(m2.f1));
  }
}

TEST_CASE("language scoring and tables") {
  std::map<std::string, Set> predicted{{"lat", {"um$", "ibus$"}}, {"deu", {"es$"}}, {"xxx", {"a$"}}};
  std::map<std::string, Set> gold{{"lat", {"um$", "ibus$"}}, {"deu", {"es$", "en$"}}};
  auto scores = score_languages(predicted, gold);
  REQUIRE(scores.size() == 2);
  CHECK(scores[0].language == "deu");
  check_prf(scores[1].prf, 1, 1, 1);

  TempDir dir;
  write_results_table(scores, dir / "r.tsv");
  CHECK(casemark::testing::read_file(dir / "r.tsv") ==
        "language\tP\tR\tF1\ndeu\t1.00\t0.50\t0.67\nlat\t1.00\t1.00\t1.00\nAverage\t1.00\t0.75\t0.83\n");

  CHECK_THROWS_AS(score_languages({{"a", {}}}, {{"b", {}}}), ConfigError);
}

TEST_CASE("projection self evaluation") {
  check_prf(projection_self_eval({"a", "b"}, {"a", "b"}), 1, 1, 1);
  check_prf(projection_self_eval({"a"}, {"b"}), 0, 0, 0);
  check_prf(projection_self_eval({"a", "b", "c", "d"}, {"a", "b", "e"}), 2.0 / 3, 0.5, 4.0 / 7);
}

TEST_CASE("ablation grid on the synthetic corpus") {
  TempDir dir;
  auto fx = casemark::testing::write_synthetic_corpus(dir.path());
  auto run = casemark::testing::load_synthetic(fx);
  std::map<std::string, WordPartition> parts{
      {"lat", partition_language(run.corpus, run.annotations, run.alignments, "lat")}};
  PipelineConfig config;
  config.theta = casemark::testing::scaled_theta(parts.at("lat").np_relevant.size());

  auto rows = run_ablation(parts, {{"lat", fx.planted}}, config);
  REQUIRE(rows.size() == std::size(kAllAblations));
  std::map<Ablation, PRF> by;
  for (const auto& r : rows) by[r.variant] = r.macro;
  CHECK(by[Ablation::Baseline].precision >= by[Ablation::NoTheta].precision);
  CHECK(by[Ablation::Baseline].f1 == 1.0);

  std::vector<Ablation> two{Ablation::Baseline, Ablation::NoPhi};
  auto subset = run_ablation(parts, {{"lat", fx.planted}}, config, two, 1);
  REQUIRE(subset.size() == 2);
  CHECK(subset[1].macro.precision == by[Ablation::NoPhi].precision);

  write_ablation_table(rows, dir / "ablation.tsv");
  auto text = casemark::testing::read_file(dir / "ablation.tsv");
  CHECK(text.starts_with("variant\tP\tR\tF1\nbaseline\t1.00\t1.00\t1.00\n"));

  CHECK_THROWS_AS(run_ablation(parts, {{"deu", {"es$"}}}, config), ConfigError);
}
