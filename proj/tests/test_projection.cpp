#include <doctest.h>

#include <algorithm>
#include <random>

#include "casemark/error.hpp"
#include "casemark/projection.hpp"

using namespace casemark;

namespace {

using Links = std::vector<std::pair<TokenIndex, TokenIndex>>;

const VersionId kE1{"eng", "a"};
const VersionId kE2{"eng", "b"};
const VersionId kLat{"lat", "x"};
const VersionId kDeu{"deu", "x"};

ParallelCorpus corpus_of(std::map<VersionId, std::vector<Verse>> versions) {
  std::vector<VerseId> ids;
  for (std::size_t i = 0; i < versions.begin()->second.size(); ++i) ids.push_back("v" + std::to_string(i));
  return ParallelCorpus(ids, std::move(versions));
}

Alignment alignment_of(VersionId s, VersionId t, std::vector<Links> links) {
  return Alignment{std::move(s), std::move(t), std::move(links)};
}

NpAnnotation annotation_of(VersionId v, std::vector<std::vector<TokenSpan>> spans) {
  return NpAnnotation{std::move(v), std::move(spans)};
}

}  // namespace

TEST_CASE("project_span unions links") {
  Links links{{1, 4}, {2, 2}, {2, 3}};
  CHECK(project_span(TokenSet{1, 2}, links) == TokenSet{2, 3, 4});
  CHECK_FALSE(project_span(TokenSet{0}, Links{}).has_value());
  CHECK(project_span(TokenSet{0, 1}, Links{{0, 3}, {1, 0}}) == TokenSet{0, 3});
}

TEST_CASE("project_span on an alignment") {
  Alignment al = alignment_of(kE1, kLat, {{{0, 1}}});
  CHECK(project_span(NpSpan{0, {0}}, al, Verse{"x", "y"})->tokens == TokenSet{1});
  CHECK_THROWS_AS(project_span(NpSpan{0, {0}}, al, Verse{"x"}), ConfigError);
}

TEST_CASE("parallel NP set keeps editions apart") {
  auto corpus = corpus_of({{kE1, {{"the", "dog"}}},
                           {kE2, {{"a", "dog"}}},
                           {kLat, {{"canis"}}},
                           {kDeu, {{"der", "Hund"}}}});
  std::vector<NpAnnotation> ann{annotation_of(kE1, {{{0, 2}}}), annotation_of(kE2, {{{0, 2}}})};
  std::vector<Alignment> al{alignment_of(kE1, kLat, {{{1, 0}}}), alignment_of(kE1, kDeu, {{{0, 0}, {1, 1}}}),
                            alignment_of(kE2, kLat, {{}}), alignment_of(kE2, kDeu, {{{1, 1}}})};
  auto set = build_parallel_np_set(corpus, ann, al);

  REQUIRE(set.nps.size() == 2);
  CHECK(set.sources == std::vector<VersionId>{kE1, kE2});
  CHECK(set.targets == std::vector<VersionId>{kDeu, kLat});
  for (const auto& np : set.nps) CHECK(np.projections.size() <= 2);
  CHECK(set.nps[0].projections.at(kLat) == TokenSet{0});
  CHECK(set.nps[0].projections.at(kDeu) == TokenSet{0, 1});
  CHECK_FALSE(set.nps[1].projections.contains(kLat));
  CHECK(set.nps[1].id(corpus) == "eng-b/v0/0");

  std::vector<Alignment> missing(al.begin(), al.begin() + 3);
  CHECK_THROWS_AS(build_parallel_np_set(corpus, ann, missing), ConfigError);
}

TEST_CASE("inside and outside counts") {
  const VersionId src{"src", "x"};
  auto corpus = corpus_of({{src, {{"a", "b", "c"}}}, {kLat, {{"a", "b", "c"}}}});

  SUBCASE("single copy") {
    ParallelNpSet set{{src}, {kLat}, {}};
    set.nps.push_back(ParallelNp{0, 0, src, {0, 1}, {{kLat, {0, 1}}}});
    auto counts = build_inside_outside(corpus, set, "lat");
    CHECK(counts.inside == std::map<std::string, std::uint64_t>{{"a", 1}, {"b", 1}});
    CHECK(counts.outside == std::map<std::string, std::uint64_t>{{"c", 1}});
  }
  SUBCASE("two copies") {
    const VersionId src2{"src", "y"};
    auto two = corpus_of({{src, {{"p", "q", "r"}}}, {src2, {{"p", "q", "r"}}}, {kLat, {{"a", "b", "c"}}}});
    ParallelNpSet set{{src, src2}, {kLat}, {}};
    set.nps.push_back(ParallelNp{0, 0, src, {0, 1}, {{kLat, {0, 1}}}});
    set.nps.push_back(ParallelNp{0, 0, src2, {1, 2}, {{kLat, {1, 2}}}});
    auto counts = build_inside_outside(two, set, "lat");
    CHECK(counts.inside == std::map<std::string, std::uint64_t>{{"a", 1}, {"b", 2}, {"c", 1}});
    CHECK(counts.outside == std::map<std::string, std::uint64_t>{{"a", 1}, {"c", 1}});
  }
  SUBCASE("overlapping projections count a token once") {
    ParallelNpSet set{{src}, {kLat}, {}};
    set.nps.push_back(ParallelNp{0, 0, src, {0}, {{kLat, {0, 1}}}});
    set.nps.push_back(ParallelNp{0, 1, src, {1}, {{kLat, {1}}}});
    auto counts = build_inside_outside(corpus, set, "lat");
    CHECK(counts.inside_of("b") == 1);
    CHECK(counts.total_inside() + counts.total_outside() == 3);
  }
  SUBCASE("the source edition is its own projection") {
    ParallelNpSet set{{src}, {kLat}, {}};
    set.nps.push_back(ParallelNp{0, 0, src, {2}, {}});
    auto counts = build_inside_outside(corpus, set, "src");
    CHECK(counts.inside == std::map<std::string, std::uint64_t>{{"c", 1}});
  }
  SUBCASE("direct annotation") {
    auto counts = build_inside_outside(corpus, annotation_of(kLat, {{{1, 3}}}));
    CHECK(counts.inside == std::map<std::string, std::uint64_t>{{"b", 1}, {"c", 1}});
    CHECK(counts.outside == std::map<std::string, std::uint64_t>{{"a", 1}});
  }
}

TEST_CASE("partition needs a strict majority") {
  InsideOutsideCounts counts;
  counts.language = "lat";
  counts.inside = {{"ovibus", 45}, {"intellegent", 1}, {"tie", 3}};
  counts.outside = {{"ovibus", 1}, {"intellegent", 22}, {"tie", 3}, {"only_out", 4}};
  auto p = partition_word_types(counts);
  CHECK(p.np_relevant == std::set<std::string>{"ovibus"});
  CHECK(p.np_irrelevant == std::set<std::string>{"intellegent", "only_out", "tie"});
}

namespace {

struct RandomWorld {
  ParallelCorpus corpus;
  std::vector<NpAnnotation> annotations;
  std::vector<Alignment> alignments;
};

RandomWorld random_world(std::mt19937& rng) {
  const std::vector<VersionId> sources{kE1, kE2};
  const std::vector<VersionId> targets{kLat, kDeu, {"lat", "y"}};
  std::uniform_int_distribution<int> len(1, 7), word(0, 9), coin(0, 2);
  const std::size_t verses = 6;

  std::map<VersionId, std::vector<Verse>> versions;
  for (const auto& v : sources)
    for (std::size_t i = 0; i < verses; ++i) {
      Verse verse;
      for (int k = len(rng); k > 0; --k) verse.push_back("e" + std::to_string(word(rng)));
      versions[v].push_back(verse);
    }
  for (const auto& v : targets)
    for (std::size_t i = 0; i < verses; ++i) {
      Verse verse;
      for (int k = len(rng); k > 0; --k) verse.push_back(v.language + std::to_string(word(rng)));
      versions[v].push_back(verse);
    }

  RandomWorld w{corpus_of(versions), {}, {}};
  for (const auto& s : sources) {
    NpAnnotation ann{s, std::vector<std::vector<TokenSpan>>(verses)};
    for (std::size_t i = 0; i < verses; ++i) {
      TokenIndex n = static_cast<TokenIndex>(w.corpus.verse(s, i).size());
      for (TokenIndex b = 0; b < n; ++b) {
        if (coin(rng)) continue;
        TokenIndex e = std::min<TokenIndex>(n, b + 1 + static_cast<TokenIndex>(coin(rng)));
        ann.spans[i].push_back({b, e});
        b = e;
      }
    }
    w.annotations.push_back(std::move(ann));
    for (const auto& t : targets) {
      Alignment al{s, t, std::vector<Links>(verses)};
      for (std::size_t i = 0; i < verses; ++i) {
        auto ns = w.corpus.verse(s, i).size(), nt = w.corpus.verse(t, i).size();
        for (TokenIndex a = 0; a < ns; ++a)
          for (TokenIndex b = 0; b < nt; ++b)
            if (coin(rng) == 0 && word(rng) < 3) al.links[i].emplace_back(a, b);
      }
      w.alignments.push_back(std::move(al));
    }
  }
  return w;
}

}  // namespace

TEST_CASE("projection properties on random worlds") {
  std::mt19937 rng(11);
  for (int round = 0; round < 200; ++round) {
    auto w = random_world(rng);
    auto set = build_parallel_np_set(w.corpus, w.annotations, w.alignments);

    for (const auto& lang : {"lat", "deu", "eng"}) {
      auto counts = build_inside_outside(w.corpus, set, lang);
      std::uint64_t tokens = 0;
      for (const auto& v : w.corpus.versions_of(lang))
        for (const auto& verse : w.corpus.verses(v)) tokens += verse.size();
      // each English edition only sees itself
      std::uint64_t copies = std::string(lang) == "eng" ? 1 : set.sources.size();
      CHECK(counts.total_inside() + counts.total_outside() == copies * tokens);

      auto part = partition_word_types(counts);
      std::set<std::string> seen;
      for (const auto& [word, n] : counts.inside) seen.insert(word);
      for (const auto& [word, n] : counts.outside) seen.insert(word);
      for (const auto& word : seen) CHECK(part.np_relevant.contains(word) != part.np_irrelevant.contains(word));
    }

    auto reversed_ann = w.annotations;
    std::reverse(reversed_ann.begin(), reversed_ann.end());
    auto reversed_al = w.alignments;
    std::shuffle(reversed_al.begin(), reversed_al.end(), rng);
    auto again = build_parallel_np_set(w.corpus, reversed_ann, reversed_al);
    REQUIRE(again.nps.size() == set.nps.size());
    for (std::size_t i = 0; i < set.nps.size(); ++i) {
      CHECK(again.nps[i].source_tokens == set.nps[i].source_tokens);
      CHECK(again.nps[i].projections == set.nps[i].projections);
    }
    CHECK(partition_word_types(build_inside_outside(w.corpus, again, "lat")).np_relevant ==
          partition_word_types(build_inside_outside(w.corpus, set, "lat")).np_relevant);

    for (const auto& al : w.alignments)
      for (std::size_t v = 0; v < al.links.size(); ++v) {
        auto n = static_cast<TokenIndex>(w.corpus.verse(al.source, v).size());
        std::uniform_int_distribution<TokenIndex> tok(0, n - 1);
        TokenSet small{tok(rng)};
        TokenSet big = small;
        big.push_back(tok(rng));
        std::sort(big.begin(), big.end());
        big.erase(std::unique(big.begin(), big.end()), big.end());
        auto ps = project_span(small, al.links[v]);
        auto pb = project_span(big, al.links[v]);
        if (ps) {
          REQUIRE(pb.has_value());
          CHECK(std::includes(pb->begin(), pb->end(), ps->begin(), ps->end()));
        }
      }
  }
}
