#include "casemark/projection.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <fstream>
#include <unordered_map>

#include "casemark/error.hpp"

namespace casemark {

namespace {

// Token -> dense type id for all versions of one language.
struct Vocabulary {
  std::unordered_map<std::string, std::uint32_t> ids;
  std::vector<std::string> words;

  std::uint32_t intern(const std::string& w) {
    auto [it, inserted] = ids.try_emplace(w, static_cast<std::uint32_t>(words.size()));
    if (inserted) words.push_back(w);
    return it->second;
  }
};

using VerseTypeIds = std::vector<std::vector<std::uint32_t>>;

VerseTypeIds intern_version(const std::vector<Verse>& verses, Vocabulary& vocab) {
  VerseTypeIds out(verses.size());
  for (std::size_t i = 0; i < verses.size(); ++i) {
    out[i].reserve(verses[i].size());
    for (const auto& tok : verses[i]) out[i].push_back(vocab.intern(tok));
  }
  return out;
}

InsideOutsideCounts to_counts(const std::string& language, const Vocabulary& vocab,
                              const std::vector<std::uint64_t>& inside, const std::vector<std::uint64_t>& outside) {
  InsideOutsideCounts counts;
  counts.language = language;
  for (std::size_t id = 0; id < vocab.words.size(); ++id) {
    if (inside[id]) counts.inside.emplace(vocab.words[id], inside[id]);
    if (outside[id]) counts.outside.emplace(vocab.words[id], outside[id]);
  }
  return counts;
}

void accumulate(const VerseTypeIds& ids, const std::vector<std::vector<char>>& covered,
                std::vector<std::uint64_t>& inside, std::vector<std::uint64_t>& outside) {
  for (std::size_t v = 0; v < ids.size(); ++v)
    for (std::size_t t = 0; t < ids[v].size(); ++t) ++(covered[v][t] ? inside : outside)[ids[v][t]];
}

std::vector<std::vector<char>> empty_cover(const std::vector<Verse>& verses) {
  std::vector<std::vector<char>> cover(verses.size());
  for (std::size_t i = 0; i < verses.size(); ++i) cover[i].assign(verses[i].size(), 0);
  return cover;
}

}  // namespace

std::string ParallelNp::id(const ParallelCorpus& corpus) const {
  return fmt::format("{}/{}/{}", source.str(), corpus.shared_verses().at(verse), ordinal);
}

std::optional<TokenSet> project_span(const TokenSet& span,
                                     const std::vector<std::pair<TokenIndex, TokenIndex>>& verse_links) {
  TokenSet out;
  for (TokenIndex s : span) {
    auto it = std::lower_bound(verse_links.begin(), verse_links.end(), std::make_pair(s, TokenIndex{0}));
    for (; it != verse_links.end() && it->first == s; ++it) out.push_back(it->second);
  }
  if (out.empty()) return std::nullopt;
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::optional<NpSpan> project_span(const NpSpan& span, const Alignment& alignment, const Verse& target_verse) {
  auto projected = project_span(span.tokens, alignment.links.at(span.verse));
  if (!projected) return std::nullopt;
  if (projected->back() >= target_verse.size())
    throw ConfigError(fmt::format("alignment {} -> {} points past the target verse", alignment.source.str(),
                                  alignment.target.str()));
  return NpSpan{span.verse, std::move(*projected)};
}

ParallelNpSet build_parallel_np_set(const ParallelCorpus& corpus, std::span<const NpAnnotation> annotations,
                                    std::span<const Alignment> alignments,
                                    std::optional<std::vector<VersionId>> targets) {
  ParallelNpSet set;
  std::map<VersionId, const NpAnnotation*> by_source;
  for (const auto& a : annotations) {
    if (!by_source.emplace(a.version, &a).second)
      throw ConfigError(fmt::format("edition '{}' annotated twice", a.version.str()));
  }
  for (const auto& [v, _] : by_source) set.sources.push_back(v);

  if (targets) {
    set.targets = std::move(*targets);
    std::sort(set.targets.begin(), set.targets.end());
    set.targets.erase(std::unique(set.targets.begin(), set.targets.end()), set.targets.end());
  } else {
    for (const auto& v : corpus.versions())
      if (!by_source.contains(v)) set.targets.push_back(v);
  }

  std::map<std::pair<VersionId, VersionId>, const Alignment*> by_pair;
  for (const auto& a : alignments) by_pair[{a.source, a.target}] = &a;

  for (const auto& [source, annotation] : by_source) {
    std::vector<std::pair<VersionId, const Alignment*>> routes;
    for (const auto& target : set.targets) {
      if (target == source) continue;
      auto it = by_pair.find({source, target});
      if (it == by_pair.end())
        throw ConfigError(fmt::format("missing alignment {} -> {}", source.str(), target.str()));
      routes.emplace_back(target, it->second);
    }

    for (std::size_t verse = 0; verse < annotation->spans.size(); ++verse) {
      const auto& spans = annotation->spans[verse];
      for (std::size_t k = 0; k < spans.size(); ++k) {
        ParallelNp np;
        np.verse = verse;
        np.ordinal = static_cast<std::uint32_t>(k);
        np.source = source;
        for (TokenIndex t = spans[k].begin; t < spans[k].end; ++t) np.source_tokens.push_back(t);
        for (const auto& [target, alignment] : routes) {
          auto projected = project_span(np.source_tokens, alignment->links[verse]);
          if (projected) np.projections.emplace(target, std::move(*projected));
        }
        set.nps.push_back(std::move(np));
      }
    }
  }
  return set;
}

std::uint64_t InsideOutsideCounts::inside_of(const std::string& word) const {
  auto it = inside.find(word);
  return it == inside.end() ? 0 : it->second;
}

std::uint64_t InsideOutsideCounts::outside_of(const std::string& word) const {
  auto it = outside.find(word);
  return it == outside.end() ? 0 : it->second;
}

std::uint64_t InsideOutsideCounts::total_inside() const {
  std::uint64_t n = 0;
  for (const auto& [_, c] : inside) n += c;
  return n;
}

std::uint64_t InsideOutsideCounts::total_outside() const {
  std::uint64_t n = 0;
  for (const auto& [_, c] : outside) n += c;
  return n;
}

InsideOutsideCounts& InsideOutsideCounts::operator+=(const InsideOutsideCounts& other) {
  for (const auto& [w, c] : other.inside) inside[w] += c;
  for (const auto& [w, c] : other.outside) outside[w] += c;
  return *this;
}

InsideOutsideCounts build_inside_outside(const ParallelCorpus& corpus, const ParallelNpSet& nps,
                                         const std::string& language) {
  Vocabulary vocab;
  std::map<VersionId, VerseTypeIds> ids;
  for (const auto& v : corpus.versions_of(language)) ids.emplace(v, intern_version(corpus.verses(v), vocab));

  std::vector<std::uint64_t> inside(vocab.words.size(), 0);
  std::vector<std::uint64_t> outside(vocab.words.size(), 0);

  for (const auto& copy : nps.sources) {
    auto [first, last] = std::equal_range(nps.nps.begin(), nps.nps.end(), copy,
                                          [](const auto& lhs, const auto& rhs) {
                                            if constexpr (std::is_same_v<std::decay_t<decltype(lhs)>, ParallelNp>)
                                              return lhs.source < rhs;
                                            else
                                              return lhs < rhs.source;
                                          });
    for (const auto& [version, version_ids] : ids) {
      const bool identity = version == copy;
      if (!identity && !std::binary_search(nps.targets.begin(), nps.targets.end(), version)) continue;

      auto cover = empty_cover(corpus.verses(version));
      for (auto it = first; it != last; ++it) {
        const TokenSet* tokens = &it->source_tokens;
        if (!identity) {
          auto p = it->projections.find(version);
          if (p == it->projections.end()) continue;
          tokens = &p->second;
        }
        for (TokenIndex t : *tokens) cover[it->verse][t] = 1;
      }
      accumulate(version_ids, cover, inside, outside);
    }
  }
  return to_counts(language, vocab, inside, outside);
}

InsideOutsideCounts build_inside_outside(const ParallelCorpus& corpus, const NpAnnotation& direct) {
  Vocabulary vocab;
  const auto& verses = corpus.verses(direct.version);
  auto version_ids = intern_version(verses, vocab);
  auto cover = empty_cover(verses);
  for (std::size_t v = 0; v < direct.spans.size(); ++v)
    for (const auto& span : direct.spans[v])
      for (TokenIndex t = span.begin; t < span.end; ++t) cover[v][t] = 1;

  std::vector<std::uint64_t> inside(vocab.words.size(), 0);
  std::vector<std::uint64_t> outside(vocab.words.size(), 0);
  accumulate(version_ids, cover, inside, outside);
  return to_counts(direct.version.language, vocab, inside, outside);
}

WordPartition partition_word_types(const InsideOutsideCounts& counts) {
  WordPartition partition;
  partition.language = counts.language;
  for (const auto& [w, in] : counts.inside) {
    if (in > counts.outside_of(w))
      partition.np_relevant.insert(w);
    else
      partition.np_irrelevant.insert(w);
  }
  for (const auto& [w, out] : counts.outside)
    if (out > 0 && !counts.inside.contains(w)) partition.np_irrelevant.insert(w);
  return partition;
}

std::string surface(const Verse& verse, const TokenSet& tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out += ' ';
    out += verse.at(tokens[i]);
  }
  return out;
}

void write_parallel_np_set(const ParallelCorpus& corpus, const ParallelNpSet& nps, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError(fmt::format("cannot write '{}'", path.string()));
  auto line = [&](std::size_t verse, const VersionId& version, const TokenSet& tokens) {
    out << corpus.shared_verses()[verse] << '\t' << version.str() << '\t';
    for (std::size_t i = 0; i < tokens.size(); ++i) out << (i ? "," : "") << tokens[i];
    out << '\t' << surface(corpus.verse(version, verse), tokens) << '\n';
  };
  for (const auto& np : nps.nps) {
    line(np.verse, np.source, np.source_tokens);
    for (const auto& [version, tokens] : np.projections) line(np.verse, version, tokens);
  }
  if (!out) throw ConfigError(fmt::format("write to '{}' failed", path.string()));
}

}  // namespace casemark
