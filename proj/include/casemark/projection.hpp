#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "casemark/corpus.hpp"

namespace casemark {

/// Token positions of one NP within a verse; sorted, unique, possibly discontiguous.
using TokenSet = std::vector<TokenIndex>;

struct NpSpan {
  std::size_t verse = 0;  ///< shared verse position
  TokenSet tokens;
};

/// One NP of an annotated source edition together with its realized translations.
struct ParallelNp {
  std::size_t verse = 0;
  std::uint32_t ordinal = 0;  ///< index of the NP within its source verse
  VersionId source;
  TokenSet source_tokens;
  /// Only nonempty projections are present.
  std::map<VersionId, TokenSet> projections;

  /// Stable identifier `<source>/<verse-id>/<ordinal>`.
  std::string id(const ParallelCorpus& corpus) const;
};

/// The set N plus the editions and versions it was built over.
struct ParallelNpSet {
  std::vector<VersionId> sources;
  std::vector<VersionId> targets;
  std::vector<ParallelNp> nps;  ///< ordered by (source, verse, ordinal)
};

/// Target indices aligned to any token of the span, ascending; nullopt if none is aligned.
std::optional<TokenSet> project_span(const TokenSet& span,
                                     const std::vector<std::pair<TokenIndex, TokenIndex>>& verse_links);
std::optional<NpSpan> project_span(const NpSpan& span, const Alignment& alignment, const Verse& target_verse);

/// Projects every annotated NP of every source edition onto `targets`
/// (default: every version that is not annotated). Each edition stays a separate copy.
/// Throws ConfigError when an alignment for a (source, target) pair is missing.
ParallelNpSet build_parallel_np_set(const ParallelCorpus& corpus, std::span<const NpAnnotation> annotations,
                                    std::span<const Alignment> alignments,
                                    std::optional<std::vector<VersionId>> targets = std::nullopt);

/// W_inside / W_outside for one language; keys are word types.
struct InsideOutsideCounts {
  std::string language;
  std::map<std::string, std::uint64_t> inside;
  std::map<std::string, std::uint64_t> outside;

  std::uint64_t inside_of(const std::string& word) const;
  std::uint64_t outside_of(const std::string& word) const;
  std::uint64_t total_inside() const;
  std::uint64_t total_outside() const;

  InsideOutsideCounts& operator+=(const InsideOutsideCounts& other);
};

/// Counts every token of every version of `language` once per annotated copy:
/// inside if any NP of that copy covers it, outside otherwise. A source edition
/// is its own projection; other source editions of the same language
/// contribute only through an explicit alignment target.
InsideOutsideCounts build_inside_outside(const ParallelCorpus& corpus, const ParallelNpSet& nps,
                                         const std::string& language);

/// Counts from a direct (non-projected) annotation of a single version.
InsideOutsideCounts build_inside_outside(const ParallelCorpus& corpus, const NpAnnotation& direct);

struct WordPartition {
  std::string language;
  std::set<std::string> np_relevant;    ///< I_l
  std::set<std::string> np_irrelevant;  ///< O_l
};

/// w goes to I_l iff inside(w) > outside(w); ties go to O_l.
WordPartition partition_word_types(const InsideOutsideCounts& counts);

/// `<verse-id>\t<version>\t<idx,idx,...>\t<surface text>`; the source line precedes its projections.
void write_parallel_np_set(const ParallelCorpus& corpus, const ParallelNpSet& nps, const std::filesystem::path& path);

std::string surface(const Verse& verse, const TokenSet& tokens);

}  // namespace casemark
