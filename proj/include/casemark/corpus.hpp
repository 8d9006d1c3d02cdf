#pragma once

#include <compare>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace casemark {

using VerseId = std::string;
using Verse = std::vector<std::string>;
using TokenIndex = std::uint32_t;

/// A language version of the corpus, named `<language>-<edition>`.
struct VersionId {
  std::string language;
  std::string edition;

  /// Splits at the first '-'; throws ParseError if either part is empty.
  static VersionId parse(std::string_view name);
  /// Parses the stem of a `<language>-<edition>.txt` file name.
  static VersionId from_path(const std::filesystem::path& path);

  std::string str() const { return language + "-" + edition; }

  auto operator<=>(const VersionId&) const = default;
  bool operator==(const VersionId&) const = default;
};

/// Verse-parallel corpus restricted to the verses every version shares.
///
/// Verses are stored per version in the order of `shared_verses()`, so a
/// verse position is a valid index into every version.
class ParallelCorpus {
 public:
  ParallelCorpus() = default;
  ParallelCorpus(std::vector<VerseId> shared, std::map<VersionId, std::vector<Verse>> versions);

  const std::vector<VerseId>& shared_verses() const { return shared_; }
  std::size_t verse_count() const { return shared_.size(); }

  std::optional<std::size_t> verse_position(std::string_view id) const;

  bool has_version(const VersionId& v) const { return versions_.contains(v); }
  std::vector<VersionId> versions() const;
  std::vector<VersionId> versions_of(std::string_view language) const;
  /// Distinct language codes, sorted.
  std::vector<std::string> languages() const;

  const std::vector<Verse>& verses(const VersionId& v) const;
  const Verse& verse(const VersionId& v, std::size_t position) const;
  const Verse& verse(const VersionId& v, std::string_view id) const;

  bool operator==(const ParallelCorpus& other) const {
    return shared_ == other.shared_ && versions_ == other.versions_;
  }

 private:
  std::vector<VerseId> shared_;
  std::unordered_map<VerseId, std::size_t> position_;
  std::map<VersionId, std::vector<Verse>> versions_;
};

struct LoadOptions {
  std::optional<std::set<VerseId>> verse_allowlist;
};

/// Reads verse files (`<verse-id>\t<token token ...>`) and intersects their verse sets.
///
/// Lines starting with '#' are comments. A verse line with no text counts as
/// absent from that version. Tokens are NFC-normalized.
ParallelCorpus load_corpus(const std::vector<std::filesystem::path>& version_paths,
                           const LoadOptions& options = {});

/// Writes one version back out in the verse file format.
void write_version(const ParallelCorpus& corpus, const VersionId& version,
                   const std::filesystem::path& path);

/// Word links between one source version and one target version.
struct Alignment {
  VersionId source;
  VersionId target;
  /// Indexed by shared verse position; sorted, duplicate-free (source, target) pairs.
  std::vector<std::vector<std::pair<TokenIndex, TokenIndex>>> links;
};

/// Reads `# <source> <target>` followed by `<verse-id>\t<i-j i-j ...>` lines.
Alignment load_alignment(const std::filesystem::path& path, const ParallelCorpus& corpus);

/// Half-open token range [begin, end).
struct TokenSpan {
  TokenIndex begin = 0;
  TokenIndex end = 0;
  auto operator<=>(const TokenSpan&) const = default;
};

struct NpAnnotation {
  VersionId version;
  /// Indexed by shared verse position; sorted by begin, non-overlapping.
  std::vector<std::vector<TokenSpan>> spans;
};

/// Reads `<verse-id>\t<start:end start:end ...>` lines. The version comes from
/// a `# <version>` header line, or from the file stem when there is none.
NpAnnotation load_np_annotation(const std::filesystem::path& path, const ParallelCorpus& corpus);

}  // namespace casemark
