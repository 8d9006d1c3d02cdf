#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "casemark/corpus.hpp"
#include "casemark/projection.hpp"
#include "casemark/stats.hpp"

namespace casemark {

inline constexpr char kBoundary = '$';

enum class GramPosition { Suffix, Prefix, Interior };

/// Suffix: ends in '$' (whole words `$w$` included). Prefix: starts with '$' only.
GramPosition position_of(std::string_view gram);

/// Pipeline variants matching the ablation grid.
enum class Ablation { Baseline, NoTheta, NoPhi, NoChi, Middle, Beginning };

std::string_view to_string(Ablation a);
Ablation parse_ablation(std::string_view name);
inline constexpr Ablation kAllAblations[] = {Ablation::Baseline, Ablation::NoTheta, Ablation::NoPhi,
                                             Ablation::NoChi,    Ablation::Middle,  Ablation::Beginning};

struct LanguageFilter {
  std::set<std::string> allow;  ///< empty = everything
  std::set<std::string> deny;
  bool admits(const std::string& language) const {
    return !deny.contains(language) && (allow.empty() || allow.contains(language));
  }
};

struct PipelineConfig {
  std::uint64_t theta = 97;
  double phi = 0.08;
  double chi = 0.34;
  bool suffix_only = true;

  bool use_theta = true;
  bool use_phi = true;
  bool use_chi = true;
  bool admit_interior = false;  ///< "middle" ablation
  bool admit_prefix = false;    ///< "beginning" ablation
  std::size_t max_gram_length = 0;  ///< in code points excluding '$'; 0 = unbounded

  LanguageFilter languages;

  /// Throws ConfigError when a threshold is out of range.
  void validate() const;
  PipelineConfig with(Ablation variant) const;
  bool admits(GramPosition position) const;
};

struct GramCounts {
  std::uint64_t inside = 0;   ///< I_l(c): word types of I_l containing the gram
  std::uint64_t outside = 0;  ///< O_l(c)
};

using CandidateCounts = std::unordered_map<std::string, GramCounts>;

struct CandidateMarker {
  std::string gram;
  std::uint64_t inside_count = 0;
  std::uint64_t outside_count = 0;
  std::optional<double> p_value;
  std::optional<double> odds_ratio;
};

struct StageSizes {
  std::size_t np_relevant = 0;
  std::size_t np_irrelevant = 0;
  std::size_t c1 = 0;
  std::size_t c2 = 0;
  std::size_t tested = 0;  ///< survivors of the inside/outside filter
  std::size_t final = 0;
};

struct MarkerSet {
  std::string language;
  std::vector<CandidateMarker> markers;  ///< sorted by gram
  StageSizes sizes;
  std::string config_snapshot;  ///< JSON
  std::string corpus_fingerprint;

  std::set<std::string> grams() const;
};

/// Distinct substrings of `$word$` containing at least one non-'$' character.
/// `max_length` caps the non-'$' code points of a gram (0 = no cap).
std::vector<std::string> candidates_of_word(std::string_view word, std::size_t max_length = 0);

/// Domain is C_1 (grams of I_l words); each word type adds at most one per gram.
CandidateCounts build_candidate_counts(const std::set<std::string>& np_relevant,
                                       const std::set<std::string>& np_irrelevant, std::size_t max_length = 0);

/// C_2 = grams with inside count >= theta, sorted.
std::vector<std::string> frequency_filter(const CandidateCounts& counts, std::uint64_t theta);

/// [I(c), sum of I over the rest of C_2; O(c), sum of O over the rest of C_2].
ContingencyTable contingency_for(const std::string& gram, std::span<const std::string> c2,
                                 const CandidateCounts& counts);

/// Keeps grams with p < phi and r > chi (each test only when enabled). Records p and r.
std::vector<CandidateMarker> inside_outside_filter(std::span<const std::string> c2, const CandidateCounts& counts,
                                                   const PipelineConfig& config);

/// Grams ending in '$'.
std::vector<std::string> suffix_restrict(std::span<const std::string> grams);

/// Candidate stages for one language, given its I_l / O_l partition.
MarkerSet extract_markers(const WordPartition& partition, const PipelineConfig& config);

/// Projection -> partition -> candidates -> filters for every admitted language.
/// `jobs` bounds the number of languages processed concurrently (0 = hardware threads).
std::map<std::string, MarkerSet> run_pipeline(const ParallelCorpus& corpus, std::span<const NpAnnotation> annotations,
                                              std::span<const Alignment> alignments, const PipelineConfig& config,
                                              unsigned jobs = 0);

/// I_l/O_l for one language: every non-annotated version of it is a projection target.
WordPartition partition_language(const ParallelCorpus& corpus, std::span<const NpAnnotation> annotations,
                                 std::span<const Alignment> alignments, const std::string& language);

/// Per-language I_l/O_l partitions, shared by all ablation variants.
std::map<std::string, WordPartition> partition_languages(const ParallelCorpus& corpus,
                                                         std::span<const NpAnnotation> annotations,
                                                         std::span<const Alignment> alignments,
                                                         const LanguageFilter& languages, unsigned jobs = 0);

std::string config_snapshot(const PipelineConfig& config);

/// `<gram>\t<inside>\t<outside>\t<p>\t<r>` lines in gram order.
void write_marker_set(const MarkerSet& set, const std::filesystem::path& path);
/// Grams of a marker file (first column).
std::set<std::string> read_marker_grams(const std::filesystem::path& path);

}  // namespace casemark
