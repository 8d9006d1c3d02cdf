#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "casemark/corpus.hpp"
#include "casemark/projection.hpp"

namespace casemark {

/// Longest marker that `$word$` ends with, or nullopt.
std::optional<std::string> assign_marker(std::string_view word, const std::set<std::string>& markers);

struct MarkerCombinationGroup {
  /// One entry per requested language, in request order; nullopt = no marker or no projection.
  std::vector<std::optional<std::string>> key;
  std::vector<std::size_t> members;  ///< indices into ParallelNpSet::nps
};

/// The word of `np` inspected for `language`: the last token of the source span
/// (source language) or of the first projection into a version of that language.
std::optional<std::string> head_word(const ParallelCorpus& corpus, const ParallelNp& np, const std::string& language);

/// Groups NPs by their per-language head-word markers; largest groups first.
/// Throws ConfigError if a requested language has no marker set.
std::vector<MarkerCombinationGroup> group_by_marker_combination(
    const ParallelCorpus& corpus, const ParallelNpSet& nps,
    const std::map<std::string, std::set<std::string>>& marker_sets, const std::vector<std::string>& languages);

void write_group_report(const ParallelCorpus& corpus, const ParallelNpSet& nps,
                        const std::vector<std::string>& languages, const std::vector<MarkerCombinationGroup>& groups,
                        std::size_t samples, const std::filesystem::path& path);

/// Sparse word-form x NP counts; rows `language:form` and columns NP ids, both sorted.
struct CooccurrenceMatrix {
  std::vector<std::string> rows;
  std::vector<std::string> cols;
  std::vector<std::string> col_surface;  ///< source-language text of each column's NP
  std::map<std::pair<std::size_t, std::size_t>, std::uint64_t> cells;

  std::uint64_t at(std::size_t row, std::size_t col) const;
};

/// `languages` empty = every language, the source language included.
CooccurrenceMatrix build_cooccurrence_matrix(const ParallelCorpus& corpus, const ParallelNpSet& nps,
                                             const std::set<std::string>& languages = {});

/// Writes `matrix.tsv` (row_idx, col_idx, count), `rows.txt` and `cols.txt` into `directory`.
void export_matrix(const CooccurrenceMatrix& matrix, const std::filesystem::path& directory);

}  // namespace casemark
