#pragma once

#include <cstddef>
#include <filesystem>
#include <set>
#include <string>
#include <vector>

namespace casemark {

/// One UniMorph row: `lemma \t form \t feat;feat;...`.
struct ParadigmEntry {
  std::string lemma;
  std::string form;
  std::vector<std::string> features;  ///< POS first
};

struct Paradigm {
  std::string lemma;  ///< citation form, taken as the nominative singular
  std::vector<ParadigmEntry> entries;
};

struct SilverDiagnostics {
  std::size_t paradigms_read = 0;
  std::size_t paradigms_used = 0;  ///< with at least one N/ADJ row
  std::size_t entries_used = 0;
  std::size_t suffixes = 0;
};

struct SilverStandard {
  std::string language;
  std::set<std::string> suffixes;  ///< each ends with '$'; the bare '$' never appears
  SilverDiagnostics diagnostics;
};

/// Paradigms grouped by lemma, sorted by lemma. Blank lines are skipped;
/// lines with fewer than three columns raise ParseError naming file and line.
std::vector<Paradigm> parse_unimorph(const std::filesystem::path& path);

/// Keeps rows whose first feature is N or ADJ; drops paradigms left empty.
std::vector<Paradigm> filter_pos(std::vector<Paradigm> paradigms);

/// Drops forms that occur exactly once (unless that would drop everything),
/// takes the longest common prefix of what is left, and returns the longer of
/// that prefix and the nominative singular (ties favour the nominative).
std::string induce_root(const std::vector<std::string>& forms, const std::string& nominative_singular);

/// Remainders (plus '$') of the forms that start with `root`; empty remainders are skipped.
std::set<std::string> extract_suffixes(const std::vector<std::string>& forms, const std::string& root);

SilverStandard build_silver(const std::vector<Paradigm>& paradigms, const std::string& language);
SilverStandard build_silver(const std::filesystem::path& path, const std::string& language);

/// One suffix per line, sorted.
void write_silver(const SilverStandard& silver, const std::filesystem::path& path);
std::set<std::string> read_silver(const std::filesystem::path& path);

}  // namespace casemark
