#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "casemark/extraction.hpp"

namespace casemark {

struct AnalysisOptions {
  std::vector<std::string> languages;       ///< languages keyed in the marker-combination report
  std::size_t samples = 5;                  ///< sample NPs printed per group
  std::set<std::string> matrix_languages;   ///< empty = all
};

/// Everything a CLI run needs. Relative paths in a config file resolve against its directory.
struct RunConfig {
  std::vector<std::filesystem::path> corpus;  ///< verse files or directories of `*.txt`
  std::optional<std::filesystem::path> verse_allowlist;
  std::vector<std::filesystem::path> alignments;
  std::vector<std::filesystem::path> annotations;
  std::vector<std::filesystem::path> direct_annotations;
  std::map<std::string, std::filesystem::path> unimorph;  ///< language -> UniMorph TSV
  std::set<std::string> silver_languages;                 ///< empty = every UniMorph language
  std::string source_language = "eng";

  PipelineConfig pipeline;
  std::optional<Ablation> ablation;

  std::filesystem::path output = "out";
  unsigned jobs = 0;

  std::optional<std::filesystem::path> predicted_dir;  ///< default <output>/markers
  std::optional<std::filesystem::path> silver_dir;     ///< default <output>/silver

  AnalysisOptions analysis;
};

/// Parses a JSON run configuration. Throws ConfigError on unknown keys or bad values.
RunConfig load_run_config(const std::filesystem::path& path);

/// Expands directories into their regular files (sorted), keeping only `extension` when given.
std::vector<std::filesystem::path> expand_paths(const std::vector<std::filesystem::path>& paths,
                                                const std::string& extension = "");

/// Throws ConfigError naming the first referenced path that does not exist.
void check_paths_exist(const RunConfig& config);

}  // namespace casemark
