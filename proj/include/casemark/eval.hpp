#pragma once

#include <filesystem>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "casemark/extraction.hpp"

namespace casemark {

struct PRF {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

/// Exact-match set scoring. An empty prediction scores (1,1,1) against an
/// empty gold set and (0,0,0) otherwise.
PRF score(const std::set<std::string>& predicted, const std::set<std::string>& gold);

/// Unweighted mean of each field. Throws DomainError on an empty list.
PRF macro_average(std::span<const PRF> per_language);

struct DiffReport {
  std::set<std::string> intersection;
  std::set<std::string> predicted_only;
  std::set<std::string> gold_only;
};

DiffReport diff_report(const std::set<std::string>& predicted, const std::set<std::string>& gold);

/// Scores I_l from projection (predicted) against I_l from a native chunker (gold).
PRF projection_self_eval(const std::set<std::string>& direct, const std::set<std::string>& projected);

struct LanguageScore {
  std::string language;
  PRF prf;
};

/// Scores every language present in both maps; throws ConfigError when none overlap.
std::vector<LanguageScore> score_languages(const std::map<std::string, std::set<std::string>>& predicted,
                                           const std::map<std::string, std::set<std::string>>& gold);

struct AblationRow {
  Ablation variant;
  PRF macro;
  std::vector<LanguageScore> per_language;
};

/// Runs the candidate stages once per variant over shared I_l/O_l partitions
/// and macro-scores each run against the same gold sets.
std::vector<AblationRow> run_ablation(const std::map<std::string, WordPartition>& partitions,
                                      const std::map<std::string, std::set<std::string>>& gold,
                                      const PipelineConfig& config,
                                      std::span<const Ablation> variants = kAllAblations, unsigned jobs = 0);

/// `language\tP\tR\tF1` rows plus a final `Average` row, two decimals.
void write_results_table(std::span<const LanguageScore> scores, const std::filesystem::path& path);
/// `variant\tP\tR\tF1`.
void write_ablation_table(std::span<const AblationRow> rows, const std::filesystem::path& path);
/// Three tab-separated columns (Intersection, Algorithm Only, Silver Standard Only), one gram per cell.
void write_diff_report(const DiffReport& diff, const std::filesystem::path& path);

}  // namespace casemark
