#include "casemark/eval.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <fstream>

#include "casemark/error.hpp"
#include "casemark/parallel.hpp"

namespace casemark {

namespace {

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError(fmt::format("cannot write '{}'", path.string()));
  return out;
}

std::string prf_cells(const PRF& p) {
  return fmt::format("{:.2f}\t{:.2f}\t{:.2f}", p.precision, p.recall, p.f1);
}

}  // namespace

PRF score(const std::set<std::string>& predicted, const std::set<std::string>& gold) {
  if (predicted.empty() && gold.empty()) return {1.0, 1.0, 1.0};
  std::size_t hits = 0;
  for (const auto& g : predicted) hits += gold.contains(g);
  PRF out;
  out.precision = predicted.empty() ? 0.0 : static_cast<double>(hits) / static_cast<double>(predicted.size());
  out.recall = gold.empty() ? 0.0 : static_cast<double>(hits) / static_cast<double>(gold.size());
  const double sum = out.precision + out.recall;
  out.f1 = sum > 0.0 ? 2.0 * out.precision * out.recall / sum : 0.0;
  return out;
}

PRF macro_average(std::span<const PRF> per_language) {
  if (per_language.empty()) throw DomainError("macro_average of an empty list");
  PRF out;
  for (const auto& p : per_language) {
    out.precision += p.precision;
    out.recall += p.recall;
    out.f1 += p.f1;
  }
  const double n = static_cast<double>(per_language.size());
  out.precision /= n;
  out.recall /= n;
  out.f1 /= n;
  return out;
}

DiffReport diff_report(const std::set<std::string>& predicted, const std::set<std::string>& gold) {
  DiffReport d;
  std::set_intersection(predicted.begin(), predicted.end(), gold.begin(), gold.end(),
                        std::inserter(d.intersection, d.intersection.end()));
  std::set_difference(predicted.begin(), predicted.end(), gold.begin(), gold.end(),
                      std::inserter(d.predicted_only, d.predicted_only.end()));
  std::set_difference(gold.begin(), gold.end(), predicted.begin(), predicted.end(),
                      std::inserter(d.gold_only, d.gold_only.end()));
  return d;
}

PRF projection_self_eval(const std::set<std::string>& direct, const std::set<std::string>& projected) {
  return score(projected, direct);
}

std::vector<LanguageScore> score_languages(const std::map<std::string, std::set<std::string>>& predicted,
                                           const std::map<std::string, std::set<std::string>>& gold) {
  std::vector<LanguageScore> out;
  for (const auto& [language, grams] : predicted) {
    auto it = gold.find(language);
    if (it != gold.end()) out.push_back({language, score(grams, it->second)});
  }
  if (out.empty()) throw ConfigError("nothing to evaluate: no language has both predictions and a silver standard");
  return out;
}

std::vector<AblationRow> run_ablation(const std::map<std::string, WordPartition>& partitions,
                                      const std::map<std::string, std::set<std::string>>& gold,
                                      const PipelineConfig& config, std::span<const Ablation> variants,
                                      unsigned jobs) {
  config.validate();
  std::vector<const WordPartition*> scored;
  for (const auto& [language, partition] : partitions)
    if (gold.contains(language)) scored.push_back(&partition);
  if (scored.empty()) throw ConfigError("nothing to evaluate: no language has both a partition and a silver standard");

  const std::size_t per_variant = scored.size();
  std::vector<std::set<std::string>> predicted(variants.size() * per_variant);
  parallel_for(predicted.size(), jobs, [&](std::size_t i) {
    const PipelineConfig variant_config = config.with(variants[i / per_variant]);
    predicted[i] = extract_markers(*scored[i % per_variant], variant_config).grams();
  });

  std::vector<AblationRow> rows;
  for (std::size_t v = 0; v < variants.size(); ++v) {
    AblationRow row{variants[v], {}, {}};
    std::vector<PRF> prfs;
    for (std::size_t l = 0; l < per_variant; ++l) {
      const auto& language = scored[l]->language;
      row.per_language.push_back({language, score(predicted[v * per_variant + l], gold.at(language))});
      prfs.push_back(row.per_language.back().prf);
    }
    row.macro = macro_average(prfs);
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_results_table(std::span<const LanguageScore> scores, const std::filesystem::path& path) {
  auto out = open_output(path);
  out << "language\tP\tR\tF1\n";
  std::vector<PRF> prfs;
  for (const auto& s : scores) {
    out << s.language << '\t' << prf_cells(s.prf) << '\n';
    prfs.push_back(s.prf);
  }
  if (!prfs.empty()) out << "Average\t" << prf_cells(macro_average(prfs)) << '\n';
}

void write_ablation_table(std::span<const AblationRow> rows, const std::filesystem::path& path) {
  auto out = open_output(path);
  out << "variant\tP\tR\tF1\n";
  for (const auto& r : rows) out << to_string(r.variant) << '\t' << prf_cells(r.macro) << '\n';
}

void write_diff_report(const DiffReport& diff, const std::filesystem::path& path) {
  auto out = open_output(path);
  out << "Intersection\tAlgorithm Only\tSilver Standard Only\n";
  std::vector<std::vector<std::string>> cols{{diff.intersection.begin(), diff.intersection.end()},
                                             {diff.predicted_only.begin(), diff.predicted_only.end()},
                                             {diff.gold_only.begin(), diff.gold_only.end()}};
  const std::size_t rows = std::max({cols[0].size(), cols[1].size(), cols[2].size()});
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < 3; ++c) out << (c ? "\t" : "") << (r < cols[c].size() ? cols[c][r] : "");
    out << '\n';
  }
}

}  // namespace casemark
