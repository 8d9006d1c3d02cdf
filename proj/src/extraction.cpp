#include "casemark/extraction.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <json.hpp>

#include "casemark/error.hpp"
#include "casemark/fingerprint.hpp"
#include "casemark/parallel.hpp"
#include "casemark/unicode.hpp"

namespace casemark {

namespace {

struct C2Totals {
  std::uint64_t inside = 0;
  std::uint64_t outside = 0;
};

C2Totals totals_of(std::span<const std::string> c2, const CandidateCounts& counts) {
  C2Totals t;
  for (const auto& g : c2) {
    const auto& gc = counts.at(g);
    t.inside += gc.inside;
    t.outside += gc.outside;
  }
  return t;
}

ContingencyTable table_from(const GramCounts& own, const C2Totals& totals) {
  return {own.inside, totals.inside - own.inside, own.outside, totals.outside - own.outside};
}

std::string format_real(const std::optional<double>& v) {
  if (!v) return "NA";
  if (std::isinf(*v)) return "inf";
  return fmt::format("{:.10g}", *v);
}

}  // namespace

GramPosition position_of(std::string_view gram) {
  if (!gram.empty() && gram.back() == kBoundary) return GramPosition::Suffix;
  if (!gram.empty() && gram.front() == kBoundary) return GramPosition::Prefix;
  return GramPosition::Interior;
}

std::string_view to_string(Ablation a) {
  switch (a) {
    case Ablation::Baseline: return "baseline";
    case Ablation::NoTheta: return "no_theta";
    case Ablation::NoPhi: return "no_phi";
    case Ablation::NoChi: return "no_chi";
    case Ablation::Middle: return "middle";
    case Ablation::Beginning: return "beginning";
  }
  return "?";
}

Ablation parse_ablation(std::string_view name) {
  for (Ablation a : kAllAblations)
    if (to_string(a) == name) return a;
  throw ConfigError(fmt::format("unknown ablation variant '{}'", name));
}

void PipelineConfig::validate() const {
  if (theta < 1) throw ConfigError("theta must be a positive integer");
  if (!(phi > 0.0 && phi < 1.0)) throw ConfigError("phi must lie in (0, 1)");
  if (!(chi >= 0.0) || std::isinf(chi)) throw ConfigError("chi must be a nonnegative real");
}

PipelineConfig PipelineConfig::with(Ablation variant) const {
  PipelineConfig c = *this;
  switch (variant) {
    case Ablation::Baseline: break;
    case Ablation::NoTheta: c.use_theta = false; break;
    case Ablation::NoPhi: c.use_phi = false; break;
    case Ablation::NoChi: c.use_chi = false; break;
    case Ablation::Middle: c.admit_interior = true; break;
    case Ablation::Beginning: c.admit_prefix = true; break;
  }
  return c;
}

bool PipelineConfig::admits(GramPosition position) const {
  switch (position) {
    case GramPosition::Suffix: return true;
    case GramPosition::Interior: return !suffix_only || admit_interior;
    case GramPosition::Prefix: return !suffix_only || admit_prefix;
  }
  return false;
}

std::set<std::string> MarkerSet::grams() const {
  std::set<std::string> out;
  for (const auto& m : markers) out.insert(m.gram);
  return out;
}

std::vector<std::string> candidates_of_word(std::string_view word, std::size_t max_length) {
  std::string wrapped;
  wrapped.reserve(word.size() + 2);
  wrapped += kBoundary;
  wrapped += word;
  wrapped += kBoundary;
  const auto cuts = unicode::boundaries(wrapped);
  const std::size_t chars = cuts.size() - 1;

  std::vector<std::string> out;
  for (std::size_t i = 0; i < chars; ++i) {
    for (std::size_t j = i + 1; j <= chars; ++j) {
      std::size_t inner = j - i;
      if (i == 0) --inner;
      if (j == chars) --inner;
      if (j - i == 1 && (i == 0 || j == chars)) continue;  // a lone '$'
      if (max_length && inner > max_length) {
        if (i != 0) break;  // longer grams from here only grow
        continue;
      }
      out.emplace_back(wrapped.substr(cuts[i], cuts[j] - cuts[i]));
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

CandidateCounts build_candidate_counts(const std::set<std::string>& np_relevant,
                                       const std::set<std::string>& np_irrelevant, std::size_t max_length) {
  CandidateCounts counts;
  for (const auto& w : np_relevant)
    for (auto& g : candidates_of_word(w, max_length)) ++counts[std::move(g)].inside;
  for (const auto& w : np_irrelevant)
    for (const auto& g : candidates_of_word(w, max_length)) {
      auto it = counts.find(g);
      if (it != counts.end()) ++it->second.outside;
    }
  return counts;
}

std::vector<std::string> frequency_filter(const CandidateCounts& counts, std::uint64_t theta) {
  std::vector<std::string> out;
  for (const auto& [g, c] : counts)
    if (c.inside >= theta) out.push_back(g);
  std::sort(out.begin(), out.end());
  return out;
}

ContingencyTable contingency_for(const std::string& gram, std::span<const std::string> c2,
                                 const CandidateCounts& counts) {
  if (std::find(c2.begin(), c2.end(), gram) == c2.end())
    throw DomainError(fmt::format("'{}' is not a member of C_2", gram));
  return table_from(counts.at(gram), totals_of(c2, counts));
}

std::vector<CandidateMarker> inside_outside_filter(std::span<const std::string> c2, const CandidateCounts& counts,
                                                   const PipelineConfig& config) {
  const C2Totals totals = totals_of(c2, counts);
  std::vector<CandidateMarker> kept;
  for (const auto& g : c2) {
    const GramCounts& own = counts.at(g);
    const ContingencyTable table = table_from(own, totals);
    CandidateMarker m{g, own.inside, own.outside, std::nullopt, try_odds_ratio(table)};
    if (table.total() > 0) m.p_value = fisher_exact_two_sided(table);

    if (config.use_phi && !(m.p_value && *m.p_value < config.phi)) continue;
    if (config.use_chi && !(m.odds_ratio && *m.odds_ratio > config.chi)) continue;
    kept.push_back(std::move(m));
  }
  return kept;
}

std::vector<std::string> suffix_restrict(std::span<const std::string> grams) {
  std::vector<std::string> out;
  for (const auto& g : grams)
    if (position_of(g) == GramPosition::Suffix) out.push_back(g);
  return out;
}

MarkerSet extract_markers(const WordPartition& partition, const PipelineConfig& config) {
  MarkerSet set;
  set.language = partition.language;
  set.config_snapshot = config_snapshot(config);
  set.sizes.np_relevant = partition.np_relevant.size();
  set.sizes.np_irrelevant = partition.np_irrelevant.size();

  const CandidateCounts counts =
      build_candidate_counts(partition.np_relevant, partition.np_irrelevant, config.max_gram_length);
  set.sizes.c1 = counts.size();
  const auto c2 = frequency_filter(counts, config.use_theta ? config.theta : 1);
  set.sizes.c2 = c2.size();
  auto tested = inside_outside_filter(c2, counts, config);
  set.sizes.tested = tested.size();
  for (auto& m : tested)
    if (config.admits(position_of(m.gram))) set.markers.push_back(std::move(m));
  set.sizes.final = set.markers.size();
  return set;
}

WordPartition partition_language(const ParallelCorpus& corpus, std::span<const NpAnnotation> annotations,
                                 std::span<const Alignment> alignments, const std::string& language) {
  std::set<VersionId> sources;
  for (const auto& a : annotations) sources.insert(a.version);
  std::vector<VersionId> targets;
  for (const auto& v : corpus.versions_of(language))
    if (!sources.contains(v)) targets.push_back(v);
  const auto nps = build_parallel_np_set(corpus, annotations, alignments, std::move(targets));
  return partition_word_types(build_inside_outside(corpus, nps, language));
}

std::map<std::string, WordPartition> partition_languages(const ParallelCorpus& corpus,
                                                         std::span<const NpAnnotation> annotations,
                                                         std::span<const Alignment> alignments,
                                                         const LanguageFilter& languages, unsigned jobs) {
  std::vector<std::string> todo;
  for (const auto& l : corpus.languages())
    if (languages.admits(l)) todo.push_back(l);

  std::vector<WordPartition> results(todo.size());
  parallel_for(todo.size(), jobs, [&](std::size_t i) {
    results[i] = partition_language(corpus, annotations, alignments, todo[i]);
  });

  std::map<std::string, WordPartition> out;
  for (std::size_t i = 0; i < todo.size(); ++i) out.emplace(todo[i], std::move(results[i]));
  return out;
}

std::map<std::string, MarkerSet> run_pipeline(const ParallelCorpus& corpus, std::span<const NpAnnotation> annotations,
                                              std::span<const Alignment> alignments, const PipelineConfig& config,
                                              unsigned jobs) {
  config.validate();
  const auto partitions = partition_languages(corpus, annotations, alignments, config.languages, jobs);
  const std::string fingerprint = corpus_fingerprint(corpus);

  std::vector<const WordPartition*> todo;
  for (const auto& [_, p] : partitions) todo.push_back(&p);
  std::vector<MarkerSet> results(todo.size());
  parallel_for(todo.size(), jobs, [&](std::size_t i) {
    results[i] = extract_markers(*todo[i], config);
    results[i].corpus_fingerprint = fingerprint;
  });

  std::map<std::string, MarkerSet> out;
  for (auto& r : results) out.emplace(r.language, std::move(r));
  return out;
}

std::string config_snapshot(const PipelineConfig& config) {
  nlohmann::ordered_json j;
  j["theta"] = config.theta;
  j["phi"] = config.phi;
  j["chi"] = config.chi;
  j["suffix_only"] = config.suffix_only;
  j["use_theta"] = config.use_theta;
  j["use_phi"] = config.use_phi;
  j["use_chi"] = config.use_chi;
  j["admit_interior"] = config.admit_interior;
  j["admit_prefix"] = config.admit_prefix;
  j["max_gram_length"] = config.max_gram_length;
  j["languages"] = {{"allow", config.languages.allow}, {"deny", config.languages.deny}};
  return j.dump();
}

void write_marker_set(const MarkerSet& set, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError(fmt::format("cannot write '{}'", path.string()));
  for (const auto& m : set.markers)
    out << m.gram << '\t' << m.inside_count << '\t' << m.outside_count << '\t' << format_real(m.p_value) << '\t'
        << format_real(m.odds_ratio) << '\n';
  if (!out) throw ConfigError(fmt::format("write to '{}' failed", path.string()));
}

std::set<std::string> read_marker_grams(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(fmt::format("cannot open '{}'", path.string()));
  std::set<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    out.insert(line.substr(0, line.find('\t')));
  }
  return out;
}

}  // namespace casemark
