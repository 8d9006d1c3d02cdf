#include "casemark/commands.hpp"

#include <fmt/format.h>

#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "casemark/analysis.hpp"
#include "casemark/error.hpp"
#include "casemark/eval.hpp"
#include "casemark/fingerprint.hpp"
#include "casemark/parallel.hpp"
#include "casemark/projection.hpp"
#include "casemark/silver.hpp"

namespace casemark {

namespace fs = std::filesystem;

namespace {

void make_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw ConfigError(fmt::format("cannot create '{}': {}", dir.string(), ec.message()));
}

std::set<VerseId> read_allowlist(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(fmt::format("cannot open '{}'", path.string()));
  std::set<VerseId> out;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty() && line.front() != '#') out.insert(line.substr(0, line.find('\t')));
  }
  return out;
}

// Versions named in an alignment header, without parsing the body.
std::vector<VersionId> alignment_versions(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(fmt::format("cannot open '{}'", path.string()));
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line.front() != '#') break;
    std::istringstream names(line.substr(1));
    std::string a, b;
    if (names >> a >> b) return {VersionId::parse(a), VersionId::parse(b)};
    break;
  }
  throw ParseError(fmt::format("{}:1: missing '# <source> <target>' header", path.string()));
}

fs::path predicted_dir(const RunConfig& c) { return c.predicted_dir.value_or(c.output / "markers"); }
fs::path silver_dir(const RunConfig& c) { return c.silver_dir.value_or(c.output / "silver"); }

std::map<std::string, std::set<std::string>> read_predictions(const fs::path& dir) {
  std::map<std::string, std::set<std::string>> out;
  if (!fs::is_directory(dir)) return out;
  for (const auto& p : expand_paths({dir}, ".tsv")) out.emplace(p.stem().string(), read_marker_grams(p));
  return out;
}

PipelineConfig effective_pipeline(const RunConfig& c) {
  return c.ablation ? c.pipeline.with(*c.ablation) : c.pipeline;
}

template <class Fn>
int guarded(std::ostream& log, Fn&& fn) {
  try {
    return fn();
  } catch (const ConfigError& e) {
    log << "configuration error: " << e.what() << '\n';
  } catch (const ParseError& e) {
    log << "parse error: " << e.what() << '\n';
  } catch (const std::exception& e) {
    log << "error: " << e.what() << '\n';
  }
  return kConfigFailure;
}

}  // namespace

RunInputs load_inputs(const RunConfig& config, std::ostream& log) {
  check_paths_exist(config);
  RunInputs in;

  std::vector<fs::path> version_files;
  for (const auto& p : expand_paths(config.corpus, ".txt")) {
    const VersionId v = VersionId::from_path(p);
    if (v.language != config.source_language && !config.pipeline.languages.admits(v.language)) continue;
    version_files.push_back(p);
  }
  LoadOptions options;
  if (config.verse_allowlist) {
    options.verse_allowlist = read_allowlist(*config.verse_allowlist);
    in.files.push_back(*config.verse_allowlist);
  }
  in.corpus = load_corpus(version_files, options);
  in.files.insert(in.files.end(), version_files.begin(), version_files.end());
  log << fmt::format("corpus: {} versions, {} shared verses\n", in.corpus.versions().size(),
                     in.corpus.verse_count());

  for (const auto& p : expand_paths(config.annotations)) {
    in.annotations.push_back(load_np_annotation(p, in.corpus));
    in.files.push_back(p);
  }
  for (const auto& p : expand_paths(config.direct_annotations)) {
    in.direct_annotations.push_back(load_np_annotation(p, in.corpus));
    in.files.push_back(p);
  }
  for (const auto& p : expand_paths(config.alignments)) {
    const auto versions = alignment_versions(p);
    if (!in.corpus.has_version(versions[0]) || !in.corpus.has_version(versions[1])) {
      const bool filtered = !config.pipeline.languages.admits(versions[1].language);
      if (filtered) continue;
      throw ConfigError(fmt::format("{}: references a version that is not loaded", p.string()));
    }
    in.alignments.push_back(load_alignment(p, in.corpus));
    in.files.push_back(p);
  }
  if (in.annotations.empty()) throw ConfigError("no NP annotation files configured");
  return in;
}

std::map<std::string, std::set<std::string>> load_gold(const RunConfig& config, std::ostream& log) {
  std::map<std::string, std::set<std::string>> gold;
  const fs::path dir = silver_dir(config);
  if (fs::is_directory(dir))
    for (const auto& p : expand_paths({dir}, ".txt")) {
      const std::string language = p.stem().string();
      if (config.silver_languages.empty() || config.silver_languages.contains(language))
        gold.emplace(language, read_silver(p));
    }
  if (!gold.empty()) return gold;
  for (const auto& [language, path] : config.unimorph) {
    if (!config.silver_languages.empty() && !config.silver_languages.contains(language)) continue;
    gold.emplace(language, build_silver(path, language).suffixes);
  }
  if (gold.empty()) log << "warning: no silver standards found\n";
  return gold;
}

int cmd_extract(const RunConfig& config, std::ostream& log) {
  return guarded(log, [&] {
    const PipelineConfig pipeline = effective_pipeline(config);
    pipeline.validate();
    const RunInputs in = load_inputs(config, log);
    const std::string fingerprint = corpus_fingerprint(in.corpus);

    std::vector<std::string> languages;
    for (const auto& l : in.corpus.languages())
      if (pipeline.languages.admits(l)) languages.push_back(l);

    std::vector<std::optional<MarkerSet>> results(languages.size());
    std::vector<std::string> failures(languages.size());
    parallel_for(languages.size(), config.jobs, [&](std::size_t i) {
      try {
        auto partition = partition_language(in.corpus, in.annotations, in.alignments, languages[i]);
        results[i] = extract_markers(partition, pipeline);
        results[i]->corpus_fingerprint = fingerprint;
      } catch (const std::exception& e) {
        failures[i] = e.what();
      }
    });

    const fs::path markers_dir = config.output / "markers";
    make_dir(markers_dir);
    nlohmann::ordered_json manifest;
    manifest["command"] = "extract";
    manifest["pipeline"] = nlohmann::ordered_json::parse(config_snapshot(pipeline));
    manifest["ablation"] = config.ablation ? std::string(to_string(*config.ablation)) : "baseline";
    manifest["corpus_fingerprint"] = fingerprint;
    manifest["shared_verses"] = in.corpus.verse_count();
    auto& inputs = manifest["inputs"] = nlohmann::ordered_json::array();
    for (const auto& f : in.files) inputs.push_back({{"path", f.string()}, {"sha256", file_fingerprint(f)}});

    int status = kOk;
    auto& per_language = manifest["languages"] = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < languages.size(); ++i) {
      if (!results[i]) {
        log << fmt::format("{}: failed: {}\n", languages[i], failures[i]);
        per_language[languages[i]] = {{"error", failures[i]}};
        status = kPartialFailure;
        continue;
      }
      const MarkerSet& set = *results[i];
      write_marker_set(set, markers_dir / (languages[i] + ".tsv"));
      per_language[languages[i]] = {{"np_relevant", set.sizes.np_relevant}, {"np_irrelevant", set.sizes.np_irrelevant},
                                    {"c1", set.sizes.c1},                   {"c2", set.sizes.c2},
                                    {"tested", set.sizes.tested},           {"markers", set.sizes.final}};
      log << fmt::format("{}: |I|={} |C1|={} |C2|={} markers={}\n", languages[i], set.sizes.np_relevant, set.sizes.c1,
                         set.sizes.c2, set.sizes.final);
    }
    std::ofstream out(config.output / "manifest.json", std::ios::binary);
    out << manifest.dump(2) << '\n';
    if (!out) throw ConfigError("cannot write manifest.json");
    return status;
  });
}

int cmd_silver(const RunConfig& config, std::ostream& log) {
  return guarded(log, [&] {
    for (const auto& [_, p] : config.unimorph)
      if (!fs::exists(p)) throw ConfigError(fmt::format("UniMorph file '{}' does not exist", p.string()));
    const fs::path dir = silver_dir(config);

    std::vector<SilverStandard> built;
    int status = kOk;
    for (const auto& [language, path] : config.unimorph) {
      if (!config.silver_languages.empty() && !config.silver_languages.contains(language)) continue;
      try {
        built.push_back(build_silver(path, language));
      } catch (const std::exception& e) {
        log << fmt::format("{}: failed: {}\n", language, e.what());
        status = kPartialFailure;
      }
    }
    if (built.empty()) {
      log << "warning: no UniMorph input selected; nothing written\n";
      return status;
    }
    make_dir(dir);
    std::ofstream diag(dir / "diagnostics.tsv", std::ios::binary);
    diag << "language\tparadigms_read\tparadigms_used\tentries_used\tsuffixes\n";
    for (const auto& s : built) {
      write_silver(s, dir / (s.language + ".txt"));
      const auto& d = s.diagnostics;
      diag << s.language << '\t' << d.paradigms_read << '\t' << d.paradigms_used << '\t' << d.entries_used << '\t'
           << d.suffixes << '\n';
      log << fmt::format("{}: {} suffixes from {} paradigms\n", s.language, d.suffixes, d.paradigms_used);
    }
    return status;
  });
}

int cmd_eval(const RunConfig& config, std::ostream& log) {
  return guarded(log, [&] {
    const auto predicted = read_predictions(predicted_dir(config));
    const auto gold = load_gold(config, log);
    const auto scores = score_languages(predicted, gold);

    const fs::path dir = config.output / "eval";
    make_dir(dir / "diff");
    write_results_table(scores, dir / "results.tsv");
    for (const auto& s : scores) {
      write_diff_report(diff_report(predicted.at(s.language), gold.at(s.language)), dir / "diff" / (s.language + ".tsv"));
      log << fmt::format("{}\tP={:.2f} R={:.2f} F1={:.2f}\n", s.language, s.prf.precision, s.prf.recall, s.prf.f1);
    }

    if (!config.direct_annotations.empty()) {
      const RunInputs in = load_inputs(config, log);
      std::ofstream out(dir / "projection_self_eval.tsv", std::ios::binary);
      out << "version\tP\tR\tF1\n";
      for (const auto& direct : in.direct_annotations) {
        const auto gold_words = partition_word_types(build_inside_outside(in.corpus, direct)).np_relevant;
        const auto projected =
            partition_language(in.corpus, in.annotations, in.alignments, direct.version.language).np_relevant;
        const PRF prf = projection_self_eval(gold_words, projected);
        out << fmt::format("{}\t{:.3f}\t{:.3f}\t{:.3f}\n", direct.version.str(), prf.precision, prf.recall, prf.f1);
      }
    }
    return kOk;
  });
}

int cmd_ablate(const RunConfig& config, std::ostream& log) {
  return guarded(log, [&] {
    const auto gold = load_gold(config, log);
    const RunInputs in = load_inputs(config, log);
    LanguageFilter scored = config.pipeline.languages;
    std::map<std::string, WordPartition> partitions;
    {
      std::vector<std::string> languages;
      for (const auto& l : in.corpus.languages())
        if (scored.admits(l) && gold.contains(l)) languages.push_back(l);
      std::vector<WordPartition> parts(languages.size());
      parallel_for(languages.size(), config.jobs, [&](std::size_t i) {
        parts[i] = partition_language(in.corpus, in.annotations, in.alignments, languages[i]);
      });
      for (std::size_t i = 0; i < languages.size(); ++i) partitions.emplace(languages[i], std::move(parts[i]));
    }

    std::vector<Ablation> variants;
    if (config.ablation)
      variants = {Ablation::Baseline, *config.ablation};
    else
      variants.assign(std::begin(kAllAblations), std::end(kAllAblations));
    if (variants.size() == 2 && variants[0] == variants[1]) variants.pop_back();

    const auto rows = run_ablation(partitions, gold, config.pipeline, variants, config.jobs);
    make_dir(config.output);
    write_ablation_table(rows, config.output / "ablation.tsv");
    for (const auto& r : rows)
      log << fmt::format("{}\tP={:.2f} R={:.2f} F1={:.2f}\n", to_string(r.variant), r.macro.precision, r.macro.recall,
                         r.macro.f1);
    return kOk;
  });
}

int cmd_analyze(const RunConfig& config, std::ostream& log) {
  return guarded(log, [&] {
    const RunInputs in = load_inputs(config, log);
    const auto markers = read_predictions(predicted_dir(config));
    std::vector<std::string> languages = config.analysis.languages;
    if (languages.empty())
      for (const auto& [l, _] : markers) languages.push_back(l);

    const auto nps = build_parallel_np_set(in.corpus, in.annotations, in.alignments);
    const fs::path dir = config.output / "analysis";
    make_dir(dir);
    const auto groups = group_by_marker_combination(in.corpus, nps, markers, languages);
    write_group_report(in.corpus, nps, languages, groups, config.analysis.samples, dir / "groups.txt");
    export_matrix(build_cooccurrence_matrix(in.corpus, nps, config.analysis.matrix_languages), dir);
    log << fmt::format("{} NPs in {} marker-combination groups\n", nps.nps.size(), groups.size());
    return kOk;
  });
}

int cmd_project(const RunConfig& config, std::ostream& log) {
  return guarded(log, [&] {
    const RunInputs in = load_inputs(config, log);
    const auto nps = build_parallel_np_set(in.corpus, in.annotations, in.alignments);
    make_dir(config.output);
    write_parallel_np_set(in.corpus, nps, config.output / "np_set.tsv");
    log << fmt::format("{} parallel NPs from {} editions\n", nps.nps.size(), nps.sources.size());
    return kOk;
  });
}

}  // namespace casemark
