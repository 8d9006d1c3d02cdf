#pragma once

#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "casemark/config.hpp"
#include "casemark/corpus.hpp"

namespace casemark {

enum ExitCode : int { kOk = 0, kPartialFailure = 1, kConfigFailure = 2 };

/// Corpus, annotations and alignments loaded for a run.
struct RunInputs {
  ParallelCorpus corpus;
  std::vector<NpAnnotation> annotations;
  std::vector<Alignment> alignments;
  std::vector<NpAnnotation> direct_annotations;
  std::vector<std::filesystem::path> files;  ///< every input file read, for the manifest
};

/// Loads the configured inputs. Version files of languages the filter rejects
/// are skipped (the source language is always kept), as are alignments that
/// reference a skipped version.
RunInputs load_inputs(const RunConfig& config, std::ostream& log);

/// Gold sets from the silver directory if it holds any files, otherwise built from UniMorph.
std::map<std::string, std::set<std::string>> load_gold(const RunConfig& config, std::ostream& log);

int cmd_extract(const RunConfig& config, std::ostream& log);
int cmd_silver(const RunConfig& config, std::ostream& log);
int cmd_eval(const RunConfig& config, std::ostream& log);
int cmd_ablate(const RunConfig& config, std::ostream& log);
int cmd_analyze(const RunConfig& config, std::ostream& log);
int cmd_project(const RunConfig& config, std::ostream& log);

}  // namespace casemark
