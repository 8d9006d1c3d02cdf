// casemark: case marker extraction from a verse-parallel corpus.
//
//   casemark extract --config run.json
//   casemark silver  --config run.json
//   casemark eval    --config run.json
//   casemark ablate  --config run.json [--ablate no_phi]
//   casemark analyze --config run.json
//   casemark project --config run.json

#include <CLI11.hpp>

#include <iostream>
#include <sstream>

#include "casemark/commands.hpp"
#include "casemark/error.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Unsupervised case marker extraction from parallel text"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::string out_dir;
  std::string languages_csv;
  unsigned jobs = 0;
  bool jobs_set = false;
  std::optional<std::uint64_t> theta;
  std::optional<double> phi;
  std::optional<double> chi;
  std::optional<bool> suffix_only;
  std::string ablate;

  app.add_option("--config", config_path, "JSON run configuration")->check(CLI::ExistingFile);
  app.add_option("--out", out_dir, "output directory (overrides config 'output')");
  app.add_option("--languages", languages_csv, "comma-separated language allowlist");
  app.add_option_function<unsigned>("--jobs", [&](unsigned n) { jobs = n; jobs_set = true; },
                                    "worker threads (default: all processors)");
  app.add_option("--theta", theta, "frequency threshold")->check(CLI::PositiveNumber);
  app.add_option("--phi", phi, "p-value threshold");
  app.add_option("--chi", chi, "odds-ratio threshold");
  app.add_flag("--suffix-only,!--no-suffix-only", suffix_only, "restrict markers to word endings");
  app.add_option("--ablate", ablate, "baseline|no_theta|no_phi|no_chi|middle|beginning");

  const std::pair<const char*, const char*> commands[] = {
      {"extract", "extract case markers per language"},
      {"silver", "build silver-standard suffix sets from UniMorph"},
      {"eval", "score extracted markers against the silver standard"},
      {"ablate", "run the ablation grid"},
      {"analyze", "group NPs by marker combinations and export the NP-word matrix"},
      {"project", "dump the parallel NP set"}};
  for (const auto& [name, help] : commands) app.add_subcommand(name, help);

  CLI11_PARSE(app, argc, argv);

  casemark::RunConfig config;
  try {
    if (!config_path.empty()) config = casemark::load_run_config(config_path);
    if (!out_dir.empty()) config.output = out_dir;
    if (jobs_set) config.jobs = jobs;
    if (!languages_csv.empty()) {
      config.pipeline.languages.allow.clear();
      std::stringstream ss(languages_csv);
      for (std::string l; std::getline(ss, l, ',');)
        if (!l.empty()) config.pipeline.languages.allow.insert(l);
    }
    if (theta) config.pipeline.theta = *theta;
    if (phi) config.pipeline.phi = *phi;
    if (chi) config.pipeline.chi = *chi;
    if (suffix_only) config.pipeline.suffix_only = *suffix_only;
    if (!ablate.empty()) config.ablation = casemark::parse_ablation(ablate);
    config.pipeline.validate();
  } catch (const std::exception& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return casemark::kConfigFailure;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  if (command == "extract") return casemark::cmd_extract(config, std::cerr);
  if (command == "silver") return casemark::cmd_silver(config, std::cerr);
  if (command == "eval") return casemark::cmd_eval(config, std::cerr);
  if (command == "ablate") return casemark::cmd_ablate(config, std::cerr);
  if (command == "analyze") return casemark::cmd_analyze(config, std::cerr);
  return casemark::cmd_project(config, std::cerr);
}
