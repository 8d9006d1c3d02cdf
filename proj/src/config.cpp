#include "casemark/config.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <fstream>
#include <json.hpp>

#include "casemark/error.hpp"

namespace casemark {

namespace {

using nlohmann::json;

const std::set<std::string> kTopLevelKeys{
    "corpus",   "verse_allowlist",  "alignments", "annotations", "direct_annotations", "unimorph", "silver_languages",
    "languages", "source_language", "pipeline",   "output",      "jobs",               "eval",     "analysis"};
const std::set<std::string> kPipelineKeys{"theta", "phi", "chi", "suffix_only", "max_gram_length", "ablation"};

void reject_unknown(const json& object, const std::set<std::string>& allowed, std::string_view where) {
  for (const auto& [key, _] : object.items())
    if (!allowed.contains(key)) throw ConfigError(fmt::format("unknown key '{}' in {}", key, where));
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  std::filesystem::path path(p);
  return path.is_absolute() ? path : base / path;
}

std::vector<std::filesystem::path> path_list(const json& value, const std::filesystem::path& base,
                                             std::string_view key) {
  std::vector<std::filesystem::path> out;
  if (value.is_string()) {
    out.push_back(resolve(base, value.get<std::string>()));
    return out;
  }
  if (!value.is_array()) throw ConfigError(fmt::format("'{}' must be a path or a list of paths", key));
  for (const auto& v : value) out.push_back(resolve(base, v.get<std::string>()));
  return out;
}

std::set<std::string> string_set(const json& value, std::string_view key) {
  if (!value.is_array()) throw ConfigError(fmt::format("'{}' must be a list of strings", key));
  std::set<std::string> out;
  for (const auto& v : value) out.insert(v.get<std::string>());
  return out;
}

}  // namespace

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(fmt::format("cannot open config '{}'", path.string()));
  json j;
  try {
    j = json::parse(in, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    throw ConfigError(fmt::format("{}: {}", path.string(), e.what()));
  }
  if (!j.is_object()) throw ConfigError(fmt::format("{}: top level must be an object", path.string()));
  reject_unknown(j, kTopLevelKeys, "config");

  const std::filesystem::path base = path.parent_path();
  RunConfig c;
  try {
    if (j.contains("corpus")) c.corpus = path_list(j["corpus"], base, "corpus");
    if (j.contains("verse_allowlist")) c.verse_allowlist = resolve(base, j["verse_allowlist"].get<std::string>());
    if (j.contains("alignments")) c.alignments = path_list(j["alignments"], base, "alignments");
    if (j.contains("annotations")) c.annotations = path_list(j["annotations"], base, "annotations");
    if (j.contains("direct_annotations"))
      c.direct_annotations = path_list(j["direct_annotations"], base, "direct_annotations");
    if (j.contains("unimorph")) {
      const auto& u = j["unimorph"];
      if (u.is_object()) {
        for (const auto& [lang, p] : u.items()) c.unimorph[lang] = resolve(base, p.get<std::string>());
      } else {
        for (const auto& p : expand_paths(path_list(u, base, "unimorph"))) c.unimorph[p.stem().string()] = p;
      }
    }
    if (j.contains("silver_languages")) c.silver_languages = string_set(j["silver_languages"], "silver_languages");
    if (j.contains("source_language")) c.source_language = j["source_language"].get<std::string>();
    if (j.contains("languages")) {
      const auto& l = j["languages"];
      reject_unknown(l, {"allow", "deny"}, "languages");
      if (l.contains("allow")) c.pipeline.languages.allow = string_set(l["allow"], "languages.allow");
      if (l.contains("deny")) c.pipeline.languages.deny = string_set(l["deny"], "languages.deny");
    }
    if (j.contains("pipeline")) {
      const auto& p = j["pipeline"];
      reject_unknown(p, kPipelineKeys, "pipeline");
      if (p.contains("theta")) {
        if (!p["theta"].is_number_integer() || p["theta"].get<long long>() < 1)
          throw ConfigError("pipeline.theta must be a positive integer");
        c.pipeline.theta = p["theta"].get<std::uint64_t>();
      }
      if (p.contains("phi")) c.pipeline.phi = p["phi"].get<double>();
      if (p.contains("chi")) c.pipeline.chi = p["chi"].get<double>();
      if (p.contains("suffix_only")) c.pipeline.suffix_only = p["suffix_only"].get<bool>();
      if (p.contains("max_gram_length")) c.pipeline.max_gram_length = p["max_gram_length"].get<std::size_t>();
      if (p.contains("ablation")) c.ablation = parse_ablation(p["ablation"].get<std::string>());
    }
    c.output = resolve(base, j.contains("output") ? j["output"].get<std::string>() : c.output.string());
    if (j.contains("jobs")) c.jobs = j["jobs"].get<unsigned>();
    if (j.contains("eval")) {
      const auto& e = j["eval"];
      reject_unknown(e, {"predicted", "silver"}, "eval");
      if (e.contains("predicted")) c.predicted_dir = resolve(base, e["predicted"].get<std::string>());
      if (e.contains("silver")) c.silver_dir = resolve(base, e["silver"].get<std::string>());
    }
    if (j.contains("analysis")) {
      const auto& a = j["analysis"];
      reject_unknown(a, {"languages", "samples", "matrix_languages"}, "analysis");
      if (a.contains("languages")) c.analysis.languages = a["languages"].get<std::vector<std::string>>();
      if (a.contains("samples")) c.analysis.samples = a["samples"].get<std::size_t>();
      if (a.contains("matrix_languages"))
        c.analysis.matrix_languages = string_set(a["matrix_languages"], "analysis.matrix_languages");
    }
  } catch (const json::exception& e) {
    throw ConfigError(fmt::format("{}: {}", path.string(), e.what()));
  }
  c.pipeline.validate();
  return c;
}

std::vector<std::filesystem::path> expand_paths(const std::vector<std::filesystem::path>& paths,
                                                const std::string& extension) {
  std::vector<std::filesystem::path> out;
  for (const auto& p : paths) {
    if (std::filesystem::is_directory(p)) {
      std::vector<std::filesystem::path> found;
      for (const auto& entry : std::filesystem::directory_iterator(p))
        if (entry.is_regular_file() && (extension.empty() || entry.path().extension() == extension))
          found.push_back(entry.path());
      std::sort(found.begin(), found.end());
      out.insert(out.end(), found.begin(), found.end());
    } else {
      out.push_back(p);
    }
  }
  return out;
}

void check_paths_exist(const RunConfig& config) {
  auto check = [](const std::filesystem::path& p, std::string_view what) {
    if (!std::filesystem::exists(p)) throw ConfigError(fmt::format("{} '{}' does not exist", what, p.string()));
  };
  for (const auto& p : config.corpus) check(p, "corpus path");
  if (config.verse_allowlist) check(*config.verse_allowlist, "verse allowlist");
  for (const auto& p : config.alignments) check(p, "alignment path");
  for (const auto& p : config.annotations) check(p, "annotation path");
  for (const auto& p : config.direct_annotations) check(p, "direct annotation path");
  for (const auto& [_, p] : config.unimorph) check(p, "UniMorph file");
}

}  // namespace casemark
