#include "casemark/corpus.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <charconv>
#include <fstream>

#include "casemark/error.hpp"
#include "casemark/unicode.hpp"

namespace casemark {

namespace {

std::string_view chomp(std::string_view line) {
  while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.remove_suffix(1);
  return line;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(text.substr(start));
      return out;
    }
    out.push_back(text.substr(start, pos - start));
    start = pos + 1;
  }
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(fmt::format("cannot open '{}'", path.string()));
  return in;
}

[[noreturn]] void parse_fail(const std::filesystem::path& path, std::size_t line_no, std::string_view what) {
  throw ParseError(fmt::format("{}:{}: {}", path.string(), line_no, what));
}

TokenIndex parse_index(std::string_view text, const std::filesystem::path& path, std::size_t line_no) {
  TokenIndex value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
    parse_fail(path, line_no, fmt::format("bad token index '{}'", text));
  return value;
}

struct RawVersion {
  VersionId id;
  std::map<VerseId, Verse> verses;
};

RawVersion read_version(const std::filesystem::path& path) {
  RawVersion raw{VersionId::from_path(path), {}};
  auto in = open_input(path);
  std::string buffer;
  std::size_t line_no = 0;
  while (std::getline(in, buffer)) {
    ++line_no;
    std::string_view line = chomp(buffer);
    if (line.empty() || line.front() == '#') continue;
    const std::size_t tab = line.find('\t');
    if (tab == std::string_view::npos) parse_fail(path, line_no, "expected '<verse-id>\\t<tokens>'");
    std::string_view id = line.substr(0, tab);
    std::string_view text = line.substr(tab + 1);
    if (id.empty()) parse_fail(path, line_no, "empty verse id");
    if (raw.verses.contains(std::string(id))) parse_fail(path, line_no, fmt::format("duplicate verse id '{}'", id));
    if (text.empty()) continue;

    Verse verse;
    for (std::string_view token : split(text, ' ')) {
      if (token.empty()) parse_fail(path, line_no, "empty token (consecutive or trailing spaces)");
      if (token.find_first_of("$\t\v\f") != std::string_view::npos)
        parse_fail(path, line_no, fmt::format("token '{}' contains '$' or whitespace", token));
      try {
        verse.push_back(unicode::nfc(token));
      } catch (const ParseError& e) {
        parse_fail(path, line_no, e.what());
      }
    }
    raw.verses.emplace(std::string(id), std::move(verse));
  }
  return raw;
}

// Verse ids of the corpus -> positions; unknown ids are skipped by callers.
struct VerseLine {
  std::size_t position;
  std::string_view payload;
};

std::optional<VerseLine> locate(std::string_view line, const ParallelCorpus& corpus,
                                const std::filesystem::path& path, std::size_t line_no) {
  const std::size_t tab = line.find('\t');
  if (tab == std::string_view::npos) parse_fail(path, line_no, "expected '<verse-id>\\t<payload>'");
  auto pos = corpus.verse_position(line.substr(0, tab));
  if (!pos) return std::nullopt;
  return VerseLine{*pos, line.substr(tab + 1)};
}

}  // namespace

VersionId VersionId::parse(std::string_view name) {
  const std::size_t dash = name.find('-');
  if (dash == std::string_view::npos || dash == 0 || dash + 1 == name.size())
    throw ParseError(fmt::format("version name '{}' is not '<language>-<edition>'", name));
  return VersionId{std::string(name.substr(0, dash)), std::string(name.substr(dash + 1))};
}

VersionId VersionId::from_path(const std::filesystem::path& path) {
  return parse(path.stem().string());
}

ParallelCorpus::ParallelCorpus(std::vector<VerseId> shared, std::map<VersionId, std::vector<Verse>> versions)
    : shared_(std::move(shared)), versions_(std::move(versions)) {
  for (std::size_t i = 0; i < shared_.size(); ++i) position_.emplace(shared_[i], i);
  for (const auto& [id, verses] : versions_)
    if (verses.size() != shared_.size())
      throw ConfigError(fmt::format("version {} has {} verses, expected {}", id.str(), verses.size(), shared_.size()));
}

std::optional<std::size_t> ParallelCorpus::verse_position(std::string_view id) const {
  auto it = position_.find(std::string(id));
  if (it == position_.end()) return std::nullopt;
  return it->second;
}

std::vector<VersionId> ParallelCorpus::versions() const {
  std::vector<VersionId> out;
  for (const auto& [id, _] : versions_) out.push_back(id);
  return out;
}

std::vector<VersionId> ParallelCorpus::versions_of(std::string_view language) const {
  std::vector<VersionId> out;
  for (const auto& [id, _] : versions_)
    if (id.language == language) out.push_back(id);
  return out;
}

std::vector<std::string> ParallelCorpus::languages() const {
  std::vector<std::string> out;
  for (const auto& [id, _] : versions_)
    if (out.empty() || out.back() != id.language) out.push_back(id.language);
  return out;
}

const std::vector<Verse>& ParallelCorpus::verses(const VersionId& v) const {
  auto it = versions_.find(v);
  if (it == versions_.end()) throw ConfigError(fmt::format("unknown version '{}'", v.str()));
  return it->second;
}

const Verse& ParallelCorpus::verse(const VersionId& v, std::size_t position) const {
  return verses(v).at(position);
}

const Verse& ParallelCorpus::verse(const VersionId& v, std::string_view id) const {
  auto pos = verse_position(id);
  if (!pos) throw ConfigError(fmt::format("verse '{}' is not shared by all versions", id));
  return verse(v, *pos);
}

ParallelCorpus load_corpus(const std::vector<std::filesystem::path>& version_paths, const LoadOptions& options) {
  if (version_paths.size() < 2) throw ConfigError("at least two version files are required");

  std::vector<RawVersion> raw;
  raw.reserve(version_paths.size());
  for (const auto& path : version_paths) raw.push_back(read_version(path));

  std::sort(raw.begin(), raw.end(), [](const RawVersion& a, const RawVersion& b) { return a.id < b.id; });
  for (std::size_t i = 1; i < raw.size(); ++i)
    if (raw[i].id == raw[i - 1].id) throw ConfigError(fmt::format("version '{}' given twice", raw[i].id.str()));

  std::vector<VerseId> shared;
  for (const auto& [id, _] : raw.front().verses) {
    if (options.verse_allowlist && !options.verse_allowlist->contains(id)) continue;
    bool everywhere = std::all_of(raw.begin() + 1, raw.end(), [&](const RawVersion& r) { return r.verses.contains(id); });
    if (everywhere) shared.push_back(id);
  }
  if (shared.empty()) throw ConfigError("no shared verses across the given versions");

  std::map<VersionId, std::vector<Verse>> versions;
  for (auto& r : raw) {
    std::vector<Verse> ordered;
    ordered.reserve(shared.size());
    for (const auto& id : shared) ordered.push_back(std::move(r.verses.at(id)));
    versions.emplace(r.id, std::move(ordered));
  }
  return ParallelCorpus(std::move(shared), std::move(versions));
}

void write_version(const ParallelCorpus& corpus, const VersionId& version, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError(fmt::format("cannot write '{}'", path.string()));
  const auto& verses = corpus.verses(version);
  for (std::size_t i = 0; i < verses.size(); ++i) {
    out << corpus.shared_verses()[i] << '\t';
    for (std::size_t t = 0; t < verses[i].size(); ++t) out << (t ? " " : "") << verses[i][t];
    out << '\n';
  }
  if (!out) throw ConfigError(fmt::format("write to '{}' failed", path.string()));
}

Alignment load_alignment(const std::filesystem::path& path, const ParallelCorpus& corpus) {
  auto in = open_input(path);
  std::string buffer;
  std::size_t line_no = 0;

  Alignment alignment;
  bool have_header = false;
  while (std::getline(in, buffer)) {
    ++line_no;
    std::string_view line = chomp(buffer);
    if (line.empty()) continue;
    if (line.front() == '#') {
      if (have_header) continue;
      std::vector<std::string_view> names;
      for (auto part : split(line.substr(1), ' '))
        for (auto name : split(part, '\t'))
          if (!name.empty()) names.push_back(name);
      if (names.size() != 2) parse_fail(path, line_no, "header must be '# <source-version> <target-version>'");
      alignment.source = VersionId::parse(names[0]);
      alignment.target = VersionId::parse(names[1]);
      for (const auto& v : {alignment.source, alignment.target})
        if (!corpus.has_version(v)) throw ConfigError(fmt::format("{}: unknown version '{}'", path.string(), v.str()));
      alignment.links.assign(corpus.verse_count(), {});
      have_header = true;
      continue;
    }
    if (!have_header) parse_fail(path, line_no, "missing '# <source> <target>' header");

    auto located = locate(line, corpus, path, line_no);
    if (!located) continue;
    const auto& src_verse = corpus.verse(alignment.source, located->position);
    const auto& tgt_verse = corpus.verse(alignment.target, located->position);
    auto& links = alignment.links[located->position];
    if (!links.empty()) parse_fail(path, line_no, "verse listed twice");
    if (!located->payload.empty()) {
      for (std::string_view pair : split(located->payload, ' ')) {
        if (pair.empty()) continue;
        const std::size_t dash = pair.find('-');
        if (dash == std::string_view::npos) parse_fail(path, line_no, fmt::format("bad link '{}'", pair));
        TokenIndex s = parse_index(pair.substr(0, dash), path, line_no);
        TokenIndex t = parse_index(pair.substr(dash + 1), path, line_no);
        if (s >= src_verse.size() || t >= tgt_verse.size()) {
          const auto& verse_id = corpus.shared_verses()[located->position];
          parse_fail(path, line_no,
                     fmt::format("link {}-{} out of bounds in verse '{}' (lengths {}, {})", s, t, verse_id,
                                 src_verse.size(), tgt_verse.size()));
        }
        links.emplace_back(s, t);
      }
    }
    std::sort(links.begin(), links.end());
    links.erase(std::unique(links.begin(), links.end()), links.end());
  }
  if (!have_header) parse_fail(path, line_no, "missing '# <source> <target>' header");
  return alignment;
}

NpAnnotation load_np_annotation(const std::filesystem::path& path, const ParallelCorpus& corpus) {
  auto in = open_input(path);
  std::string buffer;
  std::size_t line_no = 0;

  NpAnnotation annotation;
  bool have_version = false;
  auto set_version = [&](VersionId v) {
    if (!corpus.has_version(v)) throw ConfigError(fmt::format("{}: unknown version '{}'", path.string(), v.str()));
    annotation.version = std::move(v);
    annotation.spans.assign(corpus.verse_count(), {});
    have_version = true;
  };

  while (std::getline(in, buffer)) {
    ++line_no;
    std::string_view line = chomp(buffer);
    if (line.empty()) continue;
    if (line.front() == '#') {
      if (!have_version) {
        std::string_view name = line.substr(1);
        while (!name.empty() && (name.front() == ' ' || name.front() == '\t')) name.remove_prefix(1);
        while (!name.empty() && (name.back() == ' ' || name.back() == '\t')) name.remove_suffix(1);
        set_version(VersionId::parse(name));
      }
      continue;
    }
    if (!have_version) set_version(VersionId::from_path(path));

    auto located = locate(line, corpus, path, line_no);
    if (!located) continue;
    const auto& verse = corpus.verse(annotation.version, located->position);
    const auto& verse_id = corpus.shared_verses()[located->position];
    auto& spans = annotation.spans[located->position];
    if (!spans.empty()) parse_fail(path, line_no, "verse listed twice");
    for (std::string_view text : split(located->payload, ' ')) {
      if (text.empty()) continue;
      const std::size_t colon = text.find(':');
      if (colon == std::string_view::npos) parse_fail(path, line_no, fmt::format("bad span '{}'", text));
      TokenSpan span{parse_index(text.substr(0, colon), path, line_no), parse_index(text.substr(colon + 1), path, line_no)};
      if (span.begin >= span.end)
        parse_fail(path, line_no, fmt::format("empty span {}:{} in verse '{}'", span.begin, span.end, verse_id));
      if (span.end > verse.size())
        parse_fail(path, line_no,
                   fmt::format("span {}:{} out of bounds in verse '{}' ({} tokens)", span.begin, span.end, verse_id,
                               verse.size()));
      spans.push_back(span);
    }
    std::sort(spans.begin(), spans.end());
    for (std::size_t i = 1; i < spans.size(); ++i)
      if (spans[i].begin < spans[i - 1].end)
        parse_fail(path, line_no,
                   fmt::format("overlapping spans {}:{} and {}:{} in verse '{}'", spans[i - 1].begin, spans[i - 1].end,
                               spans[i].begin, spans[i].end, verse_id));
  }
  if (!have_version) set_version(VersionId::from_path(path));
  return annotation;
}

}  // namespace casemark
