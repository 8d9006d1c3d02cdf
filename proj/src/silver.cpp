#include "casemark/silver.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>

#include "casemark/error.hpp"
#include "casemark/unicode.hpp"

namespace casemark {

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    out.push_back(text.substr(start, pos == std::string::npos ? std::string::npos : pos - start));
    if (pos == std::string::npos) return out;
    start = pos + 1;
  }
}

std::string trim(std::string s) {
  const auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

}  // namespace

std::vector<Paradigm> parse_unimorph(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(fmt::format("cannot open '{}'", path.string()));

  std::map<std::string, Paradigm> by_lemma;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    auto cols = split(line, '\t');
    if (cols.size() < 3)
      throw ParseError(fmt::format("{}:{}: expected 'lemma\\tform\\tfeatures', got {} column(s)", path.string(),
                                   line_no, cols.size()));
    ParadigmEntry entry;
    try {
      entry.lemma = unicode::nfc(trim(cols[0]));
      entry.form = unicode::nfc(trim(cols[1]));
    } catch (const ParseError& e) {
      throw ParseError(fmt::format("{}:{}: {}", path.string(), line_no, e.what()));
    }
    for (auto& f : split(trim(cols[2]), ';'))
      if (!f.empty()) entry.features.push_back(std::move(f));
    if (entry.lemma.empty() || entry.form.empty() || entry.features.empty())
      throw ParseError(fmt::format("{}:{}: empty lemma, form or feature list", path.string(), line_no));

    auto& paradigm = by_lemma[entry.lemma];
    paradigm.lemma = entry.lemma;
    paradigm.entries.push_back(std::move(entry));
  }

  std::vector<Paradigm> out;
  out.reserve(by_lemma.size());
  for (auto& [_, p] : by_lemma) out.push_back(std::move(p));
  return out;
}

std::vector<Paradigm> filter_pos(std::vector<Paradigm> paradigms) {
  std::vector<Paradigm> out;
  for (auto& p : paradigms) {
    std::erase_if(p.entries, [](const ParadigmEntry& e) { return e.features.front() != "N" && e.features.front() != "ADJ"; });
    if (!p.entries.empty()) out.push_back(std::move(p));
  }
  return out;
}

std::string induce_root(const std::vector<std::string>& forms, const std::string& nominative_singular) {
  std::map<std::string, std::size_t> multiplicity;
  for (const auto& f : forms) ++multiplicity[f];

  std::vector<std::string> kept;
  for (const auto& [form, n] : multiplicity)
    if (n > 1) kept.push_back(form);
  if (kept.empty())
    for (const auto& [form, _] : multiplicity) kept.push_back(form);

  std::string prefix = kept.empty() ? std::string() : kept.front();
  for (const auto& f : kept) prefix = unicode::common_prefix(prefix, f);

  return unicode::length(prefix) > unicode::length(nominative_singular) ? prefix : nominative_singular;
}

std::set<std::string> extract_suffixes(const std::vector<std::string>& forms, const std::string& root) {
  std::set<std::string> out;
  for (const auto& f : forms)
    if (f.size() > root.size() && f.starts_with(root)) out.insert(f.substr(root.size()) + '$');
  return out;
}

SilverStandard build_silver(const std::vector<Paradigm>& paradigms, const std::string& language) {
  SilverStandard silver;
  silver.language = language;
  silver.diagnostics.paradigms_read = paradigms.size();
  for (const auto& p : filter_pos(paradigms)) {
    std::vector<std::string> forms;
    for (const auto& e : p.entries) forms.push_back(e.form);
    ++silver.diagnostics.paradigms_used;
    silver.diagnostics.entries_used += forms.size();
    const std::string root = induce_root(forms, p.lemma);
    if (root.empty()) continue;
    silver.suffixes.merge(extract_suffixes(forms, root));
  }
  silver.diagnostics.suffixes = silver.suffixes.size();
  return silver;
}

SilverStandard build_silver(const std::filesystem::path& path, const std::string& language) {
  return build_silver(parse_unimorph(path), language);
}

void write_silver(const SilverStandard& silver, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError(fmt::format("cannot write '{}'", path.string()));
  for (const auto& s : silver.suffixes) out << s << '\n';
  if (!out) throw ConfigError(fmt::format("write to '{}' failed", path.string()));
}

std::set<std::string> read_silver(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(fmt::format("cannot open '{}'", path.string()));
  std::set<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty() && line.front() != '#') out.insert(line);
  }
  return out;
}

}  // namespace casemark
