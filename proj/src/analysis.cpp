#include "casemark/analysis.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <fstream>

#include "casemark/error.hpp"
#include "casemark/extraction.hpp"

namespace casemark {

namespace {

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError(fmt::format("cannot write '{}'", path.string()));
  return out;
}

}  // namespace

std::optional<std::string> assign_marker(std::string_view word, const std::set<std::string>& markers) {
  const std::string wrapped = std::string(1, kBoundary) + std::string(word) + kBoundary;
  std::optional<std::string> best;
  for (const auto& m : markers) {
    if (m.empty() || m.back() != kBoundary || !std::string_view(wrapped).ends_with(m)) continue;
    if (!best || m.size() > best->size()) best = m;
  }
  return best;
}

std::optional<std::string> head_word(const ParallelCorpus& corpus, const ParallelNp& np, const std::string& language) {
  if (np.source.language == language && !np.source_tokens.empty())
    return corpus.verse(np.source, np.verse).at(np.source_tokens.back());
  for (const auto& [version, tokens] : np.projections)
    if (version.language == language) return corpus.verse(version, np.verse).at(tokens.back());
  return std::nullopt;
}

std::vector<MarkerCombinationGroup> group_by_marker_combination(
    const ParallelCorpus& corpus, const ParallelNpSet& nps,
    const std::map<std::string, std::set<std::string>>& marker_sets, const std::vector<std::string>& languages) {
  std::vector<const std::set<std::string>*> sets;
  for (const auto& l : languages) {
    auto it = marker_sets.find(l);
    if (it == marker_sets.end()) throw ConfigError(fmt::format("no marker set for language '{}'", l));
    sets.push_back(&it->second);
  }

  std::map<std::vector<std::optional<std::string>>, std::vector<std::size_t>> grouped;
  for (std::size_t i = 0; i < nps.nps.size(); ++i) {
    std::vector<std::optional<std::string>> key;
    for (std::size_t l = 0; l < languages.size(); ++l) {
      auto word = head_word(corpus, nps.nps[i], languages[l]);
      key.push_back(word ? assign_marker(*word, *sets[l]) : std::nullopt);
    }
    grouped[std::move(key)].push_back(i);
  }

  std::vector<MarkerCombinationGroup> out;
  for (auto& [key, members] : grouped) out.push_back({key, std::move(members)});
  std::stable_sort(out.begin(), out.end(),
                   [](const auto& a, const auto& b) { return a.members.size() > b.members.size(); });
  return out;
}

void write_group_report(const ParallelCorpus& corpus, const ParallelNpSet& nps,
                        const std::vector<std::string>& languages, const std::vector<MarkerCombinationGroup>& groups,
                        std::size_t samples, const std::filesystem::path& path) {
  auto out = open_output(path);
  for (const auto& g : groups) {
    out << "group";
    for (std::size_t l = 0; l < languages.size(); ++l) out << '\t' << languages[l] << '=' << g.key[l].value_or("-");
    out << "\tsize=" << g.members.size() << '\n';
    for (std::size_t s = 0; s < std::min(samples, g.members.size()); ++s) {
      const auto& np = nps.nps[g.members[s]];
      out << "  " << np.id(corpus) << '\t' << surface(corpus.verse(np.source, np.verse), np.source_tokens);
      for (const auto& [version, tokens] : np.projections) {
        if (std::find(languages.begin(), languages.end(), version.language) == languages.end()) continue;
        out << '\t' << version.str() << ": " << surface(corpus.verse(version, np.verse), tokens);
      }
      out << '\n';
    }
  }
}

std::uint64_t CooccurrenceMatrix::at(std::size_t row, std::size_t col) const {
  auto it = cells.find({row, col});
  return it == cells.end() ? 0 : it->second;
}

CooccurrenceMatrix build_cooccurrence_matrix(const ParallelCorpus& corpus, const ParallelNpSet& nps,
                                             const std::set<std::string>& languages) {
  auto wanted = [&](const std::string& l) { return languages.empty() || languages.contains(l); };

  std::map<std::string, std::size_t> col_index;
  std::map<std::string, std::string> col_surface;
  std::map<std::pair<std::string, std::string>, std::uint64_t> by_label;
  std::set<std::string> row_labels;

  for (const auto& np : nps.nps) {
    const std::string id = np.id(corpus);
    col_index.emplace(id, 0);
    col_surface.emplace(id, surface(corpus.verse(np.source, np.verse), np.source_tokens));
    auto add = [&](const VersionId& version, const TokenSet& tokens) {
      if (!wanted(version.language)) return;
      const auto& verse = corpus.verse(version, np.verse);
      for (TokenIndex t : tokens) {
        std::string label = version.language + ":" + verse.at(t);
        row_labels.insert(label);
        ++by_label[{std::move(label), id}];
      }
    };
    add(np.source, np.source_tokens);
    for (const auto& [version, tokens] : np.projections) add(version, tokens);
  }

  CooccurrenceMatrix m;
  m.rows.assign(row_labels.begin(), row_labels.end());
  for (auto& [id, index] : col_index) {
    index = m.cols.size();
    m.cols.push_back(id);
    m.col_surface.push_back(col_surface.at(id));
  }
  std::map<std::string, std::size_t> row_index;
  for (std::size_t r = 0; r < m.rows.size(); ++r) row_index.emplace(m.rows[r], r);
  for (const auto& [key, count] : by_label) m.cells[{row_index.at(key.first), col_index.at(key.second)}] = count;
  return m;
}

void export_matrix(const CooccurrenceMatrix& matrix, const std::filesystem::path& directory) {
  std::error_code ec;
  std::filesystem::create_directories(directory, ec);
  if (ec) throw ConfigError(fmt::format("cannot create '{}': {}", directory.string(), ec.message()));

  auto triplets = open_output(directory / "matrix.tsv");
  triplets << "row_idx\tcol_idx\tcount\n";
  for (const auto& [rc, count] : matrix.cells) triplets << rc.first << '\t' << rc.second << '\t' << count << '\n';

  auto rows = open_output(directory / "rows.txt");
  rows << "#language:form\n";
  for (const auto& r : matrix.rows) rows << r << '\n';

  auto cols = open_output(directory / "cols.txt");
  cols << "#np_id\tsurface\n";
  for (std::size_t c = 0; c < matrix.cols.size(); ++c) cols << matrix.cols[c] << '\t' << matrix.col_surface[c] << '\n';

  for (auto* s : {&triplets, &rows, &cols})
    if (!*s) throw ConfigError(fmt::format("write to '{}' failed", directory.string()));
}

}  // namespace casemark
