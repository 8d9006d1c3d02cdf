#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "casemark/corpus.hpp"

namespace casemark {

std::string sha256_hex(std::string_view bytes);
std::string file_fingerprint(const std::filesystem::path& path);
/// Hash of the verse-intersected corpus content, independent of input file order.
std::string corpus_fingerprint(const ParallelCorpus& corpus);

}  // namespace casemark
