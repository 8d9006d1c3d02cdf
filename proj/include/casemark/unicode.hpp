#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace casemark::unicode {

/// NFC-normalizes a UTF-8 string. Throws ParseError on invalid UTF-8.
std::string nfc(std::string_view utf8);

/// Byte offsets of every code point start, plus the total length as the last entry.
std::vector<std::size_t> boundaries(std::string_view utf8);

std::size_t length(std::string_view utf8);

/// Longest common prefix measured in whole code points.
std::string common_prefix(std::string_view a, std::string_view b);

}  // namespace casemark::unicode
