#include "casemark/unicode.hpp"

#include <unicode/normalizer2.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

#include <algorithm>

#include "casemark/error.hpp"

namespace casemark::unicode {

std::string nfc(std::string_view utf8) {
  // ASCII is NFC already and makes up most of the token stream
  if (std::all_of(utf8.begin(), utf8.end(), [](char c) { return static_cast<unsigned char>(c) < 0x80; }))
    return std::string(utf8);

  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* normalizer = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status)) throw std::runtime_error("ICU NFC normalizer unavailable");

  // fromUTF8 silently substitutes U+FFFD, so validate first
  for (std::size_t i = 0; i < utf8.size();) {
    UChar32 c;
    U8_NEXT(utf8.data(), i, utf8.size(), c);
    if (c < 0) throw ParseError("invalid UTF-8 in '" + std::string(utf8) + "'");
  }

  auto text = icu::UnicodeString::fromUTF8(icu::StringPiece(utf8.data(), static_cast<int32_t>(utf8.size())));
  icu::UnicodeString normalized = normalizer->normalize(text, status);
  if (U_FAILURE(status)) throw ParseError("NFC normalization failed");
  std::string out;
  normalized.toUTF8String(out);
  return out;
}

std::vector<std::size_t> boundaries(std::string_view utf8) {
  std::vector<std::size_t> out;
  out.reserve(utf8.size() + 1);
  for (std::size_t i = 0; i < utf8.size();) {
    out.push_back(i);
    U8_FWD_1(utf8.data(), i, utf8.size());
  }
  out.push_back(utf8.size());
  return out;
}

std::size_t length(std::string_view utf8) {
  return boundaries(utf8).size() - 1;
}

std::string common_prefix(std::string_view a, std::string_view b) {
  std::size_t i = 0;
  std::size_t last_boundary = 0;
  const std::size_t n = std::min(a.size(), b.size());
  while (i < n) {
    std::size_t ia = i;
    std::size_t ib = i;
    UChar32 ca;
    UChar32 cb;
    U8_NEXT(a.data(), ia, a.size(), ca);
    U8_NEXT(b.data(), ib, b.size(), cb);
    if (ca != cb || ia != ib) break;
    i = ia;
    last_boundary = i;
  }
  return std::string(a.substr(0, last_boundary));
}

}  // namespace casemark::unicode
