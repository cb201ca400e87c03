// Copyright 2026-present the artrec project
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Thin UTF-8 helpers over ICU. All text entering the engine passes through
// `normalize` so that NFC and NFD spellings of the same word compare equal.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <unicode/locid.h>
#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

#include "artrec/error.hpp"

namespace artrec::unicode {

namespace detail {

inline const icu::Normalizer2& nfc_instance() {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* nfc = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status) || nfc == nullptr) {
    throw Error(std::string("ICU NFC normalizer unavailable: ") + u_errorName(status));
  }
  return *nfc;
}

inline icu::UnicodeString to_nfc(const icu::UnicodeString& in) {
  UErrorCode status = U_ZERO_ERROR;
  icu::UnicodeString out = nfc_instance().normalize(in, status);
  if (U_FAILURE(status)) {
    throw Error(std::string("NFC normalization failed: ") + u_errorName(status));
  }
  return out;
}

inline icu::UnicodeString from_utf8(std::string_view s) {
  return icu::UnicodeString::fromUTF8(icu::StringPiece(s.data(), static_cast<int32_t>(s.size())));
}

inline std::string to_utf8(const icu::UnicodeString& s) {
  std::string out;
  s.toUTF8String(out);
  return out;
}

inline bool is_word_char(UChar32 c) { return u_isalpha(c) || u_isdigit(c); }

inline bool is_mark(UChar32 c) {
  const auto type = u_charType(c);
  return type == U_NON_SPACING_MARK || type == U_COMBINING_SPACING_MARK ||
         type == U_ENCLOSING_MARK;
}

}  // namespace detail

/// NFC-normalizes `s`; optionally lowercases (root locale, full case mapping).
inline std::string normalize(std::string_view s, bool lowercase = false) {
  if (s.empty()) return {};
  icu::UnicodeString text = detail::to_nfc(detail::from_utf8(s));
  if (lowercase) {
    text.toLower(icu::Locale::getRoot());
    text = detail::to_nfc(text);
  }
  return detail::to_utf8(text);
}

/// Number of code points in a UTF-8 string.
inline std::size_t length(std::string_view s) {
  std::size_t n = 0;
  for (unsigned char c : s) {
    if ((c & 0xC0u) != 0x80u) ++n;
  }
  return n;
}

/// Maximal runs of letters and decimal digits in already-normalized text.
/// Combining marks stay attached to the run they follow.
inline std::vector<std::string> word_runs(std::string_view normalized) {
  std::vector<std::string> runs;
  const auto* bytes = reinterpret_cast<const uint8_t*>(normalized.data());
  const auto size = static_cast<int32_t>(normalized.size());
  int32_t i = 0;
  int32_t start = -1;
  while (i < size) {
    const int32_t at = i;
    UChar32 c = 0;
    U8_NEXT(bytes, i, size, c);
    const bool inside = c >= 0 && (detail::is_word_char(c) || (start >= 0 && detail::is_mark(c)));
    if (inside) {
      if (start < 0) start = at;
    } else if (start >= 0) {
      runs.emplace_back(normalized.substr(static_cast<std::size_t>(start),
                                          static_cast<std::size_t>(at - start)));
      start = -1;
    }
  }
  if (start >= 0) runs.emplace_back(normalized.substr(static_cast<std::size_t>(start)));
  return runs;
}

}  // namespace artrec::unicode
