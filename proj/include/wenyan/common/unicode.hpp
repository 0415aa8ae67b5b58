// SPDX-License-Identifier: Apache-2.0
//
// Minimal UTF-8 <-> UTF-32 conversion. All toolkit text processing works on
// std::u32string (one element per Unicode scalar value); files stay UTF-8.

#pragma once

#include <string>
#include <string_view>

namespace wenyan {

// Decodes UTF-8. Invalid byte sequences decode to U+FFFD, one replacement
// per offending byte, so decoding never throws on scraped input.
std::u32string utf8_decode(std::string_view utf8);

std::string utf8_encode(std::u32string_view text);
std::string utf8_encode(char32_t cp);

}  // namespace wenyan
