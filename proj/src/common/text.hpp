// Copyright 2026 The fidaudit Authors.
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

#ifndef FIDAUDIT_COMMON_TEXT_HPP_
#define FIDAUDIT_COMMON_TEXT_HPP_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace fidaudit {

// All offsets exposed by the toolkit count Unicode code points. These helpers
// are the only place where UTF-8 bytes are interpreted.

// Throws Error(kParse) on malformed UTF-8.
std::u32string DecodeUtf8(std::string_view utf8);
std::string EncodeUtf8(std::u32string_view text);

bool IsValidUtf8(std::string_view utf8);
std::size_t CodePointLength(std::string_view utf8);

// Byte offset of the given code-point offset; offset == length maps to the
// end of the string.
std::size_t ByteOffsetOf(std::string_view utf8, std::size_t code_point_offset);

bool IsLetterOrDigit(char32_t c);
char32_t ToLower(char32_t c);

std::vector<std::string> SplitAndTrim(std::string_view text, char delimiter);
std::string_view Trim(std::string_view text);

// Minimal CSV field quoting (RFC 4180 style).
std::string CsvField(std::string_view value);
std::vector<std::string> ParseCsvLine(std::string_view line);

// Shortest text that parses back to the same double.
std::string FormatDouble(double value);

}  // namespace fidaudit

#endif  // FIDAUDIT_COMMON_TEXT_HPP_
