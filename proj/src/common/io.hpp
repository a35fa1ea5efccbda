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

#ifndef FIDAUDIT_COMMON_IO_HPP_
#define FIDAUDIT_COMMON_IO_HPP_

#include <filesystem>
#include <string>
#include <string_view>

namespace fidaudit {

// Throws Error(kIo) if the file cannot be read.
std::string ReadFile(const std::filesystem::path& path);

// Writes to a sibling temporary file, fsyncs it and renames it over `path`,
// so readers never observe a partially written file.
void WriteFileAtomic(const std::filesystem::path& path,
                     std::string_view content);

// Percent-encodes every byte outside [A-Za-z0-9._-] so arbitrary identifiers
// map to portable file names. "." and ".." are encoded as well.
std::string EncodePathComponent(std::string_view id);

}  // namespace fidaudit

#endif  // FIDAUDIT_COMMON_IO_HPP_
