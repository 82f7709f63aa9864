// Copyright 2026 The dbmatch Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Plain-text file formats. Matrices are headerless integer CSV, one row per
// line; patterns, flags and permutations are a single CSV line. Every failure
// is a ConfigError naming the path.

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "dbmatch/model.hpp"
#include "json.hpp"

namespace dbmatch::io {

void writeMatrix(const std::filesystem::path& path, const Matrix& m);
Matrix readMatrix(const std::filesystem::path& path);

void writeIntegers(const std::filesystem::path& path,
                   const std::vector<std::uint64_t>& values);
std::vector<std::uint64_t> readIntegers(const std::filesystem::path& path);

void writePattern(const std::filesystem::path& path,
                  const RepetitionPattern& s);
RepetitionPattern readPattern(const std::filesystem::path& path);

/// 1-based, 0 for unmatched rows.
void writePermutation(const std::filesystem::path& path, const Permutation& p);
Permutation readPermutation(const std::filesystem::path& path);

void writeFlags(const std::filesystem::path& path,
                const std::vector<bool>& flags);
std::vector<bool> readFlags(const std::filesystem::path& path);

void writeJson(const std::filesystem::path& path, const nlohmann::json& j);
nlohmann::json readJson(const std::filesystem::path& path);

void writeText(const std::filesystem::path& path, const std::string& text);

/// Shortest round-trip decimal form.
std::string formatDouble(double v);

}  // namespace dbmatch::io
