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

#include "dbmatch/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "dbmatch/errors.hpp"

namespace dbmatch::io {
namespace {

std::ofstream openOut(const std::filesystem::path& path) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  return out;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::uint64_t> parseLine(std::string_view line,
                                     const std::filesystem::path& path,
                                     std::size_t lineNo) {
  std::vector<std::uint64_t> out;
  while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) {
    line.remove_suffix(1);
  }
  if (line.empty()) return out;
  std::size_t pos = 0;
  while (true) {
    while (pos < line.size() && line[pos] == ' ') ++pos;
    std::uint64_t v = 0;
    auto [p, ec] = std::from_chars(line.data() + pos, line.data() + line.size(), v);
    if (ec != std::errc{}) {
      throw ConfigError(path.string() + ":" + std::to_string(lineNo) +
                        ": expected a non-negative integer");
    }
    out.push_back(v);
    pos = static_cast<std::size_t>(p - line.data());
    while (pos < line.size() && line[pos] == ' ') ++pos;
    if (pos == line.size()) break;
    if (line[pos] != ',') {
      throw ConfigError(path.string() + ":" + std::to_string(lineNo) +
                        ": unexpected character");
    }
    ++pos;
  }
  return out;
}

std::vector<std::vector<std::uint64_t>> parseCsv(
    const std::filesystem::path& path) {
  const auto text = slurp(path);
  std::vector<std::vector<std::uint64_t>> rows;
  std::size_t start = 0;
  std::size_t lineNo = 1;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string::npos) end = text.size();
    auto row = parseLine(std::string_view(text).substr(start, end - start),
                         path, lineNo);
    if (!row.empty()) rows.push_back(std::move(row));
    start = end + 1;
    ++lineNo;
  }
  return rows;
}

void writeLine(std::ostream& out, const std::vector<std::uint64_t>& v) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out << ',';
    out << v[i];
  }
  out << '\n';
}

}  // namespace

void writeMatrix(const std::filesystem::path& path, const Matrix& m) {
  auto out = openOut(path);
  std::string line;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    line.clear();
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c) line.push_back(',');
      line += std::to_string(static_cast<unsigned>(m(r, c)));
    }
    line.push_back('\n');
    out << line;
  }
  if (!out) throw ConfigError("write failed: " + path.string());
}

Matrix readMatrix(const std::filesystem::path& path) {
  const auto rows = parseCsv(path);
  if (rows.empty()) return Matrix();
  const std::size_t cols = rows.front().size();
  std::vector<Symbol> data;
  data.reserve(rows.size() * cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) {
      throw ConfigError(path.string() + ": ragged row " + std::to_string(r + 1));
    }
    for (auto v : rows[r]) {
      if (v > 255) throw ConfigError(path.string() + ": symbol exceeds 255");
      data.push_back(static_cast<Symbol>(v));
    }
  }
  return Matrix(rows.size(), cols, std::move(data));
}

void writeIntegers(const std::filesystem::path& path,
                   const std::vector<std::uint64_t>& values) {
  auto out = openOut(path);
  writeLine(out, values);
  if (!out) throw ConfigError("write failed: " + path.string());
}

std::vector<std::uint64_t> readIntegers(const std::filesystem::path& path) {
  const auto rows = parseCsv(path);
  if (rows.size() > 1) {
    throw ConfigError(path.string() + ": expected a single line");
  }
  return rows.empty() ? std::vector<std::uint64_t>{} : rows.front();
}

void writePattern(const std::filesystem::path& path,
                  const RepetitionPattern& s) {
  writeIntegers(path, {s.counts().begin(), s.counts().end()});
}

RepetitionPattern readPattern(const std::filesystem::path& path) {
  std::vector<std::uint32_t> s;
  for (auto v : readIntegers(path)) s.push_back(static_cast<std::uint32_t>(v));
  return RepetitionPattern(std::move(s));
}

void writePermutation(const std::filesystem::path& path,
                      const Permutation& p) {
  writeIntegers(path, p.toOneBased());
}

Permutation readPermutation(const std::filesystem::path& path) {
  return Permutation::fromOneBased(readIntegers(path));
}

void writeFlags(const std::filesystem::path& path,
                const std::vector<bool>& flags) {
  writeIntegers(path, {flags.begin(), flags.end()});
}

std::vector<bool> readFlags(const std::filesystem::path& path) {
  std::vector<bool> out;
  for (auto v : readIntegers(path)) {
    if (v > 1) throw ConfigError(path.string() + ": flags must be 0 or 1");
    out.push_back(v == 1);
  }
  return out;
}

void writeJson(const std::filesystem::path& path, const nlohmann::json& j) {
  writeText(path, j.dump(2) + "\n");
}

nlohmann::json readJson(const std::filesystem::path& path) {
  try {
    return nlohmann::json::parse(slurp(path));
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

void writeText(const std::filesystem::path& path, const std::string& text) {
  auto out = openOut(path);
  out << text;
  if (!out) throw ConfigError("write failed: " + path.string());
}

std::string formatDouble(double v) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc{}) return "nan";
  return std::string(buf, p);
}

}  // namespace dbmatch::io
