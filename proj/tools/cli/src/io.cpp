// Copyright 2026 The qecdecay Authors
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

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>

#include "qecdecay/errors.hpp"
#include "qecdecay_cli/cli.hpp"

namespace qecd::cli {
namespace {

double parse_real(std::string_view token, const std::string& where) {
  double v = 0.0;
  const auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc() || end != token.data() + token.size()) {
    throw Error(ErrorCode::config, where + ": cannot parse '" + std::string(token) + "' as a number");
  }
  return v;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) {
    throw IoError("error while reading " + path.string());
  }
  return buf.str();
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Eigen::Matrix3d read_covariance_file(const std::filesystem::path& path) {
  std::istringstream text(slurp(path));
  Eigen::Matrix3d c;
  int row = 0;
  std::string line;
  int lineno = 0;
  while (std::getline(text, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::vector<std::string> tokens;
    for (std::string tok; fields >> tok;) tokens.push_back(tok);
    if (tokens.empty()) continue;
    const std::string where = path.string() + ":" + std::to_string(lineno);
    if (tokens.size() != 3) {
      throw Error(ErrorCode::config, where + ": expected 3 values, found " + std::to_string(tokens.size()));
    }
    if (row == 3) {
      throw Error(ErrorCode::config, where + ": more than 3 rows");
    }
    for (int col = 0; col < 3; ++col) c(row, col) = parse_real(tokens[col], where);
    ++row;
  }
  if (row != 3) {
    throw Error(ErrorCode::config, path.string() + ": expected 3 rows, found " + std::to_string(row));
  }
  return c;
}

const std::vector<double>& CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return columns[i];
  }
  throw Error(ErrorCode::config, "CSV has no column '" + name + "'");
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::istringstream text(slurp(path));
  CsvTable table;
  std::string line;
  int lineno = 0;
  const auto split = [](const std::string& l) {
    std::vector<std::string> cells;
    std::stringstream ss(l);
    for (std::string cell; std::getline(ss, cell, ',');) cells.push_back(trim(cell));
    return cells;
  };
  while (std::getline(text, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const auto cells = split(line);
    if (table.header.empty()) {
      table.header = cells;
      table.columns.resize(cells.size());
      continue;
    }
    const std::string where = path.string() + ":" + std::to_string(lineno);
    if (cells.size() != table.header.size()) {
      throw Error(ErrorCode::config, where + ": expected " + std::to_string(table.header.size()) + " fields");
    }
    for (std::size_t i = 0; i < cells.size(); ++i) table.columns[i].push_back(parse_real(cells[i], where));
  }
  if (table.header.empty()) {
    throw Error(ErrorCode::config, path.string() + ": empty CSV");
  }
  return table;
}

void write_file_atomically(const std::filesystem::path& path, const std::string& contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw IoError("cannot open " + tmp.string() + " for writing");
    }
    out << contents;
    out.flush();
    if (!out) {
      std::error_code ignored;
      std::filesystem::remove(tmp, ignored);
      throw IoError("error while writing " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("cannot move " + tmp.string() + " to " + path.string());
  }
}

}  // namespace qecd::cli
