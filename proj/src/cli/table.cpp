// Copyright 2026 The vsic Authors
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

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "vsic/cli.hpp"

namespace vsic::cli {

void TableOutput::validate() const {
  if (header.empty()) throw DomainError("table has no columns");
  for (const auto& h : header) {
    for (unsigned char c : h) {
      if (c > 127 || c == ',' || c == '\n') throw DomainError("column name '" + h + "' is not plain ASCII");
    }
  }
  for (const auto& r : rows) {
    if (r.size() != header.size()) throw DomainError("table rows must match the header width");
    for (double v : r) {
      if (!std::isfinite(v)) throw NumericalError("non-finite value in output table");
    }
  }
}

std::string TableOutput::to_csv() const {
  validate();
  std::string out;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) out += ',';
    out += header[i];
  }
  out += '\n';
  char buf[32];
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (i) out += ',';
      // "%.12g" is locale-independent for the "C" locale the CLI runs under.
      const double v = r[i] == 0.0 ? 0.0 : r[i];
      std::snprintf(buf, sizeof buf, "%.12g", v);
      out += buf;
    }
    out += '\n';
  }
  return out;
}

std::vector<std::vector<double>> read_numeric_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot read data file " + path.string());
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::vector<double> row;
    std::stringstream ss(line);
    bool numeric = true;
    for (std::string cell; std::getline(ss, cell, ',');) {
      char* end = nullptr;
      const double v = std::strtod(cell.c_str(), &end);
      while (end && (*end == ' ' || *end == '\t')) ++end;
      if (end == cell.c_str() || (end && *end != '\0')) {
        numeric = false;
        break;
      }
      row.push_back(v);
    }
    if (!numeric) {
      if (rows.empty()) continue;
      throw DomainError(path.string() + ":" + std::to_string(line_no) + ": non-numeric value");
    }
    if (row.size() < 2) throw DomainError(path.string() + ":" + std::to_string(line_no) + ": need >= 2 columns");
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw DomainError(path.string() + ":" + std::to_string(line_no) + ": ragged row");
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw DomainError("no numeric rows in " + path.string());
  return rows;
}

}  // namespace vsic::cli
