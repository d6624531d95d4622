/*
 * Copyright 2026 The dartr Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "dartr/csv.hpp"

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "dartr/errors.hpp"

namespace dartr {

std::string format_double(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.16e", value);
  return buffer;
}

void write_text_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const fs::path temp = target.string() + ".tmp";
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open " + temp.string() + " for writing");
    out << content;
    out.flush();
    if (!out) throw Error("write failed: " + temp.string());
  }
  fs::rename(temp, target);
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParameterError("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

CsvWriter::CsvWriter(std::vector<std::string> header) : header_(std::move(header)) {}

void CsvWriter::add_row(std::initializer_list<Field> fields) {
  add_row(std::vector<Field>(fields));
}

void CsvWriter::add_row(const std::vector<Field>& fields) {
  if (fields.size() != header_.size()) {
    throw ParameterError("csv row has " + std::to_string(fields.size()) + " fields, header has " +
                         std::to_string(header_.size()));
  }
  bool first = true;
  for (const auto& field : fields) {
    if (!first) body_ += ',';
    first = false;
    if (const auto* d = std::get_if<double>(&field)) {
      body_ += format_double(*d);
    } else if (const auto* i = std::get_if<long long>(&field)) {
      body_ += std::to_string(*i);
    } else {
      body_ += std::get<std::string>(field);
    }
  }
  body_ += '\n';
}

std::string CsvWriter::str() const {
  std::string out;
  for (std::size_t i = 0; i < header_.size(); ++i) {
    if (i) out += ',';
    out += header_[i];
  }
  out += '\n';
  return out + body_;
}

void CsvWriter::save(const std::string& path) const { write_text_atomic(path, str()); }

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(',', start);
    fields.push_back(line.substr(start, pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return fields;
}

}  // namespace

CsvData parse_csv(const std::string& text) {
  CsvData data;
  std::istringstream in(text);
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (header) {
      data.header = split_fields(line);
      header = false;
    } else {
      data.rows.push_back(split_fields(line));
    }
  }
  if (header) throw ParameterError("csv input is empty");
  return data;
}

CsvData read_csv(const std::string& path) { return parse_csv(read_text(path)); }

double parse_double(const std::string& field) {
  std::size_t begin = field.find_first_not_of(" \t");
  std::size_t end = field.find_last_not_of(" \t");
  if (begin == std::string::npos) throw ParameterError("empty numeric field");
  const char* first = field.data() + begin;
  const char* last = field.data() + end + 1;
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) throw ParameterError("not a number: '" + field + "'");
  return value;
}

}  // namespace dartr
