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

#pragma once

#include <initializer_list>
#include <string>
#include <variant>
#include <vector>

namespace dartr {

/// Scientific notation with 17 significant digits ("%.16e").
std::string format_double(double value);

/// Writes to `path + ".tmp"` and renames over `path`, so readers never see a
/// truncated file. Creates parent directories.
void write_text_atomic(const std::string& path, const std::string& content);

std::string read_text(const std::string& path);

/// Header row, '.' decimal, LF newlines, no quoting (fields never contain ',').
class CsvWriter {
 public:
  using Field = std::variant<double, long long, std::string>;

  explicit CsvWriter(std::vector<std::string> header);

  void add_row(std::initializer_list<Field> fields);
  void add_row(const std::vector<Field>& fields);

  std::string str() const;
  void save(const std::string& path) const;

 private:
  std::vector<std::string> header_;
  std::string body_;
};

struct CsvData {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

CsvData parse_csv(const std::string& text);
CsvData read_csv(const std::string& path);

/// Strict double parse of a whole field; throws ParameterError on junk.
double parse_double(const std::string& field);

}  // namespace dartr
