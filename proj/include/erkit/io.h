// Copyright 2026 The erkit Authors.
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

#ifndef ERKIT_IO_H_
#define ERKIT_IO_H_

#include <cstdint>
#include <fstream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace erkit {

// Streaming reader for delimited text. Supports double-quoted fields with
// embedded delimiters, doubled quotes and newlines; strips a trailing CR.
class CsvReader {
 public:
  CsvReader(const std::string &path, char delimiter = ',');

  // Reads the next record into fields. Returns false at end of file.
  bool Next(std::vector<std::string> &fields);

  // 1-based line number where the last returned record started.
  size_t line() const { return record_line_; }
  const std::string &path() const { return path_; }

 private:
  std::string path_;
  std::ifstream in_;
  char delimiter_;
  size_t line_ = 0;
  size_t record_line_ = 0;
};

// Buffered writer producing RFC 4180 style output with '\n' line ends.
class CsvWriter {
 public:
  CsvWriter(const std::string &path, char delimiter = ',');
  ~CsvWriter();

  void Write(const std::vector<std::string> &fields);
  // Appends one preformatted line (no quoting applied).
  void WriteRaw(std::string_view line);
  void Close();

 private:
  std::string path_;
  std::ofstream out_;
  char delimiter_;
  std::string buffer_;
};

std::string QuoteField(std::string_view field, char delimiter);

// Lowercase hex SHA-256 of the data or of a file's bytes.
std::string Sha256Hex(std::string_view data);
std::string Sha256File(const std::string &path);

std::string ReadFile(const std::string &path);
void WriteFile(const std::string &path, std::string_view contents);

// Shortest decimal text that round-trips to the same double.
std::string FormatDouble(double v);
std::string FormatFixed(double v, int decimals);

std::optional<double> ParseDouble(std::string_view s);
std::optional<int64_t> ParseInt(std::string_view s);

std::string Trim(std::string_view s);

}  // namespace erkit

#endif  // ERKIT_IO_H_
