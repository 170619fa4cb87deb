// Copyright 2026 The crowdnorm Authors
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

#ifndef CROWDNORM_REPORT_HPP
#define CROWDNORM_REPORT_HPP

#include <map>
#include <string>
#include <vector>

namespace crowdnorm {

// Numeric table destined for a CSV file. Cells print with 12 significant
// digits so a round trip through the file preserves plotted values.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

std::string format_cell(double value);

// Renders the table as UTF-8, comma-separated, LF line endings.
std::string to_csv(const Table& table);

// Writes atomically (temp file + rename).
void write_csv(const std::string& path, const Table& table);

Table read_csv(const std::string& path);

// Flat key = value configuration text; '#' starts a comment. Unknown keys
// are the caller's concern; lookups report errors with the field path.
class Config {
 public:
  static Config parse(const std::string& text);
  static Config load(const std::string& path);

  bool has(const std::string& key) const { return values_.count(key) > 0; }
  double number(const std::string& key, double fallback) const;
  long integer(const std::string& key, long fallback) const;
  std::string text(const std::string& key, const std::string& fallback) const;
  void set(const std::string& key, const std::string& value) {
    values_[key] = value;
  }
  const std::map<std::string, std::string>& entries() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

// One polyline per y column against the x column; axes labeled with the
// column names. Output is byte-deterministic for identical input.
std::string render_chart_svg(const Table& table, const std::string& x_column,
                             const std::vector<std::string>& y_columns,
                             const std::string& title);

// Convenience wrapper: read a CSV, render, write the SVG next to it.
void render_chart(const std::string& csv_path, const std::string& x_column,
                  const std::vector<std::string>& y_columns,
                  const std::string& svg_path, const std::string& title);

}  // namespace crowdnorm

#endif  // CROWDNORM_REPORT_HPP
