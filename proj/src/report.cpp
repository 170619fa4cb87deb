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

#include "crowdnorm/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace crowdnorm {

namespace {

void fail(const std::string& what) { throw std::runtime_error(what); }

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

void write_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail("cannot open for writing: " + tmp);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) fail("short write: " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    fail("cannot move into place: " + path);
}

}  // namespace

std::string format_cell(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

std::string to_csv(const Table& table) {
  std::string out;
  for (size_t c = 0; c < table.header.size(); ++c) {
    if (c) out.push_back(',');
    out += table.header[c];
  }
  out.push_back('\n');
  for (const auto& row : table.rows) {
    if (row.size() != table.header.size())
      fail("to_csv: row width does not match header");
    for (size_t c = 0; c < row.size(); ++c) {
      if (c) out.push_back(',');
      out += format_cell(row[c]);
    }
    out.push_back('\n');
  }
  return out;
}

void write_csv(const std::string& path, const Table& table) {
  write_atomic(path, to_csv(table));
}

Table read_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("cannot open CSV: " + path);
  Table table;
  std::string line;
  if (!std::getline(in, line)) fail("empty CSV: " + path);
  std::stringstream head(trim(line));
  std::string cell;
  while (std::getline(head, cell, ',')) table.header.push_back(trim(cell));
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) {
      try {
        size_t used = 0;
        row.push_back(std::stod(cell, &used));
        if (used != trim(cell).size() && used != cell.size())
          fail("non-numeric cell '" + cell + "' in " + path);
      } catch (const std::invalid_argument&) {
        fail("non-numeric cell '" + cell + "' in " + path);
      }
    }
    if (row.size() != table.header.size())
      fail("ragged CSV row in " + path);
    table.rows.push_back(std::move(row));
  }
  return table;
}

Config Config::parse(const std::string& text) {
  Config config;
  std::stringstream ss(text);
  std::string line;
  int line_no = 0;
  while (std::getline(ss, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      fail("config line " + std::to_string(line_no) +
           ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      fail("config line " + std::to_string(line_no) + ": empty key");
    config.values_[key] = value;
  }
  return config;
}

Config Config::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("cannot open config: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str());
}

double Config::number(const std::string& key, double fallback) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  try {
    return std::stod(it->second);
  } catch (...) {
    fail("config: " + key + ": not a number: '" + it->second + "'");
  }
  return fallback;
}

long Config::integer(const std::string& key, long fallback) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  try {
    return std::stol(it->second);
  } catch (...) {
    fail("config: " + key + ": not an integer: '" + it->second + "'");
  }
  return fallback;
}

std::string Config::text(const std::string& key,
                         const std::string& fallback) const {
  const auto it = values_.find(key);
  return it == values_.end() ? fallback : it->second;
}

namespace {

constexpr int kWidth = 640;
constexpr int kHeight = 440;
constexpr int kMarginLeft = 70;
constexpr int kMarginRight = 130;
constexpr int kMarginTop = 40;
constexpr int kMarginBottom = 55;

const char* kSeriesColor[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                              "#9467bd", "#8c564b"};

std::string svg_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

size_t column_index(const Table& table, const std::string& name) {
  const auto it =
      std::find(table.header.begin(), table.header.end(), name);
  if (it == table.header.end())
    fail("chart: no column named '" + name + "'");
  return static_cast<size_t>(it - table.header.begin());
}

}  // namespace

std::string render_chart_svg(const Table& table, const std::string& x_column,
                             const std::vector<std::string>& y_columns,
                             const std::string& title) {
  if (table.rows.empty()) fail("chart: table has no rows");
  if (y_columns.empty()) fail("chart: no y columns requested");
  const size_t xi = column_index(table, x_column);
  std::vector<size_t> yi;
  for (const auto& name : y_columns) yi.push_back(column_index(table, name));

  double xmin = table.rows.front()[xi], xmax = xmin;
  double ymin = table.rows.front()[yi.front()], ymax = ymin;
  for (const auto& row : table.rows) {
    xmin = std::min(xmin, row[xi]);
    xmax = std::max(xmax, row[xi]);
    for (size_t c : yi) {
      ymin = std::min(ymin, row[c]);
      ymax = std::max(ymax, row[c]);
    }
  }
  if (xmax == xmin) {
    xmin -= 0.5;
    xmax += 0.5;
  }
  if (ymax == ymin) {
    ymin -= 0.5;
    ymax += 0.5;
  }

  const double plot_w = kWidth - kMarginLeft - kMarginRight;
  const double plot_h = kHeight - kMarginTop - kMarginBottom;
  const auto x_pos = [&](double x) {
    return kMarginLeft + (x - xmin) / (xmax - xmin) * plot_w;
  };
  const auto y_pos = [&](double y) {
    return kMarginTop + (1.0 - (y - ymin) / (ymax - ymin)) * plot_h;
  };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
         std::to_string(kWidth) + "\" height=\"" + std::to_string(kHeight) +
         "\" viewBox=\"0 0 " + std::to_string(kWidth) + " " +
         std::to_string(kHeight) + "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg += "<text x=\"" + std::to_string(kWidth / 2) +
         "\" y=\"22\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"15\">" +
         title + "</text>\n";

  // Axes with five ticks per side.
  svg += "<g stroke=\"#444\" stroke-width=\"1\" font-family=\"sans-serif\" "
         "font-size=\"11\">\n";
  for (int i = 0; i <= 4; ++i) {
    const double fx = xmin + (xmax - xmin) * i / 4.0;
    const double px = x_pos(fx);
    svg += "<line x1=\"" + svg_num(px) + "\" y1=\"" +
           svg_num(kMarginTop + plot_h) + "\" x2=\"" + svg_num(px) +
           "\" y2=\"" + svg_num(kMarginTop + plot_h + 5) + "\"/>\n";
    svg += "<text stroke=\"none\" x=\"" + svg_num(px) + "\" y=\"" +
           svg_num(kMarginTop + plot_h + 18) + "\" text-anchor=\"middle\">" +
           svg_num(fx) + "</text>\n";
    const double fy = ymin + (ymax - ymin) * i / 4.0;
    const double py = y_pos(fy);
    svg += "<line x1=\"" + svg_num(kMarginLeft - 5) + "\" y1=\"" +
           svg_num(py) + "\" x2=\"" + svg_num(kMarginLeft) + "\" y2=\"" +
           svg_num(py) + "\"/>\n";
    svg += "<text stroke=\"none\" x=\"" + svg_num(kMarginLeft - 8) +
           "\" y=\"" + svg_num(py + 4) + "\" text-anchor=\"end\">" +
           svg_num(fy) + "</text>\n";
  }
  svg += "<line x1=\"" + svg_num(kMarginLeft) + "\" y1=\"" +
         svg_num(kMarginTop) + "\" x2=\"" + svg_num(kMarginLeft) +
         "\" y2=\"" + svg_num(kMarginTop + plot_h) + "\"/>\n";
  svg += "<line x1=\"" + svg_num(kMarginLeft) + "\" y1=\"" +
         svg_num(kMarginTop + plot_h) + "\" x2=\"" +
         svg_num(kMarginLeft + plot_w) + "\" y2=\"" +
         svg_num(kMarginTop + plot_h) + "\"/>\n";
  svg += "</g>\n";

  svg += "<text x=\"" + svg_num(kMarginLeft + plot_w / 2) + "\" y=\"" +
         svg_num(kHeight - 14.0) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"12\">" +
         x_column + "</text>\n";

  for (size_t s = 0; s < yi.size(); ++s) {
    const char* color = kSeriesColor[s % 6];
    std::string points;
    for (const auto& row : table.rows) {
      if (!points.empty()) points.push_back(' ');
      points += svg_num(x_pos(row[xi])) + "," + svg_num(y_pos(row[yi[s]]));
    }
    svg += "<polyline fill=\"none\" stroke=\"" + std::string(color) +
           "\" stroke-width=\"1.5\" points=\"" + points + "\"/>\n";
    if (table.rows.size() == 1) {
      const auto& row = table.rows.front();
      svg += "<circle cx=\"" + svg_num(x_pos(row[xi])) + "\" cy=\"" +
             svg_num(y_pos(row[yi[s]])) + "\" r=\"3\" fill=\"" + color +
             "\"/>\n";
    }
    const double ly = kMarginTop + 14.0 * (static_cast<double>(s) + 1.0);
    svg += "<line x1=\"" + svg_num(kMarginLeft + plot_w + 8) + "\" y1=\"" +
           svg_num(ly - 4) + "\" x2=\"" + svg_num(kMarginLeft + plot_w + 26) +
           "\" y2=\"" + svg_num(ly - 4) + "\" stroke=\"" + color +
           "\" stroke-width=\"1.5\"/>\n";
    svg += "<text x=\"" + svg_num(kMarginLeft + plot_w + 30) + "\" y=\"" +
           svg_num(ly) +
           "\" font-family=\"sans-serif\" font-size=\"11\">" + y_columns[s] +
           "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

void render_chart(const std::string& csv_path, const std::string& x_column,
                  const std::vector<std::string>& y_columns,
                  const std::string& svg_path, const std::string& title) {
  const Table table = read_csv(csv_path);
  write_atomic(svg_path, render_chart_svg(table, x_column, y_columns, title));
}

}  // namespace crowdnorm
