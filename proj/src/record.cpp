#include "obsint/record.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "obsint/error.hpp"

namespace obsint {

RunRecord::RunRecord(std::vector<std::string> columns) : columns_(std::move(columns)) {
  if (columns_.empty()) throw Error("a record needs at least one column");
}

void RunRecord::add_row(std::span<const double> row) {
  if (row.size() != columns_.size()) throw Error("row width does not match the column count");
  if (!data_.empty() && row[0] < data_[data_.size() - columns_.size()]) {
    throw Error("time column must be monotone");
  }
  data_.insert(data_.end(), row.begin(), row.end());
}

std::span<const double> RunRecord::row(std::size_t r) const {
  return std::span<const double>(data_).subspan(r * columns_.size(), columns_.size());
}

std::size_t RunRecord::index_of(const std::string& column) const {
  auto it = std::find(columns_.begin(), columns_.end(), column);
  if (it == columns_.end()) throw Error("no such column: " + column);
  return static_cast<std::size_t>(it - columns_.begin());
}

bool RunRecord::has_column(const std::string& column) const {
  return std::find(columns_.begin(), columns_.end(), column) != columns_.end();
}

std::vector<double> RunRecord::column(const std::string& name) const { return column(index_of(name)); }

std::vector<double> RunRecord::column(std::size_t idx) const {
  std::vector<double> out;
  out.reserve(rows());
  for (std::size_t r = 0; r < rows(); ++r) out.push_back(at(r, idx));
  return out;
}

namespace {

std::string quote_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  fields.push_back(std::move(cur));
  return fields;
}

double parse_double(const std::string& s) {
  if (s == "nan") return std::nan("");
  if (s == "inf") return HUGE_VAL;
  if (s == "-inf") return -HUGE_VAL;
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw Error("malformed CSV number: '" + s + "'");
  return v;
}

}  // namespace

std::string to_csv(const RunRecord& record) {
  fmt::memory_buffer buf;
  const auto& cols = record.columns();
  for (std::size_t c = 0; c < cols.size(); ++c) {
    if (c) buf.push_back(',');
    fmt::format_to(std::back_inserter(buf), "{}", quote_field(cols[c]));
  }
  buf.push_back('\r');
  buf.push_back('\n');
  for (std::size_t r = 0; r < record.rows(); ++r) {
    for (std::size_t c = 0; c < cols.size(); ++c) {
      if (c) buf.push_back(',');
      fmt::format_to(std::back_inserter(buf), "{}", record.at(r, c));
    }
    buf.push_back('\r');
    buf.push_back('\n');
  }
  return fmt::to_string(buf);
}

void export_csv(const RunRecord& record, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out << to_csv(record);
  if (!out) throw Error("write failed: " + path.string());
}

RunRecord parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw Error("empty CSV");
  RunRecord rec(split_csv_line(line));
  std::vector<double> row;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != rec.cols()) throw Error("ragged CSV row");
    row.clear();
    for (const auto& f : fields) row.push_back(parse_double(f));
    rec.add_row(row);
  }
  return rec;
}

RunRecord read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_csv(ss.str());
}

double trend_slope(std::span<const double> t, std::span<const double> y, double t_from) {
  double n = 0, st = 0, sy = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] < t_from) continue;
    n += 1;
    st += t[i];
    sy += y[i];
  }
  if (n < 2) throw Error("not enough samples for a trend fit");
  const double mt = st / n;
  const double my = sy / n;
  double num = 0, den = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] < t_from) continue;
    num += (t[i] - mt) * (y[i] - my);
    den += (t[i] - mt) * (t[i] - mt);
  }
  return num / den;
}

double rms(std::span<const double> t, std::span<const double> y, double t_from) {
  double acc = 0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] < t_from) continue;
    acc += y[i] * y[i];
    ++n;
  }
  if (n == 0) throw Error("no samples in the RMS window");
  return std::sqrt(acc / static_cast<double>(n));
}

}  // namespace obsint
