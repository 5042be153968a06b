#pragma once

#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace obsint {

// Uniformly sampled, labelled time series. The first column is time "t".
// Data are row-major; every row has exactly one value per column.
class RunRecord {
 public:
  RunRecord() = default;
  explicit RunRecord(std::vector<std::string> columns);

  const std::vector<std::string>& columns() const { return columns_; }
  std::size_t rows() const { return columns_.empty() ? 0 : data_.size() / columns_.size(); }
  std::size_t cols() const { return columns_.size(); }
  bool empty() const { return data_.empty(); }

  // Throws if the row width is wrong or time would not be monotone.
  void add_row(std::span<const double> row);
  void reserve_rows(std::size_t n) { data_.reserve(n * columns_.size()); }

  double at(std::size_t row, std::size_t col) const { return data_[row * columns_.size() + col]; }
  std::span<const double> row(std::size_t r) const;
  std::size_t index_of(const std::string& column) const;
  bool has_column(const std::string& column) const;
  std::vector<double> column(const std::string& name) const;
  std::vector<double> column(std::size_t idx) const;

  const std::vector<double>& raw() const { return data_; }

  std::map<std::string, std::string> metadata;

  friend bool operator==(const RunRecord& a, const RunRecord& b) {
    return a.columns_ == b.columns_ && a.data_ == b.data_;
  }

 private:
  std::vector<std::string> columns_;
  std::vector<double> data_;
};

// RFC-4180 style CSV: one header row, shortest round-trip decimal formatting.
void export_csv(const RunRecord& record, const std::filesystem::path& path);
std::string to_csv(const RunRecord& record);
RunRecord read_csv(const std::filesystem::path& path);
RunRecord parse_csv(const std::string& text);

// Least-squares slope of y against t using samples with t >= t_from.
double trend_slope(std::span<const double> t, std::span<const double> y, double t_from);
// Root-mean-square of y over samples with t >= t_from.
double rms(std::span<const double> t, std::span<const double> y, double t_from);

}  // namespace obsint
