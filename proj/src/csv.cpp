#include "robusttrend/csv.hpp"

#include <algorithm>
#include <cstdio>
#include <cstring>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace robusttrend {

std::string format_double(double value) {
  // %.17g always round-trips; among the precisions that do, emit the
  // shortest text ("10" rather than "1e+01").
  char buf[64];
  std::string best;
  for (int precision = 1; precision <= 17; ++precision) {
    std::snprintf(buf, sizeof(buf), "%.*g", precision, value);
    double parsed = 0.0;
    std::sscanf(buf, "%lf", &parsed);
    if (parsed == value &&
        (best.empty() || std::strlen(buf) < best.size())) {
      best = buf;
    }
  }
  return best.empty() ? buf : best;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

double parse_double(const std::string& text, std::size_t line_no) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument("trailing junk");
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("line " + std::to_string(line_no) +
                                ": cannot parse number '" + text + "'");
  }
}

}  // namespace

void write_dataset_csv(std::ostream& out, const SyntheticDataset& dataset) {
  out << "index,value,truth,is_outlier,is_change_point\n";
  const auto& values = dataset.series.values();
  const auto& truth = *dataset.series.truth();
  std::vector<char> is_outlier(values.size(), 0);
  std::vector<char> is_cp(values.size(), 0);
  for (std::size_t p : dataset.outlier_positions) is_outlier[p] = 1;
  for (std::size_t p : dataset.change_points) is_cp[p] = 1;
  for (std::size_t i = 0; i < values.size(); ++i) {
    out << i << ',' << format_double(values[i]) << ','
        << format_double(truth[i]) << ',' << int(is_outlier[i]) << ','
        << int(is_cp[i]) << '\n';
  }
}

DatasetCsv read_dataset_csv(std::istream& in) {
  DatasetCsv data;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (!header_seen) {
      header_seen = true;
      if (line.rfind("index,", 0) == 0) continue;  // header row
    }
    const auto fields = split_csv_line(line);
    if (fields.size() != 5) {
      throw std::invalid_argument("line " + std::to_string(line_no) +
                                  ": expected 5 columns");
    }
    data.values.push_back(parse_double(fields[1], line_no));
    data.truth.push_back(parse_double(fields[2], line_no));
    const std::size_t idx = data.values.size() - 1;
    if (fields[3] == "1") data.outlier_positions.push_back(idx);
    if (fields[4] == "1") data.change_points.push_back(idx);
  }
  if (data.values.empty()) {
    throw std::invalid_argument("dataset CSV has no rows");
  }
  return data;
}

void write_filter_csv(std::ostream& out, std::span<const double> values,
                      std::span<const double> trend,
                      std::span<const double> residual) {
  out << "index,value,trend,residual\n";
  for (std::size_t i = 0; i < values.size(); ++i) {
    out << i << ',' << format_double(values[i]) << ','
        << format_double(trend[i]) << ',' << format_double(residual[i])
        << '\n';
  }
}

std::vector<double> read_value_column(std::istream& in) {
  std::vector<double> values;
  std::string line;
  std::size_t line_no = 0;
  std::ptrdiff_t value_col = -1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (value_col < 0) {
      // First non-empty line: either a header naming `value` or data.
      const auto it = std::find(fields.begin(), fields.end(), "value");
      if (it != fields.end()) {
        value_col = it - fields.begin();
        continue;
      }
      value_col = fields.size() >= 2 ? 1 : 0;
    }
    if (static_cast<std::size_t>(value_col) >= fields.size()) {
      throw std::invalid_argument("line " + std::to_string(line_no) +
                                  ": too few columns");
    }
    values.push_back(parse_double(fields[value_col], line_no));
  }
  if (values.empty()) {
    throw std::invalid_argument("input CSV has no data rows");
  }
  return values;
}

}  // namespace robusttrend
