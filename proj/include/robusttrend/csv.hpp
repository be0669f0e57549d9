#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "robusttrend/synth.hpp"

namespace robusttrend {

/// Shortest decimal rendering that round-trips a double exactly.
std::string format_double(double value);

struct DatasetCsv {
  std::vector<double> values;
  std::vector<double> truth;
  std::vector<std::size_t> outlier_positions;
  std::vector<std::size_t> change_points;
};

/// Columns: index,value,truth,is_outlier,is_change_point.
void write_dataset_csv(std::ostream& out, const SyntheticDataset& dataset);
DatasetCsv read_dataset_csv(std::istream& in);

/// Columns: index,value,trend,residual.
void write_filter_csv(std::ostream& out, std::span<const double> values,
                      std::span<const double> trend,
                      std::span<const double> residual);

/// Reads the `value` column of either CSV schema above (or any CSV whose
/// header names a `value` column; a headerless two-column file is taken as
/// index,value).
std::vector<double> read_value_column(std::istream& in);

}  // namespace robusttrend
