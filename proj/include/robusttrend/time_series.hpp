#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace robusttrend {

/// A univariate series of real samples, optionally paired with a known
/// clean trend used for scoring. Validated once at construction:
/// at least 3 samples, all finite, truth (if any) of matching length.
class TimeSeries {
 public:
  explicit TimeSeries(std::vector<double> values)
      : values_(std::move(values)) {
    check_values(values_);
  }

  TimeSeries(std::vector<double> values, std::vector<double> truth)
      : values_(std::move(values)), truth_(std::move(truth)) {
    check_values(values_);
    if (truth_->size() != values_.size()) {
      throw std::invalid_argument("truth length must match series length");
    }
    for (double t : *truth_) {
      if (!std::isfinite(t)) {
        throw std::invalid_argument("truth contains a non-finite sample");
      }
    }
  }

  std::size_t size() const noexcept { return values_.size(); }
  const std::vector<double>& values() const noexcept { return values_; }
  const std::optional<std::vector<double>>& truth() const noexcept {
    return truth_;
  }

 private:
  static void check_values(const std::vector<double>& v) {
    if (v.size() < 3) {
      throw std::invalid_argument(
          "series needs at least 3 samples (second differences require 3)");
    }
    for (double x : v) {
      if (!std::isfinite(x)) {
        throw std::invalid_argument("series contains a non-finite sample");
      }
    }
  }

  std::vector<double> values_;
  std::optional<std::vector<double>> truth_;
};

}  // namespace robusttrend
