#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace robusttrend {

struct ScoreReport {
  double mse = 0.0;
  double mae = 0.0;
  double cp_mse = 0.0;
  double cp_mae = 0.0;
  std::size_t n_scored = 0;
  std::size_t n_cp_scored = 0;
};

/// Mean squared and mean absolute error of an estimate against the truth.
std::pair<double, double> score(std::span<const double> estimate,
                                std::span<const double> truth);

/// Same, restricted to each change point and its two neighbors
/// (deduplicated). Change points must lie in [1, n-2].
std::pair<double, double> score_changepoints(
    std::span<const double> estimate, std::span<const double> truth,
    std::span<const std::size_t> change_points);

ScoreReport full_report(std::span<const double> estimate,
                        std::span<const double> truth,
                        std::span<const std::size_t> change_points);

/// Flat key-value rendering, one `key = value` per line.
std::string to_text(const ScoreReport& report);

}  // namespace robusttrend
