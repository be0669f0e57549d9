#include "robusttrend/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace robusttrend {

namespace {

std::pair<double, double> score_indices(std::span<const double> estimate,
                                        std::span<const double> truth,
                                        std::span<const std::size_t> indices) {
  double sq = 0.0;
  double ab = 0.0;
  for (std::size_t i : indices) {
    const double e = estimate[i] - truth[i];
    sq += e * e;
    ab += std::abs(e);
  }
  const double count = static_cast<double>(indices.size());
  return {sq / count, ab / count};
}

}  // namespace

std::pair<double, double> score(std::span<const double> estimate,
                                std::span<const double> truth) {
  if (estimate.size() != truth.size() || estimate.empty()) {
    throw std::invalid_argument("score: estimate/truth length mismatch");
  }
  std::vector<std::size_t> all(estimate.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return score_indices(estimate, truth, all);
}

std::pair<double, double> score_changepoints(
    std::span<const double> estimate, std::span<const double> truth,
    std::span<const std::size_t> change_points) {
  if (estimate.size() != truth.size() || estimate.empty()) {
    throw std::invalid_argument(
        "score_changepoints: estimate/truth length mismatch");
  }
  if (change_points.empty()) {
    throw std::invalid_argument("score_changepoints: no change points given");
  }
  std::vector<std::size_t> indices;
  indices.reserve(change_points.size() * 3);
  for (std::size_t cp : change_points) {
    if (cp < 1 || cp + 1 >= estimate.size()) {
      throw std::invalid_argument("change point out of range [1, n-2]");
    }
    indices.push_back(cp - 1);
    indices.push_back(cp);
    indices.push_back(cp + 1);
  }
  std::sort(indices.begin(), indices.end());
  indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
  return score_indices(estimate, truth, indices);
}

ScoreReport full_report(std::span<const double> estimate,
                        std::span<const double> truth,
                        std::span<const std::size_t> change_points) {
  ScoreReport r;
  std::tie(r.mse, r.mae) = score(estimate, truth);
  r.n_scored = estimate.size();
  std::tie(r.cp_mse, r.cp_mae) =
      score_changepoints(estimate, truth, change_points);
  // Recount the deduplicated neighborhood.
  std::vector<std::size_t> indices;
  for (std::size_t cp : change_points) {
    indices.push_back(cp - 1);
    indices.push_back(cp);
    indices.push_back(cp + 1);
  }
  std::sort(indices.begin(), indices.end());
  indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
  r.n_cp_scored = indices.size();
  return r;
}

std::string to_text(const ScoreReport& report) {
  char buf[256];
  std::string out;
  std::snprintf(buf, sizeof(buf), "mse = %.10g\n", report.mse);
  out += buf;
  std::snprintf(buf, sizeof(buf), "mae = %.10g\n", report.mae);
  out += buf;
  std::snprintf(buf, sizeof(buf), "cp_mse = %.10g\n", report.cp_mse);
  out += buf;
  std::snprintf(buf, sizeof(buf), "cp_mae = %.10g\n", report.cp_mae);
  out += buf;
  std::snprintf(buf, sizeof(buf), "n_scored = %zu\n", report.n_scored);
  out += buf;
  std::snprintf(buf, sizeof(buf), "n_cp_scored = %zu\n", report.n_cp_scored);
  out += buf;
  return out;
}

}  // namespace robusttrend
