#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "robusttrend/solver.hpp"
#include "robusttrend/time_series.hpp"

namespace robusttrend {

/// Quadratic smoothing: the unique minimizer of
///   (1/2)||y - tau||^2 + lambda ||D2 tau||_2^2,
/// i.e. the solution of (I + 2 lambda D2^T D2) tau = y via one banded solve.
std::vector<double> hp_filter(std::span<const double> y, double lambda);

/// (1/2)||y - tau||^2 + lambda ||D2 tau||_1, solved on the shared ADMM path
/// with identity loss weights.
FilterResult l1_trend_filter(const TimeSeries& y, double lambda,
                             const SolverConfig& cfg);

/// (1/2)||y - tau||^2 + lambda ||D1 tau||_1; piecewise-constant fits with
/// the usual staircasing on smooth stretches.
FilterResult tv_denoise(const TimeSeries& y, double lambda,
                        const SolverConfig& cfg);

/// Squared loss with both difference penalties active.
FilterResult mixed_filter(const TimeSeries& y, double lambda1, double lambda2,
                          const SolverConfig& cfg);

/// Huber loss with a first-difference penalty only (cfg supplies gamma).
FilterResult tv_huber_filter(const TimeSeries& y, double lambda1,
                             const SolverConfig& cfg);

/// Huber loss with a second-difference penalty only (cfg supplies gamma).
FilterResult l1_huber_filter(const TimeSeries& y, double lambda2,
                             const SolverConfig& cfg);

/// Huber loss with squared difference penalties
///   huber(y - tau) + lambda1 ||D1 tau||_2^2 + lambda2 ||D2 tau||_2^2,
/// solved by reweighted banded solves
///   (A(tau^k) + 2 lambda1 D1^T D1 + 2 lambda2 D2^T D2) tau^{k+1} = A(tau^k) y
/// iterated to a fixed point. In the returned FilterResult,
/// primal_residual_norm holds the stationarity residual of that normal
/// equation at the final iterate and dual_residual_norm is zero.
FilterResult robust_trend_l2(const TimeSeries& y, double lambda1,
                             double lambda2, const SolverConfig& cfg);

/// Sliding-window repeated median: per center t the slope is the median
/// over window points i of the median over j != i of pairwise slopes, and
/// the level is the median of the slope-corrected samples. Windows truncate
/// at the series edges. The window must be odd and within [3, n].
std::vector<double> repeated_median_filter(std::span<const double> y,
                                           int window);

enum class FilterKind {
  RobustTrend,
  HP,
  L1Trend,
  TVDenoise,
  Mixed,
  TVHuber,
  L1Huber,
  RobustTrendL2,
  RepeatedMedian,
  // Known external baselines that this build does not carry; running them
  // raises NotBundledError so tabulators can degrade to NA.
  Wavelet,
  Emd,
  Eemd,
  Robfilter,
};

class NotBundledError : public std::runtime_error {
 public:
  explicit NotBundledError(const std::string& name)
      : std::runtime_error("external baseline not bundled: " + name) {}
};

/// One fully parameterized filter choice, as used by the CLI and the
/// benchmark grid.
struct BaselineSpec {
  FilterKind kind = FilterKind::RobustTrend;
  double lambda = 0.0;   // HP / L1Trend / TVDenoise / TVHuber / L1Huber
  double lambda1 = 0.0;  // Mixed / RobustTrend / RobustTrendL2
  double lambda2 = 0.0;
  double gamma = 0.0;  // Huber-loss variants
  int window = 0;      // RepeatedMedian

  void validate() const;
};

FilterKind parse_filter_kind(const std::string& name);
std::string filter_kind_name(FilterKind kind);
/// Names accepted by parse_filter_kind, bundled methods first.
std::vector<std::string> available_filter_names();

/// Dispatches to the matching filter. `base` supplies the ADMM controls
/// (rho, iteration and tolerance settings); loss and penalty weights come
/// from the BaselineSpec. Throws NotBundledError for external baselines.
FilterResult apply_filter(const BaselineSpec& spec, const TimeSeries& y,
                          const SolverConfig& base);

}  // namespace robusttrend
