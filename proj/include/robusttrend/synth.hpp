#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "robusttrend/time_series.hpp"

namespace robusttrend {

struct SyntheticSpec {
  std::size_t n = 1000;
  double amplitude = 1.0;
  double noise_sigma = 0.2;
  double outlier_ratio = 0.0;
  double outlier_amplitude = 2.0;
  std::uint64_t seed = 0;

  void validate() const;
};

struct SyntheticDataset {
  TimeSeries series;  // values = trend + noise + outliers, truth = trend
  std::vector<std::size_t> outlier_positions;  // sorted
  std::vector<std::size_t> change_points;      // sorted; 9 in the default layout
};

/// The clean trend: a sine third, a triangle third, and a square third,
/// all at the given amplitude. Depends only on (n, amplitude).
std::vector<double> trend_waveform(std::size_t n, double amplitude);

/// Indices where the trend changes abruptly: the two segment junctions,
/// the triangle's three slope kinks, and the square wave's four edges.
std::vector<std::size_t> trend_change_points(std::size_t n);

/// Builds the contaminated series: waveform + seeded Gaussian noise +
/// alternating spikes/dips of the given amplitude at round(ratio * n)
/// distinct seeded positions. A pure function of SyntheticSpec, seed
/// included.
SyntheticDataset generate(const SyntheticSpec& spec);

/// Deterministic random stream built on std::mt19937_64, whose output
/// sequence the standard fixes bit-for-bit. The normal variates come from
/// an explicit Box-Muller transform and index draws from top-bits rejection
/// sampling, so no implementation-defined distribution code is involved and
/// identical seeds reproduce identical datasets.
class SeededSampler {
 public:
  explicit SeededSampler(std::uint64_t seed) : engine_(seed) {}

  /// Standard normal variate.
  double next_normal();

  /// Uniform draw from [0, bound), bias-free.
  std::uint64_t next_index(std::uint64_t bound);

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace robusttrend
