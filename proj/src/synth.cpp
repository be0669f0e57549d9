#include "robusttrend/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace robusttrend {

void SyntheticSpec::validate() const {
  if (n < 3) throw std::invalid_argument("synthetic n must be >= 3");
  if (noise_sigma < 0.0) {
    throw std::invalid_argument("noise sigma must be nonnegative");
  }
  if (outlier_ratio < 0.0 || outlier_ratio > 1.0) {
    throw std::invalid_argument("outlier ratio must lie in [0, 1]");
  }
  const auto count =
      static_cast<std::size_t>(std::llround(outlier_ratio * static_cast<double>(n)));
  if (count > n) {
    throw std::invalid_argument("outlier count exceeds series length");
  }
}

double SeededSampler::next_normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  // (0,1] and [0,1) uniforms from the engine's top 53 bits.
  const double u1 =
      (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
  const double u2 = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

std::uint64_t SeededSampler::next_index(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("index bound must be positive");
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t word;
  do {
    word = engine_();
  } while (word >= limit);
  return word % bound;
}

std::vector<double> trend_waveform(std::size_t n, double amplitude) {
  if (n < 3) throw std::invalid_argument("waveform needs n >= 3");
  const std::size_t n1 = n / 3;
  const std::size_t n2 = n / 3;
  const std::size_t n3 = n - n1 - n2;
  std::vector<double> trend(n);

  // Sine third: one full period.
  for (std::size_t t = 0; t < n1; ++t) {
    trend[t] = amplitude * std::sin(2.0 * std::numbers::pi *
                                    static_cast<double>(t) /
                                    static_cast<double>(n1));
  }
  // Triangle third: anchors (0, A, -A, A, 0) at fractions 0, 1/6, 1/2, 5/6, 1
  // of the segment, giving three interior slope kinks.
  for (std::size_t t = 0; t < n2; ++t) {
    const double u = static_cast<double>(t) / static_cast<double>(n2);
    double v;
    if (u < 1.0 / 6.0) {
      v = 6.0 * u;
    } else if (u < 0.5) {
      v = 1.0 - 6.0 * (u - 1.0 / 6.0);
    } else if (u < 5.0 / 6.0) {
      v = -1.0 + 6.0 * (u - 0.5);
    } else {
      v = 1.0 - 6.0 * (u - 5.0 / 6.0);
    }
    trend[n1 + t] = amplitude * v;
  }
  // Square third: five alternating half-periods starting high, giving four
  // interior edges.
  for (std::size_t t = 0; t < n3; ++t) {
    const std::size_t piece = 5 * t / n3;
    trend[n1 + n2 + t] = (piece % 2 == 0) ? amplitude : -amplitude;
  }
  return trend;
}

std::vector<std::size_t> trend_change_points(std::size_t n) {
  const std::size_t n1 = n / 3;
  const std::size_t n2 = n / 3;
  const std::size_t n3 = n - n1 - n2;
  std::vector<std::size_t> cps;
  const auto push = [&cps, n](std::size_t idx) {
    if (idx >= 1 && idx + 1 < n) cps.push_back(idx);
  };
  // Segment junctions: first index of the triangle and of the square.
  push(n1);
  push(n1 + n2);
  // Triangle slope kinks, nearest samples to the 1/6, 1/2, 5/6 anchors.
  push(n1 + (n2 + 3) / 6);
  push(n1 + (n2 + 1) / 2);
  push(n1 + (5 * n2 + 3) / 6);
  // Square edges: first index of each new level.
  for (std::size_t k = 1; k <= 4; ++k) {
    push(n1 + n2 + (k * n3 + 4) / 5);
  }
  std::sort(cps.begin(), cps.end());
  cps.erase(std::unique(cps.begin(), cps.end()), cps.end());
  return cps;
}

SyntheticDataset generate(const SyntheticSpec& spec) {
  spec.validate();
  const std::size_t n = spec.n;
  std::vector<double> truth = trend_waveform(n, spec.amplitude);
  std::vector<double> values = truth;

  SeededSampler rng(spec.seed);
  if (spec.noise_sigma > 0.0) {
    for (std::size_t t = 0; t < n; ++t) {
      values[t] += spec.noise_sigma * rng.next_normal();
    }
  }

  const auto count = static_cast<std::size_t>(
      std::llround(spec.outlier_ratio * static_cast<double>(n)));
  std::vector<std::size_t> positions;
  if (count > 0) {
    // Partial Fisher-Yates over the index range.
    std::vector<std::size_t> indices(n);
    std::iota(indices.begin(), indices.end(), std::size_t{0});
    for (std::size_t k = 0; k < count; ++k) {
      const std::uint64_t j =
          k + rng.next_index(static_cast<std::uint64_t>(n - k));
      std::swap(indices[k], indices[j]);
    }
    positions.assign(indices.begin(), indices.begin() + count);
    std::sort(positions.begin(), positions.end());
    // Alternate spikes and dips along the series.
    for (std::size_t k = 0; k < positions.size(); ++k) {
      const double sign = (k % 2 == 0) ? 1.0 : -1.0;
      values[positions[k]] += sign * spec.outlier_amplitude;
    }
  }

  return SyntheticDataset{TimeSeries(std::move(values), std::move(truth)),
                          std::move(positions), trend_change_points(n)};
}

}  // namespace robusttrend
