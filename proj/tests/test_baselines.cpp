#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "robusttrend/baselines.hpp"
#include "support/dense.hpp"
#include "support/objective_oracle.hpp"
#include "support/random_helpers.hpp"

using namespace robusttrend;
namespace ts = testsupport;

namespace {

SolverConfig tight_config() {
  SolverConfig cfg;
  cfg.huber = HuberParams{1.0};
  cfg.lambda1 = 1.0;  // placeholder; baselines overwrite penalties
  cfg.max_iter = 20000;
  cfg.eps_abs = 1e-9;
  cfg.eps_rel = 1e-9;
  return cfg;
}

std::vector<double> sorted_median_oracle(std::span<const double> y,
                                         int window) {
  // Brute-force repeated median straight from the definition, using full
  // sorts instead of selection.
  const auto median_sorted = [](std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t mid = v.size() / 2;
    return v.size() % 2 == 1 ? v[mid] : 0.5 * (v[mid - 1] + v[mid]);
  };
  const std::ptrdiff_t half = window / 2;
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(y.size());
  std::vector<double> out(y.size());
  for (std::ptrdiff_t t = 0; t < n; ++t) {
    const std::ptrdiff_t lo = std::max<std::ptrdiff_t>(0, t - half);
    const std::ptrdiff_t hi = std::min(n - 1, t + half);
    std::vector<double> slopes;
    for (std::ptrdiff_t i = lo; i <= hi; ++i) {
      std::vector<double> inner;
      for (std::ptrdiff_t j = lo; j <= hi; ++j) {
        if (j != i) inner.push_back((y[j] - y[i]) / double(j - i));
      }
      slopes.push_back(median_sorted(inner));
    }
    const double beta = median_sorted(slopes);
    std::vector<double> levels;
    for (std::ptrdiff_t i = lo; i <= hi; ++i) {
      levels.push_back(y[i] - beta * double(i - t));
    }
    out[t] = median_sorted(levels);
  }
  return out;
}

}  // namespace

TEST_CASE("hp filter: identity limit, affine limit, dense oracle") {
  const auto y = ts::random_instance(40, 7);
  const auto nearly = hp_filter(y, 1e-12);
  CHECK(ts::max_abs_diff(nearly, y) < 1e-8);

  // Huge lambda forces the second differences to zero: the least-squares
  // line remains.
  std::vector<double> noisy(60);
  for (std::size_t t = 0; t < noisy.size(); ++t) {
    noisy[t] = 1.5 + 0.25 * double(t) + ((t % 2 == 0) ? 1e-3 : -1e-3);
  }
  const auto smooth = hp_filter(noisy, 1e8);
  std::vector<double> line(noisy.size());
  {
    // Least-squares line through noisy.
    const double n = double(noisy.size());
    double st = 0, sy = 0, stt = 0, sty = 0;
    for (std::size_t t = 0; t < noisy.size(); ++t) {
      st += double(t);
      sy += noisy[t];
      stt += double(t) * double(t);
      sty += double(t) * noisy[t];
    }
    const double slope = (n * sty - st * sy) / (n * stt - st * st);
    const double icept = (sy - slope * st) / n;
    for (std::size_t t = 0; t < line.size(); ++t) {
      line[t] = icept + slope * double(t);
    }
  }
  CHECK(ts::max_abs_diff(smooth, line) < 1e-3);

  // Dense normal-equation oracle at n = 10.
  const auto y10 = ts::random_vector(10, 99, 2.0);
  const double lambda = 7.5;
  const auto got = hp_filter(y10, lambda);
  ts::Matrix d2 = ts::dense_difference(2, 10);
  ts::Matrix a = ts::matmul(ts::transpose(d2), d2);
  for (std::size_t i = 0; i < 10; ++i) {
    for (std::size_t j = 0; j < 10; ++j) a[i][j] *= 2.0 * lambda;
    a[i][i] += 1.0;
  }
  CHECK(ts::max_abs_diff(got, ts::gauss_solve(a, y10)) < 1e-10);
}

TEST_CASE("hp filter is linear in its input") {
  const auto y1 = ts::random_vector(25, 31, 2.0);
  const auto y2 = ts::random_vector(25, 32, 2.0);
  const double a = 1.7, b = -0.6;
  std::vector<double> mix(25);
  for (std::size_t i = 0; i < 25; ++i) mix[i] = a * y1[i] + b * y2[i];
  const auto f1 = hp_filter(y1, 42.0);
  const auto f2 = hp_filter(y2, 42.0);
  const auto fm = hp_filter(mix, 42.0);
  for (std::size_t i = 0; i < 25; ++i) {
    CHECK(fm[i] == doctest::Approx(a * f1[i] + b * f2[i]).epsilon(1e-10));
  }
}

TEST_CASE("l1 trend filter: noiseless piecewise-linear pass-through") {
  std::vector<double> y(30);
  for (std::size_t t = 0; t < 15; ++t) y[t] = 0.2 * double(t);
  for (std::size_t t = 15; t < 30; ++t) y[t] = 3.0 - 0.4 * double(t - 15);
  const auto res = l1_trend_filter(TimeSeries(y), 1e-7, tight_config());
  CHECK(ts::max_abs_diff(res.trend, y) < 1e-5);
}

TEST_CASE("l1 trend filter: large lambda reaches the best affine fit") {
  // Above the critical lambda the solution is exactly the least-squares
  // line; 50 is far beyond it for this instance.
  const auto y = ts::random_instance(30, 17);
  const auto res = l1_trend_filter(TimeSeries(y), 50.0, tight_config());
  for (std::size_t t = 0; t + 2 < y.size(); ++t) {
    CHECK(std::abs(res.trend[t] - 2 * res.trend[t + 1] + res.trend[t + 2]) <
          1e-6);
  }
  const double n = double(y.size());
  double st = 0, sy = 0, stt = 0, sty = 0;
  for (std::size_t t = 0; t < y.size(); ++t) {
    st += double(t);
    sy += y[t];
    stt += double(t) * double(t);
    sty += double(t) * y[t];
  }
  const double slope = (n * sty - st * sy) / (n * stt - st * st);
  const double icept = (sy - slope * st) / n;
  for (std::size_t t = 0; t < y.size(); ++t) {
    CHECK(res.trend[t] ==
          doctest::Approx(icept + slope * double(t)).epsilon(1e-5));
  }
}

TEST_CASE("tv denoise: step preservation and mean limit") {
  std::vector<double> step(24, -0.5);
  for (std::size_t t = 12; t < 24; ++t) step[t] = 1.5;
  const auto res = tv_denoise(TimeSeries(step), 1e-7, tight_config());
  CHECK(ts::max_abs_diff(res.trend, step) < 1e-5);

  // Past the critical lambda (~15 here) the solution is exactly the mean.
  const auto y = ts::random_instance(30, 27);
  const auto flat = tv_denoise(TimeSeries(y), 50.0, tight_config());
  double mean = 0.0;
  for (double v : y) mean += v;
  mean /= double(y.size());
  for (double v : flat.trend) CHECK(v == doctest::Approx(mean).epsilon(1e-5));
}

TEST_CASE("squared-loss baselines beat the subgradient oracle bound") {
  const auto y = ts::random_instance(30, 57);
  const double inf = std::numeric_limits<double>::infinity();
  struct Case {
    double l1, l2;
  };
  for (const Case c : {Case{3.0, 0.0}, Case{0.0, 3.0}, Case{1.0, 2.0}}) {
    const auto res = mixed_filter(TimeSeries(y), c.l1, c.l2, tight_config());
    const ts::OracleProblem p{y, inf, c.l1, c.l2};
    const auto oracle = ts::proximal_subgradient_minimize(p, 400000);
    CHECK(res.objective <= oracle.objective + 1e-3);
  }
}

TEST_CASE("degeneration lattice collapses to the same code path") {
  const auto y = ts::random_instance(40, 67);
  const TimeSeries series(y);
  const SolverConfig cfg = tight_config();

  const auto l1 = l1_trend_filter(series, 4.0, cfg);
  const auto via_mixed_l1 = mixed_filter(series, 0.0, 4.0, cfg);
  CHECK(l1.trend == via_mixed_l1.trend);  // identical call chain, bit-equal
  CHECK(l1.iterations == via_mixed_l1.iterations);

  const auto tv = tv_denoise(series, 2.5, cfg);
  const auto via_mixed_tv = mixed_filter(series, 2.5, 0.0, cfg);
  CHECK(tv.trend == via_mixed_tv.trend);

  // Huber variants with enormous gamma collapse onto the squared-loss
  // filters: every weight is exactly 1, so iterates coincide.
  SolverConfig huge = cfg;
  huge.huber.gamma = 1e9;
  const auto tvh = tv_huber_filter(series, 2.5, huge);
  CHECK(ts::max_abs_diff(tvh.trend, tv.trend) < 1e-12);
  const auto l1h = l1_huber_filter(series, 4.0, huge);
  CHECK(ts::max_abs_diff(l1h.trend, l1.trend) < 1e-12);
}

TEST_CASE("huber-loss single-penalty variants match the oracle") {
  const auto y = ts::random_instance(30, 77);
  SolverConfig cfg = tight_config();
  cfg.huber.gamma = 0.8;
  const auto tvh = tv_huber_filter(TimeSeries(y), 2.0, cfg);
  const auto tvh_oracle = ts::proximal_subgradient_minimize(
      ts::OracleProblem{y, 0.8, 2.0, 0.0}, 400000);
  CHECK(tvh.objective <= tvh_oracle.objective + 1e-3);

  const auto l1h = l1_huber_filter(TimeSeries(y), 3.0, cfg);
  const auto l1h_oracle = ts::proximal_subgradient_minimize(
      ts::OracleProblem{y, 0.8, 0.0, 3.0}, 400000);
  CHECK(l1h.objective <= l1h_oracle.objective + 1e-3);
}

TEST_CASE("robust_trend_l2 reaches a stationary point") {
  const auto y = ts::random_instance(50, 87);
  SolverConfig cfg = tight_config();
  cfg.huber.gamma = 0.8;
  const auto res = robust_trend_l2(TimeSeries(y), 1.5, 4.0, cfg);
  CHECK(res.converged);
  CHECK(res.primal_residual_norm < 1e-6);

  // Stationarity of the smooth objective, recomputed densely:
  // -huber'(y - tau) + 2 l1 D1^T D1 tau + 2 l2 D2^T D2 tau ~ 0.
  const std::size_t n = y.size();
  ts::Matrix d1 = ts::dense_difference(1, n);
  ts::Matrix d2 = ts::dense_difference(2, n);
  const auto reg1 = ts::matvec(ts::matmul(ts::transpose(d1), d1), res.trend);
  const auto reg2 = ts::matvec(ts::matmul(ts::transpose(d2), d2), res.trend);
  double grad_norm = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double g = -huber_derivative(y[i] - res.trend[i], cfg.huber) +
                     2.0 * 1.5 * reg1[i] + 2.0 * 4.0 * reg2[i];
    grad_norm += g * g;
  }
  CHECK(std::sqrt(grad_norm) < 1e-6);
}

TEST_CASE("robust_trend_l2 with huge gamma matches ridge normal equations") {
  const auto y = ts::random_vector(12, 97, 2.0);
  SolverConfig cfg = tight_config();
  cfg.huber.gamma = 1e12;
  const auto res = robust_trend_l2(TimeSeries(y), 0.7, 1.9, cfg);

  const std::size_t n = y.size();
  ts::Matrix d1 = ts::dense_difference(1, n);
  ts::Matrix d2 = ts::dense_difference(2, n);
  ts::Matrix a = ts::zeros(n, n);
  const auto g1 = ts::matmul(ts::transpose(d1), d1);
  const auto g2 = ts::matmul(ts::transpose(d2), d2);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      a[i][j] = 2.0 * 0.7 * g1[i][j] + 2.0 * 1.9 * g2[i][j];
    }
    a[i][i] += 1.0;
  }
  CHECK(ts::max_abs_diff(res.trend, ts::gauss_solve(a, y)) < 1e-8);
}

TEST_CASE("repeated median reproduces an exact line") {
  std::vector<double> y(40);
  for (std::size_t t = 0; t < y.size(); ++t) y[t] = 2.0 * double(t) + 1.0;
  for (int window : {3, 7, 15}) {
    const auto out = repeated_median_filter(y, window);
    CHECK(ts::max_abs_diff(out, y) < 1e-12);
  }
}

TEST_CASE("repeated median removes an isolated spike") {
  std::vector<double> y(30, 4.0);
  y[13] = 10.0;
  const auto out = repeated_median_filter(y, 7);
  for (double v : out) CHECK(v == doctest::Approx(4.0).epsilon(1e-14));
}

TEST_CASE("repeated median is affine-equivariant") {
  const auto y = ts::random_instance(25, 107);
  const double a = -1.4, b = 2.25;
  std::vector<double> ab(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) ab[i] = a * y[i] + b;
  const auto base = repeated_median_filter(y, 9);
  const auto shifted = repeated_median_filter(ab, 9);
  for (std::size_t i = 0; i < y.size(); ++i) {
    CHECK(shifted[i] == doctest::Approx(a * base[i] + b).epsilon(1e-12));
  }
}

TEST_CASE("repeated median agrees with the sort-based brute force") {
  const auto y = ts::random_instance(35, 117);
  for (int window : {3, 5, 11, 21}) {
    const auto fast = repeated_median_filter(y, window);
    const auto brute = sorted_median_oracle(y, window);
    CHECK(ts::max_abs_diff(fast, brute) < 1e-12);
  }
}

TEST_CASE("repeated median rejects invalid windows") {
  const std::vector<double> y(10, 1.0);
  CHECK_THROWS_AS(repeated_median_filter(y, 4), std::invalid_argument);
  CHECK_THROWS_AS(repeated_median_filter(y, 1), std::invalid_argument);
  CHECK_THROWS_AS(repeated_median_filter(y, 11), std::invalid_argument);
}

TEST_CASE("external baselines raise not-bundled errors") {
  const TimeSeries y(ts::random_instance(20, 1));
  const SolverConfig cfg = tight_config();
  for (const char* name : {"wavelet", "emd", "eemd", "robfilter"}) {
    BaselineSpec spec;
    spec.kind = parse_filter_kind(name);
    CHECK_THROWS_WITH_AS(apply_filter(spec, y, cfg),
                         doctest::Contains("not bundled"), NotBundledError);
  }
}

TEST_CASE("method names parse and unknown names list the options") {
  CHECK(parse_filter_kind("robusttrend") == FilterKind::RobustTrend);
  CHECK(parse_filter_kind("rm") == FilterKind::RepeatedMedian);
  CHECK_THROWS_WITH_AS(parse_filter_kind("nope"),
                       doctest::Contains("available"), std::invalid_argument);
  for (const auto& name : available_filter_names()) {
    CHECK(filter_kind_name(parse_filter_kind(name)) == name);
  }
}
