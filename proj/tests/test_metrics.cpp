#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "robusttrend/metrics.hpp"
#include "robusttrend/synth.hpp"
#include "support/random_helpers.hpp"

using namespace robusttrend;
namespace ts = testsupport;

TEST_CASE("score: exact match, constant offset, small example") {
  const std::vector<double> truth{1.0, 2.0, 3.0, 4.0};
  auto [mse0, mae0] = score(truth, truth);
  CHECK(mse0 == 0.0);
  CHECK(mae0 == 0.0);

  std::vector<double> shifted(truth);
  for (double& v : shifted) v += 0.25;
  auto [mse_c, mae_c] = score(shifted, truth);
  CHECK(mse_c == doctest::Approx(0.0625).epsilon(1e-15));
  CHECK(mae_c == doctest::Approx(0.25).epsilon(1e-15));

  const std::vector<double> est{2.0, 0.0, 5.0};
  const std::vector<double> tru{1.0, 1.0, 5.0};
  auto [mse, mae] = score(est, tru);
  CHECK(mse == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(mae == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("score validates dimensions") {
  CHECK_THROWS_AS(score(std::vector<double>{1.0}, std::vector<double>{1.0, 2.0}),
                  std::invalid_argument);
}

TEST_CASE("change-point scoring: default layout covers 27 points") {
  const auto cps = trend_change_points(1000);
  REQUIRE(cps.size() == 9);
  const auto truth = ts::random_vector(1000, 5);
  auto est = truth;
  for (std::size_t cp : cps) est[cp] += 1.0;  // unit error at each cp only
  const ScoreReport report = full_report(est, truth, cps);
  CHECK(report.n_cp_scored == 27);
  CHECK(report.cp_mse == doctest::Approx(9.0 / 27.0).epsilon(1e-15));
  CHECK(report.cp_mae == doctest::Approx(9.0 / 27.0).epsilon(1e-15));
  CHECK(report.n_scored == 1000);

  // Perfect estimate scores zero.
  const auto clean = full_report(truth, truth, cps);
  CHECK(clean.cp_mse == 0.0);
  CHECK(clean.cp_mae == 0.0);
}

TEST_CASE("single change point with unit errors in its neighborhood") {
  std::vector<double> truth(10, 0.0);
  std::vector<double> est(10, 0.0);
  est[3] = est[4] = est[5] = 1.0;
  const std::vector<std::size_t> cps{4};
  auto [cp_mse, cp_mae] = score_changepoints(est, truth, cps);
  CHECK(cp_mse == 1.0);
  CHECK(cp_mae == 1.0);
}

TEST_CASE("overlapping neighborhoods are deduplicated") {
  std::vector<double> truth(10, 0.0);
  std::vector<double> est(10, 0.0);
  est[3] = 3.0;
  const std::vector<std::size_t> cps{3, 4};  // neighborhoods share 3 and 4
  // Union is {2,3,4,5}: 4 indices, one error of 3.
  auto [cp_mse, cp_mae] = score_changepoints(est, truth, cps);
  CHECK(cp_mse == doctest::Approx(9.0 / 4.0).epsilon(1e-15));
  CHECK(cp_mae == doctest::Approx(3.0 / 4.0).epsilon(1e-15));
}

TEST_CASE("change points must be interior") {
  const std::vector<double> v(10, 0.0);
  CHECK_THROWS_AS(
      score_changepoints(v, v, std::vector<std::size_t>{0}),
      std::invalid_argument);
  CHECK_THROWS_AS(
      score_changepoints(v, v, std::vector<std::size_t>{9}),
      std::invalid_argument);
  CHECK_THROWS_AS(score_changepoints(v, v, std::vector<std::size_t>{}),
                  std::invalid_argument);
}

TEST_CASE("metrics are shift-invariant and pair-permutation-invariant") {
  const auto truth = ts::random_vector(50, 11);
  const auto est = ts::random_vector(50, 12);
  auto [mse, mae] = score(est, truth);

  std::vector<double> est_s(est), truth_s(truth);
  for (std::size_t i = 0; i < 50; ++i) {
    est_s[i] += 5.5;
    truth_s[i] += 5.5;
  }
  auto [mse_s, mae_s] = score(est_s, truth_s);
  CHECK(mse_s == doctest::Approx(mse).epsilon(1e-12));
  CHECK(mae_s == doctest::Approx(mae).epsilon(1e-12));

  // Permuting the (estimate, truth) pairs leaves the means unchanged.
  std::vector<std::size_t> perm(50);
  for (std::size_t i = 0; i < 50; ++i) perm[i] = (i * 7 + 3) % 50;
  std::vector<double> est_p(50), truth_p(50);
  for (std::size_t i = 0; i < 50; ++i) {
    est_p[i] = est[perm[i]];
    truth_p[i] = truth[perm[i]];
  }
  auto [mse_p, mae_p] = score(est_p, truth_p);
  CHECK(mse_p == doctest::Approx(mse).epsilon(1e-12));
  CHECK(mae_p == doctest::Approx(mae).epsilon(1e-12));
}

TEST_CASE("full-range restriction equals plain score") {
  const auto truth = ts::random_vector(40, 21);
  const auto est = ts::random_vector(40, 22);
  std::vector<std::size_t> interior;
  for (std::size_t i = 1; i + 1 < 40; ++i) interior.push_back(i);
  auto [cp_mse, cp_mae] = score_changepoints(est, truth, interior);
  auto [mse, mae] = score(est, truth);  // over all 40
  // The union of neighborhoods of all interior points is the full range.
  auto [full_mse, full_mae] = score(est, truth);
  CHECK(cp_mse == doctest::Approx(full_mse).epsilon(1e-12));
  CHECK(cp_mae == doctest::Approx(full_mae).epsilon(1e-12));
  CHECK(mse == full_mse);
  CHECK(mae == full_mae);
}

TEST_CASE("mae squared never exceeds mse and text report is flat") {
  const auto truth = ts::random_vector(64, 31);
  const auto est = ts::random_vector(64, 32);
  const auto cps = std::vector<std::size_t>{10, 30, 50};
  const ScoreReport r = full_report(est, truth, cps);
  CHECK(r.mae * r.mae <= r.mse + 1e-15);
  CHECK(r.cp_mae * r.cp_mae <= r.cp_mse + 1e-15);
  const std::string text = to_text(r);
  CHECK(text.find("mse = ") != std::string::npos);
  CHECK(text.find("n_cp_scored = 9") != std::string::npos);
}
