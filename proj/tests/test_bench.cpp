#include <doctest.h>

#include <string>

#include "robusttrend/bench.hpp"

using namespace robusttrend;

namespace {

BenchSpec small_spec() {
  BenchSpec spec;
  spec.methods = {FilterKind::RobustTrend, FilterKind::HP, FilterKind::Emd};
  spec.ratios = {0.05};
  spec.seeds = {1, 2};
  spec.data.n = 200;
  return spec;
}

}  // namespace

TEST_CASE("bench grid runs, records NA for unavailable baselines") {
  const BenchResult result = run_bench(small_spec());
  REQUIRE(result.cells.size() == 3);

  const BenchCell* rt = result.find(FilterKind::RobustTrend, 0.05);
  REQUIRE(rt != nullptr);
  CHECK(rt->ok);
  CHECK(rt->mean_mse > 0.0);
  CHECK(rt->n_seeds == 2);

  const BenchCell* emd = result.find(FilterKind::Emd, 0.05);
  REQUIRE(emd != nullptr);
  CHECK_FALSE(emd->ok);
  CHECK(emd->error.find("not bundled") != std::string::npos);
}

TEST_CASE("bench csv and text formats") {
  const BenchResult result = run_bench(small_spec());
  const std::string csv = bench_csv(result);
  CHECK(csv.rfind("method,metric,ratio,mean,stddev,n_seeds\n", 0) == 0);
  CHECK(csv.find("robusttrend,mse,0.05,") != std::string::npos);
  CHECK(csv.find("emd,mse,0.05,NA,NA,2") != std::string::npos);
  // 3 methods x 1 ratio x 4 metrics data rows + header.
  std::size_t lines = 0;
  for (char c : csv) lines += (c == '\n');
  CHECK(lines == 13);

  const std::string text = bench_text(result);
  CHECK(text.find("MSE by outlier ratio") != std::string::npos);
  CHECK(text.find("robusttrend") != std::string::npos);
  CHECK(text.find("NA") != std::string::npos);
}

TEST_CASE("bench is deterministic and worker-count independent") {
  BenchSpec spec = small_spec();
  spec.methods = {FilterKind::RobustTrend, FilterKind::RepeatedMedian};
  const std::string once = bench_csv(run_bench(spec));
  const std::string twice = bench_csv(run_bench(spec));
  CHECK(once == twice);
  spec.workers = 4;
  const std::string parallel = bench_csv(run_bench(spec));
  CHECK(parallel == once);
}

TEST_CASE("bench rejects empty grids") {
  BenchSpec spec = small_spec();
  spec.seeds.clear();
  CHECK_THROWS_AS(run_bench(spec), std::invalid_argument);
}

TEST_CASE("presets cover every bundled method") {
  for (FilterKind kind :
       {FilterKind::RobustTrend, FilterKind::HP, FilterKind::L1Trend,
        FilterKind::TVDenoise, FilterKind::Mixed, FilterKind::TVHuber,
        FilterKind::L1Huber, FilterKind::RobustTrendL2,
        FilterKind::RepeatedMedian}) {
    const BaselineSpec spec = bench_preset(kind);
    CHECK(spec.kind == kind);
    CHECK_NOTHROW(spec.validate());
    // Every preset must parameterize its method.
    switch (kind) {
      case FilterKind::HP:
      case FilterKind::L1Trend:
      case FilterKind::TVDenoise:
      case FilterKind::TVHuber:
      case FilterKind::L1Huber:
        CHECK(spec.lambda > 0.0);
        break;
      case FilterKind::RobustTrend:
      case FilterKind::Mixed:
      case FilterKind::RobustTrendL2:
        CHECK(spec.lambda1 + spec.lambda2 > 0.0);
        break;
      case FilterKind::RepeatedMedian:
        CHECK(spec.window >= 3);
        break;
      default:
        break;
    }
  }
}
