#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "robusttrend/baselines.hpp"
#include "robusttrend/metrics.hpp"
#include "robusttrend/synth.hpp"

namespace robusttrend {

/// Frozen benchmark parameters for each method, grid-tuned once on the
/// default synthetic benchmark (seed 0) and kept fixed so runs are
/// comparable and reproducible. See tools/tune_presets.cpp for the search.
BaselineSpec bench_preset(FilterKind kind);

/// ADMM controls shared by all benchmark solves.
SolverConfig bench_solver_defaults();

struct BenchSpec {
  std::vector<FilterKind> methods;
  std::vector<double> ratios;
  std::vector<std::uint64_t> seeds;
  SyntheticSpec data;      // seed/outlier_ratio fields overridden per cell
  std::size_t workers = 1;
};

/// Scores for one (method, ratio) cell, averaged over seeds. Cells whose
/// filter failed (e.g. a baseline that is not bundled) carry no value and
/// render as NA.
struct BenchCell {
  FilterKind method{};
  double ratio = 0.0;
  std::size_t n_seeds = 0;
  bool ok = false;
  std::string error;  // first failure, when !ok
  double mean_mse = 0.0, stddev_mse = 0.0;
  double mean_mae = 0.0, stddev_mae = 0.0;
  double mean_cp_mse = 0.0, stddev_cp_mse = 0.0;
  double mean_cp_mae = 0.0, stddev_cp_mae = 0.0;
};

struct BenchResult {
  BenchSpec spec;
  std::vector<BenchCell> cells;  // methods-major, ratio-minor

  const BenchCell* find(FilterKind method, double ratio) const;
};

/// Runs generate -> filter -> score over the full grid. Cells run
/// independently (parallel when spec.workers > 1); aggregation is keyed by
/// cell coordinates so the outcome does not depend on scheduling.
BenchResult run_bench(const BenchSpec& spec);

/// CSV rows: method,metric,ratio,mean,stddev,n_seeds.
std::string bench_csv(const BenchResult& result);

/// Aligned text tables (one per metric) in methods-by-ratios layout.
std::string bench_text(const BenchResult& result);

}  // namespace robusttrend
