#include "robusttrend/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <thread>

#include "robusttrend/csv.hpp"

namespace robusttrend {

BaselineSpec bench_preset(FilterKind kind) {
  // Values frozen from the grid search in tools/tune_presets.cpp, run on
  // the default synthetic benchmark (n=1000, sigma=0.2, 5% outliers, seed 0).
  BaselineSpec spec;
  spec.kind = kind;
  switch (kind) {
    case FilterKind::RobustTrend:
      spec.lambda1 = 0.3;
      spec.lambda2 = 0.05;
      spec.gamma = 0.2;
      break;
    case FilterKind::HP:
      spec.lambda = 100.0;
      break;
    case FilterKind::L1Trend:
      spec.lambda = 3.0;
      break;
    case FilterKind::TVDenoise:
      spec.lambda = 2.0;
      break;
    case FilterKind::Mixed:
      spec.lambda1 = 1.0;
      spec.lambda2 = 0.1;
      break;
    case FilterKind::TVHuber:
      spec.lambda = 0.5;
      spec.gamma = 0.2;
      break;
    case FilterKind::L1Huber:
      spec.lambda = 0.5;
      spec.gamma = 0.3;
      break;
    case FilterKind::RobustTrendL2:
      spec.lambda1 = 0.3;
      spec.lambda2 = 2.0;
      spec.gamma = 0.2;
      break;
    case FilterKind::RepeatedMedian:
      spec.window = 11;
      break;
    default:
      break;  // external baselines carry no parameters
  }
  return spec;
}

SolverConfig bench_solver_defaults() {
  SolverConfig cfg;
  cfg.huber = HuberParams{1.0};  // overridden per method by the preset
  cfg.lambda1 = 1.0;
  // rho = 3 keeps every ADMM method inside the 500-iteration cap across the
  // benchmark seeds; the fixed point itself does not depend on rho.
  cfg.rho = 3.0;
  cfg.max_iter = 500;
  cfg.eps_abs = 1e-4;
  cfg.eps_rel = 1e-4;
  return cfg;
}

const BenchCell* BenchResult::find(FilterKind method, double ratio) const {
  for (const BenchCell& cell : cells) {
    if (cell.method == method && cell.ratio == ratio) return &cell;
  }
  return nullptr;
}

namespace {

struct Accumulator {
  std::vector<double> values;
  void add(double v) { values.push_back(v); }
  double mean() const {
    double s = 0.0;
    for (double v : values) s += v;
    return s / static_cast<double>(values.size());
  }
  double stddev() const {
    if (values.size() < 2) return 0.0;
    const double m = mean();
    double s = 0.0;
    for (double v : values) s += (v - m) * (v - m);
    return std::sqrt(s / static_cast<double>(values.size() - 1));
  }
};

BenchCell run_cell(const BenchSpec& spec, FilterKind method, double ratio) {
  BenchCell cell;
  cell.method = method;
  cell.ratio = ratio;
  cell.n_seeds = spec.seeds.size();

  const BaselineSpec params = bench_preset(method);
  const SolverConfig solver = bench_solver_defaults();

  Accumulator mse, mae, cp_mse, cp_mae;
  for (std::uint64_t seed : spec.seeds) {
    SyntheticSpec data = spec.data;
    data.outlier_ratio = ratio;
    data.seed = seed;
    try {
      const SyntheticDataset dataset = generate(data);
      const FilterResult fit = apply_filter(params, dataset.series, solver);
      const ScoreReport report =
          full_report(fit.trend, *dataset.series.truth(),
                      dataset.change_points);
      mse.add(report.mse);
      mae.add(report.mae);
      cp_mse.add(report.cp_mse);
      cp_mae.add(report.cp_mae);
    } catch (const std::exception& e) {
      cell.ok = false;
      cell.error = e.what();
      return cell;
    }
  }
  cell.ok = true;
  cell.mean_mse = mse.mean();
  cell.stddev_mse = mse.stddev();
  cell.mean_mae = mae.mean();
  cell.stddev_mae = mae.stddev();
  cell.mean_cp_mse = cp_mse.mean();
  cell.stddev_cp_mse = cp_mse.stddev();
  cell.mean_cp_mae = cp_mae.mean();
  cell.stddev_cp_mae = cp_mae.stddev();
  return cell;
}

}  // namespace

BenchResult run_bench(const BenchSpec& spec) {
  if (spec.methods.empty() || spec.ratios.empty() || spec.seeds.empty()) {
    throw std::invalid_argument("bench grid must not be empty");
  }
  BenchResult result;
  result.spec = spec;
  result.cells.resize(spec.methods.size() * spec.ratios.size());

  const std::size_t total = result.cells.size();
  const std::size_t workers =
      std::max<std::size_t>(1, std::min(spec.workers, total));

  std::atomic<std::size_t> next{0};
  const auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= total) return;
      const FilterKind method = spec.methods[i / spec.ratios.size()];
      const double ratio = spec.ratios[i % spec.ratios.size()];
      result.cells[i] = run_cell(spec, method, ratio);
    }
  };

  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
  }
  return result;
}

namespace {

void append_csv_row(std::string& out, const BenchCell& cell,
                    const char* metric, double mean, double stddev) {
  out += filter_kind_name(cell.method);
  out += ',';
  out += metric;
  out += ',';
  out += format_double(cell.ratio);
  out += ',';
  if (cell.ok) {
    out += format_double(mean);
    out += ',';
    out += format_double(stddev);
  } else {
    out += "NA,NA";
  }
  out += ',';
  out += std::to_string(cell.n_seeds);
  out += '\n';
}

}  // namespace

std::string bench_csv(const BenchResult& result) {
  std::string out = "method,metric,ratio,mean,stddev,n_seeds\n";
  for (const BenchCell& cell : result.cells) {
    append_csv_row(out, cell, "mse", cell.mean_mse, cell.stddev_mse);
    append_csv_row(out, cell, "mae", cell.mean_mae, cell.stddev_mae);
    append_csv_row(out, cell, "cp_mse", cell.mean_cp_mse, cell.stddev_cp_mse);
    append_csv_row(out, cell, "cp_mae", cell.mean_cp_mae, cell.stddev_cp_mae);
  }
  return out;
}

std::string bench_text(const BenchResult& result) {
  struct Metric {
    const char* label;
    double BenchCell::*mean;
  };
  const Metric metrics[] = {
      {"MSE", &BenchCell::mean_mse},
      {"MAE", &BenchCell::mean_mae},
      {"CP-MSE", &BenchCell::mean_cp_mse},
      {"CP-MAE", &BenchCell::mean_cp_mae},
  };
  std::string out;
  char buf[64];
  for (const Metric& metric : metrics) {
    out += metric.label;
    out += " by outlier ratio\n";
    std::snprintf(buf, sizeof(buf), "%-16s", "method");
    out += buf;
    for (double r : result.spec.ratios) {
      std::snprintf(buf, sizeof(buf), "%12.0f%%", 100.0 * r);
      out += buf;
    }
    out += '\n';
    for (FilterKind method : result.spec.methods) {
      std::snprintf(buf, sizeof(buf), "%-16s",
                    filter_kind_name(method).c_str());
      out += buf;
      for (double r : result.spec.ratios) {
        const BenchCell* cell = result.find(method, r);
        if (cell != nullptr && cell->ok) {
          std::snprintf(buf, sizeof(buf), "%13.4f", cell->*(metric.mean));
        } else {
          std::snprintf(buf, sizeof(buf), "%13s", "NA");
        }
        out += buf;
      }
      out += '\n';
    }
    out += '\n';
  }
  return out;
}

}  // namespace robusttrend
