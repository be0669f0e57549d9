#include "robusttrend/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <utility>

#include "robusttrend/banded.hpp"

namespace robusttrend {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

SolverConfig with_penalties(SolverConfig cfg, double gamma, double lambda1,
                            double lambda2) {
  cfg.huber.gamma = gamma;
  cfg.lambda1 = lambda1;
  cfg.lambda2 = lambda2;
  return cfg;
}

double median_in_place(std::vector<double>& v) {
  const std::size_t n = v.size();
  const std::size_t mid = n / 2;
  std::nth_element(v.begin(), v.begin() + mid, v.end());
  double m = v[mid];
  if (n % 2 == 0) {
    const double lower = *std::max_element(v.begin(), v.begin() + mid);
    m = 0.5 * (m + lower);
  }
  return m;
}

// Direct (non-ADMM) filters report NaN for the penalized objective; their
// result carries only the trend/residual pair.
FilterResult wrap_direct(std::span<const double> y, std::vector<double> trend) {
  FilterResult r;
  r.residual.resize(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) r.residual[i] = y[i] - trend[i];
  r.trend = std::move(trend);
  r.iterations = 0;
  r.converged = true;
  r.objective = std::numeric_limits<double>::quiet_NaN();
  return r;
}

}  // namespace

std::vector<double> hp_filter(std::span<const double> y, double lambda) {
  if (y.size() < 3) {
    throw std::invalid_argument("hp_filter needs at least 3 samples");
  }
  if (!(lambda > 0.0)) {
    throw std::invalid_argument("hp_filter lambda must be positive");
  }
  // diag(1) + 2 lambda D2^T D2, realized as the stacked penalty with
  // lambda2 = sqrt(2 lambda) and rho = 1.
  const StackedOperator op(0.0, std::sqrt(2.0 * lambda), y.size());
  const std::vector<double> ones(y.size(), 1.0);
  return build_banded_system(op, ones, 1.0).solve(y);
}

FilterResult l1_trend_filter(const TimeSeries& y, double lambda,
                             const SolverConfig& cfg) {
  return mixed_filter(y, 0.0, lambda, cfg);
}

FilterResult tv_denoise(const TimeSeries& y, double lambda,
                        const SolverConfig& cfg) {
  return mixed_filter(y, lambda, 0.0, cfg);
}

FilterResult mixed_filter(const TimeSeries& y, double lambda1, double lambda2,
                          const SolverConfig& cfg) {
  return robust_trend_filter(y, with_penalties(cfg, kInf, lambda1, lambda2));
}

FilterResult tv_huber_filter(const TimeSeries& y, double lambda1,
                             const SolverConfig& cfg) {
  return robust_trend_filter(
      y, with_penalties(cfg, cfg.huber.gamma, lambda1, 0.0));
}

FilterResult l1_huber_filter(const TimeSeries& y, double lambda2,
                             const SolverConfig& cfg) {
  return robust_trend_filter(
      y, with_penalties(cfg, cfg.huber.gamma, 0.0, lambda2));
}

FilterResult robust_trend_l2(const TimeSeries& y, double lambda1,
                             double lambda2, const SolverConfig& cfg) {
  if (lambda1 < 0.0 || lambda2 < 0.0 || lambda1 + lambda2 <= 0.0) {
    throw std::invalid_argument("robust_trend_l2 needs a positive penalty");
  }
  constexpr int kMaxReweights = 100;
  constexpr double kFixedPointTol = 1e-8;

  const std::size_t n = y.size();
  const std::vector<double>& values = y.values();
  // 2 lambda1 D1^T D1 + 2 lambda2 D2^T D2 as a stacked band, assembled once.
  const StackedOperator op(std::sqrt(2.0 * lambda1), std::sqrt(2.0 * lambda2),
                           n);
  const PenaltyBand penalty = make_penalty_band(op, 1.0);

  std::vector<double> tau(values);
  std::vector<double> weights(n);
  std::vector<double> rhs(n);
  int iterations = 0;
  bool converged = false;
  for (int k = 0; k < kMaxReweights; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      weights[i] =
          mm_weight(values[i] - tau[i], cfg.huber, cfg.weight_floor);
      rhs[i] = weights[i] * values[i];
    }
    std::vector<double> next =
        build_banded_system(penalty, weights).solve(rhs);
    double delta = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      delta = std::max(delta, std::abs(next[i] - tau[i]));
    }
    tau = std::move(next);
    ++iterations;
    if (delta < kFixedPointTol) {
      converged = true;
      break;
    }
  }

  // Stationarity residual of the final normal equations.
  for (std::size_t i = 0; i < n; ++i) {
    weights[i] = mm_weight(values[i] - tau[i], cfg.huber, cfg.weight_floor);
  }
  std::vector<double> reg = op.apply_transpose(op.apply(tau));
  double residual_sq = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double g = weights[i] * (tau[i] - values[i]) + reg[i];
    residual_sq += g * g;
  }

  FilterResult r;
  r.residual.resize(n);
  for (std::size_t i = 0; i < n; ++i) r.residual[i] = values[i] - tau[i];
  r.trend = std::move(tau);
  r.iterations = iterations;
  r.converged = converged;
  r.primal_residual_norm = std::sqrt(residual_sq);
  r.dual_residual_norm = 0.0;
  double obj = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    obj += huber(values[i] - r.trend[i], cfg.huber);
  }
  {
    double reg_sq = 0.0;
    for (std::size_t t = 0; t + 1 < n; ++t) {
      const double d = r.trend[t] - r.trend[t + 1];
      reg_sq += lambda1 * d * d;
    }
    for (std::size_t t = 0; t + 2 < n; ++t) {
      const double d = r.trend[t] - 2.0 * r.trend[t + 1] + r.trend[t + 2];
      reg_sq += lambda2 * d * d;
    }
    obj += reg_sq;
  }
  r.objective = obj;
  return r;
}

std::vector<double> repeated_median_filter(std::span<const double> y,
                                           int window) {
  const std::size_t n = y.size();
  if (window < 3 || window % 2 == 0 || static_cast<std::size_t>(window) > n) {
    throw std::invalid_argument(
        "repeated median window must be odd and within [3, n]");
  }
  const std::ptrdiff_t half = window / 2;
  const std::ptrdiff_t sn = static_cast<std::ptrdiff_t>(n);

  std::vector<double> out(n);
  std::vector<double> inner;
  std::vector<double> slopes;
  std::vector<double> levels;
  for (std::ptrdiff_t t = 0; t < sn; ++t) {
    const std::ptrdiff_t lo = std::max<std::ptrdiff_t>(0, t - half);
    const std::ptrdiff_t hi = std::min(sn - 1, t + half);
    slopes.clear();
    for (std::ptrdiff_t i = lo; i <= hi; ++i) {
      inner.clear();
      for (std::ptrdiff_t j = lo; j <= hi; ++j) {
        if (j == i) continue;
        inner.push_back((y[j] - y[i]) / static_cast<double>(j - i));
      }
      slopes.push_back(median_in_place(inner));
    }
    const double beta = median_in_place(slopes);
    levels.clear();
    for (std::ptrdiff_t i = lo; i <= hi; ++i) {
      levels.push_back(y[i] - beta * static_cast<double>(i - t));
    }
    out[t] = median_in_place(levels);
  }
  return out;
}

void BaselineSpec::validate() const {
  if (lambda < 0.0 || lambda1 < 0.0 || lambda2 < 0.0) {
    throw std::invalid_argument("filter penalties must be nonnegative");
  }
  switch (kind) {
    case FilterKind::RobustTrend:
    case FilterKind::TVHuber:
    case FilterKind::L1Huber:
    case FilterKind::RobustTrendL2:
      if (!(gamma > 0.0)) {
        throw std::invalid_argument("Huber-loss filters need gamma > 0");
      }
      break;
    case FilterKind::RepeatedMedian:
      if (window < 3 || window % 2 == 0) {
        throw std::invalid_argument(
            "repeated median window must be odd and >= 3");
      }
      break;
    default:
      break;
  }
}

namespace {

const std::map<std::string, FilterKind>& kind_table() {
  static const std::map<std::string, FilterKind> table = {
      {"robusttrend", FilterKind::RobustTrend},
      {"hp", FilterKind::HP},
      {"l1", FilterKind::L1Trend},
      {"tv", FilterKind::TVDenoise},
      {"mixed", FilterKind::Mixed},
      {"tvhuber", FilterKind::TVHuber},
      {"l1huber", FilterKind::L1Huber},
      {"robusttrendl2", FilterKind::RobustTrendL2},
      {"rm", FilterKind::RepeatedMedian},
      {"wavelet", FilterKind::Wavelet},
      {"emd", FilterKind::Emd},
      {"eemd", FilterKind::Eemd},
      {"robfilter", FilterKind::Robfilter},
  };
  return table;
}

}  // namespace

FilterKind parse_filter_kind(const std::string& name) {
  const auto it = kind_table().find(name);
  if (it == kind_table().end()) {
    std::string msg = "unknown method '" + name + "'; available:";
    for (const auto& n : available_filter_names()) msg += " " + n;
    throw std::invalid_argument(msg);
  }
  return it->second;
}

std::string filter_kind_name(FilterKind kind) {
  for (const auto& [name, k] : kind_table()) {
    if (k == kind) return name;
  }
  return "?";
}

std::vector<std::string> available_filter_names() {
  return {"robusttrend", "hp",  "l1",      "tv",  "mixed", "tvhuber",
          "l1huber",     "robusttrendl2", "rm",  "wavelet", "emd",
          "eemd",        "robfilter"};
}

FilterResult apply_filter(const BaselineSpec& spec, const TimeSeries& y,
                          const SolverConfig& base) {
  spec.validate();
  SolverConfig cfg = base;
  cfg.huber.gamma = spec.gamma > 0.0 ? spec.gamma : base.huber.gamma;
  switch (spec.kind) {
    case FilterKind::RobustTrend:
      return robust_trend_filter(
          y, with_penalties(cfg, cfg.huber.gamma, spec.lambda1, spec.lambda2));
    case FilterKind::HP:
      return wrap_direct(y.values(), hp_filter(y.values(), spec.lambda));
    case FilterKind::L1Trend:
      return l1_trend_filter(y, spec.lambda, cfg);
    case FilterKind::TVDenoise:
      return tv_denoise(y, spec.lambda, cfg);
    case FilterKind::Mixed:
      return mixed_filter(y, spec.lambda1, spec.lambda2, cfg);
    case FilterKind::TVHuber:
      return tv_huber_filter(y, spec.lambda, cfg);
    case FilterKind::L1Huber:
      return l1_huber_filter(y, spec.lambda, cfg);
    case FilterKind::RobustTrendL2:
      return robust_trend_l2(y, spec.lambda1, spec.lambda2, cfg);
    case FilterKind::RepeatedMedian:
      return wrap_direct(y.values(),
                         repeated_median_filter(y.values(), spec.window));
    case FilterKind::Wavelet:
    case FilterKind::Emd:
    case FilterKind::Eemd:
    case FilterKind::Robfilter:
      throw NotBundledError(filter_kind_name(spec.kind));
  }
  throw std::logic_error("unhandled filter kind");
}

}  // namespace robusttrend
