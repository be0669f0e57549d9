#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "robusttrend/banded.hpp"
#include "robusttrend/difference.hpp"
#include "robusttrend/huber.hpp"
#include "robusttrend/time_series.hpp"

namespace robusttrend {

/// Parameters of one trend-filtering solve. gamma = +infinity selects the
/// pure quadratic loss (used by the classical baselines); lambda1/lambda2
/// weight the first/second-difference penalties, at least one must be
/// positive.
struct SolverConfig {
  HuberParams huber;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double rho = 1.0;
  int max_iter = 500;
  double eps_abs = 1e-4;
  double eps_rel = 1e-4;
  double weight_floor = 1e-8;

  void validate() const;
};

/// The ADMM triple for the split problem min huber(y - tau) + ||z||_1
/// subject to D tau = z, with scaled dual u. For a series of length n,
/// tau has n entries and z, u have 2n-3.
struct SolverState {
  std::vector<double> tau;
  std::vector<double> z;
  std::vector<double> u;
  int iteration = 0;
};

struct FilterResult {
  std::vector<double> trend;
  std::vector<double> residual;  // y - trend, exact
  int iterations = 0;
  bool converged = false;
  double primal_residual_norm = 0.0;
  double dual_residual_norm = 0.0;
  double objective = 0.0;
};

/// Thrown when an inner banded solve fails; carries the ADMM iteration and
/// the residual norms observed before the failure.
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& message, int iteration, double primal_norm,
              double dual_norm);
  int iteration() const noexcept { return iteration_; }
  double primal_norm() const noexcept { return primal_norm_; }
  double dual_norm() const noexcept { return dual_norm_; }

 private:
  int iteration_;
  double primal_norm_;
  double dual_norm_;
};

/// Value of the trend-filtering objective
///   huber(y - tau) + lambda1 ||D1 tau||_1 + lambda2 ||D2 tau||_1.
double objective(std::span<const double> y, std::span<const double> tau,
                 const SolverConfig& cfg);

/// Elementwise shrinkage: 0 where |v_i| <= kappa, otherwise v_i moved
/// toward zero by kappa. Minimizes ||z||_1 + (rho/2)||v - z||^2 when
/// kappa = 1/rho.
std::vector<double> soft_threshold(std::span<const double> v, double kappa);

/// z step: shrink D tau^{k+1} + u^k with threshold 1/rho.
std::vector<double> z_update(const SolverState& state,
                             std::span<const double> Dtau,
                             const SolverConfig& cfg);

/// tau step: one weighted banded solve
///   tau = y - rho (A + rho D^T D)^{-1} D^T (u - z + D y)
/// where A = diag of the Huber majorization weights at the current
/// residual y - tau^k.
std::vector<double> tau_update(std::span<const double> y,
                               const SolverState& state,
                               const SolverConfig& cfg);

/// Scaled dual ascent: u + D tau^{k+1} - z^{k+1}.
std::vector<double> dual_update(const SolverState& state,
                                std::span<const double> Dtau,
                                std::span<const double> z_new);

/// Primal and dual residual norms:
///   ||D tau - z||_2  and  rho ||D^T (z - z_prev)||_2.
std::pair<double, double> residuals(std::span<const double> z_prev,
                                    const SolverState& state,
                                    std::span<const double> Dtau,
                                    const SolverConfig& cfg);

/// Stopping thresholds:
///   eps_pri  = sqrt(2n-3) eps_abs + eps_rel max(||D tau||, ||z||)
///   eps_dual = sqrt(n)    eps_abs + eps_rel ||rho D^T u||.
std::pair<double, double> tolerances(std::span<const double> Dtau,
                                     std::span<const double> z,
                                     std::span<const double> u,
                                     const SolverConfig& cfg, std::size_t n);

/// Reusable MM-ADMM engine for a fixed series length and configuration.
/// The rho D^T D band is assembled once at construction and shared by all
/// runs, which is what makes repeated sliding-window solves cheap.
class TrendSolver {
 public:
  TrendSolver(std::size_t n, SolverConfig cfg);

  std::size_t size() const noexcept { return n_; }
  const SolverConfig& config() const noexcept { return cfg_; }
  const StackedOperator& op() const noexcept { return op_; }

  /// tau = y, z = D y, u = 0. Makes the first primal residual zero and
  /// lets the first majorization weights see the raw residual scale.
  SolverState cold_start(std::span<const double> y) const;

  /// Runs ADMM iterations from `state` until both residuals pass their
  /// tolerances or max_iter is reached. `state` is advanced to the final
  /// iterate so it can seed a warm start of a nearby problem.
  FilterResult run(std::span<const double> y, SolverState& state) const;

 private:
  std::size_t n_;
  SolverConfig cfg_;
  StackedOperator op_;
  PenaltyBand penalty_;
};

/// One-shot batch entry point.
FilterResult robust_trend_filter(const TimeSeries& y, const SolverConfig& cfg);
FilterResult robust_trend_filter(const TimeSeries& y, const SolverConfig& cfg,
                                 const SolverState& warm);

}  // namespace robusttrend
