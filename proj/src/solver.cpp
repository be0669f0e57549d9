#include "robusttrend/solver.hpp"

#include <cmath>
#include <tuple>
#include <utility>

namespace robusttrend {

namespace {

double norm2(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

void require_length(std::span<const double> v, std::size_t expected,
                    const char* what) {
  if (v.size() != expected) {
    throw std::invalid_argument(std::string(what) + ": length mismatch");
  }
}

// tau step against a prebuilt rho D^T D band; the free tau_update and the
// solver loop both land here.
std::vector<double> tau_step(std::span<const double> y,
                             const SolverState& state, const SolverConfig& cfg,
                             const StackedOperator& op,
                             const PenaltyBand& penalty) {
  const std::size_t n = y.size();
  std::vector<double> weights(n);
  for (std::size_t i = 0; i < n; ++i) {
    weights[i] = mm_weight(y[i] - state.tau[i], cfg.huber, cfg.weight_floor);
  }
  // c = u - z + D y, then rhs = D^T c.
  std::vector<double> c(op.rows());
  op.apply(y, c);
  for (std::size_t i = 0; i < c.size(); ++i) {
    c[i] += state.u[i] - state.z[i];
  }
  std::vector<double> rhs = op.apply_transpose(c);

  const BandedSPDSystem system = build_banded_system(penalty, weights);
  std::vector<double> correction = system.solve(rhs);

  std::vector<double> tau(n);
  for (std::size_t i = 0; i < n; ++i) {
    tau[i] = y[i] - cfg.rho * correction[i];
  }
  return tau;
}

}  // namespace

void SolverConfig::validate() const {
  if (!huber.valid()) {
    throw std::invalid_argument("huber gamma must be positive");
  }
  if (lambda1 < 0.0 || lambda2 < 0.0) {
    throw std::invalid_argument("lambda1 and lambda2 must be nonnegative");
  }
  if (lambda1 + lambda2 <= 0.0) {
    throw std::invalid_argument(
        "at least one of lambda1, lambda2 must be positive");
  }
  if (rho <= 0.0) throw std::invalid_argument("rho must be positive");
  if (max_iter < 1) throw std::invalid_argument("max_iter must be >= 1");
  if (eps_abs <= 0.0 || eps_rel <= 0.0) {
    throw std::invalid_argument("tolerances must be positive");
  }
  if (!(weight_floor > 0.0) || weight_floor > 1.0) {
    throw std::invalid_argument("weight_floor must be in (0, 1]");
  }
}

SolverError::SolverError(const std::string& message, int iteration,
                         double primal_norm, double dual_norm)
    : std::runtime_error(message + " (iteration " + std::to_string(iteration) +
                         ", primal " + std::to_string(primal_norm) +
                         ", dual " + std::to_string(dual_norm) + ")"),
      iteration_(iteration),
      primal_norm_(primal_norm),
      dual_norm_(dual_norm) {}

double objective(std::span<const double> y, std::span<const double> tau,
                 const SolverConfig& cfg) {
  require_length(tau, y.size(), "objective tau");
  if (y.size() < 3) {
    throw std::invalid_argument("objective needs series length >= 3");
  }
  double loss = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    loss += huber(y[i] - tau[i], cfg.huber);
  }
  double reg = 0.0;
  for (std::size_t t = 0; t + 1 < tau.size(); ++t) {
    reg += cfg.lambda1 * std::abs(tau[t] - tau[t + 1]);
  }
  for (std::size_t t = 0; t + 2 < tau.size(); ++t) {
    reg += cfg.lambda2 * std::abs(tau[t] - 2.0 * tau[t + 1] + tau[t + 2]);
  }
  return loss + reg;
}

std::vector<double> soft_threshold(std::span<const double> v, double kappa) {
  if (!(kappa > 0.0)) {
    throw std::invalid_argument("soft threshold kappa must be positive");
  }
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double a = v[i];
    if (a > kappa) {
      out[i] = a - kappa;
    } else if (a < -kappa) {
      out[i] = a + kappa;
    } else {
      out[i] = 0.0;
    }
  }
  return out;
}

std::vector<double> z_update(const SolverState& state,
                             std::span<const double> Dtau,
                             const SolverConfig& cfg) {
  require_length(Dtau, state.u.size(), "z update Dtau");
  std::vector<double> v(Dtau.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = Dtau[i] + state.u[i];
  return soft_threshold(v, 1.0 / cfg.rho);
}

std::vector<double> tau_update(std::span<const double> y,
                               const SolverState& state,
                               const SolverConfig& cfg) {
  require_length(state.tau, y.size(), "tau update state");
  const StackedOperator op(cfg.lambda1, cfg.lambda2, y.size());
  return tau_step(y, state, cfg, op, make_penalty_band(op, cfg.rho));
}

std::vector<double> dual_update(const SolverState& state,
                                std::span<const double> Dtau,
                                std::span<const double> z_new) {
  require_length(Dtau, state.u.size(), "dual update Dtau");
  require_length(z_new, state.u.size(), "dual update z");
  std::vector<double> u(state.u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    u[i] = state.u[i] + Dtau[i] - z_new[i];
  }
  return u;
}

std::pair<double, double> residuals(std::span<const double> z_prev,
                                    const SolverState& state,
                                    std::span<const double> Dtau,
                                    const SolverConfig& cfg) {
  require_length(z_prev, state.z.size(), "residuals z_prev");
  require_length(Dtau, state.z.size(), "residuals Dtau");
  double primal_sq = 0.0;
  std::vector<double> dz(state.z.size());
  for (std::size_t i = 0; i < state.z.size(); ++i) {
    const double g = Dtau[i] - state.z[i];
    primal_sq += g * g;
    dz[i] = state.z[i] - z_prev[i];
  }
  const StackedOperator op(cfg.lambda1, cfg.lambda2, state.tau.size());
  const double dual = cfg.rho * norm2(op.apply_transpose(dz));
  return {std::sqrt(primal_sq), dual};
}

std::pair<double, double> tolerances(std::span<const double> Dtau,
                                     std::span<const double> z,
                                     std::span<const double> u,
                                     const SolverConfig& cfg, std::size_t n) {
  const std::size_t m = 2 * n - 3;
  require_length(Dtau, m, "tolerances Dtau");
  require_length(z, m, "tolerances z");
  require_length(u, m, "tolerances u");
  const double eps_pri = std::sqrt(static_cast<double>(m)) * cfg.eps_abs +
                         cfg.eps_rel * std::max(norm2(Dtau), norm2(z));
  const StackedOperator op(cfg.lambda1, cfg.lambda2, n);
  const double eps_dual = std::sqrt(static_cast<double>(n)) * cfg.eps_abs +
                          cfg.eps_rel * cfg.rho * norm2(op.apply_transpose(u));
  return {eps_pri, eps_dual};
}

TrendSolver::TrendSolver(std::size_t n, SolverConfig cfg)
    : n_(n),
      cfg_(cfg),
      op_(cfg.lambda1, cfg.lambda2, n),
      penalty_(make_penalty_band(op_, cfg.rho)) {
  cfg_.validate();
}

SolverState TrendSolver::cold_start(std::span<const double> y) const {
  require_length(y, n_, "cold start series");
  SolverState state;
  state.tau.assign(y.begin(), y.end());
  state.z = op_.apply(y);
  state.u.assign(op_.rows(), 0.0);
  state.iteration = 0;
  return state;
}

FilterResult TrendSolver::run(std::span<const double> y,
                              SolverState& state) const {
  require_length(y, n_, "solver series");
  if (state.tau.size() != n_ || state.z.size() != op_.rows() ||
      state.u.size() != op_.rows()) {
    throw std::invalid_argument("solver state dimensions do not match series");
  }

  std::vector<double> Dtau(op_.rows());
  std::vector<double> z_prev(op_.rows());

  double primal = 0.0;
  double dual = 0.0;
  bool converged = false;
  int iterations = 0;

  for (int k = 0; k < cfg_.max_iter; ++k) {
    z_prev = state.z;
    try {
      state.tau = tau_step(y, state, cfg_, op_, penalty_);
    } catch (const FactorizationError& e) {
      throw SolverError(e.what(), state.iteration, primal, dual);
    }
    op_.apply(state.tau, Dtau);
    state.z = z_update(state, Dtau, cfg_);
    state.u = dual_update(state, Dtau, state.z);
    state.iteration += 1;
    iterations += 1;

    std::tie(primal, dual) = residuals(z_prev, state, Dtau, cfg_);
    const auto [eps_pri, eps_dual] = tolerances(Dtau, state.z, state.u, cfg_, n_);
    if (primal <= eps_pri && dual <= eps_dual) {
      converged = true;
      break;
    }
  }

  FilterResult result;
  result.trend = state.tau;
  result.residual.resize(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    result.residual[i] = y[i] - state.tau[i];
  }
  result.iterations = iterations;
  result.converged = converged;
  result.primal_residual_norm = primal;
  result.dual_residual_norm = dual;
  result.objective = objective(y, state.tau, cfg_);
  return result;
}

FilterResult robust_trend_filter(const TimeSeries& y, const SolverConfig& cfg) {
  const TrendSolver solver(y.size(), cfg);
  SolverState state = solver.cold_start(y.values());
  return solver.run(y.values(), state);
}

FilterResult robust_trend_filter(const TimeSeries& y, const SolverConfig& cfg,
                                 const SolverState& warm) {
  const TrendSolver solver(y.size(), cfg);
  SolverState state = warm;
  return solver.run(y.values(), state);
}

}  // namespace robusttrend
