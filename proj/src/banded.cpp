#include "robusttrend/banded.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace robusttrend {

namespace {

// Pivots below this fraction of the largest diagonal entry are treated as
// factorization failures; weight floors keep well-formed systems far above it.
constexpr double kPivotFraction = 1e-14;

std::string pivot_message(std::size_t index, double value) {
  return "banded factorization failed: nonpositive pivot " +
         std::to_string(value) + " at index " + std::to_string(index);
}

}  // namespace

FactorizationError::FactorizationError(std::size_t pivot_index,
                                       double pivot_value)
    : std::runtime_error(pivot_message(pivot_index, pivot_value)),
      pivot_index_(pivot_index),
      pivot_value_(pivot_value) {}

PenaltyBand make_penalty_band(const StackedOperator& op, double rho) {
  if (rho <= 0.0) {
    throw std::invalid_argument("penalty rho must be positive");
  }
  const std::size_t n = op.cols();
  PenaltyBand band{std::vector<double>(n, 0.0), std::vector<double>(n - 1, 0.0),
                   std::vector<double>(n - 2, 0.0)};
  const double c1 = rho * op.lambda1() * op.lambda1();
  if (c1 != 0.0) {
    for (std::size_t t = 0; t + 1 < n; ++t) {
      band.diag0[t] += c1;
      band.diag0[t + 1] += c1;
      band.diag1[t] -= c1;
    }
  }
  const double c2 = rho * op.lambda2() * op.lambda2();
  if (c2 != 0.0) {
    // Row t of D2 touches columns t, t+1, t+2 with stencil (1, -2, 1).
    for (std::size_t t = 0; t + 2 < n; ++t) {
      band.diag0[t] += c2;
      band.diag0[t + 1] += 4.0 * c2;
      band.diag0[t + 2] += c2;
      band.diag1[t] -= 2.0 * c2;
      band.diag1[t + 1] -= 2.0 * c2;
      band.diag2[t] += c2;
    }
  }
  return band;
}

BandedSPDSystem::BandedSPDSystem(std::vector<double> diag0,
                                 std::vector<double> diag1,
                                 std::vector<double> diag2)
    : diag0_(std::move(diag0)),
      diag1_(std::move(diag1)),
      diag2_(std::move(diag2)) {
  const std::size_t n = diag0_.size();
  if (n < 3 || diag1_.size() != n - 1 || diag2_.size() != n - 2) {
    throw std::invalid_argument("banded system diagonals have wrong lengths");
  }
}

void BandedSPDSystem::solve(std::span<const double> b,
                            std::span<double> x) const {
  const std::size_t n = dimension();
  if (b.size() != n || x.size() != n) {
    throw std::invalid_argument("banded solve: right-hand side length mismatch");
  }

  double max_diag = 0.0;
  for (double d : diag0_) max_diag = std::max(max_diag, std::abs(d));
  const double pivot_floor = kPivotFraction * max_diag;

  // LDL^T with unit lower-triangular L of bandwidth 2.
  std::vector<double> d(n);
  std::vector<double> l1(n > 1 ? n - 1 : 0);
  std::vector<double> l2(n > 2 ? n - 2 : 0);
  for (std::size_t i = 0; i < n; ++i) {
    double di = diag0_[i];
    if (i >= 1) di -= l1[i - 1] * l1[i - 1] * d[i - 1];
    if (i >= 2) di -= l2[i - 2] * l2[i - 2] * d[i - 2];
    if (!(di > pivot_floor)) {
      throw FactorizationError(i, di);
    }
    d[i] = di;
    if (i + 1 < n) {
      double t = diag1_[i];
      if (i >= 1) t -= l2[i - 1] * l1[i - 1] * d[i - 1];
      l1[i] = t / di;
    }
    if (i + 2 < n) {
      l2[i] = diag2_[i] / di;
    }
  }

  // Forward: L z = b.
  for (std::size_t i = 0; i < n; ++i) {
    double v = b[i];
    if (i >= 1) v -= l1[i - 1] * x[i - 1];
    if (i >= 2) v -= l2[i - 2] * x[i - 2];
    x[i] = v;
  }
  // Diagonal and backward: L^T out = z / d.
  for (std::size_t i = 0; i < n; ++i) x[i] /= d[i];
  for (std::size_t k = n; k-- > 0;) {
    double v = x[k];
    if (k + 1 < n) v -= l1[k] * x[k + 1];
    if (k + 2 < n) v -= l2[k] * x[k + 2];
    x[k] = v;
  }
}

std::vector<double> BandedSPDSystem::solve(std::span<const double> b) const {
  std::vector<double> x(dimension());
  solve(b, x);
  return x;
}

BandedSPDSystem build_banded_system(const StackedOperator& op,
                                    std::span<const double> diag_weights,
                                    double rho) {
  return build_banded_system(make_penalty_band(op, rho), diag_weights);
}

BandedSPDSystem build_banded_system(const PenaltyBand& penalty,
                                    std::span<const double> diag_weights) {
  const std::size_t n = penalty.diag0.size();
  if (diag_weights.size() != n) {
    throw std::invalid_argument("diagonal weight vector length mismatch");
  }
  std::vector<double> diag0 = penalty.diag0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!(diag_weights[i] > 0.0)) {
      throw std::invalid_argument("diagonal weights must be positive");
    }
    diag0[i] += diag_weights[i];
  }
  return BandedSPDSystem(std::move(diag0), penalty.diag1, penalty.diag2);
}

std::vector<double> solve_banded(const BandedSPDSystem& sys,
                                 std::span<const double> b) {
  return sys.solve(b);
}

}  // namespace robusttrend
