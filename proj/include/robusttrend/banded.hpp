#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "robusttrend/difference.hpp"

namespace robusttrend {

/// Thrown when the banded LDL^T factorization meets a pivot too small to
/// trust. Carries the offending pivot index.
class FactorizationError : public std::runtime_error {
 public:
  FactorizationError(std::size_t pivot_index, double pivot_value);
  std::size_t pivot_index() const noexcept { return pivot_index_; }
  double pivot_value() const noexcept { return pivot_value_; }

 private:
  std::size_t pivot_index_;
  double pivot_value_;
};

/// The rho * D^T D contribution to the normal matrix, stored as three
/// diagonals (main, first sub, second sub). Depends only on the operator
/// and rho, so it can be assembled once and reused across iterations.
struct PenaltyBand {
  std::vector<double> diag0;  // length n
  std::vector<double> diag1;  // length n-1
  std::vector<double> diag2;  // length n-2
};

PenaltyBand make_penalty_band(const StackedOperator& op, double rho);

/// Symmetric positive-definite pentadiagonal system diag(w) + rho * D^T D,
/// stored diagonal-major with lower bandwidth 2. Immutable once built;
/// solve() factors (LDL^T, O(n)) and back-substitutes on each call.
class BandedSPDSystem {
 public:
  BandedSPDSystem(std::vector<double> diag0, std::vector<double> diag1,
                  std::vector<double> diag2);

  std::size_t dimension() const noexcept { return diag0_.size(); }
  const std::vector<double>& diag0() const noexcept { return diag0_; }
  const std::vector<double>& diag1() const noexcept { return diag1_; }
  const std::vector<double>& diag2() const noexcept { return diag2_; }

  void solve(std::span<const double> b, std::span<double> x) const;
  std::vector<double> solve(std::span<const double> b) const;

 private:
  std::vector<double> diag0_;
  std::vector<double> diag1_;
  std::vector<double> diag2_;
};

BandedSPDSystem build_banded_system(const StackedOperator& op,
                                    std::span<const double> diag_weights,
                                    double rho);

/// Overload reusing a precomputed rho * D^T D band.
BandedSPDSystem build_banded_system(const PenaltyBand& penalty,
                                    std::span<const double> diag_weights);

std::vector<double> solve_banded(const BandedSPDSystem& sys,
                                 std::span<const double> b);

}  // namespace robusttrend
