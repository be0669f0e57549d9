#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace robusttrend {

/// Discrete difference operator of order 1 or 2 as a banded linear map.
/// Row t of the order-1 operator is x_t - x_{t+1}; row t of the order-2
/// operator is x_t - 2 x_{t+1} + x_{t+2}. An order-k operator on a series
/// of length n has n - k rows.
class DifferenceOperator {
 public:
  DifferenceOperator(int order, std::size_t n);

  int order() const noexcept { return order_; }
  std::size_t rows() const noexcept { return n_ - static_cast<std::size_t>(order_); }
  std::size_t cols() const noexcept { return n_; }

  void apply(std::span<const double> x, std::span<double> out) const;
  std::vector<double> apply(std::span<const double> x) const;

  void apply_transpose(std::span<const double> v, std::span<double> out) const;
  std::vector<double> apply_transpose(std::span<const double> v) const;

 private:
  int order_;
  std::size_t n_;
};

/// The regularization operator D = [lambda1 * D1; lambda2 * D2] stacking
/// the scaled first and second differences. Maps R^n to R^(2n-3); the
/// first n-1 output entries are the scaled first differences, the
/// remaining n-2 the scaled second differences.
class StackedOperator {
 public:
  StackedOperator(double lambda1, double lambda2, std::size_t n);

  double lambda1() const noexcept { return lambda1_; }
  double lambda2() const noexcept { return lambda2_; }
  std::size_t rows() const noexcept { return 2 * n_ - 3; }
  std::size_t cols() const noexcept { return n_; }
  /// Row count of the first-difference block (n-1).
  std::size_t first_block_rows() const noexcept { return n_ - 1; }

  const DifferenceOperator& d1() const noexcept { return d1_; }
  const DifferenceOperator& d2() const noexcept { return d2_; }

  void apply(std::span<const double> x, std::span<double> out) const;
  std::vector<double> apply(std::span<const double> x) const;

  void apply_transpose(std::span<const double> v, std::span<double> out) const;
  std::vector<double> apply_transpose(std::span<const double> v) const;

 private:
  double lambda1_;
  double lambda2_;
  std::size_t n_;
  DifferenceOperator d1_;
  DifferenceOperator d2_;
};

}  // namespace robusttrend
