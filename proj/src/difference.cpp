#include "robusttrend/difference.hpp"

#include <stdexcept>
#include <string>

namespace robusttrend {

namespace {

void require_size(std::span<const double> v, std::size_t expected,
                  const char* what) {
  if (v.size() != expected) {
    throw std::invalid_argument(std::string(what) + ": expected length " +
                                std::to_string(expected) + ", got " +
                                std::to_string(v.size()));
  }
}

}  // namespace

DifferenceOperator::DifferenceOperator(int order, std::size_t n)
    : order_(order), n_(n) {
  if (order != 1 && order != 2) {
    throw std::invalid_argument("difference order must be 1 or 2");
  }
  if (n < 3) {
    throw std::invalid_argument("difference operator needs n >= 3");
  }
}

void DifferenceOperator::apply(std::span<const double> x,
                               std::span<double> out) const {
  require_size(x, cols(), "difference input");
  require_size(out, rows(), "difference output");
  if (order_ == 1) {
    for (std::size_t t = 0; t < out.size(); ++t) {
      out[t] = x[t] - x[t + 1];
    }
  } else {
    for (std::size_t t = 0; t < out.size(); ++t) {
      out[t] = x[t] - 2.0 * x[t + 1] + x[t + 2];
    }
  }
}

std::vector<double> DifferenceOperator::apply(std::span<const double> x) const {
  std::vector<double> out(rows());
  apply(x, out);
  return out;
}

void DifferenceOperator::apply_transpose(std::span<const double> v,
                                         std::span<double> out) const {
  require_size(v, rows(), "difference transpose input");
  require_size(out, cols(), "difference transpose output");
  const std::size_t m = rows();
  for (double& o : out) o = 0.0;
  if (order_ == 1) {
    for (std::size_t t = 0; t < m; ++t) {
      out[t] += v[t];
      out[t + 1] -= v[t];
    }
  } else {
    for (std::size_t t = 0; t < m; ++t) {
      out[t] += v[t];
      out[t + 1] -= 2.0 * v[t];
      out[t + 2] += v[t];
    }
  }
}

std::vector<double> DifferenceOperator::apply_transpose(
    std::span<const double> v) const {
  std::vector<double> out(cols());
  apply_transpose(v, out);
  return out;
}

StackedOperator::StackedOperator(double lambda1, double lambda2, std::size_t n)
    : lambda1_(lambda1), lambda2_(lambda2), n_(n), d1_(1, n), d2_(2, n) {
  if (lambda1 < 0.0 || lambda2 < 0.0) {
    throw std::invalid_argument("regularization weights must be nonnegative");
  }
}

void StackedOperator::apply(std::span<const double> x,
                            std::span<double> out) const {
  require_size(x, cols(), "stacked input");
  require_size(out, rows(), "stacked output");
  const std::size_t m1 = first_block_rows();
  d1_.apply(x, out.subspan(0, m1));
  d2_.apply(x, out.subspan(m1));
  for (std::size_t t = 0; t < m1; ++t) out[t] *= lambda1_;
  for (std::size_t t = m1; t < out.size(); ++t) out[t] *= lambda2_;
}

std::vector<double> StackedOperator::apply(std::span<const double> x) const {
  std::vector<double> out(rows());
  apply(x, out);
  return out;
}

void StackedOperator::apply_transpose(std::span<const double> v,
                                      std::span<double> out) const {
  require_size(v, rows(), "stacked transpose input");
  require_size(out, cols(), "stacked transpose output");
  const std::size_t m1 = first_block_rows();
  for (double& o : out) o = 0.0;
  for (std::size_t t = 0; t < m1; ++t) {
    const double w = lambda1_ * v[t];
    out[t] += w;
    out[t + 1] -= w;
  }
  for (std::size_t t = 0; t + m1 < v.size(); ++t) {
    const double w = lambda2_ * v[m1 + t];
    out[t] += w;
    out[t + 1] -= 2.0 * w;
    out[t + 2] += w;
  }
}

std::vector<double> StackedOperator::apply_transpose(
    std::span<const double> v) const {
  std::vector<double> out(cols());
  apply_transpose(v, out);
  return out;
}

}  // namespace robusttrend
