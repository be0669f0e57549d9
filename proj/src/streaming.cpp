#include "robusttrend/streaming.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace robusttrend {

namespace {

// Drop the first element and duplicate the last one, in place.
void shift_block(std::vector<double>& v, std::size_t begin, std::size_t end) {
  for (std::size_t i = begin; i + 1 < end; ++i) v[i] = v[i + 1];
}

}  // namespace

StreamingFilter::StreamingFilter(StreamOptions options, SolverConfig cfg)
    : options_(options), solver_(options.window, cfg) {
  if (options.window < 3) {
    throw std::invalid_argument("stream window must be at least 3");
  }
  buffer_.reserve(options.window);
  penalty_builds_ = 1;  // band assembled by the solver constructor
}

std::optional<double> StreamingFilter::push(double sample) {
  if (!std::isfinite(sample)) {
    throw std::invalid_argument("stream sample at position " +
                                std::to_string(position_) + " is not finite");
  }
  ++position_;
  if (buffer_.size() == options_.window) {
    buffer_.erase(buffer_.begin());
  }
  buffer_.push_back(sample);
  if (buffer_.size() < options_.window) {
    return std::nullopt;
  }

  if (has_state_ && options_.warm_start) {
    shift_state();
  } else {
    state_ = solver_.cold_start(buffer_);
    has_state_ = true;
  }

  FilterResult result;
  try {
    result = solver_.run(buffer_, state_);
  } catch (const SolverError& e) {
    throw SolverError(std::string(e.what()) + " at stream position " +
                          std::to_string(position_ - 1),
                      e.iteration(), e.primal_norm(), e.dual_norm());
  }
  total_iterations_ += static_cast<std::uint64_t>(result.iterations);
  ++solves_;
  ++emitted_;
  const std::size_t at =
      options_.emit_center ? options_.window / 2 : options_.window - 1;
  return result.trend[at];
}

void StreamingFilter::reset() {
  buffer_.clear();
  state_ = SolverState{};
  has_state_ = false;
  position_ = 0;
  emitted_ = 0;
  total_iterations_ = 0;
  solves_ = 0;
}

void StreamingFilter::shift_state() {
  const std::size_t w = options_.window;
  // tau is one window long; z and u hold the first-difference block
  // (w-1 rows) followed by the second-difference block (w-2 rows). The
  // drop-first/duplicate-last shift is applied inside each block so dual
  // entries stay aligned with their difference rows.
  shift_block(state_.tau, 0, w);
  shift_block(state_.z, 0, w - 1);
  shift_block(state_.z, w - 1, 2 * w - 3);
  shift_block(state_.u, 0, w - 1);
  shift_block(state_.u, w - 1, 2 * w - 3);
  state_.iteration = 0;
}

}  // namespace robusttrend
