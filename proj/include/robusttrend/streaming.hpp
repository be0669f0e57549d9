#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "robusttrend/solver.hpp"

namespace robusttrend {

struct StreamOptions {
  std::size_t window = 101;
  /// Seed each window's ADMM state from the previous window's solution,
  /// shifted by one (drop the first entry, duplicate the last). Off means
  /// every window solves from a cold start.
  bool warm_start = true;
  /// Emit the window's center estimate instead of the causal last point.
  bool emit_center = false;
};

/// Online sliding-window trend extraction. Samples are pushed one at a
/// time; nothing is emitted until `window` samples have accumulated, then
/// every push yields one trend point. Memory stays O(window) and the
/// penalty band is built once, surviving reset().
class StreamingFilter {
 public:
  StreamingFilter(StreamOptions options, SolverConfig cfg);

  /// Appends a sample; returns the new trend point once the window is full.
  /// Solver failures carry the absolute stream position in their message.
  std::optional<double> push(double sample);

  /// Drops buffered samples and warm-start state; cached operator bands are
  /// kept (they depend only on window and config).
  void reset();

  std::size_t emitted() const noexcept { return emitted_; }
  std::size_t samples_seen() const noexcept { return position_; }
  const StreamOptions& options() const noexcept { return options_; }
  const SolverConfig& config() const noexcept { return solver_.config(); }

  /// Instrumentation: total ADMM iterations and window solves so far, and
  /// how many times the penalty band has been assembled (stays at 1 across
  /// resets).
  std::uint64_t total_iterations() const noexcept { return total_iterations_; }
  std::size_t solves() const noexcept { return solves_; }
  std::size_t penalty_builds() const noexcept { return penalty_builds_; }

 private:
  void shift_state();

  StreamOptions options_;
  TrendSolver solver_;
  std::vector<double> buffer_;
  SolverState state_;
  bool has_state_ = false;
  std::size_t position_ = 0;
  std::size_t emitted_ = 0;
  std::uint64_t total_iterations_ = 0;
  std::size_t solves_ = 0;
  std::size_t penalty_builds_ = 0;
};

}  // namespace robusttrend
