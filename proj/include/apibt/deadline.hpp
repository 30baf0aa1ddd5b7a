#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <limits>

namespace apibt {

// Wall: budgets in milliseconds of steady-clock time. Nodes: budgets in
// candidate iterations, which makes search results machine-independent.
enum class BudgetMode { wall, nodes };

// Conversion rate used when a millisecond budget runs in node mode.
inline constexpr double kNodesPerMs = 10'000.0;

class PlanningClock {
 public:
  explicit PlanningClock(BudgetMode mode = BudgetMode::wall)
      : mode_(mode), start_(std::chrono::steady_clock::now()) {}

  BudgetMode mode() const noexcept { return mode_; }

  // Elapsed budget units: milliseconds (wall) or candidate iterations (nodes).
  double elapsed() const noexcept {
    if (mode_ == BudgetMode::nodes) return static_cast<double>(nodes_);
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

  double elapsed_ms() const noexcept {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

  void tick() noexcept { ++nodes_; }
  std::uint64_t nodes() const noexcept { return nodes_; }

 private:
  BudgetMode mode_;
  std::chrono::steady_clock::time_point start_;
  std::uint64_t nodes_ = 0;
};

// Absolute cutoff on a PlanningClock. Once expired, stays expired.
class Deadline {
 public:
  static constexpr double kUnbounded = std::numeric_limits<double>::infinity();

  Deadline(PlanningClock& clock, double budget) : clock_(&clock), limit_(clock.elapsed() + std::max(0.0, budget)) {}

  bool expired() const noexcept {
    if (!expired_ && clock_->elapsed() >= limit_) expired_ = true;
    return expired_;
  }

  double remaining() const noexcept { return expired() ? 0.0 : std::max(0.0, limit_ - clock_->elapsed()); }

  // A nested cutoff `budget` units from now, never later than this one.
  Deadline child(double budget) const {
    Deadline d = *this;
    d.expired_ = false;
    d.limit_ = std::min(limit_, clock_->elapsed() + std::max(0.0, budget));
    return d;
  }

  PlanningClock& clock() const noexcept { return *clock_; }

 private:
  PlanningClock* clock_;
  double limit_;
  mutable bool expired_ = false;
};

// Per-step search allowance in `mode` units.
struct StepBudget {
  BudgetMode mode = BudgetMode::wall;
  double amount = 0.0;

  static StepBudget unbounded() { return {BudgetMode::nodes, Deadline::kUnbounded}; }
  static StepBudget from_ms(double ms, BudgetMode mode) {
    return {mode, mode == BudgetMode::nodes ? ms * kNodesPerMs : ms};
  }
};

}  // namespace apibt
