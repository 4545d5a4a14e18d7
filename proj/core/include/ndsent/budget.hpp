#pragma once

#include <atomic>
#include <cstdint>

#include "ndsent/errors.hpp"

namespace nds {

// Work meter shared by the set-manipulating operations.  The unit is one
// interval cell touched (created, intersected, or scanned).  A single Budget
// instance is threaded through a computation so that deeply nested calls
// cannot silently blow up; exhaustion raises BudgetError.
class Budget {
 public:
  static constexpr std::int64_t kDefaultLimit = 50'000'000;

  explicit Budget(std::int64_t limit = kDefaultLimit) : limit_(limit) {}

  Budget(const Budget&) = delete;
  Budget& operator=(const Budget&) = delete;

  void charge(std::int64_t cells) {
    if (cells <= 0) return;
    std::int64_t now = used_.fetch_add(cells, std::memory_order_relaxed) + cells;
    if (now > limit_) {
      throw BudgetError("cell budget exhausted: " + std::to_string(now) +
                        " > " + std::to_string(limit_));
    }
  }

  std::int64_t used() const { return used_.load(std::memory_order_relaxed); }
  std::int64_t limit() const { return limit_; }
  std::int64_t remaining() const { return limit_ - used(); }

 private:
  std::int64_t limit_;
  std::atomic<std::int64_t> used_{0};
};

}  // namespace nds
