#pragma once

#include <chrono>
#include <thread>

namespace guiharvest::services {

// Monotonic time source, injectable so throttling and backoff are testable
// without real sleeps.
class Clock {
 public:
  virtual ~Clock() = default;
  virtual double now() = 0;  // seconds, monotonic
  virtual void sleep_for(double seconds) = 0;
};

class SystemClock : public Clock {
 public:
  double now() override {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
  }
  void sleep_for(double seconds) override {
    if (seconds > 0) std::this_thread::sleep_for(std::chrono::duration<double>(seconds));
  }
};

// Virtual time. sleep_for() advances instantly; tests observe requested
// sleeps through now().
class ManualClock : public Clock {
 public:
  explicit ManualClock(double start = 0) : now_(start) {}
  double now() override { return now_; }
  void sleep_for(double seconds) override {
    if (seconds > 0) now_ += seconds;
  }
  void advance(double seconds) { now_ += seconds; }

 private:
  double now_;
};

}  // namespace guiharvest::services
