#pragma once

#include <deque>
#include <mutex>

#include "guiharvest/services/clock.hpp"

namespace guiharvest::services {

// Sliding one-minute window: at most `requests_per_minute` acquisitions in
// any 60 s span. acquire() sleeps on the shared clock until a slot opens.
// requests_per_minute <= 0 disables throttling.
class RateLimiter {
 public:
  RateLimiter(int requests_per_minute, Clock& clock)
      : limit_(requests_per_minute), clock_(clock) {}

  void acquire() {
    if (limit_ <= 0) return;
    std::unique_lock lock(mutex_);
    while (true) {
      double now = clock_.now();
      while (!stamps_.empty() && now - stamps_.front() >= 60.0)
        stamps_.pop_front();
      if (static_cast<int>(stamps_.size()) < limit_) {
        stamps_.push_back(now);
        return;
      }
      double wait = 60.0 - (now - stamps_.front());
      lock.unlock();
      clock_.sleep_for(wait);
      lock.lock();
    }
  }

 private:
  int limit_;
  Clock& clock_;
  std::mutex mutex_;
  std::deque<double> stamps_;
};

}  // namespace guiharvest::services
