// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <functional>

namespace tubelab {

// Worker count from TUBELAB_WORKERS, else the hardware concurrency.
int worker_count();

// Runs fn(i) for i in [0, n) on up to `workers` threads using contiguous
// static chunks.  The first exception thrown by any call is rethrown.
void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& fn);

// Neumaier compensated summation.
class CompensatedSum {
 public:
  void add(double x);
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace tubelab
