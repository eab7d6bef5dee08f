// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef OCRS_STATS_H_
#define OCRS_STATS_H_

#include <cmath>
#include <cstdint>

namespace ocrs {

struct Interval {
  double low = 0.0;
  double high = 1.0;
};

// Wilson score interval for a binomial proportion at two-sided `confidence`.
// With zero trials the interval is [0, 1].
Interval WilsonInterval(std::int64_t successes, std::int64_t trials,
                        double confidence = 0.99);

// z such that Pr[Z > z] = tail for a standard normal Z.
double NormalUpperQuantile(double tail);

// Critical value for one of `comparisons` simultaneous one-sided checks whose
// family-wise error matches a single check at `base_z` standard errors.
double BonferroniZ(int comparisons, double base_z = 3.0);

// Welford mean and variance.
class MeanAccumulator {
 public:
  void Add(double v) {
    ++count_;
    const double delta = v - mean_;
    mean_ += delta / static_cast<double>(count_);
    m2_ += delta * (v - mean_);
  }
  std::int64_t count() const { return count_; }
  double mean() const { return mean_; }
  // Sample variance; zero with fewer than two observations.
  double variance() const {
    return count_ > 1 ? m2_ / static_cast<double>(count_ - 1) : 0.0;
  }
  double std_error() const {
    return count_ > 0 ? std::sqrt(variance() / static_cast<double>(count_))
                      : 0.0;
  }

 private:
  std::int64_t count_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

// Standard error of a proportion p estimated from n Bernoulli trials.
inline double ProportionStdError(double p, std::int64_t n) {
  return n > 0 ? std::sqrt(p * (1.0 - p) / static_cast<double>(n)) : 0.0;
}

}  // namespace ocrs

#endif  // OCRS_STATS_H_
