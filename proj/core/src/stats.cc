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

#include "ocrs/stats.h"

#include <algorithm>
#include <stdexcept>

#include <boost/math/distributions/normal.hpp>

namespace ocrs {

double NormalUpperQuantile(double tail) {
  if (!(tail > 0.0 && tail < 1.0)) {
    throw std::domain_error("NormalUpperQuantile: tail must lie in (0, 1)");
  }
  return boost::math::quantile(boost::math::complement(
      boost::math::normal_distribution<double>(), tail));
}

double BonferroniZ(int comparisons, double base_z) {
  if (comparisons <= 1) return base_z;
  const double tail = boost::math::cdf(boost::math::complement(
      boost::math::normal_distribution<double>(), base_z));
  return NormalUpperQuantile(tail / comparisons);
}

Interval WilsonInterval(std::int64_t successes, std::int64_t trials,
                        double confidence) {
  if (trials <= 0) return {0.0, 1.0};
  const double z = NormalUpperQuantile((1.0 - confidence) / 2.0);
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double center = (p + z2 / (2.0 * n)) / (1.0 + z2 / n);
  const double half =
      z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / (1.0 + z2 / n);
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

}  // namespace ocrs
