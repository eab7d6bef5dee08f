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

#ifndef OCRS_RNG_H_
#define OCRS_RNG_H_

#include <cstdint>
#include <limits>
#include <random>

namespace ocrs {

// A reproducible random stream keyed by (seed, stream id).
//
// Trial i of an experiment uses stream id i, so results do not depend on how
// trials are distributed over workers. Streams are not thread-safe; each
// worker owns the streams it draws from.
class RngStream {
 public:
  using result_type = std::uint64_t;

  RngStream(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

  std::uint64_t operator()() { return engine_(); }
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  // Uniform on [0, 1) with 53 bits of resolution.
  double Uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }
  // True with probability p; p <= 0 never, p >= 1 always.
  bool Bernoulli(double p) { return Uniform() < p; }
  // Uniform on [0, bound); bound must be positive.
  std::uint64_t UniformInt(std::uint64_t bound);

  // Independent child stream derived from this stream's key.
  RngStream Fork(std::uint64_t child) const;

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::mt19937_64 engine_;
};

}  // namespace ocrs

#endif  // OCRS_RNG_H_
