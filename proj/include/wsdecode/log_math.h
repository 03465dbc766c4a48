// Copyright 2026 The wsdecode Authors.
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

#ifndef WSDECODE_LOG_MATH_H_
#define WSDECODE_LOG_MATH_H_

#include <cmath>
#include <limits>

namespace wsd {

inline constexpr double kLogZero = -std::numeric_limits<double>::infinity();
inline constexpr double kInfWeight = std::numeric_limits<double>::infinity();

// log(exp(a) + exp(b)). Symmetric in its arguments bit for bit, and
// LogAdd(-inf, -inf) == -inf.
inline double LogAdd(double a, double b) {
  if (a < b) std::swap(a, b);
  if (b == kLogZero) return a;
  return a + std::log1p(std::exp(b - a));
}

}  // namespace wsd

#endif  // WSDECODE_LOG_MATH_H_
