// SPDX-License-Identifier: Apache-2.0
//
// modal-arrays: estimation of damped complex exponential modes with
// uniform, sparse, and co-prime line arrays.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "modal/types.hpp"

#include <cmath>
#include <stdexcept>

namespace modal {

Complex integer_power(Complex base, long long n) {
  if (n < 0) {
    throw std::invalid_argument("integer_power: negative exponent");
  }
  Complex result(1.0, 0.0);
  Complex factor = base;
  while (n > 0) {
    if (n & 1) result *= factor;
    n >>= 1;
    if (n > 0) factor *= factor;
  }
  return result;
}

Complex principal_root(Complex w, int n) {
  if (n < 1) {
    throw std::invalid_argument("principal_root: n must be >= 1");
  }
  if (w == Complex(0.0, 0.0)) {
    throw std::invalid_argument("principal_root: zero argument");
  }
  const double magnitude = std::pow(std::abs(w), 1.0 / n);
  const double phase = std::arg(w) / n;
  return std::polar(magnitude, phase);
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  auto finalize = [](std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  };
  std::uint64_t x = finalize(seed);
  x = finalize(x ^ finalize(a + 0x632be59bd9b4e019ULL));
  x = finalize(x ^ finalize(b + 0x9e6c63d0876a9a47ULL));
  return x;
}

}  // namespace modal
