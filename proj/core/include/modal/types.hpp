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

#pragma once

#include <complex>
#include <cstdint>

#include <Eigen/Core>

namespace modal {

using Complex = std::complex<double>;

/// base^n for integer n >= 0 by repeated squaring. Keeps rounding drift small
/// for the large sensor exponents (up to the array aperture). 0^0 is 1.
Complex integer_power(Complex base, long long n);

/// Principal n-th root: magnitude |w|^{1/n}, phase arg(w)/n with
/// arg in (-pi, pi]. Requires w != 0 and n >= 1.
Complex principal_root(Complex w, int n);

/// Mixes a seed with stream indices into an independent 64-bit RNG seed
/// (splitmix64 finalization). Used to give every Monte Carlo trial its own
/// reproducible stream.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0);

}  // namespace modal
