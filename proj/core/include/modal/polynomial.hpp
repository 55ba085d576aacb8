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

#include <vector>

#include "modal/types.hpp"

namespace modal {

/// Monic prediction polynomial A(z) = 1 + a_1 z^{-1} + ... + a_p z^{-p}.
///
/// Only the tail [a_1, ..., a_p] is stored; the unit leading coefficient is
/// implicit in the type so it cannot be violated by construction.
class MonicPolynomial {
 public:
  /// Builds from the tail coefficients [a_1, ..., a_p]; p >= 1.
  explicit MonicPolynomial(std::vector<Complex> tail);

  /// Expands prod_k (1 - r_k z^{-1}); every input root is a root of the result.
  static MonicPolynomial from_roots(const std::vector<Complex>& roots);

  int degree() const { return static_cast<int>(tail_.size()); }

  /// a_i for i in [0, degree]; coeff(0) is always 1.
  Complex coeff(int i) const;

  /// Tail [a_1, ..., a_p].
  const std::vector<Complex>& tail() const { return tail_; }

  /// Coefficients in band order [a_p, ..., a_1, 1] as used by the banded
  /// orthogonal-basis rows.
  std::vector<Complex> band_coefficients() const;

  /// Horner evaluation of sum_i a_i z^{-i}. Throws std::domain_error at z = 0.
  Complex evaluate(Complex z) const;

  /// The p roots, computed as the eigenvalues of the companion matrix of
  /// z^p + a_1 z^{p-1} + ... + a_p. Throws std::invalid_argument on
  /// non-finite coefficients.
  std::vector<Complex> roots() const;

 private:
  std::vector<Complex> tail_;
};

/// Aliasing-resolution polynomial for the sparse array,
/// B(z) = z^M + sum_{i=1}^{p} b_i z^{(p-i)d}.
///
/// Because gcd(M, d) = 1 and d > 1, the exponent M never lands on the
/// d-lattice {0, d, ..., (p-1)d}, which is what makes B able to separate a
/// mode from its d-th-root aliases.
struct SparseResolverPolynomial {
  std::vector<Complex> b;  ///< [b_1, ..., b_p]
  int M = 0;
  int d = 0;

  int degree() const { return static_cast<int>(b.size()); }

  /// Direct evaluation of z^M + sum_i b_i z^{(p-i)d}.
  Complex evaluate(Complex z) const;
};

}  // namespace modal
