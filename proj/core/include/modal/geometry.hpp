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

namespace modal {

enum class ArrayKind { Uniform, Sparse, Coprime };

struct UniformParams {
  int m = 0;
};

/// Uniform sublattice {0, d, 2d, ..., (m-2)d} plus one extra sensor at M,
/// with gcd(M, d) = 1 so the extra sensor can disambiguate aliases.
struct SparseParams {
  int m = 0;  ///< total sensor count (sublattice has m-1 sensors)
  int d = 0;  ///< sublattice spacing, > 1
  int M = 0;  ///< extra sensor location, co-prime with d
};

/// Two uniform subarrays: m1 sensors spaced m2 apart starting at 0, and
/// 2*m2-1 sensors spaced m1 apart starting at m1, with gcd(m1, m2) = 1.
struct CoprimeParams {
  int m1 = 0;
  int m2 = 0;
};

/// Integer sensor locations of a line array, in half-wavelength units.
///
/// Locations are stored sorted ascending and are immutable after
/// construction. For sparse and co-prime arrays the constructor records
/// where each subarray sensor landed in the sorted order; estimators use
/// these maps to split measurements by subarray.
class ArrayGeometry {
 public:
  ArrayKind kind() const { return kind_; }
  int size() const { return static_cast<int>(locations_.size()); }
  const std::vector<int>& locations() const { return locations_; }
  int location(int l) const { return locations_[static_cast<std::size_t>(l)]; }
  int aperture() const { return locations_.back(); }

  const UniformParams& uniform_params() const;
  const SparseParams& sparse_params() const;
  const CoprimeParams& coprime_params() const;

  /// Sparse only: sorted-storage index of sublattice sensor j (location j*d),
  /// j = 0 .. m-2.
  const std::vector<int>& sublattice_indices() const;
  /// Sparse only: sorted-storage index of the extra sensor at M.
  int extra_sensor_index() const;

  /// Coprime only: sorted-storage indices of subarray-1 sensors
  /// (locations 0, m2, ..., (m1-1)*m2, in that order).
  const std::vector<int>& subarray1_indices() const;
  /// Coprime only: sorted-storage indices of subarray-2 sensors
  /// (locations m1, 2*m1, ..., (2*m2-1)*m1, in that order).
  const std::vector<int>& subarray2_indices() const;

  friend ArrayGeometry make_ula(int m);
  friend ArrayGeometry make_sparse(int m, int d, int M);
  friend ArrayGeometry make_coprime(int m1, int m2);

 private:
  ArrayGeometry() = default;

  ArrayKind kind_ = ArrayKind::Uniform;
  std::vector<int> locations_;
  UniformParams uniform_{};
  SparseParams sparse_{};
  CoprimeParams coprime_{};
  std::vector<int> map_a_;  // sparse: sublattice; coprime: subarray 1
  std::vector<int> map_b_;  // coprime: subarray 2
  int extra_index_ = -1;    // sparse: sensor at M
};

/// Uniform line array at {0, 1, ..., m-1}. Throws std::invalid_argument for
/// m < 1.
ArrayGeometry make_ula(int m);

/// Sparse array {0, d, ..., (m-2)d} + {M}. Throws std::invalid_argument when
/// gcd(M, d) != 1, when M collides with the sublattice, or for out-of-range
/// parameters (m < 2, d < 2, M < 1).
ArrayGeometry make_sparse(int m, int d, int M);

/// Co-prime array I1 + I2 with m1 + 2*m2 - 1 sensors. Throws
/// std::invalid_argument when gcd(m1, m2) != 1 or m1 <= m2, and if the two
/// subarrays ever collide (impossible for legal parameters, checked anyway).
ArrayGeometry make_coprime(int m1, int m2);

}  // namespace modal
