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

#include "modal/geometry.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace modal {

namespace {

// Maps each location to its index in the sorted, duplicate-free storage.
std::unordered_map<int, int> sort_and_index(std::vector<int>& locations) {
  std::sort(locations.begin(), locations.end());
  if (std::adjacent_find(locations.begin(), locations.end()) != locations.end()) {
    throw std::invalid_argument("array geometry: duplicate sensor location");
  }
  std::unordered_map<int, int> index;
  for (std::size_t i = 0; i < locations.size(); ++i) {
    index[locations[i]] = static_cast<int>(i);
  }
  return index;
}

}  // namespace

const UniformParams& ArrayGeometry::uniform_params() const {
  if (kind_ != ArrayKind::Uniform) throw std::logic_error("not a uniform array");
  return uniform_;
}

const SparseParams& ArrayGeometry::sparse_params() const {
  if (kind_ != ArrayKind::Sparse) throw std::logic_error("not a sparse array");
  return sparse_;
}

const CoprimeParams& ArrayGeometry::coprime_params() const {
  if (kind_ != ArrayKind::Coprime) throw std::logic_error("not a co-prime array");
  return coprime_;
}

const std::vector<int>& ArrayGeometry::sublattice_indices() const {
  if (kind_ != ArrayKind::Sparse) throw std::logic_error("not a sparse array");
  return map_a_;
}

int ArrayGeometry::extra_sensor_index() const {
  if (kind_ != ArrayKind::Sparse) throw std::logic_error("not a sparse array");
  return extra_index_;
}

const std::vector<int>& ArrayGeometry::subarray1_indices() const {
  if (kind_ != ArrayKind::Coprime) throw std::logic_error("not a co-prime array");
  return map_a_;
}

const std::vector<int>& ArrayGeometry::subarray2_indices() const {
  if (kind_ != ArrayKind::Coprime) throw std::logic_error("not a co-prime array");
  return map_b_;
}

ArrayGeometry make_ula(int m) {
  if (m < 1) {
    throw std::invalid_argument("make_ula: m must be >= 1, got " + std::to_string(m));
  }
  ArrayGeometry g;
  g.kind_ = ArrayKind::Uniform;
  g.uniform_ = UniformParams{m};
  g.locations_.resize(static_cast<std::size_t>(m));
  std::iota(g.locations_.begin(), g.locations_.end(), 0);
  return g;
}

ArrayGeometry make_sparse(int m, int d, int M) {
  if (m < 2) {
    throw std::invalid_argument("make_sparse: m must be >= 2, got " + std::to_string(m));
  }
  if (d < 2) {
    throw std::invalid_argument("make_sparse: d must be > 1, got " + std::to_string(d));
  }
  if (M < 1) {
    throw std::invalid_argument("make_sparse: M must be >= 1, got " + std::to_string(M));
  }
  if (std::gcd(M, d) != 1) {
    throw std::invalid_argument("make_sparse: M and d must be co-prime, gcd(" +
                                std::to_string(M) + ", " + std::to_string(d) + ") = " +
                                std::to_string(std::gcd(M, d)));
  }
  // gcd(M, d) = 1 with d > 1 already rules out M on the sublattice; kept as a
  // separate check so the failure mode is named.
  if (M % d == 0 && M <= (m - 2) * d) {
    throw std::invalid_argument("make_sparse: M duplicates a sublattice location");
  }

  ArrayGeometry g;
  g.kind_ = ArrayKind::Sparse;
  g.sparse_ = SparseParams{m, d, M};
  g.locations_.reserve(static_cast<std::size_t>(m));
  for (int j = 0; j <= m - 2; ++j) g.locations_.push_back(j * d);
  g.locations_.push_back(M);
  auto index = sort_and_index(g.locations_);

  g.map_a_.resize(static_cast<std::size_t>(m - 1));
  for (int j = 0; j <= m - 2; ++j) g.map_a_[static_cast<std::size_t>(j)] = index.at(j * d);
  g.extra_index_ = index.at(M);
  return g;
}

ArrayGeometry make_coprime(int m1, int m2) {
  if (m2 < 1) {
    throw std::invalid_argument("make_coprime: m2 must be >= 1, got " + std::to_string(m2));
  }
  if (m1 <= m2) {
    throw std::invalid_argument("make_coprime: m1 must exceed m2, got m1 = " +
                                std::to_string(m1) + ", m2 = " + std::to_string(m2));
  }
  if (std::gcd(m1, m2) != 1) {
    throw std::invalid_argument("make_coprime: m1 and m2 must be co-prime, gcd(" +
                                std::to_string(m1) + ", " + std::to_string(m2) + ") = " +
                                std::to_string(std::gcd(m1, m2)));
  }

  ArrayGeometry g;
  g.kind_ = ArrayKind::Coprime;
  g.coprime_ = CoprimeParams{m1, m2};
  g.locations_.reserve(static_cast<std::size_t>(m1 + 2 * m2 - 1));
  for (int j = 0; j < m1; ++j) g.locations_.push_back(j * m2);
  for (int j = 1; j <= 2 * m2 - 1; ++j) g.locations_.push_back(j * m1);
  auto index = sort_and_index(g.locations_);  // throws on subarray collision

  g.map_a_.resize(static_cast<std::size_t>(m1));
  for (int j = 0; j < m1; ++j) g.map_a_[static_cast<std::size_t>(j)] = index.at(j * m2);
  g.map_b_.resize(static_cast<std::size_t>(2 * m2 - 1));
  for (int j = 1; j <= 2 * m2 - 1; ++j) {
    g.map_b_[static_cast<std::size_t>(j - 1)] = index.at(j * m1);
  }
  return g;
}

}  // namespace modal
