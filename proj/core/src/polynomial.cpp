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

#include "modal/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace modal {

MonicPolynomial::MonicPolynomial(std::vector<Complex> tail) : tail_(std::move(tail)) {
  if (tail_.empty()) {
    throw std::invalid_argument("MonicPolynomial: degree must be >= 1");
  }
}

MonicPolynomial MonicPolynomial::from_roots(const std::vector<Complex>& roots) {
  if (roots.empty()) {
    throw std::invalid_argument("from_roots: empty root list");
  }
  // Convolve factors (1 - r z^{-1}); a[0] stays 1 throughout.
  std::vector<Complex> a{Complex(1.0, 0.0)};
  a.reserve(roots.size() + 1);
  for (const Complex& r : roots) {
    a.push_back(Complex(0.0, 0.0));
    for (std::size_t i = a.size() - 1; i >= 1; --i) {
      a[i] -= r * a[i - 1];
    }
  }
  return MonicPolynomial(std::vector<Complex>(a.begin() + 1, a.end()));
}

Complex MonicPolynomial::coeff(int i) const {
  if (i < 0 || i > degree()) {
    throw std::out_of_range("MonicPolynomial::coeff: index out of range");
  }
  return i == 0 ? Complex(1.0, 0.0) : tail_[static_cast<std::size_t>(i - 1)];
}

std::vector<Complex> MonicPolynomial::band_coefficients() const {
  std::vector<Complex> band(tail_.rbegin(), tail_.rend());
  band.push_back(Complex(1.0, 0.0));
  return band;
}

Complex MonicPolynomial::evaluate(Complex z) const {
  if (z == Complex(0.0, 0.0)) {
    throw std::domain_error("MonicPolynomial::evaluate: z = 0 is outside the domain");
  }
  const Complex u = Complex(1.0, 0.0) / z;
  Complex acc = tail_.back();
  for (int i = degree() - 1; i >= 0; --i) {
    acc = acc * u + coeff(i);
  }
  return acc;
}

std::vector<Complex> MonicPolynomial::roots() const {
  for (const Complex& c : tail_) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      throw std::invalid_argument("MonicPolynomial::roots: non-finite coefficient");
    }
  }
  const int p = degree();
  // Companion matrix of z^p + a_1 z^{p-1} + ... + a_p.
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(p, p);
  for (int i = 0; i + 1 < p; ++i) companion(i + 1, i) = Complex(1.0, 0.0);
  for (int i = 0; i < p; ++i) companion(i, p - 1) = -coeff(p - i);

  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("MonicPolynomial::roots: eigenvalue iteration failed");
  }
  const auto& ev = solver.eigenvalues();
  return std::vector<Complex>(ev.data(), ev.data() + ev.size());
}

Complex SparseResolverPolynomial::evaluate(Complex z) const {
  const int p = degree();
  Complex value = integer_power(z, M);
  for (int i = 1; i <= p; ++i) {
    value += b[static_cast<std::size_t>(i - 1)] * integer_power(z, static_cast<long long>(p - i) * d);
  }
  return value;
}

}  // namespace modal
