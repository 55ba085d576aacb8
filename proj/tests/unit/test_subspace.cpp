// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include <Eigen/QR>

#include "modal/model.hpp"
#include "modal/polynomial.hpp"
#include "modal/subspace.hpp"
#include "test_helpers.hpp"

using namespace modal;
using testing::annihilation_defect;
using testing::naive_power;

namespace {

int matrix_rank(const Eigen::MatrixXcd& A) {
  return static_cast<int>(Eigen::ColPivHouseholderQR<Eigen::MatrixXcd>(A).rank());
}

MonicPolynomial poly_of_powers(const std::vector<Complex>& modes, int factor) {
  std::vector<Complex> powers;
  for (const Complex& z : modes) powers.push_back(naive_power(z, factor));
  return MonicPolynomial::from_roots(powers);
}

}  // namespace

TEST_CASE("ortho_general on the all-ones column") {
  Eigen::MatrixXcd V(3, 1);
  V << Complex(1, 0), Complex(1, 0), Complex(1, 0);
  const OrthoBasis basis = ortho_general(V, {0});
  Eigen::MatrixXcd expected(2, 3);
  expected << Complex(-1, 0), Complex(1, 0), Complex(0, 0),
              Complex(-1, 0), Complex(0, 0), Complex(1, 0);
  CHECK((basis.matrix.adjoint() - expected).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("ortho_general annihilates the co-prime Vandermonde") {
  const ModeSet modes(testing::close_mode_pair());
  const Eigen::MatrixXcd V = vandermonde(modes, make_coprime(7, 4));
  const OrthoBasis basis = ortho_general(V, {0, 1});
  CHECK(annihilation_defect(basis.matrix, V) <= 1e-10);
  CHECK(matrix_rank(basis.matrix) == 12);
}

TEST_CASE("ortho_general rejects singular pivot blocks") {
  // Duplicated mode column: every 2x2 row block of V is singular.
  const Eigen::MatrixXcd col = vandermonde(ModeSet({Complex(0.9, 0.1)}), make_ula(5));
  Eigen::MatrixXcd V(5, 2);
  V.col(0) = col;
  V.col(1) = col;
  CHECK_THROWS_AS(ortho_general(V, {0, 1}), std::runtime_error);

  CHECK_THROWS_AS(ortho_general(col, std::vector<int>{0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(ortho_general(col, std::vector<int>{7}), std::invalid_argument);
}

TEST_CASE("default pivots fall back to well-conditioned rows") {
  // The leading 2x2 block is singular; the greedy re-pick must look further.
  Eigen::MatrixXcd V(4, 2);
  V << Complex(1, 0), Complex(1, 0),
       Complex(1, 0), Complex(1, 0),
       Complex(1, 0), Complex(0, 0),
       Complex(0, 0), Complex(1, 0);
  const OrthoBasis basis = ortho_general(V);
  CHECK(annihilation_defect(basis.matrix, V) <= 1e-12);
  CHECK(matrix_rank(basis.matrix) == 2);
}

TEST_CASE("ortho_ula is the banded prediction operator") {
  const MonicPolynomial a(std::vector<Complex>{Complex(-1.0, 0.0)});  // roots {1}
  const OrthoBasis basis = ortho_ula(a, 3);
  Eigen::MatrixXcd expected(2, 3);
  expected << Complex(-1, 0), Complex(1, 0), Complex(0, 0),
              Complex(0, 0), Complex(-1, 0), Complex(1, 0);
  CHECK((basis.matrix.adjoint() - expected).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("ortho_ula annihilates the dense-array Vandermonde") {
  const ModeSet modes(testing::close_mode_pair());
  const MonicPolynomial a = MonicPolynomial::from_roots(modes.modes());
  const OrthoBasis basis = ortho_ula(a, 50);
  const Eigen::MatrixXcd V = vandermonde(modes, make_ula(50));
  CHECK(annihilation_defect(basis.matrix, V) <= 1e-9 * std::max(1.0, V.cwiseAbs().maxCoeff()));
  CHECK(matrix_rank(basis.matrix) == 48);
}

TEST_CASE("ortho_ula minimal corank is a single band column") {
  const MonicPolynomial a(std::vector<Complex>{Complex(0.25, 0.5), Complex(-0.125, 0.0)});
  const OrthoBasis basis = ortho_ula(a, 3);
  REQUIRE(basis.matrix.cols() == 1);
  CHECK(std::abs(basis.matrix(0, 0) - std::conj(a.coeff(2))) < 1e-15);
  CHECK(std::abs(basis.matrix(1, 0) - std::conj(a.coeff(1))) < 1e-15);
  CHECK(std::abs(basis.matrix(2, 0) - Complex(1, 0)) < 1e-15);

  CHECK_THROWS_AS(ortho_ula(a, 2), std::invalid_argument);
}

TEST_CASE("hand-solvable one-mode sparse basis") {
  // z = 0.9, d = 2, M = 1, m = 3: sensors {0, 1, 2}, sublattice {0, 2}.
  const ArrayGeometry g = make_sparse(3, 2, 1);
  const MonicPolynomial a(std::vector<Complex>{Complex(-0.81, 0.0)});
  const SparseResolverPolynomial b{{Complex(-0.9, 0.0)}, 1, 2};
  const OrthoBasis basis = ortho_sparse(a, b, g);
  REQUIRE(basis.matrix.rows() == 3);
  REQUIRE(basis.matrix.cols() == 2);

  const Eigen::MatrixXcd V = vandermonde(ModeSet({Complex(0.9, 0.0)}), g);
  CHECK(annihilation_defect(basis.matrix, V) <= 1e-12);
}

TEST_CASE("sparse basis annihilates the dedicated geometry") {
  const ArrayGeometry g = make_sparse(14, 4, 3);
  const ModeSet modes(testing::close_mode_pair());
  const MonicPolynomial a = poly_of_powers(modes.modes(), 4);
  const SparseResolverPolynomial b{testing::solve_resolver_oracle(modes.modes(), 4, 3), 3, 4};
  const OrthoBasis basis = ortho_sparse(a, b, g);

  const Eigen::MatrixXcd V = vandermonde(modes, g);
  CHECK(annihilation_defect(basis.matrix, V) <= 1e-9);
  CHECK(matrix_rank(basis.matrix) == 12);

  // Orthogonality is sharp in b: a 1e-3 kick breaks it by orders of magnitude.
  SparseResolverPolynomial tweaked = b;
  tweaked.b[0] += Complex(1e-3, 0.0);
  const OrthoBasis off = ortho_sparse(a, tweaked, g);
  CHECK(annihilation_defect(off.matrix, V) > 1e-6);
}

TEST_CASE("sparse basis rejects inconsistent inputs") {
  const ArrayGeometry g = make_sparse(14, 4, 3);
  const MonicPolynomial a(std::vector<Complex>{Complex(1, 0), Complex(0.5, 0)});
  const SparseResolverPolynomial b1{{Complex(1, 0)}, 3, 4};  // degree 1 != 2
  CHECK_THROWS_AS(ortho_sparse(a, b1, g), std::invalid_argument);

  const SparseResolverPolynomial wrong_lattice{{Complex(1, 0), Complex(0, 0)}, 5, 4};
  CHECK_THROWS_AS(ortho_sparse(a, wrong_lattice, g), std::invalid_argument);

  // m = p + 1 leaves no room for the banded block.
  const ArrayGeometry tiny = make_sparse(3, 2, 1);
  const SparseResolverPolynomial b2{{Complex(1, 0), Complex(0, 0)}, 1, 2};
  CHECK_THROWS_AS(ortho_sparse(a, b2, tiny), std::invalid_argument);
}

TEST_CASE("aliased modes are not annihilated by the sparse basis") {
  const ArrayGeometry g = make_sparse(14, 4, 3);
  const ModeSet modes(testing::close_mode_pair());
  const MonicPolynomial a = poly_of_powers(modes.modes(), 4);
  const SparseResolverPolynomial b{testing::solve_resolver_oracle(modes.modes(), 4, 3), 3, 4};
  const OrthoBasis basis = ortho_sparse(a, b, g);

  for (int q = 1; q < 4; ++q) {
    const Complex alias = modes[0] * std::polar(1.0, 2.0 * M_PI * q / 4.0);
    const Eigen::MatrixXcd v = vandermonde(ModeSet({alias}), g);
    // The b-row contributes exactly B(alias) = z^M (e^{j 2 pi M q / d} - 1).
    const double lower = std::pow(std::abs(modes[0]), 3) * 2.0 * std::sin(M_PI / 4.0);
    CHECK((basis.matrix.adjoint() * v).cwiseAbs().maxCoeff() >= lower - 1e-9);
  }
}

TEST_CASE("co-prime partial blocks are first differences for z = 1") {
  const MonicPolynomial a(std::vector<Complex>{Complex(-1, 0)});
  const CoprimePartialBasis basis = ortho_coprime_partial(a, a, 3, 2);
  REQUIRE(basis.A1.rows() == 3);
  REQUIRE(basis.A1.cols() == 2);
  REQUIRE(basis.B1.rows() == 3);
  REQUIRE(basis.B1.cols() == 2);
  Eigen::MatrixXcd expected(2, 3);
  expected << Complex(-1, 0), Complex(1, 0), Complex(0, 0),
              Complex(0, 0), Complex(-1, 0), Complex(1, 0);
  CHECK((basis.A1.adjoint() - expected).cwiseAbs().maxCoeff() < 1e-15);
  CHECK((basis.B1.adjoint() - expected).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("co-prime partial blocks annihilate their subarray Vandermondes") {
  const int m1 = 7, m2 = 4;
  const ModeSet modes(testing::close_mode_pair());
  const MonicPolynomial a = poly_of_powers(modes.modes(), m2);
  const MonicPolynomial b = poly_of_powers(modes.modes(), m1);
  const CoprimePartialBasis basis = ortho_coprime_partial(a, b, m1, m2);

  std::vector<int> i1, i2;
  for (int j = 0; j < m1; ++j) i1.push_back(j * m2);
  for (int j = 1; j <= 2 * m2 - 1; ++j) i2.push_back(j * m1);
  const Eigen::MatrixXcd V1 = testing::vandermonde_at(modes.modes(), i1);
  const Eigen::MatrixXcd V2 = testing::vandermonde_at(modes.modes(), i2);

  CHECK(annihilation_defect(basis.A1, V1) <= 1e-9);
  CHECK(annihilation_defect(basis.B1, V2) <= 1e-9);
  CHECK(matrix_rank(basis.A1) == m1 - 2);
  CHECK(matrix_rank(basis.B1) == 2 * m2 - 1 - 2);
}

TEST_CASE("co-prime partial rejects subarrays shorter than the degree") {
  std::vector<Complex> tail(7, Complex(0.1, 0.0));
  const MonicPolynomial a(tail);
  CHECK_THROWS_WITH_AS(ortho_coprime_partial(a, a, 7, 4), doctest::Contains("subarray"),
                       std::invalid_argument);
}

TEST_CASE("full co-prime basis for the one-mode hand case") {
  // p = 1, z = 1, m1 = 3, m2 = 2: m = 6 sensors, C0 = [-1].
  const ModeSet one({Complex(1.0, 0.0)});
  const OrthoBasis basis = ortho_coprime_full(one, 3, 2);
  REQUIRE(basis.matrix.rows() == 6);
  REQUIRE(basis.matrix.cols() == 5);
  const Eigen::MatrixXcd V = vandermonde(one, make_coprime(3, 2));
  CHECK(annihilation_defect(basis.matrix, V) <= 1e-15);
  CHECK(matrix_rank(basis.matrix) == 5);

  // The coupling coefficient is -z^{m1} / z^{0} = -1, and it lands in the
  // coupling column at the sensor it couples (location 0, sorted index 0).
  // With p = 1 the coupling column is the last one.
  CHECK(std::abs(basis.matrix(0, 4) - Complex(-1.0, 0.0)) < 1e-15);
}

TEST_CASE("full co-prime basis at the numerical-study scale") {
  const ModeSet modes(testing::close_mode_pair());
  const OrthoBasis basis = ortho_coprime_full(modes, 7, 4);
  const Eigen::MatrixXcd V = vandermonde(modes, make_coprime(7, 4));
  REQUIRE(basis.matrix.rows() == 14);
  REQUIRE(basis.matrix.cols() == 12);
  CHECK(matrix_rank(basis.matrix) == 12);
  CHECK(annihilation_defect(basis.matrix, V) <=
        1e-9 * std::max(1.0, V.cwiseAbs().maxCoeff()));

  // Same span as the geometry-free construction.
  const OrthoBasis general = ortho_general(V);
  const Eigen::MatrixXcd diff =
      testing::span_projector(basis.matrix) - testing::span_projector(general.matrix);
  CHECK(diff.norm() <= 1e-8);
}

TEST_CASE("full co-prime basis rejects shared m2-th powers") {
  const Complex z(0.9, 0.2);
  const Complex alias = z * std::polar(1.0, 2.0 * M_PI / 4.0);  // same 4th power
  const ModeSet modes({z, alias});
  CHECK_THROWS_AS(ortho_coprime_full(modes, 7, 4), std::runtime_error);
}

TEST_CASE("coupling block depends only on the decimated root sets") {
  std::mt19937_64 rng(41);
  const int m1 = 7, m2 = 4, p = 2;
  const auto modes = testing::sample_admissible_modes(rng, p, {m1, m2});

  std::vector<Complex> w, s;
  for (const Complex& z : modes) {
    w.push_back(naive_power(z, m2));
    s.push_back(naive_power(z, m1));
  }

  // Route 1: directly from the modes.
  std::vector<int> ip1, ip2;
  for (int j = 0; j < p; ++j) ip1.push_back(j * m2);
  for (int j = 1; j <= p; ++j) ip2.push_back(j * m1);
  const Eigen::MatrixXcd direct = -testing::vandermonde_at(modes, ip2) *
                                  testing::vandermonde_at(modes, ip1).inverse();

  // Route 2: recover w and s from polynomial coefficients alone, re-pair
  // by proximity, and rebuild the same block from powers of the roots.
  const auto w_rec = MonicPolynomial::from_roots(w).roots();
  const auto s_rec = MonicPolynomial::from_roots(s).roots();
  std::vector<Complex> w_paired(p), s_paired(p);
  for (int k = 0; k < p; ++k) {
    w_paired[k] = *std::min_element(w_rec.begin(), w_rec.end(), [&](Complex a, Complex b) {
      return std::abs(a - w[k]) < std::abs(b - w[k]);
    });
    s_paired[k] = *std::min_element(s_rec.begin(), s_rec.end(), [&](Complex a, Complex b) {
      return std::abs(a - s[k]) < std::abs(b - s[k]);
    });
  }
  Eigen::MatrixXcd Vw(p, p), Vs(p, p);
  for (int k = 0; k < p; ++k) {
    for (int j = 0; j < p; ++j) {
      Vw(j, k) = naive_power(w_paired[k], j);       // z^{j m2} = w^j
      Vs(j, k) = naive_power(s_paired[k], j + 1);   // z^{(j+1) m1} = s^{j+1}
    }
  }
  const Eigen::MatrixXcd rebuilt = -Vs * Vw.inverse();
  CHECK((direct - rebuilt).cwiseAbs().maxCoeff() <= 1e-8);
}

TEST_CASE("random admissible modes: rank, annihilation, and span agreement") {
  std::mt19937_64 rng(43);
  struct Setup {
    ArrayGeometry geometry;
    std::vector<int> factors;
  };
  const Setup setups[] = {{make_ula(12), {1}},
                          {make_sparse(14, 4, 3), {4}},
                          {make_coprime(7, 4), {4, 7}}};
  for (const Setup& setup : setups) {
    for (int trial = 0; trial < 20; ++trial) {
      const int p = 1 + static_cast<int>(rng() % 3);
      const ModeSet modes(testing::sample_admissible_modes(rng, p, setup.factors));
      const Eigen::MatrixXcd V = vandermonde(modes, setup.geometry);
      const double tol = 1e-9 * std::max(1.0, V.cwiseAbs().maxCoeff());
      const int m = setup.geometry.size();

      const OrthoBasis general = ortho_general(V);
      CHECK(annihilation_defect(general.matrix, V) <= tol);
      CHECK(matrix_rank(general.matrix) == m - p);

      OrthoBasis structured = general;
      switch (setup.geometry.kind()) {
        case ArrayKind::Uniform:
          structured = ortho_ula(MonicPolynomial::from_roots(modes.modes()), m);
          break;
        case ArrayKind::Sparse: {
          const auto& params = setup.geometry.sparse_params();
          structured = ortho_sparse(
              poly_of_powers(modes.modes(), params.d),
              SparseResolverPolynomial{
                  testing::solve_resolver_oracle(modes.modes(), params.d, params.M),
                  params.M, params.d},
              setup.geometry);
          break;
        }
        case ArrayKind::Coprime: {
          const auto& params = setup.geometry.coprime_params();
          structured = ortho_coprime_full(modes, params.m1, params.m2);
          break;
        }
      }
      CHECK(annihilation_defect(structured.matrix, V) <= tol);
      CHECK(matrix_rank(structured.matrix) == m - p);
      const Eigen::MatrixXcd diff = testing::span_projector(structured.matrix) -
                                    testing::span_projector(general.matrix);
      CHECK(diff.norm() <= 1e-8);
    }
  }
}
