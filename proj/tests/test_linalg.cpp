#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"

#include "bellkit/instances.hpp"
#include "bellkit/linalg.hpp"
#include "bellkit/rand.hpp"

using namespace bellkit;

namespace {
const Complex kI(0.0, 1.0);

// A random symmetric unitary: V diag(phases) V^T is symmetric and unitary for
// any unitary V.
ComplexMatrix random_symmetric_unitary(Rng& rng, int d) {
  const ComplexMatrix v = rng.haar_unitary(d);
  ComplexVector phases(d);
  for (int i = 0; i < d; ++i) {
    const double t = 2.0 * M_PI * rng.uniform();
    phases(i) = Complex(std::cos(t), std::sin(t));
  }
  return v * phases.asDiagonal() * v.transpose();
}

ComplexMatrix canonical_k(int d) {
  ComplexMatrix j(2, 2);
  j << 0, -1, 1, 0;
  return tensor(j, ComplexMatrix::Identity(d / 2, d / 2));
}
}  // namespace

TEST_SUITE("linalg") {

TEST_CASE("tensor product uses the documented index convention") {
  ComplexMatrix a(2, 2), b(2, 3);
  a << 1, 2, 3, 4;
  b << 5, 6, 7, 8, 9, 10;
  const ComplexMatrix t = tensor(a, b);
  REQUIRE(t.rows() == 4);
  REQUIRE(t.cols() == 6);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 3; ++l)
          CHECK(std::abs(t(i * 2 + k, j * 3 + l) - a(i, j) * b(k, l)) == 0.0);
}

TEST_CASE("vector tensor is compatible with the matrix tensor") {
  Rng rng(11);
  const ComplexVector u = rng.state(3), w = rng.state(4);
  const ComplexMatrix a = rng.haar_unitary(3), b = rng.haar_unitary(4);
  const ComplexVector lhs = tensor(a, b) * tensor(u, w);
  const ComplexVector rhs = tensor((a * u).eval(), (b * w).eval());
  CHECK((lhs - rhs).norm() < 1e-13);
}

TEST_CASE("permute_factors reorders factors of product vectors") {
  Rng rng(12);
  const ComplexVector u = rng.state(2), v = rng.state(3), w = rng.state(4);
  const ComplexVector uvw = tensor(tensor(u, v), w);
  // result_p = current_{perm[p]}: perm {2,0,1} puts w first, then u, then v.
  const ComplexVector rotated = permute_factors(uvw, {2, 3, 4}, {2, 0, 1});
  CHECK((rotated - tensor(tensor(w, u), v)).norm() < 1e-14);

  // A permutation followed by its inverse restores any vector.
  ComplexVector big(2 * 3 * 4);
  for (int i = 0; i < big.size(); ++i) big(i) = rng.complex_normal();
  const ComplexVector there = permute_factors(big, {2, 3, 4}, {1, 2, 0});
  const ComplexVector back = permute_factors(there, {3, 4, 2}, {2, 0, 1});
  CHECK((back - big).norm() < 1e-14);
}

TEST_CASE("schmidt_decompose reconstructs, sorts, and ranks") {
  Rng rng(13);
  SUBCASE("product state has rank one") {
    const ComplexVector psi = tensor(rng.state(3), rng.state(5));
    const SchmidtForm sf = schmidt_decompose(psi, 3, 5);
    CHECK(sf.rank == 1);
    CHECK(std::abs(sf.coefficients(0) - 1.0) < 1e-12);
  }
  SUBCASE("maximally entangled state has flat spectrum") {
    const SchmidtForm sf = schmidt_decompose(max_entangled_state(4), 4, 4);
    CHECK(sf.rank == 4);
    for (int k = 0; k < 4; ++k) CHECK(std::abs(sf.coefficients(k) - 0.5) < 1e-12);
  }
  SUBCASE("random state reconstructs from the form") {
    const ComplexVector psi = rng.state(3 * 4);
    const SchmidtForm sf = schmidt_decompose(psi, 3, 4);
    ComplexVector rebuilt = ComplexVector::Zero(12);
    for (int k = 0; k < sf.rank; ++k)
      rebuilt += sf.coefficients(k) *
                 tensor(ComplexVector(sf.left_vectors.col(k)),
                        ComplexVector(sf.right_vectors.col(k)));
    CHECK((rebuilt - psi).norm() < 1e-12);
    // Orthonormal vector families, coefficients sorted descending.
    CHECK((sf.left_vectors.adjoint() * sf.left_vectors -
           ComplexMatrix::Identity(sf.rank, sf.rank))
              .norm() < 1e-12);
    CHECK((sf.right_vectors.adjoint() * sf.right_vectors -
           ComplexMatrix::Identity(sf.rank, sf.rank))
              .norm() < 1e-12);
    for (int k = 1; k < sf.rank; ++k)
      CHECK(sf.coefficients(k - 1) >= sf.coefficients(k));
  }
}

TEST_CASE("schmidt_rotations produce a nonnegative diagonal state matrix") {
  Rng rng(14);
  const ComplexVector psi = rng.state(3 * 3);
  const auto [wa, wb] = schmidt_rotations(psi, 3, 3);
  CHECK(is_unitary(wa));
  CHECK(is_unitary(wb));
  const ComplexVector rotated = tensor(wa, wb) * psi;
  const Eigen::Map<const ComplexMatrix> m(rotated.data(), 3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      if (i == j) {
        CHECK(m(i, j).imag() < 1e-12);
        CHECK(m(i, j).real() > -1e-12);
      } else {
        CHECK(std::abs(m(i, j)) < 1e-12);
      }
    }
}

TEST_CASE("takagi factorization of symmetric unitaries") {
  Rng rng(15);
  for (int trial = 0; trial < 25; ++trial) {
    const int d = 1 + rng.uniform_int(8);
    const ComplexMatrix u = random_symmetric_unitary(rng, d);
    const ComplexMatrix w = takagi_symmetric_unitary(u);
    CHECK(is_unitary(w));
    CHECK((w.transpose() * w - u).norm() < 1e-10);
  }
  // Non-symmetric input is rejected.
  CHECK_THROWS_AS(takagi_symmetric_unitary(rng.haar_unitary(3)),
                  std::invalid_argument);
}

TEST_CASE("antisymmetric unitary factorization U = W^T K W") {
  Rng rng(16);
  for (int trial = 0; trial < 25; ++trial) {
    const int d = 2 * (1 + rng.uniform_int(4));
    const ComplexMatrix k = canonical_k(d);
    const ComplexMatrix v = rng.haar_unitary(d);
    const ComplexMatrix u = v * k * v.transpose();  // antisymmetric unitary
    const ComplexMatrix w = antisymmetric_unitary_factor(u);
    CHECK(is_unitary(w));
    CHECK((w.transpose() * k * w - u).norm() < 1e-10);
  }
  // Odd dimension / symmetric input rejected.
  CHECK_THROWS_AS(antisymmetric_unitary_factor(ComplexMatrix::Identity(3, 3)),
                  std::invalid_argument);
}

TEST_CASE("complete_isometry keeps the given columns") {
  Rng rng(17);
  const ComplexMatrix v = rng.haar_unitary(6).leftCols(2);
  const ComplexMatrix u = complete_isometry(v);
  CHECK(u.rows() == 6);
  CHECK(u.cols() == 6);
  CHECK(is_unitary(u));
  CHECK((u.leftCols(2) - v).norm() == 0.0);
}

TEST_CASE("real_orthonormal_basis finds the real span dimension") {
  const ComplexMatrix id = ComplexMatrix::Identity(2, 2);
  const ComplexMatrix x = pauli_x();
  // {Id, X, X, iX}: the duplicate is dropped, iX is a new real direction.
  const std::vector<ComplexMatrix> basis =
      real_orthonormal_basis({id, x, x, kI * x});
  CHECK(basis.size() == 3);
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = 0; j < basis.size(); ++j) {
      const double inner = (basis[i].adjoint() * basis[j]).trace().real();
      CHECK(std::abs(inner - (i == j ? 1.0 : 0.0)) < 1e-12);
    }
}

TEST_CASE("matrix predicates and operator norm") {
  CHECK(is_hermitian(pauli_y()));
  CHECK_FALSE(is_hermitian(kI * pauli_y()));
  CHECK(is_unitary(pauli_x()));
  CHECK(is_isometry(ComplexMatrix::Identity(4, 4).leftCols(2)));
  CHECK_FALSE(is_isometry(2.0 * ComplexMatrix::Identity(3, 3)));
  ComplexMatrix d = ComplexMatrix::Zero(2, 2);
  d(0, 0) = 3.0;
  d(1, 1) = -5.0;
  CHECK(std::abs(operator_norm(d) - 5.0) < 1e-12);
}

TEST_CASE("cluster_ranges splits on gaps") {
  RealVector v(5);
  v << 0.0, 1e-9, 0.5, 0.5 + 1e-9, 1.0;
  const auto clusters = cluster_ranges(v, 1e-7);
  REQUIRE(clusters.size() == 3);
  CHECK(clusters[0] == std::pair<int, int>{0, 2});
  CHECK(clusters[1] == std::pair<int, int>{2, 2});
  CHECK(clusters[2] == std::pair<int, int>{4, 1});
}

}  // TEST_SUITE
