#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"

#include "bellkit/algebra.hpp"
#include "bellkit/instances.hpp"
#include "bellkit/quaternion.hpp"
#include "bellkit/selftest.hpp"
#include "helpers.hpp"

using namespace bellkit;
using namespace bellkit::testing;

namespace {
const Complex kI(0.0, 1.0);

// Independent dimension oracle: enumerate all generator words breadth-first
// and take the rank of their stacked real coordinates (Re entries and Im
// entries concatenated per word) until the rank stabilizes.  Assumes
// Hermitian generators (then the word set is adjoint-closed level by level).
int closure_dim_oracle(const std::vector<ComplexMatrix>& gens) {
  const int d = static_cast<int>(gens[0].rows());
  std::vector<ComplexMatrix> frontier = {ComplexMatrix::Identity(d, d)};
  std::vector<ComplexMatrix> all = frontier;
  auto rank_of = [&](const std::vector<ComplexMatrix>& words) {
    RealMatrix rows(static_cast<int>(words.size()), 2 * d * d);
    for (std::size_t w = 0; w < words.size(); ++w)
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
          rows(static_cast<int>(w), i * d + j) = words[w](i, j).real();
          rows(static_cast<int>(w), d * d + i * d + j) = words[w](i, j).imag();
        }
    Eigen::ColPivHouseholderQR<RealMatrix> qr(rows);
    qr.setThreshold(1e-9);
    return static_cast<int>(qr.rank());
  };
  int rank = rank_of(all);
  for (int level = 0; level < 2 * d * d + 2; ++level) {
    std::vector<ComplexMatrix> next;
    for (const ComplexMatrix& w : frontier)
      for (const ComplexMatrix& g : gens) next.push_back(g * w);
    all.insert(all.end(), next.begin(), next.end());
    const int new_rank = rank_of(all);
    if (new_rank == rank) return rank;
    rank = new_rank;
    frontier = std::move(next);
  }
  return rank;
}

std::vector<ComplexMatrix> direct_sum_pair(const ComplexMatrix& a,
                                           const ComplexMatrix& b,
                                           const ComplexMatrix& c,
                                           const ComplexMatrix& d) {
  const int n1 = static_cast<int>(a.rows()), n2 = static_cast<int>(b.rows());
  ComplexMatrix g1 = ComplexMatrix::Zero(n1 + n2, n1 + n2);
  ComplexMatrix g2 = ComplexMatrix::Zero(n1 + n2, n1 + n2);
  g1.topLeftCorner(n1, n1) = a;
  g1.bottomRightCorner(n2, n2) = b;
  g2.topLeftCorner(n1, n1) = c;
  g2.bottomRightCorner(n2, n2) = d;
  return {g1, g2};
}
}  // namespace

TEST_SUITE("algebra") {

TEST_CASE("pinned closure dimensions match the independent rank oracle") {
  const std::vector<ComplexMatrix> xz = {pauli_x(), pauli_z()};
  const std::vector<ComplexMatrix> xyz = {pauli_x(), pauli_y(), pauli_z()};
  const std::vector<ComplexMatrix> quat = quaternion_observables();

  const AlgebraClosure cl_xz = close_algebra(xz, Field::Real);
  CHECK(cl_xz.real_dim() == 4);
  CHECK_FALSE(cl_xz.contains_i_identity);
  CHECK(closure_dim_oracle(xz) == 4);

  const AlgebraClosure cl_xyz = close_algebra(xyz, Field::Real);
  CHECK(cl_xyz.real_dim() == 8);
  CHECK(cl_xyz.contains_i_identity);
  CHECK(closure_dim_oracle(xyz) == 8);

  const AlgebraClosure cl_quat = close_algebra(quat, Field::Real);
  CHECK(cl_quat.real_dim() == 16);
  CHECK_FALSE(cl_quat.contains_i_identity);
  CHECK(closure_dim_oracle(quat) == 16);
}

TEST_CASE("closure dimension agrees with the oracle on random families") {
  Rng rng(31);
  for (int trial = 0; trial < 8; ++trial) {
    const int d = 2 + rng.uniform_int(2);
    std::vector<ComplexMatrix> gens;
    const int n_gens = 2 + rng.uniform_int(2);
    for (int g = 0; g < n_gens; ++g) gens.push_back(rng.hermitian(d));
    CHECK(close_algebra(gens, Field::Real).real_dim() == closure_dim_oracle(gens));
  }
  // A planted real family keeps dimension d^2 under a common conjugation.
  for (int trial = 0; trial < 4; ++trial) {
    const int d = 2 + rng.uniform_int(2);
    RealMatrix s1(d, d), s2(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        s1(i, j) = rng.normal();
        s2(i, j) = rng.normal();
      }
    const ComplexMatrix u = rng.haar_unitary(d);
    const std::vector<ComplexMatrix> gens = {
        u * ((s1 + s1.transpose()) / 2.0).cast<Complex>() * u.adjoint(),
        u * ((s2 + s2.transpose()) / 2.0).cast<Complex>() * u.adjoint()};
    const int dim = close_algebra(gens, Field::Real).real_dim();
    CHECK(dim == d * d);
    CHECK(dim == closure_dim_oracle(gens));
  }
}

TEST_CASE("close_algebra output is an orthonormal closed spanning system") {
  Rng rng(32);
  const std::vector<ComplexMatrix> gens = {rng.hermitian(3), rng.hermitian(3)};
  const AlgebraClosure cl = close_algebra(gens, Field::Real);
  REQUIRE(cl.basis.size() == cl.word_ops.size());
  REQUIRE(cl.basis.size() == cl.words.size());
  CHECK(cl.complete);

  // Orthonormal w.r.t. Re tr(A^† B).
  for (std::size_t i = 0; i < cl.basis.size(); ++i)
    for (std::size_t j = i; j < cl.basis.size(); ++j) {
      const double inner = (cl.basis[i].adjoint() * cl.basis[j]).trace().real();
      CHECK(std::abs(inner - (i == j ? 1.0 : 0.0)) < 1e-10);
    }

  // Identity, generators, all products and adjoints stay inside the span.
  CHECK(span_residual(cl.basis, ComplexMatrix::Identity(3, 3)) < 1e-10);
  for (const ComplexMatrix& g : gens) CHECK(span_residual(cl.basis, g) < 1e-10);
  for (std::size_t i = 0; i < cl.basis.size(); ++i) {
    CHECK(span_residual(cl.basis, cl.basis[i].adjoint().eval()) < 1e-9);
    for (std::size_t j = 0; j < cl.basis.size(); ++j)
      CHECK(span_residual(cl.basis, (cl.basis[i] * cl.basis[j]).eval()) < 1e-9);
  }

  // The word operators span the same space: every basis element is within
  // the span of the words and vice versa (dimensions already match).
  for (const ComplexMatrix& w : cl.word_ops) CHECK(span_residual(cl.basis, w) < 1e-9);
}

TEST_CASE("complex-field closure adjoins i*Id") {
  // Alg_C(sigma_Z) is the diagonal algebra C^2: real dimension 4.
  const AlgebraClosure cl = close_algebra({pauli_z()}, Field::Complex);
  CHECK(cl.real_dim() == 4);
  CHECK(cl.contains_i_identity);
  CHECK(span_residual(cl.basis, (kI * ComplexMatrix::Identity(2, 2)).eval()) < 1e-10);
  // Real closure of the same generator is only 2-dimensional.
  CHECK(close_algebra({pauli_z()}, Field::Real).real_dim() == 2);
}

TEST_CASE("commutant dimensions and irreducibility") {
  CHECK(commutant_dimension({pauli_x(), pauli_z()}) == 1);
  CHECK(is_irreducible({pauli_x(), pauli_z()}));

  // Two equivalent 2-dim blocks: commutant is a full M_2 (dimension 4) --
  // note sigma_X conjugation identifies (-sigma_Z, sigma_X) with
  // (sigma_Z, sigma_X), so the second pair below is equivalent too.
  const auto eq = direct_sum_pair(pauli_z(), pauli_z(), pauli_x(), pauli_x());
  CHECK(commutant_dimension(eq) == 4);
  const auto eq2 = direct_sum_pair(pauli_z(), (-pauli_z()).eval(), pauli_x(), pauli_x());
  CHECK(commutant_dimension(eq2) == 4);

  // Inequivalent blocks of sizes 2 and 1: diagonal commutant, dimension 2.
  const auto ineq = direct_sum_pair(pauli_z(), ComplexMatrix::Identity(1, 1),
                                    pauli_x(), ComplexMatrix::Identity(1, 1));
  CHECK(commutant_dimension(ineq) == 2);
  CHECK_FALSE(is_irreducible(ineq));

  // Commutant elements really commute and the space is *-closed.
  const std::vector<ComplexMatrix> comm = commutant(eq);
  REQUIRE(comm.size() == 4);
  for (const ComplexMatrix& t : comm) {
    for (const ComplexMatrix& g : eq) CHECK((t * g - g * t).norm() < 1e-10);
    CHECK(span_residual(comm, t.adjoint().eval()) < 1e-8);
  }
}

TEST_CASE("structure types: the planted trichotomy") {
  Rng rng(33);

  SUBCASE("real pair is RealType with indicator +1") {
    const StructureType st = structure_type({pauli_x(), pauli_z()});
    CHECK(st.tag == AlgebraTag::RealType);
    REQUIRE(st.indicator.has_value());
    CHECK(*st.indicator == 1);
  }

  SUBCASE("three Paulis are ComplexType") {
    const StructureType st = structure_type({pauli_x(), pauli_y(), pauli_z()});
    CHECK(st.tag == AlgebraTag::ComplexType);
    CHECK_FALSE(st.indicator.has_value());
    CHECK_FALSE(st.intertwiner.has_value());
  }

  SUBCASE("anticommuting four are QuaternionType with indicator -1") {
    const StructureType st = structure_type(quaternion_observables());
    CHECK(st.tag == AlgebraTag::QuaternionType);
    REQUIRE(st.indicator.has_value());
    CHECK(*st.indicator == -1);
    REQUIRE(st.intertwiner.has_value());
    // U g U^† = conj(g), U unitary, U conj(U) = -Id.
    CHECK(is_unitary(*st.intertwiner));
    for (const ComplexMatrix& g : quaternion_observables())
      CHECK((*st.intertwiner * g * st.intertwiner->adjoint() - g.conjugate()).norm() <
            1e-9);
    CHECK((*st.intertwiner * st.intertwiner->conjugate() +
           ComplexMatrix::Identity(4, 4))
              .norm() < 1e-9);
  }

  SUBCASE("planted families keep their type under conjugation") {
    for (int trial = 0; trial < 10; ++trial) {
      const int d = 2 + rng.uniform_int(3);
      const ComplexMatrix v = rng.haar_unitary(d);
      std::vector<ComplexMatrix> planted;
      for (const ComplexMatrix& e : random_real_pvm(rng, d, 2))
        planted.push_back(v * e * v.adjoint());
      planted.push_back(v * random_real_pvm(rng, d, 2)[0] * v.adjoint());
      if (!is_irreducible(planted)) continue;
      const StructureType st = structure_type(planted);
      CHECK(st.tag == AlgebraTag::RealType);
    }
    for (int trial = 0; trial < 5; ++trial) {
      const ComplexMatrix v = rng.haar_unitary(4);
      std::vector<ComplexMatrix> planted;
      for (const ComplexMatrix& g : quaternion_observables())
        planted.push_back(v * g * v.adjoint());
      const StructureType st = structure_type(planted);
      CHECK(st.tag == AlgebraTag::QuaternionType);
      CHECK(*st.indicator == -1);
    }
  }

  SUBCASE("dimension law: d^2 for real/quaternion type, 2 d^2 for complex") {
    int seen_real = 0, seen_complex = 0;
    for (int trial = 0; trial < 20; ++trial) {
      const int d = 2 + rng.uniform_int(3);
      std::vector<ComplexMatrix> gens = {rng.hermitian(d), rng.hermitian(d)};
      if (!is_irreducible(gens)) continue;
      const StructureType st = structure_type(gens);
      const int dim = close_algebra(gens, Field::Real).real_dim();
      if (st.tag == AlgebraTag::ComplexType) {
        CHECK(dim == 2 * d * d);
        seen_complex++;
      } else {
        CHECK(dim == d * d);
        seen_real++;
      }
    }
    CHECK(seen_complex > 0);  // generic Hermitian pairs are complex type
  }

  SUBCASE("reducible input is rejected") {
    const auto red = direct_sum_pair(pauli_z(), pauli_z(), pauli_x(), pauli_x());
    CHECK_THROWS_AS(structure_type(red), std::invalid_argument);
    CHECK_THROWS_AS(antiunitary_intertwiner(red), std::invalid_argument);
  }
}

TEST_CASE("no quaternionic structure from Hermitian families in dimension 2 or 3") {
  // Quaternion type needs even dimension >= 4 when generated by Hermitian
  // effects (the exceptional low-dimension cases of the ladder theorem).
  Rng rng(34);
  for (int trial = 0; trial < 20; ++trial) {
    const int d = 2 + rng.uniform_int(2);  // 2 or 3
    std::vector<ComplexMatrix> gens;
    for (const ComplexMatrix& e : random_pvm(rng, d, 2)) gens.push_back(e);
    gens.push_back(rng.hermitian(d));
    if (!is_irreducible(gens)) continue;
    CHECK(structure_type(gens).tag != AlgebraTag::QuaternionType);
  }
}

TEST_CASE("realize_real_basis makes planted real families entrywise real") {
  Rng rng(35);
  for (int trial = 0; trial < 8; ++trial) {
    const int d = 2 + rng.uniform_int(3);
    const ComplexMatrix v = rng.haar_unitary(d);
    std::vector<ComplexMatrix> gens;
    for (const ComplexMatrix& e : random_real_pvm(rng, d, 2))
      gens.push_back(v * e * v.adjoint());
    gens.push_back(v * random_real_pvm(rng, d, 2)[0] * v.adjoint());
    if (!is_irreducible(gens)) continue;
    const ComplexMatrix w = realize_real_basis(gens);
    CHECK(is_unitary(w));
    for (const ComplexMatrix& g : gens) {
      const ComplexMatrix y = w * g * w.adjoint();
      CHECK(y.imag().cwiseAbs().maxCoeff() < 1e-9);
    }
  }
  // Wrong type is rejected.
  CHECK_THROWS_AS(realize_real_basis(quaternion_observables()), std::invalid_argument);
  CHECK_THROWS_AS(realize_real_basis({pauli_x(), pauli_y(), pauli_z()}),
                  std::invalid_argument);
}

TEST_CASE("realize_quaternion_basis lands in the embedded algebra") {
  Rng rng(36);
  const ComplexMatrix k = quaternion_conjugator(2);
  for (int trial = 0; trial < 5; ++trial) {
    const ComplexMatrix v = rng.haar_unitary(4);
    std::vector<ComplexMatrix> gens;
    for (const ComplexMatrix& g : quaternion_observables())
      gens.push_back(v * g * v.adjoint());
    const ComplexMatrix w = realize_quaternion_basis(gens);
    CHECK(is_unitary(w));
    for (const ComplexMatrix& g : gens) {
      const ComplexMatrix y = w * g * w.adjoint();
      CHECK((y.conjugate() - k * y * k.adjoint()).norm() < 1e-9);
      CHECK(in_phi_range(y, 1e-8));
    }
  }
  CHECK_THROWS_AS(realize_quaternion_basis({pauli_x(), pauli_z()}),
                  std::invalid_argument);
}

TEST_CASE("block_decompose splits reducible families") {
  Rng rng(37);

  SUBCASE("irreducible family is a single identity block") {
    const BlockDecomposition bd = block_decompose({pauli_x(), pauli_z()});
    REQUIRE(bd.blocks.size() == 1);
    CHECK((bd.blocks[0].isometry - ComplexMatrix::Identity(2, 2)).norm() < 1e-12);
  }

  SUBCASE("two equivalent blocks") {
    const auto gens = direct_sum_pair(pauli_z(), pauli_z(), pauli_x(), pauli_x());
    const BlockDecomposition bd = block_decompose(gens);
    REQUIRE(bd.blocks.size() == 2);
    ComplexMatrix resolution = ComplexMatrix::Zero(4, 4);
    for (const AlgebraBlock& b : bd.blocks) {
      CHECK(b.isometry.cols() == 2);
      CHECK(is_isometry(b.isometry, 1e-10));
      CHECK(is_irreducible(b.generators));
      resolution += b.isometry * b.isometry.adjoint();
      // Compressions reproduce the generators inside the block:
      // V V^† g V V^† = g on the block range.
      for (std::size_t gi = 0; gi < gens.size(); ++gi)
        CHECK((gens[gi] * b.isometry - b.isometry * b.generators[gi]).norm() < 1e-9);
    }
    CHECK((resolution - ComplexMatrix::Identity(4, 4)).norm() < 1e-10);
  }

  SUBCASE("sign-flipped second block still gives two 2-dim blocks") {
    const auto gens =
        direct_sum_pair(pauli_z(), (-pauli_z()).eval(), pauli_x(), pauli_x());
    const BlockDecomposition bd = block_decompose(gens);
    REQUIRE(bd.blocks.size() == 2);
    for (const AlgebraBlock& b : bd.blocks) {
      CHECK(b.isometry.cols() == 2);
      CHECK(is_irreducible(b.generators));
    }
  }

  SUBCASE("inequivalent blocks of different sizes") {
    const auto gens = direct_sum_pair(pauli_z(), ComplexMatrix::Identity(1, 1),
                                      pauli_x(), ComplexMatrix::Identity(1, 1));
    const BlockDecomposition bd = block_decompose(gens);
    REQUIRE(bd.blocks.size() == 2);
    std::vector<int> sizes;
    for (const AlgebraBlock& b : bd.blocks)
      sizes.push_back(static_cast<int>(b.isometry.cols()));
    std::sort(sizes.begin(), sizes.end());
    CHECK(sizes == std::vector<int>{1, 2});
  }

  SUBCASE("random hidden direct sums are recovered") {
    for (int trial = 0; trial < 5; ++trial) {
      const int d1 = 2 + rng.uniform_int(2), d2 = 2 + rng.uniform_int(2);
      auto gens = direct_sum_pair(rng.hermitian(d1), rng.hermitian(d2),
                                  rng.hermitian(d1), rng.hermitian(d2));
      const ComplexMatrix u = rng.haar_unitary(d1 + d2);
      for (ComplexMatrix& g : gens) g = u * g * u.adjoint();
      const BlockDecomposition bd = block_decompose(gens);
      REQUIRE(bd.blocks.size() == 2);
      std::vector<int> sizes;
      ComplexMatrix resolution = ComplexMatrix::Zero(d1 + d2, d1 + d2);
      for (const AlgebraBlock& b : bd.blocks) {
        sizes.push_back(static_cast<int>(b.isometry.cols()));
        CHECK(is_irreducible(b.generators));
        resolution += b.isometry * b.isometry.adjoint();
      }
      std::sort(sizes.begin(), sizes.end());
      std::vector<int> expected = {d1, d2};
      std::sort(expected.begin(), expected.end());
      CHECK(sizes == expected);
      CHECK((resolution - ComplexMatrix::Identity(d1 + d2, d1 + d2)).norm() < 1e-10);
    }
  }
}

}  // TEST_SUITE
