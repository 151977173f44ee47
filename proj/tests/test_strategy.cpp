#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"

#include "bellkit/classify.hpp"
#include "bellkit/instances.hpp"
#include "bellkit/strategy.hpp"
#include "helpers.hpp"

using namespace bellkit;
using namespace bellkit::testing;

namespace {
// Independent moment oracle on the maximally entangled state:
// <phi_d| A (x) B |phi_d> = Tr(A B^T) / d.
Complex phi_moment_oracle(const ComplexMatrix& a, const ComplexMatrix& b, int d) {
  return (a * b.transpose()).trace() / static_cast<double>(d);
}
}  // namespace

TEST_SUITE("strategy") {

TEST_CASE("moments on the maximally entangled state match the trace oracle") {
  Rng rng(21);
  const int d = 4;
  Strategy s = random_projective_strategy(rng, d, d, 2, 2);
  s.state = max_entangled_state(d);

  SUBCASE("explicit operator pairs") {
    for (int trial = 0; trial < 10; ++trial) {
      const ComplexMatrix a = rng.haar_unitary(d), b = rng.haar_unitary(d);
      CHECK(std::abs(moment_of(s, a, b) - phi_moment_oracle(a, b, d)) < 1e-12);
    }
  }

  SUBCASE("words multiply letters in application order") {
    // Word [l1, l2] on one party contributes M(l2) M(l1).
    const Word word = {{Party::kAlice, 0, 0},
                       {Party::kAlice, 1, 1},
                       {Party::kBob, 0, 0},
                       {Party::kBob, 1, 1},
                       {Party::kBob, 0, 1}};
    const ComplexMatrix wa = s.alice[1][1] * s.alice[0][0];
    const ComplexMatrix wb = s.bob[0][1] * s.bob[1][1] * s.bob[0][0];
    const Complex direct = moment(s, word);
    CHECK(std::abs(direct - moment_of(s, wa, wb)) < 1e-13);
    CHECK(std::abs(direct - phi_moment_oracle(wa, wb, d)) < 1e-12);
  }

  SUBCASE("empty word is the state norm") {
    CHECK(std::abs(moment(s, {}) - Complex(1.0, 0.0)) < 1e-13);
  }
}

TEST_CASE("correlation tables are probability tables") {
  Rng rng(22);
  const Strategy s = random_povm_strategy(rng, 3, 2, 2, 3, 3, 3);
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 3; ++y) {
      const RealMatrix t = correlation_table(s, x, y);
      CHECK(std::abs(t.sum() - 1.0) < 1e-12);
      CHECK(t.minCoeff() > -1e-12);
      for (int a = 0; a < t.rows(); ++a)
        for (int b = 0; b < t.cols(); ++b)
          CHECK(std::abs(t(a, b) - correlation(s, x, y, a, b)) < 1e-14);
    }
}

TEST_CASE("validate approves the CHSH instance") {
  const PredicateReport r = validate(chsh_strategy());
  CHECK(r.well_formed);
  CHECK(r.message.empty());
  CHECK(r.full_rank);
  CHECK(r.support_preserving);
  CHECK(r.projective);
  CHECK(r.zero_projective);
  CHECK(r.irreducible_a);
  CHECK(r.irreducible_b);
  CHECK(r.structure_residual < 1e-12);
}

TEST_CASE("validate reports structural violations instead of throwing") {
  Strategy s = chsh_strategy();
  SUBCASE("unnormalized state") {
    s.state *= 2.0;
    const PredicateReport r = validate(s);
    CHECK_FALSE(r.well_formed);
    CHECK_FALSE(r.message.empty());
    CHECK_THROWS_AS(require_valid(s), std::invalid_argument);
  }
  SUBCASE("incomplete POVM") {
    s.alice[0][1] *= 0.5;
    const PredicateReport r = validate(s);
    CHECK_FALSE(r.well_formed);
    CHECK(r.structure_residual > 0.1);
  }
  SUBCASE("non-positive effect") {
    s.bob[1][0] -= ComplexMatrix::Identity(2, 2);
    s.bob[1][1] += ComplexMatrix::Identity(2, 2);
    CHECK_FALSE(validate(s).well_formed);
  }
  SUBCASE("wrong effect shape") {
    s.alice[1][0] = ComplexMatrix::Identity(3, 3);
    CHECK_FALSE(validate(s).well_formed);
  }
}

TEST_CASE("conjugation preserves correlations and conjugates moments") {
  Rng rng(23);
  const Strategy s = random_povm_strategy(rng, 3, 3, 2, 2);
  const Strategy c = conjugate_strategy(s);
  CHECK(correlation_max_diff(s, c) < 1e-14);
  const Word w = {{Party::kAlice, 0, 0}, {Party::kBob, 1, 1}, {Party::kAlice, 1, 0}};
  CHECK(std::abs(moment(c, w) - std::conj(moment(s, w))) < 1e-13);
}

TEST_CASE("local unitaries change nothing observable") {
  Rng rng(24);
  const Strategy s = random_povm_strategy(rng, 3, 2, 2, 2);
  const Strategy t = apply_local_unitaries(s, rng.haar_unitary(3), rng.haar_unitary(2));
  CHECK(correlation_max_diff(s, t) < 1e-13);
  const Word w = {{Party::kAlice, 0, 1}, {Party::kBob, 1, 0}, {Party::kAlice, 1, 1}};
  CHECK(std::abs(moment(s, w) - moment(t, w)) < 1e-13);
}

TEST_CASE("observables and the CHSH value") {
  const Strategy s = chsh_strategy();
  double chsh = observable_correlation(s, 0, 0) + observable_correlation(s, 0, 1) +
                observable_correlation(s, 1, 0) - observable_correlation(s, 1, 1);
  CHECK(std::abs(chsh - 2.0 * std::sqrt(2.0)) < 1e-12);
  CHECK_THROWS_AS(observable(pauli3_strategy(), Party::kAlice, 5), std::exception);
}

TEST_CASE("strategy_from_observables builds the matching projective strategy") {
  Rng rng(25);
  // Random +-1 observables: U diag(+-1) U^†.
  auto random_obs = [&](int d) {
    const ComplexMatrix u = rng.haar_unitary(d);
    ComplexVector diag(d);
    for (int i = 0; i < d; ++i) diag(i) = (rng.uniform() < 0.5) ? 1.0 : -1.0;
    return ComplexMatrix(u * diag.asDiagonal() * u.adjoint());
  };
  const std::vector<ComplexMatrix> alice = {random_obs(3), random_obs(3)};
  const std::vector<ComplexMatrix> bob = {random_obs(2)};
  const Strategy s = strategy_from_observables(rng.state(6), 3, 2, alice, bob);
  CHECK(validate(s).well_formed);
  CHECK(projectivity_residual(s) < 1e-12);
  CHECK((observable(s, Party::kAlice, 1) - alice[1]).norm() < 1e-12);
  CHECK((observable(s, Party::kBob, 0) - bob[0]).norm() < 1e-12);
}

TEST_CASE("real_simulation is real, valid, and correlation-preserving") {
  Rng rng(26);
  for (const Strategy& s :
       {chsh_strategy(), pauli3_strategy(), random_povm_strategy(rng, 3, 2, 2, 2)}) {
    const Strategy r = real_simulation(s);
    CHECK(r.dim_a == 2 * s.dim_a);
    CHECK(r.dim_b == 2 * s.dim_b);
    CHECK(validate(r).well_formed);
    double max_imag = r.state.imag().cwiseAbs().maxCoeff();
    for (Party p : {Party::kAlice, Party::kBob})
      for (const auto& povm : r.povms(p))
        for (const ComplexMatrix& e : povm)
          max_imag = std::max(max_imag, e.imag().cwiseAbs().maxCoeff());
    CHECK(max_imag < 1e-14);
    CHECK(correlation_max_diff(s, r) < 1e-13);
  }
}

TEST_CASE("real_part_strategy folds Bob onto his real part") {
  Rng rng(27);
  Strategy s = random_real_strategy(rng, 3, 3, 2, 2);
  s.bob.clear();
  for (int y = 0; y < 2; ++y) s.bob.push_back(random_povm(rng, 3, 2));
  const Strategy folded = real_part_strategy(s);
  for (const auto& povm : folded.bob)
    for (const ComplexMatrix& f : povm)
      CHECK(f.imag().cwiseAbs().maxCoeff() < 1e-14);
  CHECK(validate(folded).well_formed);
  CHECK(correlation_max_diff(s, folded) < 1e-12);

  // The precondition (real state, real Alice effects) is enforced.
  Strategy complex_side = pauli3_strategy();
  CHECK_THROWS_AS(real_part_strategy(complex_side), std::invalid_argument);
}

TEST_CASE("support and projectivity residuals separate the predicate classes") {
  Rng rng(28);
  SUBCASE("full-rank strategies are trivially support-preserving") {
    const Strategy s = random_povm_strategy(rng, 3, 3, 2, 2);
    CHECK(validate(s).full_rank);
    CHECK(support_preservation_residual(s) < 1e-12);
  }
  SUBCASE("block-compatible rank-deficient strategies stay support-preserving") {
    const Strategy s = support_deficient_strategy(rng, 4, 4, 2, 2, 2);
    const PredicateReport r = validate(s);
    CHECK(r.well_formed);
    CHECK_FALSE(r.full_rank);
    CHECK(r.support_preserving);
  }
  SUBCASE("generic effects on a rank-deficient state are not") {
    Strategy s = random_povm_strategy(rng, 3, 3, 2, 2);
    s.state = ComplexVector::Zero(9);
    s.state(0) = std::sqrt(0.5);
    s.state(4) = std::sqrt(0.5);  // rank 2 of 3
    CHECK(support_preservation_residual(s) > 1e-3);
    CHECK_FALSE(validate(s).support_preserving);
  }
  SUBCASE("0-projective but not projective") {
    // Product state |0>|0>, Alice effect diag(1, 1/2): acts as a projection
    // on the state support but is no projection.
    Strategy s;
    s.dim_a = s.dim_b = 2;
    s.state = ComplexVector::Zero(4);
    s.state(0) = 1.0;
    ComplexMatrix e = ComplexMatrix::Zero(2, 2);
    e(0, 0) = 1.0;
    e(1, 1) = 0.5;
    s.alice.push_back({e, ComplexMatrix::Identity(2, 2) - e});
    s.bob.push_back({ComplexMatrix::Identity(2, 2), ComplexMatrix::Zero(2, 2)});
    CHECK(projectivity_residual(s) > 0.1);
    CHECK(zero_projectivity_residual(s) < 1e-14);
    const PredicateReport r = validate(s);
    CHECK(r.zero_projective);
    CHECK_FALSE(r.projective);
  }
}

}  // TEST_SUITE
