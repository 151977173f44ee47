#pragma once

// Shared strategy generators and distance helpers for the test suite.  All
// randomness flows through bellkit::Rng so every test is seed-reproducible.

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "bellkit/algebra.hpp"
#include "bellkit/dilation.hpp"
#include "bellkit/instances.hpp"
#include "bellkit/rand.hpp"
#include "bellkit/strategy.hpp"

namespace bellkit::testing {

// Random PVM on C^d with the given number of outcomes (outcomes <= d): a Haar
// frame split into column groups of random positive sizes.
inline std::vector<ComplexMatrix> random_pvm(Rng& rng, int d, int outcomes) {
  if (outcomes > d) throw std::invalid_argument("random_pvm: outcomes > d");
  std::vector<int> ranks(outcomes, 1);
  for (int r = outcomes; r < d; ++r) ranks[rng.uniform_int(outcomes)]++;
  const ComplexMatrix u = rng.haar_unitary(d);
  std::vector<ComplexMatrix> povm;
  int col = 0;
  for (int a = 0; a < outcomes; ++a) {
    const ComplexMatrix block = u.middleCols(col, ranks[a]);
    povm.push_back(block * block.adjoint());
    col += ranks[a];
  }
  return povm;
}

// Random (generically non-projective) POVM: G_a = S^{-1/2} A_a S^{-1/2} with
// A_a random positive definite and S their sum.
inline std::vector<ComplexMatrix> random_povm(Rng& rng, int d, int outcomes) {
  std::vector<ComplexMatrix> raw;
  ComplexMatrix sum = ComplexMatrix::Zero(d, d);
  for (int a = 0; a < outcomes; ++a) {
    ComplexMatrix g(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) g(i, j) = rng.complex_normal();
    ComplexMatrix psd = g * g.adjoint() + 0.05 * ComplexMatrix::Identity(d, d);
    raw.push_back(psd);
    sum += psd;
  }
  const Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(sum);
  const ComplexMatrix inv_sqrt =
      es.eigenvectors() *
      es.eigenvalues().cwiseSqrt().cwiseInverse().cast<Complex>().asDiagonal() *
      es.eigenvectors().adjoint();
  std::vector<ComplexMatrix> povm;
  for (const ComplexMatrix& a : raw) {
    ComplexMatrix e = inv_sqrt * a * inv_sqrt;
    povm.push_back(((e + e.adjoint()) / 2.0).eval());
  }
  return povm;
}

// Outcome counts of 0 mean one outcome per dimension of that party
// (complete non-degenerate PVMs).  Binary projective inputs at d >= 3 can
// never act irreducibly -- two projections only generate blocks of size <= 2
// -- so tests that need irreducible projective strategies pass 0 here.
inline Strategy random_projective_strategy(Rng& rng, int dim_a, int dim_b,
                                           int n_inputs_a, int n_inputs_b,
                                           int outcomes_a = 2, int outcomes_b = 2) {
  Strategy s;
  s.dim_a = dim_a;
  s.dim_b = dim_b;
  s.state = rng.state(dim_a * dim_b);
  for (int x = 0; x < n_inputs_a; ++x)
    s.alice.push_back(random_pvm(rng, dim_a, outcomes_a ? outcomes_a : dim_a));
  for (int y = 0; y < n_inputs_b; ++y)
    s.bob.push_back(random_pvm(rng, dim_b, outcomes_b ? outcomes_b : dim_b));
  return s;
}

inline Strategy random_povm_strategy(Rng& rng, int dim_a, int dim_b, int n_inputs_a,
                                     int n_inputs_b, int outcomes_a = 2,
                                     int outcomes_b = 2) {
  Strategy s;
  s.dim_a = dim_a;
  s.dim_b = dim_b;
  s.state = rng.state(dim_a * dim_b);
  for (int x = 0; x < n_inputs_a; ++x)
    s.alice.push_back(random_povm(rng, dim_a, outcomes_a ? outcomes_a : dim_a));
  for (int y = 0; y < n_inputs_b; ++y)
    s.bob.push_back(random_povm(rng, dim_b, outcomes_b ? outcomes_b : dim_b));
  return s;
}

// Haar-random real orthogonal matrix (QR of a real Ginibre matrix with the
// R-diagonal sign correction).
inline RealMatrix haar_orthogonal(Rng& rng, int d) {
  RealMatrix g(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) g(i, j) = rng.normal();
  const Eigen::HouseholderQR<RealMatrix> qr(g);
  RealMatrix q = qr.householderQ();
  const RealMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < d; ++j)
    if (r(j, j) < 0) q.col(j) = -q.col(j);
  return q;
}

// Random real (entrywise) PVM via an orthogonal frame.
inline std::vector<ComplexMatrix> random_real_pvm(Rng& rng, int d, int outcomes) {
  std::vector<int> ranks(outcomes, 1);
  for (int r = outcomes; r < d; ++r) ranks[rng.uniform_int(outcomes)]++;
  const RealMatrix q = haar_orthogonal(rng, d);
  std::vector<ComplexMatrix> povm;
  int col = 0;
  for (int a = 0; a < outcomes; ++a) {
    const RealMatrix block = q.middleCols(col, ranks[a]);
    povm.push_back((block * block.transpose()).cast<Complex>());
    col += ranks[a];
  }
  return povm;
}

// An entrywise-real projective strategy (real state, real effects).
// outcomes 0 means one outcome per dimension (complete non-degenerate PVMs,
// which act irreducibly for generic frames; binary PVMs at d >= 3 never do,
// since two projections generate only blocks of size <= 2).
inline Strategy random_real_strategy(Rng& rng, int dim_a, int dim_b, int n_inputs_a,
                                     int n_inputs_b, int outcomes_a = 0,
                                     int outcomes_b = 0) {
  Strategy s;
  s.dim_a = dim_a;
  s.dim_b = dim_b;
  RealVector psi(dim_a * dim_b);
  for (int i = 0; i < psi.size(); ++i) psi(i) = rng.normal();
  psi.normalize();
  s.state = psi.cast<Complex>();
  for (int x = 0; x < n_inputs_a; ++x)
    s.alice.push_back(random_real_pvm(rng, dim_a, outcomes_a ? outcomes_a : dim_a));
  for (int y = 0; y < n_inputs_b; ++y)
    s.bob.push_back(random_real_pvm(rng, dim_b, outcomes_b ? outcomes_b : dim_b));
  return s;
}

// A real strategy hidden behind Haar-random local basis changes; classifies
// Real whenever the underlying effects act irreducibly.
inline Strategy planted_real_strategy(Rng& rng, int dim_a, int dim_b, int n_inputs_a,
                                      int n_inputs_b, int outcomes_a = 0,
                                      int outcomes_b = 0) {
  const Strategy real = random_real_strategy(rng, dim_a, dim_b, n_inputs_a,
                                             n_inputs_b, outcomes_a, outcomes_b);
  return apply_local_unitaries(real, rng.haar_unitary(dim_a), rng.haar_unitary(dim_b));
}

// Support-preserving strategy whose state has Schmidt rank `rank` inside
// dims (dim_a, dim_b): the state lives on the first `rank` coordinates of
// both sides and every effect is block-diagonal w.r.t. support + complement.
inline Strategy support_deficient_strategy(Rng& rng, int dim_a, int dim_b, int rank,
                                           int n_inputs_a, int n_inputs_b) {
  Strategy s;
  s.dim_a = dim_a;
  s.dim_b = dim_b;
  ComplexVector psi = ComplexVector::Zero(dim_a * dim_b);
  RealVector coeff(rank);
  for (int k = 0; k < rank; ++k) coeff(k) = 0.2 + rng.uniform();
  coeff.normalize();
  for (int k = 0; k < rank; ++k) psi(k * dim_b + k) = coeff(k);
  s.state = psi;
  auto block_povm = [&](int d) {
    std::vector<ComplexMatrix> top =
        rank >= 2 ? random_povm(rng, rank, 2)
                  : std::vector<ComplexMatrix>{ComplexMatrix::Identity(1, 1) * 0.7,
                                               ComplexMatrix::Identity(1, 1) * 0.3};
    std::vector<ComplexMatrix> bottom = random_povm(rng, d - rank, 2);
    std::vector<ComplexMatrix> povm;
    for (int a = 0; a < 2; ++a) {
      ComplexMatrix e = ComplexMatrix::Zero(d, d);
      e.topLeftCorner(rank, rank) = top[a];
      e.bottomRightCorner(d - rank, d - rank) = bottom[a];
      povm.push_back(e);
    }
    return povm;
  };
  for (int x = 0; x < n_inputs_a; ++x) s.alice.push_back(block_povm(dim_a));
  for (int y = 0; y < n_inputs_b; ++y) s.bob.push_back(block_povm(dim_b));
  return s;
}

// Largest entrywise correlation difference over all common input pairs.
inline double correlation_max_diff(const Strategy& s1, const Strategy& s2) {
  double worst = 0;
  for (int x = 0; x < s1.n_inputs(Party::kAlice); ++x)
    for (int y = 0; y < s1.n_inputs(Party::kBob); ++y) {
      const RealMatrix d = correlation_table(s1, x, y) - correlation_table(s2, x, y);
      worst = std::max(worst, d.cwiseAbs().maxCoeff());
    }
  return worst;
}

// All effects of one party, flattened (the generating set of its algebra).
inline std::vector<ComplexMatrix> party_effects(const Strategy& s, Party p) {
  std::vector<ComplexMatrix> out;
  for (const auto& povm : s.povms(p))
    for (const ComplexMatrix& e : povm) out.push_back(e);
  return out;
}

// Retries a strategy factory until both parties' effects act irreducibly.
template <typename Factory>
inline Strategy random_irreducible(Factory make, int max_attempts = 50) {
  for (int i = 0; i < max_attempts; ++i) {
    Strategy s = make();
    if (is_irreducible(party_effects(s, Party::kAlice)) &&
        is_irreducible(party_effects(s, Party::kBob)))
      return s;
  }
  throw std::runtime_error("random_irreducible: no irreducible sample found");
}

// A strategy together with a smaller canonical strategy it dilates and the
// witness proving it.  Feed to check_local_dilation / check_complex_local_dilation
// as (strategy, canonical, witness).
struct PlantedDilation {
  Strategy strategy;   // the big strategy
  Strategy canonical;  // the strategy it locally dilates
  DilationWitness witness;
};

// Plants a standard local dilation: each party of `canonical` is embedded into
// a space enlarged by an auxiliary factor and scrambled by a Haar unitary, and
// the big state carries an extra shared auxiliary state.  The returned witness
// (the adjoints of the scrambling unitaries, plus the auxiliary state) passes
// check_local_dilation with residuals at machine precision.
inline PlantedDilation planted_standard_dilation(Rng& rng, const Strategy& canonical,
                                                 int aux_a, int aux_b) {
  const int da = canonical.dim_a;
  const int db = canonical.dim_b;
  const ComplexMatrix wa = rng.haar_unitary(da * aux_a);
  const ComplexMatrix wb = rng.haar_unitary(db * aux_b);
  const ComplexVector alpha = rng.state(aux_a * aux_b);

  // (A, B, auxA, auxB) -> (A, auxA, B, auxB), then scramble each side.
  const ComplexVector grouped =
      permute_factors(tensor(canonical.state, alpha), {da, db, aux_a, aux_b}, {0, 2, 1, 3});

  Strategy big;
  big.dim_a = da * aux_a;
  big.dim_b = db * aux_b;
  big.state = tensor(wa, wb) * grouped;
  const ComplexMatrix ida = ComplexMatrix::Identity(aux_a, aux_a);
  const ComplexMatrix idb = ComplexMatrix::Identity(aux_b, aux_b);
  for (const auto& povm : canonical.alice) {
    big.alice.emplace_back();
    for (const ComplexMatrix& e : povm)
      big.alice.back().push_back(wa * tensor(e, ida) * wa.adjoint());
  }
  for (const auto& povm : canonical.bob) {
    big.bob.emplace_back();
    for (const ComplexMatrix& f : povm)
      big.bob.back().push_back(wb * tensor(f, idb) * wb.adjoint());
  }

  DilationWitness w;
  w.u_a = wa.adjoint();
  w.u_b = wb.adjoint();
  w.aux0 = alpha;
  return {std::move(big), canonical, std::move(w)};
}

// Plants a complex local dilation: the big strategy hides `canonical` and its
// entrywise conjugate on the two levels of a local qubit register (the least
// significant factor on each side), with branch weights branch0 / 1 - branch0.
// The witness passes check_complex_local_dilation at machine precision.
inline PlantedDilation planted_complex_dilation(Rng& rng, const Strategy& canonical,
                                                int aux_a, int aux_b,
                                                double branch0 = 0.7) {
  const int da = canonical.dim_a;
  const int db = canonical.dim_b;
  const ComplexMatrix wa = rng.haar_unitary(da * aux_a * 2);
  const ComplexMatrix wb = rng.haar_unitary(db * aux_b * 2);
  const ComplexVector aux0 = rng.state(aux_a * aux_b) * std::sqrt(branch0);
  const ComplexVector aux1 = rng.state(aux_a * aux_b) * std::sqrt(1.0 - branch0);

  ComplexVector e0 = ComplexVector::Zero(2), e1 = ComplexVector::Zero(2);
  e0(0) = 1.0;
  e1(1) = 1.0;
  const std::vector<int> dims = {da, db, aux_a, aux_b, 2, 2};
  const std::vector<int> perm = {0, 2, 4, 1, 3, 5};
  const ComplexVector branch_zero = permute_factors(
      tensor(tensor(canonical.state, aux0), tensor(e0, e0)), dims, perm);
  const ComplexVector branch_one = permute_factors(
      tensor(tensor(canonical.state.conjugate().eval(), aux1), tensor(e1, e1)), dims, perm);

  Strategy big;
  big.dim_a = da * aux_a * 2;
  big.dim_b = db * aux_b * 2;
  big.state = tensor(wa, wb) * (branch_zero + branch_one);
  const ComplexMatrix p0 = e0 * e0.adjoint();
  const ComplexMatrix p1 = e1 * e1.adjoint();
  const ComplexMatrix ida = ComplexMatrix::Identity(aux_a, aux_a);
  const ComplexMatrix idb = ComplexMatrix::Identity(aux_b, aux_b);
  const auto lift = [&](const ComplexMatrix& e, const ComplexMatrix& id_aux,
                        const ComplexMatrix& w) {
    return (w * (tensor(tensor(e, id_aux), p0) + tensor(tensor(e.conjugate().eval(), id_aux), p1)) *
            w.adjoint()).eval();
  };
  for (const auto& povm : canonical.alice) {
    big.alice.emplace_back();
    for (const ComplexMatrix& e : povm) big.alice.back().push_back(lift(e, ida, wa));
  }
  for (const auto& povm : canonical.bob) {
    big.bob.emplace_back();
    for (const ComplexMatrix& f : povm) big.bob.back().push_back(lift(f, idb, wb));
  }

  DilationWitness w;
  w.u_a = wa.adjoint();
  w.u_b = wb.adjoint();
  w.aux0 = aux0;
  w.aux1 = aux1;
  return {std::move(big), canonical, std::move(w)};
}

}  // namespace bellkit::testing
