#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

#include "bellkit/algebra.hpp"
#include "bellkit/strategy.hpp"

namespace bellkit {

// Realness ladder verdict for an irreducible strategy, from most to least
// restrictive:
//   Real                  -- local unitaries make the state and all effects
//                            entrywise real;
//   SelfConjugateNotReal  -- locally conjugation-covariant, but the
//                            conjugators are antisymmetric (quaternionic
//                            structure), so no real form exists;
//   Complex               -- some operator word has a moment with nonzero
//                            imaginary part, which no local conjugation can
//                            remove.
enum class Verdict { Real, SelfConjugateNotReal, Complex };

std::string to_string(Verdict v);

struct ClassifyOptions {
  double moment_tol = 1e-7;  // |Im| above this flags a nonreal moment
  double rank_tol = kGapTol; // closure / null-space rank decisions
  double witness_tol = kDefaultTol;  // residual acceptance for witnesses
  std::size_t max_pairs = 4'000'000; // word-pair budget for the direct sweep
};

// An operator word pair whose moment has nonzero imaginary part.  The party
// words list letters in application order (first letter hits the state
// first); `moment` is the true (unnormalized) word moment.
struct MomentCounterexample {
  Word alice_word;
  Word bob_word;
  Complex moment = 0.0;
};

struct MomentRealResult {
  bool real = true;
  std::optional<MomentCounterexample> counterexample;  // first offender if !real
  double max_imag = 0.0;  // max |Im| over the decision values swept
  std::size_t pairs_checked = 0;
};

// Sweeps word-pair moments for a nonzero imaginary part.  max_len > 0 checks
// every pair of POVM-letter words with per-party length at most max_len
// (words enumerated by length, then lexicographically; the first offending
// pair in that order is reported with its true moment).  max_len = 0 is
// exhaustive mode: each party's words are replaced by a spanning set of its
// closed effect algebra, so a clean sweep certifies ALL word moments real
// (the decision values are then moments of normalized spanning operators).
// Throws std::runtime_error when the pair count exceeds opts.max_pairs and
// std::invalid_argument on a malformed strategy.
MomentRealResult moment_real_direct(const Strategy& s, int max_len,
                                    const ClassifyOptions& opts = {});

// Algebraic moment-reality test, the structure-side counterpart of the
// direct sweep.  Rotates the strategy to a Schmidt basis of its state, then:
// (1) if i * identity lies in the real *-algebra generated by the joint
// effects, some real combination of word moments equals i, so the answer is
// false; (2) otherwise both parties' effect families admit conjugation
// intertwiners (their real closures are real or quaternionic forms), and
// moments are real precisely when the induced local conjugation also fixes
// the state up to a global phase.  Stage 2 is essential: absence of
// i * identity alone does not decide moment-reality (e.g. any two Hermitian
// 2x2 effects are simultaneously realizable, so two-input binary qubit
// strategies always pass stage 1, while a generic entangled state still has
// complex moments).  Throws on reducible input (the criterion assumes
// irreducibility).
bool moment_real_algebraic(const Strategy& s, double rank_tol = kGapTol);

// Local conjugation witness: unitaries with U_A E U_A^† = conj(E) for every
// Alice effect, likewise for Bob, and (U_A (x) U_B) psi = conj(psi).  The
// state equation's free phase is already absorbed into u_a (`phase` records
// the absorbed factor); the per-party unitaries are each canonical only up
// to opposite phases.
struct SelfConjugacyWitness {
  ComplexMatrix u_a, u_b;
  Complex phase = 1.0;        // factor absorbed into u_a to fix the state equation
  double alice_residual = 0;  // max_E ||u_a E u_a^† - conj(E)||_F
  double bob_residual = 0;
  double state_residual = 0;  // ||(u_a (x) u_b) psi - conj(psi)||
};

// Returns the witness when the strategy is self-conjugate (all three
// residuals at most opts.witness_tol), nullopt otherwise.  Throws
// ReducibleStrategyError on reducible input.
std::optional<SelfConjugacyWitness> self_conjugacy_witness(
    const Strategy& s, const ClassifyOptions& opts = {});

// Local unitaries (u_a, u_b) rotating the strategy into a real Schmidt form:
// the rotated state is the vector of Schmidt coefficients on the diagonal
// (real, nonnegative) and every rotated effect is real-entried.
struct SchmidtRealWitness {
  ComplexMatrix u_a, u_b;
  double max_imag_entry = 0;    // over the rotated state and all effects
  double diagonal_residual = 0; // distance of the rotated state matrix from
                                // its nonnegative diagonal
};

// Rotation into an entrywise-real strategy, valid when both conjugators are
// symmetric: w_* is a unitary with u_* = w_*^T w_* (Takagi), and `rotated`
// is the strategy conjugated by (w_a, w_b).
struct RealRealization {
  ComplexMatrix w_a, w_b;
  Strategy rotated;
  double max_imag_entry = 0.0;  // over the rotated state and all effects
};
RealRealization realize_real(const Strategy& s, const SelfConjugacyWitness& w);

// Rotation into quaternionic form, valid when both conjugators are
// antisymmetric: after rotating by w_* (from u_* = w_*^T K w_*), every
// effect Y satisfies conj(Y) = K Y K^† with K = tensor([[0,-1],[1,0]], Id)
// and the state satisfies (K_A (x) K_B) psi = conj(psi).
struct QuaternionicRealization {
  ComplexMatrix w_a, w_b;
  Strategy rotated;
  double embed_residual = 0.0;  // max distance of effects from the relation
  double state_residual = 0.0;
};
QuaternionicRealization realize_quaternionic(const Strategy& s,
                                             const SelfConjugacyWitness& w);

// Thrown when an operation requiring irreducibility meets a reducible
// strategy; carries the per-party block decompositions.
class ReducibleStrategyError : public std::runtime_error {
 public:
  ReducibleStrategyError(const std::string& message, BlockDecomposition alice,
                         BlockDecomposition bob)
      : std::runtime_error(message),
        alice_blocks(std::move(alice)),
        bob_blocks(std::move(bob)) {}

  BlockDecomposition alice_blocks;
  BlockDecomposition bob_blocks;
};

// Full realness ladder for one irreducible strategy.
struct RealnessReport {
  bool irreducible = false;
  StructureType alice_type;
  StructureType bob_type;

  bool self_conjugate = false;
  std::optional<SelfConjugacyWitness> self_conjugacy;

  bool schmidt_real = false;
  std::optional<SchmidtRealWitness> schmidt_witness;

  bool moment_real_direct = false;  // exhaustive spanning-set sweep
  std::optional<MomentCounterexample> counterexample;
  bool moment_real_algebraic = false;

  Verdict verdict = Verdict::Complex;
};

// Classifies one strategy on the realness ladder.  Computes per-party
// structure types, decides moment-reality two independent ways (and throws
// on disagreement), builds the self-conjugacy witness, and for the Real
// verdict also the Schmidt-real witness.  Throws ReducibleStrategyError
// (with the block decompositions attached) when either party's effects act
// reducibly, and std::invalid_argument on a malformed strategy.
RealnessReport classify_strategy(const Strategy& s, const ClassifyOptions& opts = {});

// Convenience mode for reducible strategies: classifies the compression of
// the strategy onto each pair of (Alice block, Bob block) with nonnegligible
// state weight, without asserting any global verdict.
struct BlockVerdict {
  int alice_block = 0;
  int bob_block = 0;
  double weight = 0;  // squared norm of the state component in this block pair
  RealnessReport report;
};
std::vector<BlockVerdict> classify_blocks(const Strategy& s,
                                          const ClassifyOptions& opts = {});

// Brute-force maximum of |Im <word moment>| over all words with at most
// max_total_len POVM-element letters (both parties combined).  Exponential in
// max_total_len; intended as an oracle for small instances.
double max_imag_moment_brute(const Strategy& s, int max_total_len);

// Same sweep over words in the dichotomic observables E_x0 - E_x1 instead of
// the effects (requires every input to be two-outcome).  Observable words
// expose imaginary parts at full scale: for the three-Pauli strategy the
// word (sigma_Y sigma_X) (x) sigma_Z has moment -i exactly.
double max_imag_observable_moment_brute(const Strategy& s, int max_total_len);

}  // namespace bellkit
