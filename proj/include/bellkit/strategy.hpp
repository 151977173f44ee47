#pragma once

#include <string>
#include <vector>

#include "bellkit/linalg.hpp"

namespace bellkit {

// Identifies one party of the bipartite scenario.
enum class Party { kAlice, kBob };

// A bipartite quantum strategy: a shared pure state together with one POVM
// per input for each party.  measurements[x][a] is the POVM element for
// input x and outcome a; outcome counts may vary between inputs.
struct Strategy {
  int dim_a = 0;
  int dim_b = 0;
  ComplexVector state;                                   // length dim_a * dim_b
  std::vector<std::vector<ComplexMatrix>> alice;         // [input][outcome]
  std::vector<std::vector<ComplexMatrix>> bob;           // [input][outcome]

  const std::vector<std::vector<ComplexMatrix>>& povms(Party p) const {
    return p == Party::kAlice ? alice : bob;
  }
  int dim(Party p) const { return p == Party::kAlice ? dim_a : dim_b; }
  int n_inputs(Party p) const { return static_cast<int>(povms(p).size()); }
  int n_outcomes(Party p, int x) const {
    return static_cast<int>(povms(p)[x].size());
  }
};

// Structural soundness plus the standard strategy predicates, each decided by
// its defining residual.
struct PredicateReport {
  // Structure: shapes, Hermiticity, positivity, POVM completeness, state norm.
  bool well_formed = false;
  std::string message;            // first structural violation, empty if none
  double structure_residual = 0;  // worst structural defect

  bool full_rank = false;         // Schmidt rank equals both local dimensions
  double smallest_schmidt = 0;    // smallest Schmidt coefficient

  bool support_preserving = false;
  double support_residual = 0;    // max ||[support projector, element]||_F

  bool projective = false;
  double projectivity_residual = 0;  // max ||E^2 - E||_F

  bool zero_projective = false;
  double zero_projectivity_residual = 0;  // max |<psi|(I-E)E (x) I|psi>|

  bool irreducible_a = false;     // Alice elements generate the full algebra
  bool irreducible_b = false;
};

// Evaluates every predicate.  Structural violations are reported in the
// result (well_formed = false with a message), never thrown.
PredicateReport validate(const Strategy& s, double tol = 1e-8);

// Throws std::invalid_argument with a description of the first structural
// violation; returns normally when the strategy is well formed.
void require_valid(const Strategy& s, double tol = 1e-8);

// p(a, b | x, y) = <psi| E_xa (x) F_yb |psi>.  The imaginary part, which is
// zero in exact arithmetic, is discarded.
double correlation(const Strategy& s, int x, int y, int a, int b);

// All outcome probabilities for one input pair, indexed [a][b].
RealMatrix correlation_table(const Strategy& s, int x, int y);

// One letter of an operator word: a POVM element identified by party, input
// and outcome.
struct Letter {
  Party party;
  int input = 0;
  int outcome = 0;
};
using Word = std::vector<Letter>;

// Higher-order moment <psi| W_A (x) W_B |psi> where W_A is the product of
// Alice's letters and W_B of Bob's, each with the first letter of the word
// applied to the state first (i.e. word [l1, ..., lk] contributes the
// operator M(lk) ... M(l1) per party).
Complex moment(const Strategy& s, const Word& word);

// Moment of explicitly given party operators: <psi| A (x) B |psi>.
Complex moment_of(const Strategy& s, const ComplexMatrix& op_a, const ComplexMatrix& op_b);

// Dichotomic observable E_x0 - E_x1 for a two-outcome input.  Throws if the
// input does not have exactly two outcomes.
ComplexMatrix observable(const Strategy& s, Party p, int x);

// Expectation <psi| A_x (x) B_y |psi> of a pair of dichotomic observables.
double observable_correlation(const Strategy& s, int x, int y);

// Largest Frobenius deviation max_{x,a} ||E^2 - E|| over both parties; zero
// exactly when every POVM element is a projection.
double projectivity_residual(const Strategy& s);

// Largest |<psi| ((I - E) E (x) I) |psi>| over both parties (Bob mirrored);
// zero exactly when the strategy is 0-projective, i.e. every element acts as
// a projection on the state.
double zero_projectivity_residual(const Strategy& s);

// Orthogonal projection onto the support of the party's reduced state.
ComplexMatrix support_projector(const Strategy& s, Party p, double tol = kDefaultTol);

// Largest Frobenius norm of commutators [support projector, POVM element];
// zero exactly when the strategy is support-preserving.
double support_preservation_residual(const Strategy& s, double tol = kDefaultTol);

// Whether both reduced states have full rank (Schmidt rank equals both local
// dimensions).
bool is_full_rank(const Strategy& s, double tol = kDefaultTol);

// Entrywise complex conjugate of the whole strategy; its correlations are
// identical to the original's.
Strategy conjugate_strategy(const Strategy& s);

// Conjugates every piece by local unitaries: E -> U_A E U_A^†, state ->
// (U_A (x) U_B) psi.  Correlations are unchanged.
Strategy apply_local_unitaries(const Strategy& s, const ComplexMatrix& u_a,
                               const ComplexMatrix& u_b);

// Real simulation: each party gains a two-dimensional register holding the
// conjugation branch.  With |+i> = (|0> + i|1>)/sqrt(2) and |-i> its
// conjugate, the state becomes (|+i,+i>|psi> + |-i,-i>|conj(psi)>)/sqrt(2)
// (registers first per party) and each effect E becomes
// |+i><+i| (x) E + |-i><-i| (x) conj(E).  Every entry of the result is real
// and the correlation is exactly preserved.
Strategy real_simulation(const Strategy& s);

// Replaces each Bob effect F by (F + conj(F))/2.  Requires the state and all
// Alice effects to be real-entried in the current basis (throws otherwise);
// under that precondition the correlation is preserved.
Strategy real_part_strategy(const Strategy& s, double tol = kDefaultTol);

// Builds a two-outcome projective strategy from +-1-valued observables
// (Hermitian unitaries): outcome projectors are (I ± O)/2.
Strategy strategy_from_observables(const ComplexVector& state, int dim_a, int dim_b,
                                   const std::vector<ComplexMatrix>& alice_obs,
                                   const std::vector<ComplexMatrix>& bob_obs);

}  // namespace bellkit
