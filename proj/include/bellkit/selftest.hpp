#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <vector>

#include "bellkit/rand.hpp"
#include "bellkit/strategy.hpp"

namespace bellkit {

// Linear functional on correlations: offset + sum of coefficient * p(a,b|x,y)
// over the stored terms, keyed by (x, y, a, b).
struct BellFunctional {
  std::map<std::array<int, 4>, double> coefficients;
  double offset = 0.0;
};

// Evaluates the functional on a strategy.  Throws std::invalid_argument if a
// coefficient references an input or outcome the strategy does not have.
double bell_value(const BellFunctional& f, const Strategy& s);

// Maximum of the functional over deterministic classical strategies with
// binary outcomes (Bob's optimal response decouples per input, so the sweep
// is 2^{n_inputs_a} * n_inputs_b * 4 evaluations).  Throws if any coefficient
// references an outcome other than 0 or 1.
double classical_bound_dichotomic(const BellFunctional& f, int n_inputs_a,
                                  int n_inputs_b);

// The standard CHSH functional <A0B0> + <A0B1> + <A1B0> - <A1B1> expanded in
// probabilities.  Classical bound 2, quantum bound 2 sqrt 2.
BellFunctional chsh_functional();

// The four two-qubit-pair observables X1 = Z(x)I, X2 = X(x)I, X3 = Y(x)Z,
// X4 = Y(x)Y -- pairwise anticommuting Hermitian unitaries on C^4.
std::vector<ComplexMatrix> quaternion_observables();

// The 4-input / 12-input strategy on C^4 (x) C^4: Alice measures X1..X4, Bob
// measures (X_l +- X_m)^T / sqrt 2 for the six pairs l < m (input 2k for +,
// 2k+1 for -), on the maximally entangled state.
Strategy quaternion_strategy();

// The tailored functional: the sum of the six CHSH expressions, one per pair
// (l, m), each built on Alice inputs l, m and Bob inputs 2k, 2k+1.  Its
// classical bound is 12 and its quantum maximum is 12 sqrt 2, attained by
// quaternion_strategy().
BellFunctional six_chsh_functional();

// The quantum maximum 12 sqrt 2 = 16.97056274847714... as an exact double
// expression.
double quaternion_bound();

// The six per-pair CHSH values of a 4-input / 12-input strategy, in pair
// order (1,2),(1,3),(1,4),(2,3),(2,4),(3,4).  Each is 2 sqrt 2 for
// quaternion_strategy().
std::vector<double> chsh_block_values(const Strategy& s);

// Spectral certificate for the functional's quantum maximum: the normalized
// Bell operator R = X1(x)X1 + X2(x)X2 - X3(x)X3 + X4(x)X4 (the six-CHSH Bell
// operator equals 3 sqrt 2 R for the canonical observables).
struct EigencheckReport {
  double max_eigenvalue = 0;  // expect 4
  double eigengap = 0;        // max eigenvalue minus the second largest
  double fidelity = 0;        // |<phi_4 | top eigenvector>|^2
};
EigencheckReport bell_operator_eigencheck();

// Largest operator norm ||X_l X_m + X_m X_l|| over pairs l < m.  Inputs must
// be Hermitian unitaries (throws std::invalid_argument otherwise).
double anticommutation_residual(const std::vector<ComplexMatrix>& observables);

// Full self-test bundle for the quaternion instance.
struct QuaternionSelfTest {
  double value = 0;                       // bell value of the strategy
  double expected = 0;                    // 12 sqrt 2
  std::vector<double> block_values;       // six CHSH blocks, each ~ 2 sqrt 2
  double leftright_residual = 0;          // max || (Y^T (x) I - I (x) Y) phi ||
  double anticommutator_norm = 0;         // over the four observables
  EigencheckReport eigencheck;
  bool passed = false;
};
QuaternionSelfTest run_quaternion_selftest(double tol = 1e-9);

// Conjugates both parties' observables by independent random rotations
// exp(i eps H) (H random Hermitian, operator norm 1) while keeping the
// maximally entangled state, then re-evaluates the functional.  At eps = 0
// the value is exactly 12 sqrt 2; the deficit grows as O(eps^2).  Requires
// eps in [0, 1].
struct PerturbationReport {
  double epsilon = 0;
  double value = 0;
  double deficit = 0;  // quaternion_bound() - value
};
PerturbationReport perturb_and_evaluate(double epsilon, Rng& rng);

// ----- variational search -------------------------------------------------

// A dichotomic seesaw problem: local dimensions, input counts (all inputs
// binary-outcome), and the functional to maximize.
struct SeesawScenario {
  int dim_a = 2, dim_b = 2;
  int n_inputs_a = 2, n_inputs_b = 2;
  BellFunctional functional;
};

struct SeesawResult {
  double best_value = 0;
  Strategy best_strategy;
  int best_restart = 0;
  std::uint64_t seed = 0;
  std::vector<std::vector<double>> traces;  // per-restart per-iteration values
};

// Alternating maximization over +-1 observables and the shared state.  Each
// restart r draws fresh starting observables from Rng(seed + r) (balanced
// +-1 diagonals conjugated by Haar unitaries) and iterates
//   state <- top eigenvector of the current Bell operator,
//   A_x   <- Hermitian polar sign of the effective operator M C_x^T M^dagger,
//   B_y   <- likewise from Alice's side,
// until the value improves by less than 1e-12 or 10^4 iterations pass.  Every
// substep is an exact argmax, so each trace is non-decreasing.  Ties across
// restarts keep the earliest restart.  Throws std::invalid_argument if the
// functional references outcomes other than 0/1 or inputs out of range.
SeesawResult seesaw_optimize(const SeesawScenario& scenario, std::uint64_t seed,
                             int restarts);

// The scenario whose optimum the self-test certifies: dims (4,4), inputs
// (4,12), six-CHSH functional.
SeesawScenario quaternion_scenario();

// CHSH scenario at the given local dimensions (dims (1,1) recovers the
// classical bound 2, dims (2,2) the Tsirelson bound 2 sqrt 2).
SeesawScenario chsh_scenario(int dim_a = 2, int dim_b = 2);

}  // namespace bellkit
