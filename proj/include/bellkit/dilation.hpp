#pragma once

#include <vector>

#include "bellkit/strategy.hpp"

namespace bellkit {

// Certificate that one strategy locally dilates to a canonical one.  For a
// standard dilation, u_* map H -> H_canonical (x) H_aux and aux1 is zero (or
// empty).  For a complex dilation, u_* map H -> H_canonical (x) H_aux (x) C^2
// (a two-dimensional conjugation register, least significant factor), and the
// subnormalized aux vectors satisfy <aux0|aux0> + <aux1|aux1> = 1.  The aux
// vectors live on the combined auxiliary space H_auxA (x) H_auxB, whose
// dimensions are inferred from the isometries at check time.
struct DilationWitness {
  ComplexMatrix u_a, u_b;
  ComplexVector aux0, aux1;
};

// Residuals of the defining vector equations of a dilation check.
struct ResidualReport {
  double state_residual = 0;
  std::vector<std::vector<double>> alice_residuals;  // [input][outcome]
  std::vector<std::vector<double>> bob_residuals;
  double max_residual = 0;
  double tolerance = kDefaultTol;
  bool passed = false;
};

// Checks that `canonical` is a local dilation of `s` via the witness:
//   (u_a (x) u_b) (E_xa (x) Id)|psi> = ((E~_xa (x) Id)|psi~>) (x) |aux0>
// (factor-reordered; likewise for Bob and for the bare state).  Requires
// w.aux1 empty or zero.  Throws std::invalid_argument on shape mismatch,
// non-isometric u_*, or aux normalization violation.
ResidualReport check_local_dilation(const Strategy& s, const Strategy& canonical,
                                    const DilationWitness& w, double tol = kDefaultTol);

// Checks that `canonical` is a complex local dilation of `s`:
//   (u_a (x) u_b) (E_xa (x) Id)|psi>
//     = ((E~_xa (x) Id)|psi~>) |aux0> |00>  +  ((conj(E~_xa) (x) Id)|conj(psi~)>) |aux1> |11>
// with |00>, |11> on the two conjugation registers (factor-reordered;
// likewise for Bob and the bare state).  Errors as above.
ResidualReport check_complex_local_dilation(const Strategy& s, const Strategy& canonical,
                                            const DilationWitness& w,
                                            double tol = kDefaultTol);

// Re-expresses a direct-sum complex-dilation witness in the canonical
// register form, so the same checker serves both formulations.  The
// direct-sum isometries map H -> (H_canonical (x) H_aux) (+) (H_canonical (x)
// H_aux) with the 0-branch rows first; the equivalent register-form isometry
// interleaves the branches into the C^2 register.
DilationWitness register_form_witness(const ComplexMatrix& v_a, const ComplexMatrix& v_b,
                                      const ComplexVector& aux0,
                                      const ComplexVector& aux1, int dim_canonical_a,
                                      int dim_canonical_b);

// Naimark dilation: returns a projective strategy with the same correlation.
// Each party whose effects are not all projections moves to an enlarged space
// C^m (x) H (m = that party's largest outcome count); a party that is already
// projective is returned unchanged.  The per-input PVMs come from completing
// the stacked square-root isometries, with any unused host outcomes folded
// into the input's last outcome.
Strategy naimark_dilate(const Strategy& s, double tol = kDefaultTol);

// Cuts both local spaces down to the supports of the reduced states.  The
// result is full-rank with the same correlation.  Throws
// std::invalid_argument naming the violating commutator when the strategy is
// not support-preserving.
Strategy restrict_to_support(const Strategy& s, double tol = kDefaultTol);

// The canonical witness certifying that S is a complex local dilation of its
// real simulation:  check_complex_local_dilation(real_simulation(s), s, w)
// passes.  Each u_* rotates the party's conjugation register from the
// |+i>/|-i> basis to the computational basis and moves it behind the original
// space; aux0 = aux1 = 1/sqrt(2) (scalars).
DilationWitness real_simulation_dilation_witness(const Strategy& s);

}  // namespace bellkit
