#pragma once

#include "bellkit/strategy.hpp"

namespace bellkit {

// Maximally entangled state sum_i |ii> / sqrt(d) on C^d (x) C^d.
ComplexVector max_entangled_state(int d);

// Pauli matrices on C^2.
ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();

// Optimal CHSH strategy: state phi_2, Alice observables {Z, X}, Bob
// observables {(Z + X)/sqrt2, (Z - X)/sqrt2}.  The CHSH functional
// <A0B0> + <A0B1> + <A1B0> - <A1B1> evaluates to 2 sqrt 2.
Strategy chsh_strategy();

// Three-Pauli strategy: state phi_2, both parties measuring {X, Y, Z}.  A
// minimal strategy whose correlations cannot be produced with real operators:
// the observable word (A_X A_Y | B_Z) has moment i.
Strategy pauli3_strategy();

// A strategy on phi_2 with all observables real symmetric ({Z, X} for both
// parties); classifies as real.
Strategy real_pair_strategy();

}  // namespace bellkit
