#pragma once

#include <cstdint>
#include <random>

#include "bellkit/linalg.hpp"

namespace bellkit {

// Deterministic random source.  All transformations (uniform, normal, Haar)
// are implemented on top of the raw mt19937_64 stream so that a given seed
// produces bit-identical output on every platform, independent of the
// standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  // Uniform on [0, 1) with 53 bits of precision.
  double uniform();

  // Standard normal via the Box-Muller transform.
  double normal();

  // Standard complex normal: (normal + i normal) / sqrt(2).
  Complex complex_normal();

  // Uniformly random integer in [0, n).
  int uniform_int(int n);

  // Haar-distributed d x d unitary (QR of a complex Ginibre matrix with the
  // R-diagonal phase correction).
  ComplexMatrix haar_unitary(int d);

  // GUE-style random Hermitian matrix with O(1) entries.
  ComplexMatrix hermitian(int d);

  // Haar-random pure state of dimension d.
  ComplexVector state(int d);

 private:
  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace bellkit
