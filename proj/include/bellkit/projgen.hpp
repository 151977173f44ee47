#pragma once

#include <utility>
#include <vector>

#include "bellkit/algebra.hpp"
#include "bellkit/quaternion.hpp"

namespace bellkit {

// A family of complex 2n x 2n projections (images of quaternionic n x n
// projections under the block embedding) expected to generate the full
// quaternionic matrix algebra, of real dimension 4 n^2.
struct ProjectionFamily {
  int n = 0;
  std::vector<ComplexMatrix> projections;
  int expected_real_dim = 0;  // 4 n^2
};

// The generating families: four projections for n in {2, 3} (diag(1,0),
// half all-ones, the i- and j- rank-one projections; for n = 3 the rank-ones
// are v v*/3 with v = (1,i,1) and (1,j,1)), three projections for n >= 4
// (P1 = (+) diag(1,0) blocks, P2 = (+) angle blocks with theta_l = pi/(l+2),
// both with a zero 1x1 tail for odd n, and P3 = v v*/n with
// v* = (1, i, 1, j, 1, ..., 1)).  Throws std::invalid_argument for n < 2 or
// n > 16 (closure cost cap).
ProjectionFamily projections_quaternion(int n);

struct GenerationReport {
  int real_dim = 0;              // dim_R of the real unital *-closure
  int stabilization_length = 0;  // longest word that still added a dimension
  bool irreducible = false;
  StructureType structure;
  bool passed = false;  // real_dim == 4n^2 && QuaternionType && irreducible
};
GenerationReport verify_generation(const ProjectionFamily& fam, double tol = kGapTol);

// The documented negative instance at n = 2: the first three projections are
// complex-entried, so their real closure stays inside the embedded M_2(C)
// (dimension at most 8 < 16); dropping the third (keeping the j-projection)
// also fails to generate; all four together reach 16.
struct NegativeCheckReport {
  int dim_first_three = 0;  // <= 8
  int dim_without_p3 = 0;   // < 16
  int dim_all_four = 0;     // == 16 (control)
  bool passed = false;
};
NegativeCheckReport negative_check_three_projections_n2();

// Jordan's lemma, numerically: a unitary U such that U P U^† and U Q U^† are
// simultaneously block-diagonal with real 1x1 / 2x2 blocks, plus the block
// sizes in order.  Built from the spectrum of B = P + Q - Id: eigenvectors
// with |beta| = 1 give 1x1 blocks (P = Q there), the beta = 0 space splits
// along A = P - Q into 1x1 blocks, and each eigenvector u with
// 0 < beta < 1 pairs with A u into a 2x2 real block.  Throws
// std::invalid_argument if either input is not a projection.
std::pair<ComplexMatrix, std::vector<int>> jordan_pair_blocks(const ComplexMatrix& p,
                                                              const ComplexMatrix& q,
                                                              double tol = 1e-7);

}  // namespace bellkit
