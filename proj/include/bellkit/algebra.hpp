#pragma once

#include <optional>
#include <vector>

#include "bellkit/linalg.hpp"

namespace bellkit {

/// Scalar field over which an algebra closure is taken.  `Complex` closure is
/// computed as the real closure of the generators together with i * identity,
/// so `real_dim` always counts real dimensions (2x the complex dimension for
/// a Complex-field closure).
enum class Field { Real, Complex };

// Result of closing a generating set under real-linear combinations,
// products, and adjoints.  `basis` is orthonormal for the real inner product
// Re tr(A^† B); `word_ops` holds one normalized word operator (a product of
// generators) per basis element, and `words` the corresponding
// generator-index sequences (empty word = identity).  The word operators span
// the same real space as the basis, which is what reduces "all words"
// statements to finite checks.
struct AlgebraClosure {
  int dim = 0;  // ambient dimension d (matrices are d x d)
  Field field = Field::Real;
  std::vector<ComplexMatrix> basis;
  std::vector<ComplexMatrix> word_ops;
  std::vector<std::vector<int>> words;
  bool contains_i_identity = false;
  bool complete = true;  // false when stopped early at i * identity

  int real_dim() const { return static_cast<int>(basis.size()); }
};

struct ClosureOptions {
  double rank_tol = kGapTol;
  // Stop as soon as i * identity is reached (the closure is then known to be
  // the full complex algebra of its completion, so callers that only need
  // that fact can skip the rest of the work).
  bool stop_at_i_identity = false;
};

// Real unital *-algebra generated by the given matrices, computed by
// breadth-first multiplication of generator words with Gram-Schmidt
// acceptance.  Non-Hermitian generators are closed under adjoints by
// extending the alphabet.  Throws if the generators are not square matrices
// of equal size, or the list is empty.
AlgebraClosure real_algebra_closure(const std::vector<ComplexMatrix>& generators,
                                    const ClosureOptions& opts = {});

// Closure over the requested field.  Field::Real is real_algebra_closure;
// Field::Complex adjoins i * identity to the generators first, so the result
// spans the complex unital *-algebra (with real_dim twice its complex
// dimension and contains_i_identity trivially true).
AlgebraClosure close_algebra(const std::vector<ComplexMatrix>& generators, Field field,
                             const ClosureOptions& opts = {});

// Distance of m from the real span of an orthonormal family, relative to
// ||m||.  Returns 0 for m = 0.
double span_residual(const std::vector<ComplexMatrix>& basis, const ComplexMatrix& m);

// C-basis of the commutant {T : [T, g] = 0 for all generators} of the complex
// algebra generated, computed as the null space of the stacked commutator
// maps.  The generators' adjoints are included in the conditions, so the
// commutant is *-closed.
std::vector<ComplexMatrix> commutant(const std::vector<ComplexMatrix>& generators,
                                     double tol = kGapTol);

// Dimension of the commutant; 1 means the algebra acts irreducibly
// (equivalently, the complex closure is all of M_d, i.e. real_dim = 2d^2).
int commutant_dimension(const std::vector<ComplexMatrix>& generators,
                        double tol = kGapTol);

bool is_irreducible(const std::vector<ComplexMatrix>& generators, double tol = kGapTol);

// Solution space of U g = conj(g) U over all generators, i.e. conjugation
// intertwiners of the generated real algebra, computed as the null space of
// the positive semidefinite normal operator sum_g L_g^† L_g.  Returned as
// Frobenius-normalized matrices; the span is a complex subspace.
std::vector<ComplexMatrix> conjugation_intertwiners(
    const std::vector<ComplexMatrix>& generators, double tol = kGapTol);

// A unitary U with U g U^† = conj(g) for all generators, together with the
// sign lambda in U conj(U) = lambda * Id (+1: the family is conjugate to a
// real one; -1: quaternionic type).  lambda is invariant under rescaling U.
struct AntiunitaryIntertwiner {
  ComplexMatrix u;
  int indicator = 0;  // +1 or -1
};

// For an irreducible family, the intertwiner space is 0- or 1-dimensional
// over C (Schur); returns the unitary-normalized solution and its sign, or
// nullopt when the space is zero.  Throws std::invalid_argument on reducible
// input and std::runtime_error if normalization fails numerically.
std::optional<AntiunitaryIntertwiner> antiunitary_intertwiner(
    const std::vector<ComplexMatrix>& generators, double tol = kGapTol);

// The three Schur types of an irreducible real *-algebra.
enum class AlgebraTag { RealType, ComplexType, QuaternionType };

struct StructureType {
  AlgebraTag tag = AlgebraTag::ComplexType;
  std::optional<ComplexMatrix> intertwiner;  // unitary U with U g U^† = conj(g)
  std::optional<int> indicator;              // lambda = +1 (real) or -1 (quaternion)
};

const char* to_string(AlgebraTag tag);

// ComplexType iff no conjugation intertwiner exists (equivalently, the real
// closure contains i * identity); otherwise RealType / QuaternionType by the
// indicator sign.  Throws std::invalid_argument on reducible input.
StructureType structure_type(const std::vector<ComplexMatrix>& generators,
                             double tol = kGapTol);

// For a RealType family, a unitary W (from the Takagi factorization
// U = W^T W of the symmetric intertwiner) such that every W g W^† has real
// entries.  Throws std::invalid_argument unless structure_type is RealType.
ComplexMatrix realize_real_basis(const std::vector<ComplexMatrix>& generators,
                                 double tol = kGapTol);

// For a QuaternionType family on even ambient dimension d, a unitary W (from
// the factorization U = W^T K W of the antisymmetric intertwiner, where
// K = tensor([[0,-1],[1,0]], I_{d/2})) such that every Y = W g W^† satisfies
// conj(Y) = K Y K^†, i.e. lies in the image of the quaternionic embedding.
// Throws std::invalid_argument unless structure_type is QuaternionType.
ComplexMatrix realize_quaternion_basis(const std::vector<ComplexMatrix>& generators,
                                       double tol = kGapTol);

struct AlgebraBlock {
  ComplexMatrix isometry;  // ambient_dim x block_dim, orthonormal columns
  std::vector<ComplexMatrix> generators;  // compressions V^† g V
};

struct BlockDecomposition {
  std::vector<AlgebraBlock> blocks;  // ranges are orthogonal and sum to Id
};

// Splits the ambient space into invariant blocks on which the generated
// algebra acts irreducibly, by eigen-clustering random Hermitian commutant
// elements (deterministic internal seed) and recursing.  For an irreducible
// family this is a single block with isometry Id.
BlockDecomposition block_decompose(const std::vector<ComplexMatrix>& generators,
                                   double tol = kGapTol);

}  // namespace bellkit
