#pragma once

#include <Eigen/Dense>

#include <complex>
#include <utility>
#include <vector>

namespace bellkit {

using Complex = std::complex<double>;

/// Dense complex matrix, row-major (matches the on-disk entry order).
using ComplexMatrix =
    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ComplexVector = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Global default tolerance for residual checks.
inline constexpr double kDefaultTol = 1e-9;

/// Gap threshold for numerical rank decisions and eigenvalue cluster splits.
inline constexpr double kGapTol = 1e-7;

/// Kronecker product; the first factor owns the most significant index,
/// i.e. (A otimes B)[(i,k),(j,l)] = A(i,j) * B(k,l).
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVector tensor(const ComplexVector& a, const ComplexVector& b);

/// Reorders the tensor factors of a vector.  `dims` are the factor dimensions
/// in the current order (most significant first); entry p of `perm` names the
/// current factor that becomes factor p of the result.
ComplexVector permute_factors(const ComplexVector& v, const std::vector<int>& dims,
                              const std::vector<int>& perm);

/// Schmidt decomposition of a bipartite vector: v = sum_k c_k u_k (x) w_k with
/// c_1 >= c_2 >= ... > tol, orthonormal u_k (columns of left_vectors) and w_k
/// (columns of right_vectors).
struct SchmidtForm {
  RealVector coefficients;
  ComplexMatrix left_vectors;
  ComplexMatrix right_vectors;
  int rank = 0;
};

SchmidtForm schmidt_decompose(const ComplexVector& v, int dim_a, int dim_b,
                              double tol = kDefaultTol);

/// Full local rotations (W_a, W_b) such that (W_a (x) W_b) v has a real
/// nonnegative diagonal coefficient matrix (Schmidt basis on both sides).
std::pair<ComplexMatrix, ComplexMatrix> schmidt_rotations(const ComplexVector& v,
                                                          int dim_a, int dim_b);

/// Factorizes a symmetric unitary U as U = W^T W with W unitary.
/// Throws std::invalid_argument if U is not symmetric or not unitary.
ComplexMatrix takagi_symmetric_unitary(const ComplexMatrix& u, double tol = kDefaultTol);

/// Factorizes an antisymmetric unitary U as U = W^T K W with W unitary and
/// K = tensor([[0,-1],[1,0]], I_{d/2}).  Throws if U is not antisymmetric
/// unitary (requires even dimension).
ComplexMatrix antisymmetric_unitary_factor(const ComplexMatrix& u, double tol = kDefaultTol);

/// Orthonormal basis (w.r.t. <A,B> = Re Tr(A^† B)) of the real span of the
/// given matrices; zero/dependent directions are dropped.
std::vector<ComplexMatrix> real_orthonormal_basis(const std::vector<ComplexMatrix>& mats,
                                                  double rank_tol = kGapTol);

/// Max-norm residuals used throughout for structural checks.
bool is_hermitian(const ComplexMatrix& m, double tol = kDefaultTol);
bool is_unitary(const ComplexMatrix& m, double tol = kDefaultTol);
bool is_isometry(const ComplexMatrix& m, double tol = kDefaultTol);

/// Largest singular value.
double operator_norm(const ComplexMatrix& m);

/// Extends a D x r isometry to a full D x D unitary (first r columns kept).
ComplexMatrix complete_isometry(const ComplexMatrix& v);

/// Splits a sorted value sequence into clusters separated by gaps > `gap`.
/// Returns (first index, length) per cluster.
std::vector<std::pair<int, int>> cluster_ranges(const RealVector& sorted_values,
                                                double gap = kGapTol);

}  // namespace bellkit
