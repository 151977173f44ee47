#include "bellkit/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace bellkit {

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

ComplexVector tensor(const ComplexVector& a, const ComplexVector& b) {
  ComplexVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i)
    out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

ComplexVector permute_factors(const ComplexVector& v, const std::vector<int>& dims,
                              const std::vector<int>& perm) {
  const int k = static_cast<int>(dims.size());
  if (static_cast<int>(perm.size()) != k)
    throw std::invalid_argument("permute_factors: dims/perm size mismatch");
  Eigen::Index total = 1;
  for (int d : dims) total *= d;
  if (v.size() != total)
    throw std::invalid_argument("permute_factors: vector length does not match dims");

  // Strides of each factor in the input index (most significant first).
  std::vector<Eigen::Index> stride(k, 1);
  for (int p = k - 2; p >= 0; --p) stride[p] = stride[p + 1] * dims[p + 1];

  std::vector<int> out_dims(k);
  for (int p = 0; p < k; ++p) out_dims[p] = dims[perm[p]];
  std::vector<Eigen::Index> out_stride(k, 1);
  for (int p = k - 2; p >= 0; --p) out_stride[p] = out_stride[p + 1] * out_dims[p + 1];

  ComplexVector out(total);
  std::vector<int> idx(k, 0);
  for (Eigen::Index lin = 0; lin < total; ++lin) {
    Eigen::Index rem = lin;
    for (int p = 0; p < k; ++p) {
      idx[p] = static_cast<int>(rem / stride[p]);
      rem %= stride[p];
    }
    Eigen::Index out_lin = 0;
    for (int p = 0; p < k; ++p) out_lin += out_stride[p] * idx[perm[p]];
    out(out_lin) = v(lin);
  }
  return out;
}

SchmidtForm schmidt_decompose(const ComplexVector& v, int dim_a, int dim_b, double tol) {
  if (v.size() != static_cast<Eigen::Index>(dim_a) * dim_b)
    throw std::invalid_argument("schmidt_decompose: vector length does not match dims");
  // Row-major reshape: v[i*dim_b + j] is the coefficient of |i>|j>.
  Eigen::Map<const ComplexMatrix> m(v.data(), dim_a, dim_b);
  Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);

  const RealVector& sv = svd.singularValues();
  int rank = 0;
  while (rank < sv.size() && sv(rank) > tol) ++rank;

  SchmidtForm out;
  out.rank = rank;
  out.coefficients = sv.head(rank);
  out.left_vectors = svd.matrixU().leftCols(rank);
  out.right_vectors = svd.matrixV().leftCols(rank).conjugate();
  return out;
}

std::pair<ComplexMatrix, ComplexMatrix> schmidt_rotations(const ComplexVector& v,
                                                          int dim_a, int dim_b) {
  if (v.size() != static_cast<Eigen::Index>(dim_a) * dim_b)
    throw std::invalid_argument("schmidt_rotations: vector length does not match dims");
  Eigen::Map<const ComplexMatrix> m(v.data(), dim_a, dim_b);
  Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  // (U^† M V^†ᵀ) = Sigma, so W_a = U^†, W_b = V^T.
  ComplexMatrix wa = svd.matrixU().adjoint();
  ComplexMatrix wb = svd.matrixV().transpose();
  return {wa, wb};
}

namespace {

// Polar-polish toward the nearest unitary matrix.
ComplexMatrix nearest_unitary(const ComplexMatrix& m) {
  Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

// Orthonormal Schur basis of a normal matrix together with the (near-)diagonal
// eigenvalues.  Exactly orthonormal even for degenerate spectra, which plain
// eigensolvers do not guarantee.
void normal_schur(const ComplexMatrix& u, Eigen::MatrixXcd& q, Eigen::VectorXcd& vals) {
  Eigen::ComplexSchur<Eigen::MatrixXcd> schur(u, /*computeU=*/true);
  if (schur.info() != Eigen::Success)
    throw std::runtime_error("schur decomposition failed");
  q = schur.matrixU();
  vals = schur.matrixT().diagonal();
}

constexpr double kSpectralClusterGap = 1e-8;

}  // namespace

ComplexMatrix takagi_symmetric_unitary(const ComplexMatrix& u, double tol) {
  const Eigen::Index d = u.rows();
  if (u.cols() != d) throw std::invalid_argument("takagi: matrix must be square");
  if ((u - u.transpose()).cwiseAbs().maxCoeff() > tol)
    throw std::invalid_argument("takagi: matrix is not symmetric");
  if (!is_unitary(u, std::max(tol, 1e-12) * 100))
    throw std::invalid_argument("takagi: matrix is not unitary");

  // Each eigenspace of a symmetric unitary is closed under entrywise
  // conjugation, so its (symmetrized) eigenprojector is real symmetric and
  // yields a real orthonormal eigenbasis.  Assembling those gives a real
  // orthogonal O with U = O D O^T, D diagonal unitary, and W = sqrt(D) O^T.
  Eigen::MatrixXcd q;
  Eigen::VectorXcd vals;
  normal_schur(u, q, vals);

  // Cluster eigenvalues by angle (they lie on the unit circle).
  std::vector<int> order(d);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int i, int j) { return std::arg(vals(i)) < std::arg(vals(j)); });

  std::vector<std::vector<int>> clusters;
  for (Eigen::Index i = 0; i < d; ++i) {
    if (clusters.empty() ||
        std::abs(vals(order[i]) - vals(clusters.back().back())) > kSpectralClusterGap)
      clusters.emplace_back();
    clusters.back().push_back(order[i]);
  }
  // The angular sort splits a cluster that straddles arg = ±pi; merge the ends.
  if (clusters.size() > 1 &&
      std::abs(vals(clusters.front().front()) - vals(clusters.back().back())) <=
          kSpectralClusterGap) {
    clusters.front().insert(clusters.front().end(), clusters.back().begin(),
                            clusters.back().end());
    clusters.pop_back();
  }

  RealMatrix o(d, d);
  Eigen::Index filled = 0;
  for (const std::vector<int>& cluster : clusters) {
    const Eigen::Index len = static_cast<Eigen::Index>(cluster.size());
    Eigen::MatrixXcd vspan(d, len);
    for (Eigen::Index t = 0; t < len; ++t) vspan.col(t) = q.col(cluster[t]);
    Eigen::MatrixXcd proj = vspan * vspan.adjoint();
    RealMatrix preal = ((proj + proj.conjugate()) / 2.0).real();
    Eigen::SelfAdjointEigenSolver<RealMatrix> es(preal);
    for (Eigen::Index t = 0; t < len; ++t)
      o.col(filled + t) = es.eigenvectors().col(d - 1 - t);
    filled += len;
  }
  o = nearest_unitary(o.cast<Complex>()).real();

  ComplexMatrix oc = o.cast<Complex>();
  ComplexMatrix dm = oc.transpose() * u * oc;
  ComplexMatrix w(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    Complex z = dm(i, i);
    w.row(i) = std::sqrt(z / std::abs(z)) * oc.col(i).transpose();
  }
  return w;
}

ComplexMatrix antisymmetric_unitary_factor(const ComplexMatrix& u, double tol) {
  const Eigen::Index d = u.rows();
  if (u.cols() != d || d % 2 != 0)
    throw std::invalid_argument(
        "antisymmetric factor: matrix must be square of even size");
  if ((u + u.transpose()).cwiseAbs().maxCoeff() > tol)
    throw std::invalid_argument("antisymmetric factor: matrix is not antisymmetric");
  if (!is_unitary(u, std::max(tol, 1e-12) * 100))
    throw std::invalid_argument("antisymmetric factor: matrix is not unitary");

  // Eigenvalues of an antisymmetric unitary come in (lambda, -lambda) pairs
  // with conjugated eigenvectors; an eigenvector v with Uv = lambda v yields
  // the real orthonormal pair (sqrt2 Re v, sqrt2 Im v) on which U acts as
  // (i lambda) J.  Keeping one representative per pair (arg in [0, pi)) gives
  // U = O (⊕_l z_l J) O^T and W = (⊕ sqrt(z_l) I_2) O^T.
  Eigen::MatrixXcd q;
  Eigen::VectorXcd vals;
  normal_schur(u, q, vals);

  std::vector<Eigen::Index> kept;
  for (Eigen::Index k = 0; k < d; ++k) {
    const double arg = std::arg(vals(k));
    if (arg >= -1e-12 && arg < M_PI - 1e-12) kept.push_back(k);
  }
  if (static_cast<Eigen::Index>(kept.size()) != d / 2)
    throw std::runtime_error("antisymmetric factor: failed to pair the spectrum");

  RealMatrix o(d, d);
  for (Eigen::Index pair = 0; pair < d / 2; ++pair) {
    const Eigen::VectorXcd& v = q.col(kept[pair]);
    o.col(2 * pair) = std::sqrt(2.0) * v.real();
    o.col(2 * pair + 1) = std::sqrt(2.0) * v.imag();
  }
  o = nearest_unitary(o.cast<Complex>()).real();

  ComplexMatrix oc = o.cast<Complex>();
  ComplexMatrix omega = oc.transpose() * u * oc;
  // Rows (l, l + d/2) of W carry the l-th plane so that the pair pattern is
  // J (x) I rather than the adjacent-pair pattern produced by the plane scan.
  ComplexMatrix w(d, d);
  for (Eigen::Index l = 0; l < d / 2; ++l) {
    Complex zl = omega(2 * l + 1, 2 * l);
    Complex wl = std::sqrt(zl / std::abs(zl));
    w.row(l) = wl * oc.col(2 * l).transpose();
    w.row(d / 2 + l) = wl * oc.col(2 * l + 1).transpose();
  }
  return w;
}

std::vector<ComplexMatrix> real_orthonormal_basis(const std::vector<ComplexMatrix>& mats,
                                                  double rank_tol) {
  std::vector<ComplexMatrix> basis;
  for (const ComplexMatrix& m : mats) {
    ComplexMatrix c = m;
    const double n0 = c.norm();
    if (n0 < 1e-14) continue;
    c /= n0;
    for (int pass = 0; pass < 2; ++pass)
      for (const ComplexMatrix& b : basis)
        c -= b.cwiseProduct(c.conjugate()).sum().real() * b;
    const double n1 = c.norm();
    if (n1 > rank_tol) basis.push_back(c / n1);
  }
  return basis;
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
  return m.rows() == m.cols() && (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool is_unitary(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return is_isometry(m, tol);
}

bool is_isometry(const ComplexMatrix& m, double tol) {
  return (m.adjoint() * m - ComplexMatrix::Identity(m.cols(), m.cols()))
             .cwiseAbs()
             .maxCoeff() <= tol;
}

double operator_norm(const ComplexMatrix& m) {
  return Eigen::JacobiSVD<ComplexMatrix>(m).singularValues()(0);
}

ComplexMatrix complete_isometry(const ComplexMatrix& v) {
  const Eigen::Index rows = v.rows(), cols = v.cols();
  if (cols > rows) throw std::invalid_argument("complete_isometry: more columns than rows");
  if (!is_isometry(v, 1e-8))
    throw std::invalid_argument("complete_isometry: columns are not orthonormal");
  ComplexMatrix out(rows, rows);
  out.leftCols(cols) = v;
  Eigen::HouseholderQR<ComplexMatrix> qr(v);
  ComplexMatrix q = qr.householderQ();
  out.rightCols(rows - cols) = q.rightCols(rows - cols);
  // QR can leave tiny overlaps with the given columns; re-project and polish.
  for (Eigen::Index j = cols; j < rows; ++j) {
    for (int pass = 0; pass < 2; ++pass)
      for (Eigen::Index i = 0; i < j; ++i)
        out.col(j) -= out.col(i) * (out.col(i).adjoint() * out.col(j));
    out.col(j).normalize();
  }
  return out;
}

std::vector<std::pair<int, int>> cluster_ranges(const RealVector& sorted_values, double gap) {
  std::vector<std::pair<int, int>> out;
  if (sorted_values.size() == 0) return out;
  int start = 0;
  for (int i = 1; i <= sorted_values.size(); ++i) {
    if (i == sorted_values.size() ||
        std::abs(sorted_values(i) - sorted_values(i - 1)) > gap) {
      out.emplace_back(start, i - start);
      start = i;
    }
  }
  return out;
}

}  // namespace bellkit
