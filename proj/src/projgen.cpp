#include "bellkit/projgen.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace bellkit {

namespace {

const Quaternion kOne{1, 0, 0, 0};
const Quaternion kHalf{0.5, 0, 0, 0};
const Quaternion kI{0, 1, 0, 0};
const Quaternion kJ{0, 0, 1, 0};

// Rank-one quaternionic projection v v* / (v* v) from a unit-norm-entry
// vector (entry norms 1, so v* v = n).
QuaternionMatrix rank_one_projection(const std::vector<Quaternion>& v) {
  const int n = static_cast<int>(v.size());
  QuaternionMatrix p(n, n);
  for (int l = 0; l < n; ++l)
    for (int m = 0; m < n; ++m)
      p.set(l, m, (1.0 / n) * (v[l] * v[m].conjugate()));
  return p;
}

std::vector<QuaternionMatrix> family_n2() {
  QuaternionMatrix p1(2, 2), p2(2, 2), p3(2, 2), p4(2, 2);
  p1.set(0, 0, kOne);
  for (int l = 0; l < 2; ++l)
    for (int m = 0; m < 2; ++m) p2.set(l, m, kHalf);
  p3.set(0, 0, kHalf);
  p3.set(0, 1, -0.5 * kI);
  p3.set(1, 0, 0.5 * kI);
  p3.set(1, 1, kHalf);
  p4.set(0, 0, kHalf);
  p4.set(0, 1, -0.5 * kJ);
  p4.set(1, 0, 0.5 * kJ);
  p4.set(1, 1, kHalf);
  return {p1, p2, p3, p4};
}

std::vector<QuaternionMatrix> family_n3() {
  QuaternionMatrix p1(3, 3), p2(3, 3);
  p1.set(0, 0, kOne);
  for (int l = 0; l < 2; ++l)
    for (int m = 0; m < 2; ++m) p2.set(l, m, kHalf);
  return {p1, p2, rank_one_projection({kOne, kI, kOne}),
          rank_one_projection({kOne, kJ, kOne})};
}

std::vector<QuaternionMatrix> family_general(int n) {
  QuaternionMatrix p1(n, n), p2(n, n);
  for (int l = 0; l < n / 2; ++l) {
    p1.set(2 * l, 2 * l, kOne);
    const double theta = std::numbers::pi / (l + 3);  // theta_l = pi/(l+2), l >= 1
    const double c = std::cos(theta), s = std::sin(theta);
    p2.set(2 * l, 2 * l, Quaternion{c * c, 0, 0, 0});
    p2.set(2 * l, 2 * l + 1, Quaternion{c * s, 0, 0, 0});
    p2.set(2 * l + 1, 2 * l, Quaternion{c * s, 0, 0, 0});
    p2.set(2 * l + 1, 2 * l + 1, Quaternion{s * s, 0, 0, 0});
  }
  std::vector<Quaternion> v(n, kOne);
  v[1] = kI.conjugate();  // v* = (1, i, 1, j, 1, ..., 1)
  v[3] = kJ.conjugate();
  return {p1, p2, rank_one_projection(v)};
}

}  // namespace

ProjectionFamily projections_quaternion(int n) {
  if (n < 2) throw std::invalid_argument("projections_quaternion: n must be >= 2");
  if (n > 16)
    throw std::invalid_argument("projections_quaternion: n capped at 16 (closure cost)");
  std::vector<QuaternionMatrix> quats;
  if (n == 2)
    quats = family_n2();
  else if (n == 3)
    quats = family_n3();
  else
    quats = family_general(n);

  ProjectionFamily fam;
  fam.n = n;
  fam.expected_real_dim = 4 * n * n;
  for (const QuaternionMatrix& q : quats) fam.projections.push_back(phi_embed(q));
  return fam;
}

GenerationReport verify_generation(const ProjectionFamily& fam, double tol) {
  GenerationReport rep;
  ClosureOptions opts;
  opts.rank_tol = tol;
  const AlgebraClosure closure = close_algebra(fam.projections, Field::Real, opts);
  rep.real_dim = closure.real_dim();
  for (const auto& word : closure.words)
    rep.stabilization_length =
        std::max(rep.stabilization_length, static_cast<int>(word.size()));
  rep.irreducible = is_irreducible(fam.projections, tol);
  if (rep.irreducible) rep.structure = structure_type(fam.projections, tol);
  rep.passed = rep.real_dim == fam.expected_real_dim && rep.irreducible &&
               rep.structure.tag == AlgebraTag::QuaternionType;
  return rep;
}

NegativeCheckReport negative_check_three_projections_n2() {
  const ProjectionFamily fam = projections_quaternion(2);
  auto dim_of = [](std::vector<ComplexMatrix> gens) {
    return real_algebra_closure(gens).real_dim();
  };
  NegativeCheckReport rep;
  rep.dim_first_three =
      dim_of({fam.projections[0], fam.projections[1], fam.projections[2]});
  rep.dim_without_p3 =
      dim_of({fam.projections[0], fam.projections[1], fam.projections[3]});
  rep.dim_all_four = dim_of(fam.projections);
  rep.passed = rep.dim_first_three <= 8 && rep.dim_without_p3 < 16 &&
               rep.dim_all_four == 16;
  return rep;
}

std::pair<ComplexMatrix, std::vector<int>> jordan_pair_blocks(const ComplexMatrix& p,
                                                              const ComplexMatrix& q,
                                                              double tol) {
  const auto check_projection = [](const ComplexMatrix& m, const char* name) {
    if (m.rows() != m.cols() || !is_hermitian(m, 1e-8) || (m * m - m).norm() > 1e-8)
      throw std::invalid_argument(std::string("jordan_pair_blocks: ") + name +
                                  " is not a projection");
  };
  check_projection(p, "P");
  check_projection(q, "Q");
  if (p.rows() != q.rows())
    throw std::invalid_argument("jordan_pair_blocks: size mismatch");

  const Eigen::Index d = p.rows();
  const ComplexMatrix a = p - q;
  const ComplexMatrix b = p + q - ComplexMatrix::Identity(d, d);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(b);
  const RealVector& beta = es.eigenvalues();

  ComplexMatrix basis(d, d);
  std::vector<int> sizes;
  Eigen::Index filled = 0;
  std::vector<Eigen::Index> zero_space;  // beta ~ 0: split along A instead

  for (Eigen::Index i = 0; i < d; ++i) {
    const double bi = beta(i);
    if (std::abs(bi) <= tol) {
      zero_space.push_back(i);
    } else if (std::abs(bi) >= 1.0 - tol) {
      // P = Q (= Id or 0) on this vector.
      basis.col(filled++) = es.eigenvectors().col(i);
      sizes.push_back(1);
    } else if (bi > 0.0) {
      // Pair (u, A u / ||A u||): A is a bijection onto the -beta eigenspace,
      // so emitting pairs from the positive side covers it exactly.
      const ComplexVector u = es.eigenvectors().col(i);
      const ComplexVector au = a * u;
      if (au.norm() < tol)
        throw std::runtime_error("jordan_pair_blocks: degenerate pairing");
      basis.col(filled++) = u;
      basis.col(filled++) = au / au.norm();
      sizes.push_back(2);
    }
    // bi < 0 strictly inside (-1, 0): covered as the partner of a +beta pair.
  }

  if (!zero_space.empty()) {
    // Here A^2 = Id, so A splits the space into +-1 eigenspaces with P = Id
    // or 0 on each: 1x1 blocks.
    ComplexMatrix vc(d, static_cast<Eigen::Index>(zero_space.size()));
    for (size_t k = 0; k < zero_space.size(); ++k)
      vc.col(static_cast<Eigen::Index>(k)) = es.eigenvectors().col(zero_space[k]);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> esa(
        ((vc.adjoint() * a * vc + (vc.adjoint() * a * vc).adjoint()) / 2.0).eval());
    for (Eigen::Index k = 0; k < esa.eigenvalues().size(); ++k) {
      basis.col(filled++) = vc * esa.eigenvectors().col(k);
      sizes.push_back(1);
    }
  }

  if (filled != d) throw std::runtime_error("jordan_pair_blocks: basis incomplete");
  if (!is_unitary(basis, 1e-7))
    throw std::runtime_error("jordan_pair_blocks: assembled basis is not unitary");
  return {basis.adjoint(), std::move(sizes)};
}

}  // namespace bellkit
