#include "bellkit/algebra.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <deque>
#include <stdexcept>
#include <string>
#include <utility>

#include "bellkit/rand.hpp"

namespace bellkit {

namespace {

double real_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  // Re tr(a^† b) as an elementwise sum, avoiding the matrix product.
  return a.cwiseProduct(b.conjugate()).sum().real();
}

// Projects m onto the orthogonal complement of the (orthonormal) basis, with
// a second pass for numerical stability.
void project_out(const std::vector<ComplexMatrix>& basis, ComplexMatrix& m) {
  for (int pass = 0; pass < 2; ++pass)
    for (const ComplexMatrix& b : basis) m -= real_inner(b, m) * b;
}

}  // namespace

AlgebraClosure real_algebra_closure(const std::vector<ComplexMatrix>& generators,
                                    const ClosureOptions& opts) {
  if (generators.empty())
    throw std::invalid_argument("real_algebra_closure: no generators");
  const Eigen::Index d = generators[0].rows();
  for (const ComplexMatrix& g : generators)
    if (g.rows() != d || g.cols() != d)
      throw std::invalid_argument(
          "real_algebra_closure: generators must be square matrices of equal size");
  const int max_dim = static_cast<int>(2 * d * d);

  // Alphabet: generators, plus adjoints of those that are not Hermitian.
  std::vector<ComplexMatrix> alphabet = generators;
  for (const ComplexMatrix& g : generators)
    if (!is_hermitian(g, 1e-12)) alphabet.push_back(g.adjoint());

  AlgebraClosure out;
  out.dim = static_cast<int>(d);
  out.field = Field::Real;
  ComplexMatrix i_id_residual =
      Complex(0, 1) * ComplexMatrix::Identity(d, d) / std::sqrt(static_cast<double>(d));

  // Accepts a candidate word operator; returns true if it enlarged the span.
  auto accept = [&](const ComplexMatrix& op, std::vector<int> word) -> bool {
    const double scale = op.norm();
    if (scale < 1e-14) return false;
    ComplexMatrix normalized = op / scale;
    ComplexMatrix residual = normalized;
    project_out(out.basis, residual);
    const double r = residual.norm();
    if (r <= opts.rank_tol) return false;
    residual /= r;
    i_id_residual -= real_inner(residual, i_id_residual) * residual;
    out.basis.push_back(std::move(residual));
    out.word_ops.push_back(std::move(normalized));
    out.words.push_back(std::move(word));
    if (out.real_dim() > max_dim)
      throw std::runtime_error(
          "real_algebra_closure: dimension exceeded 2 d^2; rank tolerance too tight");
    if (i_id_residual.norm() <= opts.rank_tol) out.contains_i_identity = true;
    return true;
  };

  std::deque<int> queue;  // indices of accepted elements whose children are pending
  accept(ComplexMatrix::Identity(d, d), {});
  queue.push_back(0);

  while (!queue.empty()) {
    if (out.contains_i_identity && opts.stop_at_i_identity) {
      out.complete = false;
      return out;
    }
    const int idx = queue.front();
    queue.pop_front();
    // Word [l1 ... lk] has operator M(lk) ... M(l1), so appending a letter
    // multiplies on the left.
    const ComplexMatrix parent = out.word_ops[idx];
    const std::vector<int> parent_word = out.words[idx];
    for (int gi = 0; gi < static_cast<int>(alphabet.size()); ++gi) {
      std::vector<int> word = parent_word;
      word.push_back(gi);
      if (accept(alphabet[gi] * parent, std::move(word)))
        queue.push_back(out.real_dim() - 1);
    }
  }
  return out;
}

AlgebraClosure close_algebra(const std::vector<ComplexMatrix>& generators, Field field,
                             const ClosureOptions& opts) {
  if (field == Field::Real) return real_algebra_closure(generators, opts);
  if (generators.empty())
    throw std::invalid_argument("close_algebra: no generators");
  const Eigen::Index d = generators[0].rows();
  std::vector<ComplexMatrix> extended = generators;
  extended.push_back(Complex(0, 1) * ComplexMatrix::Identity(d, d));
  AlgebraClosure out = real_algebra_closure(extended, opts);
  out.field = Field::Complex;
  return out;
}

double span_residual(const std::vector<ComplexMatrix>& basis, const ComplexMatrix& m) {
  const double scale = m.norm();
  if (scale < 1e-300) return 0.0;
  ComplexMatrix r = m / scale;
  project_out(basis, r);
  return r.norm();
}

namespace {

// Null space of sum_g L_g^† L_g where L_g encodes a linear condition on a
// d x d matrix T via its row-major vectorization:
//   T g     <->  kron(Id, g^T) vec(T)
//   h T     <->  kron(h, Id)   vec(T)
std::vector<ComplexMatrix> normal_null_space(
    const std::vector<std::pair<ComplexMatrix, ComplexMatrix>>& conditions,
    Eigen::Index d, double tol) {
  const Eigen::Index n = d * d;
  ComplexMatrix h = ComplexMatrix::Zero(n, n);
  const ComplexMatrix id = ComplexMatrix::Identity(d, d);
  for (const auto& [right, left] : conditions) {
    ComplexMatrix l = tensor(id, right.transpose()) - tensor(left, id);
    h += l.adjoint() * l;
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
  std::vector<ComplexMatrix> out;
  for (Eigen::Index k = 0; k < n; ++k) {
    if (es.eigenvalues()(k) > tol) break;
    ComplexMatrix t(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
      t.row(i) = es.eigenvectors().col(k).segment(i * d, d).transpose();
    out.push_back(t / t.norm());
  }
  return out;
}

std::vector<std::pair<ComplexMatrix, ComplexMatrix>> commutator_conditions(
    const std::vector<ComplexMatrix>& generators) {
  // [T, g] = 0  <=>  T g - g T = 0, plus the adjoint condition for
  // non-Hermitian generators so the commutant is *-closed.
  std::vector<std::pair<ComplexMatrix, ComplexMatrix>> conditions;
  for (const ComplexMatrix& g : generators) {
    conditions.emplace_back(g, g);
    if (!is_hermitian(g, 1e-12)) conditions.emplace_back(g.adjoint(), g.adjoint());
  }
  return conditions;
}

}  // namespace

std::vector<ComplexMatrix> commutant(const std::vector<ComplexMatrix>& generators,
                                     double tol) {
  if (generators.empty())
    throw std::invalid_argument("commutant: no generators");
  return normal_null_space(commutator_conditions(generators), generators[0].rows(), tol);
}

int commutant_dimension(const std::vector<ComplexMatrix>& generators, double tol) {
  return static_cast<int>(commutant(generators, tol).size());
}

bool is_irreducible(const std::vector<ComplexMatrix>& generators, double tol) {
  return commutant_dimension(generators, tol) == 1;
}

std::vector<ComplexMatrix> conjugation_intertwiners(
    const std::vector<ComplexMatrix>& generators, double tol) {
  if (generators.empty())
    throw std::invalid_argument("conjugation_intertwiners: no generators");
  const Eigen::Index d = generators[0].rows();
  // U g = conj(g) U for every generator (and adjoints, for non-Hermitian ones).
  std::vector<std::pair<ComplexMatrix, ComplexMatrix>> conditions;
  for (const ComplexMatrix& g : generators) {
    conditions.emplace_back(g, g.conjugate());
    if (!is_hermitian(g, 1e-12))
      conditions.emplace_back(g.adjoint(), g.adjoint().conjugate());
  }
  return normal_null_space(conditions, d, tol);
}

std::optional<AntiunitaryIntertwiner> antiunitary_intertwiner(
    const std::vector<ComplexMatrix>& generators, double tol) {
  if (!is_irreducible(generators, tol))
    throw std::invalid_argument("antiunitary_intertwiner: generators are reducible");
  const std::vector<ComplexMatrix> solutions = conjugation_intertwiners(generators, tol);
  if (solutions.empty()) return std::nullopt;
  // Schur: for irreducible input the solution space has complex dimension 1.
  const ComplexMatrix& t = solutions.front();
  const auto d = static_cast<double>(t.rows());
  // T^† T commutes with the whole algebra, hence equals alpha * Id; enforce
  // the scalar by averaging, then rescale to a unitary.
  const double alpha = (t.adjoint() * t).trace().real() / d;
  if (!(alpha > 0))
    throw std::runtime_error("antiunitary_intertwiner: degenerate solution");
  ComplexMatrix u = t / std::sqrt(alpha);
  if (!is_unitary(u, 1e-6))
    throw std::runtime_error(
        "antiunitary_intertwiner: solution did not normalize to a unitary");
  const Complex lambda = (u * u.conjugate()).trace() / d;
  if (std::abs(lambda.imag()) > 1e-6 || std::abs(std::abs(lambda.real()) - 1.0) > 1e-6)
    throw std::runtime_error("antiunitary_intertwiner: indicator is not a sign");
  AntiunitaryIntertwiner out;
  out.u = std::move(u);
  out.indicator = lambda.real() > 0 ? 1 : -1;
  return out;
}

const char* to_string(AlgebraTag tag) {
  switch (tag) {
    case AlgebraTag::RealType: return "RealType";
    case AlgebraTag::ComplexType: return "ComplexType";
    case AlgebraTag::QuaternionType: return "QuaternionType";
  }
  return "?";
}

StructureType structure_type(const std::vector<ComplexMatrix>& generators, double tol) {
  const auto found = antiunitary_intertwiner(generators, tol);
  StructureType out;
  if (!found) {
    out.tag = AlgebraTag::ComplexType;
    return out;
  }
  out.tag = found->indicator > 0 ? AlgebraTag::RealType : AlgebraTag::QuaternionType;
  out.intertwiner = found->u;
  out.indicator = found->indicator;
  return out;
}

ComplexMatrix realize_real_basis(const std::vector<ComplexMatrix>& generators,
                                 double tol) {
  const StructureType st = structure_type(generators, tol);
  if (st.tag != AlgebraTag::RealType)
    throw std::invalid_argument(std::string("realize_real_basis: structure type is ") +
                                to_string(st.tag) + ", not RealType");
  // Indicator +1 means U conj(U) = Id, i.e. U is symmetric; the symmetrization
  // only strips numerical noise.  U = W^T W then gives conj(W) U = W, so every
  // W g W^† equals its own conjugate.
  const ComplexMatrix u = ((*st.intertwiner + st.intertwiner->transpose()) / 2.0).eval();
  return takagi_symmetric_unitary(u, 1e-7);
}

ComplexMatrix realize_quaternion_basis(const std::vector<ComplexMatrix>& generators,
                                       double tol) {
  const StructureType st = structure_type(generators, tol);
  if (st.tag != AlgebraTag::QuaternionType)
    throw std::invalid_argument(
        std::string("realize_quaternion_basis: structure type is ") + to_string(st.tag) +
        ", not QuaternionType");
  if (generators[0].rows() % 2 != 0)
    throw std::invalid_argument(
        "realize_quaternion_basis: ambient dimension must be even");
  // Indicator -1 means U is antisymmetric; U = W^T K W with K = J (x) Id then
  // gives conj(W) U = K W, so conj(W g W^†) = K (W g W^†) K^† for all g.
  const ComplexMatrix u = ((*st.intertwiner - st.intertwiner->transpose()) / 2.0).eval();
  return antisymmetric_unitary_factor(u, 1e-7);
}

namespace {

void decompose_recursive(const std::vector<ComplexMatrix>& gens,
                         const ComplexMatrix& embed, double tol, Rng& rng,
                         std::vector<AlgebraBlock>& out) {
  const Eigen::Index d = gens[0].rows();
  const std::vector<ComplexMatrix> comm = commutant(gens, tol);
  if (comm.size() <= 1) {
    out.push_back({embed, gens});
    return;
  }
  for (int attempt = 0; attempt < 32; ++attempt) {
    // Random Hermitian commutant element; its eigenspaces are invariant under
    // the algebra, so eigenvalue clusters split the representation.
    ComplexMatrix t = ComplexMatrix::Zero(d, d);
    for (const ComplexMatrix& b : comm) t += rng.complex_normal() * b;
    ComplexMatrix h = ((t + t.adjoint()) / 2.0).eval();
    const double scale = h.norm();
    if (scale < 1e-10) continue;
    h /= scale;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
    const auto clusters = cluster_ranges(es.eigenvalues(), kGapTol);
    if (clusters.size() < 2) continue;  // accidental degeneracy: redraw
    for (const auto& [first, len] : clusters) {
      const ComplexMatrix v = es.eigenvectors().middleCols(first, len);
      std::vector<ComplexMatrix> sub;
      sub.reserve(gens.size());
      for (const ComplexMatrix& g : gens) sub.push_back((v.adjoint() * g * v).eval());
      decompose_recursive(sub, (embed * v).eval(), tol, rng, out);
    }
    return;
  }
  throw std::runtime_error("block_decompose: failed to split a reducible family");
}

}  // namespace

BlockDecomposition block_decompose(const std::vector<ComplexMatrix>& generators,
                                   double tol) {
  if (generators.empty())
    throw std::invalid_argument("block_decompose: no generators");
  const Eigen::Index d = generators[0].rows();
  for (const ComplexMatrix& g : generators)
    if (g.rows() != d || g.cols() != d)
      throw std::invalid_argument(
          "block_decompose: generators must be square matrices of equal size");
  Rng rng(0x62656c6b69740ULL);  // fixed seed: the decomposition is deterministic
  BlockDecomposition out;
  decompose_recursive(generators, ComplexMatrix::Identity(d, d), tol, rng, out.blocks);
  return out;
}

}  // namespace bellkit
