#include "bellkit/dilation.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace bellkit {

namespace {

// (u_a (x) u_b) v via the reshape identity vec(A M B^T) = (A (x) B) vec(M).
ComplexVector apply_local(const ComplexMatrix& u_a, const ComplexMatrix& u_b,
                          const ComplexVector& v, int da, int db) {
  Eigen::Map<const ComplexMatrix> m(v.data(), da, db);
  const ComplexMatrix out = u_a * m * u_b.transpose();
  return Eigen::Map<const ComplexVector>(out.data(), out.size());
}

ComplexVector vec_of(const ComplexMatrix& m) {
  return Eigen::Map<const ComplexVector>(m.data(), m.size());
}

// Shared dimensional bookkeeping of both checkers.
struct CheckFrame {
  int da_hat = 0;  // Alice auxiliary dimension
  int db_hat = 0;
  Eigen::Map<const ComplexMatrix> m_s;  // physical state matrix
  Eigen::Map<const ComplexMatrix> m_c;  // canonical state matrix

  CheckFrame(const Strategy& s, const Strategy& canonical)
      : m_s(s.state.data(), s.dim_a, s.dim_b),
        m_c(canonical.state.data(), canonical.dim_a, canonical.dim_b) {}
};

void require_same_scenario(const Strategy& s, const Strategy& canonical) {
  for (Party p : {Party::kAlice, Party::kBob}) {
    if (s.n_inputs(p) != canonical.n_inputs(p))
      throw std::invalid_argument("dilation check: input counts differ");
    for (int x = 0; x < s.n_inputs(p); ++x)
      if (s.n_outcomes(p, x) != canonical.n_outcomes(p, x))
        throw std::invalid_argument("dilation check: outcome counts differ");
  }
}

CheckFrame make_frame(const Strategy& s, const Strategy& canonical,
                      const DilationWitness& w, int register_dim, double tol) {
  require_valid(s);
  require_valid(canonical);
  require_same_scenario(s, canonical);
  if (w.u_a.cols() != s.dim_a || w.u_b.cols() != s.dim_b)
    throw std::invalid_argument("dilation check: isometry domain mismatch");
  const Eigen::Index qa = static_cast<Eigen::Index>(canonical.dim_a) * register_dim;
  const Eigen::Index qb = static_cast<Eigen::Index>(canonical.dim_b) * register_dim;
  if (w.u_a.rows() % qa != 0 || w.u_b.rows() % qb != 0)
    throw std::invalid_argument("dilation check: isometry range mismatch");
  CheckFrame f(s, canonical);
  f.da_hat = static_cast<int>(w.u_a.rows() / qa);
  f.db_hat = static_cast<int>(w.u_b.rows() / qb);
  if (w.aux0.size() != static_cast<Eigen::Index>(f.da_hat) * f.db_hat)
    throw std::invalid_argument("dilation check: aux0 length mismatch");
  if (!is_isometry(w.u_a, std::max(tol, 1e-9)) ||
      !is_isometry(w.u_b, std::max(tol, 1e-9)))
    throw std::invalid_argument("dilation check: witness matrices are not isometries");
  return f;
}

void finish_report(ResidualReport& r, double tol) {
  r.tolerance = tol;
  r.max_residual = r.state_residual;
  for (const auto& row : r.alice_residuals)
    for (double v : row) r.max_residual = std::max(r.max_residual, v);
  for (const auto& row : r.bob_residuals)
    for (double v : row) r.max_residual = std::max(r.max_residual, v);
  r.passed = r.max_residual <= tol;
}

}  // namespace

ResidualReport check_local_dilation(const Strategy& s, const Strategy& canonical,
                                    const DilationWitness& w, double tol) {
  const CheckFrame f = make_frame(s, canonical, w, 1, tol);
  if (w.aux1.size() != 0 && w.aux1.norm() > std::max(tol, 1e-9))
    throw std::invalid_argument("check_local_dilation: aux1 must be zero");
  if (std::abs(w.aux0.squaredNorm() - 1.0) > std::max(tol, 1e-9))
    throw std::invalid_argument("check_local_dilation: aux normalization violated");

  const std::vector<int> dims = {canonical.dim_a, canonical.dim_b, f.da_hat, f.db_hat};
  const std::vector<int> perm = {0, 2, 1, 3};
  // One defining equation: ops act on the physical/canonical state pair.
  auto residual = [&](const ComplexMatrix& part_s, const ComplexMatrix& part_c) {
    const ComplexVector lhs =
        apply_local(w.u_a, w.u_b, vec_of(part_s), s.dim_a, s.dim_b);
    const ComplexVector rhs =
        permute_factors(tensor(vec_of(part_c), w.aux0), dims, perm);
    return (lhs - rhs).norm();
  };

  ResidualReport r;
  r.state_residual = residual(f.m_s, f.m_c);
  r.alice_residuals.resize(s.alice.size());
  for (size_t x = 0; x < s.alice.size(); ++x)
    for (size_t a = 0; a < s.alice[x].size(); ++a)
      r.alice_residuals[x].push_back(
          residual(s.alice[x][a] * f.m_s, canonical.alice[x][a] * f.m_c));
  r.bob_residuals.resize(s.bob.size());
  for (size_t y = 0; y < s.bob.size(); ++y)
    for (size_t b = 0; b < s.bob[y].size(); ++b)
      r.bob_residuals[y].push_back(residual(f.m_s * s.bob[y][b].transpose(),
                                            f.m_c * canonical.bob[y][b].transpose()));
  finish_report(r, tol);
  return r;
}

ResidualReport check_complex_local_dilation(const Strategy& s,
                                            const Strategy& canonical,
                                            const DilationWitness& w, double tol) {
  const CheckFrame f = make_frame(s, canonical, w, 2, tol);
  if (w.aux1.size() != w.aux0.size())
    throw std::invalid_argument(
        "check_complex_local_dilation: aux vectors live on different spaces");
  if (std::abs(w.aux0.squaredNorm() + w.aux1.squaredNorm() - 1.0) > std::max(tol, 1e-9))
    throw std::invalid_argument(
        "check_complex_local_dilation: aux normalization violated");

  ComplexVector e00 = ComplexVector::Zero(4), e11 = ComplexVector::Zero(4);
  e00(0) = 1.0;  // |0>_A' |0>_B'
  e11(3) = 1.0;  // |1>_A' |1>_B'
  const std::vector<int> dims = {canonical.dim_a, canonical.dim_b,
                                 f.da_hat,        f.db_hat,
                                 2,               2};
  const std::vector<int> perm = {0, 2, 4, 1, 3, 5};
  // One defining equation; the conjugate branch carries the entrywise
  // conjugate of the canonical part.
  auto residual = [&](const ComplexMatrix& part_s, const ComplexMatrix& part_c) {
    const ComplexVector lhs =
        apply_local(w.u_a, w.u_b, vec_of(part_s), s.dim_a, s.dim_b);
    const ComplexVector vc = vec_of(part_c);
    const ComplexVector target = tensor(tensor(vc, w.aux0), e00) +
                                 tensor(tensor(vc.conjugate().eval(), w.aux1), e11);
    return (lhs - permute_factors(target, dims, perm)).norm();
  };

  ResidualReport r;
  r.state_residual = residual(f.m_s, f.m_c);
  r.alice_residuals.resize(s.alice.size());
  for (size_t x = 0; x < s.alice.size(); ++x)
    for (size_t a = 0; a < s.alice[x].size(); ++a)
      r.alice_residuals[x].push_back(
          residual(s.alice[x][a] * f.m_s, canonical.alice[x][a] * f.m_c));
  r.bob_residuals.resize(s.bob.size());
  for (size_t y = 0; y < s.bob.size(); ++y)
    for (size_t b = 0; b < s.bob[y].size(); ++b)
      r.bob_residuals[y].push_back(residual(f.m_s * s.bob[y][b].transpose(),
                                            f.m_c * canonical.bob[y][b].transpose()));
  finish_report(r, tol);
  return r;
}

DilationWitness register_form_witness(const ComplexMatrix& v_a, const ComplexMatrix& v_b,
                                      const ComplexVector& aux0,
                                      const ComplexVector& aux1, int dim_canonical_a,
                                      int dim_canonical_b) {
  // The direct-sum range is (canonical (x) aux) (+) (canonical (x) aux) with
  // the 0-branch rows first; the register form interleaves the branch label
  // as a least-significant C^2 factor.
  auto interleave = [](const ComplexMatrix& v, int branch_rows) {
    if (v.rows() != 2 * static_cast<Eigen::Index>(branch_rows))
      throw std::invalid_argument(
          "register_form_witness: isometry rows are not twice the branch size");
    ComplexMatrix out(v.rows(), v.cols());
    for (int r = 0; r < branch_rows; ++r) {
      out.row(2 * r) = v.row(r);                // branch 0 -> register |0>
      out.row(2 * r + 1) = v.row(branch_rows + r);  // branch 1 -> register |1>
    }
    return out;
  };
  if (v_a.rows() % (2 * dim_canonical_a) != 0 ||
      v_b.rows() % (2 * dim_canonical_b) != 0)
    throw std::invalid_argument("register_form_witness: row count mismatch");
  DilationWitness w;
  w.u_a = interleave(v_a, static_cast<int>(v_a.rows() / 2));
  w.u_b = interleave(v_b, static_cast<int>(v_b.rows() / 2));
  w.aux0 = aux0;
  w.aux1 = aux1;
  return w;
}

namespace {

ComplexMatrix psd_sqrt(const ComplexMatrix& e) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(e);
  RealVector vals = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * vals.asDiagonal() * es.eigenvectors().adjoint();
}

double party_projectivity(const Strategy& s, Party p) {
  double worst = 0.0;
  for (const auto& povm : s.povms(p))
    for (const ComplexMatrix& e : povm) worst = std::max(worst, (e * e - e).norm());
  return worst;
}

// Replaces one party's POVMs by projective ones on C^m (x) H.
void dilate_party(Strategy& s, Party p, double tol) {
  if (party_projectivity(s, p) <= tol) return;
  auto& povms = p == Party::kAlice ? s.alice : s.bob;
  const int d = s.dim(p);
  int m = 0;
  for (const auto& povm : povms) m = std::max(m, static_cast<int>(povm.size()));

  for (auto& povm : povms) {
    // Stacked square roots form an isometry V_x : H -> C^m (x) H; complete it
    // to a unitary whose first d columns are V_x, then pull back the host's
    // outcome projectors |a><a| (x) Id.
    ComplexMatrix v = ComplexMatrix::Zero(static_cast<Eigen::Index>(m) * d, d);
    for (size_t a = 0; a < povm.size(); ++a)
      v.middleRows(static_cast<Eigen::Index>(a) * d, d) = psd_sqrt(povm[a]);
    const ComplexMatrix u = complete_isometry(v);

    const int last = static_cast<int>(povm.size()) - 1;
    std::vector<ComplexMatrix> dilated(povm.size());
    for (int a = 0; a < m; ++a) {
      const ComplexMatrix block = u.middleRows(static_cast<Eigen::Index>(a) * d, d);
      const ComplexMatrix proj = block.adjoint() * block;  // U^† (|a><a| (x) Id) U
      const int target = std::min(a, last);  // fold unused host outcomes into the last
      if (dilated[target].size() == 0)
        dilated[target] = proj;
      else
        dilated[target] += proj;
    }
    for (auto& q : dilated) q = ((q + q.adjoint()) / 2.0).eval();
    povm = std::move(dilated);
  }

  // Embed the state via |0> (x) id, i.e. pad the state matrix with zeros.
  Eigen::Map<const ComplexMatrix> msmall(s.state.data(), s.dim_a, s.dim_b);
  if (p == Party::kAlice) {
    ComplexMatrix mbig = ComplexMatrix::Zero(static_cast<Eigen::Index>(m) * d, s.dim_b);
    mbig.topRows(d) = msmall;
    s.state = Eigen::Map<const ComplexVector>(mbig.data(), mbig.size());
    s.dim_a = m * d;
  } else {
    ComplexMatrix mbig = ComplexMatrix::Zero(s.dim_a, static_cast<Eigen::Index>(m) * d);
    mbig.leftCols(d) = msmall;
    s.state = Eigen::Map<const ComplexVector>(mbig.data(), mbig.size());
    s.dim_b = m * d;
  }
}

}  // namespace

Strategy naimark_dilate(const Strategy& s, double tol) {
  require_valid(s);
  Strategy out = s;
  dilate_party(out, Party::kAlice, tol);
  dilate_party(out, Party::kBob, tol);
  return out;
}

Strategy restrict_to_support(const Strategy& s, double tol) {
  require_valid(s);
  const SchmidtForm sf = schmidt_decompose(s.state, s.dim_a, s.dim_b, tol);
  const ComplexMatrix ca = sf.left_vectors.leftCols(sf.rank);
  const ComplexMatrix cb = sf.right_vectors.leftCols(sf.rank);
  const ComplexMatrix pa = ca * ca.adjoint();
  const ComplexMatrix pb = cb * cb.adjoint();

  for (Party p : {Party::kAlice, Party::kBob}) {
    const ComplexMatrix& proj = p == Party::kAlice ? pa : pb;
    const auto& povms = s.povms(p);
    for (size_t x = 0; x < povms.size(); ++x)
      for (size_t a = 0; a < povms[x].size(); ++a) {
        const double comm = (proj * povms[x][a] - povms[x][a] * proj).norm();
        if (comm > tol) {
          std::ostringstream os;
          os << "restrict_to_support: not support-preserving: "
             << (p == Party::kAlice ? "alice" : "bob") << " effect (input " << x
             << ", outcome " << a << ") has ||[P, E]|| = " << comm;
          throw std::invalid_argument(os.str());
        }
      }
  }

  Strategy out;
  out.dim_a = sf.rank;
  out.dim_b = sf.rank;
  Eigen::Map<const ComplexMatrix> m(s.state.data(), s.dim_a, s.dim_b);
  const ComplexMatrix mres = ca.adjoint() * m * cb.conjugate();
  out.state = Eigen::Map<const ComplexVector>(mres.data(), mres.size());
  auto compress = [](const ComplexMatrix& c, const ComplexMatrix& e) {
    const ComplexMatrix q = c.adjoint() * e * c;
    return ((q + q.adjoint()) / 2.0).eval();
  };
  out.alice.resize(s.alice.size());
  for (size_t x = 0; x < s.alice.size(); ++x)
    for (const ComplexMatrix& e : s.alice[x]) out.alice[x].push_back(compress(ca, e));
  out.bob.resize(s.bob.size());
  for (size_t y = 0; y < s.bob.size(); ++y)
    for (const ComplexMatrix& f : s.bob[y]) out.bob[y].push_back(compress(cb, f));
  return out;
}

DilationWitness real_simulation_dilation_witness(const Strategy& s) {
  require_valid(s);
  // The simulation's party space is register (x) H; map the register's
  // |+i>/|-i> basis to the computational basis of the conjugation register
  // and move it behind H: U = SWAP . (R (x) Id), R = rows <+i|, <-i|.
  auto party_unitary = [](int d) {
    ComplexMatrix r(2, 2);
    const double s2 = 1.0 / std::sqrt(2.0);
    r << s2, Complex(0, -s2), s2, Complex(0, s2);
    const ComplexMatrix rid = tensor(r, ComplexMatrix::Identity(d, d));
    // SWAP of factors (C^2, H) -> (H, C^2): row (i*2 + a') of the result is
    // row (a'*d + i) of rid.
    ComplexMatrix out(2 * d, 2 * d);
    for (int ap = 0; ap < 2; ++ap)
      for (int i = 0; i < d; ++i)
        out.row(static_cast<Eigen::Index>(i) * 2 + ap) =
            rid.row(static_cast<Eigen::Index>(ap) * d + i);
    return out;
  };
  DilationWitness w;
  w.u_a = party_unitary(s.dim_a);
  w.u_b = party_unitary(s.dim_b);
  const double s2 = 1.0 / std::sqrt(2.0);
  w.aux0 = ComplexVector::Constant(1, s2);
  w.aux1 = ComplexVector::Constant(1, s2);
  return w;
}

}  // namespace bellkit
