#include "bellkit/strategy.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <stdexcept>

#include "bellkit/algebra.hpp"

namespace bellkit {

namespace {

std::string party_name(Party p) { return p == Party::kAlice ? "alice" : "bob"; }

// Appends the worst structural defect of one party to (message, residual).
// Returns false on the first hard violation.
bool check_party_structure(const Strategy& s, Party p, double tol,
                           std::string& message, double& residual) {
  const auto& povms = s.povms(p);
  const int d = s.dim(p);
  if (povms.empty()) {
    message = party_name(p) + " has no inputs";
    return false;
  }
  for (int x = 0; x < static_cast<int>(povms.size()); ++x) {
    if (povms[x].empty()) {
      message = party_name(p) + " input " + std::to_string(x) + " has no outcomes";
      return false;
    }
    ComplexMatrix sum = ComplexMatrix::Zero(d, d);
    for (int a = 0; a < static_cast<int>(povms[x].size()); ++a) {
      const ComplexMatrix& e = povms[x][a];
      const std::string where = party_name(p) + " element (" + std::to_string(x) +
                                ", " + std::to_string(a) + ")";
      if (e.rows() != d || e.cols() != d) {
        message = where + " has wrong shape";
        return false;
      }
      const double herm = (e - e.adjoint()).cwiseAbs().maxCoeff();
      residual = std::max(residual, herm);
      if (herm > tol) {
        message = where + " is not Hermitian";
        return false;
      }
      Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(e, Eigen::EigenvaluesOnly);
      const double negativity = std::max(0.0, -es.eigenvalues().minCoeff());
      residual = std::max(residual, negativity);
      if (negativity > tol) {
        message = where + " is not positive semidefinite";
        return false;
      }
      sum += e;
    }
    const double completeness =
        (sum - ComplexMatrix::Identity(d, d)).cwiseAbs().maxCoeff();
    residual = std::max(residual, completeness);
    if (completeness > tol) {
      message = party_name(p) + " input " + std::to_string(x) +
                " does not sum to identity";
      return false;
    }
  }
  return true;
}

std::vector<ComplexMatrix> flatten_effects(const Strategy& s, Party p) {
  std::vector<ComplexMatrix> out;
  for (const auto& povm : s.povms(p))
    for (const ComplexMatrix& e : povm) out.push_back(e);
  return out;
}

}  // namespace

namespace {

// Structural part of validation only; fills well_formed/message/residual.
void check_structure(const Strategy& s, double tol, PredicateReport& r) {
  if (s.dim_a <= 0 || s.dim_b <= 0) {
    r.message = "local dimensions must be positive";
    return;
  }
  if (s.state.size() != static_cast<Eigen::Index>(s.dim_a) * s.dim_b) {
    r.message = "state length does not match dim_a * dim_b";
    return;
  }
  const double norm_defect = std::abs(s.state.norm() - 1.0);
  r.structure_residual = norm_defect;
  if (norm_defect > tol) {
    r.message = "state is not normalized";
    return;
  }
  if (!check_party_structure(s, Party::kAlice, tol, r.message, r.structure_residual) ||
      !check_party_structure(s, Party::kBob, tol, r.message, r.structure_residual))
    return;
  r.well_formed = true;
}

}  // namespace

PredicateReport validate(const Strategy& s, double tol) {
  PredicateReport r;
  check_structure(s, tol, r);
  if (!r.well_formed) return r;

  SchmidtForm sf = schmidt_decompose(s.state, s.dim_a, s.dim_b);
  r.smallest_schmidt = sf.coefficients(sf.rank - 1);
  r.full_rank = (sf.rank == s.dim_a && sf.rank == s.dim_b);

  r.support_residual = support_preservation_residual(s);
  r.support_preserving = r.support_residual <= tol;

  r.projectivity_residual = projectivity_residual(s);
  r.projective = r.projectivity_residual <= tol;

  r.zero_projectivity_residual = zero_projectivity_residual(s);
  r.zero_projective = r.zero_projectivity_residual <= tol;

  r.irreducible_a = is_irreducible(flatten_effects(s, Party::kAlice));
  r.irreducible_b = is_irreducible(flatten_effects(s, Party::kBob));
  return r;
}

void require_valid(const Strategy& s, double tol) {
  PredicateReport r;
  check_structure(s, tol, r);
  if (!r.well_formed) throw std::invalid_argument("invalid strategy: " + r.message);
}

Complex moment_of(const Strategy& s, const ComplexMatrix& op_a, const ComplexMatrix& op_b) {
  // <psi| A (x) B |psi> evaluated without forming the tensor product: reshape
  // psi to a dim_a x dim_b matrix M, then the value is tr(A M B^T M^†)... in
  // matrix form  sum over entries of (A M B^T) .* conj(M).
  Eigen::Map<const ComplexMatrix> m(s.state.data(), s.dim_a, s.dim_b);
  ComplexMatrix t = op_a * m * op_b.transpose();
  return t.cwiseProduct(m.conjugate()).sum();
}

double correlation(const Strategy& s, int x, int y, int a, int b) {
  return moment_of(s, s.alice[x][a], s.bob[y][b]).real();
}

RealMatrix correlation_table(const Strategy& s, int x, int y) {
  const int na = s.n_outcomes(Party::kAlice, x);
  const int nb = s.n_outcomes(Party::kBob, y);
  RealMatrix out(na, nb);
  for (int a = 0; a < na; ++a)
    for (int b = 0; b < nb; ++b) out(a, b) = correlation(s, x, y, a, b);
  return out;
}

Complex moment(const Strategy& s, const Word& word) {
  ComplexMatrix op_a = ComplexMatrix::Identity(s.dim_a, s.dim_a);
  ComplexMatrix op_b = ComplexMatrix::Identity(s.dim_b, s.dim_b);
  for (const Letter& l : word) {
    const auto& povms = s.povms(l.party);
    if (l.input < 0 || l.input >= static_cast<int>(povms.size()) || l.outcome < 0 ||
        l.outcome >= static_cast<int>(povms[l.input].size()))
      throw std::out_of_range("moment: letter references a missing POVM element");
    if (l.party == Party::kAlice)
      op_a = povms[l.input][l.outcome] * op_a;
    else
      op_b = povms[l.input][l.outcome] * op_b;
  }
  return moment_of(s, op_a, op_b);
}

ComplexMatrix observable(const Strategy& s, Party p, int x) {
  const auto& povms = s.povms(p);
  if (x < 0 || x >= static_cast<int>(povms.size()))
    throw std::out_of_range("observable: no such input");
  if (povms[x].size() != 2)
    throw std::invalid_argument("observable: input is not two-outcome");
  return povms[x][0] - povms[x][1];
}

double observable_correlation(const Strategy& s, int x, int y) {
  return moment_of(s, observable(s, Party::kAlice, x), observable(s, Party::kBob, y))
      .real();
}

double projectivity_residual(const Strategy& s) {
  double worst = 0.0;
  for (Party p : {Party::kAlice, Party::kBob})
    for (const auto& povm : s.povms(p))
      for (const ComplexMatrix& e : povm)
        worst = std::max(worst, (e * e - e).norm());
  return worst;
}

double zero_projectivity_residual(const Strategy& s) {
  double worst = 0.0;
  for (Party p : {Party::kAlice, Party::kBob}) {
    const int d = s.dim(p);
    const int d_other = p == Party::kAlice ? s.dim_b : s.dim_a;
    const ComplexMatrix id = ComplexMatrix::Identity(d, d);
    const ComplexMatrix id_other = ComplexMatrix::Identity(d_other, d_other);
    for (const auto& povm : s.povms(p))
      for (const ComplexMatrix& e : povm) {
        const ComplexMatrix defect = (id - e) * e;
        const Complex v = p == Party::kAlice ? moment_of(s, defect, id_other)
                                             : moment_of(s, id_other, defect);
        worst = std::max(worst, std::abs(v));
      }
  }
  return worst;
}

ComplexMatrix support_projector(const Strategy& s, Party p, double tol) {
  SchmidtForm sf = schmidt_decompose(s.state, s.dim_a, s.dim_b, tol);
  const ComplexMatrix& vecs =
      p == Party::kAlice ? sf.left_vectors : sf.right_vectors;
  return vecs * vecs.adjoint();
}

double support_preservation_residual(const Strategy& s, double tol) {
  double worst = 0.0;
  for (Party p : {Party::kAlice, Party::kBob}) {
    const ComplexMatrix proj = support_projector(s, p, tol);
    for (const auto& povm : s.povms(p))
      for (const ComplexMatrix& e : povm)
        worst = std::max(worst, (proj * e - e * proj).norm());
  }
  return worst;
}

bool is_full_rank(const Strategy& s, double tol) {
  SchmidtForm sf = schmidt_decompose(s.state, s.dim_a, s.dim_b, tol);
  return sf.rank == s.dim_a && sf.rank == s.dim_b;
}

Strategy conjugate_strategy(const Strategy& s) {
  Strategy out = s;
  out.state = s.state.conjugate();
  for (auto& povm : out.alice)
    for (auto& e : povm) e = e.conjugate().eval();
  for (auto& povm : out.bob)
    for (auto& e : povm) e = e.conjugate().eval();
  return out;
}

Strategy apply_local_unitaries(const Strategy& s, const ComplexMatrix& u_a,
                               const ComplexMatrix& u_b) {
  Strategy out = s;
  Eigen::Map<const ComplexMatrix> m(s.state.data(), s.dim_a, s.dim_b);
  ComplexMatrix rotated = u_a * m * u_b.transpose();
  out.state = Eigen::Map<const ComplexVector>(rotated.data(), rotated.size());
  for (auto& povm : out.alice)
    for (auto& e : povm) e = (u_a * e * u_a.adjoint()).eval();
  for (auto& povm : out.bob)
    for (auto& e : povm) e = (u_b * e * u_b.adjoint()).eval();
  return out;
}

namespace {

// The conjugation-register dilation of one effect:
// |+i><+i| (x) E + |-i><-i| (x) conj(E) = [[Re E, Im E], [-Im E, Re E]].
ComplexMatrix register_dilate(const ComplexMatrix& e) {
  const int d = static_cast<int>(e.rows());
  ComplexMatrix out = ComplexMatrix::Zero(2 * d, 2 * d);
  const ComplexMatrix re = e.real().cast<Complex>();
  const ComplexMatrix im = e.imag().cast<Complex>();
  out.topLeftCorner(d, d) = re;
  out.topRightCorner(d, d) = im;
  out.bottomLeftCorner(d, d) = -im;
  out.bottomRightCorner(d, d) = re;
  return out;
}

}  // namespace

Strategy real_simulation(const Strategy& s) {
  require_valid(s);
  Strategy out;
  out.dim_a = 2 * s.dim_a;
  out.dim_b = 2 * s.dim_b;

  // State coefficient matrix in the (register (x) local space) ordering of
  // both parties: block (alpha, beta) of the (2 dim_a) x (2 dim_b) matrix is
  // sqrt(2) Re(p_alpha p_beta psi) for |+i> components p = (1, i)/sqrt(2),
  // which works out to the four real blocks below.
  Eigen::Map<const ComplexMatrix> m(s.state.data(), s.dim_a, s.dim_b);
  const ComplexMatrix re = m.real().cast<Complex>() / std::sqrt(2.0);
  const ComplexMatrix im = m.imag().cast<Complex>() / std::sqrt(2.0);
  ComplexMatrix ms(out.dim_a, out.dim_b);
  ms.topLeftCorner(s.dim_a, s.dim_b) = re;
  ms.topRightCorner(s.dim_a, s.dim_b) = -im;
  ms.bottomLeftCorner(s.dim_a, s.dim_b) = -im;
  ms.bottomRightCorner(s.dim_a, s.dim_b) = -re;
  out.state = Eigen::Map<const ComplexVector>(ms.data(), ms.size());

  out.alice.resize(s.alice.size());
  for (size_t x = 0; x < s.alice.size(); ++x)
    for (const ComplexMatrix& e : s.alice[x]) out.alice[x].push_back(register_dilate(e));
  out.bob.resize(s.bob.size());
  for (size_t y = 0; y < s.bob.size(); ++y)
    for (const ComplexMatrix& f : s.bob[y]) out.bob[y].push_back(register_dilate(f));
  return out;
}

Strategy real_part_strategy(const Strategy& s, double tol) {
  require_valid(s);
  if (s.state.imag().cwiseAbs().maxCoeff() > tol)
    throw std::invalid_argument("real_part_strategy: state is not real");
  for (const auto& povm : s.alice)
    for (const ComplexMatrix& e : povm)
      if (e.imag().cwiseAbs().maxCoeff() > tol)
        throw std::invalid_argument("real_part_strategy: an alice effect is not real");
  Strategy out = s;
  for (auto& povm : out.bob)
    for (auto& f : povm) f = ((f + f.conjugate()) / 2.0).eval();
  return out;
}

Strategy strategy_from_observables(const ComplexVector& state, int dim_a, int dim_b,
                                   const std::vector<ComplexMatrix>& alice_obs,
                                   const std::vector<ComplexMatrix>& bob_obs) {
  Strategy out;
  out.dim_a = dim_a;
  out.dim_b = dim_b;
  out.state = state;
  const ComplexMatrix ida = ComplexMatrix::Identity(dim_a, dim_a);
  const ComplexMatrix idb = ComplexMatrix::Identity(dim_b, dim_b);
  for (const ComplexMatrix& o : alice_obs)
    out.alice.push_back({(ida + o) / 2.0, (ida - o) / 2.0});
  for (const ComplexMatrix& o : bob_obs)
    out.bob.push_back({(idb + o) / 2.0, (idb - o) / 2.0});
  return out;
}

}  // namespace bellkit
