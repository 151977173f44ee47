#include "bellkit/selftest.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

#include "bellkit/instances.hpp"

namespace bellkit {

namespace {

constexpr std::array<std::pair<int, int>, 6> kPairs = {
    {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

// The four correlator terms of one CHSH block on Alice inputs (l, m) and Bob
// inputs (2k, 2k+1): <A_l B_+> + <A_m B_+> + <A_l B_-> - <A_m B_->.
constexpr std::array<std::pair<int, int>, 4> chsh_terms(int l, int m, int k) {
  return {{{l, 2 * k}, {m, 2 * k}, {l, 2 * k + 1}, {m, 2 * k + 1}}};
}
constexpr std::array<double, 4> kChshSigns = {1.0, 1.0, 1.0, -1.0};

void add_correlator(BellFunctional& f, int x, int y, double sign) {
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      f.coefficients[{x, y, a, b}] += sign * ((a + b) % 2 == 0 ? 1.0 : -1.0);
}

}  // namespace

double bell_value(const BellFunctional& f, const Strategy& s) {
  double value = f.offset;
  for (const auto& [key, c] : f.coefficients) {
    const auto [x, y, a, b] = key;
    if (x < 0 || x >= s.n_inputs(Party::kAlice) || y < 0 ||
        y >= s.n_inputs(Party::kBob) || a < 0 || a >= s.n_outcomes(Party::kAlice, x) ||
        b < 0 || b >= s.n_outcomes(Party::kBob, y))
      throw std::invalid_argument(
          "bell_value: functional references a label the strategy lacks");
    value += c * correlation(s, x, y, a, b);
  }
  return value;
}

double classical_bound_dichotomic(const BellFunctional& f, int n_inputs_a,
                                  int n_inputs_b) {
  if (n_inputs_a < 1 || n_inputs_a > 24 || n_inputs_b < 1)
    throw std::invalid_argument("classical_bound_dichotomic: bad input counts");
  // Dense coefficient table c[x][y][a][b].
  std::vector<std::array<double, 4>> table(
      static_cast<size_t>(n_inputs_a) * n_inputs_b, {0, 0, 0, 0});
  for (const auto& [key, c] : f.coefficients) {
    const auto [x, y, a, b] = key;
    if (x < 0 || x >= n_inputs_a || y < 0 || y >= n_inputs_b || a < 0 || a > 1 ||
        b < 0 || b > 1)
      throw std::invalid_argument("classical_bound_dichotomic: label out of range");
    table[static_cast<size_t>(x) * n_inputs_b + y][a * 2 + b] += c;
  }
  // Bob's optimal deterministic response decouples per input.
  double best = -std::numeric_limits<double>::infinity();
  for (std::uint32_t mask = 0; mask < (1u << n_inputs_a); ++mask) {
    double value = f.offset;
    for (int y = 0; y < n_inputs_b; ++y) {
      double v0 = 0, v1 = 0;
      for (int x = 0; x < n_inputs_a; ++x) {
        const int a = (mask >> x) & 1u;
        const auto& cell = table[static_cast<size_t>(x) * n_inputs_b + y];
        v0 += cell[a * 2 + 0];
        v1 += cell[a * 2 + 1];
      }
      value += std::max(v0, v1);
    }
    best = std::max(best, value);
  }
  return best;
}

BellFunctional chsh_functional() {
  BellFunctional f;
  add_correlator(f, 0, 0, 1.0);
  add_correlator(f, 0, 1, 1.0);
  add_correlator(f, 1, 0, 1.0);
  add_correlator(f, 1, 1, -1.0);
  return f;
}

std::vector<ComplexMatrix> quaternion_observables() {
  const ComplexMatrix id2 = ComplexMatrix::Identity(2, 2);
  return {tensor(pauli_z(), id2), tensor(pauli_x(), id2),
          tensor(pauli_y(), pauli_z()), tensor(pauli_y(), pauli_y())};
}

Strategy quaternion_strategy() {
  const std::vector<ComplexMatrix> x = quaternion_observables();
  const double s2 = std::sqrt(2.0);
  std::vector<ComplexMatrix> bob;
  for (const auto& [l, m] : kPairs) {
    bob.push_back(((x[l] + x[m]).transpose() / s2).eval());
    bob.push_back(((x[l] - x[m]).transpose() / s2).eval());
  }
  return strategy_from_observables(max_entangled_state(4), 4, 4, x, bob);
}

BellFunctional six_chsh_functional() {
  BellFunctional f;
  for (int k = 0; k < 6; ++k) {
    const auto [l, m] = kPairs[k];
    const auto terms = chsh_terms(l, m, k);
    for (int t = 0; t < 4; ++t)
      add_correlator(f, terms[t].first, terms[t].second, kChshSigns[t]);
  }
  return f;
}

double quaternion_bound() { return 12.0 * std::sqrt(2.0); }

std::vector<double> chsh_block_values(const Strategy& s) {
  std::vector<double> out;
  for (int k = 0; k < 6; ++k) {
    const auto [l, m] = kPairs[k];
    const auto terms = chsh_terms(l, m, k);
    double v = 0;
    for (int t = 0; t < 4; ++t)
      v += kChshSigns[t] * observable_correlation(s, terms[t].first, terms[t].second);
    out.push_back(v);
  }
  return out;
}

EigencheckReport bell_operator_eigencheck() {
  const std::vector<ComplexMatrix> x = quaternion_observables();
  const ComplexMatrix r = tensor(x[0], x[0]) + tensor(x[1], x[1]) -
                          tensor(x[2], x[2]) + tensor(x[3], x[3]);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(r);
  const RealVector& vals = es.eigenvalues();  // ascending
  const Eigen::Index n = vals.size();
  EigencheckReport rep;
  rep.max_eigenvalue = vals(n - 1);
  rep.eigengap = vals(n - 1) - vals(n - 2);
  const ComplexVector top = es.eigenvectors().col(n - 1);
  rep.fidelity = std::norm(max_entangled_state(4).dot(top));
  return rep;
}

double anticommutation_residual(const std::vector<ComplexMatrix>& observables) {
  for (const ComplexMatrix& x : observables) {
    if (!is_hermitian(x, 1e-9))
      throw std::invalid_argument("anticommutation_residual: observable not Hermitian");
    if (!is_unitary(x, 1e-9))
      throw std::invalid_argument("anticommutation_residual: observable not unitary");
  }
  double worst = 0;
  for (size_t l = 0; l < observables.size(); ++l)
    for (size_t m = l + 1; m < observables.size(); ++m)
      worst = std::max(worst, operator_norm(observables[l] * observables[m] +
                                            observables[m] * observables[l]));
  return worst;
}

QuaternionSelfTest run_quaternion_selftest(double tol) {
  const Strategy s = quaternion_strategy();
  QuaternionSelfTest rep;
  rep.value = bell_value(six_chsh_functional(), s);
  rep.expected = quaternion_bound();
  rep.block_values = chsh_block_values(s);
  rep.anticommutator_norm = anticommutation_residual(quaternion_observables());
  rep.eigencheck = bell_operator_eigencheck();

  // Left/right transfer across the maximally entangled state: each Bob
  // observable moves to Alice's side as its transpose.
  Eigen::Map<const ComplexMatrix> m(s.state.data(), 4, 4);
  for (int y = 0; y < s.n_inputs(Party::kBob); ++y) {
    const ComplexMatrix b = observable(s, Party::kBob, y);
    // (B^T (x) Id) psi = vec(B^T M);  (Id (x) B) psi = vec(M B^T).
    const double r = (b.transpose() * m - m * b.transpose()).norm();
    rep.leftright_residual = std::max(rep.leftright_residual, r);
  }

  const double two_s2 = 2.0 * std::sqrt(2.0);
  bool blocks_ok = true;
  for (double v : rep.block_values) blocks_ok &= std::abs(v - two_s2) <= tol;
  rep.passed = std::abs(rep.value - rep.expected) <= tol && blocks_ok &&
               rep.leftright_residual <= tol && rep.anticommutator_norm <= tol &&
               std::abs(rep.eigencheck.max_eigenvalue - 4.0) <= 1e-10 &&
               rep.eigencheck.eigengap >= 1e-6 &&
               rep.eigencheck.fidelity >= 1.0 - 1e-10;
  return rep;
}

PerturbationReport perturb_and_evaluate(double epsilon, Rng& rng) {
  if (!(epsilon >= 0.0) || epsilon > 1.0)
    throw std::invalid_argument("perturb_and_evaluate: epsilon must lie in [0, 1]");
  auto rotation = [&](int d) {
    ComplexMatrix h = rng.hermitian(d);
    h /= operator_norm(h);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
    ComplexVector phases(d);
    for (int i = 0; i < d; ++i)
      phases(i) = std::exp(Complex(0, epsilon * es.eigenvalues()(i)));
    return (es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint())
        .eval();
  };
  const ComplexMatrix ga = rotation(4), gb = rotation(4);
  auto conj_by = [](const ComplexMatrix& g, const ComplexMatrix& x) {
    const ComplexMatrix y = g * x * g.adjoint();
    return ((y + y.adjoint()) / 2.0).eval();
  };
  std::vector<ComplexMatrix> alice, bob;
  const std::vector<ComplexMatrix> x = quaternion_observables();
  const double s2 = std::sqrt(2.0);
  for (const ComplexMatrix& xi : x) alice.push_back(conj_by(ga, xi));
  for (const auto& [l, m] : kPairs) {
    bob.push_back(conj_by(gb, ((x[l] + x[m]).transpose() / s2).eval()));
    bob.push_back(conj_by(gb, ((x[l] - x[m]).transpose() / s2).eval()));
  }
  PerturbationReport rep;
  rep.epsilon = epsilon;
  rep.value = bell_value(six_chsh_functional(),
                         strategy_from_observables(max_entangled_state(4), 4, 4,
                                                   alice, bob));
  rep.deficit = quaternion_bound() - rep.value;
  return rep;
}

// ----- seesaw ---------------------------------------------------------------

namespace {

struct ObservableForm {
  double c0 = 0;                           // constant part
  std::vector<double> m_a, m_b;            // marginal weights
  std::vector<std::vector<double>> j;      // correlator weights [x][y]
};

ObservableForm to_observable_form(const SeesawScenario& sc) {
  ObservableForm g;
  g.c0 = sc.functional.offset;
  g.m_a.assign(sc.n_inputs_a, 0.0);
  g.m_b.assign(sc.n_inputs_b, 0.0);
  g.j.assign(sc.n_inputs_a, std::vector<double>(sc.n_inputs_b, 0.0));
  for (const auto& [key, c] : sc.functional.coefficients) {
    const auto [x, y, a, b] = key;
    if (x < 0 || x >= sc.n_inputs_a || y < 0 || y >= sc.n_inputs_b)
      throw std::invalid_argument("seesaw: functional input out of range");
    if (a < 0 || a > 1 || b < 0 || b > 1)
      throw std::invalid_argument("seesaw: functional is not dichotomic");
    const double sa = a == 0 ? 1.0 : -1.0;
    const double sb = b == 0 ? 1.0 : -1.0;
    g.c0 += c / 4.0;
    g.m_a[x] += sa * c / 4.0;
    g.m_b[y] += sb * c / 4.0;
    g.j[x][y] += sa * sb * c / 4.0;
  }
  return g;
}

// Hermitian polar sign with the zero-eigenvalue convention sign(0) = +1.
ComplexMatrix polar_sign(const ComplexMatrix& w) {
  const ComplexMatrix h = (w + w.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
  RealVector signs(h.rows());
  for (Eigen::Index i = 0; i < h.rows(); ++i)
    signs(i) = es.eigenvalues()(i) < 0.0 ? -1.0 : 1.0;
  const ComplexMatrix s =
      es.eigenvectors() * signs.asDiagonal() * es.eigenvectors().adjoint();
  return ((s + s.adjoint()) / 2.0).eval();
}

ComplexMatrix balanced_observable(Rng& rng, int d) {
  ComplexVector diag(d);
  for (int i = 0; i < d; ++i) diag(i) = i < (d + 1) / 2 ? 1.0 : -1.0;
  const ComplexMatrix u = rng.haar_unitary(d);
  const ComplexMatrix a = u * diag.asDiagonal() * u.adjoint();
  return ((a + a.adjoint()) / 2.0).eval();
}

double real_moment(const ComplexMatrix& m, const ComplexMatrix& a,
                   const ComplexMatrix& b) {
  return (a * m * b.transpose()).cwiseProduct(m.conjugate()).sum().real();
}

}  // namespace

SeesawResult seesaw_optimize(const SeesawScenario& scenario, std::uint64_t seed,
                             int restarts) {
  if (scenario.dim_a < 1 || scenario.dim_b < 1 || restarts < 1)
    throw std::invalid_argument("seesaw: bad dimensions or restart count");
  const ObservableForm g = to_observable_form(scenario);
  const int da = scenario.dim_a, db = scenario.dim_b;
  const ComplexMatrix ida = ComplexMatrix::Identity(da, da);
  const ComplexMatrix idb = ComplexMatrix::Identity(db, db);

  SeesawResult result;
  result.seed = seed;
  result.best_value = -std::numeric_limits<double>::infinity();

  for (int r = 0; r < restarts; ++r) {
    Rng rng(seed + static_cast<std::uint64_t>(r));
    std::vector<ComplexMatrix> a(g.m_a.size()), b(g.m_b.size());
    for (auto& obs : a) obs = balanced_observable(rng, da);
    for (auto& obs : b) obs = balanced_observable(rng, db);

    ComplexMatrix m;  // state matrix, set by the first state update
    std::vector<double> trace;
    for (int iter = 0; iter < 10'000; ++iter) {
      // State: top eigenvector of the Bell operator for the current
      // observables.
      ComplexMatrix bell = ComplexMatrix::Zero(da * db, da * db);
      for (size_t x = 0; x < a.size(); ++x) bell += g.m_a[x] * tensor(a[x], idb);
      for (size_t y = 0; y < b.size(); ++y) bell += g.m_b[y] * tensor(ida, b[y]);
      for (size_t x = 0; x < a.size(); ++x)
        for (size_t y = 0; y < b.size(); ++y)
          if (g.j[x][y] != 0.0) bell += g.j[x][y] * tensor(a[x], b[y]);
      Eigen::SelfAdjointEigenSolver<ComplexMatrix> es((bell + bell.adjoint()) / 2.0);
      const ComplexVector psi = es.eigenvectors().col(da * db - 1);
      m = Eigen::Map<const ComplexMatrix>(psi.data(), da, db);

      // Alice: each A_x maximizes Tr(A W_x) over +-1 observables.
      for (size_t x = 0; x < a.size(); ++x) {
        ComplexMatrix c = g.m_a[x] * idb;
        for (size_t y = 0; y < b.size(); ++y)
          if (g.j[x][y] != 0.0) c += g.j[x][y] * b[y];
        a[x] = polar_sign(m * c.transpose() * m.adjoint());
      }
      // Bob: effective operator from Alice's side, transposed into B's slot.
      for (size_t y = 0; y < b.size(); ++y) {
        ComplexMatrix d = g.m_b[y] * ida;
        for (size_t x = 0; x < a.size(); ++x)
          if (g.j[x][y] != 0.0) d += g.j[x][y] * a[x];
        b[y] = polar_sign((m.adjoint() * d * m).transpose());
      }

      double value = g.c0;
      for (size_t x = 0; x < a.size(); ++x)
        if (g.m_a[x] != 0.0) value += g.m_a[x] * real_moment(m, a[x], idb);
      for (size_t y = 0; y < b.size(); ++y)
        if (g.m_b[y] != 0.0) value += g.m_b[y] * real_moment(m, ida, b[y]);
      for (size_t x = 0; x < a.size(); ++x)
        for (size_t y = 0; y < b.size(); ++y)
          if (g.j[x][y] != 0.0) value += g.j[x][y] * real_moment(m, a[x], b[y]);
      trace.push_back(value);
      if (trace.size() > 1 && value - trace[trace.size() - 2] < 1e-12) break;
    }

    if (trace.back() > result.best_value) {
      result.best_value = trace.back();
      result.best_restart = r;
      const ComplexVector psi = Eigen::Map<const ComplexVector>(m.data(), m.size());
      result.best_strategy = strategy_from_observables(psi, da, db, a, b);
    }
    result.traces.push_back(std::move(trace));
  }
  return result;
}

SeesawScenario quaternion_scenario() {
  SeesawScenario sc;
  sc.dim_a = sc.dim_b = 4;
  sc.n_inputs_a = 4;
  sc.n_inputs_b = 12;
  sc.functional = six_chsh_functional();
  return sc;
}

SeesawScenario chsh_scenario(int dim_a, int dim_b) {
  SeesawScenario sc;
  sc.dim_a = dim_a;
  sc.dim_b = dim_b;
  sc.n_inputs_a = sc.n_inputs_b = 2;
  sc.functional = chsh_functional();
  return sc;
}

}  // namespace bellkit
