#include "bellkit/classify.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <sstream>
#include <utility>

#include "bellkit/quaternion.hpp"

namespace bellkit {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Real: return "Real";
    case Verdict::SelfConjugateNotReal: return "SelfConjugateNotReal";
    case Verdict::Complex: return "Complex";
  }
  return "?";
}

namespace {

// Flattens a party's POVM elements into a generator list with the matching
// letters, so algebra words translate back into strategy words.
void flatten_party(const Strategy& s, Party p, std::vector<ComplexMatrix>& gens,
                   std::vector<Letter>& letters) {
  const auto& povms = s.povms(p);
  for (int x = 0; x < static_cast<int>(povms.size()); ++x)
    for (int a = 0; a < static_cast<int>(povms[x].size()); ++a) {
      gens.push_back(povms[x][a]);
      letters.push_back({p, x, a});
    }
}

// True (unnormalized) operator of a generator-index word.
ComplexMatrix word_operator(const std::vector<ComplexMatrix>& gens,
                            const std::vector<int>& word, Eigen::Index d) {
  ComplexMatrix op = ComplexMatrix::Identity(d, d);
  for (int gi : word) op = gens[gi] * op;
  return op;
}

Word translate(const std::vector<Letter>& letters, const std::vector<int>& word) {
  Word out;
  out.reserve(word.size());
  for (int gi : word) out.push_back(letters[gi]);
  return out;
}

std::string block_dims(const BlockDecomposition& d) {
  std::ostringstream os;
  for (size_t k = 0; k < d.blocks.size(); ++k)
    os << (k ? ", " : "") << d.blocks[k].isometry.cols();
  return os.str();
}

// Block-decomposes both parties and throws ReducibleStrategyError if either
// splits; otherwise returns normally.
void require_party_irreducible(const std::string& who,
                               const std::vector<ComplexMatrix>& gens_a,
                               const std::vector<ComplexMatrix>& gens_b,
                               double rank_tol) {
  BlockDecomposition ba = block_decompose(gens_a, rank_tol);
  BlockDecomposition bb = block_decompose(gens_b, rank_tol);
  if (ba.blocks.size() <= 1 && bb.blocks.size() <= 1) return;
  std::ostringstream os;
  os << who << ": strategy acts reducibly (alice blocks: " << block_dims(ba)
     << "; bob blocks: " << block_dims(bb) << ")";
  throw ReducibleStrategyError(os.str(), std::move(ba), std::move(bb));
}

// Words of per-party length <= max_len over the given alphabet, enumerated by
// length and then lexicographically, together with their true operators.
void enumerate_words(const std::vector<ComplexMatrix>& gens, Eigen::Index d,
                     int max_len, std::vector<ComplexMatrix>& ops,
                     std::vector<std::vector<int>>& words) {
  ops = {ComplexMatrix::Identity(d, d)};
  words = {{}};
  size_t level_begin = 0;
  for (int l = 0; l < max_len; ++l) {
    const size_t level_end = ops.size();
    for (size_t k = level_begin; k < level_end; ++k)
      for (int gi = 0; gi < static_cast<int>(gens.size()); ++gi) {
        // Appending a letter multiplies the operator on the left.
        ops.push_back(gens[gi] * ops[k]);
        std::vector<int> w = words[k];
        w.push_back(gi);
        words.push_back(std::move(w));
      }
    level_begin = level_end;
  }
}

// sum_{l=0..max_len} n^l, saturating at `cap`.
size_t word_count(size_t n, int max_len, size_t cap) {
  size_t total = 0, level = 1;
  for (int l = 0; l <= max_len; ++l) {
    if (level >= cap || total >= cap - level) return cap;
    total += level;
    if (n != 0 && level > cap / n) return cap;
    level *= n;
  }
  return total;
}

bool moment_real_algebraic_impl(const Strategy& s, double rank_tol) {
  // Stage 1: rotate to a Schmidt basis of the state and ask whether i * Id
  // lies in the real *-algebra of the joint effects.  {E (x) Id} and
  // {Id (x) F} generate the same unital algebra as all pairs {E (x) F}
  // because each POVM sums to the identity.  If i * Id is a real polynomial
  // of the joint effects, its expectation i is a real combination of word
  // moments, so some moment is complex.
  const auto [wa, wb] = schmidt_rotations(s.state, s.dim_a, s.dim_b);
  const Strategy rot = apply_local_unitaries(s, wa, wb);
  const ComplexMatrix ida = ComplexMatrix::Identity(rot.dim_a, rot.dim_a);
  const ComplexMatrix idb = ComplexMatrix::Identity(rot.dim_b, rot.dim_b);
  std::vector<ComplexMatrix> joint;
  for (const auto& povm : rot.alice)
    for (const ComplexMatrix& e : povm) joint.push_back(tensor(e, idb));
  for (const auto& povm : rot.bob)
    for (const ComplexMatrix& f : povm) joint.push_back(tensor(ida, f));
  ClosureOptions copts;
  copts.rank_tol = rank_tol;
  copts.stop_at_i_identity = true;
  if (real_algebra_closure(joint, copts).contains_i_identity) return false;

  // Stage 2: i * Id absent means each party's effect family admits a
  // conjugation intertwiner (its real closure is a real or quaternionic
  // form; otherwise i * Id of that party, tensored with the other identity,
  // would lie in the joint algebra).  The absence of i * Id alone does NOT
  // decide moment-reality: the real form can sit askew of the Schmidt basis.
  // Example: any two Hermitian 2x2 effects are simultaneously realizable
  // (rotate their traceless parts into a common real plane), so a two-input
  // binary qubit pair always passes stage 1, yet a generic entangled state
  // still has complex moments.  Moments are real precisely when the induced
  // local conjugation also fixes the state up to a global phase.
  std::vector<ComplexMatrix> rgens_a, rgens_b;
  std::vector<Letter> rletters_a, rletters_b;
  flatten_party(rot, Party::kAlice, rgens_a, rletters_a);
  flatten_party(rot, Party::kBob, rgens_b, rletters_b);
  const StructureType sta = structure_type(rgens_a, rank_tol);
  const StructureType stb = structure_type(rgens_b, rank_tol);
  if (!sta.intertwiner || !stb.intertwiner) return false;

  // The intertwiner of an irreducible family is unique up to phase, so the
  // overlap magnitude below is well-defined.  |overlap| = 1 iff
  // (U_A (x) U_B) psi = conj(psi) after absorbing the free phase.
  Eigen::Map<const ComplexMatrix> m(rot.state.data(), rot.dim_a, rot.dim_b);
  const ComplexMatrix mapped = *sta.intertwiner * m * stb.intertwiner->transpose();
  const Eigen::Map<const ComplexVector> v(mapped.data(), mapped.size());
  const double overlap = std::abs(v.dot(rot.state.conjugate()));
  const double state_residual = std::sqrt(std::max(0.0, 2.0 * (1.0 - overlap)));
  constexpr double kStateCompatTol = 1e-7;  // matches the moment sweep's |Im| gate
  return state_residual <= kStateCompatTol;
}

// Shared core of the self-conjugacy witness: assembles the witness from
// already-computed per-party structure types, or nullopt.
std::optional<SelfConjugacyWitness> build_self_conjugacy(const Strategy& s,
                                                         const StructureType& sta,
                                                         const StructureType& stb,
                                                         const ClassifyOptions& opts) {
  if (!sta.intertwiner || !stb.intertwiner) return std::nullopt;
  SelfConjugacyWitness w;
  w.u_a = *sta.intertwiner;
  w.u_b = *stb.intertwiner;

  // Absorb the free phase into u_a: maximize |<conj(psi), (u_a (x) u_b) psi>|.
  Eigen::Map<const ComplexMatrix> m(s.state.data(), s.dim_a, s.dim_b);
  ComplexMatrix mapped = w.u_a * m * w.u_b.transpose();
  const Eigen::Map<const ComplexVector> v(mapped.data(), mapped.size());
  const Complex overlap = v.dot(s.state.conjugate());  // <v | conj(psi)>
  if (std::abs(overlap) > 1e-12) {
    w.phase = overlap / std::abs(overlap);
    w.u_a *= w.phase;
    mapped *= w.phase;
  }

  const Eigen::Map<const ComplexVector> v2(mapped.data(), mapped.size());
  w.state_residual = (v2 - s.state.conjugate()).norm();
  for (const auto& povm : s.alice)
    for (const ComplexMatrix& e : povm)
      w.alice_residual = std::max(
          w.alice_residual, (w.u_a * e * w.u_a.adjoint() - e.conjugate()).norm());
  for (const auto& povm : s.bob)
    for (const ComplexMatrix& f : povm)
      w.bob_residual = std::max(
          w.bob_residual, (w.u_b * f * w.u_b.adjoint() - f.conjugate()).norm());

  if (w.state_residual > opts.witness_tol || w.alice_residual > opts.witness_tol ||
      w.bob_residual > opts.witness_tol)
    return std::nullopt;
  return w;
}

double max_imag_entry_of(const Strategy& s) {
  double worst = s.state.imag().cwiseAbs().maxCoeff();
  for (Party p : {Party::kAlice, Party::kBob})
    for (const auto& povm : s.povms(p))
      for (const ComplexMatrix& e : povm)
        worst = std::max(worst, e.imag().cwiseAbs().maxCoeff());
  return worst;
}

// Refines an entrywise-real rotation into a real Schmidt form via a real SVD
// of the rotated state matrix.
SchmidtRealWitness schmidt_real_witness_from(const Strategy& s,
                                             const RealRealization& rr) {
  Eigen::Map<const ComplexMatrix> m1(rr.rotated.state.data(), s.dim_a, s.dim_b);
  const RealMatrix mr = m1.real();
  Eigen::JacobiSVD<RealMatrix> svd(mr, Eigen::ComputeFullU | Eigen::ComputeFullV);

  SchmidtRealWitness out;
  out.u_a = svd.matrixU().transpose().cast<Complex>() * rr.w_a;
  out.u_b = svd.matrixV().transpose().cast<Complex>() * rr.w_b;

  const Strategy rot = apply_local_unitaries(s, out.u_a, out.u_b);
  out.max_imag_entry = max_imag_entry_of(rot);
  Eigen::Map<const ComplexMatrix> m2(rot.state.data(), s.dim_a, s.dim_b);
  ComplexMatrix diag = ComplexMatrix::Zero(s.dim_a, s.dim_b);
  const Eigen::Index r = std::min<Eigen::Index>(s.dim_a, s.dim_b);
  for (Eigen::Index k = 0; k < r; ++k) diag(k, k) = svd.singularValues()(k);
  out.diagonal_residual = (m2 - diag).norm();
  return out;
}

}  // namespace

MomentRealResult moment_real_direct(const Strategy& s, int max_len,
                                    const ClassifyOptions& opts) {
  require_valid(s);
  if (max_len < 0)
    throw std::invalid_argument("moment_real_direct: max_len must be >= 0");
  std::vector<ComplexMatrix> gens_a, gens_b;
  std::vector<Letter> letters_a, letters_b;
  flatten_party(s, Party::kAlice, gens_a, letters_a);
  flatten_party(s, Party::kBob, gens_b, letters_b);

  std::vector<ComplexMatrix> ops_a, ops_b;        // decision operators
  std::vector<std::vector<int>> words_a, words_b; // parallel generator words
  const bool exhaustive = max_len == 0;
  if (exhaustive) {
    ClosureOptions copts;
    copts.rank_tol = opts.rank_tol;
    AlgebraClosure ca = real_algebra_closure(gens_a, copts);
    AlgebraClosure cb = real_algebra_closure(gens_b, copts);
    if (ca.basis.size() * cb.basis.size() > opts.max_pairs)
      throw std::runtime_error("moment_real_direct: spanning pair count exceeds budget");
    ops_a = std::move(ca.word_ops);
    words_a = std::move(ca.words);
    ops_b = std::move(cb.word_ops);
    words_b = std::move(cb.words);
  } else {
    const size_t na = word_count(gens_a.size(), max_len, opts.max_pairs);
    const size_t nb = word_count(gens_b.size(), max_len, opts.max_pairs);
    if (na >= opts.max_pairs || nb >= opts.max_pairs || na * nb > opts.max_pairs)
      throw std::runtime_error("moment_real_direct: word-pair count exceeds budget");
    enumerate_words(gens_a, s.dim_a, max_len, ops_a, words_a);
    enumerate_words(gens_b, s.dim_b, max_len, ops_b, words_b);
  }

  MomentRealResult out;
  for (size_t i = 0; i < ops_a.size() && out.real; ++i)
    for (size_t j = 0; j < ops_b.size(); ++j) {
      const Complex value = moment_of(s, ops_a[i], ops_b[j]);
      out.max_imag = std::max(out.max_imag, std::abs(value.imag()));
      ++out.pairs_checked;
      if (std::abs(value.imag()) > opts.moment_tol) {
        MomentCounterexample ce;
        ce.alice_word = translate(letters_a, words_a[i]);
        ce.bob_word = translate(letters_b, words_b[j]);
        // Report the true word moment (exhaustive-mode operators are
        // normalized, so recompute from the generators).
        ce.moment = exhaustive
                        ? moment_of(s, word_operator(gens_a, words_a[i], s.dim_a),
                                    word_operator(gens_b, words_b[j], s.dim_b))
                        : value;
        out.counterexample = std::move(ce);
        out.real = false;
        break;
      }
    }
  return out;
}

bool moment_real_algebraic(const Strategy& s, double rank_tol) {
  require_valid(s);
  std::vector<ComplexMatrix> gens_a, gens_b;
  std::vector<Letter> letters_a, letters_b;
  flatten_party(s, Party::kAlice, gens_a, letters_a);
  flatten_party(s, Party::kBob, gens_b, letters_b);
  require_party_irreducible("moment_real_algebraic", gens_a, gens_b, rank_tol);
  return moment_real_algebraic_impl(s, rank_tol);
}

std::optional<SelfConjugacyWitness> self_conjugacy_witness(const Strategy& s,
                                                           const ClassifyOptions& opts) {
  require_valid(s);
  std::vector<ComplexMatrix> gens_a, gens_b;
  std::vector<Letter> letters_a, letters_b;
  flatten_party(s, Party::kAlice, gens_a, letters_a);
  flatten_party(s, Party::kBob, gens_b, letters_b);
  require_party_irreducible("self_conjugacy_witness", gens_a, gens_b, opts.rank_tol);
  const StructureType sta = structure_type(gens_a, opts.rank_tol);
  const StructureType stb = structure_type(gens_b, opts.rank_tol);
  return build_self_conjugacy(s, sta, stb, opts);
}

RealRealization realize_real(const Strategy& s, const SelfConjugacyWitness& w) {
  RealRealization out;
  out.w_a = takagi_symmetric_unitary(((w.u_a + w.u_a.transpose()) / 2.0).eval(), 1e-7);
  out.w_b = takagi_symmetric_unitary(((w.u_b + w.u_b.transpose()) / 2.0).eval(), 1e-7);
  out.rotated = apply_local_unitaries(s, out.w_a, out.w_b);
  out.max_imag_entry = max_imag_entry_of(out.rotated);
  return out;
}

QuaternionicRealization realize_quaternionic(const Strategy& s,
                                             const SelfConjugacyWitness& w) {
  QuaternionicRealization out;
  out.w_a =
      antisymmetric_unitary_factor(((w.u_a - w.u_a.transpose()) / 2.0).eval(), 1e-7);
  out.w_b =
      antisymmetric_unitary_factor(((w.u_b - w.u_b.transpose()) / 2.0).eval(), 1e-7);
  out.rotated = apply_local_unitaries(s, out.w_a, out.w_b);

  const ComplexMatrix ka = quaternion_conjugator(s.dim_a / 2);
  const ComplexMatrix kb = quaternion_conjugator(s.dim_b / 2);
  double worst = 0.0;
  for (Party p : {Party::kAlice, Party::kBob}) {
    const ComplexMatrix& k = p == Party::kAlice ? ka : kb;
    for (const auto& povm : out.rotated.povms(p))
      for (const ComplexMatrix& e : povm)
        worst = std::max(worst,
                         (e.conjugate() - k * e * k.adjoint()).cwiseAbs().maxCoeff());
  }
  out.embed_residual = worst;

  Eigen::Map<const ComplexMatrix> m(out.rotated.state.data(), s.dim_a, s.dim_b);
  out.state_residual = (ka * m * kb.transpose() - m.conjugate()).norm();
  return out;
}

RealnessReport classify_strategy(const Strategy& s, const ClassifyOptions& opts) {
  require_valid(s);
  std::vector<ComplexMatrix> gens_a, gens_b;
  std::vector<Letter> letters_a, letters_b;
  flatten_party(s, Party::kAlice, gens_a, letters_a);
  flatten_party(s, Party::kBob, gens_b, letters_b);
  require_party_irreducible("classify_strategy", gens_a, gens_b, opts.rank_tol);

  RealnessReport r;
  r.irreducible = true;
  r.alice_type = structure_type(gens_a, opts.rank_tol);
  r.bob_type = structure_type(gens_b, opts.rank_tol);

  const MomentRealResult direct = moment_real_direct(s, 0, opts);
  r.moment_real_direct = direct.real;
  r.counterexample = direct.counterexample;
  r.moment_real_algebraic = moment_real_algebraic_impl(s, opts.rank_tol);
  if (r.moment_real_direct != r.moment_real_algebraic)
    throw std::runtime_error(
        "classify_strategy: direct and algebraic moment-reality tests disagree; "
        "numerical inconsistency");

  r.self_conjugacy = build_self_conjugacy(s, r.alice_type, r.bob_type, opts);
  r.self_conjugate = r.self_conjugacy.has_value();
  if (r.self_conjugate != r.moment_real_direct)
    throw std::runtime_error(
        "classify_strategy: self-conjugacy and moment-reality disagree; "
        "numerical inconsistency");

  if (!r.moment_real_direct) {
    r.verdict = Verdict::Complex;
    return r;
  }

  const int ind_a = r.alice_type.indicator.value();
  const int ind_b = r.bob_type.indicator.value();
  if (ind_a != ind_b)
    throw std::runtime_error(
        "classify_strategy: conjugation indicators differ between the parties "
        "of a self-conjugate strategy; numerical inconsistency");

  if (ind_a < 0) {
    r.verdict = Verdict::SelfConjugateNotReal;
    return r;
  }

  const RealRealization rr = realize_real(s, *r.self_conjugacy);
  if (rr.max_imag_entry > opts.moment_tol)
    throw std::runtime_error(
        "classify_strategy: symmetric conjugators found but the Takagi "
        "rotation left imaginary entries; numerical inconsistency");
  r.verdict = Verdict::Real;
  r.schmidt_real = true;
  r.schmidt_witness = schmidt_real_witness_from(s, rr);
  return r;
}

std::vector<BlockVerdict> classify_blocks(const Strategy& s,
                                          const ClassifyOptions& opts) {
  require_valid(s);
  std::vector<ComplexMatrix> gens_a, gens_b;
  std::vector<Letter> letters_a, letters_b;
  flatten_party(s, Party::kAlice, gens_a, letters_a);
  flatten_party(s, Party::kBob, gens_b, letters_b);
  const BlockDecomposition ba = block_decompose(gens_a, opts.rank_tol);
  const BlockDecomposition bb = block_decompose(gens_b, opts.rank_tol);

  Eigen::Map<const ComplexMatrix> m(s.state.data(), s.dim_a, s.dim_b);
  std::vector<BlockVerdict> out;
  for (size_t k = 0; k < ba.blocks.size(); ++k)
    for (size_t l = 0; l < bb.blocks.size(); ++l) {
      const ComplexMatrix& va = ba.blocks[k].isometry;
      const ComplexMatrix& vb = bb.blocks[l].isometry;
      const ComplexMatrix mkl = va.adjoint() * m * vb.conjugate();
      const double weight = mkl.squaredNorm();
      if (weight < 1e-12) continue;

      Strategy sub;
      sub.dim_a = static_cast<int>(va.cols());
      sub.dim_b = static_cast<int>(vb.cols());
      const ComplexMatrix normalized = mkl / std::sqrt(weight);
      sub.state = Eigen::Map<const ComplexVector>(normalized.data(), normalized.size());
      sub.alice.resize(s.alice.size());
      for (size_t x = 0; x < s.alice.size(); ++x)
        for (const ComplexMatrix& e : s.alice[x])
          sub.alice[x].push_back((va.adjoint() * e * va).eval());
      sub.bob.resize(s.bob.size());
      for (size_t y = 0; y < s.bob.size(); ++y)
        for (const ComplexMatrix& f : s.bob[y])
          sub.bob[y].push_back((vb.adjoint() * f * vb).eval());

      BlockVerdict bv;
      bv.alice_block = static_cast<int>(k);
      bv.bob_block = static_cast<int>(l);
      bv.weight = weight;
      bv.report = classify_strategy(sub, opts);
      out.push_back(std::move(bv));
    }
  return out;
}

namespace {

double max_imag_sweep(const Strategy& s, const std::vector<ComplexMatrix>& gens_a,
                      const std::vector<ComplexMatrix>& gens_b, int max_total_len) {
  // All per-party products with at most `len` letters, including the identity.
  auto products_up_to = [](const std::vector<ComplexMatrix>& gens, Eigen::Index d,
                           int len) {
    std::vector<ComplexMatrix> out = {ComplexMatrix::Identity(d, d)};
    size_t level_begin = 0;
    for (int l = 0; l < len; ++l) {
      const size_t level_end = out.size();
      for (size_t k = level_begin; k < level_end; ++k)
        for (const ComplexMatrix& g : gens) out.push_back(g * out[k]);
      level_begin = level_end;
    }
    return out;
  };

  double worst = 0.0;
  for (int la = 0; la <= max_total_len; ++la) {
    const auto ops_a = products_up_to(gens_a, s.dim_a, la);
    const auto ops_b = products_up_to(gens_b, s.dim_b, max_total_len - la);
    for (const ComplexMatrix& a : ops_a)
      for (const ComplexMatrix& b : ops_b)
        worst = std::max(worst, std::abs(moment_of(s, a, b).imag()));
  }
  return worst;
}

}  // namespace

double max_imag_moment_brute(const Strategy& s, int max_total_len) {
  std::vector<ComplexMatrix> gens_a, gens_b;
  std::vector<Letter> letters_a, letters_b;
  flatten_party(s, Party::kAlice, gens_a, letters_a);
  flatten_party(s, Party::kBob, gens_b, letters_b);
  return max_imag_sweep(s, gens_a, gens_b, max_total_len);
}

double max_imag_observable_moment_brute(const Strategy& s, int max_total_len) {
  std::vector<ComplexMatrix> gens_a, gens_b;
  for (int x = 0; x < s.n_inputs(Party::kAlice); ++x)
    gens_a.push_back(observable(s, Party::kAlice, x));
  for (int y = 0; y < s.n_inputs(Party::kBob); ++y)
    gens_b.push_back(observable(s, Party::kBob, y));
  return max_imag_sweep(s, gens_a, gens_b, max_total_len);
}

}  // namespace bellkit
