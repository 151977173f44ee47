#include "bellkit/io.hpp"

#include <fstream>
#include <stdexcept>

namespace bellkit {

namespace {

Json complex_to_json(const Complex& z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2)
    throw std::runtime_error("expected complex number as [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

Json matrix_to_json(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty())
    throw std::runtime_error("expected matrix as a non-empty array of rows");
  const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
  const Eigen::Index cols = static_cast<Eigen::Index>(j[0].size());
  ComplexMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    if (static_cast<Eigen::Index>(j[i].size()) != cols)
      throw std::runtime_error("matrix rows have inconsistent lengths");
    for (Eigen::Index k = 0; k < cols; ++k) m(i, k) = complex_from_json(j[i][k]);
  }
  return m;
}

Json vector_to_json(const ComplexVector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v(i)));
  return out;
}

ComplexVector vector_from_json(const Json& j) {
  if (!j.is_array()) throw std::runtime_error("expected vector as an array");
  ComplexVector v(static_cast<Eigen::Index>(j.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = complex_from_json(j[i]);
  return v;
}

Json strategy_to_json(const Strategy& s) {
  Json j;
  j["dims"] = Json::array({s.dim_a, s.dim_b});
  j["state"] = vector_to_json(s.state);
  for (const std::string key : {"alice", "bob"}) {
    const auto& povms = key == "alice" ? s.alice : s.bob;
    const char prefix = key == "alice" ? 'x' : 'y';
    Json inputs = Json::array();
    for (size_t x = 0; x < povms.size(); ++x) {
      Json input;
      input["input"] = prefix + std::to_string(x);
      Json effects = Json::array();
      for (const ComplexMatrix& e : povms[x]) effects.push_back(matrix_to_json(e));
      input["effects"] = std::move(effects);
      inputs.push_back(std::move(input));
    }
    j[key] = std::move(inputs);
  }
  return j;
}

Strategy strategy_from_json(const Json& j) {
  Strategy s;
  const Json& dims = j.at("dims");
  if (!dims.is_array() || dims.size() != 2)
    throw std::runtime_error("expected \"dims\" as [dim_a, dim_b]");
  s.dim_a = dims[0].get<int>();
  s.dim_b = dims[1].get<int>();
  s.state = vector_from_json(j.at("state"));
  for (const std::string key : {"alice", "bob"}) {
    auto& povms = key == "alice" ? s.alice : s.bob;
    const char prefix = key == "alice" ? 'x' : 'y';
    size_t x = 0;
    for (const Json& input : j.at(key)) {
      const std::string expected = prefix + std::to_string(x);
      if (input.at("input").get<std::string>() != expected)
        throw std::runtime_error("expected input label \"" + expected +
                                 "\" at position " + std::to_string(x));
      std::vector<ComplexMatrix> povm;
      for (const Json& e : input.at("effects")) povm.push_back(matrix_from_json(e));
      povms.push_back(std::move(povm));
      ++x;
    }
  }
  return s;
}

// Word JSON: letters as [input label, outcome label] pairs in application
// order, e.g. [["x0","a1"],["y2","b0"]]; the label prefixes carry the party.
Json word_to_json(const Word& w) {
  Json out = Json::array();
  for (const Letter& l : w) {
    const bool alice = l.party == Party::kAlice;
    out.push_back(Json::array({(alice ? "x" : "y") + std::to_string(l.input),
                               (alice ? "a" : "b") + std::to_string(l.outcome)}));
  }
  return out;
}

Word word_from_json(const Json& j) {
  if (!j.is_array()) throw std::runtime_error("expected word as an array of letters");
  Word w;
  for (const Json& lj : j) {
    if (!lj.is_array() || lj.size() != 2)
      throw std::runtime_error("expected letter as [input, outcome] labels");
    const std::string in = lj[0].get<std::string>();
    const std::string out = lj[1].get<std::string>();
    if (in.size() < 2 || out.size() < 2 || (in[0] != 'x' && in[0] != 'y'))
      throw std::runtime_error("bad letter labels: " + in + ", " + out);
    Letter l;
    l.party = in[0] == 'x' ? Party::kAlice : Party::kBob;
    if (out[0] != (l.party == Party::kAlice ? 'a' : 'b'))
      throw std::runtime_error("letter outcome label does not match party: " + out);
    l.input = std::stoi(in.substr(1));
    l.outcome = std::stoi(out.substr(1));
    w.push_back(l);
  }
  return w;
}

Strategy read_strategy_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open strategy file: " + path);
  Json j = Json::parse(in);
  return strategy_from_json(j);
}

void write_strategy_file(const std::string& path, const Strategy& s) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << strategy_to_json(s).dump(2) << "\n";
}

Json witness_to_json(const DilationWitness& w) {
  Json j;
  j["U_A"] = matrix_to_json(w.u_a);
  j["U_B"] = matrix_to_json(w.u_b);
  j["aux0"] = vector_to_json(w.aux0);
  j["aux1"] = vector_to_json(w.aux1);
  return j;
}

DilationWitness witness_from_json(const Json& j) {
  DilationWitness w;
  w.u_a = matrix_from_json(j.at("U_A"));
  w.u_b = matrix_from_json(j.at("U_B"));
  w.aux0 = vector_from_json(j.at("aux0"));
  w.aux1 = vector_from_json(j.at("aux1"));
  return w;
}

DilationWitness read_witness_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open witness file: " + path);
  Json j = Json::parse(in);
  return witness_from_json(j);
}

void write_witness_file(const std::string& path, const DilationWitness& w) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << witness_to_json(w).dump(2) << "\n";
}

Json family_to_json(const ProjectionFamily& fam) {
  Json j;
  j["n"] = fam.n;
  j["expected_real_dim"] = fam.expected_real_dim;
  Json ps = Json::array();
  for (const ComplexMatrix& p : fam.projections) ps.push_back(matrix_to_json(p));
  j["projections"] = std::move(ps);
  return j;
}

ProjectionFamily family_from_json(const Json& j) {
  ProjectionFamily fam;
  fam.n = j.at("n").get<int>();
  fam.expected_real_dim = j.at("expected_real_dim").get<int>();
  for (const Json& p : j.at("projections"))
    fam.projections.push_back(matrix_from_json(p));
  return fam;
}

Json scenario_to_json(const SeesawScenario& sc) {
  Json j;
  j["dim_a"] = sc.dim_a;
  j["dim_b"] = sc.dim_b;
  j["n_inputs_a"] = sc.n_inputs_a;
  j["n_inputs_b"] = sc.n_inputs_b;
  Json f;
  f["offset"] = sc.functional.offset;
  Json terms = Json::array();
  for (const auto& [key, c] : sc.functional.coefficients) {
    Json t;
    t["x"] = key[0];
    t["y"] = key[1];
    t["a"] = key[2];
    t["b"] = key[3];
    t["c"] = c;
    terms.push_back(std::move(t));
  }
  f["terms"] = std::move(terms);
  j["functional"] = std::move(f);
  return j;
}

SeesawScenario scenario_from_json(const Json& j) {
  SeesawScenario sc;
  sc.dim_a = j.at("dim_a").get<int>();
  sc.dim_b = j.at("dim_b").get<int>();
  sc.n_inputs_a = j.at("n_inputs_a").get<int>();
  sc.n_inputs_b = j.at("n_inputs_b").get<int>();
  const Json& f = j.at("functional");
  sc.functional.offset = f.at("offset").get<double>();
  for (const Json& t : f.at("terms"))
    sc.functional.coefficients[{t.at("x").get<int>(), t.at("y").get<int>(),
                                t.at("a").get<int>(), t.at("b").get<int>()}] +=
        t.at("c").get<double>();
  return sc;
}

SeesawScenario read_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open scenario file: " + path);
  Json j = Json::parse(in);
  return scenario_from_json(j);
}

Json residual_report_to_json(const ResidualReport& r) {
  Json j;
  j["passed"] = r.passed;
  j["max_residual"] = r.max_residual;
  j["tolerance"] = r.tolerance;
  j["state_residual"] = r.state_residual;
  j["alice_residuals"] = r.alice_residuals;
  j["bob_residuals"] = r.bob_residuals;
  return j;
}

namespace {

Json structure_to_json(const StructureType& t) {
  Json j;
  j["tag"] = to_string(t.tag);
  j["indicator"] = t.indicator ? Json(*t.indicator) : Json(nullptr);
  if (t.intertwiner) j["intertwiner"] = matrix_to_json(*t.intertwiner);
  return j;
}

}  // namespace

Json realness_report_to_json(const RealnessReport& r) {
  Json j;
  j["verdict"] = to_string(r.verdict);
  j["irreducible"] = r.irreducible;
  j["alice_type"] = structure_to_json(r.alice_type);
  j["bob_type"] = structure_to_json(r.bob_type);
  j["self_conjugate"] = r.self_conjugate;
  if (r.self_conjugacy) {
    Json w;
    w["U_A"] = matrix_to_json(r.self_conjugacy->u_a);
    w["U_B"] = matrix_to_json(r.self_conjugacy->u_b);
    w["phase"] = Json::array(
        {r.self_conjugacy->phase.real(), r.self_conjugacy->phase.imag()});
    w["alice_residual"] = r.self_conjugacy->alice_residual;
    w["bob_residual"] = r.self_conjugacy->bob_residual;
    w["state_residual"] = r.self_conjugacy->state_residual;
    j["self_conjugacy"] = std::move(w);
  } else {
    j["self_conjugacy"] = nullptr;
  }
  j["schmidt_real"] = r.schmidt_real;
  if (r.schmidt_witness) {
    Json w;
    w["U_A"] = matrix_to_json(r.schmidt_witness->u_a);
    w["U_B"] = matrix_to_json(r.schmidt_witness->u_b);
    w["max_imag_entry"] = r.schmidt_witness->max_imag_entry;
    w["diagonal_residual"] = r.schmidt_witness->diagonal_residual;
    j["schmidt_witness"] = std::move(w);
  } else {
    j["schmidt_witness"] = nullptr;
  }
  j["moment_real_direct"] = r.moment_real_direct;
  j["moment_real_algebraic"] = r.moment_real_algebraic;
  if (r.counterexample) {
    Json c;
    c["alice_word"] = word_to_json(r.counterexample->alice_word);
    c["bob_word"] = word_to_json(r.counterexample->bob_word);
    c["moment"] = Json::array(
        {r.counterexample->moment.real(), r.counterexample->moment.imag()});
    j["counterexample"] = std::move(c);
  } else {
    j["counterexample"] = nullptr;
  }
  return j;
}

Json seesaw_result_to_json(const SeesawResult& r) {
  Json j;
  j["best_value"] = r.best_value;
  j["best_restart"] = r.best_restart;
  j["seed"] = r.seed;
  Json iters = Json::array();
  for (const auto& t : r.traces) iters.push_back(t.size());
  j["iterations"] = std::move(iters);
  j["traces"] = r.traces;
  j["best_strategy"] = strategy_to_json(r.best_strategy);
  return j;
}

}  // namespace bellkit
