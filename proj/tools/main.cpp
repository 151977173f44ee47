// bellkit command-line front end: JSON I/O around the library modules with
// machine-readable exit codes (0 = success/pass, 1 = check failed,
// 2 = input error).
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "bellkit/classify.hpp"
#include "bellkit/dilation.hpp"
#include "bellkit/instances.hpp"
#include "bellkit/io.hpp"
#include "bellkit/projgen.hpp"
#include "bellkit/selftest.hpp"
#include "bellkit/strategy.hpp"

namespace {

using namespace bellkit;

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kInputError = 2;

void print_json(const Json& j) { std::cout << j.dump(2) << "\n"; }

// ----- validate -------------------------------------------------------------

int run_validate(const std::string& file, double tol, bool json) {
  const Strategy s = read_strategy_file(file);
  const PredicateReport r = validate(s, tol);
  if (json) {
    Json j;
    j["well_formed"] = r.well_formed;
    j["message"] = r.message;
    j["structure_residual"] = r.structure_residual;
    j["full_rank"] = r.full_rank;
    j["smallest_schmidt"] = r.smallest_schmidt;
    j["support_preserving"] = r.support_preserving;
    j["support_residual"] = r.support_residual;
    j["projective"] = r.projective;
    j["projectivity_residual"] = r.projectivity_residual;
    j["zero_projective"] = r.zero_projective;
    j["zero_projectivity_residual"] = r.zero_projectivity_residual;
    j["irreducible_a"] = r.irreducible_a;
    j["irreducible_b"] = r.irreducible_b;
    print_json(j);
  } else {
    std::cout << "well_formed          " << (r.well_formed ? "yes" : "no");
    if (!r.message.empty()) std::cout << "  (" << r.message << ")";
    std::cout << "\n";
    std::cout << "full_rank            " << (r.full_rank ? "yes" : "no")
              << "  (smallest Schmidt coefficient " << r.smallest_schmidt << ")\n"
              << "support_preserving   " << (r.support_preserving ? "yes" : "no")
              << "  (residual " << r.support_residual << ")\n"
              << "projective           " << (r.projective ? "yes" : "no")
              << "  (residual " << r.projectivity_residual << ")\n"
              << "zero_projective      " << (r.zero_projective ? "yes" : "no")
              << "  (residual " << r.zero_projectivity_residual << ")\n"
              << "irreducible          alice " << (r.irreducible_a ? "yes" : "no")
              << ", bob " << (r.irreducible_b ? "yes" : "no") << "\n"
              << (r.well_formed ? "PASS" : "FAIL") << "\n";
  }
  return r.well_formed ? kPass : kFail;
}

// ----- correlate ------------------------------------------------------------

int run_correlate(const std::string& file, int x, int y, bool json) {
  const Strategy s = read_strategy_file(file);
  require_valid(s);
  const int nx = s.n_inputs(Party::kAlice), ny = s.n_inputs(Party::kBob);
  if (x >= nx || y >= ny) throw std::invalid_argument("correlate: input out of range");
  Json tables = Json::array();
  for (int xi = (x < 0 ? 0 : x); xi <= (x < 0 ? nx - 1 : x); ++xi)
    for (int yi = (y < 0 ? 0 : y); yi <= (y < 0 ? ny - 1 : y); ++yi) {
      const RealMatrix t = correlation_table(s, xi, yi);
      if (json) {
        Json entry;
        entry["x"] = xi;
        entry["y"] = yi;
        Json rows = Json::array();
        for (Eigen::Index a = 0; a < t.rows(); ++a) {
          Json row = Json::array();
          for (Eigen::Index b = 0; b < t.cols(); ++b) row.push_back(t(a, b));
          rows.push_back(std::move(row));
        }
        entry["p"] = std::move(rows);
        tables.push_back(std::move(entry));
      } else {
        std::cout << "p(a,b | x=" << xi << ", y=" << yi << "):\n";
        for (Eigen::Index a = 0; a < t.rows(); ++a) {
          std::cout << " ";
          for (Eigen::Index b = 0; b < t.cols(); ++b) std::cout << " " << t(a, b);
          std::cout << "\n";
        }
      }
    }
  if (json) print_json(tables);
  return kPass;
}

// ----- moments --------------------------------------------------------------

int run_moments(const std::string& file, const std::string& word_json, int max_len,
                bool observables, bool json) {
  const Strategy s = read_strategy_file(file);
  require_valid(s);
  if (!word_json.empty()) {
    const Word w = word_from_json(Json::parse(word_json));
    const Complex m = moment(s, w);
    if (json) {
      Json j;
      j["word"] = word_to_json(w);
      j["moment"] = Json::array({m.real(), m.imag()});
      print_json(j);
    } else {
      std::cout << "moment = " << m.real() << (m.imag() < 0 ? " - " : " + ")
                << std::abs(m.imag()) << "i\n";
    }
    return kPass;
  }
  double max_imag = 0;
  if (observables) {
    max_imag = max_imag_observable_moment_brute(s, max_len);
  } else {
    max_imag = max_imag_moment_brute(s, max_len);
  }
  ClassifyOptions opts;
  const MomentRealResult direct = moment_real_direct(s, max_len, opts);
  if (json) {
    Json j;
    j["max_len"] = max_len;
    j["letters"] = observables ? "observables" : "effects";
    j["max_imag"] = max_imag;
    j["pairs_checked"] = direct.pairs_checked;
    j["all_real"] = direct.real;
    if (direct.counterexample) {
      Json c;
      c["alice_word"] = word_to_json(direct.counterexample->alice_word);
      c["bob_word"] = word_to_json(direct.counterexample->bob_word);
      c["moment"] = Json::array({direct.counterexample->moment.real(),
                                 direct.counterexample->moment.imag()});
      j["counterexample"] = std::move(c);
    } else {
      j["counterexample"] = nullptr;
    }
    print_json(j);
  } else {
    std::cout << "max |Im moment| over " << (observables ? "observable" : "effect")
              << " words of length <= " << max_len << ": " << max_imag << "\n";
    if (direct.counterexample)
      std::cout << "first offending effect-word pair: "
                << word_to_json(direct.counterexample->alice_word).dump() << " , "
                << word_to_json(direct.counterexample->bob_word).dump()
                << " with moment (" << direct.counterexample->moment.real() << ", "
                << direct.counterexample->moment.imag() << ")\n";
    else
      std::cout << "all swept moments real\n";
  }
  return kPass;
}

// ----- classify -------------------------------------------------------------

int run_classify(const std::string& file, double moment_tol, bool blocks, bool json) {
  const Strategy s = read_strategy_file(file);
  ClassifyOptions opts;
  opts.moment_tol = moment_tol;
  if (blocks) {
    const std::vector<BlockVerdict> verdicts = classify_blocks(s, opts);
    if (json) {
      Json arr = Json::array();
      for (const BlockVerdict& v : verdicts) {
        Json j;
        j["alice_block"] = v.alice_block;
        j["bob_block"] = v.bob_block;
        j["weight"] = v.weight;
        j["report"] = realness_report_to_json(v.report);
        arr.push_back(std::move(j));
      }
      print_json(arr);
    } else {
      for (const BlockVerdict& v : verdicts)
        std::cout << "block (" << v.alice_block << ", " << v.bob_block
                  << ") weight " << v.weight << ": "
                  << to_string(v.report.verdict) << "\n";
    }
    return kPass;
  }
  try {
    const RealnessReport r = classify_strategy(s, opts);
    if (json) {
      print_json(realness_report_to_json(r));
    } else {
      std::cout << "verdict              " << to_string(r.verdict) << "\n"
                << "alice type           " << to_string(r.alice_type.tag);
      if (r.alice_type.indicator)
        std::cout << " (indicator " << *r.alice_type.indicator << ")";
      std::cout << "\nbob type             " << to_string(r.bob_type.tag);
      if (r.bob_type.indicator)
        std::cout << " (indicator " << *r.bob_type.indicator << ")";
      std::cout << "\nself-conjugate       " << (r.self_conjugate ? "yes" : "no")
                << "\nmoment-real (direct) " << (r.moment_real_direct ? "yes" : "no")
                << "\nmoment-real (algebra)"
                << (r.moment_real_algebraic ? " yes" : " no") << "\n";
      if (r.counterexample)
        std::cout << "counterexample       "
                  << word_to_json(r.counterexample->alice_word).dump() << " , "
                  << word_to_json(r.counterexample->bob_word).dump() << " -> ("
                  << r.counterexample->moment.real() << ", "
                  << r.counterexample->moment.imag() << ")\n";
    }
    return kPass;
  } catch (const ReducibleStrategyError& e) {
    std::cerr << "classify: " << e.what()
              << " (rerun with --blocks for per-block verdicts)\n";
    return kFail;
  } catch (const std::runtime_error& e) {
    std::cerr << "classify: " << e.what() << "\n";
    return kFail;
  }
}

// ----- dilate-check ---------------------------------------------------------

int run_dilate_check(const std::string& strategy_file, const std::string& canonical_file,
                     const std::string& witness_file, bool complex_mode, double tol,
                     bool json) {
  const Strategy s = read_strategy_file(strategy_file);
  const Strategy canonical = read_strategy_file(canonical_file);
  const DilationWitness w = read_witness_file(witness_file);
  const ResidualReport r = complex_mode
                               ? check_complex_local_dilation(s, canonical, w, tol)
                               : check_local_dilation(s, canonical, w, tol);
  if (json) {
    print_json(residual_report_to_json(r));
  } else {
    std::cout << (complex_mode ? "complex local dilation" : "local dilation")
              << " max residual " << r.max_residual << " (tolerance " << r.tolerance
              << ")\n"
              << (r.passed ? "PASS" : "FAIL") << "\n";
  }
  return r.passed ? kPass : kFail;
}

// ----- naimark / restrict / realsim ------------------------------------------

int run_naimark(const std::string& file, const std::string& out, double tol,
                bool json) {
  const Strategy s = read_strategy_file(file);
  const Strategy d = naimark_dilate(s, tol);
  if (!out.empty()) write_strategy_file(out, d);
  const double before = projectivity_residual(s);
  const double after = projectivity_residual(d);
  if (json) {
    Json j;
    j["projectivity_residual_before"] = before;
    j["projectivity_residual_after"] = after;
    j["dims"] = Json::array({d.dim_a, d.dim_b});
    print_json(j);
  } else {
    std::cout << "projectivity residual " << before << " -> " << after << ", dims ("
              << d.dim_a << ", " << d.dim_b << ")\n";
  }
  return kPass;
}

int run_restrict(const std::string& file, const std::string& out, double tol,
                 bool json) {
  const Strategy s = read_strategy_file(file);
  require_valid(s);
  if (support_preservation_residual(s, tol) > tol) {
    // Re-run the detailed check to name the violating effect.
    try {
      restrict_to_support(s, tol);
    } catch (const std::invalid_argument& e) {
      std::cerr << e.what() << "\n";
      return kFail;
    }
  }
  const Strategy r = restrict_to_support(s, tol);
  if (!out.empty()) write_strategy_file(out, r);
  Json j;
  j["dims_before"] = Json::array({s.dim_a, s.dim_b});
  j["dims_after"] = Json::array({r.dim_a, r.dim_b});
  j["full_rank"] = is_full_rank(r, tol);
  if (json)
    print_json(j);
  else
    std::cout << "dims (" << s.dim_a << ", " << s.dim_b << ") -> (" << r.dim_a
              << ", " << r.dim_b << "), full rank "
              << (is_full_rank(r, tol) ? "yes" : "no") << "\n";
  return kPass;
}

int run_realsim(const std::string& file, const std::string& out,
                const std::string& witness_out, bool check, double tol, bool json) {
  const Strategy s = read_strategy_file(file);
  const Strategy sim = real_simulation(s);
  if (!out.empty()) write_strategy_file(out, sim);
  const DilationWitness w = real_simulation_dilation_witness(s);
  if (!witness_out.empty()) write_witness_file(witness_out, w);
  Json j;
  j["dims"] = Json::array({sim.dim_a, sim.dim_b});
  bool passed = true;
  if (check) {
    const ResidualReport r = check_complex_local_dilation(sim, s, w, tol);
    j["check"] = residual_report_to_json(r);
    passed = r.passed;
  }
  if (json)
    print_json(j);
  else {
    std::cout << "real simulation dims (" << sim.dim_a << ", " << sim.dim_b << ")\n";
    if (check)
      std::cout << "complex dilation check max residual "
                << j["check"]["max_residual"].get<double>() << "\n"
                << (passed ? "PASS" : "FAIL") << "\n";
  }
  return passed ? kPass : kFail;
}

// ----- selftest / seesaw / projgen -------------------------------------------

int run_selftest(double tol, bool json) {
  const QuaternionSelfTest r = run_quaternion_selftest(tol);
  if (json) {
    Json j;
    j["value"] = r.value;
    j["expected"] = r.expected;
    j["block_values"] = r.block_values;
    j["leftright_residual"] = r.leftright_residual;
    j["anticommutator_norm"] = r.anticommutator_norm;
    j["eigencheck"] = Json{{"max_eigenvalue", r.eigencheck.max_eigenvalue},
                           {"eigengap", r.eigencheck.eigengap},
                           {"fidelity", r.eigencheck.fidelity}};
    j["passed"] = r.passed;
    print_json(j);
  } else {
    std::cout << "Bell value           " << r.value << "\n"
              << "expected (12 sqrt 2) " << r.expected << "\n"
              << "CHSH blocks         ";
    for (double v : r.block_values) std::cout << " " << v;
    std::cout << "\nleft/right residual  " << r.leftright_residual << "\n"
              << "anticommutator norm  " << r.anticommutator_norm << "\n"
              << "Bell operator        top eigenvalue " << r.eigencheck.max_eigenvalue
              << ", gap " << r.eigencheck.eigengap << ", fidelity "
              << r.eigencheck.fidelity << "\n"
              << (r.passed ? "PASS" : "FAIL") << "\n";
  }
  return r.passed ? kPass : kFail;
}

int run_seesaw(const std::string& scenario_file, const std::string& builtin,
               int restarts, std::uint64_t seed, const std::string& out, bool json) {
  SeesawScenario sc;
  if (!scenario_file.empty())
    sc = read_scenario_file(scenario_file);
  else if (builtin == "quaternion")
    sc = quaternion_scenario();
  else if (builtin == "chsh")
    sc = chsh_scenario();
  else
    throw std::invalid_argument("seesaw: need --scenario FILE or --builtin {quaternion, chsh}");
  const SeesawResult r = seesaw_optimize(sc, seed, restarts);
  const Json j = seesaw_result_to_json(r);
  if (!out.empty()) {
    std::ofstream f(out);
    if (!f) throw std::runtime_error("cannot open output file: " + out);
    f << j.dump(2) << "\n";
  }
  if (json)
    print_json(j);
  else
    std::cout << "best value " << r.best_value << " (restart " << r.best_restart
              << " of " << restarts << ", seed " << seed << ")\n";
  return kPass;
}

int run_projgen(int n, bool check, const std::string& emit, bool json) {
  const ProjectionFamily fam = projections_quaternion(n);
  if (!emit.empty()) {
    std::ofstream f(emit);
    if (!f) throw std::runtime_error("cannot open output file: " + emit);
    f << family_to_json(fam).dump(2) << "\n";
  }
  Json j;
  j["n"] = fam.n;
  j["count"] = fam.projections.size();
  j["expected_real_dim"] = fam.expected_real_dim;
  bool passed = true;
  if (check) {
    const GenerationReport rep = verify_generation(fam);
    j["real_dim"] = rep.real_dim;
    j["stabilization_length"] = rep.stabilization_length;
    j["irreducible"] = rep.irreducible;
    j["structure"] = to_string(rep.structure.tag);
    j["passed"] = rep.passed;
    passed = rep.passed;
  }
  if (json)
    print_json(j);
  else {
    std::cout << "n = " << fam.n << ": " << fam.projections.size()
              << " projections, expected real dim " << fam.expected_real_dim << "\n";
    if (check)
      std::cout << "closure real dim " << j["real_dim"].get<int>() << ", structure "
                << j["structure"].get<std::string>() << ", stabilized at word length "
                << j["stabilization_length"].get<int>() << "\n"
                << (passed ? "PASS" : "FAIL") << "\n";
  }
  return passed ? kPass : kFail;
}

// ----- emit -------------------------------------------------------------------

int run_emit(const std::string& name, const std::string& path) {
  Strategy s;
  if (name == "chsh")
    s = chsh_strategy();
  else if (name == "quaternion")
    s = quaternion_strategy();
  else if (name == "pauli3")
    s = pauli3_strategy();
  else
    throw std::invalid_argument("emit: unknown builtin \"" + name +
                                "\" (expected chsh, quaternion, or pauli3)");
  write_strategy_file(path, s);
  std::cout << "wrote " << name << " strategy to " << path << "\n";
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  std::cout << std::setprecision(17);
  std::cerr << std::setprecision(17);

  CLI::App app{"bellkit: bipartite Bell-scenario strategies -- correlations, "
               "realness classification, local dilations, and the quaternion "
               "self-test instance"};
  app.require_subcommand(1);
  app.fallthrough();  // lets --json appear after the subcommand as well
  bool json = false;
  app.add_flag("--json", json, "machine-readable JSON output (all subcommands)");

  std::string file, out, witness_file, canonical_file, word_json, builtin, name;
  double tol = kDefaultTol;
  double moment_tol = 1e-7;
  int x = -1, y = -1, max_len = 2, n = 2, restarts = 10;
  std::uint64_t seed = 0;
  bool observables = false, blocks = false, complex_mode = false, check = false;

  CLI::App* validate_cmd = app.add_subcommand("validate", "check a strategy file");
  validate_cmd->add_option("file", file)->required();
  validate_cmd->add_option("--tolerance", tol, "structural tolerance");

  CLI::App* correlate_cmd =
      app.add_subcommand("correlate", "print correlation tables");
  correlate_cmd->add_option("file", file)->required();
  correlate_cmd->add_option("--x", x, "restrict to one Alice input");
  correlate_cmd->add_option("--y", y, "restrict to one Bob input");

  CLI::App* moments_cmd =
      app.add_subcommand("moments", "word moments and imaginary-part sweeps");
  moments_cmd->add_option("file", file)->required();
  moments_cmd->add_option("--word", word_json,
                          "single word as JSON, e.g. [[\"x0\",\"a1\"],[\"y0\",\"b0\"]]");
  moments_cmd->add_option("--max-len", max_len, "sweep words up to this length");
  moments_cmd->add_flag("--observables", observables,
                        "sweep dichotomic observable words instead of effects");

  CLI::App* classify_cmd =
      app.add_subcommand("classify", "realness-ladder verdict");
  classify_cmd->add_option("file", file)->required();
  classify_cmd->add_option("--moment-tol", moment_tol, "imaginary-part tolerance");
  classify_cmd->add_flag("--blocks", blocks, "per-block verdicts for reducible input");

  CLI::App* dilate_cmd =
      app.add_subcommand("dilate-check", "verify a local dilation witness");
  dilate_cmd->add_option("--strategy", file)->required();
  dilate_cmd->add_option("--canonical", canonical_file)->required();
  dilate_cmd->add_option("--witness", witness_file)->required();
  dilate_cmd->add_flag("--complex", complex_mode, "complex local dilation");
  dilate_cmd->add_option("--tolerance", tol, "residual tolerance");

  CLI::App* naimark_cmd =
      app.add_subcommand("naimark", "projective dilation of a strategy");
  naimark_cmd->add_option("file", file)->required();
  naimark_cmd->add_option("--out", out, "write the dilated strategy here");
  naimark_cmd->add_option("--tolerance", tol, "projectivity tolerance");

  CLI::App* restrict_cmd =
      app.add_subcommand("restrict", "restrict a strategy to its state supports");
  restrict_cmd->add_option("file", file)->required();
  restrict_cmd->add_option("--out", out, "write the restricted strategy here");
  restrict_cmd->add_option("--tolerance", tol, "support tolerance");

  CLI::App* realsim_cmd =
      app.add_subcommand("realsim", "real simulation and its dilation witness");
  realsim_cmd->add_option("file", file)->required();
  realsim_cmd->add_option("--out", out, "write the simulation here");
  realsim_cmd->add_option("--witness", witness_file, "write the witness here");
  realsim_cmd->add_flag("--check", check, "verify the complex dilation witness");
  realsim_cmd->add_option("--tolerance", tol, "residual tolerance");

  CLI::App* selftest_cmd =
      app.add_subcommand("selftest", "golden-value self-test instances");
  std::string instance;
  selftest_cmd->add_option("instance", instance, "instance name (quaternion)")
      ->required();
  double selftest_tol = 1e-9;
  selftest_cmd->add_option("--tolerance", selftest_tol, "pass tolerance");

  CLI::App* seesaw_cmd =
      app.add_subcommand("seesaw", "alternating Bell-functional maximization");
  seesaw_cmd->add_option("--scenario", file, "scenario JSON file");
  seesaw_cmd->add_option("--builtin", builtin, "builtin scenario: quaternion | chsh");
  seesaw_cmd->add_option("--restarts", restarts, "number of random restarts");
  seesaw_cmd->add_option("--seed", seed, "deterministic seed (default 0)");
  seesaw_cmd->add_option("--out", out, "write the full result JSON here");

  CLI::App* projgen_cmd =
      app.add_subcommand("projgen", "quaternion-generating projection families");
  projgen_cmd->add_option("--n", n, "quaternion matrix size (2..16)")->required();
  projgen_cmd->add_flag("--check", check, "verify generation and structure type");
  projgen_cmd->add_option("--emit", out, "write the family JSON here");

  CLI::App* emit_cmd = app.add_subcommand("emit", "write a builtin strategy file");
  emit_cmd->add_option("name", name, "chsh | quaternion | pauli3")->required();
  emit_cmd->add_option("path", file, "output path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);     // prints help or the error message
    return code == 0 ? 0 : kInputError;  // help/version exit 0, bad usage exit 2
  }

  try {
    if (*validate_cmd) return run_validate(file, tol, json);
    if (*correlate_cmd) return run_correlate(file, x, y, json);
    if (*moments_cmd) return run_moments(file, word_json, max_len, observables, json);
    if (*classify_cmd) return run_classify(file, moment_tol, blocks, json);
    if (*dilate_cmd)
      return run_dilate_check(file, canonical_file, witness_file, complex_mode, tol,
                              json);
    if (*naimark_cmd) return run_naimark(file, out, tol, json);
    if (*restrict_cmd) return run_restrict(file, out, tol, json);
    if (*realsim_cmd) return run_realsim(file, out, witness_file, check, tol, json);
    if (*selftest_cmd) {
      if (instance != "quaternion")
        throw std::invalid_argument("selftest: unknown instance \"" + instance + "\"");
      return run_selftest(selftest_tol, json);
    }
    if (*seesaw_cmd) return run_seesaw(file, builtin, restarts, seed, out, json);
    if (*projgen_cmd) return run_projgen(n, check, out, json);
    if (*emit_cmd) return run_emit(name, file);
  } catch (const Json::parse_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
