// psdeg: command-line front end.
#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "psdeg/certificate.hpp"
#include "psdeg/degree_reduce.hpp"
#include "psdeg/errors.hpp"
#include "psdeg/experiment.hpp"
#include "psdeg/instance_json.hpp"
#include "psdeg/instances.hpp"
#include "psdeg/lasserre.hpp"
#include "psdeg/poly_text.hpp"
#include "psdeg/proof_json.hpp"

using namespace psdeg;

namespace {

int default_jobs() {
  if (const char* env = std::getenv("PSDEG_JOBS")) {
    try {
      const int v = std::stoi(env);
      if (v >= 1) return v;
    } catch (const std::exception&) {
    }
  }
  return 1;
}

void write_output(const std::string& path, const Json& j) {
  if (path.empty() || path == "-") {
    std::cout << j.dump(2) << "\n";
  } else {
    write_json_file(path, j);
  }
}

struct SolverFlags {
  std::uint32_t w = 1;
  std::string cutoff = "kw";
  double tol = 1e-8;
  int max_iter = 200;
  int jobs = default_jobs();
  bool rationalize = false;
  std::int64_t denom_cap = 1000000;

  void add(CLI::App* app) {
    app->add_option("--w", w, "product width")->check(CLI::Range(1u, 16u));
    app->add_option("--cutoff", cutoff, "cut-off rule")->check(CLI::IsMember({"kw", "degsum"}));
    app->add_option("--tol", tol, "solver tolerance")->check(CLI::Range(1e-14, 1e-1));
    app->add_option("--max-iter", max_iter, "interior-point iteration cap")
        ->check(CLI::PositiveNumber);
    app->add_option("--jobs", jobs, "worker threads (default $PSDEG_JOBS or 1)")
        ->check(CLI::PositiveNumber);
    app->add_flag("--rationalize", rationalize, "round certificates to exact rationals");
    app->add_option("--denom-cap", denom_cap, "rounding denominator cap")
        ->check(CLI::PositiveNumber);
  }

  LasserreOptions options() const {
    LasserreOptions lo;
    lo.w = w;
    if (cutoff == "degsum") lo.cutoff = CutoffRule::degree_sum_plus(0);
    lo.tol = tol;
    lo.max_iter = max_iter;
    lo.jobs = jobs;
    return lo;
  }
};

std::uint32_t half_degree(std::uint32_t two_d) {
  if (two_d == 0 || two_d % 2) throw ValidationError("degree must be positive and even");
  return two_d / 2;
}

Json certificate_json(const CertificateReport& rep) {
  Json j;
  j["exact"] = rep.exact;
  j["numeric_residual"] = rep.numeric_residual;
  j["rationalization_attempted"] = rep.rationalization_attempted;
  if (!rep.note.empty()) j["note"] = rep.note;
  j["measures"] = measures_to_json(rep.measures);
  j["proof"] = proof_to_json(rep.proof);
  return j;
}

Json pexp_json(const PseudoExpectation& E) {
  Json j;
  j["n"] = E.n;
  j["degree"] = E.two_d;
  j["provenance"] = E.provenance;
  Json values = Json::array();
  for (const auto& [m, v] : E.values) values.push_back({to_string(mask_monomial(m)), v});
  j["values"] = std::move(values);
  return j;
}

Json check_json(const PexpCheck& c) {
  Json j;
  j["ok"] = c.ok;
  Json fams = Json::array();
  for (const auto& f : c.families)
    fams.push_back({{"family", f.family}, {"ok", f.ok}, {"worst", f.worst}, {"where", f.where}});
  j["families"] = std::move(fams);
  return j;
}

std::vector<std::uint8_t> parse_charges(const std::string& spec, std::size_t vertices) {
  if (spec == "odd" || spec == "all1") return std::vector<std::uint8_t>(vertices, 1);
  if (spec == "even" || spec == "all0") return std::vector<std::uint8_t>(vertices, 0);
  std::vector<std::uint8_t> out;
  for (char c : spec) {
    if (c == '0' || c == '1') out.push_back(static_cast<std::uint8_t>(c - '0'));
    else if (c != ',') throw ValidationError("charges must be 0/1 digits");
  }
  if (out.size() != vertices) throw ValidationError("one charge per vertex required");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Positivstellensatz degree tools over the Boolean cube"};
  app.require_subcommand(1);
  std::string out_path;

  // gen
  auto* gen = app.add_subcommand("gen", "generate an instance file");
  std::string family;
  std::string graph = "cycle";
  std::size_t vertices = 3, gn = 1, gm = 1;
  std::uint32_t gdeg = 3, arity = 3;
  std::int64_t gk = 1;
  std::uint64_t seed = 1;
  std::string charges = "odd", mode = "xor", formulation, gamma = "1";
  gen->add_option("family", family, "tseitin | knapsack | csp")
      ->required()
      ->check(CLI::IsMember({"tseitin", "knapsack", "csp"}));
  gen->add_option("--graph", graph, "cycle | regular")->check(CLI::IsMember({"cycle", "regular"}));
  gen->add_option("--vertices", vertices, "vertex count");
  gen->add_option("--degree", gdeg, "regular graph degree");
  gen->add_option("--charges", charges, "odd | even | digit string such as 1,1,0");
  gen->add_option("--n", gn, "variables");
  gen->add_option("--k", gk, "knapsack right side");
  gen->add_option("--m", gm, "CSP constraint count");
  gen->add_option("--arity", arity, "CSP arity");
  gen->add_option("--mode", mode, "xor | sat")->check(CLI::IsMember({"xor", "sat"}));
  gen->add_option("--seed", seed, "generator seed");
  gen->add_option("--formulation", formulation, "emit a MAX-CSP encoding instead")
      ->check(CLI::IsMember({"direct", "withvars", "refutation"}));
  gen->add_option("--gamma", gamma, "threshold of the refutation formulation (p/q)");
  gen->add_option("-o,--out", out_path, "output file (default stdout)");

  // verify
  auto* ver = app.add_subcommand("verify", "check a proof and report its measures");
  std::string system_path, proof_path;
  std::uint32_t vw = 1;
  std::string vcut = "kw";
  ver->add_option("--system", system_path, "instance or system JSON")->required();
  ver->add_option("--proof", proof_path, "proof JSON")->required();
  ver->add_option("--w", vw, "width for the kw cut-off")->check(CLI::Range(1u, 16u));
  ver->add_option("--cutoff", vcut, "kw | degsum")->check(CLI::IsMember({"kw", "degsum"}));
  ver->add_option("-o,--out", out_path, "output file");

  // degree
  auto* deg = app.add_subcommand("degree", "smallest even refutation degree");
  std::string instance_path;
  std::uint32_t dmax = 8;
  SolverFlags dflags;
  deg->add_option("--instance", instance_path, "instance JSON")->required();
  deg->add_option("--dmax", dmax, "largest even degree to try");
  dflags.add(deg);
  deg->add_option("-o,--out", out_path, "output file");

  // bound
  auto* bnd = app.add_subcommand("bound", "best degree-2d lower bound for a polynomial");
  std::uint32_t two_d = 2;
  std::string poly_text;
  SolverFlags bflags;
  bnd->add_option("--instance", instance_path, "instance JSON")->required();
  bnd->add_option("--poly", poly_text, "polynomial (default: the instance objective)");
  bnd->add_option("--d", two_d, "even degree 2d");
  bflags.add(bnd);
  bnd->add_option("-o,--out", out_path, "output file");

  // pexp
  auto* pex = app.add_subcommand("pexp", "extract or check a pseudo-expectation");
  std::string source = "sdp";
  std::uint64_t point = 0;
  SolverFlags pflags;
  pex->add_option("--instance", instance_path, "instance JSON")->required();
  pex->add_option("--d", two_d, "even degree 2d");
  pex->add_option("--source", source, "sdp | point | uniform")
      ->check(CLI::IsMember({"sdp", "point", "uniform"}));
  pex->add_option("--point", point, "assignment mask for --source point (bit i-1 is x_i)");
  pflags.add(pex);
  pex->add_option("-o,--out", out_path, "output file");

  // reduce
  auto* red = app.add_subcommand("reduce", "degree reduction of a refutation");
  std::string rmode = "bound";
  double rtol = 1e-8;
  std::uint32_t rw = 1;
  std::string rcut = "kw";
  int rjobs = default_jobs();
  red->add_option("--system", system_path, "instance or system JSON")->required();
  red->add_option("--proof", proof_path, "refutation JSON")->required();
  red->add_option("--mode", rmode, "bound | constructive")
      ->check(CLI::IsMember({"bound", "constructive"}));
  red->add_option("--tol", rtol, "solver tolerance");
  red->add_option("--w", rw, "width for the kw cut-off")->check(CLI::Range(1u, 16u));
  red->add_option("--cutoff", rcut, "kw | degsum")->check(CLI::IsMember({"kw", "degsum"}));
  red->add_option("--jobs", rjobs, "worker threads")->check(CLI::PositiveNumber);
  red->add_option("-o,--out", out_path, "output file");

  // experiment
  auto* exp = app.add_subcommand("experiment", "run a batch study from a JSON config");
  std::string config_path;
  std::optional<int> ejobs;
  std::optional<double> etol;
  std::optional<std::string> ecsv, ejson;
  exp->add_option("--config", config_path, "config JSON")->required();
  exp->add_option("--jobs", ejobs, "instance-level threads");
  exp->add_option("--tol", etol, "solver tolerance");
  exp->add_option("--csv", ecsv, "CSV output path");
  exp->add_option("--json", ejson, "JSON output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*gen) {
      Json j;
      if (family == "tseitin") {
        const Graph g = graph == "cycle" ? cycle_graph(vertices)
                                         : random_regular_graph(vertices, gdeg, seed);
        j = tseitin_to_json(g, parse_charges(charges, g.vertices));
      } else if (family == "knapsack") {
        j = knapsack_to_json(gn, gk);
      } else {
        const CspInstance inst =
            gen_random_csp(gn, gm, arity, mode == "xor" ? CspMode::xor_parity : CspMode::sat, seed);
        j = csp_to_json(inst);
        if (!formulation.empty()) {
          const MaxCspEncoding enc =
              encode_maxcsp(inst, parse_rational(gamma), parse_formulation(formulation));
          j["family"] = "maxcsp_" + formulation;
          j["system"] = system_to_json(enc.system);
          if (enc.objective) j["objective"] = to_string(*enc.objective);
          else j.erase("objective");
        }
      }
      write_output(out_path, j);
      return 0;
    }

    if (*ver) {
      const ConstraintSystem Q = instance_from_json(read_json_file(system_path)).system;
      const PsProof proof = proof_from_json(read_json_file(proof_path));
      const CutoffRule c = vcut == "degsum" ? CutoffRule::degree_sum_plus(0) : CutoffRule::kw(Q, vw);
      const ProofMeasures m = measures(Q, proof, c);
      Json j = measures_to_json(m);
      j["refutation"] = proof.is_refutation();
      j["cutoff"] = c.describe();
      write_output(out_path, j);
      return m.valid ? 0 : 2;
    }

    if (*deg) {
      if (dmax == 0 || dmax % 2) throw ValidationError("dmax must be positive and even");
      const ConstraintSystem Q = instance_from_json(read_json_file(instance_path)).system;
      const RefutationSearch s =
          min_refutation_degree(Q, dmax, dflags.options(), dflags.rationalize, dflags.denom_cap);
      Json j;
      if (s.degree) j["degree"] = *s.degree;
      else j["degree"] = "none <= " + std::to_string(dmax);
      Json probes = Json::array();
      for (const auto& p : s.probes)
        probes.push_back({{"degree", p.two_d},
                          {"refutable", p.refutable},
                          {"by_equalities", p.by_equalities},
                          {"margin", p.margin},
                          {"iterations", p.iterations}});
      j["probes"] = std::move(probes);
      if (s.certificate) j["certificate"] = certificate_json(*s.certificate);
      write_output(out_path, j);
      return 0;
    }

    if (*bnd) {
      const InstanceFile inst = instance_from_json(read_json_file(instance_path));
      const std::size_t n = inst.system.n;
      Polynomial p;
      if (!poly_text.empty()) {
        p = parse_polynomial(poly_text, n);
      } else {
        const Json raw = read_json_file(instance_path);
        if (!raw.contains("objective")) throw ValidationError("no --poly and no objective in file");
        p = parse_polynomial(raw.at("objective").get<std::string>(), n);
      }
      const DualityResult r = duality_eval(inst.system, p, half_degree(two_d), bflags.options());
      Json j;
      j["degree"] = two_d;
      j["polynomial"] = to_string(p);
      j["refutable"] = !r.best_bound.has_value();
      j["best_bound"] = r.best_bound ? Json(*r.best_bound) : Json("+inf");
      j["min_pseudoexpectation"] =
          r.min_pseudoexpectation ? Json(*r.min_pseudoexpectation) : Json("+inf");
      j["gap"] = r.gap;
      j["status"] = to_string(r.status);
      j["margin"] = r.margin;
      write_output(out_path, j);
      return 0;
    }

    if (*pex) {
      const ConstraintSystem Q = instance_from_json(read_json_file(instance_path)).system;
      const std::uint32_t d = half_degree(two_d);
      const LasserreOptions lo = pflags.options();
      std::optional<PseudoExpectation> E;
      Json j;
      if (source == "point") {
        if (Q.n < 64 && (point >> Q.n) != 0) throw ValidationError("point mask exceeds n bits");
        E = point_evaluation(Q.n, two_d, point);
      } else if (source == "uniform") {
        E = uniform_measure(Q.n, two_d);
      } else {
        const LasserreSdp L = build_sdp(Q, d, lo);
        const MarginResult mr = solve_margin(L, lo);
        j["margin"] = mr.lambda;
        if (mr.refutable) {
          j["refutable"] = true;
        } else {
          E = extract_pseudoexpectation(L, mr.solution);
        }
      }
      if (E) {
        j["refutable"] = false;
        j["check"] = check_json(check_pseudoexpectation(*E, Q, d, lo, std::max(1e-6, 100 * lo.tol)));
        j["pseudoexpectation"] = pexp_json(*E);
      }
      write_output(out_path, j);
      return 0;
    }

    if (*red) {
      const ConstraintSystem Q = instance_from_json(read_json_file(system_path)).system;
      const PsProof proof = proof_from_json(read_json_file(proof_path));
      const CutoffRule c = rcut == "degsum" ? CutoffRule::degree_sum_plus(0) : CutoffRule::kw(Q, rw);
      ReduceOptions ro;
      ro.mode = rmode == "constructive" ? ReduceMode::constructive : ReduceMode::bound_only;
      ro.tol = rtol;
      ro.jobs = rjobs;
      const ReductionResult r = reduce_degree(Q, proof, c, ro);
      Json j;
      j["d0"] = r.d0;
      j["s"] = r.s;
      j["k"] = r.k;
      j["w"] = r.w;
      j["degree_bound"] = r.degree_bound;
      j["tradeoff_bound"] = r.tradeoff;
      Json trace = Json::array();
      for (const auto& t : r.trace) {
        Json e;
        e["depth"] = t.depth;
        e["path"] = t.path;
        e["n_eff"] = t.n_eff;
        e["s"] = t.s;
        e["t"] = t.t;
        e["leaf"] = t.leaf;
        e["guaranteed_degree"] = t.guaranteed_degree;
        if (t.achieved_degree) e["achieved_degree"] = *t.achieved_degree;
        if (t.variable) {
          e["variable"] = to_string(Monomial::of(*t.variable));
          e["a"] = t.variable->is_twin() ? 1 : 0;
          e["s_prime"] = t.s_prime;
          e["d_prime"] = t.d_prime;
          e["d_double_prime"] = t.d_double_prime;
          if (t.d_a) e["branch_degree_a"] = 2 * *t.d_a + 2 * t.d_double_prime;
          e["branch_degree_other"] = 2 * t.d_other + 2 * t.d_double_prime;
        }
        if (t.eps) e["eps"] = to_string(*t.eps);
        if (t.delta) e["delta"] = to_string(*t.delta);
        trace.push_back(std::move(e));
      }
      j["trace"] = std::move(trace);
      if (r.proof) {
        j["measures"] = measures_to_json(*r.measures);
        j["proof"] = proof_to_json(*r.proof);
      }
      write_output(out_path, j);
      return 0;
    }

    if (*exp) {
      const Json raw = read_json_file(config_path);
      ExperimentConfig cfg = config_from_json(raw);
      if (!raw.contains("jobs")) cfg.jobs = default_jobs();
      if (ejobs) cfg.jobs = *ejobs;
      if (etol) cfg.tol = *etol;
      if (ecsv) cfg.csv_path = *ecsv;
      if (ejson) cfg.json_path = *ejson;
      const ExperimentResult r = run_experiment(cfg);
      if (cfg.csv_path.empty() && cfg.json_path.empty()) std::cout << report_csv(r.report);
      return r.exit_code;
    }
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: malformed JSON: " << e.what() << "\n";
    return 2;
  } catch (const SolverError& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return 3;
  } catch (const GuaranteeViolation& e) {
    std::cerr << "guarantee violated: " << e.what() << "\n";
    return 4;
  }
  return 0;
}
