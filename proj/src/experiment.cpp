#include "psdeg/experiment.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "psdeg/certificate.hpp"
#include "psdeg/errors.hpp"
#include "psdeg/lasserre.hpp"

namespace psdeg {

namespace {

const std::set<std::string> kConfigKeys = {
    "experiment", "mode", "n",    "m",      "arity", "seeds", "degrees", "formulation",
    "knapsack",   "w",    "cutoff", "tol", "jobs",  "csv",   "json"};

LasserreOptions lasserre_options(const ExperimentConfig& cfg) {
  LasserreOptions lo;
  lo.w = cfg.w;
  if (cfg.cutoff == "degsum") lo.cutoff = CutoffRule::degree_sum_plus(0);
  lo.tol = cfg.tol;
  lo.jobs = 1;
  return lo;
}

std::string gap_id(const ExperimentConfig& cfg, std::uint64_t seed) {
  const std::string family = cfg.mode == CspMode::xor_parity ? "xor" : "sat";
  return family + std::to_string(cfg.arity) + "_n" + std::to_string(cfg.n) + "_m" +
         std::to_string(cfg.m) + "_s" + std::to_string(seed);
}

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<GapRecord> run_gap_instance(const ExperimentConfig& cfg, std::uint64_t seed) {
  const CspInstance inst = gen_random_csp(cfg.n, cfg.m, cfg.arity, cfg.mode, seed);
  const Rational opt = opt_brute_force(inst);
  const MaxCspEncoding enc = encode_maxcsp(inst, opt, cfg.formulation);
  const LasserreOptions lo = lasserre_options(cfg);
  std::vector<GapRecord> out;
  for (std::uint32_t two_d : cfg.degrees) {
    GapRecord r;
    r.id = gap_id(cfg, seed);
    r.seed = seed;
    r.two_d = two_d;
    r.opt = opt;
    try {
      // sos = sup E(obj) = -(best bound of -obj).
      const DualityResult res = duality_eval(enc.system, -*enc.objective, two_d / 2, lo);
      if (!res.best_bound) {
        r.status = "encoding refutable";
      } else {
        r.sos = -*res.best_bound;
        if (*r.sos > 0) r.alpha = to_double(opt) / *r.sos;
        if (to_double(opt) > *r.sos + 10 * cfg.tol) r.status = "sandwich violated";
      }
    } catch (const SolverError& e) {
      r.status = std::string("solver error: ") + e.what();
    }
    out.push_back(std::move(r));
  }
  return out;
}

KnapsackRecord run_knapsack_instance(const ExperimentConfig& cfg, std::size_t n, std::int64_t k) {
  KnapsackRecord r;
  r.id = "ks_" + std::to_string(n) + "_" + std::to_string(k);
  r.n = n;
  r.k = k;
  r.dmax = cfg.dmax;
  try {
    const RefutationSearch s =
        min_refutation_degree(gen_knapsack(n, k), cfg.dmax, lasserre_options(cfg), false);
    r.degree = s.degree;
  } catch (const SolverError& e) {
    r.status = std::string("solver error: ") + e.what();
  }
  return r;
}

template <class T>
std::vector<T> get_list(const Json& j, const char* key) {
  if (!j.is_array()) throw ValidationError(std::string("config field ") + key + " must be a list");
  return j.get<std::vector<T>>();
}

}  // namespace

void ExperimentConfig::validate() const {
  if (cutoff != "kw" && cutoff != "degsum")
    throw ValidationError("cutoff must be kw or degsum, got " + cutoff);
  if (!(tol > 0) || tol >= 1) throw ValidationError("tol must lie in (0, 1)");
  if (w < 1) throw ValidationError("w must be at least 1");
  if (jobs < 1) throw ValidationError("jobs must be at least 1");
  if (kind == ExperimentKind::gap) {
    if (n == 0 || n > 24) throw ValidationError("gap experiments need 1 <= n <= 24");
    if (m == 0) throw ValidationError("m must be positive");
    if (arity == 0 || arity > n) throw ValidationError("arity must lie in [1, n]");
    if (formulation == Formulation::refutation)
      throw ValidationError("gap experiments need the direct or withvars formulation");
    if (degrees.empty()) throw ValidationError("degree list is empty");
    for (auto d : degrees) {
      if (d == 0 || d % 2) throw ValidationError("degrees must be positive and even");
      if (formulation == Formulation::direct && d < arity)
        throw ValidationError("degree " + std::to_string(d) + " is below the objective degree " +
                              std::to_string(arity));
    }
    if (std::set<std::uint64_t>(seeds.begin(), seeds.end()).size() != seeds.size())
      throw ValidationError("duplicate seeds");
  } else {
    if (dmax == 0 || dmax % 2) throw ValidationError("dmax must be positive and even");
    for (auto v : knapsack_n)
      if (v == 0 || v > 12) throw ValidationError("knapsack n must lie in [1, 12]");
  }
}

ExperimentConfig config_from_json(const Json& j) {
  if (!j.is_object()) throw ValidationError("experiment config must be a JSON object");
  for (const auto& [key, value] : j.items())
    if (!kConfigKeys.count(key)) throw ValidationError("unknown config field " + key);
  ExperimentConfig cfg;
  try {
    if (j.contains("experiment")) {
      const auto kind = j.at("experiment").get<std::string>();
      if (kind == "gap") cfg.kind = ExperimentKind::gap;
      else if (kind == "knapsack") cfg.kind = ExperimentKind::knapsack;
      else throw ValidationError("unknown experiment " + kind);
    }
    if (j.contains("mode")) cfg.mode = parse_csp_mode(j.at("mode").get<std::string>());
    if (j.contains("n")) cfg.n = j.at("n").get<std::size_t>();
    if (j.contains("m")) cfg.m = j.at("m").get<std::size_t>();
    if (j.contains("arity")) cfg.arity = j.at("arity").get<std::uint32_t>();
    if (j.contains("seeds")) cfg.seeds = get_list<std::uint64_t>(j.at("seeds"), "seeds");
    if (j.contains("degrees"))
      cfg.degrees = get_list<std::uint32_t>(j.at("degrees"), "degrees");
    if (j.contains("formulation"))
      cfg.formulation = parse_formulation(j.at("formulation").get<std::string>());
    if (j.contains("knapsack")) {
      const Json& ks = j.at("knapsack");
      if (ks.contains("n")) cfg.knapsack_n = get_list<std::size_t>(ks.at("n"), "knapsack.n");
      if (ks.contains("k")) cfg.knapsack_k = get_list<std::int64_t>(ks.at("k"), "knapsack.k");
      if (ks.contains("dmax")) cfg.dmax = ks.at("dmax").get<std::uint32_t>();
    }
    if (j.contains("w")) cfg.w = j.at("w").get<std::uint32_t>();
    if (j.contains("cutoff")) cfg.cutoff = j.at("cutoff").get<std::string>();
    if (j.contains("tol")) cfg.tol = j.at("tol").get<double>();
    if (j.contains("jobs")) cfg.jobs = j.at("jobs").get<int>();
    if (j.contains("csv")) cfg.csv_path = j.at("csv").get<std::string>();
    if (j.contains("json")) cfg.json_path = j.at("json").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("bad config field: ") + e.what());
  }
  return cfg;
}

Json config_to_json(const ExperimentConfig& cfg) {
  Json j;
  j["experiment"] = cfg.kind == ExperimentKind::gap ? "gap" : "knapsack";
  j["mode"] = to_string(cfg.mode);
  j["n"] = cfg.n;
  j["m"] = cfg.m;
  j["arity"] = cfg.arity;
  j["seeds"] = cfg.seeds;
  j["degrees"] = cfg.degrees;
  j["formulation"] = to_string(cfg.formulation);
  j["knapsack"] = {{"n", cfg.knapsack_n}, {"k", cfg.knapsack_k}, {"dmax", cfg.dmax}};
  j["w"] = cfg.w;
  j["cutoff"] = cfg.cutoff;
  j["tol"] = cfg.tol;
  j["jobs"] = cfg.jobs;
  j["csv"] = cfg.csv_path;
  j["json"] = cfg.json_path;
  return j;
}

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

Report gap_report(const std::vector<GapRecord>& records, const std::optional<double>& alpha_hat) {
  Report r;
  r.columns = {"id", "seed", "two_d", "opt", "sos", "alpha", "status"};
  for (const auto& g : records) {
    r.rows.push_back({g.id, std::to_string(g.seed), std::to_string(g.two_d), to_string(g.opt),
                      g.sos ? format_double(*g.sos) : "", g.alpha ? format_double(*g.alpha) : "",
                      g.status});
  }
  r.summary.emplace_back("records", std::to_string(records.size()));
  r.summary.emplace_back("alpha_hat", alpha_hat ? format_double(*alpha_hat) : "");
  return r;
}

Report knapsack_report(const std::vector<KnapsackRecord>& records) {
  Report r;
  r.columns = {"id", "n", "k", "dmax", "min_degree", "status"};
  for (const auto& k : records) {
    r.rows.push_back({k.id, std::to_string(k.n), std::to_string(k.k), std::to_string(k.dmax),
                      k.degree ? std::to_string(*k.degree) : "none", k.status});
  }
  r.summary.emplace_back("records", std::to_string(records.size()));
  return r;
}

std::string report_csv(const Report& r) {
  std::ostringstream os;
  for (std::size_t i = 0; i < r.columns.size(); ++i)
    os << (i ? "," : "") << csv_cell(r.columns[i]);
  os << "\n";
  for (const auto& row : r.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_cell(row[i]);
    os << "\n";
  }
  return os.str();
}

Json report_json(const Report& r) {
  Json j;
  j["columns"] = r.columns;
  j["rows"] = Json::array();
  for (const auto& row : r.rows) {
    Json o = Json::object();
    for (std::size_t i = 0; i < row.size(); ++i) o[r.columns[i]] = row[i];
    j["rows"].push_back(std::move(o));
  }
  Json s = Json::object();
  for (const auto& [k, v] : r.summary) s[k] = v;
  j["summary"] = std::move(s);
  return j;
}

void emit_report(const Report& r, const std::string& csv_path, const std::string& json_path) {
  if (!csv_path.empty()) {
    std::ofstream f(csv_path, std::ios::binary);
    if (!f) throw ValidationError("cannot write " + csv_path);
    f << report_csv(r);
  }
  if (!json_path.empty()) write_json_file(json_path, report_json(r));
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  ExperimentResult res;
  if (cfg.kind == ExperimentKind::gap) {
    std::vector<std::uint64_t> seeds = cfg.seeds;
    std::sort(seeds.begin(), seeds.end());
    std::vector<std::vector<GapRecord>> slots(seeds.size());
    const long count = static_cast<long>(seeds.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(cfg.jobs)
    for (long i = 0; i < count; ++i) slots[i] = run_gap_instance(cfg, seeds[i]);
    for (auto& s : slots)
      for (auto& r : s) res.gap_records.push_back(std::move(r));
    for (const auto& r : res.gap_records) {
      if (r.alpha) res.alpha_hat = res.alpha_hat ? std::min(*res.alpha_hat, *r.alpha) : *r.alpha;
      if (r.status == "sandwich violated") res.exit_code = 4;
      else if (r.status != "ok" && res.exit_code == 0) res.exit_code = 3;
    }
    res.report = gap_report(res.gap_records, res.alpha_hat);
  } else {
    std::vector<std::pair<std::size_t, std::int64_t>> grid;
    for (auto n : cfg.knapsack_n)
      for (auto k : cfg.knapsack_k) grid.emplace_back(n, k);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    res.knapsack_records.resize(grid.size());
    const long count = static_cast<long>(grid.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(cfg.jobs)
    for (long i = 0; i < count; ++i)
      res.knapsack_records[i] = run_knapsack_instance(cfg, grid[i].first, grid[i].second);
    for (const auto& r : res.knapsack_records)
      if (r.status != "ok") res.exit_code = 3;
    res.report = knapsack_report(res.knapsack_records);
  }
  emit_report(res.report, cfg.csv_path, cfg.json_path);
  return res;
}

}  // namespace psdeg
