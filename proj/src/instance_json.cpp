#include "psdeg/instance_json.hpp"

#include "psdeg/errors.hpp"
#include "psdeg/poly_text.hpp"

namespace psdeg {

ConstraintSystem csp_system(const CspInstance& inst) {
  ConstraintSystem Q;
  Q.n = inst.n;
  for (const auto& c : inst.constraints) Q.eqs.push_back(c.p - Polynomial::constant(inst.n, 1));
  return Q;
}

Json tseitin_to_json(const Graph& g, const std::vector<std::uint8_t>& charges) {
  Json j;
  j["family"] = "tseitin";
  j["graph"]["vertices"] = g.vertices;
  j["graph"]["edges"] = Json::array();
  for (const auto& [u, v] : g.edges) j["graph"]["edges"].push_back({u, v});
  if (g.regular_degree) j["graph"]["degree"] = *g.regular_degree;
  j["charges"] = charges;
  j["system"] = system_to_json(gen_tseitin(g, charges));
  return j;
}

Json knapsack_to_json(std::size_t n, std::int64_t k) {
  Json j;
  j["family"] = "knapsack";
  j["n"] = n;
  j["k"] = k;
  j["system"] = system_to_json(gen_knapsack(n, k));
  return j;
}

Json csp_to_json(const CspInstance& inst) {
  Json j;
  j["family"] = to_string(inst.mode);
  j["n"] = inst.n;
  j["m"] = inst.constraints.size();
  j["arity"] = inst.arity;
  j["seed"] = inst.seed;
  j["constraints"] = Json::array();
  for (const auto& c : inst.constraints) {
    Json e;
    e["vars"] = c.vars;
    if (inst.mode == CspMode::xor_parity) {
      e["rhs"] = c.rhs;
    } else {
      e["negated"] = c.negated;
    }
    e["p"] = to_string(c.p);
    j["constraints"].push_back(std::move(e));
  }
  Polynomial obj(inst.n);
  for (const auto& c : inst.constraints) obj = obj + c.p;
  if (!inst.constraints.empty())
    j["objective"] = to_string(obj.scaled(Rational(1, static_cast<unsigned long>(inst.constraints.size()))));
  j["system"] = system_to_json(csp_system(inst));
  return j;
}

CspInstance csp_from_json(const Json& j) {
  CspInstance inst;
  inst.mode = parse_csp_mode(j.at("family").get<std::string>());
  inst.n = j.at("n").get<std::size_t>();
  inst.arity = j.value("arity", 0u);
  inst.seed = j.value("seed", std::uint64_t{0});
  for (const auto& e : j.at("constraints")) {
    auto vars = e.at("vars").get<std::vector<std::uint32_t>>();
    if (inst.mode == CspMode::xor_parity) {
      inst.constraints.push_back(xor_constraint(inst.n, vars, e.at("rhs").get<std::uint8_t>()));
    } else {
      inst.constraints.push_back(
          sat_clause(inst.n, vars, e.at("negated").get<std::vector<std::uint8_t>>()));
    }
  }
  return inst;
}

InstanceFile instance_from_json(const Json& j) {
  if (!j.is_object()) throw ValidationError("instance must be a JSON object");
  InstanceFile f;
  f.family = j.value("family", std::string("system"));
  f.meta = j;
  if (f.family == "xor" || f.family == "sat") {
    f.csp = csp_from_json(j);
    f.system = csp_system(*f.csp);
  } else {
    f.system = system_from_json(j);
  }
  f.system.validate();
  return f;
}

}  // namespace psdeg
