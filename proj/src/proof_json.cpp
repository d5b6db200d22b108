#include "psdeg/proof_json.hpp"

#include <algorithm>
#include <fstream>

#include "psdeg/errors.hpp"
#include "psdeg/poly_text.hpp"

namespace psdeg {

namespace {

Polynomial parse_field(const Json& j, std::size_t n) {
  if (!j.is_string()) throw ValidationError("expected a polynomial string");
  return parse_polynomial(j.get<std::string>(), n);
}

std::size_t read_n(const Json& j) {
  if (!j.contains("n") || !j["n"].is_number_unsigned())
    throw ValidationError("missing nonnegative integer field \"n\"");
  return j["n"].get<std::size_t>();
}

}  // namespace

Json system_to_json(const ConstraintSystem& Q) {
  Json j;
  j["n"] = Q.n;
  j["ineqs"] = Json::array();
  for (const auto& q : Q.ineqs) j["ineqs"].push_back(to_string(q));
  j["eqs"] = Json::array();
  for (const auto& p : Q.eqs) j["eqs"].push_back(to_string(p));
  return j;
}

ConstraintSystem system_from_json(const Json& j) {
  if (!j.is_object()) throw ValidationError("system must be a JSON object");
  if (j.contains("system")) return system_from_json(j["system"]);
  ConstraintSystem Q;
  Q.n = read_n(j);
  for (const auto& key : {"ineqs", "eqs"}) {
    if (!j.contains(key)) continue;
    if (!j[key].is_array()) throw ValidationError(std::string("\"") + key + "\" must be an array");
    auto& dest = std::string(key) == "ineqs" ? Q.ineqs : Q.eqs;
    for (const auto& p : j[key]) dest.push_back(parse_field(p, Q.n));
  }
  return Q;
}

Json proof_to_json(const PsProof& proof) {
  Json j;
  j["n"] = proof.n;
  j["target"] = to_string(proof.target);
  j["squares"] = Json::array();
  for (const auto& [J, roots] : proof.squares) {
    Json entry;
    entry["J"] = J;
    entry["roots"] = Json::array();
    bool unit = true;
    for (const auto& r : roots) {
      entry["roots"].push_back(to_string(r.root));
      unit = unit && r.weight == 1;
    }
    if (!unit) {
      entry["weights"] = Json::array();
      for (const auto& r : roots) entry["weights"].push_back(to_string(r.weight));
    }
    j["squares"].push_back(std::move(entry));
  }
  j["multipliers"] = Json::array();
  for (const auto& [idx, t] : proof.multipliers)
    j["multipliers"].push_back(Json{{"j", idx}, {"t", to_string(t)}});
  j["ideal"] = Json::array();
  for (const auto& [q, u] : proof.ideal)
    j["ideal"].push_back(Json{{"axiom", to_string(q.polynomial(proof.n))}, {"u", to_string(u)}});
  return j;
}

PsProof proof_from_json(const Json& j) {
  if (!j.is_object()) throw ValidationError("proof must be a JSON object");
  PsProof proof;
  proof.n = read_n(j);
  proof.target = j.contains("target") ? parse_field(j["target"], proof.n)
                                      : Polynomial::constant(proof.n, -1);
  for (const auto& entry : j.value("squares", Json::array())) {
    IndexSet J = entry.value("J", IndexSet{});
    std::sort(J.begin(), J.end());
    const auto& roots = entry.at("roots");
    const bool weighted = entry.contains("weights");
    if (weighted && entry["weights"].size() != roots.size())
      throw ValidationError("\"weights\" and \"roots\" differ in length");
    auto& list = proof.squares[J];
    for (std::size_t i = 0; i < roots.size(); ++i) {
      Rational w = weighted ? parse_rational(entry["weights"][i].get<std::string>()) : Rational(1);
      list.push_back(WeightedRoot{w, parse_field(roots[i], proof.n)});
    }
  }
  for (const auto& entry : j.value("multipliers", Json::array())) {
    auto idx = entry.at("j").get<std::uint32_t>();
    Polynomial t = parse_field(entry.at("t"), proof.n);
    auto [it, inserted] = proof.multipliers.emplace(idx, t);
    if (!inserted) it->second = it->second + t;
  }
  for (const auto& entry : j.value("ideal", Json::array())) {
    Axiom q = axiom_from_polynomial(parse_field(entry.at("axiom"), proof.n));
    Polynomial u = parse_field(entry.at("u"), proof.n);
    auto [it, inserted] = proof.ideal.emplace(q, u);
    if (!inserted) it->second = it->second + u;
  }
  return proof;
}

Json measures_to_json(const ProofMeasures& m) {
  Json j;
  j["valid"] = m.valid;
  j["degree"] = m.degree;
  if (m.degree_mod_c) j["degree_mod_c"] = *m.degree_mod_c;
  j["monomial_size"] = m.monomial_size;
  j["product_width"] = m.product_width;
  j["residual"] = to_string(m.residual);
  return j;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write " + path);
  out << j.dump(2) << '\n';
}

}  // namespace psdeg
