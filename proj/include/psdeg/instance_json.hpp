#pragma once

#include <optional>
#include <string>

#include "psdeg/instances.hpp"
#include "psdeg/proof_json.hpp"

namespace psdeg {

// Instance file: family metadata plus the derived constraint system under
// "system". CSP files also carry the constraint list and the direct
// objective; their system is {p_j - 1 = 0}.
struct InstanceFile {
  std::string family;
  ConstraintSystem system;
  std::optional<CspInstance> csp;
  Json meta;
};

// The satisfaction system {p_j = 1} of a CSP.
ConstraintSystem csp_system(const CspInstance& inst);

Json tseitin_to_json(const Graph& g, const std::vector<std::uint8_t>& charges);
Json knapsack_to_json(std::size_t n, std::int64_t k);
Json csp_to_json(const CspInstance& inst);
CspInstance csp_from_json(const Json& j);

// Accepts instance files and bare systems ({"n", "ineqs", "eqs"}).
InstanceFile instance_from_json(const Json& j);

}  // namespace psdeg
