#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "psdeg/certificate.hpp"
#include "psdeg/constraint_system.hpp"
#include "psdeg/cutoff.hpp"
#include "psdeg/ps_proof.hpp"

namespace psdeg {

// ceil(4 sqrt(2(n+1) log s) + k w + 4), natural log.
std::int64_t tradeoff_bound(std::size_t n, double s, std::uint32_t k, std::uint32_t w);

// exp((d - k w - 4)^2 / (32 (n+1))); requires d >= k w + 4.
double size_lower_bound(std::size_t n, std::int64_t d, std::uint32_t k, std::uint32_t w);

// d + floor(2 (n+1) log(s) / d).
std::int64_t lifted_degree(std::size_t n, double s, std::int64_t d);

// floor(sqrt(2 (n+1) log s)) + 1.
std::int64_t initial_threshold(std::size_t n, double s);

enum class ReduceMode { bound_only, constructive };

struct TraceNode {
  std::size_t depth = 0;
  std::string path;      // restrictions applied so far, e.g. "~x1=0,x2=1"
  std::size_t n_eff = 0;  // pairs not yet restricted
  double s = 0.0;        // size parameter at this node
  std::size_t t = 0;     // explicit monomials of degree >= d
  bool leaf = false;
  std::int64_t d_prime = 0;
  std::int64_t d_double_prime = 0;
  // Degree the node is guaranteed to be refuted at: 2d' + 2d'' internally,
  // 2(d-1) + 2d'' at leaves.
  std::int64_t guaranteed_degree = 0;
  std::optional<std::int64_t> achieved_degree;  // constructive mode
  // Internal nodes only.
  std::optional<VarRef> variable;
  double s_prime = 0.0;                // t (1 - d/2n)
  std::optional<std::int64_t> d_a;     // present when s' >= 1
  std::int64_t d_other = 0;            // d_{1-a}
  std::optional<Rational> eps, delta;  // constructive mode
};

struct ReductionResult {
  std::int64_t d0 = 0;
  double s = 0.0;
  std::uint32_t k = 0;
  std::uint32_t w = 0;
  std::int64_t degree_bound = 0;  // root guarantee
  std::int64_t tradeoff = 0;
  std::vector<TraceNode> trace;  // preorder, a-branch first
  std::optional<PsProof> proof;
  std::optional<ProofMeasures> measures;
};

struct ReduceOptions {
  ReduceMode mode = ReduceMode::bound_only;
  double tol = 1e-8;
  // Constructive mode size caps.
  std::size_t max_vars = 12;
  std::uint32_t max_degree = 16;
  int jobs = 1;
};

// Throws GuaranteeViolation when an asserted inequality fails or when a
// constructive composition cannot be realized at its guaranteed degree.
ReductionResult reduce_degree(const ConstraintSystem& Q, const PsProof& proof, const CutoffRule& c,
                              const ReduceOptions& opts);

}  // namespace psdeg
