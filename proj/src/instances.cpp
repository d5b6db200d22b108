#include "psdeg/instances.hpp"

#include <algorithm>
#include <numeric>

#include "psdeg/boolean_ideal.hpp"
#include "psdeg/errors.hpp"
#include "psdeg/kernels.hpp"

namespace psdeg {

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t SplitMix64::uniform(std::uint64_t bound) {
  if (bound == 0) throw ValidationError("uniform bound must be positive");
  unsigned __int128 product = static_cast<unsigned __int128>(next()) * bound;
  auto low = static_cast<std::uint64_t>(product);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      product = static_cast<unsigned __int128>(next()) * bound;
      low = static_cast<std::uint64_t>(product);
    }
  }
  return static_cast<std::uint64_t>(product >> 64);
}

std::vector<std::uint32_t> Graph::degrees() const {
  std::vector<std::uint32_t> deg(vertices, 0);
  for (const auto& [u, v] : edges) {
    ++deg[u];
    ++deg[v];
  }
  return deg;
}

Graph cycle_graph(std::size_t vertices) {
  if (vertices == 0) throw ValidationError("graph must be nonempty");
  Graph g;
  g.vertices = vertices;
  g.regular_degree = 2;
  for (std::uint32_t u = 0; u < vertices; ++u) {
    std::uint32_t v = static_cast<std::uint32_t>((u + 1) % vertices);
    g.edges.emplace_back(std::min(u, v), std::max(u, v));
  }
  return g;
}

Graph random_regular_graph(std::size_t vertices, std::uint32_t degree, std::uint64_t seed) {
  if (vertices == 0) throw ValidationError("graph must be nonempty");
  if ((vertices * degree) % 2 != 0) throw ValidationError("n*d must be even");
  std::vector<std::uint32_t> points;
  points.reserve(vertices * degree);
  for (std::uint32_t u = 0; u < vertices; ++u)
    for (std::uint32_t k = 0; k < degree; ++k) points.push_back(u);
  SplitMix64 rng(seed);
  for (std::size_t i = points.size(); i > 1; --i) std::swap(points[i - 1], points[rng.uniform(i)]);
  Graph g;
  g.vertices = vertices;
  g.regular_degree = degree;
  for (std::size_t i = 0; i + 1 < points.size(); i += 2)
    g.edges.emplace_back(std::min(points[i], points[i + 1]), std::max(points[i], points[i + 1]));
  return g;
}

ConstraintSystem gen_tseitin(const Graph& g, const std::vector<std::uint8_t>& charges) {
  if (g.vertices == 0 || g.edges.empty()) throw ValidationError("graph must be nonempty");
  if (charges.size() != g.vertices) throw ValidationError("one charge per vertex required");
  const std::size_t n = g.edges.size();
  ConstraintSystem Q;
  Q.n = n;
  const Polynomial one = Polynomial::constant(n, 1);
  std::vector<Polynomial> prod(g.vertices, one);
  for (std::uint32_t e = 0; e < n; ++e) {
    const Polynomial factor = one - Polynomial::variable(n, VarRef::basic(e + 1)).scaled(2);
    const auto [u, v] = g.edges[e];
    if (u >= g.vertices || v >= g.vertices) throw ValidationError("edge endpoint out of range");
    prod[u] = prod[u] * factor;
    prod[v] = prod[v] * factor;
  }
  for (std::size_t u = 0; u < g.vertices; ++u) {
    const Rational rhs = charges[u] ? -1 : 1;
    Q.eqs.push_back(multilinearize(prod[u]) - Polynomial::constant(n, rhs));
  }
  return Q;
}

ConstraintSystem gen_knapsack(std::size_t n, std::int64_t k) {
  if (n == 0) throw ValidationError("knapsack needs n >= 1");
  ConstraintSystem Q;
  Q.n = n;
  Polynomial p = Polynomial::constant(n, Rational(static_cast<long>(-k)));
  for (std::uint32_t i = 1; i <= n; ++i)
    p = p + Polynomial::variable(n, VarRef::basic(i)).scaled(2);
  Q.eqs.push_back(std::move(p));
  return Q;
}

bool CspConstraint::holds(std::uint64_t mask, CspMode mode) const {
  if (mode == CspMode::xor_parity) {
    unsigned parity = 0;
    for (auto v : vars) parity ^= (mask >> (v - 1)) & 1u;
    return parity == rhs;
  }
  for (std::size_t b = 0; b < vars.size(); ++b) {
    const bool x = (mask >> (vars[b] - 1)) & 1u;
    if (x != (negated[b] != 0)) return true;
  }
  return false;
}

namespace {

void check_vars(std::size_t n, const std::vector<std::uint32_t>& vars) {
  if (vars.empty()) throw ValidationError("constraint needs at least one variable");
  if (vars.size() > 63) throw ValidationError("constraint arity too large");
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (vars[i] == 0 || vars[i] > n) throw ValidationError("constraint variable out of range");
    for (std::size_t j = 0; j < i; ++j)
      if (vars[i] == vars[j]) throw ValidationError("constraint variables must be distinct");
  }
}

}  // namespace

CspConstraint xor_constraint(std::size_t n, std::vector<std::uint32_t> vars, std::uint8_t rhs) {
  check_vars(n, vars);
  CspConstraint c;
  c.vars = std::move(vars);
  c.rhs = rhs & 1u;
  c.p = interpolate(n, c.vars, [&](std::uint64_t local) {
    return static_cast<unsigned>(std::popcount(local) & 1) == c.rhs;
  });
  return c;
}

CspConstraint sat_clause(std::size_t n, std::vector<std::uint32_t> vars,
                         std::vector<std::uint8_t> negated) {
  check_vars(n, vars);
  if (negated.size() != vars.size()) throw ValidationError("one polarity per literal required");
  CspConstraint c;
  c.vars = std::move(vars);
  c.negated = std::move(negated);
  c.p = interpolate(n, c.vars, [&](std::uint64_t local) {
    for (std::size_t b = 0; b < c.vars.size(); ++b)
      if ((((local >> b) & 1u) != 0) != (c.negated[b] != 0)) return true;
    return false;
  });
  return c;
}

CspInstance gen_random_csp(std::size_t n, std::size_t m, std::uint32_t arity, CspMode mode,
                           std::uint64_t seed) {
  if (arity == 0) throw ValidationError("arity must be positive");
  if (arity > n) throw ValidationError("arity exceeds variable count");
  CspInstance inst;
  inst.n = n;
  inst.mode = mode;
  inst.arity = arity;
  inst.seed = seed;
  SplitMix64 rng(seed);
  std::vector<std::uint32_t> pool(n);
  for (std::size_t c = 0; c < m; ++c) {
    std::iota(pool.begin(), pool.end(), 1u);
    // Partial Fisher-Yates: the first `arity` slots are a uniform ordered sample.
    for (std::uint32_t i = 0; i < arity; ++i) std::swap(pool[i], pool[i + rng.uniform(n - i)]);
    std::vector<std::uint32_t> vars(pool.begin(), pool.begin() + arity);
    if (mode == CspMode::xor_parity) {
      inst.constraints.push_back(xor_constraint(n, std::move(vars), rng.bit() ? 1 : 0));
    } else {
      std::vector<std::uint8_t> neg(arity);
      for (auto& b : neg) b = rng.bit() ? 1 : 0;
      inst.constraints.push_back(sat_clause(n, std::move(vars), std::move(neg)));
    }
  }
  return inst;
}

MaxCspEncoding encode_maxcsp(const CspInstance& inst, const Rational& gamma,
                             Formulation formulation) {
  if (gamma < 0 || gamma > 1) throw ValidationError("gamma must lie in [0, 1]");
  const std::size_t m = inst.constraints.size();
  if (m == 0) throw ValidationError("instance has no constraints");
  const Rational inv_m(1, static_cast<unsigned long>(m));
  MaxCspEncoding out;
  if (formulation == Formulation::direct) {
    out.system.n = inst.n;
    Polynomial obj(inst.n);
    for (const auto& c : inst.constraints) obj = obj + c.p;
    out.objective = obj.scaled(inv_m);
    return out;
  }
  const std::size_t N = inst.n + m;
  out.system.n = N;
  Polynomial ysum(N);
  for (std::size_t j = 0; j < m; ++j) {
    const Polynomial y = Polynomial::variable(N, VarRef::basic(static_cast<std::uint32_t>(inst.n + j + 1)));
    out.system.eqs.push_back(inst.constraints[j].p.with_nvars(N) - y);
    ysum = ysum + y;
  }
  if (formulation == Formulation::withvars) {
    out.objective = ysum.scaled(inv_m);
  } else {
    out.system.ineqs.push_back(ysum.scaled(inv_m) - Polynomial::constant(N, gamma));
  }
  return out;
}

Rational opt_brute_force(const CspInstance& inst, std::size_t limit, int jobs) {
  if (inst.n > limit || inst.n > 40)
    throw ValidationError("instance exceeds the exhaustive limit of " + std::to_string(limit));
  if (inst.constraints.empty()) throw ValidationError("instance has no constraints");
  std::vector<kernels::PackedConstraint> packed;
  for (const auto& c : inst.constraints) {
    kernels::PackedConstraint pc;
    pc.is_xor = inst.mode == CspMode::xor_parity;
    pc.rhs = c.rhs;
    for (std::size_t b = 0; b < c.vars.size(); ++b) {
      pc.vars |= std::uint64_t{1} << (c.vars[b] - 1);
      if (!pc.is_xor && c.negated[b]) pc.negated |= std::uint64_t{1} << (c.vars[b] - 1);
    }
    packed.push_back(pc);
  }
  const std::uint32_t best = jobs > 1 ? kernels::max_satisfied_parallel(packed, inst.n, jobs)
                                      : kernels::max_satisfied_serial(packed, inst.n);
  return Rational(best, static_cast<unsigned long>(inst.constraints.size()));
}

std::string to_string(CspMode mode) { return mode == CspMode::xor_parity ? "xor" : "sat"; }

CspMode parse_csp_mode(const std::string& s) {
  if (s == "xor") return CspMode::xor_parity;
  if (s == "sat") return CspMode::sat;
  throw ValidationError("unknown CSP mode '" + s + "'");
}

std::string to_string(Formulation f) {
  switch (f) {
    case Formulation::direct:
      return "direct";
    case Formulation::withvars:
      return "withvars";
    case Formulation::refutation:
      return "refutation";
  }
  return "?";
}

Formulation parse_formulation(const std::string& s) {
  if (s == "direct") return Formulation::direct;
  if (s == "withvars") return Formulation::withvars;
  if (s == "refutation") return Formulation::refutation;
  throw ValidationError("unknown formulation '" + s + "'");
}

}  // namespace psdeg
