#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "psdeg/rational.hpp"

namespace psdeg {

enum class VarKind : std::uint8_t { basic = 0, twin = 1 };

// x_i (basic) or its twin ~x_i. Indices are 1-based. The declared member
// order makes the defaulted comparison put every basic variable before every
// twin, each group in ascending index.
struct VarRef {
  VarKind kind = VarKind::basic;
  std::uint32_t index = 1;

  static VarRef basic(std::uint32_t i) { return {VarKind::basic, i}; }
  static VarRef twin(std::uint32_t i) { return {VarKind::twin, i}; }

  bool is_twin() const { return kind == VarKind::twin; }
  auto operator<=>(const VarRef&) const = default;
};

// Product of variables with positive exponents, kept sorted by VarRef.
class Monomial {
 public:
  using Factor = std::pair<VarRef, std::uint32_t>;

  Monomial() = default;
  explicit Monomial(std::vector<Factor> factors);
  static Monomial of(VarRef v, std::uint32_t exponent = 1);

  const std::vector<Factor>& factors() const { return factors_; }
  std::uint32_t degree() const { return degree_; }
  bool is_one() const { return factors_.empty(); }
  bool is_multilinear() const;
  std::uint32_t exponent(VarRef v) const;
  bool contains(VarRef v) const { return exponent(v) > 0; }
  std::uint32_t max_index() const;

  Monomial operator*(const Monomial& other) const;
  // Drops v entirely.
  Monomial without(VarRef v) const;

  // Graded lexicographic: lower degree first; on ties the monomial with the
  // larger exponent on the earliest variable is larger.
  std::strong_ordering operator<=>(const Monomial& other) const;
  bool operator==(const Monomial& other) const = default;

 private:
  std::vector<Factor> factors_;
  std::uint32_t degree_ = 0;
};

// Sparse polynomial with exact rational coefficients over n pairs of twin
// variables. Values are immutable once built; every operation returns a new
// polynomial in canonical form (no zero coefficients).
class Polynomial {
 public:
  using Terms = std::map<Monomial, Rational>;

  Polynomial() = default;
  explicit Polynomial(std::size_t nvars) : nvars_(nvars) {}
  Polynomial(std::size_t nvars, Terms terms);

  static Polynomial constant(std::size_t nvars, const Rational& c);
  static Polynomial variable(std::size_t nvars, VarRef v);
  static Polynomial monomial(std::size_t nvars, const Monomial& m, const Rational& c = 1);

  std::size_t nvars() const { return nvars_; }
  const Terms& terms() const { return terms_; }
  // Monomial size: number of stored terms.
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  // nullopt for the zero polynomial.
  std::optional<std::uint32_t> degree() const;
  bool is_multilinear() const;
  bool is_constant() const;
  Rational coefficient(const Monomial& m) const;
  Rational constant_term() const { return coefficient(Monomial{}); }

  // Same terms, declared over a different number of pairs. Throws when a
  // variable index would fall outside the new range.
  Polynomial with_nvars(std::size_t nvars) const;

  // Value at the Boolean point where x_i = bits[i-1] and ~x_i = 1 - x_i.
  Rational evaluate(std::span<const std::uint8_t> bits) const;
  // Same, with x_i read from bit (i-1) of a mask; requires n <= 64.
  Rational evaluate_mask(std::uint64_t mask) const;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator-() const;
  Polynomial scaled(const Rational& c) const;

  bool operator==(const Polynomial& o) const = default;

 private:
  void require_same_nvars(const Polynomial& o) const;

  std::size_t nvars_ = 0;
  Terms terms_;
};

Polynomial operator*(const Rational& c, const Polynomial& p);

}  // namespace psdeg
