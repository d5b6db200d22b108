#include "psdeg/polynomial.hpp"

#include <algorithm>
#include <string>

#include "psdeg/errors.hpp"

namespace psdeg {

Monomial::Monomial(std::vector<Factor> factors) {
  std::sort(factors.begin(), factors.end(),
            [](const Factor& a, const Factor& b) { return a.first < b.first; });
  for (const auto& [v, e] : factors) {
    if (v.index == 0) throw ValidationError("variable indices are 1-based");
    if (e == 0) continue;
    if (!factors_.empty() && factors_.back().first == v) {
      factors_.back().second += e;
    } else {
      factors_.emplace_back(v, e);
    }
    degree_ += e;
  }
}

Monomial Monomial::of(VarRef v, std::uint32_t exponent) {
  return Monomial(std::vector<Factor>{{v, exponent}});
}

bool Monomial::is_multilinear() const {
  return std::all_of(factors_.begin(), factors_.end(),
                     [](const Factor& f) { return f.second == 1; });
}

std::uint32_t Monomial::exponent(VarRef v) const {
  auto it = std::lower_bound(factors_.begin(), factors_.end(), v,
                             [](const Factor& f, VarRef key) { return f.first < key; });
  return (it != factors_.end() && it->first == v) ? it->second : 0;
}

std::uint32_t Monomial::max_index() const {
  std::uint32_t m = 0;
  for (const auto& f : factors_) m = std::max(m, f.first.index);
  return m;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial out;
  out.factors_.reserve(factors_.size() + other.factors_.size());
  auto a = factors_.begin();
  auto b = other.factors_.begin();
  while (a != factors_.end() || b != other.factors_.end()) {
    if (b == other.factors_.end() || (a != factors_.end() && a->first < b->first)) {
      out.factors_.push_back(*a++);
    } else if (a == factors_.end() || b->first < a->first) {
      out.factors_.push_back(*b++);
    } else {
      out.factors_.emplace_back(a->first, a->second + b->second);
      ++a;
      ++b;
    }
  }
  out.degree_ = degree_ + other.degree_;
  return out;
}

Monomial Monomial::without(VarRef v) const {
  Monomial out;
  for (const auto& f : factors_) {
    if (f.first == v) continue;
    out.factors_.push_back(f);
    out.degree_ += f.second;
  }
  return out;
}

std::strong_ordering Monomial::operator<=>(const Monomial& other) const {
  if (degree_ != other.degree_) return degree_ <=> other.degree_;
  const std::size_t k = std::min(factors_.size(), other.factors_.size());
  for (std::size_t i = 0; i < k; ++i) {
    const auto& [va, ea] = factors_[i];
    const auto& [vb, eb] = other.factors_[i];
    if (va != vb) {
      // The side holding the earlier variable has a positive exponent where
      // the other has zero.
      return va < vb ? std::strong_ordering::greater : std::strong_ordering::less;
    }
    if (ea != eb) return ea <=> eb;
  }
  return factors_.size() <=> other.factors_.size();
}

Polynomial::Polynomial(std::size_t nvars, Terms terms) : nvars_(nvars) {
  for (auto& [m, c] : terms) {
    if (m.max_index() > nvars_)
      throw ValidationError("variable x" + std::to_string(m.max_index()) +
                            " exceeds declared pair count " + std::to_string(nvars_));
    if (c != 0) terms_.emplace(m, c);
  }
}

Polynomial Polynomial::constant(std::size_t nvars, const Rational& c) {
  Polynomial p(nvars);
  if (c != 0) p.terms_.emplace(Monomial{}, c);
  return p;
}

Polynomial Polynomial::variable(std::size_t nvars, VarRef v) {
  return monomial(nvars, Monomial::of(v));
}

Polynomial Polynomial::monomial(std::size_t nvars, const Monomial& m, const Rational& c) {
  Terms t;
  t.emplace(m, c);
  return Polynomial(nvars, std::move(t));
}

std::optional<std::uint32_t> Polynomial::degree() const {
  if (terms_.empty()) return std::nullopt;
  // Graded order: the last key has maximal degree.
  return terms_.rbegin()->first.degree();
}

bool Polynomial::is_multilinear() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const auto& t) { return t.first.is_multilinear(); });
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

Rational Polynomial::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

Polynomial Polynomial::with_nvars(std::size_t nvars) const { return Polynomial(nvars, terms_); }

Rational Polynomial::evaluate(std::span<const std::uint8_t> bits) const {
  if (bits.size() < nvars_) throw ValidationError("assignment shorter than variable count");
  Rational total = 0;
  for (const auto& [m, c] : terms_) {
    bool zero = false;
    for (const auto& [v, e] : m.factors()) {
      const bool x = bits[v.index - 1] != 0;
      const bool value = v.is_twin() ? !x : x;
      if (!value) {
        zero = true;
        break;
      }
    }
    if (!zero) total += c;
  }
  return total;
}

Rational Polynomial::evaluate_mask(std::uint64_t mask) const {
  if (nvars_ > 64) throw ValidationError("mask evaluation supports at most 64 variables");
  Rational total = 0;
  for (const auto& [m, c] : terms_) {
    bool zero = false;
    for (const auto& [v, e] : m.factors()) {
      const bool x = (mask >> (v.index - 1)) & 1u;
      if (v.is_twin() ? x : !x) {
        zero = true;
        break;
      }
    }
    if (!zero) total += c;
  }
  return total;
}

void Polynomial::require_same_nvars(const Polynomial& o) const {
  if (nvars_ != o.nvars_)
    throw ValidationError("nvars mismatch: " + std::to_string(nvars_) + " vs " +
                          std::to_string(o.nvars_));
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  require_same_nvars(o);
  Polynomial out = *this;
  for (const auto& [m, c] : o.terms_) {
    auto [it, inserted] = out.terms_.emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) out.terms_.erase(it);
    }
  }
  return out;
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + (-o); }

Polynomial Polynomial::operator-() const {
  Polynomial out = *this;
  for (auto& [m, c] : out.terms_) c = -c;
  return out;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  require_same_nvars(o);
  Polynomial out(nvars_);
  for (const auto& [ma, ca] : terms_) {
    for (const auto& [mb, cb] : o.terms_) {
      Rational c = ca * cb;
      auto [it, inserted] = out.terms_.emplace(ma * mb, c);
      if (!inserted) {
        it->second += c;
        if (it->second == 0) out.terms_.erase(it);
      }
    }
  }
  return out;
}

Polynomial Polynomial::scaled(const Rational& c) const {
  if (c == 0) return Polynomial(nvars_);
  Rational k = c;
  k.canonicalize();
  Polynomial out = *this;
  for (auto& [m, v] : out.terms_) v *= k;
  return out;
}

Polynomial operator*(const Rational& c, const Polynomial& p) { return p.scaled(c); }

}  // namespace psdeg
