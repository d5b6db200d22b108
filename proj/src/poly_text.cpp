#include "psdeg/poly_text.hpp"

#include <cctype>

#include "psdeg/errors.hpp"

namespace psdeg {

namespace {

// Recursive-descent parser over the raw text. Builds polynomials with a
// generous pair count and narrows at the end.
class Parser {
 public:
  explicit Parser(std::string_view text) : text_(normalize(text)) {}

  Polynomial parse(std::size_t& max_index) {
    Polynomial p = expr();
    skip();
    if (pos_ != text_.size())
      fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    max_index = max_index_;
    return p;
  }

 private:
  static constexpr std::size_t kWide = 1u << 20;

  static std::string normalize(std::string_view in) {
    std::string out;
    out.reserve(in.size());
    for (std::size_t i = 0; i < in.size(); ++i) {
      // U+2212 MINUS SIGN
      if (i + 2 < in.size() && static_cast<unsigned char>(in[i]) == 0xE2 &&
          static_cast<unsigned char>(in[i + 1]) == 0x88 &&
          static_cast<unsigned char>(in[i + 2]) == 0x92) {
        out.push_back('-');
        i += 2;
        continue;
      }
      if (!std::isspace(static_cast<unsigned char>(in[i]))) out.push_back(in[i]);
    }
    return out;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ValidationError("polynomial syntax error at " + std::to_string(pos_) + ": " + what +
                          " in \"" + text_ + "\"");
  }

  void skip() {}
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }

  Polynomial expr() {
    Polynomial acc(kWide);
    bool first = true;
    while (true) {
      char c = peek();
      int sign = 1;
      if (c == '+' || c == '-') {
        sign = c == '-' ? -1 : 1;
        ++pos_;
      } else if (!first) {
        break;
      }
      Polynomial t = term();
      acc = sign > 0 ? acc + t : acc - t;
      first = false;
      if (at_end() || peek() == ')') break;
    }
    return acc;
  }

  static bool starts_factor(char c) {
    return std::isdigit(static_cast<unsigned char>(c)) || c == 'x' || c == '~' || c == '(' ||
           c == '.';
  }

  Polynomial term() {
    Polynomial acc = power();
    while (true) {
      if (peek() == '*') {
        ++pos_;
        acc = acc * power();
      } else if (starts_factor(peek())) {
        acc = acc * power();
      } else {
        break;
      }
    }
    return acc;
  }

  Polynomial power() {
    Polynomial base = atom();
    if (peek() == '^') {
      ++pos_;
      const auto e = integer();
      Polynomial out = Polynomial::constant(kWide, 1);
      for (unsigned long i = 0; i < e; ++i) out = out * base;
      return out;
    }
    return base;
  }

  unsigned long integer() {
    const std::size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (start == pos_) fail("expected integer");
    return std::stoul(text_.substr(start, pos_ - start));
  }

  Polynomial atom() {
    const char c = peek();
    if (c == '(') {
      ++pos_;
      Polynomial inner = expr();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return inner;
    }
    if (c == '-') {
      ++pos_;
      return -atom();
    }
    if (c == 'x' || c == '~') {
      bool twin = false;
      if (c == '~') {
        twin = true;
        ++pos_;
        if (peek() != 'x') fail("expected 'x' after '~'");
      }
      ++pos_;
      const auto idx = integer();
      if (idx == 0) fail("variable indices are 1-based");
      if (idx >= kWide) fail("variable index too large");
      max_index_ = std::max<std::size_t>(max_index_, idx);
      const auto i = static_cast<std::uint32_t>(idx);
      return Polynomial::variable(kWide, twin ? VarRef::twin(i) : VarRef::basic(i));
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const std::size_t start = pos_;
      while (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '.') ++pos_;
      if (peek() == '/') {
        ++pos_;
        while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
      }
      return Polynomial::constant(kWide, parse_rational(text_.substr(start, pos_ - start)));
    }
    fail(at_end() ? std::string("unexpected end") : "unexpected '" + std::string(1, c) + "'");
  }

  std::string text_;
  std::size_t pos_ = 0;
  std::size_t max_index_ = 0;
};

}  // namespace

Polynomial parse_polynomial(std::string_view text, std::size_t nvars) {
  std::size_t max_index = 0;
  Polynomial wide = Parser(text).parse(max_index);
  if (nvars == 0) nvars = max_index;
  if (max_index > nvars)
    throw ValidationError("variable x" + std::to_string(max_index) + " exceeds pair count " +
                          std::to_string(nvars));
  return wide.with_nvars(nvars);
}

std::string to_string(const Monomial& m) {
  if (m.is_one()) return "1";
  std::string out;
  for (const auto& [v, e] : m.factors()) {
    if (!out.empty()) out += '*';
    if (v.is_twin()) out += '~';
    out += 'x' + std::to_string(v.index);
    if (e > 1) out += '^' + std::to_string(e);
  }
  return out;
}

std::string to_string(const Polynomial& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto& [m, c] = *it;
    const bool negative = c < 0;
    const Rational mag = negative ? Rational(-c) : c;
    if (out.empty()) {
      if (negative) out += '-';
    } else {
      out += negative ? " - " : " + ";
    }
    if (m.is_one()) {
      out += to_string(mag);
    } else if (mag == 1) {
      out += to_string(m);
    } else {
      out += to_string(mag) + '*' + to_string(m);
    }
  }
  return out;
}

}  // namespace psdeg
