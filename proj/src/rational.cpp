#include "psdeg/rational.hpp"

#include <cmath>
#include <limits>

#include "psdeg/errors.hpp"

namespace psdeg {

std::string to_string(const Rational& q) { return q.get_str(); }

Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw ValidationError("empty rational literal");
  auto dot = s.find('.');
  if (dot != std::string::npos) {
    bool neg = s[0] == '-';
    std::string body = (neg || s[0] == '+') ? s.substr(1) : s;
    dot = body.find('.');
    std::string whole = body.substr(0, dot);
    std::string frac = body.substr(dot + 1);
    if (whole.empty()) whole = "0";
    for (char c : whole + frac)
      if (c < '0' || c > '9') throw ValidationError("bad decimal literal: " + s);
    mpz_class num(whole + frac);
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
    Rational q(num, den);
    q.canonicalize();
    return neg ? Rational(-q) : q;
  }
  Rational q;
  if (q.set_str(s, 10) != 0 || q.get_den() == 0)
    throw ValidationError("bad rational literal: " + s);
  q.canonicalize();
  return q;
}

Rational from_double(double x) {
  if (!std::isfinite(x)) throw ValidationError("non-finite value cannot be made exact");
  Rational q(x);
  q.canonicalize();
  return q;
}

double to_double(const Rational& q) { return q.get_d(); }

Rational round_continued_fraction(double x, std::int64_t max_denominator) {
  if (!std::isfinite(x)) throw ValidationError("non-finite value cannot be rounded");
  if (max_denominator < 1) throw ValidationError("denominator cap must be positive");
  const mpz_class cap(static_cast<long>(max_denominator));
  // Work on the exact binary value so the expansion terminates.
  Rational rest = from_double(x);
  mpz_class p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  Rational exact = rest;
  while (true) {
    mpz_class a;
    mpz_fdiv_q(a.get_mpz_t(), rest.get_num_mpz_t(), rest.get_den_mpz_t());
    mpz_class p2 = a * p1 + p0;
    mpz_class q2 = a * q1 + q0;
    if (q2 > cap) {
      // Largest semiconvergent that still fits, if it beats the last convergent.
      mpz_class k = (cap - q0) / q1;
      if (k > 0) {
        Rational semi(mpz_class(k * p1 + p0), mpz_class(k * q1 + q0));
        semi.canonicalize();
        Rational conv(p1, q1);
        conv.canonicalize();
        if (abs(semi - exact) < abs(conv - exact)) return semi;
      }
      Rational conv(p1, q1);
      conv.canonicalize();
      return conv;
    }
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    Rational frac = rest - Rational(a);
    if (frac == 0) break;
    rest = 1 / frac;
  }
  Rational out(p1, q1);
  out.canonicalize();
  return out;
}

}  // namespace psdeg
