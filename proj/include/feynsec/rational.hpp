#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace feynsec {

using Rational = mpq_class;
using Integer = mpz_class;

// Accepts "p/q", "p" with optional leading '-'. Throws ParseError.
Rational parse_rational(const std::string& s);
std::string to_string(const Rational& q);
double to_double(const Rational& q);

Rational factorial(unsigned n);
Rational binomial(unsigned n, unsigned k);

// Truncated power series in eps with exact coefficients, c[k] multiplies eps^k.
struct EpsPoly {
  std::vector<Rational> c;

  EpsPoly() = default;
  explicit EpsPoly(const Rational& c0) : c{c0} {}
  static EpsPoly linear(const Rational& a, const Rational& b) {
    EpsPoly p;
    p.c = {a, b};
    return p;
  }
  bool is_zero() const;
  void trim();
};

EpsPoly mul(const EpsPoly& x, const EpsPoly& y, int max_order);
EpsPoly add(const EpsPoly& x, const EpsPoly& y);

// Exact truncated Laurent series: coefficient c[k] multiplies eps^(lo+k).
struct Laurent {
  int lo = 0;
  std::vector<Rational> c;

  Rational at(int order) const {
    int k = order - lo;
    if (k < 0 || k >= static_cast<int>(c.size())) return Rational(0);
    return c[k];
  }
  int hi() const { return lo + static_cast<int>(c.size()) - 1; }
};

// 1/(a + b eps) expanded up to eps^max_order.
Laurent inverse_linear(const Rational& a, const Rational& b, int max_order);
Laurent mul(const Laurent& x, const Laurent& y, int max_order);

}  // namespace feynsec
