#pragma once

#include <feynsec/rational.hpp>
#include <feynsec/words.hpp>

#include <complex>
#include <optional>
#include <utility>
#include <vector>

namespace feynsec {

using Complex = std::complex<double>;
using MultiIndex = std::vector<int>;

struct SeriesValue {
  Complex value;
  double err = 0.0;  // last three terms or the geometric tail estimate, whichever is larger
  long terms = 0;
};

// Li_{m1..mk}(x1..xk) as the nested sum. Throws DomainError outside
// |x1...xj| <= 1 or at (m1, x1) = (1, 1).
SeriesValue li_series(const MultiIndex& m, const std::vector<Complex>& x, double rel_tol = 1e-15);

// Dilogarithm via the inversion and reflection maps and the Bernoulli series.
// Real arguments on (1, inf) are rejected.
double li2_numeric(double x);
Complex li2_numeric(Complex x);

// G(z1..zk; y), trailing zeros allowed. Converts to Li, using the Hoelder
// convolution at p = 2 when that improves convergence.
Complex g_func(const std::vector<Complex>& z, Complex y, double rel_tol = 1e-15);
// Same, without the Hoelder step.
Complex g_direct(const std::vector<Complex>& z, Complex y, double rel_tol = 1e-15);

struct HoelderSides {
  Complex lhs;
  Complex rhs;
};
// G(z;1) and the convolution sum at parameter p. Needs z1 != 1, zw != 0.
HoelderSides hoelder(const std::vector<Complex>& z, double p, double rel_tol = 1e-15);

// Z(n; m; x) exactly for finite n.
Rational zsum(long n, const MultiIndex& m, const std::vector<Rational>& x);
// Z(inf; m; x) = Li_m(x).
double zsum_infinite(const MultiIndex& m, const std::vector<double>& x, double rel_tol = 1e-15);

// A Z-sum letter is (m, x); merged letters multiply pointwise: (ma + mb, xa xb).
using ZLetter = std::pair<int, Rational>;
using ZWord = std::vector<ZLetter>;
std::vector<std::pair<Rational, ZWord>> zsum_product(const ZWord& u, const ZWord& v);
Alphabet::Pairing zsum_pairing();
std::string zletter_name(const ZLetter& l);
ZLetter parse_zletter(const std::string& s);

// Coefficients of Gamma(n+eps)/(Gamma(1+eps)Gamma(n)) up to eps^order:
// Z_{1..1}(n-1) with k ones at eps^k.
std::vector<Rational> gamma_expansion(long n, int order);
// Taylor coefficients of Gamma(1 + a eps) up to eps^order, in double precision.
std::vector<double> gamma1_series(double a, int order);
// Truncated power series helpers for oracle assembly.
std::vector<double> series_mul(const std::vector<double>& x, const std::vector<double>& y);
std::vector<double> series_inverse(const std::vector<double>& x);

double nielsen(int n, int p, double x);
double hpl(const MultiIndex& m, double x);

double zeta(int k);

}  // namespace feynsec
