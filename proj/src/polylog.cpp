#include <feynsec/errors.hpp>
#include <feynsec/polylog.hpp>

#include <cmath>
#include <sstream>

namespace feynsec {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kEulerGamma = 0.57721566490153286061;
constexpr long kMaxTerms = 400000000;

std::string show(Complex z) {
  std::ostringstream os;
  os.precision(12);
  if (z.imag() == 0) os << z.real();
  else os << "(" << z.real() << (z.imag() < 0 ? "" : "+") << z.imag() << "i)";
  return os.str();
}

}  // namespace

SeriesValue li_series(const MultiIndex& m, const std::vector<Complex>& x, double rel_tol) {
  const std::size_t k = m.size();
  if (k == 0 || x.size() != k) throw DomainError("Li needs matching, nonempty index and argument lists");
  for (int mi : m)
    if (mi < 1) throw DomainError("Li indices must be positive");
  Complex prod = 1;
  for (std::size_t j = 0; j < k; ++j) {
    prod *= x[j];
    if (std::abs(prod) > 1 + 1e-12)
      throw DomainError("Li series diverges: |x1...x" + std::to_string(j + 1) + "| = " + show(std::abs(prod)) + " > 1");
  }
  if (m[0] == 1 && std::abs(x[0] - Complex(1)) < 1e-15) throw DomainError("Li series diverges at (m1, x1) = (1, 1)");

  std::vector<Complex> pw(k, Complex(1)), inner(k, Complex(0));
  SeriesValue out;
  Complex sum = 0;
  int small = 0;
  double last[3] = {0, 0, 0};
  double prev_abs = 0, tail = 0;
  for (long n = 1;; ++n) {
    if (n > kMaxTerms) throw DomainError("Li series did not reach the requested tolerance");
    double dn = static_cast<double>(n);
    for (std::size_t j = 0; j < k; ++j) pw[j] *= x[j];
    Complex t = pw[0] / std::pow(dn, m[0]) * (k > 1 ? inner[1] : Complex(1));
    for (std::size_t j = 1; j < k; ++j) inner[j] += pw[j] / std::pow(dn, m[j]) * (j + 1 < k ? inner[j + 1] : Complex(1));
    sum += t;
    last[n % 3] = std::abs(t);
    // geometric tail bound from the ratio of consecutive terms
    double ratio = prev_abs > 0 ? std::abs(t) / prev_abs : 0;
    tail = ratio < 1 ? std::abs(t) * ratio / (1 - ratio) : std::abs(t);
    // power-law decay t ~ n^-s leaves n t / (s - 1), which the ratio test underestimates
    if (ratio > 0 && ratio < 1 && n > 1) {
      double s = -std::log(ratio) / std::log(dn / (dn - 1));
      if (s > 1) tail = std::max(tail, std::abs(t) * dn / (s - 1));
    }
    prev_abs = std::abs(t);
    if (n > static_cast<long>(k)) {
      if (std::abs(t) <= rel_tol * std::abs(sum)) ++small;
      else small = 0;
      if (small >= 3) {
        out.terms = n;
        break;
      }
    }
  }
  out.value = sum;
  out.err = std::max(last[0] + last[1] + last[2], tail);
  return out;
}

namespace {

const std::vector<double>& bernoulli_weights() {
  // B_i / (i+1)!
  static const std::vector<double> w = [] {
    const int N = 60;
    std::vector<Rational> b(N + 1);
    b[0] = 1;
    for (int m = 1; m <= N; ++m) {
      Rational s = 0;
      for (int j = 0; j < m; ++j) s += binomial(m + 1, j) * b[j];
      b[m] = -s / (m + 1);
    }
    std::vector<double> out;
    for (int i = 0; i <= N; ++i) out.push_back(to_double(b[i] / factorial(i + 1)));
    return out;
  }();
  return w;
}

}  // namespace

Complex li2_numeric(Complex x) {
  if (x == Complex(0)) return 0;
  if (x == Complex(1)) return kPi * kPi / 6;
  if (std::abs(x) > 1) {
    if (x.imag() == 0 && x.real() > 1) throw DomainError("Li2 argument " + show(x) + " lies on the branch cut");
    Complex l = std::log(-x);
    return -li2_numeric(1.0 / x) - kPi * kPi / 6 - 0.5 * l * l;
  }
  if (x.real() > 0.5) return -li2_numeric(1.0 - x) + kPi * kPi / 6 - std::log(x) * std::log(1.0 - x);
  Complex u = -std::log(1.0 - x);
  const auto& w = bernoulli_weights();
  Complex s = 0, up = u;
  for (std::size_t i = 0; i < w.size(); ++i) {
    s += w[i] * up;
    up *= u;
  }
  return s;
}

double li2_numeric(double x) {
  if (x > 1) throw DomainError("Li2 argument " + show(x) + " lies on the branch cut");
  return li2_numeric(Complex(x)).real();
}

namespace {

Complex g_eval(const std::vector<Complex>& z, Complex y, double rel_tol, bool allow_hoelder);

// No trailing zeros. Fills the Li arguments for the G_m shorthand.
void to_li(const std::vector<Complex>& z, Complex y, MultiIndex& m, std::vector<Complex>& x) {
  int zeros = 0;
  Complex prev = y;
  for (Complex zi : z) {
    if (zi == Complex(0)) {
      ++zeros;
      continue;
    }
    m.push_back(zeros + 1);
    x.push_back(prev / zi);
    prev = zi;
    zeros = 0;
  }
}

double direct_ratio(const std::vector<Complex>& z, Complex y) {
  double r = 0;
  for (Complex zi : z)
    if (zi != Complex(0)) r = std::max(r, std::abs(y) / std::abs(zi));
  return r;
}

Complex g_li(const std::vector<Complex>& z, Complex y, double rel_tol) {
  if (z[0] == y) throw DomainError("G diverges: z1 = y = " + show(y));
  MultiIndex m;
  std::vector<Complex> x;
  to_li(z, y, m, x);
  if (direct_ratio(z, y) > 1 + 1e-12)
    throw DomainError("G argument outside the supported region: some |z| < |y| = " + show(std::abs(y)));
  Complex v = li_series(m, x, rel_tol).value;
  return m.size() % 2 ? -v : v;
}

Complex hoelder_sum(const std::vector<Complex>& z, double p, double rel_tol) {
  const std::size_t w = z.size();
  Complex total = 0;
  for (std::size_t j = 0; j <= w; ++j) {
    std::vector<Complex> left, right(z.begin() + static_cast<long>(j), z.end());
    for (std::size_t i = j; i-- > 0;) left.push_back(1.0 - z[i]);
    Complex a = g_eval(left, 1 - 1 / p, rel_tol, false);
    Complex b = g_eval(right, 1 / p, rel_tol, false);
    total += (j % 2 ? -1.0 : 1.0) * a * b;
  }
  return total;
}

Complex g_eval(const std::vector<Complex>& z, Complex y, double rel_tol, bool allow_hoelder) {
  const std::size_t k = z.size();
  if (k == 0) return 1;
  if (y == Complex(0)) throw DomainError("G at y = 0 is only defined for nonzero trailing argument");
  std::size_t r = 0;
  while (r < k && z[k - 1 - r] == Complex(0)) ++r;
  if (r == k) {
    Complex l = std::log(y);
    Complex v = 1;
    for (std::size_t i = 1; i <= k; ++i) v *= l / static_cast<double>(i);
    return v;
  }
  if (r > 0) {
    // G(w,0^r) from the shuffle of G(0;y) with G(w,0^(r-1);y)
    std::vector<Complex> w(z.begin(), z.end() - static_cast<long>(r));
    std::vector<Complex> base = w;
    base.insert(base.end(), r - 1, Complex(0));
    Complex v = std::log(y) * g_eval(base, y, rel_tol, allow_hoelder);
    for (std::size_t i = 0; i < w.size(); ++i) {
      std::vector<Complex> ins(w.begin(), w.begin() + static_cast<long>(i));
      ins.push_back(0);
      ins.insert(ins.end(), w.begin() + static_cast<long>(i), w.end());
      ins.insert(ins.end(), r - 1, Complex(0));
      v -= g_eval(ins, y, rel_tol, allow_hoelder);
    }
    return v / static_cast<double>(r);
  }
  double direct = direct_ratio(z, y);
  if (allow_hoelder && direct > 0.5) {
    std::vector<Complex> zs;
    for (Complex zi : z) zs.push_back(zi / y);
    if (zs[0] != Complex(1)) {
      double h = 0;
      for (Complex zi : zs) {
        if (zi != Complex(0)) h = std::max(h, 0.5 / std::abs(zi));
        if (zi != Complex(1)) h = std::max(h, 0.5 / std::abs(1.0 - zi));
      }
      if (h < direct && h <= 1) return hoelder_sum(zs, 2.0, rel_tol);
    }
  }
  return g_li(z, y, rel_tol);
}

}  // namespace

Complex g_func(const std::vector<Complex>& z, Complex y, double rel_tol) { return g_eval(z, y, rel_tol, true); }

Complex g_direct(const std::vector<Complex>& z, Complex y, double rel_tol) { return g_eval(z, y, rel_tol, false); }

HoelderSides hoelder(const std::vector<Complex>& z, double p, double rel_tol) {
  if (z.empty()) throw DomainError("Hoelder convolution needs weight >= 1");
  if (z.front() == Complex(1)) throw DomainError("Hoelder convolution needs z1 != 1");
  if (z.back() == Complex(0)) throw DomainError("Hoelder convolution needs zw != 0");
  if (p <= 1) throw DomainError("Hoelder parameter must exceed 1");
  return {g_direct(z, 1, rel_tol), hoelder_sum(z, p, rel_tol)};
}

Rational zsum(long n, const MultiIndex& m, const std::vector<Rational>& x) {
  const std::size_t k = m.size();
  if (k == 0 || x.size() != k) throw DomainError("Z-sum needs matching, nonempty index and argument lists");
  if (n < 0) throw DomainError("Z-sum upper limit must be nonnegative");
  for (int mi : m)
    if (mi < 1) throw DomainError("Z-sum indices must be positive");
  std::vector<Rational> pw(k, Rational(1)), inner(k, Rational(0));
  Rational sum = 0;
  for (long i = 1; i <= n; ++i) {
    for (std::size_t j = 0; j < k; ++j) pw[j] *= x[j];
    Integer ii = i;
    auto ipow = [&](int e) {
      Integer r = 1;
      for (int q = 0; q < e; ++q) r *= ii;
      return Rational(r);
    };
    sum += pw[0] / ipow(m[0]) * (k > 1 ? inner[1] : Rational(1));
    for (std::size_t j = 1; j < k; ++j) inner[j] += pw[j] / ipow(m[j]) * (j + 1 < k ? inner[j + 1] : Rational(1));
  }
  return sum;
}

double zsum_infinite(const MultiIndex& m, const std::vector<double>& x, double rel_tol) {
  std::vector<Complex> cx(x.begin(), x.end());
  return li_series(m, cx, rel_tol).value.real();
}

std::string zletter_name(const ZLetter& l) { return std::to_string(l.first) + "|" + l.second.get_str(); }

ZLetter parse_zletter(const std::string& s) {
  auto bar = s.find('|');
  if (bar == std::string::npos) throw ParseError("Z-sum letter \"" + s + "\" needs the form m|x");
  int m = std::stoi(s.substr(0, bar));
  return {m, parse_rational(s.substr(bar + 1))};
}

Alphabet::Pairing zsum_pairing() {
  return [](const std::string& a, const std::string& b) -> std::optional<std::string> {
    auto x = parse_zletter(a), y = parse_zletter(b);
    return zletter_name({x.first + y.first, x.second * y.second});
  };
}

std::vector<std::pair<Rational, ZWord>> zsum_product(const ZWord& u, const ZWord& v) {
  Alphabet a;
  a.set_pairing(zsum_pairing());
  auto to_word = [&](const ZWord& z) {
    Word w;
    for (auto& l : z) w.push_back(a.intern(zletter_name(l)));
    return w;
  };
  LinComb r = quasi_shuffle(to_word(u), to_word(v), a);
  std::vector<std::pair<Rational, ZWord>> out;
  for (auto& [w, c] : r) {
    ZWord z;
    for (Letter l : w) z.push_back(parse_zletter(a.name(l)));
    out.emplace_back(c, z);
  }
  return out;
}

std::vector<Rational> gamma_expansion(long n, int order) {
  if (n < 1) throw DomainError("gamma_expansion needs n >= 1");
  if (order < 0) throw DomainError("gamma_expansion needs order >= 0");
  std::vector<Rational> c{Rational(1)};
  for (int k = 1; k <= order; ++k)
    c.push_back(n - 1 >= k ? zsum(n - 1, MultiIndex(k, 1), std::vector<Rational>(k, Rational(1))) : Rational(0));
  return c;
}

double zeta(int k) {
  if (k < 2) throw DomainError("zeta(k) needs k >= 2");
  return std::riemann_zeta(static_cast<double>(k));
}

std::vector<double> gamma1_series(double a, int order) {
  // ln Gamma(1+t) = -gamma t + sum_{k>=2} (-1)^k zeta(k) t^k / k
  std::vector<double> f(order + 1, 0.0);
  if (order >= 1) f[1] = -kEulerGamma * a;
  double ak = a;
  for (int k = 2; k <= order; ++k) {
    ak *= a;
    f[k] = (k % 2 ? -1.0 : 1.0) * zeta(k) * ak / k;
  }
  std::vector<double> g(order + 1, 0.0);
  g[0] = 1;
  for (int n = 1; n <= order; ++n) {
    double s = 0;
    for (int k = 1; k <= n; ++k) s += k * f[k] * g[n - k];
    g[n] = s / n;
  }
  return g;
}

std::vector<double> series_mul(const std::vector<double>& x, const std::vector<double>& y) {
  std::size_t n = std::min(x.size(), y.size());
  std::vector<double> r(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; i + j < n; ++j) r[i + j] += x[i] * y[j];
  return r;
}

std::vector<double> series_inverse(const std::vector<double>& x) {
  if (x.empty() || x[0] == 0) throw DomainError("series has no inverse");
  std::vector<double> r(x.size(), 0.0);
  r[0] = 1 / x[0];
  for (std::size_t n = 1; n < x.size(); ++n) {
    double s = 0;
    for (std::size_t k = 1; k <= n; ++k) s += x[k] * r[n - k];
    r[n] = -s / x[0];
  }
  return r;
}

double nielsen(int n, int p, double x) {
  if (n < 1 || p < 1) throw DomainError("Nielsen polylogarithm needs n, p >= 1");
  MultiIndex m{n + 1};
  std::vector<Complex> args{x};
  for (int k = 1; k < p; ++k) {
    m.push_back(1);
    args.push_back(1);
  }
  return li_series(m, args).value.real();
}

double hpl(const MultiIndex& m, double x) {
  std::vector<Complex> args(m.size(), Complex(1));
  if (!args.empty()) args[0] = x;
  return li_series(m, args).value.real();
}

}  // namespace feynsec
