#include <feynsec/errors.hpp>
#include <feynsec/polynomial.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

namespace feynsec {

Rational parse_rational(const std::string& s) {
  std::size_t i = 0;
  auto digits = [&](std::size_t& pos) {
    std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    return pos > start;
  };
  if (i < s.size() && s[i] == '-') ++i;
  if (!digits(i)) throw ParseError("malformed rational '" + s + "'");
  if (i < s.size() && s[i] == '/') {
    ++i;
    if (!digits(i)) throw ParseError("malformed rational '" + s + "'");
  }
  if (i != s.size()) throw ParseError("malformed rational '" + s + "'");
  Rational q;
  if (q.set_str(s, 10) != 0) throw ParseError("malformed rational '" + s + "'");
  if (q.get_den() == 0) throw ParseError("zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

double to_double(const Rational& q) { return q.get_d(); }

Rational factorial(unsigned n) {
  Integer f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return Rational(f);
}

Rational binomial(unsigned n, unsigned k) {
  Integer b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return Rational(b);
}

bool EpsPoly::is_zero() const {
  for (auto& x : c)
    if (x != 0) return false;
  return true;
}

void EpsPoly::trim() {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

EpsPoly mul(const EpsPoly& x, const EpsPoly& y, int max_order) {
  EpsPoly r;
  if (x.c.empty() || y.c.empty() || max_order < 0) return r;
  int n = std::min<int>(max_order + 1, static_cast<int>(x.c.size() + y.c.size()) - 1);
  r.c.assign(n, Rational(0));
  for (std::size_t i = 0; i < x.c.size() && static_cast<int>(i) < n; ++i) {
    if (x.c[i] == 0) continue;
    for (std::size_t j = 0; j < y.c.size() && static_cast<int>(i + j) < n; ++j) r.c[i + j] += x.c[i] * y.c[j];
  }
  r.trim();
  return r;
}

EpsPoly add(const EpsPoly& x, const EpsPoly& y) {
  EpsPoly r = x.c.size() >= y.c.size() ? x : y;
  const EpsPoly& o = x.c.size() >= y.c.size() ? y : x;
  for (std::size_t i = 0; i < o.c.size(); ++i) r.c[i] += o.c[i];
  r.trim();
  return r;
}

Laurent inverse_linear(const Rational& a, const Rational& b, int max_order) {
  Laurent r;
  if (a == 0) {
    if (b == 0) throw DivergenceError("pole factor 1/(0 + 0 eps)");
    r.lo = -1;
    if (max_order >= -1) r.c.push_back(1 / b);
    return r;
  }
  r.lo = 0;
  Rational term = 1 / a;
  Rational ratio = -b / a;
  for (int k = 0; k <= max_order; ++k) {
    r.c.push_back(term);
    term *= ratio;
  }
  return r;
}

Laurent mul(const Laurent& x, const Laurent& y, int max_order) {
  Laurent r;
  r.lo = x.lo + y.lo;
  int n = max_order - r.lo + 1;
  if (n <= 0 || x.c.empty() || y.c.empty()) return r;
  n = std::min<int>(n, static_cast<int>(x.c.size() + y.c.size()) - 1);
  r.c.assign(n, Rational(0));
  for (std::size_t i = 0; i < x.c.size() && static_cast<int>(i) < n; ++i)
    for (std::size_t j = 0; j < y.c.size() && static_cast<int>(i + j) < n; ++j) r.c[i + j] += x.c[i] * y.c[j];
  return r;
}

Polynomial Polynomial::constant(int nvars, const Rational& c) {
  Polynomial p(nvars);
  p.add_term(Exponents(nvars, 0), c);
  return p;
}

Polynomial Polynomial::variable(int nvars, int i) {
  Polynomial p(nvars);
  Exponents e(nvars, 0);
  e[i] = 1;
  p.add_term(e, 1);
  return p;
}

Polynomial Polynomial::monomial(const Exponents& e, const Rational& c) {
  Polynomial p(static_cast<int>(e.size()));
  p.add_term(e, c);
  return p;
}

bool Polynomial::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  for (int v : terms_.begin()->first)
    if (v) return false;
  return true;
}

void Polynomial::add_term(const Exponents& e, const Rational& c) {
  if (static_cast<int>(e.size()) != n_) throw InternalError("exponent vector size mismatch");
  if (c == 0) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, c);
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Rational Polynomial::constant_term() const {
  auto it = terms_.find(Exponents(n_, 0));
  return it == terms_.end() ? Rational(0) : it->second;
}

int Polynomial::total_degree() const {
  int d = 0;
  for (auto& [e, c] : terms_) {
    int s = 0;
    for (int v : e) s += v;
    d = std::max(d, s);
  }
  return d;
}

bool Polynomial::is_homogeneous(int* deg) const {
  int d = -1;
  for (auto& [e, c] : terms_) {
    int s = 0;
    for (int v : e) s += v;
    if (d < 0) d = s;
    else if (s != d) return false;
  }
  if (deg) *deg = std::max(d, 0);
  return true;
}

bool Polynomial::depends_on(int i) const {
  for (auto& [e, c] : terms_)
    if (e[i]) return true;
  return false;
}

bool Polynomial::nonnegative_coefficients() const {
  for (auto& [e, c] : terms_)
    if (c < 0) return false;
  return true;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  Polynomial r = *this;
  r += o;
  return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (o.n_ != n_) throw InternalError("polynomial variable count mismatch");
  for (auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + o * Rational(-1); }

Polynomial Polynomial::operator*(const Polynomial& o) const {
  if (o.n_ != n_) throw InternalError("polynomial variable count mismatch");
  Polynomial r(n_);
  Exponents e(n_);
  for (auto& [e1, c1] : terms_)
    for (auto& [e2, c2] : o.terms_) {
      for (int k = 0; k < n_; ++k) e[k] = e1[k] + e2[k];
      r.add_term(e, c1 * c2);
    }
  return r;
}

Polynomial Polynomial::operator*(const Rational& c) const {
  Polynomial r(n_);
  if (c == 0) return r;
  for (auto& [e, v] : terms_) r.terms_.emplace(e, v * c);
  return r;
}

Polynomial Polynomial::pow(unsigned k) const {
  Polynomial r = constant(n_, 1);
  Polynomial b = *this;
  while (k) {
    if (k & 1u) r = r * b;
    k >>= 1u;
    if (k) b = b * b;
  }
  return r;
}

Polynomial Polynomial::derivative(int i) const {
  Polynomial r(n_);
  for (auto& [e, c] : terms_) {
    if (!e[i]) continue;
    Exponents f = e;
    f[i] -= 1;
    r.add_term(f, c * e[i]);
  }
  return r;
}

Polynomial Polynomial::set_zero(int i) const {
  Polynomial r(n_);
  for (auto& [e, c] : terms_)
    if (!e[i]) r.terms_.emplace(e, c);
  return r;
}

Polynomial Polynomial::scale_variable(int i, int by) const {
  Polynomial r(n_);
  for (auto& [e, c] : terms_) {
    Exponents f = e;
    f[by] += e[i];
    r.add_term(f, c);
  }
  return r;
}

Polynomial Polynomial::substitute(int i, const Polynomial& v) const {
  Polynomial r(n_);
  std::map<int, Polynomial> powers;
  for (auto& [e, c] : terms_) {
    Exponents f = e;
    int k = f[i];
    f[i] = 0;
    Polynomial m = monomial(f, c);
    if (k) {
      auto it = powers.find(k);
      if (it == powers.end()) it = powers.emplace(k, v.pow(k)).first;
      m = m * it->second;
    }
    r += m;
  }
  return r;
}

Polynomial Polynomial::extend(int m) const {
  if (m < n_) throw InternalError("cannot shrink polynomial");
  Polynomial r(m);
  for (auto& [e, c] : terms_) {
    Exponents f = e;
    f.resize(m, 0);
    r.terms_.emplace(std::move(f), c);
  }
  return r;
}

Exponents Polynomial::gcd_monomial() const {
  Exponents g(n_, 0);
  bool first = true;
  for (auto& [e, c] : terms_) {
    if (first) {
      g = e;
      first = false;
    } else {
      for (int k = 0; k < n_; ++k) g[k] = std::min(g[k], e[k]);
    }
  }
  return g;
}

Polynomial Polynomial::divide_monomial(const Exponents& d) const {
  Polynomial r(n_);
  for (auto& [e, c] : terms_) {
    Exponents f = e;
    for (int k = 0; k < n_; ++k) {
      f[k] -= d[k];
      if (f[k] < 0) throw InternalError("monomial does not divide polynomial");
    }
    r.terms_.emplace(std::move(f), c);
  }
  return r;
}

Polynomial Polynomial::multiply_monomial(const Exponents& d) const {
  Polynomial r(n_);
  for (auto& [e, c] : terms_) {
    Exponents f = e;
    for (int k = 0; k < n_; ++k) f[k] += d[k];
    r.terms_.emplace(std::move(f), c);
  }
  return r;
}

std::vector<Exponents> Polynomial::exponents() const {
  std::vector<Exponents> r;
  r.reserve(terms_.size());
  for (auto& [e, c] : terms_) r.push_back(e);
  return r;
}

double Polynomial::evaluate(const double* x) const {
  double s = 0.0;
  for (auto& [e, c] : terms_) {
    double t = c.get_d();
    for (int k = 0; k < n_; ++k)
      for (int j = 0; j < e[k]; ++j) t *= x[k];
    s += t;
  }
  return s;
}

Rational Polynomial::evaluate(const std::vector<Rational>& x) const {
  Rational s = 0;
  for (auto& [e, c] : terms_) {
    Rational t = c;
    for (int k = 0; k < n_; ++k)
      for (int j = 0; j < e[k]; ++j) t *= x[k];
    s += t;
  }
  return s;
}

std::vector<std::string> default_names(int n, const std::string& prefix) {
  std::vector<std::string> r;
  for (int i = 1; i <= n; ++i) r.push_back(prefix + std::to_string(i));
  return r;
}

std::string Polynomial::to_string(const std::vector<std::string>& names_in) const {
  if (terms_.empty()) return "0";
  auto names = names_in.empty() ? default_names(n_) : names_in;
  // highest total degree first, then reverse lexicographic so x1 leads
  std::vector<std::pair<Exponents, Rational>> ts(terms_.begin(), terms_.end());
  std::stable_sort(ts.begin(), ts.end(), [](auto& a, auto& b) {
    int da = 0, db = 0;
    for (int v : a.first) da += v;
    for (int v : b.first) db += v;
    if (da != db) return da > db;
    return a.first > b.first;
  });
  std::ostringstream os;
  bool first = true;
  for (auto& [e, c] : ts) {
    Rational a = abs(c);
    bool neg = c < 0;
    if (first) os << (neg ? "-" : "");
    else os << (neg ? " - " : " + ");
    first = false;
    std::ostringstream mono;
    bool any = false;
    for (int k = 0; k < n_; ++k) {
      if (!e[k]) continue;
      if (any) mono << "*";
      mono << names[k];
      if (e[k] > 1) mono << "^" << e[k];
      any = true;
    }
    if (!any) os << a.get_str();
    else if (a == 1) os << mono.str();
    else os << a.get_str() << "*" << mono.str();
  }
  return os.str();
}

bool Polynomial::operator<(const Polynomial& o) const {
  if (n_ != o.n_) return n_ < o.n_;
  auto i = terms_.begin();
  auto j = o.terms_.begin();
  for (; i != terms_.end() && j != o.terms_.end(); ++i, ++j) {
    if (i->first != j->first) return i->first < j->first;
    if (i->second != j->second) return i->second < j->second;
  }
  return i == terms_.end() && j != o.terms_.end();
}

}  // namespace feynsec
