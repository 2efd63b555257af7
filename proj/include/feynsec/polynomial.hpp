#pragma once

#include <feynsec/rational.hpp>

#include <map>
#include <string>
#include <vector>

namespace feynsec {

using Exponents = std::vector<int>;

// Sparse multivariate polynomial with exact rational coefficients in a fixed
// number of variables. Zero coefficients are never stored.
class Polynomial {
 public:
  using TermMap = std::map<Exponents, Rational>;

  explicit Polynomial(int nvars = 0) : n_(nvars) {}

  static Polynomial constant(int nvars, const Rational& c);
  static Polynomial variable(int nvars, int i);
  static Polynomial monomial(const Exponents& e, const Rational& c = 1);

  int nvars() const { return n_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;

  void add_term(const Exponents& e, const Rational& c);

  Rational constant_term() const;
  int total_degree() const;
  // true and sets *deg if every monomial has the same total degree
  bool is_homogeneous(int* deg = nullptr) const;
  bool depends_on(int i) const;
  bool nonnegative_coefficients() const;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator*(const Rational& c) const;
  Polynomial& operator+=(const Polynomial& o);
  Polynomial pow(unsigned k) const;

  Polynomial derivative(int i) const;
  // x_i -> 0
  Polynomial set_zero(int i) const;
  // x_i -> x_i * x_by
  Polynomial scale_variable(int i, int by) const;
  // x_i -> v
  Polynomial substitute(int i, const Polynomial& v) const;
  // appends variables so the polynomial lives in nvars = m >= nvars()
  Polynomial extend(int m) const;

  // componentwise minimum exponent over all monomials
  Exponents gcd_monomial() const;
  Polynomial divide_monomial(const Exponents& e) const;
  Polynomial multiply_monomial(const Exponents& e) const;
  std::vector<Exponents> exponents() const;

  double evaluate(const double* x) const;
  Rational evaluate(const std::vector<Rational>& x) const;

  std::string to_string(const std::vector<std::string>& names = {}) const;

  bool operator==(const Polynomial& o) const { return n_ == o.n_ && terms_ == o.terms_; }
  bool operator!=(const Polynomial& o) const { return !(*this == o); }
  bool operator<(const Polynomial& o) const;

 private:
  int n_;
  TermMap terms_;
};

std::vector<std::string> default_names(int n, const std::string& prefix = "x");

}  // namespace feynsec
