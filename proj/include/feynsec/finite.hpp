#pragma once

#include <feynsec/decomp.hpp>
#include <feynsec/polynomial.hpp>
#include <feynsec/rational.hpp>

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace feynsec {

// One class-M term:
//   coeff * N * prod pool[p]^e * prod ln(pool[p])^k * prod ln(x_v)^k
// Integer exponents only; negative exponents only on pool polynomials with
// positive constant term.
struct FiniteTerm {
  Rational coeff = 1;
  int numerator = -1;  // pool index, -1 for the constant 1
  std::vector<std::pair<int, int>> powers;
  std::vector<std::pair<int, int>> poly_logs;
  std::vector<std::pair<int, int>> var_logs;
};

struct FiniteIntegrand {
  int dim = 0;
  std::vector<Polynomial> pool;
  std::vector<FiniteTerm> terms;
  Rational exact = 0;  // part that does not depend on the integration variables

  int intern(const Polynomial& p);
  // Appends another integrand over the same variables.
  void merge(const FiniteIntegrand& o);
  bool has_variable_part() const { return !terms.empty(); }

  // Structural class-M check; on failure fills *why.
  bool type_check(std::string* why = nullptr) const;
  // Scalar reference evaluation of the variable part at x (length dim).
  double evaluate(const double* x) const;
};

// Output of pole extraction: an exact Laurent prefactor times an integrand
// that is finite at eps = 0 and absolutely integrable on [0,1]^dim.
struct PoleTerm {
  Laurent prefactor;
  int dim = 0;
  Polynomial numerator;
  std::vector<Factor> factors;     // polynomials with positive constant term
  std::vector<EpsExponent> mono;   // per variable, a >= 0
};

// Variables 0..n-1 are the sector variables; every variable with a_i <= -1
// gets an auxiliary variable (appended in index order) for the Taylor remainder.
std::vector<PoleTerm> extract_poles(const SectorIntegrand& s, int target_order);

std::map<int, FiniteIntegrand> expand_eps(const PoleTerm& t, int target_order);

}  // namespace feynsec
