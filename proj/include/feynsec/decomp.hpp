#pragma once

#include <feynsec/graphpoly.hpp>
#include <feynsec/hironaka.hpp>
#include <feynsec/polynomial.hpp>

#include <string>
#include <vector>

namespace feynsec {

struct Factor {
  Polynomial poly;
  EpsExponent exp;
};

// Integral over the standard simplex:
//   int dx delta(1 - sum x) prod x_i^(a_i + b_i eps) prod P_j^(d_j + f_j eps)
struct GeneralIntegral {
  int n = 0;
  std::vector<EpsExponent> mono;
  std::vector<Factor> factors;
  Rational prefactor = 1;
  bool positivity_by_sampling = false;  // set when coefficient signs alone could not certify positivity
};

// Integral over the unit hypercube [0,1]^n.
struct SectorIntegrand {
  int n = 0;
  std::vector<EpsExponent> mono;
  std::vector<Factor> factors;
  Rational prefactor = 1;
  std::vector<std::string> trail;  // substitutions applied so far

  std::string to_string() const;
};

GeneralIntegral from_param_integral(const ParamIntegral& p);

// Checks factor positivity on the open simplex (coefficient signs, then sampling).
void check_positivity(GeneralIntegral& j);

GeneralIntegral homogenize(const GeneralIntegral& j);
std::vector<SectorIntegrand> primary_sectors(const GeneralIntegral& j);

// x_i = x_l x_i' for i in S \ {l}; extracts the gcd monomial of every factor.
SectorIntegrand decompose_step(const SectorIntegrand& s, const std::vector<int>& S, int l);

bool is_monomialised(const Polynomial& p);

struct DecompOptions {
  Strategy strategy = Strategy::PairDiff;
  long max_blowups = 10000;  // per call (one primary sector)
  bool check_soundness = false;  // compare child Newton sets with the game move
};

std::vector<SectorIntegrand> iterate_decomposition(const SectorIntegrand& s, const DecompOptions& opt = {});

}  // namespace feynsec
