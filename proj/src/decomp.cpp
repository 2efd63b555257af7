#include <feynsec/decomp.hpp>
#include <feynsec/errors.hpp>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace feynsec {

std::string SectorIntegrand::to_string() const {
  std::ostringstream os;
  auto names = default_names(n, "t");
  os << "[";
  for (int i = 0; i < n; ++i) os << (i ? " " : "") << mono[i].to_string();
  os << "]";
  if (prefactor != 1) os << " * " << prefactor.get_str();
  for (auto& f : factors)
    if (!(f.poly.is_constant() && f.poly.constant_term() == 1)) os << " (" << f.poly.to_string(names) << ")^(" << f.exp.to_string() << ")";
  return os.str();
}

GeneralIntegral from_param_integral(const ParamIntegral& p) {
  GeneralIntegral j;
  j.n = p.n;
  j.mono = p.mono;
  j.factors.push_back({p.U, p.u_exp});
  j.factors.push_back({p.F, p.f_exp});
  return j;
}

void check_positivity(GeneralIntegral& j) {
  for (auto& f : j.factors) {
    if (f.poly.is_zero()) throw DomainError("zero factor polynomial");
    if (f.poly.nonnegative_coefficients()) continue;
    // fall back to sampling the open simplex
    std::mt19937_64 rng(12345);
    std::vector<double> x(j.n);
    for (int s = 0; s < 20000; ++s) {
      double sum = 0;
      for (auto& v : x) {
        v = -std::log(((rng() >> 11) + 0.5) * 0x1.0p-53);
        sum += v;
      }
      for (auto& v : x) v /= sum;
      if (!(f.poly.evaluate(x.data()) > 0))
        throw DomainError("factor " + f.poly.to_string() + " is not positive inside the simplex");
    }
    j.positivity_by_sampling = true;
  }
}

GeneralIntegral homogenize(const GeneralIntegral& j) {
  GeneralIntegral r = j;
  Polynomial sum(j.n);
  for (int i = 0; i < j.n; ++i) sum += Polynomial::variable(j.n, i);
  for (auto& f : r.factors) {
    int deg = f.poly.total_degree();
    if (f.poly.is_homogeneous()) continue;
    Polynomial h(j.n);
    for (auto& [e, c] : f.poly.terms()) {
      int d = 0;
      for (int v : e) d += v;
      h += Polynomial::monomial(e, c) * sum.pow(deg - d);
    }
    f.poly = h;
  }
  return r;
}

namespace {

// Moves the gcd monomial of every factor into the variable exponents.
void extract_monomials(SectorIntegrand& s) {
  for (auto& f : s.factors) {
    Exponents g = f.poly.gcd_monomial();
    bool any = false;
    for (int v : g) any = any || v;
    if (!any) continue;
    f.poly = f.poly.divide_monomial(g);
    for (int i = 0; i < s.n; ++i) {
      s.mono[i].a += static_cast<long>(g[i]) * f.exp.a;
      s.mono[i].b += static_cast<long>(g[i]) * f.exp.b;
    }
  }
}

}  // namespace

std::vector<SectorIntegrand> primary_sectors(const GeneralIntegral& j) {
  std::vector<int> degs;
  for (auto& f : j.factors) {
    int d = 0;
    if (!f.poly.is_homogeneous(&d)) throw InternalError("primary sectors need homogeneous factors");
    degs.push_back(d);
  }
  // Omega = n + sum mu_i + sum deg_j lambda_j; zero for projective integrands
  EpsExponent omega{j.n, 0};
  for (auto& m : j.mono) {
    omega.a += m.a;
    omega.b += m.b;
  }
  for (std::size_t k = 0; k < j.factors.size(); ++k) {
    omega.a += degs[k] * j.factors[k].exp.a;
    omega.b += degs[k] * j.factors[k].exp.b;
  }
  std::vector<SectorIntegrand> out;
  int m = j.n - 1;
  for (int l = 0; l < j.n; ++l) {
    SectorIntegrand s;
    s.n = m;
    s.prefactor = j.prefactor;
    s.trail.push_back("primary " + std::to_string(l + 1));
    // variable index in the sector for original x_i, i != l
    auto idx = [&](int i) { return i < l ? i : i - 1; };
    for (int i = 0; i < j.n; ++i)
      if (i != l) s.mono.push_back(j.mono[i]);
    for (auto& f : j.factors) {
      Polynomial p(m);
      for (auto& [e, c] : f.poly.terms()) {
        Exponents t(m, 0);
        for (int i = 0; i < j.n; ++i)
          if (i != l) t[idx(i)] = e[i];
        p.add_term(t, c);
      }
      s.factors.push_back({p, f.exp});
    }
    if (omega.a != 0 || omega.b != 0) {
      Polynomial t = Polynomial::constant(m, 1);
      for (int i = 0; i < m; ++i) t += Polynomial::variable(m, i);
      s.factors.push_back({t, {-omega.a, -omega.b}});
    }
    extract_monomials(s);
    out.push_back(std::move(s));
  }
  return out;
}

SectorIntegrand decompose_step(const SectorIntegrand& s, const std::vector<int>& S, int l) {
  if (S.empty() || !std::binary_search(S.begin(), S.end(), l)) throw InternalError("l must be an element of S");
  SectorIntegrand r = s;
  if (S.size() == 1) return r;
  std::ostringstream tr;
  tr << "x" << l + 1 << " max of {";
  for (std::size_t k = 0; k < S.size(); ++k) tr << (k ? "," : "") << "x" << S[k] + 1;
  tr << "}";
  r.trail.push_back(tr.str());
  r.mono[l].a += static_cast<long>(S.size()) - 1;  // Jacobian
  for (int i : S) {
    if (i == l) continue;
    r.mono[l].a += s.mono[i].a;
    r.mono[l].b += s.mono[i].b;
  }
  for (auto& f : r.factors)
    for (int i : S)
      if (i != l) f.poly = f.poly.scale_variable(i, l);
  extract_monomials(r);
  return r;
}

bool is_monomialised(const Polynomial& p) { return p.constant_term() != 0; }

std::vector<SectorIntegrand> iterate_decomposition(const SectorIntegrand& s0, const DecompOptions& opt) {
  for (auto& f : s0.factors)
    if (f.poly.is_zero()) throw DomainError("zero factor in sector");
  std::vector<SectorIntegrand> done;
  std::vector<SectorIntegrand> work{s0};
  extract_monomials(work.back());
  long blowups = 0;
  while (!work.empty()) {
    SectorIntegrand s = std::move(work.back());
    work.pop_back();
    // gcd monomials are always extracted, so "not monomialised" means no constant term
    int target = -1;
    for (std::size_t k = 0; k < s.factors.size(); ++k)
      if (!is_monomialised(s.factors[k].poly)) {
        target = static_cast<int>(k);
        break;
      }
    if (target < 0) {
      for (auto& f : s.factors)
        if (f.poly.constant_term() < 0)
          throw DomainError("negative constant term in monomialised factor " + f.poly.to_string());
      done.push_back(std::move(s));
      continue;
    }
    if (++blowups > opt.max_blowups) {
      std::ostringstream os;
      os << "iteration cap " << opt.max_blowups << " exceeded in sector " << s.to_string() << "; Newton sets:";
      for (auto& f : s.factors) os << " " << normalize(newton_points(f.poly)).to_string();
      throw StrategyError(os.str());
    }
    std::vector<int> S = strategy_for_polynomial(s.factors[target].poly, opt.strategy);
    PointSet parent = normalize(newton_points(s.factors[target].poly));
    std::vector<SectorIntegrand> kids;
    for (int l : S) {
      SectorIntegrand c = decompose_step(s, S, l);
      for (std::size_t k = 0; k < static_cast<std::size_t>(target); ++k)
        if (!is_monomialised(c.factors[k].poly)) throw InternalError("substitution broke a monomialised factor");
      if (opt.check_soundness) {
        PointSet expect = normalize(apply_move(parent, Move{S, l}));
        PointSet got = normalize(newton_points(c.factors[target].poly));
        if (!(expect == got))
          throw InternalError("Newton set " + got.to_string() + " differs from game move " + expect.to_string());
      }
      kids.push_back(std::move(c));
    }
    // keep output in the order children are produced
    for (auto it = kids.rbegin(); it != kids.rend(); ++it) work.push_back(std::move(*it));
  }
  return done;
}

}  // namespace feynsec
