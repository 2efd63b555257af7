#include <feynsec/errors.hpp>
#include <feynsec/finite.hpp>

#include <cmath>
#include <sstream>

namespace feynsec {

int FiniteIntegrand::intern(const Polynomial& p) {
  for (std::size_t k = 0; k < pool.size(); ++k)
    if (pool[k] == p) return static_cast<int>(k);
  pool.push_back(p);
  return static_cast<int>(pool.size()) - 1;
}

void FiniteIntegrand::merge(const FiniteIntegrand& o) {
  if (o.dim != dim) throw InternalError("merging integrands of different dimension");
  exact += o.exact;
  std::vector<int> remap(o.pool.size());
  for (std::size_t k = 0; k < o.pool.size(); ++k) remap[k] = intern(o.pool[k]);
  for (auto t : o.terms) {
    if (t.numerator >= 0) t.numerator = remap[t.numerator];
    for (auto& p : t.powers) p.first = remap[p.first];
    for (auto& p : t.poly_logs) p.first = remap[p.first];
    terms.push_back(std::move(t));
  }
}

bool FiniteIntegrand::type_check(std::string* why) const {
  auto fail = [&](const std::string& w) {
    if (why) *why = w;
    return false;
  };
  auto positive_on_cube = [&](int k) {
    const Polynomial& p = pool[k];
    return p.constant_term() > 0 && p.nonnegative_coefficients();
  };
  for (auto& p : pool)
    if (p.nvars() != dim) return fail("pool polynomial over the wrong variable count");
  for (auto& t : terms) {
    if (t.numerator >= static_cast<int>(pool.size())) return fail("numerator index out of range");
    for (auto& [k, e] : t.powers) {
      if (k < 0 || k >= static_cast<int>(pool.size()) || e == 0) return fail("malformed power");
      if (pool[k].constant_term() <= 0) return fail("factor without positive constant term: " + pool[k].to_string());
      if (e < 0 && !positive_on_cube(k)) return fail("denominator not bounded away from zero: " + pool[k].to_string());
    }
    for (auto& [k, e] : t.poly_logs) {
      if (k < 0 || k >= static_cast<int>(pool.size()) || e <= 0) return fail("malformed log power");
      if (!positive_on_cube(k)) return fail("log argument not positive on the cube: " + pool[k].to_string());
    }
    for (auto& [v, e] : t.var_logs)
      if (v < 0 || v >= dim || e <= 0) return fail("malformed variable log");
  }
  return true;
}

double FiniteIntegrand::evaluate(const double* x) const {
  std::vector<double> val(pool.size());
  for (std::size_t k = 0; k < pool.size(); ++k) val[k] = pool[k].evaluate(x);
  double sum = 0.0;
  for (auto& t : terms) {
    double v = t.coeff.get_d();
    if (t.numerator >= 0) v *= val[t.numerator];
    for (auto& [k, e] : t.powers) v *= std::pow(val[k], e);
    for (auto& [k, e] : t.poly_logs) v *= std::pow(std::log(val[k]), e);
    for (auto& [j, e] : t.var_logs) v *= std::pow(std::log(x[j]), e);
    sum += v;
  }
  return sum;
}

namespace {

struct DTerm {
  EpsPoly coef{Rational(1)};
  std::vector<std::pair<Rational, Rational>> poles;
  Polynomial num;
  std::vector<Polynomial> q;
  std::vector<EpsExponent> qe;
  std::vector<EpsExponent> mono;
};

struct FPart {
  EpsPoly coef;
  Polynomial num;
  std::vector<EpsExponent> qe;
};

bool same_shape(const FPart& a, const FPart& b) {
  if (a.qe.size() != b.qe.size() || a.coef.c != b.coef.c) return false;
  for (std::size_t k = 0; k < a.qe.size(); ++k)
    if (!(a.qe[k] == b.qe[k])) return false;
  return true;
}

void add_part(std::vector<FPart>& parts, FPart p) {
  if (p.num.is_zero() || p.coef.is_zero()) return;
  for (auto& o : parts)
    if (same_shape(o, p)) {
      o.num += p.num;
      return;
    }
  parts.push_back(std::move(p));
}

// d/dx_i of num * prod q_j^(qe_j), with the q_j held fixed.
std::vector<FPart> differentiate(const std::vector<FPart>& parts, const std::vector<Polynomial>& q,
                                 const std::vector<Polynomial>& dq, int i, int max_order) {
  std::vector<FPart> out;
  for (auto& p : parts) {
    add_part(out, FPart{p.coef, p.num.derivative(i), p.qe});
    for (std::size_t j = 0; j < q.size(); ++j) {
      if (dq[j].is_zero()) continue;
      const EpsExponent& e = p.qe[j];
      if (e.a == 0 && e.b == 0) continue;
      FPart d{mul(p.coef, EpsPoly::linear(Rational(e.a), Rational(e.b)), max_order), p.num * dq[j], p.qe};
      d.qe[j].a -= 1;
      add_part(out, std::move(d));
    }
  }
  // drop parts whose numerators cancelled after merging
  std::vector<FPart> kept;
  for (auto& p : out)
    if (!p.num.is_zero()) kept.push_back(std::move(p));
  return kept;
}

}  // namespace

std::vector<PoleTerm> extract_poles(const SectorIntegrand& s, int target_order) {
  int n = s.n;
  std::vector<int> aux(n, -1);
  int dim = n;
  for (int i = 0; i < n; ++i)
    if (s.mono[i].a <= -1) aux[i] = dim++;
  int npoles = 0;
  for (int i = 0; i < n; ++i)
    if (s.mono[i].a <= -1) ++npoles;
  // eps-coefficient polynomials never need more than this many orders
  int max_order = target_order + npoles + 1;
  if (max_order < 0) max_order = 0;

  DTerm t0;
  t0.num = Polynomial::constant(dim, 1);
  for (auto& f : s.factors) {
    t0.q.push_back(f.poly.extend(dim));
    t0.qe.push_back(f.exp);
  }
  t0.mono = s.mono;
  t0.mono.resize(dim, EpsExponent{});
  std::vector<DTerm> terms{t0};

  for (int i = 0; i < n; ++i) {
    long a = s.mono[i].a, b = s.mono[i].b;
    if (a > -1) continue;
    if (b == 0)
      throw DivergenceError("x" + std::to_string(i + 1) + "^" + std::to_string(a) +
                            " is not regulated by eps in sector " + s.to_string());
    long p = -a - 1;
    std::vector<DTerm> next;
    for (auto& T : terms) {
      std::vector<Polynomial> dq;
      for (auto& q : T.q) dq.push_back(q.derivative(i));
      std::vector<FPart> parts{FPart{T.coef, T.num, T.qe}};
      for (long k = 0; k <= p; ++k) {
        std::vector<Polynomial> q0;
        for (auto& q : T.q) q0.push_back(q.set_zero(i));
        for (auto& part : parts) {
          Polynomial num0 = part.num.set_zero(i);
          if (num0.is_zero()) continue;
          DTerm d;
          d.coef = mul(part.coef, EpsPoly(1 / factorial(static_cast<unsigned>(k))), max_order);
          d.poles = T.poles;
          d.poles.emplace_back(Rational(a + k + 1), Rational(b));
          d.num = num0;
          d.q = q0;
          d.qe = part.qe;
          d.mono = T.mono;
          d.mono[i] = EpsExponent{};
          next.push_back(std::move(d));
        }
        parts = differentiate(parts, T.q, dq, i, max_order);
      }
      // Taylor remainder in integral form, auxiliary variable s_i
      Polynomial weight = Polynomial::constant(dim, 1) - Polynomial::variable(dim, aux[i]);
      weight = weight.pow(static_cast<unsigned>(p)) * (1 / factorial(static_cast<unsigned>(p)));
      std::vector<Polynomial> qs;
      for (auto& q : T.q) qs.push_back(q.scale_variable(i, aux[i]));
      for (auto& part : parts) {
        DTerm d;
        d.coef = part.coef;
        d.poles = T.poles;
        d.num = part.num.scale_variable(i, aux[i]) * weight;
        if (d.num.is_zero()) continue;
        d.q = qs;
        d.qe = part.qe;
        d.mono = T.mono;
        d.mono[i] = EpsExponent{0, b};
        next.push_back(std::move(d));
      }
    }
    terms = std::move(next);
  }

  std::vector<PoleTerm> out;
  for (auto& T : terms) {
    PoleTerm pt;
    pt.dim = dim;
    Laurent pre;
    pre.lo = 0;
    pre.c = T.coef.c;
    for (auto& x : pre.c) x *= s.prefactor;
    int extra = static_cast<int>(T.poles.size());
    for (auto& [al, be] : T.poles) pre = mul(pre, inverse_linear(al, be, target_order + extra), target_order);
    bool nonzero = false;
    for (auto& x : pre.c) nonzero = nonzero || x != 0;
    if (!nonzero) continue;
    pt.prefactor = pre;
    pt.numerator = T.num;
    for (std::size_t j = 0; j < T.q.size(); ++j) pt.factors.push_back({T.q[j], T.qe[j]});
    pt.mono = T.mono;
    out.push_back(std::move(pt));
  }
  return out;
}

namespace {

Rational rational_pow(const Rational& c, long e) {
  Rational r = 1;
  Rational base = e >= 0 ? c : 1 / c;
  for (long k = 0; k < std::labs(e); ++k) r *= base;
  return r;
}

struct Atom {
  bool is_var = false;
  int index = 0;          // variable, or slot in the polynomial list
  Rational coeff;
};

// All ways to write k as an ordered sum over the atoms.
void compositions(int k, std::size_t slots, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (cur.size() + 1 == slots) {
    cur.push_back(k);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (int j = k; j >= 0; --j) {
    cur.push_back(j);
    compositions(k - j, slots, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::map<int, FiniteIntegrand> expand_eps(const PoleTerm& t, int target_order) {
  std::map<int, FiniteIntegrand> out;
  if (t.prefactor.c.empty() || t.prefactor.lo > target_order) return out;
  Exponents shift(t.dim, 0);
  for (int v = 0; v < t.dim; ++v) {
    if (t.mono[v].a < 0) throw InternalError("expand_eps needs nonnegative integer exponents");
    shift[v] = static_cast<int>(t.mono[v].a);
  }
  Polynomial num = t.numerator.multiply_monomial(shift);
  if (num.is_zero()) return out;
  Rational fold = 1;
  std::vector<Polynomial> polys;
  std::vector<std::pair<int, int>> powers;
  std::vector<Atom> atoms;
  for (auto& f : t.factors) {
    if (f.poly.is_constant()) {
      Rational c = f.poly.constant_term();
      if (c <= 0) throw DomainError("non-positive constant factor in finite integrand");
      fold *= rational_pow(c, f.exp.a);
      if (f.exp.b != 0 && c != 1) {
        polys.push_back(f.poly);
        atoms.push_back({false, static_cast<int>(polys.size()) - 1, Rational(f.exp.b)});
      }
      continue;
    }
    polys.push_back(f.poly);
    int slot = static_cast<int>(polys.size()) - 1;
    if (f.exp.a != 0) powers.emplace_back(slot, static_cast<int>(f.exp.a));
    if (f.exp.b != 0) atoms.push_back({false, slot, Rational(f.exp.b)});
  }
  for (int v = 0; v < t.dim; ++v)
    if (t.mono[v].b != 0) atoms.push_back({true, v, Rational(t.mono[v].b)});
  bool num_const = num.is_constant();
  if (num_const) fold *= num.constant_term();

  int kmax = target_order - t.prefactor.lo;
  for (int k = 0; k <= kmax; ++k) {
    std::vector<std::vector<int>> comps;
    if (atoms.empty()) {
      if (k == 0) comps.push_back({});
    } else {
      std::vector<int> cur;
      compositions(k, atoms.size(), cur, comps);
    }
    for (auto& kappa : comps) {
      Rational w = fold;
      for (std::size_t a = 0; a < atoms.size(); ++a) {
        if (!kappa[a]) continue;
        w *= rational_pow(atoms[a].coeff, kappa[a]) / factorial(static_cast<unsigned>(kappa[a]));
      }
      if (w == 0) continue;
      for (int p = t.prefactor.lo; p + k <= target_order; ++p) {
        Rational pc = t.prefactor.at(p);
        if (pc == 0) continue;
        int order = p + k;
        auto it = out.find(order);
        if (it == out.end()) {
          it = out.emplace(order, FiniteIntegrand{}).first;
          it->second.dim = t.dim;
        }
        FiniteIntegrand& fi = it->second;
        bool has_logs = false;
        for (int v : kappa) has_logs = has_logs || v;
        if (num_const && powers.empty() && !has_logs) {
          fi.exact += pc * w;
          continue;
        }
        FiniteTerm term;
        term.coeff = pc * w;
        term.numerator = num_const ? -1 : fi.intern(num);
        for (auto& [slot, e] : powers) term.powers.emplace_back(fi.intern(polys[slot]), e);
        for (std::size_t a = 0; a < atoms.size(); ++a) {
          if (!kappa[a]) continue;
          if (atoms[a].is_var) term.var_logs.emplace_back(atoms[a].index, kappa[a]);
          else term.poly_logs.emplace_back(fi.intern(polys[atoms[a].index]), kappa[a]);
        }
        fi.terms.push_back(std::move(term));
      }
    }
  }
  return out;
}

}  // namespace feynsec
