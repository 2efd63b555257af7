// One line per acceptance criterion; exit status is the number of failures.
#include <feynsec/errors.hpp>
#include <feynsec/hironaka.hpp>
#include <feynsec/pipeline.hpp>
#include <feynsec/polylog.hpp>
#include <feynsec/words.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>

using namespace feynsec;

namespace {

#ifndef FEYNSEC_DATA_DIR
#define FEYNSEC_DATA_DIR "data"
#endif

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

int failures = 0;

void report(int id, const std::string& name, bool ok, const std::string& detail) {
  std::printf("%s %d %s: %s\n", ok ? "PASS" : "FAIL", id, name.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.7g", v);
  return buf;
}

Job job(const std::string& name) { return load_job(std::string(FEYNSEC_DATA_DIR) + "/" + name + ".json"); }

// Gamma(1 - eps)^2 / Gamma(2 - 2 eps), with Gamma(2 - 2 eps) = Gamma(1 - 2 eps) (1 - 2 eps)
std::vector<double> bubble_oracle(int order) {
  auto g1 = gamma1_series(-1, order);
  auto g2 = gamma1_series(-2, order);
  auto rat = gamma_expansion(2, order);  // 1 + eps
  std::vector<double> lin(order + 1, 0.0);
  for (int k = 0; k <= order; ++k) lin[k] = to_double(rat[k]) * std::pow(-2.0, k);
  return series_mul(series_mul(g1, g1), series_inverse(series_mul(g2, lin)));
}

// eps^-2 Gamma(1 - eps)^2 / Gamma(1 - 2 eps); entry k is eps^(k-2). The
// Gamma(1 + eps) of the usual normalisation is the parametric prefactor that
// the integrals here leave out.
std::vector<double> triangle_oracle(int order) {
  int n = order + 2;
  auto gm = gamma1_series(-1, n);
  auto g2 = gamma1_series(-2, n);
  return series_mul(series_mul(gm, gm), series_inverse(g2));
}

MCConfig acceptance_mc() {
  MCConfig mc;
  mc.samples = 1000000;
  mc.seed = 20240601;
  return mc;
}

bool compare_series(const EpsSeries& s, int lo, const std::vector<double>& oracle, std::string& detail,
                    const std::vector<int>& zero_orders = {}) {
  bool ok = true;
  std::ostringstream os;
  for (std::size_t k = 0; k < oracle.size(); ++k) {
    int o = lo + static_cast<int>(k);
    auto it = s.find(o);
    if (it == s.end()) {
      os << " c" << o << " missing";
      ok = false;
      continue;
    }
    double c = it->second.value, e = it->second.err, want = oracle[k];
    double dev = std::abs(c - want);
    bool zero = std::find(zero_orders.begin(), zero_orders.end(), o) != zero_orders.end();
    bool in_sigma = e > 0 ? dev <= 3 * e : dev <= 1e-12 * std::max(1.0, std::abs(want));
    bool in_rel = zero ? true : dev <= 0.01 * std::abs(want);
    os << " c" << o << "=" << fmt(c) << "+-" << fmt(e) << " (want " << fmt(want) << ", " << fmt(e > 0 ? dev / e : 0)
       << " sigma)";
    ok = ok && in_sigma && in_rel;
  }
  detail = os.str();
  return ok;
}

void criterion_bubble() {
  auto t0 = Clock::now();
  try {
    Job j = job("bubble");
    j.order = 3;
    auto r = run_pipeline(j, Strategy::PairDiff, acceptance_mc());
    auto oracle = bubble_oracle(3);
    std::string detail;
    bool ok = compare_series(r.series, 0, oracle, detail);
    // the stated closed forms of the oracle
    bool oracle_ok = std::abs(oracle[2] - (4 - zeta(2))) < 1e-12 && std::abs(oracle[3] - (8 - 2 * zeta(2) - 2 * zeta(3))) < 1e-12;
    double t = seconds_since(t0);
    report(1, "massless bubble", ok && oracle_ok && t < 60,
           detail + (oracle_ok ? "" : " oracle mismatch") + ", " + fmt(t) + " s");
  } catch (const std::exception& e) {
    report(1, "massless bubble", false, e.what());
  }
}

void criterion_triangle() {
  auto t0 = Clock::now();
  try {
    Job j = job("triangle");
    j.order = 1;
    auto r = run_pipeline(j, Strategy::PairDiff, acceptance_mc());
    auto oracle = triangle_oracle(1);
    std::string detail;
    bool ok = compare_series(r.series, -2, oracle, detail, {-1});
    bool oracle_ok = std::abs(oracle[0] - 1) < 1e-14 && std::abs(oracle[1]) < 1e-14 &&
                     std::abs(oracle[2] + zeta(2)) < 1e-12 && std::abs(oracle[3] + 2 * zeta(3)) < 1e-12;
    double t = seconds_since(t0);
    report(2, "one-mass triangle", ok && oracle_ok && t < 60,
           detail + (oracle_ok ? "" : " oracle mismatch") + ", " + fmt(t) + " s");
  } catch (const std::exception& e) {
    report(2, "one-mass triangle", false, e.what());
  }
}

void criterion_tadpole() {
  try {
    Job j = job("tadpole");
    j.order = 3;
    auto r = run_pipeline(j, Strategy::PairDiff, acceptance_mc());
    bool ok = r.mc_streams == 0;
    std::ostringstream os;
    for (int o = 0; o <= 3; ++o) {
      auto it = r.series.find(o);
      if (it == r.series.end()) {
        ok = false;
        continue;
      }
      ok = ok && it->second.value == (o == 0 ? 1.0 : 0.0) && it->second.err == 0.0;
      os << " c" << o << "=" << it->second.value << "+-" << it->second.err;
    }
    ok = ok && r.series.begin()->first == 0;
    os << ", " << r.mc_streams << " sampled integrands";
    report(3, "massive tadpole", ok, os.str());
  } catch (const std::exception& e) {
    report(3, "massive tadpole", false, e.what());
  }
}

void criterion_hironaka() {
  auto t0 = Clock::now();
  std::mt19937_64 rng(20240601);
  long games = 0, failed = 0, max_moves = 0;
  std::string first_error;
  for (int t = 0; t < 500; ++t) {
    int n = 1 + static_cast<int>(rng() % 4);
    int k = 1 + static_cast<int>(rng() % 6);
    std::vector<Point> pts;
    for (int a = 0; a < k; ++a) {
      Point p(n);
      for (auto& x : p) x = static_cast<int>(rng() % 6);
      pts.push_back(p);
    }
    PointSet m(n, pts);
    MeasureOracle oracle;
    for (auto pol : {BPolicy::Random, BPolicy::MaxCoordinate, BPolicy::MinCoordinate}) {
      ++games;
      PlayOptions opt;
      opt.policy = pol;
      opt.seed = static_cast<std::uint64_t>(t);
      opt.oracle = &oracle;
      opt.check_measure = true;
      try {
        auto r = play(m, opt);
        if (!r.won) throw StrategyError("game not won");
        for (auto& e : r.transcript)
          if (e.measure_after >= e.measure_before) throw StrategyError("measure did not decrease");
        max_moves = std::max(max_moves, r.moves);
      } catch (const Error& e) {
        if (first_error.empty()) first_error = m.to_string() + ": " + e.what();
        ++failed;
      }
    }
  }
  double t = seconds_since(t0);
  report(4, "polyhedra game termination", failed == 0 && t < 10,
         std::to_string(games - failed) + "/" + std::to_string(games) + " games won, longest " +
             std::to_string(max_moves) + " moves, " + fmt(t) + " s" + (first_error.empty() ? "" : ", " + first_error));
}

std::vector<Word> all_words(const std::vector<Letter>& letters, int max_len) {
  std::vector<Word> out{Word{}}, level{Word{}};
  for (int len = 1; len <= max_len; ++len) {
    std::vector<Word> next;
    for (auto& w : level)
      for (Letter l : letters) {
        Word v = w;
        v.push_back(l);
        next.push_back(v);
      }
    out.insert(out.end(), next.begin(), next.end());
    level = std::move(next);
  }
  return out;
}

void criterion_hopf() {
  auto t0 = Clock::now();
  Alphabet a("abc");
  a.set_pairing(free_commutative_pairing());
  std::vector<Letter> letters{0, 1, 2};
  auto words = all_words(letters, 4);
  long checks = 0;
  std::string bad;
  auto fail = [&](const std::string& what) {
    if (bad.empty()) bad = what;
  };
  for (Product p : {Product::Shuffle, Product::QuasiShuffle}) {
    std::string tag = p == Product::Shuffle ? "shuffle" : "quasi-shuffle";
    for (auto& u : words) {
      // coassociativity, counit, antipode convolutions
      ++checks;
      if (coproduct_left(u) != coproduct_right(u)) fail(tag + " coassociativity at " + a.format(u));
      TensorComb d = coproduct(u);
      LinComb expect = u.empty() ? word(Word{}) : LinComb{};
      if (antipode_left_convolution(d, p, a) != expect) fail(tag + " m(S x id)Delta at " + a.format(u));
      if (antipode_right_convolution(d, p, a) != expect) fail(tag + " m(id x S)Delta at " + a.format(u));
      if (p == Product::Shuffle && antipode(u, p, a) != antipode_shuffle(u)) fail("shuffle antipode closed form at " + a.format(u));
      for (auto& v : words) {
        ++checks;
        LinComb uv = multiply(u, v, p, a);
        if (uv != multiply(v, u, p, a)) fail(tag + " commutativity at " + a.format(u) + ", " + a.format(v));
        if (coproduct(uv) != multiply(coproduct(u), coproduct(v), p, a))
          fail(tag + " bialgebra compatibility at " + a.format(u) + ", " + a.format(v));
        for (auto& w : words) {
          if (u.size() + v.size() + w.size() > 4) continue;
          ++checks;
          if (multiply(uv, word(w), p, a) != multiply(word(u), multiply(v, w, p, a), p, a))
            fail(tag + " associativity at " + a.format(u) + ", " + a.format(v) + ", " + a.format(w));
        }
      }
    }
  }
  double t = seconds_since(t0);
  report(5, "Hopf algebra identities", bad.empty(),
         std::to_string(checks) + " exact checks on words of length <= 4 over {a,b,c} (all pairs; triples up to total length 4), " + fmt(t) + " s" +
             (bad.empty() ? "" : ", first failure: " + bad));
}

// G(z1..zk; y) for real y > 0 by integrating the defining differential system
// in u = ln t with classical Runge-Kutta. Independent of the series code.
Complex g_ode(const std::vector<Complex>& z, double y) {
  const int k = static_cast<int>(z.size());
  const double u0 = std::log(1e-14), u1 = std::log(y);
  const int steps = 40000;
  const double h = (u1 - u0) / steps;
  // G_j(t) = G(z_j..z_k; t), j = 0..k-1; G_k = 1
  auto rhs = [&](double u, const std::vector<Complex>& g) {
    double t = std::exp(u);
    std::vector<Complex> d(k);
    for (int j = 0; j < k; ++j) d[j] = t / (t - z[j]) * (j + 1 < k ? g[j + 1] : Complex(1));
    return d;
  };
  std::vector<Complex> g(k, Complex(0));
  double u = u0;
  for (int s = 0; s < steps; ++s) {
    auto k1 = rhs(u, g);
    std::vector<Complex> tmp(k);
    for (int j = 0; j < k; ++j) tmp[j] = g[j] + 0.5 * h * k1[j];
    auto k2 = rhs(u + 0.5 * h, tmp);
    for (int j = 0; j < k; ++j) tmp[j] = g[j] + 0.5 * h * k2[j];
    auto k3 = rhs(u + 0.5 * h, tmp);
    for (int j = 0; j < k; ++j) tmp[j] = g[j] + h * k3[j];
    auto k4 = rhs(u + h, tmp);
    for (int j = 0; j < k; ++j) g[j] += h / 6 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
    u += h;
  }
  return g[0];
}

Rational brute_zsum(long n, const ZWord& w) {
  // direct nested enumeration, memoised on (depth, upper limit)
  std::map<std::pair<std::size_t, long>, Rational> memo;
  std::function<Rational(std::size_t, long)> rec = [&](std::size_t d, long upper) -> Rational {
    if (d == w.size()) return 1;
    auto key = std::make_pair(d, upper);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    Rational s = 0;
    for (long i = 1; i <= upper; ++i) {
      Rational term = 1;
      for (long q = 0; q < i; ++q) term *= w[d].second;
      for (int q = 0; q < w[d].first; ++q) term /= i;
      s += term * rec(d + 1, i - 1);
    }
    memo.emplace(key, s);
    return s;
  };
  return rec(0, n);
}

void criterion_polylog() {
  auto t0 = Clock::now();
  std::ostringstream os;
  bool ok = true;
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  // Hoelder convolution, p = 2
  {
    std::vector<Complex> letters{2.0, -2.0, 3.0, Complex(2, 1), Complex(-3, 0.5), 0.0};
    double worst = 0;
    int count = 0;
    for (int w = 1; w <= 3; ++w) {
      std::vector<int> idx(w, 0);
      while (true) {
        std::vector<Complex> z;
        for (int i : idx) z.push_back(letters[i]);
        if (z.back() != Complex(0)) {
          auto s = hoelder(z, 2.0);
          worst = std::max(worst, std::abs(s.lhs - s.rhs) / std::max(1.0, std::abs(s.lhs)));
          ++count;
        }
        int p = 0;
        while (p < w && ++idx[p] == static_cast<int>(letters.size())) idx[p++] = 0;
        if (p == w) break;
      }
    }
    bool pass = worst <= 1e-10;
    ok = ok && pass;
    os << "Hoelder " << count << " cases max " << fmt(worst) << (pass ? "" : " FAIL") << "; ";
  }
  // Li2 functional equations
  {
    const double pi2_6 = M_PI * M_PI / 6;
    double worst = 0;
    for (int s = 0; s < 100; ++s) {
      double r = 3 * unif(rng), th = 2 * M_PI * unif(rng);
      Complex x = std::polar(r, th);
      if (std::abs(x.imag()) < 1e-3) x += Complex(0, 0.1);
      Complex refl = li2_numeric(x) + li2_numeric(1.0 - x) - (pi2_6 - std::log(x) * std::log(1.0 - x));
      Complex lmx = std::log(-x);
      Complex inv = li2_numeric(x) + li2_numeric(1.0 / x) - (-pi2_6 - 0.5 * lmx * lmx);
      double scale = std::max(1.0, std::abs(li2_numeric(x)));
      worst = std::max({worst, std::abs(refl) / scale, std::abs(inv) / scale});
    }
    double series_worst = 0;
    for (int s = 0; s < 100; ++s) {
      Complex x = std::polar(0.5 * unif(rng), 2 * M_PI * unif(rng));
      Complex direct = 0, p = 1;
      for (int n = 1; n < 200; ++n) {
        p *= x;
        direct += p / double(n) / double(n);
      }
      series_worst = std::max(series_worst, std::abs(li2_numeric(x) - direct) / std::abs(direct));
    }
    bool pass = worst <= 1e-12 && series_worst <= 1e-14;
    ok = ok && pass;
    os << "Li2 functional equations max " << fmt(worst) << ", vs series " << fmt(series_worst) << (pass ? "" : " FAIL")
       << "; ";
  }
  // G derivative against central differences
  {
    double worst = 0;
    for (int s = 0; s < 50; ++s) {
      int k = 1 + static_cast<int>(rng() % 3);
      std::vector<Complex> z;
      for (int i = 0; i < k; ++i) {
        Complex c = std::polar(2 + 2 * unif(rng), 2 * M_PI * unif(rng));
        if (i + 1 < k && rng() % 4 == 0) c = 0;
        z.push_back(c);
      }
      double y = 0.2 + 0.7 * unif(rng), h = 1e-4;
      Complex fd = (g_func(z, y + h) - g_func(z, y - h)) / (2 * h);
      std::vector<Complex> rest(z.begin() + 1, z.end());
      Complex exact = g_func(rest, y) / (y - z[0]);
      worst = std::max(worst, std::abs(fd - exact) / std::abs(exact));
    }
    bool pass = worst <= 1e-6;
    ok = ok && pass;
    os << "G derivative max " << fmt(worst) << (pass ? "" : " FAIL") << "; ";
  }
  // Li <-> G round trip on a fixed admissible corpus, G from the differential system
  {
    std::vector<std::pair<MultiIndex, std::vector<Complex>>> corpus{
        {{1}, {0.5}},           {{2}, {0.3}},          {{3}, {-0.4}},          {{1, 1}, {0.5, 0.8}},
        {{2, 1}, {0.4, -0.5}},  {{1, 2}, {0.25, 1.5}}, {{1, 1, 1}, {0.5, 0.9, 0.7}}, {{2}, {Complex(0.2, 0.3)}},
        {{1, 1}, {Complex(-0.3, 0.2), Complex(0.5, -0.5)}}};
    double worst = 0;
    for (auto& [m, x] : corpus) {
      Complex li = li_series(m, x).value;
      std::vector<Complex> zz;
      Complex prod = 1;
      for (std::size_t j = 0; j < m.size(); ++j) {
        prod *= x[j];
        zz.insert(zz.end(), m[j] - 1, Complex(0));
        zz.push_back(1.0 / prod);
      }
      double sign = m.size() % 2 ? -1 : 1;
      Complex via_ode = sign * g_ode(zz, 1.0);
      Complex via_g = sign * g_func(zz, 1.0);
      worst = std::max({worst, std::abs(li - via_ode) / std::abs(li), std::abs(li - via_g) / std::abs(li)});
    }
    bool pass = worst <= 1e-8;
    ok = ok && pass;
    os << "Li<->G round trip max " << fmt(worst) << (pass ? "" : " FAIL") << "; ";
  }
  // Z-sum quasi-shuffle against brute force
  {
    std::vector<Rational> xs{Rational(1), Rational(1, 2), Rational(-2, 3), Rational(3)};
    long checks = 0, bad = 0;
    for (int s = 0; s < 60; ++s) {
      auto rand_word = [&] {
        ZWord w;
        int d = 1 + static_cast<int>(rng() % 3);
        for (int i = 0; i < d; ++i) w.emplace_back(1 + static_cast<int>(rng() % 2), xs[rng() % xs.size()]);
        return w;
      };
      ZWord u = rand_word(), v = rand_word();
      auto prod = zsum_product(u, v);
      for (long n : {1L, 2L, 5L, 11L, 20L}) {
        Rational lhs = brute_zsum(n, u) * brute_zsum(n, v);
        Rational rhs = 0;
        for (auto& [c, w] : prod) rhs += c * brute_zsum(n, w);
        ++checks;
        if (lhs != rhs) ++bad;
      }
    }
    bool pass = bad == 0;
    ok = ok && pass;
    os << "Z-sum products " << checks - bad << "/" << checks << " exact";
  }
  double t = seconds_since(t0);
  report(6, "polylogarithm identities", ok, os.str() + ", " + fmt(t) + " s");
}

void criterion_class_m() {
  long terms = 0, bad = 0, integrands = 0;
  std::string first;
  try {
    for (auto [name, order] : {std::pair<const char*, int>{"bubble", 3}, {"triangle", 1}, {"tadpole", 3}}) {
      Job j = job(name);
      auto d = decompose_job(j, Strategy::PairDiff);
      for (auto& piece : finite_pieces(d, order)) {
        ++integrands;
        std::string why;
        if (!piece.integrand.type_check(&why)) {
          ++bad;
          if (first.empty()) first = std::string(name) + ": " + why;
        }
        for (auto& t : piece.integrand.terms) {
          ++terms;
          auto positive = [&](int idx) { return piece.integrand.pool[idx].constant_term() > 0; };
          bool ok = true;
          for (auto& [idx, e] : t.powers) ok = ok && positive(idx);
          for (auto& [idx, e] : t.poly_logs) ok = ok && positive(idx);
          if (!ok) {
            ++bad;
            if (first.empty()) first = std::string(name) + ": factor without positive constant term";
          }
        }
      }
    }
  } catch (const std::exception& e) {
    report(7, "class-M closure", false, e.what());
    return;
  }
  report(7, "class-M closure", bad == 0 && terms > 0,
         std::to_string(terms) + " terms in " + std::to_string(integrands) + " integrands, " + std::to_string(bad) +
             " violations" + (first.empty() ? "" : ", " + first));
}

void criterion_determinism() {
  try {
    Job j = job("bubble");
    j.order = 3;
    std::string out[2];
    const char* threads[2] = {"1", "4"};
    for (int k = 0; k < 2; ++k) {
      setenv("FEYNSEC_THREADS", threads[k], 1);
      MCConfig mc = acceptance_mc();
      mc.threads = 0;
      out[k] = format_series_json(run_pipeline(j, Strategy::PairDiff, mc));
    }
    unsetenv("FEYNSEC_THREADS");
    report(8, "determinism", out[0] == out[1],
           out[0] == out[1] ? "FEYNSEC_THREADS=1 and 4 give byte-identical output (" + std::to_string(out[0].size()) + " bytes)"
                            : "outputs differ");
  } catch (const std::exception& e) {
    report(8, "determinism", false, e.what());
  }
}

}  // namespace

int main() {
  criterion_bubble();
  criterion_triangle();
  criterion_tadpole();
  criterion_hironaka();
  criterion_hopf();
  criterion_polylog();
  criterion_class_m();
  criterion_determinism();
  std::printf("%d of 8 criteria failed\n", failures);
  return failures;
}
