#include <doctest.h>

#include <feynsec/errors.hpp>
#include <feynsec/kernels.hpp>
#include <feynsec/mcint.hpp>

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <random>

using namespace feynsec;

namespace {

Polynomial x(int n, int i) { return Polynomial::variable(n, i); }

FiniteIntegrand constant_one(int dim) {
  FiniteIntegrand f;
  f.dim = dim;
  f.terms.push_back(FiniteTerm{});
  return f;
}

MCConfig config(long samples, int threads = 1) {
  MCConfig c;
  c.samples = samples;
  c.seed = 99;
  c.threads = threads;
  return c;
}

}  // namespace

TEST_CASE("constant integrand is exact") {
  auto est = integrate(constant_one(3), config(1000), 5);
  CHECK(est.mean == 1.0);
  CHECK(est.err == 0.0);
  CHECK(est.n == 1000);
}

TEST_CASE("simple integrals") {
  FiniteIntegrand lin;
  lin.dim = 1;
  FiniteTerm t;
  t.numerator = lin.intern(x(1, 0));
  lin.terms.push_back(t);
  auto e = integrate(lin, config(100000), 1);
  CHECK(std::abs(e.mean - 0.5) < 5 * e.err);
  CHECK(e.err == doctest::Approx(std::sqrt(1.0 / 12 / 100000)).epsilon(0.05));

  FiniteIntegrand lg;
  lg.dim = 1;
  FiniteTerm l;
  l.var_logs = {{0, 1}};
  lg.terms.push_back(l);
  auto g = integrate(lg, config(100000), 2);
  CHECK(std::abs(g.mean + 1) < 5 * g.err);

  // 1/(1+x1+x2) over the square
  FiniteIntegrand inv;
  inv.dim = 2;
  FiniteTerm q;
  q.powers = {{inv.intern(Polynomial::constant(2, 1) + x(2, 0) + x(2, 1)), -1}};
  inv.terms.push_back(q);
  auto r = integrate(inv, config(200000), 3);
  double exact = 3 * std::log(3.0) - 4 * std::log(2.0);
  CHECK(std::abs(r.mean - exact) < 5 * r.err);
}

TEST_CASE("stream seeds") {
  CHECK(stream_seed(1, 2) == stream_seed(1, 2));
  CHECK(stream_seed(1, 2) != stream_seed(1, 3));
  CHECK(stream_seed(1, 2) != stream_seed(2, 2));
  FiniteIntegrand lin;
  lin.dim = 1;
  FiniteTerm t;
  t.numerator = lin.intern(x(1, 0));
  lin.terms.push_back(t);
  auto a = integrate(lin, config(5000), 7);
  auto b = integrate(lin, config(5000), 7);
  auto c = integrate(lin, config(5000), 8);
  CHECK(a.mean == b.mean);
  CHECK(a.err == b.err);
  CHECK(a.mean != c.mean);
}

TEST_CASE("bad input") {
  CHECK_THROWS_AS(integrate(constant_one(1), config(1), 0), DomainError);
  FiniteIntegrand bad;
  bad.dim = 1;
  FiniteTerm t;
  t.powers = {{bad.intern(Polynomial(1)), -1}};
  bad.terms.push_back(t);
  CHECK_THROWS_AS(integrate(bad, config(100000), 0), DomainError);
}

TEST_CASE("assembly") {
  std::vector<Contribution> parts;
  parts.push_back({-1, true, Rational(1, 3), {}});
  parts.push_back({-1, true, Rational(2, 3), {}});
  parts.push_back({0, false, 0, {0.25, 0.03, 10}});
  parts.push_back({0, false, 0, {0.5, 0.04, 10}});
  parts.push_back({0, true, Rational(1, 4), {}});
  auto s = assemble(parts);
  CHECK(s[-1].value == 1.0);
  CHECK(s[-1].err == 0.0);
  CHECK(s[0].value == doctest::Approx(1.0));
  CHECK(s[0].err == doctest::Approx(0.05));
}

TEST_CASE("kernels agree bit for bit") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    int n = 1 + static_cast<int>(rng() % 4);
    Polynomial p(n);
    for (int k = 0; k < 1 + static_cast<int>(rng() % 6); ++k) {
      Exponents e(n);
      for (auto& v : e) v = static_cast<int>(rng() % 4);
      Rational c(static_cast<long>(rng() % 9) - 4, 1 + static_cast<long>(rng() % 5));
      c.canonicalize();
      p.add_term(e, c);
    }
    if (p.is_zero()) continue;
    auto cp = compile(p);
    int count = 1 + static_cast<int>(rng() % 37);
    std::vector<double> xs(n * count);
    for (auto& v : xs) v = ((rng() >> 11) + 0.5) * 0x1.0p-53;
    std::vector<double> a(count), b(count);
    poly_batch_scalar(cp, xs.data(), count, count, a.data());
    for (int k = 0; k < count; ++k) {
      std::vector<double> pt(n);
      for (int v = 0; v < n; ++v) pt[v] = xs[v * count + k];
      CHECK(a[k] == p.evaluate(pt.data()));
    }
#ifdef FEYNSEC_BUILD_AVX2
    if (avx2_available()) {
      poly_batch_avx2(cp, xs.data(), count, count, b.data());
      CHECK(std::memcmp(a.data(), b.data(), sizeof(double) * count) == 0);
    }
#endif
  }
  CHECK(std::strlen(poly_batch_kernel_name()) > 0);
}

TEST_CASE("thread count does not change results") {
  FiniteIntegrand lin;
  lin.dim = 2;
  FiniteTerm t;
  t.numerator = lin.intern(x(2, 0) * x(2, 1));
  t.var_logs = {{1, 1}};
  lin.terms.push_back(t);
  std::vector<const FiniteIntegrand*> fs;
  std::vector<std::uint64_t> ids;
  for (int k = 0; k < 7; ++k) {
    fs.push_back(&lin);
    ids.push_back(100 + k);
  }
  auto one = integrate_many(fs, ids, config(20000, 1));
  auto four = integrate_many(fs, ids, config(20000, 4));
  REQUIRE(one.size() == four.size());
  for (std::size_t k = 0; k < one.size(); ++k) {
    CHECK(one[k].mean == four[k].mean);
    CHECK(one[k].err == four[k].err);
    auto single = integrate(lin, config(20000), ids[k]);
    CHECK(single.mean == one[k].mean);
  }
}

TEST_CASE("worker count") {
  CHECK(worker_count(config(10, 3)) == 3);
  setenv("FEYNSEC_THREADS", "2", 1);
  CHECK(worker_count(config(10, 0)) == 2);
  unsetenv("FEYNSEC_THREADS");
  CHECK(worker_count(config(10, 0)) >= 1);
}
