#include <doctest.h>

#include <feynsec/errors.hpp>
#include <feynsec/graphpoly.hpp>

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <set>

using namespace feynsec;

namespace {

FeynmanGraph make(std::vector<std::pair<int, int>> edges, std::vector<std::pair<int, std::string>> legs = {}) {
  FeynmanGraph g;
  for (auto [a, b] : edges) g.edges.push_back({a, b, 0, 1});
  for (auto& [v, l] : legs) g.externals.push_back({v, l});
  g.validate();
  return g;
}

FeynmanGraph bubble() { return make({{1, 2}, {2, 1}}, {{1, "p1"}, {2, "p2"}}); }
FeynmanGraph triangle() { return make({{1, 2}, {2, 3}, {3, 1}}, {{1, "p1"}, {2, "p2"}, {3, "p3"}}); }

// Kirchhoff: any cofactor of the Laplacian, exact Gaussian elimination.
Rational kirchhoff(const FeynmanGraph& g) {
  std::vector<int> vs = g.vertices;
  int n = static_cast<int>(vs.size());
  auto idx = [&](int v) { return static_cast<int>(std::find(vs.begin(), vs.end(), v) - vs.begin()); };
  std::vector<std::vector<Rational>> L(n, std::vector<Rational>(n, Rational(0)));
  for (auto& e : g.edges) {
    int a = idx(e.from), b = idx(e.to);
    if (a == b) continue;
    L[a][a] += 1;
    L[b][b] += 1;
    L[a][b] -= 1;
    L[b][a] -= 1;
  }
  int m = n - 1;
  Rational det = 1;
  std::vector<std::vector<Rational>> M(m, std::vector<Rational>(m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) M[i][j] = L[i + 1][j + 1];
  for (int c = 0; c < m; ++c) {
    int p = c;
    while (p < m && M[p][c] == 0) ++p;
    if (p == m) return 0;
    if (p != c) {
      std::swap(M[p], M[c]);
      det = -det;
    }
    det *= M[c][c];
    for (int r = c + 1; r < m; ++r) {
      Rational f = M[r][c] / M[c][c];
      for (int j = c; j < m; ++j) M[r][j] -= f * M[c][j];
    }
  }
  return det;
}

// Spanning forests with k components by checking every edge subset.
std::set<EdgeSet> forests_oracle(const FeynmanGraph& g, int k) {
  std::set<EdgeSet> out;
  int E = static_cast<int>(g.edges.size());
  int V = static_cast<int>(g.vertices.size());
  for (int mask = 0; mask < (1 << E); ++mask) {
    if (__builtin_popcount(mask) != V - k) continue;
    std::vector<int> parent(V);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int a) { return parent[a] == a ? a : parent[a] = find(parent[a]); };
    auto idx = [&](int v) { return static_cast<int>(std::find(g.vertices.begin(), g.vertices.end(), v) - g.vertices.begin()); };
    bool acyclic = true;
    EdgeSet es;
    for (int e = 0; e < E; ++e) {
      if (!(mask >> e & 1)) continue;
      es.push_back(e);
      int a = find(idx(g.edges[e].from)), b = find(idx(g.edges[e].to));
      if (a == b) acyclic = false;
      else parent[a] = b;
    }
    if (acyclic) out.insert(es);
  }
  return out;
}

FeynmanGraph random_graph(std::mt19937_64& rng) {
  while (true) {
    int V = 2 + static_cast<int>(rng() % 4);
    int E = V - 1 + 1 + static_cast<int>(rng() % (7 - V));
    FeynmanGraph g;
    for (int e = 0; e < E; ++e) g.edges.push_back({1 + static_cast<int>(rng() % V), 1 + static_cast<int>(rng() % V), 0, 1});
    try {
      g.validate();
      if (static_cast<int>(g.vertices.size()) == V) return g;
    } catch (const DomainError&) {
    }
  }
}

}  // namespace

TEST_CASE("one-loop examples") {
  auto b = bubble();
  CHECK(b.loops() == 1);
  CHECK(one_trees(b).size() == 2);
  CHECK(chords(b, EdgeSet{0}) == EdgeSet{1});
  CHECK(polynomial_U(b) == Polynomial::variable(2, 0) + Polynomial::variable(2, 1));

  FeynmanGraph tad;
  tad.edges.push_back({1, 1, 1, 1});
  tad.validate();
  CHECK(one_trees(tad) == std::vector<EdgeSet>{EdgeSet{}});
  CHECK(polynomial_U(tad) == Polynomial::variable(1, 0));
  Kinematics none;
  CHECK(polynomial_F(tad, none) == Polynomial::variable(1, 0).pow(2));

  auto t = triangle();
  CHECK(one_trees(t).size() == 3);
  CHECK(two_forests(t).size() == 3);
}

TEST_CASE("F polynomials of the acceptance graphs") {
  Kinematics kb({"p1", "p2"});
  kb.set({"p1"}, -1);
  CHECK(polynomial_F(bubble(), kb) == Polynomial::variable(2, 0) * Polynomial::variable(2, 1));

  Kinematics kt({"p1", "p2", "p3"});
  kt.set({"p1"}, 0);
  kt.set({"p2"}, 0);
  kt.set({"p3"}, -1);
  auto F = polynomial_F(triangle(), kt);
  CHECK(F.size() == 1);
  int d = 0;
  CHECK(F.is_homogeneous(&d));
  CHECK(d == 2);
}

TEST_CASE("kinematics canonical keys and errors") {
  Kinematics k({"p1", "p2", "p3"});
  k.set({"p3"}, -1);
  CHECK(k.get({"p1", "p2"}) == -1);  // complement
  CHECK(k.get({}) == 0);
  CHECK(k.get({"p1", "p2", "p3"}) == 0);
  CHECK_THROWS_AS(k.set({"p1", "p2"}, -2), KinematicsError);
  CHECK_THROWS_AS(k.set({"p4"}, 1), KinematicsError);
  CHECK_THROWS_AS(k.get({"p1"}), KinematicsError);
}

TEST_CASE("topology validation") {
  FeynmanGraph tree;
  tree.edges.push_back({1, 2, 0, 1});
  CHECK_THROWS_AS(tree.validate(), TopologyError);
  FeynmanGraph split;
  split.edges = {{1, 2, 0, 1}, {2, 1, 0, 1}, {3, 4, 0, 1}, {4, 3, 0, 1}};
  CHECK_THROWS_AS(split.validate(), TopologyError);
  FeynmanGraph bad_power;
  bad_power.edges = {{1, 2, 0, 0}, {2, 1, 0, 1}};
  CHECK_THROWS_AS(bad_power.validate(), TopologyError);
  FeynmanGraph neg_mass;
  neg_mass.edges = {{1, 2, -1, 1}, {2, 1, 0, 1}};
  CHECK_THROWS_AS(neg_mass.validate(), DomainError);
}

TEST_CASE("spanning trees against Kirchhoff and subset enumeration") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 60; ++trial) {
    auto g = random_graph(rng);
    auto trees = one_trees(g);
    CHECK(Rational(static_cast<long>(trees.size())) == kirchhoff(g));
    std::set<EdgeSet> got(trees.begin(), trees.end());
    CHECK(got == forests_oracle(g, 1));
    auto rec = spanning_forests_recursive(g, 1);
    CHECK(std::set<EdgeSet>(rec.begin(), rec.end()) == got);
    auto f2 = spanning_forests_recursive(g, 2);
    CHECK(std::set<EdgeSet>(f2.begin(), f2.end()) == forests_oracle(g, 2));
    // U(1,...,1) counts spanning trees; degrees are l and l+1
    auto U = polynomial_U(g);
    std::vector<Rational> ones(g.edges.size(), Rational(1));
    CHECK(U.evaluate(ones) == Rational(static_cast<long>(trees.size())));
    int d = 0;
    CHECK(U.is_homogeneous(&d));
    CHECK(d == g.loops());
    for (auto& [e, c] : U.terms()) {
      CHECK(c == 1);
      for (int v : e) CHECK(v <= 1);
    }
  }
}

TEST_CASE("F is homogeneous with nonnegative coefficients in the Euclidean region") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 40; ++trial) {
    auto g = random_graph(rng);
    std::vector<std::string> labels;
    for (std::size_t v = 0; v < g.vertices.size(); ++v) {
      std::string l = "q" + std::to_string(v + 1);
      g.externals.push_back({g.vertices[v], l});
      labels.push_back(l);
    }
    for (auto& e : g.edges) e.mass2 = Rational(static_cast<long>(rng() % 3));
    Kinematics kin(labels);
    // every subset gets a nonpositive value, complements consistent
    int L = static_cast<int>(labels.size());
    for (int mask = 1; mask + 1 < (1 << L); ++mask) {
      std::vector<std::string> sub;
      for (int i = 0; i < L; ++i)
        if (mask >> i & 1) sub.push_back(labels[i]);
      auto key = kin.canonical(sub);
      if (kin.values().count(key)) continue;
      kin.set(sub, -Rational(static_cast<long>(rng() % 4)));
    }
    Polynomial F(0);
    try {
      F = polynomial_F(g, kin);
    } catch (const DomainError&) {
      continue;
    }
    if (F.is_zero()) continue;
    int d = 0;
    CHECK(F.is_homogeneous(&d));
    CHECK(d == g.loops() + 1);
    CHECK(F.nonnegative_coefficients());
  }
}

TEST_CASE("parametric exponents") {
  Kinematics kb({"p1", "p2"});
  kb.set({"p1"}, -1);
  auto p = feynman_parametrize(bubble(), kb, 2);
  CHECK(p.u_exp == EpsExponent{-2, 2});
  CHECK(p.f_exp == EpsExponent{0, -1});
  FeynmanGraph tad;
  tad.edges.push_back({1, 1, 1, 1});
  tad.validate();
  auto q = feynman_parametrize(tad, Kinematics{}, 2);
  CHECK(q.u_exp == EpsExponent{-3, 2});
  CHECK(q.f_exp == EpsExponent{1, -1});
  Kinematics kt({"p1", "p2", "p3"});
  kt.set({"p1"}, 0);
  kt.set({"p2"}, 0);
  kt.set({"p3"}, -1);
  auto r = feynman_parametrize(triangle(), kt, 2);
  CHECK(r.u_exp == EpsExponent{-1, 2});
  CHECK(r.f_exp == EpsExponent{-1, -1});
  // massless external bubble: F vanishes identically
  Kinematics k0({"p1", "p2"});
  k0.set({"p1"}, 0);
  CHECK_THROWS_AS(feynman_parametrize(bubble(), k0, 2), DomainError);
}
