#include <feynsec/errors.hpp>
#include <feynsec/graphpoly.hpp>

#include <algorithm>
#include <array>
#include <functional>
#include <numeric>
#include <set>

namespace feynsec {

namespace {

struct Dsu {
  std::vector<int> p;
  explicit Dsu(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    p[a] = b;
    return true;
  }
};

int vertex_index(const FeynmanGraph& g, int id) {
  auto it = std::lower_bound(g.vertices.begin(), g.vertices.end(), id);
  if (it == g.vertices.end() || *it != id) throw TopologyError("unknown vertex " + std::to_string(id));
  return static_cast<int>(it - g.vertices.begin());
}

// Forest check on a subset: acyclic with exactly the requested component count.
bool is_forest(const FeynmanGraph& g, const EdgeSet& es, int components) {
  int nv = static_cast<int>(g.vertices.size());
  Dsu d(nv);
  for (int e : es) {
    if (!d.unite(vertex_index(g, g.edges[e].from), vertex_index(g, g.edges[e].to))) return false;
  }
  return nv - static_cast<int>(es.size()) == components;
}

}  // namespace

void FeynmanGraph::validate() {
  std::set<int> vs(vertices.begin(), vertices.end());
  for (auto& e : edges) {
    vs.insert(e.from);
    vs.insert(e.to);
    if (e.power < 1) throw TopologyError("propagator power must be >= 1");
    if (e.mass2 < 0) throw KinematicsError("negative squared mass");
  }
  for (auto& x : externals) vs.insert(x.vertex);
  vertices.assign(vs.begin(), vs.end());
  if (edges.empty()) throw TopologyError("graph has no internal edges");
  Dsu d(static_cast<int>(vertices.size()));
  int comps = static_cast<int>(vertices.size());
  for (auto& e : edges)
    if (d.unite(vertex_index(*this, e.from), vertex_index(*this, e.to))) --comps;
  if (comps != 1) throw TopologyError("graph is not connected");
  if (loops() < 1) throw TopologyError("graph has no loops");
}

std::string EpsExponent::to_string() const {
  return std::to_string(a) + (b < 0 ? "" : "+") + std::to_string(b) + "*eps";
}

Kinematics::Kinematics(std::vector<std::string> labels) { set_labels(std::move(labels)); }

void Kinematics::set_labels(std::vector<std::string> labels) {
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  labels_ = std::move(labels);
}

std::vector<std::string> Kinematics::canonical(const std::vector<std::string>& subset) const {
  std::vector<std::string> s = subset;
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  for (auto& x : s)
    if (!std::binary_search(labels_.begin(), labels_.end(), x))
      throw KinematicsError("unknown momentum label '" + x + "'");
  std::vector<std::string> comp;
  std::set_difference(labels_.begin(), labels_.end(), s.begin(), s.end(), std::back_inserter(comp));
  return std::min(s, comp);
}

void Kinematics::set(const std::vector<std::string>& subset, const Rational& value) {
  auto key = canonical(subset);
  if (key.empty()) {
    if (value != 0) throw KinematicsError("invariant of an empty or complete label set must vanish");
    return;
  }
  auto it = values_.find(key);
  if (it != values_.end() && it->second != value)
    throw KinematicsError("conflicting values for an invariant and its complement");
  values_[key] = value;
}

Rational Kinematics::get(const std::vector<std::string>& subset) const {
  auto key = canonical(subset);
  if (key.empty()) return 0;
  auto it = values_.find(key);
  if (it == values_.end()) {
    std::string k;
    for (auto& x : key) k += (k.empty() ? "" : ",") + x;
    throw KinematicsError("missing invariant s(" + k + ")");
  }
  if (it->second > 0) throw KinematicsError("positive invariant outside the Euclidean region");
  return it->second;
}

std::vector<EdgeSet> spanning_forests_brute(const FeynmanGraph& g, int components) {
  int ne = static_cast<int>(g.edges.size());
  int k = static_cast<int>(g.vertices.size()) - components;
  std::vector<EdgeSet> out;
  if (k < 0 || k > ne) return out;
  // all k-subsets in lexicographic order
  std::vector<int> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    if (is_forest(g, idx, components)) out.push_back(idx);
    int i = k - 1;
    while (i >= 0 && idx[i] == ne - k + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

std::vector<EdgeSet> spanning_forests_recursive(const FeynmanGraph& g, int components) {
  // Deletion-contraction on a multigraph given as (u, v, original edge id);
  // vertices are merged through a label array.
  int nv = static_cast<int>(g.vertices.size());
  std::vector<std::array<int, 3>> es;
  for (int e = 0; e < static_cast<int>(g.edges.size()); ++e)
    es.push_back({vertex_index(g, g.edges[e].from), vertex_index(g, g.edges[e].to), e});
  std::vector<EdgeSet> out;
  EdgeSet chosen;
  std::function<void(std::vector<std::array<int, 3>>, int)> rec = [&](std::vector<std::array<int, 3>> cur, int verts) {
    // self-loops can never be forest edges
    cur.erase(std::remove_if(cur.begin(), cur.end(), [](auto& x) { return x[0] == x[1]; }), cur.end());
    int need = verts - components;
    if (need < 0) return;
    if (need == 0) {
      EdgeSet s = chosen;
      std::sort(s.begin(), s.end());
      out.push_back(s);
      return;
    }
    if (static_cast<int>(cur.size()) < need) return;
    auto e = cur.back();
    cur.pop_back();
    // without e
    rec(cur, verts);
    // with e: contract e[1] into e[0]
    std::vector<std::array<int, 3>> con = cur;
    for (auto& x : con) {
      if (x[0] == e[1]) x[0] = e[0];
      if (x[1] == e[1]) x[1] = e[0];
    }
    chosen.push_back(e[2]);
    rec(con, verts - 1);
    chosen.pop_back();
  };
  rec(es, nv);
  std::sort(out.begin(), out.end());
  return out;
}

namespace {
std::vector<EdgeSet> forests(const FeynmanGraph& g, int components) {
  if (g.edges.size() <= 12) return spanning_forests_brute(g, components);
  return spanning_forests_recursive(g, components);
}
}  // namespace

std::vector<EdgeSet> one_trees(const FeynmanGraph& g) { return forests(g, 1); }

std::vector<TwoForest> two_forests(const FeynmanGraph& g) {
  std::vector<TwoForest> out;
  int nv = static_cast<int>(g.vertices.size());
  for (auto& es : forests(g, 2)) {
    Dsu d(nv);
    for (int e : es) d.unite(vertex_index(g, g.edges[e].from), vertex_index(g, g.edges[e].to));
    TwoForest f;
    f.edges = es;
    int root = d.find(0);
    for (int v = 0; v < nv; ++v) (d.find(v) == root ? f.component_one : f.component_two).push_back(g.vertices[v]);
    out.push_back(std::move(f));
  }
  return out;
}

EdgeSet chords(const FeynmanGraph& g, const EdgeSet& forest) {
  EdgeSet c;
  for (int e = 0; e < static_cast<int>(g.edges.size()); ++e)
    if (!std::binary_search(forest.begin(), forest.end(), e)) c.push_back(e);
  return c;
}

namespace {
Polynomial chord_monomial(const FeynmanGraph& g, const EdgeSet& forest) {
  int n = static_cast<int>(g.edges.size());
  Exponents e(n, 0);
  for (int c : chords(g, forest)) e[c] = 1;
  return Polynomial::monomial(e);
}
}  // namespace

Polynomial polynomial_U(const FeynmanGraph& g) {
  Polynomial u(static_cast<int>(g.edges.size()));
  for (auto& t : one_trees(g)) u += chord_monomial(g, t);
  return u;
}

Polynomial polynomial_F0(const FeynmanGraph& g, const Kinematics& kin) {
  Polynomial f(static_cast<int>(g.edges.size()));
  for (auto& tf : two_forests(g)) {
    std::vector<std::string> cut;
    for (auto& x : g.externals)
      if (std::binary_search(tf.component_one.begin(), tf.component_one.end(), x.vertex)) cut.push_back(x.label);
    Rational s = kin.get(cut);
    if (s != 0) f += chord_monomial(g, tf.edges) * Rational(-s);
  }
  return f;
}

Polynomial polynomial_F(const FeynmanGraph& g, const Kinematics& kin) {
  int n = static_cast<int>(g.edges.size());
  Polynomial masses(n);
  for (int j = 0; j < n; ++j)
    if (g.edges[j].mass2 != 0) masses += Polynomial::variable(n, j) * g.edges[j].mass2;
  Polynomial f = polynomial_F0(g, kin);
  if (!masses.is_zero()) f += polynomial_U(g) * masses;
  return f;
}

ParamIntegral feynman_parametrize(const FeynmanGraph& graph, const Kinematics& kin, int m) {
  if (m < 1) throw DomainError("dimension anchor must be >= 1");
  FeynmanGraph g = graph;
  g.validate();
  ParamIntegral p;
  p.n = static_cast<int>(g.edges.size());
  p.loops = g.loops();
  p.dim_anchor = m;
  long nu = 0;
  for (auto& e : g.edges) {
    p.nu.push_back(e.power);
    p.mono.push_back({e.power - 1, 0});
    nu += e.power;
  }
  p.U = polynomial_U(g);
  p.F = polynomial_F(g, kin);
  if (p.F.is_zero()) throw KinematicsError("F vanishes identically (scaleless integral)");
  long l = p.loops;
  // D/2 = m - eps
  p.u_exp = {nu - (l + 1) * m, l + 1};
  p.f_exp = {-nu + l * m, -l};
  return p;
}

}  // namespace feynsec
