#pragma once

#include <feynsec/polynomial.hpp>
#include <feynsec/rational.hpp>

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace feynsec {

struct Edge {
  int from = 0;
  int to = 0;
  Rational mass2 = 0;
  int power = 1;
};

struct ExternalLeg {
  int vertex = 0;
  std::string label;
};

struct FeynmanGraph {
  std::vector<int> vertices;  // sorted ids; filled from edges and legs when empty
  std::vector<Edge> edges;
  std::vector<ExternalLeg> externals;

  int loops() const { return static_cast<int>(edges.size()) - static_cast<int>(vertices.size()) + 1; }
  // fills vertices, checks connectivity and edge data; throws TopologyError
  void validate();
};

// Invariants s_T keyed by canonical sorted label subsets.
class Kinematics {
 public:
  explicit Kinematics(std::vector<std::string> labels = {});

  void set_labels(std::vector<std::string> labels);
  const std::vector<std::string>& labels() const { return labels_; }
  // key: subset of labels; stored under its canonical representative
  void set(const std::vector<std::string>& subset, const Rational& value);
  // s_T for a subset of labels; empty and full subsets give 0; throws KinematicsError
  Rational get(const std::vector<std::string>& subset) const;
  std::vector<std::string> canonical(const std::vector<std::string>& subset) const;

  const std::map<std::vector<std::string>, Rational>& values() const { return values_; }

 private:
  std::vector<std::string> labels_;
  std::map<std::vector<std::string>, Rational> values_;
};

using EdgeSet = std::vector<int>;  // sorted edge indices

struct TwoForest {
  EdgeSet edges;                   // forest edges
  std::vector<int> component_one;  // vertices of the component holding the smallest vertex id
  std::vector<int> component_two;
};

std::vector<EdgeSet> one_trees(const FeynmanGraph& g);
std::vector<TwoForest> two_forests(const FeynmanGraph& g);
EdgeSet chords(const FeynmanGraph& g, const EdgeSet& forest);

// Enumeration paths, exposed for cross-testing. one_trees/two_forests pick
// brute force up to 12 edges and deletion-contraction above.
std::vector<EdgeSet> spanning_forests_brute(const FeynmanGraph& g, int components);
std::vector<EdgeSet> spanning_forests_recursive(const FeynmanGraph& g, int components);

Polynomial polynomial_U(const FeynmanGraph& g);
Polynomial polynomial_F(const FeynmanGraph& g, const Kinematics& kin);
Polynomial polynomial_F0(const FeynmanGraph& g, const Kinematics& kin);

struct EpsExponent {
  long a = 0;  // integer part
  long b = 0;  // coefficient of eps

  bool operator==(const EpsExponent& o) const { return a == o.a && b == o.b; }
  std::string to_string() const;
};

struct ParamIntegral {
  int n = 0;
  int loops = 0;
  int dim_anchor = 2;  // D = 2m - 2 eps
  std::vector<int> nu;
  Polynomial U;
  Polynomial F;
  EpsExponent u_exp;  // nu - (l+1) D/2
  EpsExponent f_exp;  // -(nu - l D/2)
  std::vector<EpsExponent> mono;  // nu_j - 1
};

ParamIntegral feynman_parametrize(const FeynmanGraph& g, const Kinematics& kin, int m);

}  // namespace feynsec
