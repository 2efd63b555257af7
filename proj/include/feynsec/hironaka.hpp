#pragma once

#include <feynsec/polynomial.hpp>

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <tuple>
#include <vector>

namespace feynsec {

using Point = std::vector<int>;

// Finite subset of N^n. Points are kept sorted and unique.
struct PointSet {
  int n = 0;
  std::vector<Point> points;

  PointSet() = default;
  PointSet(int dim, std::vector<Point> pts);

  bool operator==(const PointSet& o) const { return n == o.n && points == o.points; }
  bool operator<(const PointSet& o) const { return std::tie(n, points) < std::tie(o.n, o.points); }
  std::string to_string() const;
};

// "{(2,0),(0,2)}"; braces optional. Throws ParseError.
PointSet parse_point_set(const std::string& text);

// Coordinates are 0-based in the library; the command line prints 1-based.
struct Move {
  std::vector<int> S;  // sorted
  int i = 0;           // element of S chosen by player B
};

PointSet prune(const PointSet& m);
// prune, then subtract the componentwise minimum
PointSet normalize(const PointSet& m);
bool is_legal(const PointSet& m, const std::vector<int>& S);
PointSet apply_move(const PointSet& m, const Move& mv);
bool is_won(const PointSet& m);

enum class Strategy { PairDiff, FullSpread };
Strategy parse_strategy(const std::string& id);
std::string strategy_name(Strategy s);

std::vector<int> choose_subset(const PointSet& m, Strategy s = Strategy::PairDiff);

// Lexicographic driver used by the pairdiff lookahead:
// (minimal total degree, lattice points of the bounding box not covered by
// any orthant, total degree summed over generators), on the normalised set.
using Driver = std::tuple<long, long, long>;
Driver driver(const PointSet& m);
long uncovered_box_points(const PointSet& m);

// Certified measure: the height of the strategy's game tree from a position,
// maximised over every reply of player B. Positions are normalised before
// lookup. Throws StrategyError on a cycle or when a cap is exceeded.
class MeasureOracle {
 public:
  explicit MeasureOracle(Strategy s = Strategy::PairDiff, std::size_t state_cap = 2000000, int depth_cap = 4000);
  long height(const PointSet& m);
  std::size_t states() const { return memo_.size(); }

 private:
  long height_normalized(const PointSet& g);
  Strategy strategy_;
  std::size_t state_cap_;
  int depth_cap_;
  std::map<PointSet, long> memo_;
};

enum class BPolicy { Random, MaxCoordinate, MinCoordinate };
BPolicy parse_bpolicy(const std::string& id);
std::string bpolicy_name(BPolicy p);

struct TranscriptEntry {
  PointSet before;
  Move move;
  long measure_before = 0;
  long measure_after = 0;
};

struct PlayResult {
  bool won = false;
  long moves = 0;
  std::vector<TranscriptEntry> transcript;
};

struct PlayOptions {
  Strategy strategy = Strategy::PairDiff;
  BPolicy policy = BPolicy::Random;
  std::uint64_t seed = 1;
  long move_cap = 1000000;
  bool prune_each_move = true;
  bool check_measure = true;  // assert strict decrease of the certified measure
  MeasureOracle* oracle = nullptr;  // optional shared cache
};

PlayResult play(const PointSet& start, const PlayOptions& opt);

// Same game with a fixed choice of S each move (used for hand replays).
PlayResult play_fixed(const PointSet& start, const std::vector<int>& S, BPolicy policy, std::uint64_t seed,
                      long move_cap = 1000);

PointSet newton_points(const Polynomial& p);
// Precondition: p is not of the form monomial * (c + P'), c != 0.
std::vector<int> strategy_for_polynomial(const Polynomial& p, Strategy s = Strategy::PairDiff);

}  // namespace feynsec
