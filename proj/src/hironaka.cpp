#include <feynsec/errors.hpp>
#include <feynsec/hironaka.hpp>

#include <algorithm>
#include <cctype>
#include <limits>
#include <random>
#include <set>
#include <sstream>

namespace feynsec {

PointSet::PointSet(int dim, std::vector<Point> pts) : n(dim), points(std::move(pts)) {
  if (points.empty()) throw DomainError("point set must be nonempty");
  for (auto& p : points) {
    if (static_cast<int>(p.size()) != n) throw DomainError("point dimension mismatch");
    for (int v : p)
      if (v < 0) throw DomainError("point coordinates must be nonnegative");
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
}

std::string PointSet::to_string() const {
  std::ostringstream os;
  os << "{";
  for (std::size_t k = 0; k < points.size(); ++k) {
    os << (k ? ",(" : "(");
    for (int j = 0; j < n; ++j) os << (j ? "," : "") << points[k][j];
    os << ")";
  }
  os << "}";
  return os.str();
}

PointSet parse_point_set(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (!s.empty() && s.front() == '{') {
    if (s.back() != '}') throw ParseError("point set \"" + text + "\": missing '}'");
    s = s.substr(1, s.size() - 2);
  }
  std::vector<Point> pts;
  std::size_t k = 0;
  while (k < s.size()) {
    if (s[k] != '(') throw ParseError("point set \"" + text + "\": expected '(' at offset " + std::to_string(k));
    std::size_t close = s.find(')', k);
    if (close == std::string::npos) throw ParseError("point set \"" + text + "\": missing ')'");
    Point p;
    std::stringstream ss(s.substr(k + 1, close - k - 1));
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos)
        throw ParseError("point set \"" + text + "\": bad coordinate '" + item + "'");
      p.push_back(std::stoi(item));
    }
    if (p.empty()) throw ParseError("point set \"" + text + "\": empty point");
    if (!pts.empty() && p.size() != pts.front().size()) throw ParseError("point set \"" + text + "\": mixed dimensions");
    pts.push_back(p);
    k = close + 1;
    if (k < s.size()) {
      if (s[k] != ',') throw ParseError("point set \"" + text + "\": expected ',' between points");
      ++k;
    }
  }
  if (pts.empty()) throw ParseError("point set \"" + text + "\" is empty");
  return PointSet(static_cast<int>(pts.front().size()), pts);
}

namespace {

bool leq(const Point& a, const Point& b) {
  for (std::size_t k = 0; k < a.size(); ++k)
    if (a[k] > b[k]) return false;
  return true;
}

int degree(const Point& p) {
  int s = 0;
  for (int v : p) s += v;
  return s;
}

std::vector<int> mask_to_set(std::uint32_t mask, int n) {
  std::vector<int> s;
  for (int j = 0; j < n; ++j)
    if (mask >> j & 1u) s.push_back(j);
  return s;
}

bool legal_mask(const PointSet& m, std::uint32_t mask) {
  for (auto& p : m.points) {
    int s = 0;
    for (int j = 0; j < m.n; ++j)
      if (mask >> j & 1u) s += p[j];
    if (s < 1) return false;
  }
  return true;
}

// Move plus normalisation, the form every strategy computation works in.
PointSet child(const PointSet& g, std::uint32_t mask, int i) {
  std::vector<Point> pts = g.points;
  for (auto& p : pts) {
    int s = 0;
    for (int j = 0; j < g.n; ++j)
      if (mask >> j & 1u) s += p[j];
    p[i] = s - 1;
  }
  return normalize(PointSet(g.n, std::move(pts)));
}

// Lattice points x in the box [0,E] lying in some orthant p + N^d, using
// only the first d coordinates.
long covered(const std::vector<const Point*>& pts, const std::vector<int>& ext, int d) {
  if (pts.empty()) return 0;
  if (d == 0) return 1;
  int k = d - 1;
  std::vector<int> cuts;
  for (auto* p : pts) cuts.push_back((*p)[k]);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  long total = 0;
  for (std::size_t c = 0; c < cuts.size(); ++c) {
    int lo = cuts[c];
    int hi = c + 1 < cuts.size() ? cuts[c + 1] : ext[k] + 1;
    std::vector<const Point*> active;
    for (auto* p : pts)
      if ((*p)[k] <= lo) active.push_back(p);
    total += covered(active, ext, k) * (hi - lo);
  }
  return total;
}

const Driver kWonDriver{-1, -1, -1};

Driver driver_or_won(const PointSet& g) { return g.points.size() == 1 ? kWonDriver : driver(g); }

// One ply of lookahead: the best worst-case driver player A can force.
Driver lookahead1(const PointSet& g) {
  if (g.points.size() == 1) return kWonDriver;
  Driver best{std::numeric_limits<long>::max(), 0, 0};
  std::uint32_t full = (1u << g.n) - 1;
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    if (__builtin_popcount(mask) < 2 || !legal_mask(g, mask)) continue;
    Driver worst = kWonDriver;
    for (int i = 0; i < g.n && worst < best; ++i)
      if (mask >> i & 1u) worst = std::max(worst, driver_or_won(child(g, mask, i)));
    best = std::min(best, worst);
  }
  return best;
}

std::vector<int> choose_pairdiff(const PointSet& g);

// Minimal degree one: the unit generators e_k (k in K) pin every other
// generator to q_k = 0, so the rest is a game on the remaining coordinates
// that is won as soon as one of those points reaches the origin.
std::vector<int> choose_unit_reduction(const PointSet& g) {
  std::vector<int> K, R;
  std::vector<Point> rest;
  for (auto& p : g.points) {
    if (degree(p) == 1) K.push_back(static_cast<int>(std::find(p.begin(), p.end(), 1) - p.begin()));
  }
  std::sort(K.begin(), K.end());
  for (int j = 0; j < g.n; ++j)
    if (!std::binary_search(K.begin(), K.end(), j)) R.push_back(j);
  for (auto& p : g.points) {
    if (degree(p) == 1) continue;
    Point q;
    for (int r : R) q.push_back(p[r]);
    rest.push_back(q);
  }
  std::vector<int> S = K;
  if (rest.empty()) return S;
  PointSet Q(static_cast<int>(R.size()), rest);
  PointSet Qh = normalize(Q);
  if (Qh.points.size() == 1) {
    const Point& q = Q.points.front();
    int t = static_cast<int>(std::max_element(q.begin(), q.end()) - q.begin());
    S.push_back(R[t]);
  } else {
    for (int t : choose_pairdiff(Qh)) S.push_back(R[t]);
  }
  std::sort(S.begin(), S.end());
  return S;
}

std::vector<int> choose_lookahead(const PointSet& g) {
  std::uint32_t full = (1u << g.n) - 1;
  std::uint32_t best_mask = 0;
  std::tuple<Driver, int> best_key;
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    int size = __builtin_popcount(mask);
    if (size < 2 || !legal_mask(g, mask)) continue;
    Driver worst = kWonDriver;
    for (int i = 0; i < g.n; ++i)
      if (mask >> i & 1u) {
        worst = std::max(worst, lookahead1(child(g, mask, i)));
        if (best_mask && std::make_tuple(worst, size) >= best_key) break;
      }
    auto key = std::make_tuple(worst, size);
    if (!best_mask || key < best_key) {
      best_mask = mask;
      best_key = key;
    }
  }
  if (!best_mask) throw InternalError("no legal subset on a position that is not won");
  return mask_to_set(best_mask, g.n);
}

std::vector<int> choose_pairdiff(const PointSet& g) {
  thread_local std::map<PointSet, std::vector<int>> cache;
  auto it = cache.find(g);
  if (it != cache.end()) return it->second;
  long omega = std::numeric_limits<long>::max();
  for (auto& p : g.points) omega = std::min<long>(omega, degree(p));
  std::vector<int> S = omega == 1 ? choose_unit_reduction(g) : choose_lookahead(g);
  if (cache.size() > 200000) cache.clear();
  cache.emplace(g, S);
  return S;
}

std::vector<int> choose_fullspread(const PointSet& g) {
  std::vector<int> S;
  for (int j = 0; j < g.n; ++j) {
    int lo = g.points.front()[j], hi = lo;
    for (auto& p : g.points) {
      lo = std::min(lo, p[j]);
      hi = std::max(hi, p[j]);
    }
    if (hi > lo) S.push_back(j);
  }
  return S;
}

std::uint32_t set_to_mask(const std::vector<int>& S) {
  std::uint32_t m = 0;
  for (int j : S) m |= 1u << j;
  return m;
}

}  // namespace

PointSet prune(const PointSet& m) {
  std::vector<Point> keep;
  for (auto& p : m.points) {
    bool dominated = false;
    for (auto& o : m.points)
      if (o != p && leq(o, p)) {
        dominated = true;
        break;
      }
    if (!dominated) keep.push_back(p);
  }
  return PointSet(m.n, std::move(keep));
}

PointSet normalize(const PointSet& m) {
  PointSet g = prune(m);
  for (int j = 0; j < g.n; ++j) {
    int lo = g.points.front()[j];
    for (auto& p : g.points) lo = std::min(lo, p[j]);
    if (lo)
      for (auto& p : g.points) p[j] -= lo;
  }
  std::sort(g.points.begin(), g.points.end());
  return g;
}

bool is_legal(const PointSet& m, const std::vector<int>& S) {
  if (S.empty()) return false;
  for (int j : S)
    if (j < 0 || j >= m.n) return false;
  return legal_mask(m, set_to_mask(S));
}

PointSet apply_move(const PointSet& m, const Move& mv) {
  if (!std::binary_search(mv.S.begin(), mv.S.end(), mv.i)) throw IllegalMoveError("i is not an element of S");
  if (!is_legal(m, mv.S)) throw IllegalMoveError("some point has sum over S below c = 1");
  std::vector<Point> pts = m.points;
  for (auto& p : pts) {
    int s = 0;
    for (int j : mv.S) s += p[j];
    p[mv.i] = s - 1;
  }
  return PointSet(m.n, std::move(pts));
}

bool is_won(const PointSet& m) { return prune(m).points.size() == 1; }

Strategy parse_strategy(const std::string& id) {
  if (id == "pairdiff") return Strategy::PairDiff;
  if (id == "fullspread") return Strategy::FullSpread;
  throw StrategyError("unknown strategy '" + id + "'");
}

std::string strategy_name(Strategy s) { return s == Strategy::PairDiff ? "pairdiff" : "fullspread"; }

long uncovered_box_points(const PointSet& m) {
  std::vector<int> ext(m.n, 0);
  for (auto& p : m.points)
    for (int j = 0; j < m.n; ++j) ext[j] = std::max(ext[j], p[j]);
  long volume = 1;
  for (int e : ext) volume *= e + 1;
  std::vector<const Point*> pts;
  for (auto& p : m.points) pts.push_back(&p);
  return volume - covered(pts, ext, m.n);
}

Driver driver(const PointSet& m) {
  PointSet g = normalize(m);
  long omega = std::numeric_limits<long>::max(), total = 0;
  for (auto& p : g.points) {
    omega = std::min<long>(omega, degree(p));
    total += degree(p);
  }
  return {omega, uncovered_box_points(g), total};
}

std::vector<int> choose_subset(const PointSet& m, Strategy s) {
  PointSet g = normalize(m);
  if (g.points.size() == 1) throw DomainError("choose_subset called on a won position");
  if (g.n > 24) throw DomainError("too many coordinates for subset enumeration");
  return s == Strategy::PairDiff ? choose_pairdiff(g) : choose_fullspread(g);
}

MeasureOracle::MeasureOracle(Strategy s, std::size_t state_cap, int depth_cap)
    : strategy_(s), state_cap_(state_cap), depth_cap_(depth_cap) {}

long MeasureOracle::height(const PointSet& m) { return height_normalized(normalize(m)); }

long MeasureOracle::height_normalized(const PointSet& root) {
  // Iterative post-order walk; a state met again while still open is a cycle.
  if (root.points.size() == 1) return 0;
  if (auto it = memo_.find(root); it != memo_.end()) return it->second;
  struct Frame {
    PointSet g;
    std::vector<PointSet> kids;
    std::size_t next = 0;
    long best = 0;
  };
  std::set<PointSet> open;
  std::vector<Frame> stack;
  auto push = [&](const PointSet& g) {
    Frame f{g, {}, 0, 0};
    std::vector<int> S = choose_subset(g, strategy_);
    std::uint32_t mask = set_to_mask(S);
    for (int i : S) f.kids.push_back(child(g, mask, i));
    open.insert(g);
    stack.push_back(std::move(f));
    if (static_cast<int>(stack.size()) > depth_cap_)
      throw StrategyError("strategy tree deeper than " + std::to_string(depth_cap_) + " from " + root.to_string());
  };
  push(root);
  while (!stack.empty()) {
    Frame& f = stack.back();
    if (f.next == f.kids.size()) {
      long h = f.best;
      memo_[f.g] = h;
      open.erase(f.g);
      stack.pop_back();
      if (memo_.size() > state_cap_) throw StrategyError("strategy tree exceeds the state cap");
      if (!stack.empty()) stack.back().best = std::max(stack.back().best, 1 + h);
      continue;
    }
    const PointSet& k = f.kids[f.next++];
    if (k.points.size() == 1) {
      f.best = std::max(f.best, 1L);
      continue;
    }
    if (auto it = memo_.find(k); it != memo_.end()) {
      f.best = std::max(f.best, 1 + it->second);
      continue;
    }
    if (open.count(k)) throw StrategyError("strategy cycles through " + k.to_string());
    PointSet copy = k;
    push(copy);
  }
  return memo_.at(root);
}

BPolicy parse_bpolicy(const std::string& id) {
  if (id == "random") return BPolicy::Random;
  if (id == "max") return BPolicy::MaxCoordinate;
  if (id == "min") return BPolicy::MinCoordinate;
  throw ParseError("unknown B policy '" + id + "' (random, max, min)");
}

std::string bpolicy_name(BPolicy p) {
  switch (p) {
    case BPolicy::Random: return "random";
    case BPolicy::MaxCoordinate: return "max";
    default: return "min";
  }
}

namespace {

int pick_b(const PointSet& m, const std::vector<int>& S, BPolicy policy, std::mt19937_64& rng) {
  if (policy == BPolicy::Random) return S[rng() % S.size()];
  PointSet g = prune(m);
  int best = S.front();
  int best_val = -1;
  for (int j : S) {
    int hi = 0;
    for (auto& p : g.points) hi = std::max(hi, p[j]);
    bool better = policy == BPolicy::MaxCoordinate ? hi > best_val : (best_val < 0 || hi < best_val);
    if (better) {
      best = j;
      best_val = hi;
    }
  }
  return best;
}

}  // namespace

PlayResult play(const PointSet& start, const PlayOptions& opt) {
  PlayResult r;
  MeasureOracle local(opt.strategy);
  MeasureOracle& oracle = opt.oracle ? *opt.oracle : local;
  std::mt19937_64 rng(opt.seed);
  PointSet m = opt.prune_each_move ? prune(start) : start;
  long h = opt.check_measure && !is_won(m) ? oracle.height(m) : 0;
  while (!is_won(m)) {
    if (r.moves >= opt.move_cap) throw StrategyError("move cap exceeded from " + start.to_string());
    TranscriptEntry t;
    t.before = m;
    t.move.S = choose_subset(m, opt.strategy);
    t.move.i = pick_b(m, t.move.S, opt.policy, rng);
    m = apply_move(m, t.move);
    if (opt.prune_each_move) m = prune(m);
    if (opt.check_measure) {
      t.measure_before = h;
      h = is_won(m) ? 0 : oracle.height(m);
      t.measure_after = h;
      if (t.measure_after >= t.measure_before)
        throw StrategyError("measure did not decrease at move " + std::to_string(r.moves + 1) + " from " +
                            t.before.to_string());
    }
    r.transcript.push_back(std::move(t));
    ++r.moves;
  }
  r.won = true;
  return r;
}

PlayResult play_fixed(const PointSet& start, const std::vector<int>& S, BPolicy policy, std::uint64_t seed,
                      long move_cap) {
  PlayResult r;
  std::mt19937_64 rng(seed);
  PointSet m = prune(start);
  while (!is_won(m)) {
    if (r.moves >= move_cap) throw StrategyError("move cap exceeded");
    TranscriptEntry t;
    t.before = m;
    t.move.S = S;
    t.move.i = pick_b(m, S, policy, rng);
    m = prune(apply_move(m, t.move));
    r.transcript.push_back(std::move(t));
    ++r.moves;
  }
  r.won = true;
  return r;
}

PointSet newton_points(const Polynomial& p) {
  if (p.is_zero()) throw DomainError("zero polynomial has no Newton polyhedron");
  return PointSet(p.nvars(), p.exponents());
}

std::vector<int> strategy_for_polynomial(const Polynomial& p, Strategy s) {
  PointSet g = normalize(newton_points(p));
  if (g.points.size() == 1) throw DomainError("polynomial is already monomialised");
  return choose_subset(g, s);
}

}  // namespace feynsec
