#include <feynsec/errors.hpp>
#include <feynsec/words.hpp>

#include <algorithm>

namespace feynsec {

Alphabet::Alphabet(const std::string& letters) {
  for (char c : letters) intern(std::string(1, c));
}

Letter Alphabet::intern(const std::string& name) {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = ids_.find(name);
  if (it != ids_.end()) return it->second;
  Letter id = static_cast<Letter>(names_.size());
  names_.push_back(name);
  ids_.emplace(name, id);
  return id;
}

std::optional<Letter> Alphabet::find(const std::string& name) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = ids_.find(name);
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

std::string Alphabet::name(Letter l) const {
  std::lock_guard<std::mutex> lock(mu_);
  if (l < 0 || l >= static_cast<Letter>(names_.size())) throw InternalError("unknown letter id");
  return names_[l];
}

int Alphabet::size() const {
  std::lock_guard<std::mutex> lock(mu_);
  return static_cast<int>(names_.size());
}

Letter Alphabet::pair(Letter a, Letter b) {
  if (!pairing_) throw DomainError("alphabet has no letter pairing");
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = pair_cache_.find({a, b});
    if (it != pair_cache_.end()) return it->second;
  }
  auto r = pairing_(name(a), name(b));
  Letter id = r ? intern(*r) : -1;
  std::lock_guard<std::mutex> lock(mu_);
  pair_cache_[{a, b}] = id;
  return id;
}

Word Alphabet::parse(const std::string& s) {
  Word w;
  if (s == "e") return w;
  for (std::size_t k = 0; k < s.size();) {
    if (s[k] == '(') {
      int depth = 0;
      std::size_t j = k;
      for (; j < s.size(); ++j) {
        if (s[j] == '(') ++depth;
        if (s[j] == ')' && --depth == 0) break;
      }
      if (j == s.size()) throw ParseError("unbalanced parenthesis in word \"" + s + "\"");
      w.push_back(intern(s.substr(k, j - k + 1)));
      k = j + 1;
    } else if (s[k] == ')' || s[k] == ',' || s[k] == ' ') {
      throw ParseError("unexpected '" + std::string(1, s[k]) + "' in word \"" + s + "\"");
    } else {
      w.push_back(intern(std::string(1, s[k])));
      ++k;
    }
  }
  return w;
}

std::string Alphabet::format(const Word& w) const {
  if (w.empty()) return "e";
  std::string s;
  for (Letter l : w) s += name(l);
  return s;
}

namespace {

std::string coefficient_prefix(const Rational& c) {
  if (c == 1) return "";
  if (c.get_den() == 1) return c.get_num().get_str();
  return "(" + c.get_str() + ")";
}

template <class Key, class Fmt>
std::string format_terms(std::vector<std::pair<Key, Rational>> terms, Fmt fmt) {
  if (terms.empty()) return "0";
  std::string out;
  bool first = true;
  for (auto& [k, c] : terms) {
    Rational a = abs(c);
    if (first) out += c < 0 ? "-" : "";
    else out += c < 0 ? " - " : " + ";
    out += coefficient_prefix(a) + fmt(k);
    first = false;
  }
  return out;
}

}  // namespace

bool Alphabet::letter_less(Letter a, Letter b) const {
  std::string x = name(a), y = name(b);
  bool cx = !x.empty() && x[0] == '(', cy = !y.empty() && y[0] == '(';
  if (cx != cy) return cy;
  return x < y;
}

bool Alphabet::word_less(const Word& a, const Word& b) const {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                      [&](Letter x, Letter y) { return letter_less(x, y); });
}

std::string Alphabet::format(const LinComb& x) const {
  std::vector<std::pair<Word, Rational>> t(x.begin(), x.end());
  std::stable_sort(t.begin(), t.end(), [&](auto& p, auto& q) { return word_less(p.first, q.first); });
  return format_terms(t, [&](const Word& w) { return format(w); });
}

std::string Alphabet::format(const TensorComb& x) const {
  std::vector<std::pair<std::pair<Word, Word>, Rational>> t(x.begin(), x.end());
  // by the length of the left factor, as the coproduct sum runs
  std::stable_sort(t.begin(), t.end(), [&](auto& p, auto& q) {
    if (p.first.first.size() != q.first.first.size()) return p.first.first.size() < q.first.first.size();
    if (word_less(p.first.first, q.first.first)) return true;
    if (word_less(q.first.first, p.first.first)) return false;
    return word_less(p.first.second, q.first.second);
  });
  return format_terms(t, [&](const std::pair<Word, Word>& w) { return format(w.first) + "⊗" + format(w.second); });
}

namespace {

std::vector<std::string> atoms(const std::string& name) {
  if (name.size() < 2 || name.front() != '(') return {name};
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (std::size_t k = 1; k + 1 < name.size(); ++k) {
    char c = name[k];
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

Alphabet::Pairing free_commutative_pairing() {
  return [](const std::string& a, const std::string& b) -> std::optional<std::string> {
    auto x = atoms(a), y = atoms(b);
    x.insert(x.end(), y.begin(), y.end());
    std::sort(x.begin(), x.end());
    std::string s = "(";
    for (std::size_t k = 0; k < x.size(); ++k) s += (k ? "," : "") + x[k];
    return s + ")";
  };
}

Alphabet::Pairing zero_pairing() {
  return [](const std::string&, const std::string&) -> std::optional<std::string> { return std::nullopt; };
}

LinComb word(const Word& w, const Rational& c) {
  LinComb x;
  if (c != 0) x[w] = c;
  return x;
}

void add_to(LinComb& x, const Word& w, const Rational& c) {
  if (c == 0) return;
  auto it = x.find(w);
  if (it == x.end()) {
    x.emplace(w, c);
    return;
  }
  it->second += c;
  if (it->second == 0) x.erase(it);
}

LinComb add(const LinComb& x, const LinComb& y) {
  LinComb r = x;
  for (auto& [w, c] : y) add_to(r, w, c);
  return r;
}

LinComb scale(const LinComb& x, const Rational& c) {
  LinComb r;
  if (c == 0) return r;
  for (auto& [w, d] : x) r.emplace(w, d * c);
  return r;
}

LinComb shuffle(const Word& u, const Word& v) {
  LinComb r;
  const std::size_t n = u.size() + v.size();
  // choose the positions of u's letters
  std::vector<bool> mask(n, false);
  std::fill(mask.begin(), mask.begin() + static_cast<long>(u.size()), true);
  std::sort(mask.begin(), mask.end());
  do {
    Word w(n);
    std::size_t i = 0, j = 0;
    for (std::size_t k = 0; k < n; ++k) w[k] = mask[k] ? u[i++] : v[j++];
    add_to(r, w, 1);
  } while (std::next_permutation(mask.begin(), mask.end()));
  return r;
}

namespace {

LinComb prepend(Letter l, const LinComb& x) {
  LinComb r;
  for (auto& [w, c] : x) {
    Word v;
    v.reserve(w.size() + 1);
    v.push_back(l);
    v.insert(v.end(), w.begin(), w.end());
    r.emplace(std::move(v), c);
  }
  return r;
}

LinComb merge_recursive(const Word& u, std::size_t i, const Word& v, std::size_t j, Alphabet* a,
                        std::map<std::pair<std::size_t, std::size_t>, LinComb>& memo) {
  if (i == u.size()) return word(Word(v.begin() + static_cast<long>(j), v.end()));
  if (j == v.size()) return word(Word(u.begin() + static_cast<long>(i), u.end()));
  auto key = std::make_pair(i, j);
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  LinComb r = prepend(u[i], merge_recursive(u, i + 1, v, j, a, memo));
  for (auto& [w, c] : prepend(v[j], merge_recursive(u, i, v, j + 1, a, memo))) add_to(r, w, c);
  if (a) {
    Letter p = a->pair(u[i], v[j]);
    if (p >= 0)
      for (auto& [w, c] : prepend(p, merge_recursive(u, i + 1, v, j + 1, a, memo))) add_to(r, w, c);
  }
  memo.emplace(key, r);
  return r;
}

LinComb merge_recursive(const Word& u, const Word& v, Alphabet* a) {
  std::map<std::pair<std::size_t, std::size_t>, LinComb> memo;
  return merge_recursive(u, 0, v, 0, a, memo);
}

}  // namespace

LinComb shuffle_recursive(const Word& u, const Word& v) { return merge_recursive(u, v, nullptr); }

LinComb quasi_shuffle(const Word& u, const Word& v, Alphabet& a) {
  if (!a.has_pairing()) throw DomainError("quasi-shuffle needs an alphabet with a letter pairing");
  return merge_recursive(u, v, &a);
}

LinComb multiply(const Word& u, const Word& v, Product p, Alphabet& a) {
  return p == Product::Shuffle ? shuffle(u, v) : quasi_shuffle(u, v, a);
}

LinComb multiply(const LinComb& x, const LinComb& y, Product p, Alphabet& a) {
  LinComb r;
  for (auto& [u, c] : x)
    for (auto& [v, d] : y)
      for (auto& [w, e] : multiply(u, v, p, a)) add_to(r, w, c * d * e);
  return r;
}

TensorComb coproduct(const Word& w) {
  TensorComb t;
  for (std::size_t j = 0; j <= w.size(); ++j)
    t[{Word(w.begin() + static_cast<long>(j), w.end()), Word(w.begin(), w.begin() + static_cast<long>(j))}] += 1;
  return t;
}

namespace {

template <class K>
void add_tensor(std::map<K, Rational>& t, const K& k, const Rational& c) {
  if (c == 0) return;
  auto it = t.find(k);
  if (it == t.end()) {
    t.emplace(k, c);
    return;
  }
  it->second += c;
  if (it->second == 0) t.erase(it);
}

}  // namespace

TensorComb coproduct(const LinComb& x) {
  TensorComb t;
  for (auto& [w, c] : x)
    for (auto& [k, d] : coproduct(w)) add_tensor(t, k, c * d);
  return t;
}

Rational counit(const LinComb& x) {
  auto it = x.find(Word{});
  return it == x.end() ? Rational(0) : it->second;
}

TensorComb multiply(const TensorComb& x, const TensorComb& y, Product p, Alphabet& a) {
  TensorComb t;
  for (auto& [k1, c1] : x)
    for (auto& [k2, c2] : y) {
      LinComb left = multiply(k1.first, k2.first, p, a);
      LinComb right = multiply(k1.second, k2.second, p, a);
      for (auto& [l, cl] : left)
        for (auto& [r, cr] : right) add_tensor(t, std::pair<Word, Word>{l, r}, c1 * c2 * cl * cr);
    }
  return t;
}

LinComb antipode_left_convolution(const TensorComb& t, Product p, Alphabet& a) {
  LinComb r;
  for (auto& [k, c] : t) r = add(r, scale(multiply(antipode(k.first, p, a), word(k.second), p, a), c));
  return r;
}

LinComb antipode_right_convolution(const TensorComb& t, Product p, Alphabet& a) {
  LinComb r;
  for (auto& [k, c] : t) r = add(r, scale(multiply(word(k.first), antipode(k.second, p, a), p, a), c));
  return r;
}

Tensor3 coproduct_left(const Word& w) {
  Tensor3 t;
  for (auto& [k, c] : coproduct(w))
    for (auto& [k2, d] : coproduct(k.first)) add_tensor(t, std::array<Word, 3>{k2.first, k2.second, k.second}, c * d);
  return t;
}

Tensor3 coproduct_right(const Word& w) {
  Tensor3 t;
  for (auto& [k, c] : coproduct(w))
    for (auto& [k2, d] : coproduct(k.second)) add_tensor(t, std::array<Word, 3>{k.first, k2.first, k2.second}, c * d);
  return t;
}

LinComb antipode_shuffle(const Word& w) {
  Word r(w.rbegin(), w.rend());
  return word(r, w.size() % 2 ? Rational(-1) : Rational(1));
}

namespace {

LinComb antipode_memo(const Word& w, Product p, Alphabet& a, std::map<Word, LinComb>& memo) {
  auto it = memo.find(w);
  if (it != memo.end()) return it->second;
  LinComb r;
  if (w.empty()) {
    r = word(w);
  } else {
    r = word(w, -1);
    for (std::size_t j = 1; j < w.size(); ++j) {
      Word tail(w.begin() + static_cast<long>(j), w.end());
      Word head(w.begin(), w.begin() + static_cast<long>(j));
      r = add(r, scale(multiply(antipode_memo(tail, p, a, memo), word(head), p, a), -1));
    }
  }
  memo.emplace(w, r);
  return r;
}

}  // namespace

LinComb antipode(const Word& w, Product p, Alphabet& a) {
  std::map<Word, LinComb> memo;
  return antipode_memo(w, p, a, memo);
}

LinComb antipode_quasi(const Word& w, Alphabet& a) {
  if (!a.has_pairing()) throw DomainError("quasi-shuffle antipode needs a letter pairing");
  return antipode(w, Product::QuasiShuffle, a);
}

namespace {

// lexicographic with a proper prefix counting as smaller
bool lex_less(const Word& a, const Word& b, const std::vector<int>& rank) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                      [&](Letter x, Letter y) { return rank[x] < rank[y]; });
}

std::vector<int> rank_table(const std::vector<Letter>& order) {
  int mx = 0;
  for (Letter l : order) mx = std::max(mx, l + 1);
  std::vector<int> rank(mx, -1);
  for (std::size_t k = 0; k < order.size(); ++k) rank[order[k]] = static_cast<int>(k);
  return rank;
}

}  // namespace

bool is_lyndon(const Word& w, const std::vector<Letter>& order) {
  if (w.empty()) return false;
  auto rank = rank_table(order);
  for (Letter l : w)
    if (l < 0 || l >= static_cast<Letter>(rank.size()) || rank[l] < 0) throw DomainError("letter outside the ordered alphabet");
  for (std::size_t k = 1; k < w.size(); ++k)
    if (!lex_less(w, Word(w.begin() + static_cast<long>(k), w.end()), rank)) return false;
  return true;
}

std::vector<Word> lyndon_words(const std::vector<Letter>& order, int max_length) {
  if (max_length < 1) throw DomainError("maximal length must be at least 1");
  auto rank = rank_table(order);
  std::vector<Word> out;
  std::vector<Word> level{Word{}};
  for (int len = 1; len <= max_length; ++len) {
    std::vector<Word> next;
    for (auto& w : level)
      for (Letter l : order) {
        Word v = w;
        v.push_back(l);
        next.push_back(v);
      }
    for (auto& w : next)
      if (is_lyndon(w, order)) out.push_back(w);
    level = std::move(next);
  }
  std::stable_sort(out.begin(), out.end(), [&](const Word& a, const Word& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return lex_less(a, b, rank);
  });
  return out;
}

int rank(const std::vector<LinComb>& xs) {
  std::map<Word, int> col;
  for (auto& x : xs)
    for (auto& [w, c] : x) col.emplace(w, 0);
  int k = 0;
  for (auto& [w, i] : col) i = k++;
  std::vector<std::vector<Rational>> m;
  for (auto& x : xs) {
    std::vector<Rational> row(col.size());
    for (auto& [w, c] : x) row[col[w]] = c;
    m.push_back(std::move(row));
  }
  int r = 0;
  const int ncol = static_cast<int>(col.size());
  for (int c = 0; c < ncol && r < static_cast<int>(m.size()); ++c) {
    int piv = -1;
    for (int i = r; i < static_cast<int>(m.size()); ++i)
      if (m[i][c] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(m[r], m[piv]);
    for (int i = r + 1; i < static_cast<int>(m.size()); ++i) {
      if (m[i][c] == 0) continue;
      Rational f = m[i][c] / m[r][c];
      for (int j = c; j < ncol; ++j) m[i][j] -= f * m[r][j];
    }
    ++r;
  }
  return r;
}

}  // namespace feynsec
