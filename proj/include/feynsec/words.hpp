#pragma once

#include <feynsec/rational.hpp>

#include <array>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace feynsec {

using Letter = int;
using Word = std::vector<Letter>;
using LinComb = std::map<Word, Rational>;
using TensorComb = std::map<std::pair<Word, Word>, Rational>;
using Tensor3 = std::map<std::array<Word, 3>, Rational>;

// Interned letters with an optional commutative, associative pairing given on
// names. A pairing returning nullopt means the merged letter is zero.
class Alphabet {
 public:
  using Pairing = std::function<std::optional<std::string>(const std::string&, const std::string&)>;

  Alphabet() = default;
  explicit Alphabet(const std::string& letters);  // one letter per character
  Alphabet(const Alphabet&) = delete;
  Alphabet& operator=(const Alphabet&) = delete;

  Letter intern(const std::string& name);
  std::optional<Letter> find(const std::string& name) const;
  std::string name(Letter l) const;
  int size() const;

  void set_pairing(Pairing p) { pairing_ = std::move(p); }
  bool has_pairing() const { return static_cast<bool>(pairing_); }
  // -1 for the zero letter
  Letter pair(Letter a, Letter b);

  // Each character is a letter, except that "(...)" is one letter; "e" or "" is the empty word.
  Word parse(const std::string& s);
  std::string format(const Word& w) const;
  std::string format(const LinComb& x) const;
  std::string format(const TensorComb& x) const;
  // Display order: atomic letters by name, composite letters after them.
  bool letter_less(Letter a, Letter b) const;
  bool word_less(const Word& a, const Word& b) const;

 private:
  std::vector<std::string> names_;
  std::map<std::string, Letter> ids_;
  Pairing pairing_;
  std::map<std::pair<Letter, Letter>, Letter> pair_cache_;
  mutable std::mutex mu_;
};

// "(a,b)" style pairing: letters are multisets of atoms.
Alphabet::Pairing free_commutative_pairing();
// Every merged letter is zero, so the quasi-shuffle becomes the shuffle.
Alphabet::Pairing zero_pairing();

enum class Product { Shuffle, QuasiShuffle };

LinComb word(const Word& w, const Rational& c = 1);
void add_to(LinComb& x, const Word& w, const Rational& c);
LinComb add(const LinComb& x, const LinComb& y);
LinComb scale(const LinComb& x, const Rational& c);

// Sum over order-preserving interleavings, enumerated directly.
LinComb shuffle(const Word& u, const Word& v);
LinComb shuffle_recursive(const Word& u, const Word& v);
LinComb quasi_shuffle(const Word& u, const Word& v, Alphabet& a);

LinComb multiply(const Word& u, const Word& v, Product p, Alphabet& a);
LinComb multiply(const LinComb& x, const LinComb& y, Product p, Alphabet& a);

TensorComb coproduct(const Word& w);
TensorComb coproduct(const LinComb& x);
Rational counit(const LinComb& x);
// Componentwise product (a (x) b)(c (x) d) = ac (x) bd.
TensorComb multiply(const TensorComb& x, const TensorComb& y, Product p, Alphabet& a);
// m o (S (x) id) and m o (id (x) S) applied to a tensor.
LinComb antipode_left_convolution(const TensorComb& t, Product p, Alphabet& a);
LinComb antipode_right_convolution(const TensorComb& t, Product p, Alphabet& a);

Tensor3 coproduct_left(const Word& w);   // (Delta (x) id) o Delta
Tensor3 coproduct_right(const Word& w);  // (id (x) Delta) o Delta

// (-1)^k times the reversed word
LinComb antipode_shuffle(const Word& w);
// Recursive antipode for either product.
LinComb antipode(const Word& w, Product p, Alphabet& a);
LinComb antipode_quasi(const Word& w, Alphabet& a);

// Lyndon words over the given ordered letters, by length then lexicographically.
std::vector<Word> lyndon_words(const std::vector<Letter>& order, int max_length);
bool is_lyndon(const Word& w, const std::vector<Letter>& order);

// Rank of a set of linear combinations, exact Gaussian elimination.
int rank(const std::vector<LinComb>& xs);

}  // namespace feynsec
