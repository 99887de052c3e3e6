#ifndef PET_GROUP_HPP
#define PET_GROUP_HPP

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "pet/errors.hpp"

namespace pet {

// ---------------------------------------------------------------------------
// Generic group calculus.
//
// A group element type G provides, via ADL:
//   G mul(const G&, const G&);   G inverse(const G&);
//   G identity_like(const G&);   bool is_identity(const G&);
// Exact types additionally support operator==.
// ---------------------------------------------------------------------------

/// h g h^{-1}.
template <class G>
G conjugate(const G& h, const G& g) {
  return mul(mul(h, g), inverse(h));
}

/// r^{-1} s^{-1} r s.
template <class G>
G commutator(const G& r, const G& s) {
  return mul(mul(mul(inverse(r), inverse(s)), r), s);
}

/// g^k by binary exponentiation; k may be negative.
template <class G>
G group_pow(const G& g, std::int64_t k) {
  G base = k >= 0 ? g : inverse(g);
  std::uint64_t e = k >= 0 ? static_cast<std::uint64_t>(k)
                           : static_cast<std::uint64_t>(-(k + 1)) + 1;
  G acc = identity_like(g);
  while (e != 0) {
    if (e & 1) acc = mul(acc, base);
    e >>= 1;
    if (e != 0) base = mul(base, base);
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Lamplighter group Z wr Z.
//
// An element is a pair (f, s): a finite-support lamp map f : Z -> Z and a
// shift s.  Multiplication is (f,s)·(g,t) = (f + g(· - s), s + t).  Lamps are
// kept as a sorted association list with no zero entries, so equality is
// structural on the canonical form.
// ---------------------------------------------------------------------------

class LamplighterElement {
 public:
  using Lamp = std::pair<std::int64_t, std::int64_t>;  // (position, value)

  LamplighterElement() = default;  // identity

  LamplighterElement(std::vector<Lamp> lamps, std::int64_t shift)
      : lamps_(std::move(lamps)), shift_(shift) {
    canonicalize();
  }

  /// Lamp generator: unit lamp at position k, shift 0.
  static LamplighterElement alpha(std::int64_t k) {
    return LamplighterElement({{k, 1}}, 0);
  }

  /// Shift generator: empty lamps, shift 1.
  static LamplighterElement beta() { return LamplighterElement({}, 1); }

  const std::vector<Lamp>& lamps() const { return lamps_; }
  std::int64_t shift() const { return shift_; }

  std::int64_t lamp_at(std::int64_t pos) const {
    auto it = std::lower_bound(lamps_.begin(), lamps_.end(), pos,
                               [](const Lamp& l, std::int64_t p) { return l.first < p; });
    return (it != lamps_.end() && it->first == pos) ? it->second : 0;
  }

  bool is_identity() const { return lamps_.empty() && shift_ == 0; }

  friend bool operator==(const LamplighterElement&, const LamplighterElement&) = default;

  friend LamplighterElement mul(const LamplighterElement& a, const LamplighterElement& b) {
    // Merge a.lamps_ with b.lamps_ translated by a.shift_; both lists are
    // sorted, so this is a linear merge.
    std::vector<Lamp> out;
    out.reserve(a.lamps_.size() + b.lamps_.size());
    auto ia = a.lamps_.begin(), ea = a.lamps_.end();
    auto ib = b.lamps_.begin(), eb = b.lamps_.end();
    while (ia != ea || ib != eb) {
      if (ib == eb || (ia != ea && ia->first < ib->first + a.shift_)) {
        out.push_back(*ia++);
      } else if (ia == ea || ib->first + a.shift_ < ia->first) {
        out.emplace_back(ib->first + a.shift_, ib->second);
        ++ib;
      } else {
        std::int64_t v = ia->second + ib->second;
        if (v != 0) out.emplace_back(ia->first, v);
        ++ia;
        ++ib;
      }
    }
    LamplighterElement r;
    r.lamps_ = std::move(out);
    r.shift_ = a.shift_ + b.shift_;
    return r;
  }

  friend LamplighterElement inverse(const LamplighterElement& a) {
    LamplighterElement r;
    r.lamps_.reserve(a.lamps_.size());
    for (const Lamp& l : a.lamps_) r.emplace_lamp(l.first - a.shift_, -l.second);
    r.shift_ = -a.shift_;
    return r;  // position map p -> p - s preserves order
  }

  friend LamplighterElement identity_like(const LamplighterElement&) {
    return LamplighterElement();
  }

  friend bool is_identity(const LamplighterElement& a) { return a.is_identity(); }

  friend LamplighterElement operator*(const LamplighterElement& a,
                                      const LamplighterElement& b) {
    return mul(a, b);
  }

  friend std::ostream& operator<<(std::ostream& os, const LamplighterElement& g);

 private:
  void emplace_lamp(std::int64_t pos, std::int64_t val) { lamps_.emplace_back(pos, val); }

  void canonicalize() {
    std::sort(lamps_.begin(), lamps_.end(),
              [](const Lamp& x, const Lamp& y) { return x.first < y.first; });
    std::vector<Lamp> out;
    out.reserve(lamps_.size());
    for (const Lamp& l : lamps_) {
      if (!out.empty() && out.back().first == l.first) {
        out.back().second += l.second;
        if (out.back().second == 0) out.pop_back();
      } else if (l.second != 0) {
        out.push_back(l);
      }
    }
    lamps_ = std::move(out);
  }

  std::vector<Lamp> lamps_;
  std::int64_t shift_ = 0;
};

inline std::ostream& operator<<(std::ostream& os, const LamplighterElement& g) {
  os << "{";
  for (std::size_t i = 0; i < g.lamps_.size(); ++i) {
    if (i) os << ", ";
    os << g.lamps_[i].first << ":" << g.lamps_[i].second;
  }
  return os << "}, shift " << g.shift_;
}

/// FNV-1a over the canonical form; stable across platforms.
inline std::uint64_t stable_hash(const LamplighterElement& g) {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      h ^= (v >> (8 * i)) & 0xff;
      h *= 1099511628211ull;
    }
  };
  mix(static_cast<std::uint64_t>(g.shift()));
  for (const auto& [p, v] : g.lamps()) {
    mix(static_cast<std::uint64_t>(p));
    mix(static_cast<std::uint64_t>(v));
  }
  return h;
}

// ---------------------------------------------------------------------------
// Finite wreath quotient (Z/m) wr (Z/n).
//
// Lamp values live in Z/m at n positions, the shift in Z/n.  The reduction
// map from Z wr Z (values mod m, positions and shift mod n) is a group
// homomorphism; this quotient is what makes a finite-dimensional unitary
// representation possible.
// ---------------------------------------------------------------------------

class FiniteWreathElement {
 public:
  FiniteWreathElement(int m, int n)
      : m_(check_param(m, n, m)), n_(n), lamps_(static_cast<std::size_t>(n), 0), shift_(0) {}

  FiniteWreathElement(int m, int n, std::vector<int> lamps, int shift)
      : m_(check_param(m, n, m)), n_(n), lamps_(std::move(lamps)), shift_(mod(shift, n)) {
    if (lamps_.size() != static_cast<std::size_t>(n_))
      throw ParameterError("finite wreath: lamp array must have n entries");
    for (int& v : lamps_) v = mod(v, m_);
  }

  int modulus() const { return m_; }
  int positions() const { return n_; }
  const std::vector<int>& lamps() const { return lamps_; }
  int shift() const { return shift_; }

  /// Group order m^n * n, or nullopt if it exceeds `cap`.
  static std::int64_t order(int m, int n, std::int64_t cap) {
    std::int64_t o = n;
    for (int i = 0; i < n; ++i) {
      o *= m;
      if (o > cap) return -1;
    }
    return o;
  }

  bool is_identity() const {
    return shift_ == 0 && std::all_of(lamps_.begin(), lamps_.end(), [](int v) { return v == 0; });
  }

  friend bool operator==(const FiniteWreathElement&, const FiniteWreathElement&) = default;

  friend FiniteWreathElement mul(const FiniteWreathElement& a, const FiniteWreathElement& b) {
    if (a.m_ != b.m_ || a.n_ != b.n_)
      throw ParameterError("finite wreath: mismatched (m, n) parameters");
    FiniteWreathElement r(a.m_, a.n_);
    for (int p = 0; p < a.n_; ++p)
      r.lamps_[p] = mod(a.lamps_[p] + b.lamps_[mod(p - a.shift_, a.n_)], a.m_);
    r.shift_ = mod(a.shift_ + b.shift_, a.n_);
    return r;
  }

  friend FiniteWreathElement inverse(const FiniteWreathElement& a) {
    FiniteWreathElement r(a.m_, a.n_);
    for (int q = 0; q < a.n_; ++q) r.lamps_[q] = mod(-a.lamps_[mod(q + a.shift_, a.n_)], a.m_);
    r.shift_ = mod(-a.shift_, a.n_);
    return r;
  }

  friend FiniteWreathElement identity_like(const FiniteWreathElement& a) {
    return FiniteWreathElement(a.m_, a.n_);
  }

  friend bool is_identity(const FiniteWreathElement& a) { return a.is_identity(); }

  friend FiniteWreathElement operator*(const FiniteWreathElement& a,
                                       const FiniteWreathElement& b) {
    return mul(a, b);
  }

  /// Index in the mixed-radix element enumeration used by the regular
  /// representation: shift * m^n + sum lamps[k] * m^k.
  std::int64_t enumeration_index() const {
    std::int64_t idx = 0;
    for (int k = n_ - 1; k >= 0; --k) idx = idx * m_ + lamps_[k];
    std::int64_t mn = 1;
    for (int k = 0; k < n_; ++k) mn *= m_;
    return static_cast<std::int64_t>(shift_) * mn + idx;
  }

  static FiniteWreathElement from_enumeration_index(int m, int n, std::int64_t idx) {
    std::int64_t mn = 1;
    for (int k = 0; k < n; ++k) mn *= m;
    FiniteWreathElement r(m, n);
    r.shift_ = static_cast<int>(idx / mn);
    std::int64_t rest = idx % mn;
    for (int k = 0; k < n; ++k) {
      r.lamps_[k] = static_cast<int>(rest % m);
      rest /= m;
    }
    return r;
  }

 private:
  static int check_param(int m, int n, int ret) {
    if (m < 2 || n < 2) throw ParameterError("finite wreath requires m >= 2 and n >= 2");
    return ret;
  }
  static int mod(int x, int q) { return ((x % q) + q) % q; }

  int m_, n_;
  std::vector<int> lamps_;
  int shift_;
};

/// Homomorphic reduction Z wr Z -> (Z/m) wr (Z/n): lamp at position p
/// contributes (value mod m) to slot p mod n; the shift reduces mod n.
inline FiniteWreathElement reduce_mod(const LamplighterElement& g, int m, int n) {
  FiniteWreathElement r(m, n);
  std::vector<int> lamps(static_cast<std::size_t>(n), 0);
  auto imod = [](std::int64_t x, std::int64_t q) { return static_cast<int>(((x % q) + q) % q); };
  for (const auto& [p, v] : g.lamps()) {
    int slot = imod(p, n);
    lamps[slot] = imod(lamps[slot] + v, m);
  }
  return FiniteWreathElement(m, n, std::move(lamps), imod(g.shift(), n));
}

// ---------------------------------------------------------------------------
// Z^d as a multiplicatively written abelian group (lattice points).
// ---------------------------------------------------------------------------

struct IntPoint {
  std::vector<std::int64_t> c;

  IntPoint() = default;
  explicit IntPoint(std::vector<std::int64_t> coords) : c(std::move(coords)) {}
  static IntPoint zero(int d) { return IntPoint(std::vector<std::int64_t>(d, 0)); }
  static IntPoint scalar(std::int64_t v) { return IntPoint({v}); }

  int dim() const { return static_cast<int>(c.size()); }

  friend bool operator==(const IntPoint&, const IntPoint&) = default;
  friend auto operator<=>(const IntPoint& a, const IntPoint& b) {
    return std::lexicographical_compare_three_way(a.c.begin(), a.c.end(), b.c.begin(),
                                                  b.c.end());
  }

  friend IntPoint operator+(const IntPoint& a, const IntPoint& b) {
    if (a.c.size() != b.c.size()) throw ParameterError("lattice points of different dimension");
    IntPoint r = a;
    for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] += b.c[i];
    return r;
  }

  friend IntPoint mul(const IntPoint& a, const IntPoint& b) { return a + b; }
  friend IntPoint inverse(const IntPoint& a) {
    IntPoint r = a;
    for (auto& v : r.c) v = -v;
    return r;
  }
  friend IntPoint identity_like(const IntPoint& a) { return zero(a.dim()); }
  friend bool is_identity(const IntPoint& a) {
    return std::all_of(a.c.begin(), a.c.end(), [](std::int64_t v) { return v == 0; });
  }

  friend std::ostream& operator<<(std::ostream& os, const IntPoint& p) {
    os << "(";
    for (std::size_t i = 0; i < p.c.size(); ++i) os << (i ? "," : "") << p.c[i];
    return os << ")";
  }
};

// ---------------------------------------------------------------------------
// Words over the two-letter alphabet {A, B}.
// ---------------------------------------------------------------------------

class Word {
 public:
  struct Letter {
    char symbol;  // 'A' or 'B'
    int exponent;  // +1 or -1
    friend bool operator==(const Letter&, const Letter&) = default;
  };

  Word() = default;
  explicit Word(std::vector<Letter> letters) : letters_(std::move(letters)) {
    for (const Letter& l : letters_) validate(l);
  }

  /// Parses a whitespace-separated word, e.g. "A B A' B'" or "A B^-1".
  /// Lowercase letters also denote inverses.  Unknown tokens are format
  /// errors.
  static Word parse(const std::string& text);

  const std::vector<Letter>& letters() const { return letters_; }
  bool empty() const { return letters_.empty(); }

  Word concat(const Word& other) const {
    Word w = *this;
    w.letters_.insert(w.letters_.end(), other.letters_.begin(), other.letters_.end());
    return w;
  }

  /// Cancels adjacent inverse pairs until none remain (idempotent).
  Word freely_reduced() const {
    std::vector<Letter> stack;
    for (const Letter& l : letters_) {
      if (!stack.empty() && stack.back().symbol == l.symbol &&
          stack.back().exponent == -l.exponent) {
        stack.pop_back();
      } else {
        stack.push_back(l);
      }
    }
    return Word(std::move(stack));
  }

  /// Sum of the exponents of all B letters.
  std::int64_t naive_degree() const {
    std::int64_t d = 0;
    for (const Letter& l : letters_)
      if (l.symbol == 'B') d += l.exponent;
    return d;
  }

  /// Substitutes group elements for A and B and multiplies out.
  template <class G>
  G evaluate(const G& a, const G& b) const {
    G acc = identity_like(a);
    for (const Letter& l : letters_) {
      const G& base = l.symbol == 'A' ? a : b;
      acc = mul(acc, l.exponent == 1 ? base : inverse(base));
    }
    return acc;
  }

  friend bool operator==(const Word&, const Word&) = default;

 private:
  static void validate(const Letter& l) {
    if ((l.symbol != 'A' && l.symbol != 'B') || (l.exponent != 1 && l.exponent != -1))
      throw FormatError("word letters must be A or B with exponent +1 or -1");
  }

  std::vector<Letter> letters_;
};

inline Word Word::parse(const std::string& text) {
  std::vector<Letter> letters;
  std::size_t i = 0;
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    char c = text[i];
    char sym;
    int exp = 1;
    if (c == 'A' || c == 'B') {
      sym = c;
    } else if (c == 'a' || c == 'b') {
      sym = static_cast<char>(c - 'a' + 'A');
      exp = -1;
    } else {
      throw FormatError(std::string("unknown letter '") + c + "' in word");
    }
    ++i;
    if (i < text.size() && text[i] == '\'') {
      exp = -exp;
      ++i;
    } else if (i + 2 < text.size() && text.compare(i, 3, "^-1") == 0) {
      exp = -exp;
      i += 3;
    }
    letters.push_back({sym, exp});
  }
  return Word(std::move(letters));
}

inline std::int64_t naive_degree(const Word& w) { return w.naive_degree(); }

}  // namespace pet

#endif  // PET_GROUP_HPP
