#pragma once

// Words over the free monoid X*: letters, parsing, structure queries,
// transformations, substitutions, factor closure.

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mvw {

struct Error : std::runtime_error {
  std::string code;
  Error(std::string c, const std::string& what)
      : std::runtime_error(c + ": " + what), code(std::move(c)) {}
};

// A letter is a single-char head, an optional numeric subscript and an
// optional prime, e.g. x, z1, t3, z1p (the rendering of z1').
// Order: head, then subscript (none first), then prime.
struct Letter {
  char head = 'x';
  std::int16_t sub = -1;
  bool prime = false;

  auto operator<=>(const Letter&) const = default;

  std::string str() const {
    std::string s(1, head);
    if (sub >= 0) s += std::to_string(sub);
    if (prime) s += 'p';
    return s;
  }
};

// Parses a single letter token: head [digits] [p].
inline Letter parse_letter(std::string_view tok) {
  if (tok.empty() || tok[0] < 'a' || tok[0] > 'z')
    throw Error("PARSE_ERROR", "bad letter token '" + std::string(tok) + "'");
  Letter x;
  x.head = tok[0];
  std::size_t i = 1;
  if (i < tok.size() && std::isdigit(static_cast<unsigned char>(tok[i]))) {
    int v = 0;
    while (i < tok.size() && std::isdigit(static_cast<unsigned char>(tok[i]))) {
      v = v * 10 + (tok[i] - '0');
      if (v > 30000) throw Error("PARSE_ERROR", "subscript too large in '" + std::string(tok) + "'");
      ++i;
    }
    x.sub = static_cast<std::int16_t>(v);
  }
  if (i < tok.size() && tok[i] == 'p') {
    x.prime = true;
    ++i;
  }
  if (i != tok.size())
    throw Error("PARSE_ERROR", "trailing junk in letter '" + std::string(tok) + "'");
  return x;
}

inline Letter lt(std::string_view tok) { return parse_letter(tok); }

class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Letter> ls) : ls_(std::move(ls)) {}
  Word(std::initializer_list<Letter> ls) : ls_(ls) {}

  // DSL: whitespace-separated letters with optional ^k exponent; "1" is the
  // empty word. Example: "x y x^2 t1 z1".
  static Word parse(std::string_view s) {
    Word w;
    std::size_t i = 0;
    while (i < s.size()) {
      while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
      if (i >= s.size()) break;
      std::size_t j = i;
      while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
      std::string_view tok = s.substr(i, j - i);
      i = j;
      if (tok == "1") continue;
      int exp = 1;
      if (auto caret = tok.find('^'); caret != std::string_view::npos) {
        std::string_view e = tok.substr(caret + 1);
        if (e.empty()) throw Error("PARSE_ERROR", "missing exponent in '" + std::string(tok) + "'");
        exp = 0;
        for (char c : e) {
          if (!std::isdigit(static_cast<unsigned char>(c)))
            throw Error("PARSE_ERROR", "bad exponent in '" + std::string(tok) + "'");
          exp = exp * 10 + (c - '0');
          if (exp > 1000) throw Error("PARSE_ERROR", "exponent too large in '" + std::string(tok) + "'");
        }
        tok = tok.substr(0, caret);
      }
      Letter x = parse_letter(tok);
      for (int k = 0; k < exp; ++k) w.ls_.push_back(x);
    }
    return w;
  }

  std::string str() const {
    if (ls_.empty()) return "1";
    std::string s;
    for (std::size_t i = 0; i < ls_.size(); ++i) {
      if (i) s += ' ';
      s += ls_[i].str();
    }
    return s;
  }

  // Compact rendering without spaces, only safe when all letters are bare
  // heads (used for paper-style display like "xyzxtysx").
  std::string tight() const {
    if (ls_.empty()) return "1";
    std::string s;
    for (const Letter& x : ls_) s += x.str();
    return s;
  }

  // Space-separated with runs collapsed to exponents ("x t1 x t2 x^2");
  // parses back to the same word.
  std::string compact() const {
    if (ls_.empty()) return "1";
    std::string s;
    for (std::size_t i = 0; i < ls_.size();) {
      std::size_t j = i;
      while (j < ls_.size() && ls_[j] == ls_[i]) ++j;
      if (i) s += ' ';
      s += ls_[i].str();
      if (j - i > 1) s += "^" + std::to_string(j - i);
      i = j;
    }
    return s;
  }

  std::size_t size() const { return ls_.size(); }
  bool empty() const { return ls_.empty(); }
  const Letter& operator[](std::size_t i) const { return ls_[i]; }
  const std::vector<Letter>& letters() const { return ls_; }
  auto begin() const { return ls_.begin(); }
  auto end() const { return ls_.end(); }

  void push_back(Letter x) { ls_.push_back(x); }
  void pop_back() { ls_.pop_back(); }
  void append(const Word& w) { ls_.insert(ls_.end(), w.ls_.begin(), w.ls_.end()); }

  auto operator<=>(const Word&) const = default;

  friend Word operator*(const Word& a, const Word& b) {
    Word r = a;
    r.append(b);
    return r;
  }

 private:
  std::vector<Letter> ls_;
};

inline Word W(std::string_view dsl) { return Word::parse(dsl); }

inline Word pow(const Word& w, int k) {
  Word r;
  for (int i = 0; i < k; ++i) r.append(w);
  return r;
}

// Shortlex: by length, then lexicographically. The prover and all
// canonical-choice tie-breaks use this order.
inline bool shortlex_less(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

// ---- structure queries ----------------------------------------------------

struct WordStats {
  std::vector<Letter> content;   // sorted, duplicate-free
  std::vector<Letter> simple;    // occ == 1
  std::vector<Letter> multiple;  // occ >= 2
  std::map<Letter, int> occ;
};

inline WordStats word_stats(const Word& w) {
  WordStats st;
  for (const Letter& x : w) ++st.occ[x];
  for (const auto& [x, n] : st.occ) {
    st.content.push_back(x);
    (n == 1 ? st.simple : st.multiple).push_back(x);
  }
  return st;
}

inline int occ_count(const Word& w, Letter x) {
  return static_cast<int>(std::count(w.begin(), w.end(), x));
}

inline std::set<Letter> content(const Word& w) {
  return std::set<Letter>(w.begin(), w.end());
}

inline constexpr int kLastOcc = -1;

// 0-based position of the i-th occurrence of x (1-based i, or kLastOcc).
inline std::size_t occurrence_position(const Word& w, Letter x, int i) {
  if (i == kLastOcc) {
    for (std::size_t p = w.size(); p-- > 0;)
      if (w[p] == x) return p;
    throw Error("OUT_OF_RANGE", "letter " + x.str() + " does not occur");
  }
  if (i < 1) throw Error("OUT_OF_RANGE", "occurrence index must be >= 1");
  int seen = 0;
  for (std::size_t p = 0; p < w.size(); ++p)
    if (w[p] == x && ++seen == i) return p;
  throw Error("OUT_OF_RANGE", "fewer than " + std::to_string(i) + " occurrences of " + x.str());
}

// ---- transformations -------------------------------------------------------

inline Word restrict_to(const Word& w, const std::set<Letter>& xs) {
  Word r;
  for (const Letter& a : w)
    if (xs.count(a)) r.push_back(a);
  return r;
}

inline Word delete_letters(const Word& w, const std::set<Letter>& xs) {
  Word r;
  for (const Letter& a : w)
    if (!xs.count(a)) r.push_back(a);
  return r;
}

// First occurrence of every letter, in order of appearance.
inline Word ini(const Word& w) {
  Word r;
  std::set<Letter> seen;
  for (const Letter& a : w)
    if (seen.insert(a).second) r.push_back(a);
  return r;
}

// First and second occurrences of every letter.
inline Word ini2(const Word& w) {
  Word r;
  std::map<Letter, int> seen;
  for (const Letter& a : w)
    if (++seen[a] <= 2) r.push_back(a);
  return r;
}

inline Word reversed(const Word& w) {
  std::vector<Letter> ls(w.begin(), w.end());
  std::reverse(ls.begin(), ls.end());
  return Word(std::move(ls));
}

// chi(a1 a2 ... ar, x) = a1 x a2 x ... x ar.
inline Word chi(const Word& w, Letter x) {
  Word r;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) r.push_back(x);
    r.push_back(w[i]);
  }
  return r;
}

// w[k;m]: the factor of length m directly succeeding the prefix of length k.
inline Word slice(const Word& w, std::size_t k, std::size_t m) {
  if (k > w.size() || m > w.size() - k)
    throw Error("OUT_OF_RANGE", "slice [" + std::to_string(k) + ";" + std::to_string(m) +
                                    "] of a word of length " + std::to_string(w.size()));
  Word r;
  for (std::size_t i = k; i < k + m; ++i) r.push_back(w[i]);
  return r;
}

// ---- decomposition and islands ---------------------------------------------

struct Decomposition {
  std::vector<Word> blocks;       // m+1 blocks, possibly empty
  std::vector<Letter> separators; // m simple letters

  Word reassemble() const {
    Word w = blocks[0];
    for (std::size_t i = 0; i < separators.size(); ++i) {
      w.push_back(separators[i]);
      w.append(blocks[i + 1]);
    }
    return w;
  }
};

// w = w0 t1 w1 ... tm wm with t_i the simple letters of w in order and the
// blocks w_i words over the multiple letters.
inline Decomposition decompose(const Word& w) {
  WordStats st = word_stats(w);
  std::set<Letter> simple(st.simple.begin(), st.simple.end());
  Decomposition d;
  d.blocks.emplace_back();
  for (const Letter& a : w) {
    if (simple.count(a)) {
      d.separators.push_back(a);
      d.blocks.emplace_back();
    } else {
      d.blocks.back().push_back(a);
    }
  }
  return d;
}

struct Island {
  Letter letter;
  std::size_t start = 0;
  std::size_t length = 0;
};

// Maximal runs of equal letters, in order.
inline std::vector<Island> all_islands(const Word& w) {
  std::vector<Island> v;
  std::size_t i = 0;
  while (i < w.size()) {
    std::size_t j = i;
    while (j < w.size() && w[j] == w[i]) ++j;
    v.push_back({w[i], i, j - i});
    i = j;
  }
  return v;
}

inline std::vector<std::pair<std::size_t, std::size_t>> islands(const Word& w, Letter x) {
  std::vector<std::pair<std::size_t, std::size_t>> v;
  for (const Island& is : all_islands(w))
    if (is.letter == x) v.emplace_back(is.start, is.length);
  return v;
}

inline bool two_island_limited(const Word& w) {
  std::map<Letter, int> cnt;
  for (const Island& is : all_islands(w)) ++cnt[is.letter];
  for (const auto& [x, n] : cnt)
    if (n > 2) return false;
  return true;
}

// 2-island-limited, and every letter forming two islands occurs exactly twice.
inline bool two_island_rigid(const Word& w) {
  std::map<Letter, int> cnt, occ;
  for (const Island& is : all_islands(w)) {
    ++cnt[is.letter];
    occ[is.letter] += static_cast<int>(is.length);
  }
  for (const auto& [x, n] : cnt) {
    if (n > 2) return false;
    if (n == 2 && occ[x] != 2) return false;
  }
  return true;
}

// ---- substitutions ----------------------------------------------------------

// phi: X -> X*; letters outside the mapping are fixed. Images may be empty.
class Subst {
 public:
  Subst() = default;
  Subst(std::initializer_list<std::pair<const Letter, Word>> m) : map_(m) {}

  void set(Letter x, Word img) { map_[x] = std::move(img); }
  void unset(Letter x) { map_.erase(x); }
  const Word* lookup(Letter x) const {
    auto it = map_.find(x);
    return it == map_.end() ? nullptr : &it->second;
  }
  const std::map<Letter, Word>& mapping() const { return map_; }

  Word apply(const Word& w) const {
    Word r;
    for (const Letter& a : w) {
      auto it = map_.find(a);
      if (it == map_.end())
        r.push_back(a);
      else
        r.append(it->second);
    }
    return r;
  }

  std::string str() const {
    std::string s = "{";
    bool first = true;
    for (const auto& [x, img] : map_) {
      if (!first) s += ", ";
      first = false;
      s += x.str() + " -> " + img.str();
    }
    return s + "}";
  }

 private:
  std::map<Letter, Word> map_;
};

// ---- factors ----------------------------------------------------------------

inline bool is_factor(const Word& v, const Word& w) {
  if (v.size() > w.size()) return false;
  if (v.empty()) return true;
  for (std::size_t i = 0; i + v.size() <= w.size(); ++i) {
    bool ok = true;
    for (std::size_t j = 0; j < v.size(); ++j)
      if (w[i + j] != v[j]) {
        ok = false;
        break;
      }
    if (ok) return true;
  }
  return false;
}

inline std::set<Word> factor_closure(const std::set<Word>& ws) {
  std::set<Word> r;
  r.insert(Word());
  for (const Word& w : ws)
    for (std::size_t i = 0; i <= w.size(); ++i)
      for (std::size_t len = 1; len + i <= w.size(); ++len)
        r.insert(slice(w, i, len));
  return r;
}

// ---- linear-balanced identities ----------------------------------------------

// u ~ v is linear-balanced when both sides have the same simple-letter word
// and corresponding blocks are linear with equal content.
inline bool is_linear_balanced(const Word& u, const Word& v) {
  WordStats su = word_stats(u), sv = word_stats(v);
  if (su.simple != sv.simple) return false;
  std::set<Letter> simple(su.simple.begin(), su.simple.end());
  if (restrict_to(u, simple) != restrict_to(v, simple)) return false;
  Decomposition du = decompose(u), dv = decompose(v);
  for (std::size_t i = 0; i < du.blocks.size(); ++i) {
    WordStats bu = word_stats(du.blocks[i]), bv = word_stats(dv.blocks[i]);
    if (bu.content != bv.content) return false;
    for (const auto& [x, n] : bu.occ)
      if (n > 1) return false;
    for (const auto& [x, n] : bv.occ)
      if (n > 1) return false;
  }
  return true;
}

}  // namespace mvw

template <>
struct std::hash<mvw::Word> {
  std::size_t operator()(const mvw::Word& w) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (const mvw::Letter& x : w) {
      h = (h ^ static_cast<std::size_t>(x.head)) * 1099511628211ull;
      h = (h ^ static_cast<std::size_t>(x.sub + 1)) * 1099511628211ull;
      h = (h ^ static_cast<std::size_t>(x.prime)) * 1099511628211ull;
    }
    return h;
  }
};
