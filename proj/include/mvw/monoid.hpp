#pragma once

// Finite monoids with explicit multiplication tables: Rees quotients M(W),
// exhaustive identity checking, isoterm tests, bounded variety comparison,
// and a bit-exact text serialization.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "mvw/identity.hpp"
#include "mvw/word.hpp"

namespace mvw {

class FiniteMonoid {
 public:
  // Table is row-major: table[a*n+b] = a*b. Verifies the monoid axioms.
  FiniteMonoid(std::vector<std::string> labels, std::vector<int> table, int one, int zero,
               std::string provenance)
      : labels_(std::move(labels)),
        table_(std::move(table)),
        one_(one),
        zero_(zero),
        provenance_(std::move(provenance)) {
    const int n = size();
    if (table_.size() != static_cast<std::size_t>(n) * n)
      throw Error("NOT_A_MONOID", "table size mismatch");
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        int ab = mul(a, b);
        if (ab < 0 || ab >= n) throw Error("NOT_A_MONOID", "table entry out of range");
      }
    for (int a = 0; a < n; ++a)
      if (mul(one_, a) != a || mul(a, one_) != a)
        throw Error("NOT_A_MONOID", "identity element is not neutral");
    if (zero_ >= 0)
      for (int a = 0; a < n; ++a)
        if (mul(zero_, a) != zero_ || mul(a, zero_) != zero_)
          throw Error("NOT_A_MONOID", "zero element is not absorbing");
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          if (mul(mul(a, b), c) != mul(a, mul(b, c)))
            throw Error("NOT_A_MONOID", "associativity fails at (" + labels_[a] + "," +
                                            labels_[b] + "," + labels_[c] + ")");
  }

  int size() const { return static_cast<int>(labels_.size()); }
  int mul(int a, int b) const { return table_[static_cast<std::size_t>(a) * labels_.size() + b]; }
  int one() const { return one_; }
  int zero() const { return zero_; }  // -1 if absent
  const std::string& label(int i) const { return labels_[i]; }
  const std::string& provenance() const { return provenance_; }
  const std::vector<int>& table() const { return table_; }

  int eval(const std::vector<int>& word_elems) const {
    int acc = one_;
    for (int e : word_elems) acc = mul(acc, e);
    return acc;
  }

 private:
  std::vector<std::string> labels_;
  std::vector<int> table_;
  int one_;
  int zero_;
  std::string provenance_;
};

// ---- Rees quotient M(W) -----------------------------------------------------
//
// Nonzero elements are the factors of words in W; products falling outside
// W^<= collapse to 0. Element 0 is always materialized.
inline FiniteMonoid build_rees(const std::set<Word>& w_set, std::string provenance = "") {
  std::set<Word> closure = factor_closure(w_set);
  std::vector<Word> elems(closure.begin(), closure.end());
  std::sort(elems.begin(), elems.end(), shortlex_less);

  std::unordered_map<Word, int> index;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < elems.size(); ++i) {
    index.emplace(elems[i], static_cast<int>(i));
    labels.push_back(elems[i].str());
  }
  const int zero = static_cast<int>(elems.size());
  labels.push_back("0");

  const int n = zero + 1;
  std::vector<int> table(static_cast<std::size_t>(n) * n, zero);
  for (int a = 0; a < zero; ++a)
    for (int b = 0; b < zero; ++b) {
      Word ab = elems[a] * elems[b];
      auto it = index.find(ab);
      table[static_cast<std::size_t>(a) * n + b] = it == index.end() ? zero : it->second;
    }
  for (int b = 0; b < n; ++b) table[static_cast<std::size_t>(zero) * n + b] = zero;
  for (int a = 0; a < n; ++a) table[static_cast<std::size_t>(a) * n + zero] = zero;

  if (provenance.empty()) {
    provenance = "M(";
    bool first = true;
    for (const Word& w : w_set) {
      if (!first) provenance += ", ";
      first = false;
      provenance += w.str();
    }
    provenance += ")";
  }
  return FiniteMonoid(std::move(labels), std::move(table), 0, zero, std::move(provenance));
}

inline FiniteMonoid build_rees(std::initializer_list<const char*> words, std::string provenance = "") {
  std::set<Word> ws;
  for (const char* s : words) ws.insert(Word::parse(s));
  return build_rees(ws, std::move(provenance));
}

inline FiniteMonoid trivial_monoid() {
  return FiniteMonoid({"1"}, {0}, 0, -1, "T");
}

// ---- identity satisfaction ---------------------------------------------------

struct SatisfactionReport {
  bool holds = true;
  std::vector<std::pair<Letter, int>> witness;  // letter -> element index
  int lhs_value = -1, rhs_value = -1;

  std::string witness_str(const FiniteMonoid& m) const {
    std::string s = "{";
    for (std::size_t i = 0; i < witness.size(); ++i) {
      if (i) s += ", ";
      s += witness[i].first.str() + " -> " + m.label(witness[i].second);
    }
    return s + "}";
  }
};

namespace detail {

inline std::vector<int> letter_indices(const Word& w, const std::vector<Letter>& alphabet) {
  std::vector<int> out;
  out.reserve(w.size());
  for (const Letter& a : w) {
    int idx = static_cast<int>(std::lower_bound(alphabet.begin(), alphabet.end(), a) - alphabet.begin());
    out.push_back(idx);
  }
  return out;
}

}  // namespace detail

// Exhaustive check over all |M|^k substitutions, k = #letters in the identity.
// Substitutions are enumerated in mixed-radix order of element indices, so the
// reported witness is deterministic (first failure).
inline SatisfactionReport satisfies(const FiniteMonoid& m, const Identity& id,
                                    std::uint64_t eval_budget = 100000000ull) {
  std::set<Letter> cs = content(id.lhs);
  for (const Letter& a : id.rhs) cs.insert(a);
  std::vector<Letter> alphabet(cs.begin(), cs.end());
  const int k = static_cast<int>(alphabet.size());

  std::uint64_t total = 1;
  for (int i = 0; i < k; ++i) {
    total *= static_cast<std::uint64_t>(m.size());
    if (total > eval_budget) throw Error("BUDGET_EXCEEDED", "satisfies: |M|^k too large");
  }

  std::vector<int> eL = detail::letter_indices(id.lhs, alphabet);
  std::vector<int> eR = detail::letter_indices(id.rhs, alphabet);

  std::vector<int> asgn(k, 0);
  SatisfactionReport rep;
  for (std::uint64_t it = 0;; ++it) {
    int lv = m.one();
    for (int e : eL) lv = m.mul(lv, asgn[e]);
    int rv = m.one();
    for (int e : eR) rv = m.mul(rv, asgn[e]);
    if (lv != rv) {
      rep.holds = false;
      for (int i = 0; i < k; ++i) rep.witness.emplace_back(alphabet[i], asgn[i]);
      rep.lhs_value = lv;
      rep.rhs_value = rv;
      return rep;
    }
    int pos = k - 1;
    while (pos >= 0 && asgn[pos] == m.size() - 1) asgn[pos--] = 0;
    if (pos < 0) break;
    ++asgn[pos];
  }
  return rep;
}

inline bool holds_all(const FiniteMonoid& m, const std::vector<Identity>& ids) {
  for (const Identity& id : ids)
    if (!satisfies(m, id).holds) return false;
  return true;
}

// ---- isoterm test -------------------------------------------------------------

enum class IsotermVerdict { ISOTERM_UP_TO_BOUND, NOT_ISOTERM, BUDGET_EXCEEDED };

struct IsotermReport {
  IsotermVerdict verdict;
  Word witness;  // the v with M |= w ~ v, v != w (when NOT_ISOTERM)
};

namespace detail {

// Enumerates words over `alphabet` of length <= bound in shortlex order,
// calling f(word); stops early if f returns false.
template <typename F>
inline void for_words_up_to(const std::vector<Letter>& alphabet, std::size_t bound, F&& f) {
  std::vector<Word> layer{Word()};
  if (!f(layer[0])) return;
  for (std::size_t len = 1; len <= bound; ++len) {
    std::vector<Word> next;
    next.reserve(layer.size() * alphabet.size());
    for (const Word& w : layer)
      for (const Letter& a : alphabet) {
        Word v = w;
        v.push_back(a);
        if (!f(v)) return;
        next.push_back(std::move(v));
      }
    layer = std::move(next);
  }
}

}  // namespace detail

// Searches words v over content(w), |v| <= bound, for a nontrivial identity
// w ~ v holding in M.
inline IsotermReport is_isoterm(const FiniteMonoid& m, const Word& w, std::size_t bound,
                                std::uint64_t word_budget = 2000000ull) {
  std::set<Letter> cs = content(w);
  std::vector<Letter> alphabet(cs.begin(), cs.end());
  std::uint64_t count = 1, pw = 1;
  for (std::size_t l = 1; l <= bound; ++l) {
    pw *= alphabet.empty() ? 1 : alphabet.size();
    count += pw;
  }
  if (count > word_budget) return {IsotermVerdict::BUDGET_EXCEEDED, Word()};

  IsotermReport rep{IsotermVerdict::ISOTERM_UP_TO_BOUND, Word()};
  detail::for_words_up_to(alphabet, bound, [&](const Word& v) {
    if (v == w) return true;
    if (satisfies(m, Identity(w, v)).holds) {
      rep = {IsotermVerdict::NOT_ISOTERM, v};
      return false;
    }
    return true;
  });
  return rep;
}

// ---- combinations --------------------------------------------------------------

inline FiniteMonoid direct_product(const FiniteMonoid& a, const FiniteMonoid& b) {
  const int na = a.size(), nb = b.size(), n = na * nb;
  std::vector<std::string> labels;
  labels.reserve(n);
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < nb; ++j) labels.push_back("(" + a.label(i) + "|" + b.label(j) + ")");
  std::vector<int> table(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      int ai = i / nb, bi = i % nb, aj = j / nb, bj = j % nb;
      table[static_cast<std::size_t>(i) * n + j] = a.mul(ai, aj) * nb + b.mul(bi, bj);
    }
  int one = a.one() * nb + b.one();
  int zero = (a.zero() >= 0 && b.zero() >= 0) ? a.zero() * nb + b.zero() : -1;
  return FiniteMonoid(std::move(labels), std::move(table), one, zero,
                      a.provenance() + " x " + b.provenance());
}

inline FiniteMonoid dual(const FiniteMonoid& m) {
  const int n = m.size();
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) labels.push_back(m.label(i));
  std::vector<int> table(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) table[static_cast<std::size_t>(a) * n + b] = m.mul(b, a);
  return FiniteMonoid(std::move(labels), std::move(table), m.one(), m.zero(),
                      "dual(" + m.provenance() + ")");
}

// A variety presentation: var(axioms) joined with var(M) for each generator
// monoid M. Pure equational systems have no generators.
struct VarietySpec {
  AxiomSystem axioms;
  std::vector<FiniteMonoid> generators;

  VarietySpec() = default;
  VarietySpec(AxiomSystem a) : axioms(std::move(a)) {}
  VarietySpec(AxiomSystem a, std::vector<FiniteMonoid> gens)
      : axioms(std::move(a)), generators(std::move(gens)) {}
};

// ---- bounded variety comparison -------------------------------------------------

enum class VarietyVerdict { HOLDS_UP_TO_BOUND, SEPARATED };

struct VarietyReport {
  VarietyVerdict verdict;
  int letters = 0;
  std::size_t length = 0;
  Identity separating;  // valid when SEPARATED: holds in upper, fails in lower

  std::string verdict_str() const {
    std::string b = "(k=" + std::to_string(letters) + ", L=" + std::to_string(length) + ")";
    return verdict == VarietyVerdict::HOLDS_UP_TO_BOUND ? "HOLDS_UP_TO_BOUND " + b
                                                        : "SEPARATED " + b + " by " + separating.str();
  }
};

namespace detail {

struct Fp128 {
  std::uint64_t a = 14695981039346656037ull, b = 88172645463325252ull;
  void feed(std::uint64_t x) {
    a = (a ^ x) * 1099511628211ull;
    b ^= b << 13;
    b ^= b >> 7;
    b ^= b << 17;
    b ^= x * 2654435761ull;
  }
  bool operator==(const Fp128&) const = default;
};

struct Fp128Hash {
  std::size_t operator()(const Fp128& f) const noexcept { return f.a ^ (f.b * 0x9e3779b97f4a7c15ull); }
};

}  // namespace detail

// Bounded test of V(lower) <= V(upper): every identity (in <= k letters, sides
// of length <= L) that holds in `upper` must hold in `lower`. Words are walked
// depth-first; each word carries its evaluation vector over all |M|^k
// assignments for both monoids, extended one letter at a time.
inline VarietyReport variety_leq(const FiniteMonoid& lower, const FiniteMonoid& upper, int k,
                                 std::size_t max_len, std::uint64_t op_budget = 4000000000ull) {
  std::uint64_t nu = 1, nl = 1;
  for (int i = 0; i < k; ++i) {
    nu *= static_cast<std::uint64_t>(upper.size());
    nl *= static_cast<std::uint64_t>(lower.size());
  }
  std::uint64_t words = 0, p = 1;
  for (std::size_t l = 0; l <= max_len; ++l) {
    words += p;
    p *= k;
  }
  if (words * (nu + nl) > op_budget)
    throw Error("BUDGET_EXCEEDED", "variety_leq: bound too large for budget");

  // asgn_img[m][letter][assignment] = element assigned to the letter
  std::vector<std::vector<int>> img_u(k, std::vector<int>(nu));
  std::vector<std::vector<int>> img_l(k, std::vector<int>(nl));
  for (std::uint64_t a = 0; a < nu; ++a) {
    std::uint64_t t = a;
    for (int i = 0; i < k; ++i) {
      img_u[i][a] = static_cast<int>(t % upper.size());
      t /= upper.size();
    }
  }
  for (std::uint64_t a = 0; a < nl; ++a) {
    std::uint64_t t = a;
    for (int i = 0; i < k; ++i) {
      img_l[i][a] = static_cast<int>(t % lower.size());
      t /= lower.size();
    }
  }

  std::vector<Letter> alphabet;
  for (int i = 0; i < k; ++i) {
    static const char heads[] = {'x', 'y', 'z', 't', 's', 'r'};
    alphabet.push_back(Letter{heads[i % 6], static_cast<std::int16_t>(i >= 6 ? i : -1), false});
  }

  // Group words by their evaluation fingerprint in `upper`; within a group all
  // `lower` fingerprints must agree.
  std::unordered_map<detail::Fp128, std::pair<detail::Fp128, Word>, detail::Fp128Hash> groups;
  groups.reserve(static_cast<std::size_t>(words));

  struct Frame {
    std::vector<int> vu, vl;
  };
  std::vector<Frame> frames(max_len + 1);
  for (Frame& f : frames) {
    f.vu.resize(nu);
    f.vl.resize(nl);
  }
  frames[0].vu.assign(nu, upper.one());
  frames[0].vl.assign(nl, lower.one());

  Word path;
  VarietyReport rep{VarietyVerdict::HOLDS_UP_TO_BOUND, k, max_len, {}};

  auto visit = [&](const Frame& f) -> bool {
    detail::Fp128 fu, fl;
    for (int v : f.vu) fu.feed(static_cast<std::uint64_t>(v));
    for (int v : f.vl) fl.feed(static_cast<std::uint64_t>(v));
    auto [it, fresh] = groups.emplace(fu, std::make_pair(fl, path));
    if (!fresh && !(it->second.first == fl)) {
      rep.verdict = VarietyVerdict::SEPARATED;
      rep.separating = Identity(it->second.second, path);
      return false;
    }
    return true;
  };

  // Depth-first over the k-ary word tree; returns false once separated.
  auto dfs = [&](auto&& self, std::size_t depth) -> bool {
    if (!visit(frames[depth])) return false;
    if (depth == max_len) return true;
    for (int l = 0; l < k; ++l) {
      Frame& cur = frames[depth];
      Frame& child = frames[depth + 1];
      for (std::uint64_t a = 0; a < nu; ++a) child.vu[a] = upper.mul(cur.vu[a], img_u[l][a]);
      for (std::uint64_t a = 0; a < nl; ++a) child.vl[a] = lower.mul(cur.vl[a], img_l[l][a]);
      path.push_back(alphabet[l]);
      bool ok = self(self, depth + 1);
      path.pop_back();
      if (!ok) return false;
    }
    return true;
  };
  dfs(dfs, 0);
  return rep;
}

// ---- serialization ---------------------------------------------------------------

inline std::string serialize_monoid(const FiniteMonoid& m) {
  std::ostringstream os;
  os << "monoid v1\n";
  os << "provenance: " << m.provenance() << "\n";
  os << "size: " << m.size() << "\n";
  os << "one: " << m.one() << "\n";
  os << "zero: " << m.zero() << "\n";
  for (int i = 0; i < m.size(); ++i) os << "elem " << i << ": " << m.label(i) << "\n";
  os << "table:\n";
  for (int a = 0; a < m.size(); ++a) {
    for (int b = 0; b < m.size(); ++b) {
      if (b) os << ' ';
      os << m.mul(a, b);
    }
    os << '\n';
  }
  return os.str();
}

inline FiniteMonoid parse_monoid(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  auto expect_prefix = [&](const std::string& want) -> std::string {
    if (!std::getline(is, line) || line.rfind(want, 0) != 0)
      throw Error("PARSE_ERROR", "monoid file: expected '" + want + "'");
    return line.substr(want.size());
  };
  expect_prefix("monoid v1");
  std::string provenance = expect_prefix("provenance: ");
  int n = std::stoi(expect_prefix("size: "));
  int one = std::stoi(expect_prefix("one: "));
  int zero = std::stoi(expect_prefix("zero: "));
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) labels.push_back(expect_prefix("elem " + std::to_string(i) + ": "));
  expect_prefix("table:");
  std::vector<int> table;
  table.reserve(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a) {
    if (!std::getline(is, line)) throw Error("PARSE_ERROR", "monoid file: missing table row");
    std::istringstream row(line);
    int v;
    while (row >> v) table.push_back(v);
  }
  return FiniteMonoid(std::move(labels), std::move(table), one, zero, std::move(provenance));
}

}  // namespace mvw
