#pragma once

// Congruences on the free monoid. Three layers of machinery back the same
// small interface:
//
//   * structural kinds (gamma, lambda, beta) are decided exactly from the
//     island decomposition of a word;
//   * finite-model components are decided exactly by evaluating in a fixed
//     monoid;
//   * equational components fall back to the bounded prover and may come
//     back INCONCLUSIVE.
//
// Composite kinds (gamma', lambda', gamma'', nu, eta, mu, ...) are meets of
// the above, so a pair is equivalent iff every component agrees.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mvw/identity.hpp"
#include "mvw/monoid.hpp"
#include "mvw/prover.hpp"
#include "mvw/reduce.hpp"
#include "mvw/word.hpp"

namespace mvw {

enum class EquivResult { EQUIV, NOT_EQUIV, INCONCLUSIVE };

inline std::string to_string(EquivResult r) {
  switch (r) {
    case EquivResult::EQUIV: return "EQUIV";
    case EquivResult::NOT_EQUIV: return "NOT_EQUIV";
    default: return "INCONCLUSIVE";
  }
}

struct CongruenceKind {
  enum class Base { NONE, GAMMA, LAMBDA, BETA };

  std::string name;
  Base base = Base::NONE;                 // structural component
  std::vector<FiniteMonoid> models;       // finite-model components, exact
  std::optional<AxiomSystem> equations;   // equational component, bounded
  bool ini_decides = false;               // nu: ini() settles the equations
  bool mu_islands = false;                // mu: island canonicalizer applies
  ProveConfig prove_cfg{};
};

// Countermodels offered to the prover when an equational component has to be
// refuted. prove() skips any entry that does not satisfy the axioms at hand,
// so one shared list serves every kind.
inline const std::vector<FiniteMonoid>& countermodel_library() {
  static const std::vector<FiniteMonoid> lib = {
    build_rees({W("x")}),
    build_rees({W("x y")}),
    build_rees({W("x y x")}),
    build_rees({W("x y x z x")}),
    build_rees({W("x y x t y"), W("y t x y x")}),
    build_rees({W("x y z x t y")}),
  };
  return lib;
}

namespace detail {

inline FiniteMonoid m_xyx() { return build_rees({W("x y x")}); }

inline AxiomSystem make_axioms(std::string name, std::vector<Identity> ids) {
  return AxiomSystem{std::move(name), std::move(ids)};
}

}  // namespace detail

// Registry of the congruence kinds discussed throughout. Accepted names:
//   gamma, lambda, beta, gamma_p, lambda_p, gamma_pp, nu, eta, mu, mu_<n>,
//   alpha1 (apostrophe spellings gamma', lambda', gamma'' also work).
inline CongruenceKind congruence(std::string_view name) {
  CongruenceKind k;
  k.prove_cfg.library = &countermodel_library();

  auto is = [&](std::string_view a, std::string_view b = "") {
    return name == a || (!b.empty() && name == b);
  };

  if (is("gamma")) {
    k.name = "gamma";
    k.base = CongruenceKind::Base::GAMMA;
    return k;
  }
  if (is("lambda")) {
    k.name = "lambda";
    k.base = CongruenceKind::Base::LAMBDA;
    return k;
  }
  if (is("beta")) {
    k.name = "beta";
    k.base = CongruenceKind::Base::BETA;
    return k;
  }
  if (is("gamma_p", "gamma'")) {
    k.name = "gamma_p";
    k.base = CongruenceKind::Base::GAMMA;
    k.models = {detail::m_xyx()};
    return k;
  }
  if (is("lambda_p", "lambda'")) {
    k.name = "lambda_p";
    k.base = CongruenceKind::Base::LAMBDA;
    k.models = {detail::m_xyx()};
    return k;
  }
  if (is("gamma_pp", "gamma''")) {
    k.name = "gamma_pp";
    k.base = CongruenceKind::Base::GAMMA;
    k.models = {build_rees({W("x y x t y"), W("y t x y x")})};
    return k;
  }
  if (is("nu")) {
    k.name = "nu";
    k.models = {detail::m_xyx()};
    k.equations = detail::make_axioms("nu", {Id("x y = x y x", "xy=xyx")});
    k.ini_decides = true;
    return k;
  }
  if (is("eta")) {
    k.name = "eta";
    k.models = {detail::m_xyx()};
    k.equations = detail::make_axioms(
        "eta", {Id("x y x z = x y x z x", "eta1"),
                Id("y t x^2 y = y t y x^2", "eta2")});
    return k;
  }
  if (is("mu")) {
    k.name = "mu";
    k.equations = detail::make_axioms(
        "mu", {Id("x^2 = x^3", "x2=x3"),
               Id("x y x z x = x y x z x^2", "mu2")});
    k.mu_islands = true;
    return k;
  }
  if (name.rfind("mu_", 0) == 0) {
    int n = 0;
    for (char c : name.substr(3)) {
      if (c < '0' || c > '9') throw Error("UNKNOWN_CONGRUENCE", std::string(name));
      n = n * 10 + (c - '0');
    }
    if (n < 1) throw Error("INVALID_PARAMS", "mu_n needs n >= 1");
    k.name = std::string(name);
    k.equations = detail::make_axioms(
        k.name, {Id("x^2 = x^3", "x2=x3"), gamma_n(n)});
    return k;
  }
  if (is("alpha1", "alpha_1")) {
    k.name = "alpha1";
    k.equations = detail::make_axioms(
        "alpha1", {Id("x y x^2 = x^2 y x", "a1a"),
                   Id("x^2 y^2 = y^2 x^2", "a1b"),
                   Id("x z x y t y = x z y x t y", "sigma3")});
    return k;
  }
  throw Error("UNKNOWN_CONGRUENCE", std::string(name));
}

// ---- island shapes ---------------------------------------------------------

// Per-island size constraint. kOne renders as "x", kGe2 as "x x+", kGe1 as
// "x+", kAny as "x*" (the last only shows up when rendering enumerated
// classes, never in a structural shape).
enum class IslandSize : unsigned char { kOne, kGe2, kGe1, kAny };

struct ClassShape {
  std::vector<std::pair<Letter, IslandSize>> islands;
  bool operator==(const ClassShape&) const = default;
};

// gamma fixes the island letter sequence and the set of simple letters;
// island sizes float, except that a letter forming a single island must keep
// at least two occurrences to stay multiple.
inline ClassShape gamma_shape(const Word& w) {
  auto isl = all_islands(w);
  std::map<Letter, int> icount;
  std::map<Letter, int> occ;
  for (const Island& is : isl) {
    ++icount[is.letter];
    occ[is.letter] += static_cast<int>(is.length);
  }
  ClassShape s;
  for (const Island& is : isl) {
    IslandSize sz;
    if (occ[is.letter] == 1)
      sz = IslandSize::kOne;
    else if (icount[is.letter] == 1)
      sz = IslandSize::kGe2;
    else
      sz = IslandSize::kGe1;
    s.islands.emplace_back(is.letter, sz);
  }
  return s;
}

// lambda additionally pins, for every multiple letter, whether its first two
// occurrences are adjacent; that is exactly whether its first island has
// length >= 2.
inline ClassShape lambda_shape(const Word& w) {
  ClassShape s = gamma_shape(w);
  auto isl = all_islands(w);
  std::set<Letter> seen;
  for (std::size_t i = 0; i < isl.size(); ++i) {
    if (s.islands[i].second != IslandSize::kGe1) continue;
    if (!seen.insert(isl[i].letter).second) continue;  // not the first island
    s.islands[i].second =
        isl[i].length >= 2 ? IslandSize::kGe2 : IslandSize::kOne;
  }
  return s;
}

// beta pins, for every multiple letter, whether its first two occurrences lie
// in the same block. When no simple letter separates the first two islands
// the answer is "yes" for every member, so the first island floats; otherwise
// the flag is realized by first-island length 1 vs >= 2.
inline ClassShape beta_shape(const Word& w) {
  ClassShape s = gamma_shape(w);
  auto isl = all_islands(w);
  auto st = word_stats(w);
  std::set<Letter> simple(st.simple.begin(), st.simple.end());
  std::map<Letter, std::vector<std::size_t>> where;
  for (std::size_t i = 0; i < isl.size(); ++i) where[isl[i].letter].push_back(i);
  for (const auto& [a, idx] : where) {
    if (idx.size() < 2) continue;
    bool simple_between = false;
    for (std::size_t i = idx[0] + 1; i < idx[1]; ++i)
      if (simple.count(isl[i].letter)) simple_between = true;
    if (!simple_between) continue;  // flag constant, island stays free
    s.islands[idx[0]].second =
        isl[idx[0]].length >= 2 ? IslandSize::kGe2 : IslandSize::kOne;
  }
  return s;
}

inline ClassShape structural_shape(CongruenceKind::Base base, const Word& w) {
  switch (base) {
    case CongruenceKind::Base::GAMMA: return gamma_shape(w);
    case CongruenceKind::Base::LAMBDA: return lambda_shape(w);
    case CongruenceKind::Base::BETA: return beta_shape(w);
    default: throw Error("INVALID_PARAMS", "kind has no structural component");
  }
}

// mu admits single-letter island moves only: x^2 = x^3 pumps any island of
// size >= 2, and the second axiom inserts or deletes an x adjacent to an
// occurrence that has at least two x's before it. Islands are never created
// or destroyed, so per letter: the first island is rigid, the second floats
// iff the first has size >= 2, and every later island floats. That analysis
// is complete only while no multi-letter substitution can ever fire along the
// class, hence the domain test below.
inline std::optional<ClassShape> mu_shape(const Word& w) {
  auto isl = all_islands(w);

  // skeleton must be square-free: an adjacent repeat of >= 2 islands would
  // let x^2 = x^3 act on a multi-letter segment
  std::vector<Letter> skel;
  for (const Island& is : isl) skel.push_back(is.letter);
  for (std::size_t len = 2; 2 * len <= skel.size(); ++len)
    for (std::size_t i = 0; i + 2 * len <= skel.size(); ++i)
      if (std::equal(skel.begin() + i, skel.begin() + i + len,
                     skel.begin() + i + len))
        return std::nullopt;

  std::map<Letter, std::vector<std::size_t>> where;
  for (std::size_t i = 0; i < isl.size(); ++i) where[isl[i].letter].push_back(i);

  ClassShape s;
  s.islands.resize(isl.size());
  int big = 0;  // letters whose occurrence count can reach 3
  for (const auto& [a, idx] : where) {
    bool can_reach_3 = idx.size() >= 3;
    for (std::size_t j = 0; j < idx.size(); ++j) {
      std::size_t len = isl[idx[j]].length;
      IslandSize sz;
      bool free = j >= 2 || (j == 1 && isl[idx[0]].length >= 2);
      if (free)
        sz = IslandSize::kGe1;
      else
        sz = len >= 2 ? IslandSize::kGe2 : IslandSize::kOne;
      if (free || len >= 2) can_reach_3 = true;
      s.islands[idx[j]] = {a, sz};
    }
    if (can_reach_3) ++big;
  }
  // with two such letters a segment could occur three times scattered and
  // the second axiom would fire on it
  if (big > 1) return std::nullopt;
  return s;
}

inline Word shape_min_word(const ClassShape& s) {
  Word w;
  for (const auto& [a, sz] : s.islands) {
    int n = sz == IslandSize::kGe2 ? 2 : (sz == IslandSize::kAny ? 0 : 1);
    for (int i = 0; i < n; ++i) w.push_back(a);
  }
  return w;
}

inline std::vector<Word> expand_shape(const ClassShape& s, int cap) {
  std::vector<std::vector<int>> choices;
  for (const auto& [a, sz] : s.islands) {
    std::vector<int> c;
    switch (sz) {
      case IslandSize::kOne: c = {1}; break;
      case IslandSize::kGe2:
        for (int i = 2; i <= std::max(2, cap); ++i) c.push_back(i);
        break;
      case IslandSize::kGe1:
        for (int i = 1; i <= std::max(1, cap); ++i) c.push_back(i);
        break;
      case IslandSize::kAny:
        for (int i = 0; i <= cap; ++i) c.push_back(i);
        break;
    }
    choices.push_back(std::move(c));
  }
  std::vector<Word> out;
  std::vector<std::size_t> pick(choices.size(), 0);
  while (true) {
    Word w;
    for (std::size_t i = 0; i < choices.size(); ++i)
      for (int r = 0; r < choices[i][pick[i]]; ++r) w.push_back(s.islands[i].first);
    out.push_back(std::move(w));
    std::size_t i = 0;
    for (; i < choices.size(); ++i) {
      if (++pick[i] < choices[i].size()) break;
      pick[i] = 0;
    }
    if (i == choices.size()) break;
  }
  return out;
}

// ---- model evaluation -------------------------------------------------------

// Value of w under every assignment letters -> m, as one flat vector in
// mixed-radix order. Two words agree on a model iff their vectors (over a
// common letter list) are equal.
inline std::vector<int> eval_vector(const FiniteMonoid& m, const Word& w,
                                    const std::vector<Letter>& letters) {
  std::size_t total = 1;
  for (std::size_t i = 0; i < letters.size(); ++i) total *= m.size();
  std::vector<int> out(total);
  std::vector<int> assign(letters.size(), 0);
  std::map<Letter, std::size_t> pos;
  for (std::size_t i = 0; i < letters.size(); ++i) pos[letters[i]] = i;
  std::vector<std::size_t> wpos;
  for (const Letter& a : w) {
    auto it = pos.find(a);
    if (it == pos.end()) throw Error("INVALID_PARAMS", "letter outside evaluation alphabet");
    wpos.push_back(it->second);
  }
  for (std::size_t idx = 0;; ++idx) {
    int v = m.one();
    for (std::size_t p : wpos) v = m.mul(v, assign[p]);
    out[idx] = v;
    std::size_t i = 0;
    for (; i < letters.size(); ++i) {
      if (++assign[i] < static_cast<int>(m.size())) break;
      assign[i] = 0;
    }
    if (i == letters.size()) break;
  }
  return out;
}

namespace detail {

inline bool models_agree(const CongruenceKind& k, const Word& u, const Word& v) {
  for (const FiniteMonoid& m : k.models)
    if (!satisfies(m, Identity{u, v}).holds) return false;
  return true;
}

}  // namespace detail

// ---- equivalence ------------------------------------------------------------

inline EquivResult equiv(const CongruenceKind& k, const Word& u, const Word& v) {
  if (u == v) return EquivResult::EQUIV;

  if (k.base != CongruenceKind::Base::NONE &&
      structural_shape(k.base, u) != structural_shape(k.base, v))
    return EquivResult::NOT_EQUIV;

  if (!detail::models_agree(k, u, v)) return EquivResult::NOT_EQUIV;

  if (!k.equations) return EquivResult::EQUIV;

  if (k.ini_decides)
    return ini(u) == ini(v) ? EquivResult::EQUIV : EquivResult::NOT_EQUIV;

  if (k.mu_islands) {
    auto su = mu_shape(u), sv = mu_shape(v);
    if (su && sv) return *su == *sv ? EquivResult::EQUIV : EquivResult::NOT_EQUIV;
  }

  ProveResult pr = prove(VarietySpec{*k.equations}, Identity{u, v}, k.prove_cfg);
  if (pr.status == ProveStatus::PROVED) return EquivResult::EQUIV;
  if (pr.status == ProveStatus::REFUTED) return EquivResult::NOT_EQUIV;
  return EquivResult::INCONCLUSIVE;
}

// ---- canonical representatives ----------------------------------------------

inline bool has_canonicalizer(const CongruenceKind& k) {
  if (k.base != CongruenceKind::Base::NONE) return true;
  if (k.mu_islands || k.ini_decides) return true;
  return false;
}

namespace detail {

// Least member of a structural class refined by finite models: every member
// with an island above 2 maps into the cap by x^2 = x^3 (each model satisfies
// it; asserted by the tests), so scanning size patterns <= 2 finds the true
// shortlex minimum.
inline Word filtered_min(const CongruenceKind& k, const Word& w) {
  ClassShape base = structural_shape(k.base, w);
  std::vector<Letter> letters;
  for (const Letter& a : content(w)) letters.push_back(a);
  std::vector<std::vector<int>> vecs;
  for (const FiniteMonoid& m : k.models) vecs.push_back(eval_vector(m, w, letters));
  std::optional<Word> best;
  for (const Word& cand : expand_shape(base, 2)) {
    bool ok = true;
    for (std::size_t i = 0; i < k.models.size() && ok; ++i)
      ok = eval_vector(k.models[i], cand, letters) == vecs[i];
    if (!ok) continue;
    if (!best || shortlex_less(cand, *best)) best = cand;
  }
  return *best;  // w's own truncation always passes
}

// Least word with the same ini and the same model vectors, found by shortlex
// scan over the content alphabet. Exact for nu, where those two data decide
// the class.
inline Word nu_min(const CongruenceKind& k, const Word& w) {
  std::vector<Letter> letters;
  for (const Letter& a : content(w)) letters.push_back(a);
  double budget = 1;
  for (std::size_t l = 0; l < w.size(); ++l) budget *= static_cast<double>(letters.size());
  if (budget > 2e6) throw Error("BUDGET_EXCEEDED", "nu canonical scan too large");

  Word target_ini = ini(w);
  std::vector<std::vector<int>> vecs;
  for (const FiniteMonoid& m : k.models) vecs.push_back(eval_vector(m, w, letters));

  std::optional<Word> found;
  Word cur;
  auto dfs = [&](auto&& self, std::size_t maxlen) -> void {
    if (found) return;
    if (ini(cur) == target_ini) {
      bool ok = true;
      for (std::size_t i = 0; i < k.models.size() && ok; ++i)
        ok = eval_vector(k.models[i], cur, letters) == vecs[i];
      if (ok) { found = cur; return; }
    }
    if (cur.size() == maxlen) return;
    for (const Letter& a : letters) {
      cur.push_back(a);
      // ini of any extension must stay a prefix of the target
      Word pi = ini(cur);
      bool viable = pi.size() <= target_ini.size();
      for (std::size_t i = 0; viable && i < pi.size(); ++i)
        viable = pi[i] == target_ini[i];
      if (viable) self(self, maxlen);
      cur = slice(cur, 0, cur.size() - 1);
      if (found) return;
    }
  };
  for (std::size_t len = target_ini.size(); len <= w.size() && !found; ++len) {
    cur = Word{};
    dfs(dfs, len);
  }
  return *found;  // w itself matches, so the scan cannot miss
}

}  // namespace detail

inline Word canonical_rep(const CongruenceKind& k, const Word& w) {
  if (k.mu_islands) {
    auto s = mu_shape(w);
    if (!s)
      throw Error("NO_CANONICALIZER",
                  "word outside the validated mu domain: " + w.str());
    return shape_min_word(*s);
  }
  if (k.base != CongruenceKind::Base::NONE) {
    if (k.models.empty()) return shape_min_word(structural_shape(k.base, w));
    return detail::filtered_min(k, w);
  }
  if (k.ini_decides) return detail::nu_min(k, w);
  throw Error("NO_CANONICALIZER", "no validated canonical form for " + k.name);
}

// ---- class descriptors --------------------------------------------------------

struct ClassDescriptor {
  std::string kind;
  Word rep;
  std::string signature;

  friend bool operator==(const ClassDescriptor& a, const ClassDescriptor& b) {
    return a.kind == b.kind && a.rep == b.rep;
  }
  friend bool operator<(const ClassDescriptor& a, const ClassDescriptor& b) {
    if (a.rep != b.rep) return shortlex_less(a.rep, b.rep);
    return a.kind < b.kind;
  }
};

struct ClassSet {
  std::string kind;
  std::vector<ClassDescriptor> classes;  // sorted by shortlex of rep

  bool contains(const Word& rep) const {
    for (const auto& c : classes)
      if (c.rep == rep) return true;
    return false;
  }
  std::size_t size() const { return classes.size(); }
};

namespace detail {

inline std::string render_shape(const ClassShape& s) {
  if (s.islands.empty()) return "1";
  std::string out;
  for (const auto& [a, sz] : s.islands) {
    if (!out.empty()) out += ' ';
    switch (sz) {
      case IslandSize::kOne: out += a.str(); break;
      case IslandSize::kGe2: out += a.str() + " " + a.str() + "+"; break;
      case IslandSize::kGe1: out += a.str() + "+"; break;
      case IslandSize::kAny: out += a.str() + "*"; break;
    }
  }
  return out;
}

struct RenderPart {
  Word min;
  std::string text;
};

// Render one skeleton group as a union of products of island size ranges,
// splitting on an island when the rows do not factor directly. When the rows
// came from a length-capped enumeration, open ranges are validated against
// everything the pattern denotes within that cap, so truncation does not
// break the product structure.
inline bool render_rows(const std::vector<Letter>& skel,
                        const std::vector<std::vector<int>>& rows, int depth,
                        std::optional<std::size_t> len_cap,
                        std::vector<RenderPart>& parts) {
  std::vector<std::set<int>> sets(skel.size());
  for (const auto& row : rows)
    for (std::size_t i = 0; i < row.size(); ++i) sets[i].insert(row[i]);

  std::vector<int> mins(skel.size());
  std::vector<bool> open(skel.size());
  int min_total = 0;
  for (std::size_t i = 0; i < skel.size(); ++i) {
    mins[i] = *sets[i].begin();
    open[i] = sets[i].size() > 1;
    min_total += mins[i];
  }

  bool product;
  if (len_cap) {
    // expected = every row of the candidate pattern within the length cap
    std::set<std::vector<int>> expected, actual(rows.begin(), rows.end());
    std::vector<int> row(mins);
    auto gen = [&](auto&& self, std::size_t i, int total) -> void {
      if (i == row.size()) {
        expected.insert(row);
        return;
      }
      int hi = open[i] ? static_cast<int>(*len_cap) - (min_total - mins[i]) : mins[i];
      for (int v = mins[i]; v <= hi && total + v <= static_cast<int>(*len_cap); ++v) {
        row[i] = v;
        self(self, i + 1, total + v);
      }
      row[i] = mins[i];
    };
    gen(gen, 0, 0);
    product = expected == actual;
  } else {
    std::size_t prod = 1;
    bool contiguous = true;
    for (const auto& s : sets) {
      prod *= s.size();
      if (*s.rbegin() - *s.begin() + 1 != static_cast<int>(s.size())) contiguous = false;
    }
    product = contiguous && prod == rows.size();
  }

  if (product) {
    Word min;
    std::string text;
    for (std::size_t i = 0; i < skel.size(); ++i) {
      for (int c = 0; c < mins[i]; ++c) {
        min.push_back(skel[i]);
        if (!text.empty()) text += ' ';
        text += skel[i].str();
        if (open[i] && c + 1 == mins[i]) text += '+';
      }
    }
    if (text.empty()) text = "1";
    parts.push_back({std::move(min), std::move(text)});
    return true;
  }
  if (depth == 0) return false;
  // split on the widest island: rows at its minimum vs the rest
  std::size_t pivot = 0;
  for (std::size_t i = 1; i < sets.size(); ++i)
    if (sets[i].size() > sets[pivot].size()) pivot = i;
  if (sets[pivot].size() < 2) return false;
  int lo = *sets[pivot].begin();
  std::vector<std::vector<int>> a, b;
  for (const auto& row : rows) (row[pivot] == lo ? a : b).push_back(row);
  return render_rows(skel, a, depth - 1, len_cap, parts) &&
         render_rows(skel, b, depth - 1, len_cap, parts);
}

// Union-of-products rendering for an explicitly listed class; empty string
// when the members do not factor within the part budget.
inline std::string render_members(const std::vector<Word>& members,
                                  std::optional<std::size_t> len_cap = std::nullopt) {
  std::map<std::vector<Letter>, std::vector<std::vector<int>>> groups;
  for (const Word& m : members) {
    std::vector<Letter> skel;
    std::vector<int> sizes;
    for (const Island& is : all_islands(m)) {
      skel.push_back(is.letter);
      sizes.push_back(static_cast<int>(is.length));
    }
    groups[skel].push_back(sizes);
  }
  std::vector<RenderPart> parts;
  for (auto& [skel, rows] : groups)
    if (!render_rows(skel, rows, 4, len_cap, parts)) return "";
  if (parts.empty()) return "1";
  std::sort(parts.begin(), parts.end(), [](const RenderPart& a, const RenderPart& b) {
    return shortlex_less(a.min, b.min);
  });
  std::string out;
  for (const RenderPart& p : parts) {
    if (!out.empty()) out += " | ";
    out += p.text;
  }
  return out;
}

}  // namespace detail

// Rendering of the class of `rep`. Product-shaped classes come out in the
// x / x x+ / x+ island notation; classes that are not island products are
// written "= <rep>", which parse_class accepts back.
inline std::string render_rep(const CongruenceKind& k, const Word& rep) {
  if (rep.empty()) return "1";
  if (k.mu_islands) {
    auto s = mu_shape(rep);
    if (s) return detail::render_shape(*s);
    return "= " + rep.str();
  }
  if (k.base != CongruenceKind::Base::NONE) {
    if (k.models.empty())
      return detail::render_shape(structural_shape(k.base, rep));
    // refined structural class: render only when it is a product of island
    // size sets within the canonical cap
    ClassShape base = structural_shape(k.base, rep);
    std::vector<Letter> letters;
    for (const Letter& a : content(rep)) letters.push_back(a);
    std::vector<std::vector<int>> vecs;
    for (const FiniteMonoid& m : k.models) vecs.push_back(eval_vector(m, rep, letters));
    std::vector<Word> members;
    for (const Word& cand : expand_shape(base, 3)) {
      bool ok = true;
      for (std::size_t i = 0; i < k.models.size() && ok; ++i)
        ok = eval_vector(k.models[i], cand, letters) == vecs[i];
      if (ok) members.push_back(cand);
    }
    std::string r = detail::render_members(members);
    if (!r.empty()) return r;
    return "= " + rep.str();
  }
  return "= " + rep.str();
}

inline ClassDescriptor class_of(const CongruenceKind& k, const Word& w) {
  Word rep = has_canonicalizer(k) ? canonical_rep(k, w) : w;
  return ClassDescriptor{k.name, rep, render_rep(k, rep)};
}

inline std::string render_class(const CongruenceKind& k, const ClassDescriptor& c) {
  return render_rep(k, c.rep);
}

// ---- parsing -------------------------------------------------------------------

// One island of a parsed class pattern: at least `min` copies, unbounded
// above when `open`.
struct IslandPattern {
  Letter letter;
  int min = 1;
  bool open = false;
};

using ClassPattern = std::vector<std::vector<IslandPattern>>;  // union branches

// Grammar:  class  := "1" | "=" word | group ("|" group)*
//           group  := token+
//           token  := letter ["+" | "*"]
// "x" is one copy, "x+" at least one, "x*" any number; adjacent tokens of the
// same letter merge into one island ("x x+" reads as at least two copies).
inline ClassPattern parse_class_pattern(std::string_view text) {
  auto fail = [&](std::size_t pos, const std::string& why) -> void {
    throw Error("PARSE_ERROR", why + " at position " + std::to_string(pos));
  };

  ClassPattern branches;
  std::vector<IslandPattern> cur;
  bool any_token = false;
  bool eq_form = false;
  std::size_t i = 0;
  auto push_island = [&](Letter a, int min, bool open) {
    if (!cur.empty() && cur.back().letter == a) {
      cur.back().min += min;
      cur.back().open = cur.back().open || open;
    } else {
      cur.push_back({a, min, open});
    }
  };
  while (i < text.size()) {
    if (text[i] == ' ' || text[i] == '\t') { ++i; continue; }
    if (text[i] == '|') {
      if (!any_token) fail(i, "empty union branch");
      branches.push_back(std::move(cur));
      cur.clear();
      any_token = false;
      ++i;
      continue;
    }
    if (text[i] == '=' && !any_token && branches.empty() && !eq_form) {
      eq_form = true;
      ++i;
      continue;
    }
    if (text[i] == '1' && (i + 1 == text.size() || text[i + 1] == ' ')) {
      if (any_token || eq_form) fail(i, "unexpected '1'");
      any_token = true;
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && text[j] != ' ' && text[j] != '\t' && text[j] != '|')
      ++j;
    std::string_view tok = text.substr(i, j - i);
    int min = 1;
    bool open = false;
    if (tok.back() == '+') { tok.remove_suffix(1); open = true; }
    else if (tok.back() == '*') { tok.remove_suffix(1); min = 0; open = true; }
    if (tok.empty()) fail(i, "dangling suffix");
    Letter a;
    try {
      a = parse_letter(tok);
    } catch (const Error&) {
      fail(i, "bad letter token '" + std::string(text.substr(i, j - i)) + "'");
    }
    if (eq_form && open) fail(i, "suffix not allowed after '='");
    push_island(a, min, open);
    any_token = true;
    i = j;
  }
  if (!any_token)
    fail(text.size(), branches.empty() ? "empty class expression" : "empty union branch");
  branches.push_back(std::move(cur));
  return branches;
}

inline Word pattern_min_word(const ClassPattern& p) {
  std::optional<Word> least;
  for (const auto& branch : p) {
    Word w;
    for (const IslandPattern& ip : branch)
      for (int c = 0; c < ip.min; ++c) w.push_back(ip.letter);
    if (!least || shortlex_less(w, *least)) least = w;
  }
  return *least;
}

// All words the pattern denotes with island sizes at most min+cap, for
// semantic comparisons of rendered classes.
inline std::set<Word> expand_pattern(const ClassPattern& p, int cap) {
  std::set<Word> out;
  for (const auto& branch : p) {
    std::vector<std::vector<int>> choices;
    for (const IslandPattern& ip : branch) {
      std::vector<int> c;
      int hi = ip.open ? std::max(ip.min, cap) : ip.min;
      for (int n = ip.min; n <= hi; ++n) c.push_back(n);
      choices.push_back(std::move(c));
    }
    std::vector<std::size_t> pick(choices.size(), 0);
    while (true) {
      Word w;
      for (std::size_t i = 0; i < choices.size(); ++i)
        for (int r = 0; r < choices[i][pick[i]]; ++r) w.push_back(branch[i].letter);
      out.insert(std::move(w));
      std::size_t i = 0;
      for (; i < choices.size(); ++i) {
        if (++pick[i] < choices[i].size()) break;
        pick[i] = 0;
      }
      if (i == choices.size()) break;
    }
  }
  return out;
}

inline ClassDescriptor parse_class(const CongruenceKind& k, std::string_view text) {
  return class_of(k, pattern_min_word(parse_class_pattern(text)));
}

// ---- operations on classes -----------------------------------------------------

inline ClassDescriptor class_product(const CongruenceKind& k,
                                     const ClassDescriptor& a,
                                     const ClassDescriptor& b) {
  if (!has_canonicalizer(k))
    throw Error("NO_CANONICALIZER", "class_product needs a canonical form for " + k.name);
  return class_of(k, a.rep * b.rep);
}

struct ClosureOptions {
  int island_cap = 3;      // expansion cap for island-product kinds
  int len_slack = 2;       // extra length for enumerated kinds (nu, eta)
  std::size_t max_classes = 10000;
};

namespace detail {

// all class members visible within the caps
inline std::vector<Word> class_members(const CongruenceKind& k, const Word& rep,
                                       const ClosureOptions& opt);

struct EnumGroups {
  std::vector<Word> words;                 // shortlex order
  std::map<Word, std::size_t> index;
  std::vector<int> group;                  // word -> group id
  std::vector<std::vector<std::size_t>> members;  // group id -> word indices
};

inline std::pair<std::uint64_t, std::uint64_t> vec_hash(const std::vector<int>& v) {
  std::uint64_t h1 = 1469598103934665603ull, h2 = 88172645463325252ull;
  for (int x : v) {
    h1 = (h1 ^ static_cast<std::uint64_t>(x + 1)) * 1099511628211ull;
    h2 = (h2 * 6364136223846793005ull) + static_cast<std::uint64_t>(x) + 1442695040888963407ull;
  }
  return {h1, h2};
}

// Enumerate every word over `letters` up to maxlen and partition into
// kind-classes. For nu a class is (ini, model vectors); for eta it is a
// connected component of the one-step rewrite graph intersected with model
// vectors. Bounded, so eta classes can in principle be split too finely; the
// length slack is part of the pinned tolerances.
inline EnumGroups enumerate_classes(const CongruenceKind& k,
                                    const std::vector<Letter>& letters,
                                    std::size_t maxlen) {
  double nodes = 1, pw = 1;
  for (std::size_t l = 1; l <= maxlen; ++l) {
    pw *= static_cast<double>(letters.size());
    nodes += pw;
  }
  double vec = 1;
  for (std::size_t i = 0; i < letters.size(); ++i)
    vec *= k.models.empty() ? 1.0 : static_cast<double>(k.models[0].size());
  if (nodes > 2e6 || nodes * vec > 6e9)
    throw Error("BUDGET_EXCEEDED", "class enumeration too large");

  EnumGroups eg;
  std::vector<std::size_t> tots;  // assignments per model
  std::vector<std::vector<std::vector<int>>> letter_vals;  // model -> letter -> value per assignment
  for (const FiniteMonoid& m : k.models) {
    std::size_t tot = 1;
    for (std::size_t i = 0; i < letters.size(); ++i) tot *= m.size();
    tots.push_back(tot);
    std::vector<std::vector<int>> vals(letters.size());
    for (std::size_t li = 0; li < letters.size(); ++li) {
      std::vector<int> v(tot);
      std::size_t period = 1;
      for (std::size_t i = 0; i < li; ++i) period *= m.size();
      for (std::size_t idx = 0; idx < tot; ++idx)
        v[idx] = static_cast<int>((idx / period) % m.size());
      vals[li] = std::move(v);
    }
    letter_vals.push_back(std::move(vals));
  }

  // depth-first walk carrying one evaluation vector per model per depth, so
  // memory stays linear in maxlen rather than in the word count
  std::vector<std::vector<std::vector<int>>> stack(maxlen + 1);
  for (std::size_t mi = 0; mi < k.models.size(); ++mi)
    stack[0].emplace_back(tots[mi], k.models[mi].one());
  for (std::size_t d = 1; d <= maxlen; ++d)
    for (std::size_t mi = 0; mi < k.models.size(); ++mi)
      stack[d].emplace_back(tots[mi]);

  std::vector<std::pair<Word, std::vector<std::pair<std::uint64_t, std::uint64_t>>>> listed;
  Word cur;
  auto visit = [&](std::size_t depth) {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> hs;
    for (const auto& v : stack[depth]) hs.push_back(vec_hash(v));
    listed.emplace_back(cur, std::move(hs));
  };
  auto dfs = [&](auto&& self, std::size_t depth) -> void {
    visit(depth);
    if (depth == maxlen) return;
    for (std::size_t li = 0; li < letters.size(); ++li) {
      cur.push_back(letters[li]);
      for (std::size_t mi = 0; mi < k.models.size(); ++mi) {
        const auto& vals = letter_vals[mi][li];
        const FiniteMonoid& m = k.models[mi];
        for (std::size_t idx = 0; idx < tots[mi]; ++idx)
          stack[depth + 1][mi][idx] = m.mul(stack[depth][mi][idx], vals[idx]);
      }
      self(self, depth + 1);
      cur = slice(cur, 0, cur.size() - 1);
    }
  };
  dfs(dfs, 0);

  eg.words.reserve(listed.size());
  for (auto& [w, hs] : listed) {
    eg.index[w] = eg.words.size();
    eg.words.push_back(w);
  }

  std::vector<int> comp(eg.words.size());
  if (k.ini_decides) {
    std::map<std::pair<std::string, std::vector<std::pair<std::uint64_t, std::uint64_t>>>, int> key_to_id;
    for (std::size_t i = 0; i < eg.words.size(); ++i) {
      auto key = std::make_pair(ini(eg.words[i]).str(), listed[i].second);
      auto [it, fresh] = key_to_id.emplace(key, static_cast<int>(key_to_id.size()));
      comp[i] = it->second;
    }
  } else {
    // union-find over single rewrite steps, then refine by model vectors
    std::vector<std::size_t> parent(eg.words.size());
    for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = i;
    auto find = [&](std::size_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (std::size_t i = 0; i < eg.words.size(); ++i) {
      for (const Identity& ax : k.equations->identities) {
        for (const Word& s : successors(eg.words[i], ax, maxlen)) {
          auto it = eg.index.find(s);
          if (it == eg.index.end()) continue;
          std::size_t a = find(i), b = find(it->second);
          if (a != b) parent[a] = b;
        }
      }
    }
    std::map<std::pair<std::size_t, std::vector<std::pair<std::uint64_t, std::uint64_t>>>, int> key_to_id;
    for (std::size_t i = 0; i < eg.words.size(); ++i) {
      auto key = std::make_pair(find(i), listed[i].second);
      auto [it, fresh] = key_to_id.emplace(key, static_cast<int>(key_to_id.size()));
      comp[i] = it->second;
    }
  }
  eg.group = std::move(comp);
  int ngroups = 0;
  for (int g : eg.group) ngroups = std::max(ngroups, g + 1);
  eg.members.resize(ngroups);
  for (std::size_t i = 0; i < eg.words.size(); ++i)
    eg.members[eg.group[i]].push_back(i);
  return eg;
}

inline std::vector<Word> class_members(const CongruenceKind& k, const Word& rep,
                                       const ClosureOptions& opt) {
  if (k.mu_islands) {
    auto s = mu_shape(rep);
    if (!s) throw Error("NO_CANONICALIZER", "mu member expansion outside domain");
    return expand_shape(*s, opt.island_cap);
  }
  if (k.base != CongruenceKind::Base::NONE) {
    ClassShape base = structural_shape(k.base, rep);
    std::vector<Word> all = expand_shape(base, opt.island_cap);
    if (k.models.empty()) return all;
    std::vector<Letter> letters;
    for (const Letter& a : content(rep)) letters.push_back(a);
    std::vector<std::vector<int>> vecs;
    for (const FiniteMonoid& m : k.models) vecs.push_back(eval_vector(m, rep, letters));
    std::vector<Word> out;
    for (const Word& cand : all) {
      bool ok = true;
      for (std::size_t i = 0; i < k.models.size() && ok; ++i)
        ok = eval_vector(k.models[i], cand, letters) == vecs[i];
      if (ok) out.push_back(cand);
    }
    return out;
  }
  throw Error("NO_CANONICALIZER", "no member expansion for " + k.name);
}

}  // namespace detail

// True when a member of `lo` occurs as a factor of a member of `hi`, with
// members enumerated up to the caps. One-sided: a false answer means "not
// found within the caps".
inline bool class_leq(const CongruenceKind& k, const ClassDescriptor& lo,
                      const ClassDescriptor& hi, const ClosureOptions& opt = {}) {
  std::vector<Word> members;
  if (k.base != CongruenceKind::Base::NONE || k.mu_islands) {
    members = detail::class_members(k, hi.rep, opt);
  } else {
    // enumerated kinds: walk the hi class inside the bounded word universe
    std::vector<Letter> letters;
    for (const Letter& a : content(hi.rep)) letters.push_back(a);
    auto eg = detail::enumerate_classes(k, letters, hi.rep.size() + opt.len_slack);
    auto it = eg.index.find(hi.rep);
    if (it == eg.index.end()) return false;
    for (std::size_t wi : eg.members[eg.group[it->second]])
      members.push_back(eg.words[wi]);
  }
  std::set<Word> factors;
  for (const Word& m : members)
    for (std::size_t pos = 0; pos <= m.size(); ++pos)
      for (std::size_t len = 0; len + pos <= m.size(); ++len)
        factors.insert(slice(m, pos, len));
  for (const Word& f : factors)
    if (equiv(k, f, lo.rep) == EquivResult::EQUIV) return true;
  return false;
}

// Least downward-closed set of classes containing the seeds, where going down
// means taking factors of members. Island-product kinds run a rep-level
// fixpoint; nu and eta work inside the bounded word universe around the
// seeds.
inline ClassSet closure(const CongruenceKind& k,
                        const std::vector<ClassDescriptor>& seeds,
                        const ClosureOptions& opt = {}) {
  ClassSet out;
  out.kind = k.name;

  if (k.base != CongruenceKind::Base::NONE || k.mu_islands) {
    std::set<Word> done;
    std::queue<Word> todo;
    std::map<Word, Word> canon;
    auto canon_of = [&](const Word& w) {
      auto it = canon.find(w);
      if (it == canon.end()) it = canon.emplace(w, canonical_rep(k, w)).first;
      return it->second;
    };
    for (const auto& s : seeds) todo.push(canon_of(s.rep));
    while (!todo.empty()) {
      Word rep = todo.front();
      todo.pop();
      if (!done.insert(rep).second) continue;
      if (done.size() > opt.max_classes)
        throw Error("BUDGET_EXCEEDED", "closure exceeded max_classes");
      std::set<Word> factors;
      for (const Word& m : detail::class_members(k, rep, opt))
        for (std::size_t pos = 0; pos <= m.size(); ++pos)
          for (std::size_t len = 0; len + pos <= m.size(); ++len)
            factors.insert(slice(m, pos, len));
      for (const Word& f : factors) {
        Word r = canon_of(f);
        if (!done.count(r)) todo.push(r);
      }
    }
    for (const Word& rep : done)
      out.classes.push_back(ClassDescriptor{k.name, rep, render_rep(k, rep)});
  } else if (k.equations) {
    std::set<Letter> alpha;
    std::size_t maxrep = 0;
    for (const auto& s : seeds) {
      for (const Letter& a : s.rep) alpha.insert(a);
      maxrep = std::max(maxrep, s.rep.size());
    }
    std::vector<Letter> letters(alpha.begin(), alpha.end());
    auto eg = detail::enumerate_classes(k, letters, maxrep + opt.len_slack);

    std::set<int> done;
    std::queue<int> todo;
    for (const auto& s : seeds) {
      auto it = eg.index.find(s.rep);
      if (it == eg.index.end())
        throw Error("INVALID_PARAMS", "seed rep escapes the enumeration bound");
      todo.push(eg.group[it->second]);
    }
    while (!todo.empty()) {
      int g = todo.front();
      todo.pop();
      if (!done.insert(g).second) continue;
      std::set<int> next;
      for (std::size_t wi : eg.members[g]) {
        const Word& m = eg.words[wi];
        for (std::size_t pos = 0; pos <= m.size(); ++pos)
          for (std::size_t len = 0; len + pos <= m.size(); ++len) {
            auto it = eg.index.find(slice(m, pos, len));
            if (it != eg.index.end()) next.insert(eg.group[it->second]);
          }
      }
      for (int h : next)
        if (!done.count(h)) todo.push(h);
    }
    for (int g : done) {
      std::vector<Word> members;
      for (std::size_t wi : eg.members[g]) members.push_back(eg.words[wi]);
      Word rep = members.front();
      for (const Word& m : members)
        if (shortlex_less(m, rep)) rep = m;
      std::string sig = detail::render_members(members, maxrep + opt.len_slack);
      if (sig.empty()) sig = "= " + rep.str();
      out.classes.push_back(ClassDescriptor{k.name, rep, sig});
    }
  } else {
    throw Error("INVALID_PARAMS", "closure undefined for " + k.name);
  }

  std::sort(out.classes.begin(), out.classes.end());
  return out;
}

}  // namespace mvw
