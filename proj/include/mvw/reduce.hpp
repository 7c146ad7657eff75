#pragma once

// Normalizer for identities whose sides contain exactly one multiple letter:
//   x^{e_0} t_1 x^{e_1} ... t_r x^{e_r}  =  x^{f_0} t_1 x^{f_1} ... t_r x^{f_r}
// Any such identity is, within A = var{x^2 = x^3, x^2yx = x^2yx^2}, equivalent
// to a finite subset of
//   Delta = { (4): yx^2 = xyx^2,  (5): x^2y = x^2yx,  (9): x^2yzx = x^2yxzx,
//             beta_n, gamma_n }.
// reduce_one_letter computes that subset constructively and (by default)
// certifies it with a bidirectional prover round trip.

#include <algorithm>
#include <numeric>
#include <set>
#include <utility>
#include <vector>

#include "prover.hpp"

namespace mvw {

inline Identity delta_4() { return Id("y x^2 = x y x^2", "(4)"); }
inline Identity delta_5() { return Id("x^2 y = x^2 y x", "(5)"); }
inline Identity delta_9() { return Id("x^2 y z x = x^2 y x z x", "(9)"); }

namespace detail {

inline Word one_letter_word(const std::vector<int>& e) {
  Word w;
  Letter x = lt("x");
  for (int k = 0; k < e[0]; ++k) w.push_back(x);
  for (size_t i = 1; i < e.size(); ++i) {
    w.push_back(Letter{'t', static_cast<int16_t>(i), false});
    for (int k = 0; k < e[i]; ++k) w.push_back(x);
  }
  return w;
}

}  // namespace detail

// beta_n: x t1 x ... tn x = x t1 x ... x tn x^2
inline Identity beta_n(int n) {
  if (n < 1) throw Error("INVALID_PARAMS", "beta_n needs n >= 1");
  std::vector<int> lhs(static_cast<size_t>(n) + 1, 1), rhs = lhs;
  rhs[static_cast<size_t>(n)] = 2;
  return Identity{detail::one_letter_word(lhs), detail::one_letter_word(rhs),
                  "beta_" + std::to_string(n)};
}

// gamma_n: x t1 x ... t_{n-1} x^2 tn x = x t1 x ... t_{n-1} x tn x^2
inline Identity gamma_n(int n) {
  if (n < 1) throw Error("INVALID_PARAMS", "gamma_n needs n >= 1");
  std::vector<int> lhs(static_cast<size_t>(n) + 1, 1), rhs = lhs;
  lhs[static_cast<size_t>(n) - 1] = 2;
  rhs[static_cast<size_t>(n)] = 2;
  return Identity{detail::one_letter_word(lhs), detail::one_letter_word(rhs),
                  "gamma_" + std::to_string(n)};
}

inline AxiomSystem a_axioms() {
  AxiomSystem ax{"A", {}};
  ax.add(Id("x^2 = x^3", "x2=x3"));
  ax.add(Id("x^2 y x = x^2 y x^2", "(8)"));
  return ax;
}

struct OneLetterForm {
  Letter x;
  std::vector<Letter> ts;  // shared simple-letter skeleton, in order
  std::vector<int> e, f;   // island exponents, size ts.size() + 1
};

inline OneLetterForm parse_one_letter_form(const Identity& id) {
  WordStats su = word_stats(id.lhs), sv = word_stats(id.rhs);
  if (su.multiple.size() != 1 || sv.multiple.size() != 1 ||
      su.multiple[0] != sv.multiple[0])
    throw Error("NOT_ONE_LETTER_FORM",
                "each side needs the same single multiple letter");
  OneLetterForm form;
  form.x = su.multiple[0];
  auto extract = [&](const Word& w, std::vector<Letter>& seps,
                     std::vector<int>& exps) {
    exps.assign(1, 0);
    for (Letter a : w) {
      if (a == form.x) {
        ++exps.back();
      } else {
        seps.push_back(a);
        exps.push_back(0);
      }
    }
  };
  std::vector<Letter> tu, tv;
  extract(id.lhs, tu, form.e);
  extract(id.rhs, tv, form.f);
  if (tu != tv)
    throw Error("NOT_ONE_LETTER_FORM", "simple-letter skeletons differ");
  std::set<Letter> seen;
  for (Letter t : tu)
    if (!seen.insert(t).second)
      throw Error("NOT_ONE_LETTER_FORM",
                  "separator " + t.str() + " occurs more than once");
  form.ts = tu;
  int se = std::accumulate(form.e.begin(), form.e.end(), 0);
  int sf = std::accumulate(form.f.begin(), form.f.end(), 0);
  if (se < 2 || sf < 2)
    throw Error("NOT_ONE_LETTER_FORM",
                "the multiple letter must occur at least twice per side");
  return form;
}

namespace detail {

using ExpVec = std::vector<int>;

// Modulo {x^2=x^3, x^2yx=x^2yx^2}: the first island of size >= 2 collapses
// to exactly 2 and every later island to at most 1.
inline void normalize_islands(ExpVec& e) {
  size_t i = 0;
  while (i < e.size() && e[i] < 2) ++i;
  if (i == e.size()) return;
  e[i] = 2;
  for (size_t j = i + 1; j < e.size(); ++j) e[j] = std::min(e[j], 1);
}

// Delete separator t_k (1-based), merging island k into island k-1.
inline ExpVec drop_sep(ExpVec e, size_t k) {
  e[k - 1] += e[k];
  e.erase(e.begin() + static_cast<long>(k));
  return e;
}

// Delta keys ordered (4) < (5) < (9) < beta_n < gamma_n.
enum DeltaKind { kD4, kD5, kD9, kBeta, kGamma };
using DeltaKey = std::pair<int, int>;

inline void reduce_exponents(ExpVec e, ExpVec f, std::set<DeltaKey>& out) {
  // efficiency: drop separators flanked by empty islands on both sides
  for (size_t i = 0; i + 1 < e.size();) {
    if (e[i] == 0 && f[i] == 0) {
      size_t k = i + 1;
      e = drop_sep(std::move(e), k);
      f = drop_sep(std::move(f), k);
    } else {
      ++i;
    }
  }
  while (e.size() > 1 && e.back() == 0 && f.back() == 0) {
    e = drop_sep(std::move(e), e.size() - 1);
    f = drop_sep(std::move(f), f.size() - 1);
  }
  normalize_islands(e);
  normalize_islands(f);
  if (e == f) return;
  size_t r = e.size() - 1;

  bool zero = false;
  for (size_t i = 0; i <= r; ++i) zero |= (e[i] == 0 || f[i] == 0);

  if (!zero) {
    // Case 1: all islands present; each side carries at most one 2
    auto two_at = [&](const ExpVec& v) {
      for (size_t i = 0; i <= r; ++i)
        if (v[i] == 2) return static_cast<long>(i);
      return -1L;
    };
    long m = two_at(e), k = two_at(f);
    if (m < 0) std::swap(m, k);
    if (k < 0) {
      // one side is x t1 x ... tr x, the other has its 2 at island m
      out.insert({kBeta, static_cast<int>(r)});
      if (m < static_cast<long>(r)) out.insert({kGamma, static_cast<int>(m) + 1});
    } else {
      out.insert({kGamma, static_cast<int>(std::min(m, k)) + 1});
    }
    return;
  }

  if (e[0] > 0 && f[0] > 0) {
    // Case 2.1: leading islands present; kill the leftmost missing island
    size_t k = 1;
    while (e[k] != 0 && f[k] != 0) ++k;
    if (e[k] != 0) std::swap(e, f);  // now e[k] == 0, f[k] >= 1
    out.insert((e[r] > 0 && f[r] > 0) ? DeltaKey{kD9, 0} : DeltaKey{kD5, 0});
    reduce_exponents(drop_sep(e, k), drop_sep(f, k), out);
    ExpVec u(r + 1, 1);
    for (size_t i = 0; i + 1 < k; ++i) u[i] = f[i];
    u[k - 1] = 2;
    reduce_exponents(std::move(u), f, out);
    return;
  }

  // Case 2.2: a leading island is missing
  if (e[0] != 0) std::swap(e, f);  // now e[0] == 0, f[0] > 0 by efficiency
  if (r == 1 && f[1] == 0) {
    // t1 x^2 = x^2 t1 falls outside the generic recursion
    out.insert({kD4, 0});
    out.insert({kD5, 0});
    return;
  }
  if (f[1] > 0) {
    out.insert({kD4, 0});
    reduce_exponents(drop_sep(e, 1), drop_sep(f, 1), out);
    ExpVec u = f;
    u[0] = 1;
    u[1] = 2;
    reduce_exponents(std::move(u), f, out);
  } else {
    reduce_exponents(drop_sep(e, 2), drop_sep(f, 2), out);
    ExpVec vp(r + 1, 0);
    vp[2] = e[1] + e[2];
    for (size_t i = 3; i <= r; ++i) vp[i] = e[i];
    reduce_exponents(drop_sep(e, 1), drop_sep(vp, 1), out);
  }
}

inline Identity materialize(const DeltaKey& key) {
  switch (key.first) {
    case kD4: return delta_4();
    case kD5: return delta_5();
    case kD9: return delta_9();
    case kBeta: return beta_n(key.second);
    default: return gamma_n(key.second);
  }
}

}  // namespace detail

struct ReduceOptions {
  bool verify = true;
  ProveConfig prove_cfg{};
};

inline std::vector<Identity> reduce_one_letter(const Identity& id,
                                               ReduceOptions opt = {}) {
  OneLetterForm form = parse_one_letter_form(id);
  std::set<detail::DeltaKey> keys;
  if (!id.trivial()) detail::reduce_exponents(form.e, form.f, keys);
  std::vector<Identity> delta;
  for (const auto& k : keys) delta.push_back(detail::materialize(k));

  if (opt.verify && !id.trivial()) {
    AxiomSystem fwd = a_axioms();
    for (const Identity& d : delta) fwd.add(d);
    ProveResult pr = prove(fwd, id, opt.prove_cfg);
    if (pr.status != ProveStatus::PROVED)
      throw Error("ROUND_TRIP_FAILED",
                  "A + Delta subset does not recover " + id.str() +
                      " within budget (" + pr.note + ")");
    AxiomSystem back = a_axioms();
    back.add(Identity{id.lhs, id.rhs, "input"});
    for (const Identity& d : delta) {
      ProveResult br = prove(back, d, opt.prove_cfg);
      if (br.status != ProveStatus::PROVED)
        throw Error("ROUND_TRIP_FAILED",
                    "A + input does not recover " + d.name + " (" + br.note + ")");
    }
  }
  return delta;
}

// Drops simple letters whose flanking blocks are empty on both sides.
inline Identity efficient_form(const Identity& id) {
  auto skeleton = [](const Word& w) {
    WordStats st = word_stats(w);
    std::set<Letter> simple(st.simple.begin(), st.simple.end());
    std::vector<Letter> seq;
    for (Letter a : w)
      if (simple.count(a)) seq.push_back(a);
    return seq;
  };
  Word u = id.lhs, v = id.rhs;
  std::vector<Letter> sk = skeleton(u);
  if (sk != skeleton(v))
    throw Error("SKELETON_MISMATCH", "simple-letter skeletons differ");

  auto blocks_of = [](const Word& w, const std::vector<Letter>& seps) {
    std::set<Letter> sepset(seps.begin(), seps.end());
    std::vector<Word> blocks(1);
    for (Letter a : w) {
      if (sepset.count(a))
        blocks.emplace_back();
      else
        blocks.back().push_back(a);
    }
    return blocks;
  };

  bool changed = true;
  while (changed) {
    changed = false;
    sk = skeleton(u);
    if (sk.empty()) break;
    std::vector<Word> bu = blocks_of(u, sk), bv = blocks_of(v, sk);
    size_t r = sk.size();
    for (size_t i = 0; i <= r; ++i) {
      if (!bu[i].empty() || !bv[i].empty()) continue;
      Letter victim = (i < r) ? sk[i] : sk[r - 1];
      Word u2 = delete_letters(u, {victim});
      Word v2 = delete_letters(v, {victim});
      bool trivializes = (u != v) && (u2 == v2);
      bool vanishes = u2.empty() && v2.empty();
      if (trivializes || vanishes) continue;
      u = u2;
      v = v2;
      changed = true;
      break;
    }
  }
  return Identity{u, v, id.name};
}

}  // namespace mvw
