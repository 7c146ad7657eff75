#pragma once

// Equational deduction: single-step deducibility, chain verification, and a
// bounded bidirectional search prover with countermodel refutation.

#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <unordered_map>
#include <vector>

#include "mvw/identity.hpp"
#include "mvw/monoid.hpp"
#include "mvw/word.hpp"

namespace mvw {

struct ProofStep {
  Word from, to;
  Identity axiom;
  Word a, b;
  Subst phi;
  bool forward = true;  // true: from = a phi(lhs) b, to = a phi(rhs) b

  std::string str() const {
    std::string s = from.str() + "  ->  " + to.str() + "   by " +
                    (axiom.name.empty() ? axiom.str() : axiom.name);
    s += "  [a=" + a.str() + ", b=" + b.str() + ", phi=" + phi.str() +
         (forward ? "" : ", reversed") + "]";
    return s;
  }
};

namespace detail {

// Enumerates all (phi, split) with w = a phi(pattern) b for a fixed a-prefix,
// i.e. matches `pattern` against w[from..] allowing a trailing remainder b.
// Bindings are explored with shorter images first, so the overall enumeration
// (outer loop: |a| ascending) yields solutions in a stable canonical order.
// on_match(phi, end) is called with end = position right after phi(pattern);
// returns true to continue enumeration, false to stop.
inline bool match_pattern(const Word& w, std::size_t from, const Word& pattern, Subst& phi,
                          std::size_t pat_idx, std::size_t pos,
                          const std::function<bool(const Subst&, std::size_t)>& on_match) {
  if (pat_idx == pattern.size()) return on_match(phi, pos);
  Letter x = pattern[pat_idx];
  if (const Word* img = phi.lookup(x)) {
    // already bound: the image must literally occur here
    if (pos + img->size() > w.size()) return true;
    for (std::size_t i = 0; i < img->size(); ++i)
      if (!(w[pos + i] == (*img)[i])) return true;
    return match_pattern(w, from, pattern, phi, pat_idx + 1, pos + img->size(), on_match);
  }
  for (std::size_t len = 0; pos + len <= w.size(); ++len) {
    phi.set(x, slice(w, pos, len));
    if (!match_pattern(w, from, pattern, phi, pat_idx + 1, pos + len, on_match)) {
      phi.unset(x);
      return false;
    }
    phi.unset(x);
  }
  return true;
}

// All factorizations w = a phi(src) b; calls f(a, phi, b). Stops early on false.
inline void for_matches(const Word& w, const Word& src,
                        const std::function<bool(const Word&, const Subst&, const Word&)>& f) {
  for (std::size_t alen = 0; alen <= w.size(); ++alen) {
    Word a = slice(w, 0, alen);
    Subst phi;
    bool keep = match_pattern(w, alen, src, phi, 0, alen,
                              [&](const Subst& ph, std::size_t end) {
                                return f(a, ph, slice(w, end, w.size() - end));
                              });
    if (!keep) return;
  }
}

}  // namespace detail

// Single application of ax (in either direction): finds a, b and a possibly
// erasing substitution with {u, v} = {a phi(lhs) b, a phi(rhs) b}. Returns the
// first solution in canonical order, or nothing.
inline std::optional<ProofStep> directly_deducible(const Word& u, const Word& v,
                                                   const Identity& ax) {
  std::optional<ProofStep> found;
  auto attempt = [&](const Word& src, const Word& dst, bool forward) {
    detail::for_matches(u, src, [&](const Word& a, const Subst& phi, const Word& b) {
      Word img = a * phi.apply(dst) * b;
      if (img == v) {
        found = ProofStep{u, v, ax, a, b, phi, forward};
        return false;
      }
      return true;
    });
  };
  attempt(ax.lhs, ax.rhs, true);
  if (!found) attempt(ax.rhs, ax.lhs, false);
  return found;
}

// All words reachable from w by one application of ax, in either direction.
inline std::vector<Word> successors(const Word& w, const Identity& ax,
                                    std::size_t max_len = SIZE_MAX) {
  std::vector<Word> out;
  auto run = [&](const Word& src, const Word& dst) {
    detail::for_matches(w, src, [&](const Word& a, const Subst& phi, const Word& b) {
      Word img = a * phi.apply(dst) * b;
      if (img.size() <= max_len && !(img == w)) out.push_back(std::move(img));
      return true;
    });
  };
  run(ax.lhs, ax.rhs);
  run(ax.rhs, ax.lhs);
  std::sort(out.begin(), out.end(), shortlex_less);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// ---- chains --------------------------------------------------------------------

struct Chain {
  std::vector<Word> words;
  std::vector<std::string> labels;  // labels[i] names the axiom for step i (may be empty)

  std::string str() const {
    std::string s;
    for (std::size_t i = 0; i < words.size(); ++i) {
      if (i) s += "  ~  ";
      s += words[i].str();
      if (i && !labels[i - 1].empty()) s += " (" + labels[i - 1] + ")";
    }
    return s;
  }
};

struct ChainReport {
  bool ok = true;
  std::size_t failed_step = 0;  // 1-based index of the first failing step
  std::string message;
  std::vector<ProofStep> steps;
};

inline ChainReport verify_chain(const Chain& chain, const AxiomSystem& axioms) {
  if (chain.words.empty()) throw Error("PARSE_ERROR", "empty chain");
  ChainReport rep;
  for (std::size_t i = 0; i + 1 < chain.words.size(); ++i) {
    const std::string& label = i < chain.labels.size() ? chain.labels[i] : std::string();
    std::optional<ProofStep> step;
    if (!label.empty()) {
      const Identity* ax = axioms.find(label);
      if (!ax) throw Error("UNKNOWN_AXIOM", "chain step " + std::to_string(i + 1) +
                                                ": no axiom named '" + label + "'");
      step = directly_deducible(chain.words[i], chain.words[i + 1], *ax);
    } else {
      for (const Identity& ax : axioms.identities)
        if ((step = directly_deducible(chain.words[i], chain.words[i + 1], ax))) break;
    }
    if (!step) {
      rep.ok = false;
      rep.failed_step = i + 1;
      rep.message = "step " + std::to_string(i + 1) + ": " + chain.words[i].str() + " ~ " +
                    chain.words[i + 1].str() +
                    (label.empty() ? " not deducible from any axiom"
                                   : " not directly deducible via '" + label + "'");
      return rep;
    }
    rep.steps.push_back(std::move(*step));
  }
  return rep;
}

// Chain file: '#' comments; optional inline axioms as
//   @axiom <identity dsl> # <name>
// then one word per line, every line after the first carrying '; by <label>'.
struct ChainFile {
  Chain chain;
  AxiomSystem axioms;
};

inline ChainFile parse_chain_file(const std::string& text) {
  ChainFile cf;
  cf.axioms.name = "inline";
  std::istringstream is(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    std::string body = line;
    std::string name;
    if (auto h = body.find('#'); h != std::string::npos) {
      name = body.substr(h + 1);
      body = body.substr(0, h);
    }
    auto trim = [](std::string& s) {
      while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
      while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
    };
    trim(body);
    trim(name);
    if (body.empty()) continue;
    if (body.rfind("@axiom", 0) == 0) {
      cf.axioms.identities.push_back(Identity::parse(body.substr(6), name));
      continue;
    }
    std::string label;
    if (auto sc = body.find(';'); sc != std::string::npos) {
      std::string tail = body.substr(sc + 1);
      body = body.substr(0, sc);
      trim(tail);
      if (tail.rfind("by ", 0) != 0)
        throw Error("PARSE_ERROR", "chain line " + std::to_string(lineno) + ": expected '; by <label>'");
      label = tail.substr(3);
      trim(label);
      trim(body);
    } else if (!cf.chain.words.empty()) {
      label = "";  // unlabeled step: any axiom may justify it
    }
    if (!cf.chain.words.empty()) cf.chain.labels.push_back(label);
    cf.chain.words.push_back(Word::parse(body));
  }
  if (cf.chain.words.empty()) throw Error("PARSE_ERROR", "chain file has no words");
  return cf;
}

inline std::string render_chain_file(const ChainFile& cf) {
  std::string out;
  for (const Identity& ax : cf.axioms.identities) {
    out += "@axiom " + ax.str();
    if (!ax.name.empty()) out += " # " + ax.name;
    out += "\n";
  }
  for (std::size_t i = 0; i < cf.chain.words.size(); ++i) {
    out += cf.chain.words[i].str();
    if (i && !cf.chain.labels[i - 1].empty()) out += " ; by " + cf.chain.labels[i - 1];
    out += "\n";
  }
  return out;
}

// ---- prover ----------------------------------------------------------------------

enum class ProveStatus { PROVED, REFUTED, INCONCLUSIVE };

struct ProveResult {
  ProveStatus status = ProveStatus::INCONCLUSIVE;
  Chain chain;                                 // when PROVED
  const FiniteMonoid* countermodel = nullptr;  // when REFUTED
  SatisfactionReport witness;                  // refuting assignment
  std::string note;
};

struct ProveConfig {
  std::size_t max_len_slack = 4;      // explored length = max side length + slack
  std::size_t max_len_abs = 0;        // if nonzero, hard cap instead
  std::size_t max_nodes = 1000000;
  const std::vector<FiniteMonoid>* library = nullptr;
};

namespace detail {

struct BfsSide {
  std::unordered_map<Word, Word> parent;       // word -> predecessor (empty for root)
  std::unordered_map<Word, std::string> via;   // word -> axiom label used to reach it
  std::deque<Word> frontier;
};

inline std::vector<Word> unwind(const BfsSide& side, Word at) {
  std::vector<Word> path{at};
  while (true) {
    auto it = side.parent.find(path.back());
    if (it == side.parent.end() || it->second == path.back()) break;
    path.push_back(it->second);
  }
  return path;
}

}  // namespace detail

// Bidirectional breadth-first search for a derivation goal.lhs ~* goal.rhs.
// An identity holds in var(axioms) v var(M_1) v ... iff it is deducible from
// the axioms and every generator M_i satisfies it, so REFUTED comes either
// from a generator or from a library monoid satisfying all axioms.
inline ProveResult prove(const VarietySpec& var, const Identity& goal, ProveConfig cfg = {}) {
  const AxiomSystem& sys = var.axioms;
  ProveResult res;
  if (goal.trivial()) {
    res.status = ProveStatus::PROVED;
    res.chain.words = {goal.lhs};
    return res;
  }

  for (const FiniteMonoid& m : var.generators) {
    SatisfactionReport r = satisfies(m, goal);
    if (!r.holds) {
      res.status = ProveStatus::REFUTED;
      res.countermodel = &m;
      res.witness = std::move(r);
      res.note = "variety generator " + m.provenance() + " violates the goal";
      return res;
    }
  }
  if (cfg.library)
    for (const FiniteMonoid& m : *cfg.library) {
      bool models = true;
      for (const Identity& ax : sys.identities)
        if (!satisfies(m, ax).holds) {
          models = false;
          break;
        }
      if (!models) continue;
      SatisfactionReport r = satisfies(m, goal);
      if (!r.holds) {
        res.status = ProveStatus::REFUTED;
        res.countermodel = &m;
        res.witness = std::move(r);
        res.note = "countermodel " + m.provenance();
        return res;
      }
    }

  std::size_t max_len = cfg.max_len_abs
                            ? cfg.max_len_abs
                            : std::max(goal.lhs.size(), goal.rhs.size()) + cfg.max_len_slack;

  detail::BfsSide L, R;
  L.parent[goal.lhs] = goal.lhs;
  L.frontier.push_back(goal.lhs);
  R.parent[goal.rhs] = goal.rhs;
  R.frontier.push_back(goal.rhs);

  // For join systems the deduction side only uses identities; the generator
  // check above already rules out goals failing in a generator monoid.
  std::size_t nodes = 2;
  auto expand = [&](detail::BfsSide& self, detail::BfsSide& other) -> std::optional<std::pair<Word, Word>> {
    std::size_t layer = self.frontier.size();
    for (std::size_t i = 0; i < layer && nodes < cfg.max_nodes; ++i) {
      Word w = std::move(self.frontier.front());
      self.frontier.pop_front();
      for (const Identity& ax : sys.identities) {
        for (Word& nxt : successors(w, ax, max_len)) {
          if (self.parent.count(nxt)) continue;
          self.parent.emplace(nxt, w);
          self.via.emplace(nxt, ax.name.empty() ? ax.str() : ax.name);
          ++nodes;
          if (other.parent.count(nxt)) return std::make_pair(nxt, w);
          self.frontier.push_back(std::move(nxt));
        }
      }
    }
    return std::nullopt;
  };

  while (!L.frontier.empty() && !R.frontier.empty() && nodes < cfg.max_nodes) {
    auto hit = L.frontier.size() <= R.frontier.size() ? expand(L, R) : expand(R, L);
    if (hit) {
      const Word& meet = hit->first;
      std::vector<Word> left = detail::unwind(L, meet);   // meet ... lhs
      std::vector<Word> right = detail::unwind(R, meet);  // meet ... rhs
      res.status = ProveStatus::PROVED;
      for (auto it = left.rbegin(); it != left.rend(); ++it) res.chain.words.push_back(*it);
      for (std::size_t i = 1; i < right.size(); ++i) res.chain.words.push_back(right[i]);
      // labels: walk pairs and name the axiom recorded on whichever side knew it
      for (std::size_t i = 0; i + 1 < res.chain.words.size(); ++i) {
        auto a = L.via.find(res.chain.words[i + 1]);
        auto b = R.via.find(res.chain.words[i]);
        res.chain.labels.push_back(a != L.via.end() && L.parent.at(res.chain.words[i + 1]) == res.chain.words[i]
                                       ? a->second
                                       : (b != R.via.end() ? b->second : ""));
      }
      return res;
    }
  }
  res.note = nodes >= cfg.max_nodes ? "node budget exhausted" : "search space exhausted up to bound";
  return res;
}

}  // namespace mvw
