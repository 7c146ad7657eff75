#pragma once

// Rees quotients of the quotient monoid X*/alpha. The nonzero elements are the
// classes of a finite downward-closed class set; products whose class falls
// outside the set collapse to 0.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "mvw/congruence.hpp"
#include "mvw/monoid.hpp"

namespace mvw {

inline FiniteMonoid build_rees_alpha(const CongruenceKind& k,
                                     const std::vector<ClassDescriptor>& seeds,
                                     const ClosureOptions& opt = {},
                                     std::string provenance = "") {
  if (seeds.empty())
    throw Error("INVALID_PARAMS", "build_rees_alpha needs at least one seed class");
  if (!has_canonicalizer(k))
    throw Error("NO_CANONICALIZER", "build_rees_alpha needs canonical forms for " + k.name);

  ClassSet cs;
  try {
    cs = closure(k, seeds, opt);
  } catch (const Error& e) {
    if (e.code == "BUDGET_EXCEEDED")
      throw Error("NONTERMINATION",
                  "class closure exceeded " + std::to_string(opt.max_classes) + " classes");
    throw;
  }

  std::map<Word, int> index;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < cs.classes.size(); ++i) {
    index.emplace(cs.classes[i].rep, static_cast<int>(i));
    labels.push_back(cs.classes[i].signature);
  }
  const int zero = static_cast<int>(cs.classes.size());
  labels.push_back("0");

  const int n = zero + 1;
  std::vector<int> table(static_cast<std::size_t>(n) * n, zero);
  for (int a = 0; a < zero; ++a)
    for (int b = 0; b < zero; ++b) {
      int out = zero;
      try {
        Word rep = canonical_rep(k, cs.classes[a].rep * cs.classes[b].rep);
        auto it = index.find(rep);
        if (it != index.end()) out = it->second;
      } catch (const Error& e) {
        // A concatenation that leaves mu's island domain cannot land in the
        // closure: classes of domain words consist of domain words only.
        if (e.code != "NO_CANONICALIZER") throw;
      }
      table[static_cast<std::size_t>(a) * n + b] = out;
    }

  auto unit = index.find(Word());
  if (unit == index.end())
    throw Error("INVALID_PARAMS", "closure misses the unit class");

  if (provenance.empty()) {
    provenance = "M_" + k.name + "(";
    std::set<std::string> seen;
    for (const ClassDescriptor& s : seeds) {
      std::string sig = class_of(k, s.rep).signature;
      if (!seen.insert(sig).second) continue;
      if (seen.size() > 1) provenance += ", ";
      provenance += sig;
    }
    provenance += ")";
  }
  return FiniteMonoid(std::move(labels), std::move(table), unit->second, zero,
                      std::move(provenance));
}

inline FiniteMonoid build_rees_alpha(const CongruenceKind& k, const ClassSet& seeds,
                                     const ClosureOptions& opt = {},
                                     std::string provenance = "") {
  return build_rees_alpha(k, seeds.classes, opt, std::move(provenance));
}

// Join of two alpha-monoids over the same kind: rebuild from the union of the
// seed class sets.
inline FiniteMonoid alpha_join(const CongruenceKind& k, const ClassSet& a, const ClassSet& b,
                               const ClosureOptions& opt = {}) {
  if (a.kind != k.name || b.kind != k.name)
    throw Error("KIND_MISMATCH", "alpha_join operands must be class sets of " + k.name);
  std::vector<ClassDescriptor> seeds = a.classes;
  seeds.insert(seeds.end(), b.classes.begin(), b.classes.end());
  return build_rees_alpha(k, seeds, opt);
}

// ---- stability ------------------------------------------------------------------

enum class StabilityVerdict { STABLE_UP_TO_BOUND, UNSTABLE, BUDGET_EXCEEDED };

struct StabilityReport {
  StabilityVerdict verdict = StabilityVerdict::STABLE_UP_TO_BOUND;
  Identity witness;           // M satisfies it; lhs inside the class, rhs outside
  std::size_t undecided = 0;  // words whose membership equiv() left open
};

// Does M tell the class apart from its complement? Words over content(c.rep)
// of length <= bound are grouped by their evaluation vector over all
// assignments into M; a group mixing members with non-members is a witness
// that the class is not stable.
inline StabilityReport class_stable(const FiniteMonoid& m, const CongruenceKind& k,
                                    const ClassDescriptor& c, std::size_t bound,
                                    std::uint64_t op_budget = 20000000ull) {
  std::set<Letter> cset = content(c.rep);
  std::vector<Letter> alphabet(cset.begin(), cset.end());

  std::uint64_t words = 1, p = 1;
  for (std::size_t l = 1; l <= bound; ++l) {
    p *= std::max<std::uint64_t>(alphabet.size(), 1);
    words += p;
  }
  std::uint64_t assignments = 1;
  for (std::size_t i = 0; i < alphabet.size(); ++i)
    assignments *= static_cast<std::uint64_t>(m.size());
  if (words * assignments > op_budget) return {StabilityVerdict::BUDGET_EXCEEDED, {}, 0};

  std::map<std::vector<int>, std::pair<std::optional<Word>, std::optional<Word>>> groups;
  StabilityReport rep;
  detail::for_words_up_to(alphabet, bound, [&](const Word& w) {
    EquivResult r = equiv(k, w, c.rep);
    if (r == EquivResult::INCONCLUSIVE) {
      ++rep.undecided;
      return true;
    }
    auto& slot = groups[eval_vector(m, w, alphabet)];
    if (r == EquivResult::EQUIV) {
      if (!slot.first) slot.first = w;
    } else {
      if (!slot.second) slot.second = w;
    }
    if (slot.first && slot.second) {
      rep.verdict = StabilityVerdict::UNSTABLE;
      rep.witness = Identity(*slot.first, *slot.second);
      return false;
    }
    return true;
  });
  return rep;
}

}  // namespace mvw
