#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "mvw/congruence.hpp"
#include "mvw/monoid.hpp"
#include "test_util.hpp"

using namespace mvw;

namespace {

// Oracles below restate the class definitions on the island structure,
// independently of the shape machinery under test.

Word skeleton(const Word& w) {
  Word s;
  for (const Island& is : all_islands(w)) s.push_back(is.letter);
  return s;
}

bool gamma_oracle(const Word& u, const Word& v) {
  return skeleton(u) == skeleton(v) && word_stats(u).simple == word_stats(v).simple;
}

bool first_two_adjacent(const Word& w, Letter a) {
  return occurrence_position(w, a, 2) == occurrence_position(w, a, 1) + 1;
}

// no simple letter strictly between the first two occurrences
bool first_two_same_block(const Word& w, Letter a) {
  std::size_t p1 = occurrence_position(w, a, 1);
  std::size_t p2 = occurrence_position(w, a, 2);
  auto simple = word_stats(w).simple;
  for (std::size_t j = p1 + 1; j < p2; ++j)
    if (std::binary_search(simple.begin(), simple.end(), w[j])) return false;
  return true;
}

bool lambda_oracle(const Word& u, const Word& v) {
  if (!gamma_oracle(u, v)) return false;
  for (Letter a : word_stats(u).multiple)
    if (first_two_adjacent(u, a) != first_two_adjacent(v, a)) return false;
  return true;
}

bool beta_oracle(const Word& u, const Word& v) {
  if (!gamma_oracle(u, v)) return false;
  for (Letter a : word_stats(u).multiple)
    if (first_two_same_block(u, a) != first_two_same_block(v, a)) return false;
  return true;
}

// Grow or shrink one island by a single letter. Never empties an island, so
// the skeleton is preserved; simple/multiple status of the letter may flip.
Word resize_random_island(std::mt19937& rng, const Word& w) {
  auto isl = all_islands(w);
  if (isl.empty()) return w;
  const Island& is = isl[rng() % isl.size()];
  bool grow = rng() % 2 == 0 || is.length == 1;
  Word out;
  for (std::size_t p = 0; p < w.size(); ++p) {
    if (p == is.start && grow) out.push_back(w[p]);
    if (!(p == is.start && !grow)) out.push_back(w[p]);
  }
  return out;
}

Word mutated(std::mt19937& rng, Word w, int rounds) {
  for (int i = 0; i < rounds; ++i) w = resize_random_island(rng, w);
  return w;
}

bool in_mu_domain(const Word& w) { return mu_shape(w).has_value(); }

std::set<std::string> expand_sig(const std::string& sig, std::size_t len_cap) {
  std::set<std::string> out;
  for (const Word& w : expand_pattern(parse_class_pattern(sig), static_cast<int>(len_cap)))
    if (w.size() <= len_cap) out.insert(w.str());
  return out;
}

}  // namespace

TEST_CASE("congruence registry and aliases") {
  CHECK(congruence("gamma'").name == congruence("gamma_p").name);
  CHECK(congruence("lambda'").name == congruence("lambda_p").name);
  CHECK(congruence("gamma''").name == congruence("gamma_pp").name);
  CHECK(congruence("alpha_1").name == congruence("alpha1").name);
  CHECK(congruence("mu_3").name == "mu_3");

  try {
    congruence("zeta");
    FAIL("expected UNKNOWN_CONGRUENCE");
  } catch (const Error& e) {
    CHECK(e.code == "UNKNOWN_CONGRUENCE");
  }
  try {
    congruence("mu_0");
    FAIL("expected INVALID_PARAMS");
  } catch (const Error& e) {
    CHECK(e.code == "INVALID_PARAMS");
  }
}

TEST_CASE("equiv pins") {
  auto gam = congruence("gamma");
  auto lam = congruence("lambda");
  auto gp = congruence("gamma'");

  CHECK(equiv(lam, W("x y x"), W("x y x x")) == EquivResult::EQUIV);
  CHECK(equiv(gam, W("y x"), W("y x x")) == EquivResult::NOT_EQUIV);
  CHECK(equiv(lam, W("x y x"), W("x x y x")) == EquivResult::NOT_EQUIV);
  CHECK(equiv(gp, W("x x y t y"), W("x x x y t y")) == EquivResult::EQUIV);

  // ini(xxyty) = xyt but M(xyx) tells the pair apart
  auto gpp = congruence("gamma''");
  CHECK(equiv(gpp, W("x x y t y"), W("x x x y t y")) == EquivResult::EQUIV);
  CHECK(equiv(gp, W("x y x"), W("x y x x")) == EquivResult::NOT_EQUIV);
}

TEST_CASE("beta sits strictly between lambda and gamma") {
  auto gam = congruence("gamma");
  auto lam = congruence("lambda");
  auto bet = congruence("beta");

  // same block but not adjacent: the separating y is a multiple letter
  Word u = W("x y x y t"), v = W("x x y x y t");
  CHECK(equiv(gam, u, v) == EquivResult::EQUIV);
  CHECK(equiv(bet, u, v) == EquivResult::EQUIV);
  CHECK(equiv(lam, u, v) == EquivResult::NOT_EQUIV);

  // simple t lands between the first two x when the front island shrinks
  Word p = W("x x t x"), q = W("x t x x");
  CHECK(equiv(gam, p, q) == EquivResult::EQUIV);
  CHECK(equiv(bet, p, q) == EquivResult::NOT_EQUIV);
}

TEST_CASE("structural equiv matches the definition oracles") {
  std::mt19937 rng(101);
  auto ab = testing::small_alphabet(4);
  auto gam = congruence("gamma");
  auto lam = congruence("lambda");
  auto bet = congruence("beta");

  int bad = 0;
  std::string first_bad;
  auto run = [&](const CongruenceKind& k, auto oracle, int rounds) {
    bad = 0;
    first_bad.clear();
    for (int i = 0; i < rounds; ++i) {
      Word u = testing::random_word(rng, ab, 10);
      Word v = rng() % 2 == 0 ? mutated(rng, u, 1 + rng() % 3)
                              : testing::random_word(rng, ab, 10);
      EquivResult r = equiv(k, u, v);
      if (r == EquivResult::INCONCLUSIVE ||
          (r == EquivResult::EQUIV) != oracle(u, v)) {
        ++bad;
        if (first_bad.empty()) first_bad = u.str() + "  vs  " + v.str();
      }
    }
    INFO(k.name << " disagrees first on: " << first_bad);
    CHECK(bad == 0);
  };

  run(gam, gamma_oracle, 10000);
  run(lam, lambda_oracle, 4000);
  run(bet, beta_oracle, 4000);
}

TEST_CASE("refined kinds match structural oracle plus model check") {
  std::mt19937 rng(202);
  auto ab = testing::small_alphabet(3);
  FiniteMonoid mxyx = build_rees({"x y x"});
  FiniteMonoid mpair = build_rees({"x y x t y", "y t x y x"});

  struct Row {
    CongruenceKind kind;
    bool (*structural)(const Word&, const Word&);
    const FiniteMonoid* model;
  };
  std::vector<Row> rows = {
      {congruence("gamma'"), gamma_oracle, &mxyx},
      {congruence("lambda'"), lambda_oracle, &mxyx},
      {congruence("gamma''"), gamma_oracle, &mpair},
  };

  for (auto& row : rows) {
    int bad = 0;
    std::string first_bad;
    for (int i = 0; i < 400; ++i) {
      Word u = testing::random_word(rng, ab, 8);
      Word v = rng() % 2 == 0 ? mutated(rng, u, 1 + rng() % 3)
                              : testing::random_word(rng, ab, 8);
      bool expect = row.structural(u, v) && satisfies(*row.model, Identity(u, v)).holds;
      if ((equiv(row.kind, u, v) == EquivResult::EQUIV) != expect) {
        ++bad;
        if (first_bad.empty()) first_bad = u.str() + "  vs  " + v.str();
      }
    }
    INFO(row.kind.name << " disagrees first on: " << first_bad);
    CHECK(bad == 0);
  }
}

TEST_CASE("equivalence laws and compatibility with concatenation") {
  std::mt19937 rng(303);
  auto ab = testing::small_alphabet(3);
  std::vector<CongruenceKind> kinds = {congruence("gamma"), congruence("lambda"),
                                       congruence("beta"), congruence("gamma'"),
                                       congruence("nu")};

  for (const auto& k : kinds) {
    int bad = 0;
    for (int i = 0; i < 1000; ++i) {
      Word u = testing::random_word(rng, ab, 8);
      Word v = mutated(rng, u, rng() % 3);
      Word w = mutated(rng, v, rng() % 3);
      if (equiv(k, u, u) != EquivResult::EQUIV) ++bad;                    // reflexive
      if (equiv(k, u, v) != equiv(k, v, u)) ++bad;                        // symmetric
      bool uv = equiv(k, u, v) == EquivResult::EQUIV;
      bool vw = equiv(k, v, w) == EquivResult::EQUIV;
      bool uw = equiv(k, u, w) == EquivResult::EQUIV;
      if (uv && vw && !uw) ++bad;                                        // transitive
      if (uv && uw != vw) ++bad;                                         // classes
      if (uv) {
        Word a = testing::random_word(rng, ab, 3);
        Word b = testing::random_word(rng, ab, 3);
        if (equiv(k, a * u * b, a * v * b) != EquivResult::EQUIV) ++bad;  // compatible
      }
    }
    INFO("laws fail for " << k.name);
    CHECK(bad == 0);
  }

  // mu: same laws on words inside the island domain; concatenation may leave
  // the domain, in which case the bounded prover must never contradict.
  auto mu = congruence("mu");
  int bad = 0;
  for (int i = 0; i < 1000; ++i) {
    Word u = testing::random_word(rng, ab, 8);
    if (!in_mu_domain(u)) continue;
    Word v = mutated(rng, u, rng() % 3);
    if (!in_mu_domain(v)) continue;
    if (equiv(mu, u, u) != EquivResult::EQUIV) ++bad;
    if (equiv(mu, u, v) != equiv(mu, v, u)) ++bad;
    if (equiv(mu, u, v) == EquivResult::EQUIV) {
      Word a = testing::random_word(rng, ab, 2);
      Word b = testing::random_word(rng, ab, 2);
      if (equiv(mu, a * u * b, a * v * b) == EquivResult::NOT_EQUIV) ++bad;
    }
  }
  CHECK(bad == 0);
}

TEST_CASE("canonical representative pins") {
  CHECK(canonical_rep(congruence("gamma"), W("y x x x x")).str() == "y x x");
  CHECK(canonical_rep(congruence("lambda"), W("x y x x x")).str() == "x y x");
  CHECK(canonical_rep(congruence("nu"), W("x x x y")).str() == "x x y");
  // the trailing x island follows two earlier x occurrences, so it can shrink
  // to a single letter
  CHECK(canonical_rep(congruence("mu"), W("x y z x t y s x x x")).str() ==
        "x y z x t y s x");
  CHECK(canonical_rep(congruence("mu"), W("x y x z x")).str() == "x y x z x");
  CHECK(canonical_rep(congruence("gamma"), Word()).str() == "1");
}

TEST_CASE("canonical representatives are class invariants") {
  std::mt19937 rng(404);
  auto ab = testing::small_alphabet(3);
  std::vector<CongruenceKind> kinds = {congruence("gamma"), congruence("lambda"),
                                       congruence("beta"), congruence("lambda'")};

  for (const auto& k : kinds) {
    int bad = 0;
    for (int i = 0; i < 800; ++i) {
      Word u = testing::random_word(rng, ab, 9);
      Word v = rng() % 2 == 0 ? mutated(rng, u, 1 + rng() % 3)
                              : testing::random_word(rng, ab, 9);
      Word cu = canonical_rep(k, u), cv = canonical_rep(k, v);
      if ((cu == cv) != (equiv(k, u, v) == EquivResult::EQUIV)) ++bad;
      if (equiv(k, u, cu) != EquivResult::EQUIV) ++bad;                 // member
      if (canonical_rep(k, cu) != cu) ++bad;                           // idempotent
      if (shortlex_less(u, cu)) ++bad;                                 // least
    }
    INFO("canonical form misbehaves for " << k.name);
    CHECK(bad == 0);
  }

  auto mu = congruence("mu");
  int bad = 0;
  for (int i = 0; i < 800; ++i) {
    Word u = testing::random_word(rng, ab, 8);
    if (!in_mu_domain(u)) continue;
    Word v = mutated(rng, u, 1 + rng() % 3);
    if (!in_mu_domain(v)) continue;
    Word cu = canonical_rep(mu, u), cv = canonical_rep(mu, v);
    if ((cu == cv) != (equiv(mu, u, v) == EquivResult::EQUIV)) ++bad;
    if (canonical_rep(mu, cu) != cu) ++bad;
    if (shortlex_less(u, cu)) ++bad;
  }
  CHECK(bad == 0);
}

TEST_CASE("canonicalizer availability") {
  auto mu = congruence("mu");
  try {
    canonical_rep(mu, W("x y x y"));  // squared skeleton
    FAIL("expected NO_CANONICALIZER");
  } catch (const Error& e) {
    CHECK(e.code == "NO_CANONICALIZER");
  }
  // two letters that can both reach three occurrences
  CHECK_FALSE(in_mu_domain(W("x x y x z y t y")));
  CHECK(in_mu_domain(W("x y x z y t y")));

  for (const char* name : {"eta", "alpha1", "mu_2"}) {
    try {
      canonical_rep(congruence(name), W("x y x"));
      FAIL("expected NO_CANONICALIZER");
    } catch (const Error& e) {
      CHECK(e.code == "NO_CANONICALIZER");
    }
  }

  // nu scans the content alphabet; six letters at length nine is over budget
  try {
    canonical_rep(congruence("nu"), W("x y z t s r x y z"));
    FAIL("expected BUDGET_EXCEEDED");
  } catch (const Error& e) {
    CHECK(e.code == "BUDGET_EXCEEDED");
  }
}

TEST_CASE("mu island rule agrees with the bounded prover") {
  auto mu = congruence("mu");
  std::mt19937 rng(20260815);
  auto ab = testing::small_alphabet(3);
  ProveConfig cfg;
  cfg.max_len_slack = 4;
  cfg.max_nodes = 20000;
  cfg.library = &countermodel_library();

  int checked = 0, inconclusive = 0, mismatch = 0;
  std::string first_bad;
  while (checked < 1000) {
    Word u = testing::random_word(rng, ab, 6);
    Word v = rng() % 4 == 0 ? testing::random_word(rng, ab, 6)
                            : mutated(rng, u, rng() % 4);
    if (!in_mu_domain(u) || !in_mu_domain(v)) continue;
    ++checked;
    bool island_eq = equiv(mu, u, v) == EquivResult::EQUIV;
    ProveResult pr = prove(VarietySpec{*mu.equations}, Identity{u, v}, cfg);
    if (pr.status == ProveStatus::PROVED && !island_eq) ++mismatch;
    if (pr.status == ProveStatus::REFUTED && island_eq) ++mismatch;
    if (pr.status != ProveStatus::PROVED && pr.status != ProveStatus::REFUTED)
      ++inconclusive;
    if (mismatch && first_bad.empty()) first_bad = u.str() + "  vs  " + v.str();
  }
  INFO("first mismatch: " << first_bad);
  CHECK(mismatch == 0);
  CHECK(inconclusive < 100);  // the cross-check must actually bite
}

TEST_CASE("mu decides squared-skeleton pairs through the prover") {
  auto mu = congruence("mu");
  // (xy)^2 = (xy)^3 is an instance of the first equation
  CHECK(equiv(mu, W("x y x y"), W("x y x y x y")) == EquivResult::EQUIV);
  CHECK(equiv(mu, W("x y x y"), W("x y y x")) == EquivResult::INCONCLUSIVE);
}

TEST_CASE("mu_n family differs from mu") {
  auto mu = congruence("mu");
  auto mu2 = congruence("mu_2");
  // the second mu equation has no counterpart over two blocks
  CHECK(equiv(mu, W("x y x z x"), W("x y x z x x")) == EquivResult::EQUIV);
  CHECK(equiv(mu2, W("x y x z x"), W("x y x z x x")) == EquivResult::NOT_EQUIV);
  CHECK(equiv(mu2, W("x x"), W("x x x")) == EquivResult::EQUIV);

  auto mu1 = congruence("mu_1");
  CHECK(equiv(mu1, W("x x t1 x"), W("x t1 x x")) == EquivResult::EQUIV);
}

TEST_CASE("alpha1 decisions") {
  auto a1 = congruence("alpha1");
  CHECK(equiv(a1, W("x y x x"), W("x x y x")) == EquivResult::EQUIV);
  CHECK(equiv(a1, W("x x y y"), W("y y x x")) == EquivResult::EQUIV);
  CHECK(equiv(a1, W("x z x y t y"), W("x z y x t y")) == EquivResult::EQUIV);
  CHECK(equiv(a1, W("x"), W("y")) == EquivResult::NOT_EQUIV);
  CHECK(equiv(a1, W("x y"), W("y x")) == EquivResult::NOT_EQUIV);
}

TEST_CASE("eta decisions") {
  auto eta = congruence("eta");
  CHECK(equiv(eta, W("x x y"), W("x x y x")) == EquivResult::EQUIV);
  CHECK(equiv(eta, W("x x y"), W("x y x")) == EquivResult::NOT_EQUIV);
  // first occurrences of x and y swap without changing the class
  CHECK(equiv(eta, W("y z x t x y"), W("y z x t y x")) == EquivResult::EQUIV);
  // xyx and xyxx stay apart: only words with an earlier xx block absorb x
  CHECK(equiv(eta, W("x y x"), W("x y x x")) == EquivResult::NOT_EQUIV);
}

TEST_CASE("class products") {
  auto gam = congruence("gamma");
  auto lam = congruence("lambda");
  auto bet = congruence("beta");
  auto mu = congruence("mu");

  std::mt19937 rng(505);
  auto ab = testing::small_alphabet(3);
  for (const auto& k : {gam, lam, bet}) {
    int bad = 0;
    for (int i = 0; i < 400; ++i) {
      Word u = testing::random_word(rng, ab, 7);
      Word v = testing::random_word(rng, ab, 7);
      if (class_product(k, class_of(k, u), class_of(k, v)) != class_of(k, u * v)) ++bad;
    }
    INFO("products disagree for " << k.name);
    CHECK(bad == 0);

    ClassDescriptor one = class_of(k, Word());
    ClassDescriptor c = class_of(k, W("x y x x"));
    CHECK(class_product(k, c, one) == c);
    CHECK(class_product(k, one, c) == c);
  }

  // mu products whenever the concatenation stays inside the island domain
  int done = 0, bad = 0;
  for (int i = 0; i < 4000 && done < 300; ++i) {
    Word u = testing::random_word(rng, ab, 5);
    Word v = testing::random_word(rng, ab, 5);
    if (!in_mu_domain(u) || !in_mu_domain(v) || !in_mu_domain(u * v)) continue;
    ++done;
    if (class_product(mu, class_of(mu, u), class_of(mu, v)) != class_of(mu, u * v)) ++bad;
  }
  CHECK(done == 300);
  CHECK(bad == 0);

  try {
    auto eta = congruence("eta");
    class_product(eta, class_of(eta, W("x")), class_of(eta, W("y")));
    FAIL("expected NO_CANONICALIZER");
  } catch (const Error& e) {
    CHECK(e.code == "NO_CANONICALIZER");
  }
}

TEST_CASE("class_leq pins") {
  auto mu = congruence("mu");
  auto lam = congruence("lambda");
  auto gam = congruence("gamma");

  ClassDescriptor big = parse_class(mu, "x y z x t y s x+");
  CHECK(class_leq(mu, parse_class(mu, "z x t y s x"), big));
  CHECK(class_leq(lam, parse_class(lam, "y x"), parse_class(lam, "x y x+")));
  CHECK_FALSE(class_leq(gam, parse_class(gam, "x y"), parse_class(gam, "y x x+")));
  CHECK_FALSE(class_leq(mu, class_of(mu, W("q")), big));
}

TEST_CASE("mu closure of the eight-letter seed") {
  auto mu = congruence("mu");
  ClassSet cs = closure(mu, {class_of(mu, W("x y z x t y s x"))});

  // every factor class of x y z x t y s x+, in shortlex order of the reps
  const std::vector<std::pair<std::string, std::string>> expected = {
      {"1", "1"},
      {"s", "s"},
      {"t", "t"},
      {"x", "x"},
      {"y", "y"},
      {"z", "z"},
      {"s x", "s x"},
      {"t y", "t y"},
      {"x t", "x t"},
      {"x x", "x x+"},
      {"x y", "x y"},
      {"y s", "y s"},
      {"y z", "y z"},
      {"z x", "z x"},
      {"s x x", "s x x+"},
      {"t y s", "t y s"},
      {"x t y", "x t y"},
      {"x y z", "x y z"},
      {"y s x", "y s x"},
      {"y z x", "y z x"},
      {"z x t", "z x t"},
      {"t y s x", "t y s x"},
      {"x t y s", "x t y s"},
      {"x y z x", "x y z x"},
      {"y s x x", "y s x x+"},
      {"y z x t", "y z x t"},
      {"z x t y", "z x t y"},
      {"t y s x x", "t y s x x+"},
      {"x t y s x", "x t y s x"},
      {"x y z x t", "x y z x t"},
      {"y z x t y", "y z x t y"},
      {"z x t y s", "z x t y s"},
      {"x t y s x x", "x t y s x x+"},
      {"x y z x t y", "x y z x t y"},
      {"y z x t y s", "y z x t y s"},
      {"z x t y s x", "z x t y s x"},
      {"x y z x t y s", "x y z x t y s"},
      {"y z x t y s x", "y z x t y s x"},
      {"z x t y s x x", "z x t y s x x+"},
      {"x y z x t y s x", "x y z x t y s x+"},
      {"y z x t y s x x", "y z x t y s x x+"},
  };

  REQUIRE(cs.size() == expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) {
    CHECK(cs.classes[i].rep.str() == expected[i].first);
    CHECK(cs.classes[i].signature == expected[i].second);
  }

  // closing again adds nothing
  ClassSet again = closure(mu, cs.classes);
  REQUIRE(again.size() == cs.size());
  for (std::size_t i = 0; i < cs.size(); ++i) CHECK(again.classes[i] == cs.classes[i]);

  // every member class sits below the seed
  ClassDescriptor seed = class_of(mu, W("x y z x t y s x"));
  for (const auto& c : cs.classes) CHECK(class_leq(mu, c, seed));
}

TEST_CASE("closure of the trivial class") {
  for (const char* name : {"gamma", "lambda", "mu", "nu"}) {
    auto k = congruence(name);
    ClassSet cs = closure(k, {class_of(k, Word())});
    REQUIRE(cs.size() == 1);
    CHECK(cs.classes[0].rep == Word());
    CHECK(cs.classes[0].signature == "1");
  }
}

TEST_CASE("nu closure of x^2 y") {
  auto nu = congruence("nu");
  ClassSet cs = closure(nu, {class_of(nu, W("x x y"))});

  std::vector<std::string> reps;
  for (const auto& c : cs.classes) reps.push_back(c.rep.str());
  CHECK(reps == std::vector<std::string>{"1", "x", "y", "x x", "x y", "y x",
                                         "x x y", "x y x", "y x x"});

  // the top class is x x+ y x* together with x y x x+
  for (const auto& c : cs.classes) {
    if (c.rep != W("x x y")) continue;
    CHECK(expand_sig(c.signature, 8) == expand_sig("x x+ y x* | x y x x+", 8));
  }
  CHECK(expand_sig("x x+ y x*", 8) != expand_sig("x x+ y x+", 8));

  // singleton classes render as their rep
  CHECK(cs.classes[1].signature == "x");
  CHECK(cs.classes[4].signature == "x y");
}

TEST_CASE("eta closure of x^2 y over two letters") {
  auto eta = congruence("eta");
  ClassSet cs = closure(eta, {class_of(eta, W("x x y"))});

  const std::vector<std::pair<std::string, std::string>> expected = {
      {"1", "1"},
      {"x", "x"},
      {"y", "y"},
      {"x x", "x x+"},
      {"x y", "x y"},
      {"y x", "y x"},
      {"x x y", "x x+ y | x x+ y x+"},
      {"x y x", "x y x"},
      {"y x x", "y x x+"},
      {"x y x x", "x y x x+"},
  };
  REQUIRE(cs.size() == expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) {
    CHECK(cs.classes[i].rep.str() == expected[i].first);
    CHECK(cs.classes[i].signature == expected[i].second);
  }
}

TEST_CASE("render and parse pins") {
  auto lam = congruence("lambda");
  auto gam = congruence("gamma");
  auto mu = congruence("mu");

  CHECK(render_class(lam, class_of(lam, W("x y x x"))) == "x y x+");
  CHECK(render_class(gam, class_of(gam, Word())) == "1");
  CHECK(render_class(mu, class_of(mu, W("x y z x t y s x x"))) ==
        "x y z x t y s x+");

  CHECK(parse_class(lam, "x y x+") == class_of(lam, W("x y x")));
  CHECK(parse_class(lam, "x y x x+") == class_of(lam, W("x y x x")));
  CHECK(parse_class(gam, "1") == class_of(gam, Word()));
  CHECK(parse_class(mu, "= x y x z x") == class_of(mu, W("x y x z x")));

  for (const char* text : {"x ^", "", "x | ", "= x+", "x ++"}) {
    try {
      parse_class_pattern(text);
      FAIL("expected PARSE_ERROR on: " << text);
    } catch (const Error& e) {
      CHECK(e.code == "PARSE_ERROR");
    }
  }
  try {
    parse_class_pattern("x ^");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("position 2") != std::string::npos);
  }
}

TEST_CASE("render / parse round-trips on random classes") {
  std::mt19937 rng(606);
  auto ab = testing::small_alphabet(3);
  std::vector<CongruenceKind> kinds = {congruence("gamma"), congruence("lambda"),
                                       congruence("beta")};
  for (const auto& k : kinds) {
    int bad = 0;
    for (int i = 0; i < 400; ++i) {
      ClassDescriptor c = class_of(k, testing::random_word(rng, ab, 9));
      if (parse_class(k, render_class(k, c)) != c) ++bad;
    }
    INFO("round-trip fails for " << k.name);
    CHECK(bad == 0);
  }

  auto mu = congruence("mu");
  int bad = 0, done = 0;
  for (int i = 0; i < 2000 && done < 300; ++i) {
    Word w = testing::random_word(rng, ab, 8);
    if (!in_mu_domain(w)) continue;
    ++done;
    ClassDescriptor c = class_of(mu, w);
    if (parse_class(mu, render_class(mu, c)) != c) ++bad;
  }
  CHECK(done == 300);
  CHECK(bad == 0);
}
