#pragma once

// Parametric word families (the a- and c-words and their variants),
// permutation classes, identity schemas, named axiom systems, and the
// numbered identity registry.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mvw/identity.hpp"
#include "mvw/monoid.hpp"
#include "mvw/reduce.hpp"
#include "mvw/word.hpp"

namespace mvw {

// ---- permutations -----------------------------------------------------------

// A permutation of {1..n} stored as 1-based images. The degenerate group S_0
// is identified with S_1, so every Perm acts on at least one point.
struct Perm {
  std::vector<int> images;

  Perm() : images{1} {}
  explicit Perm(std::vector<int> im) : images(std::move(im)) {
    if (images.empty()) images = {1};
    std::vector<bool> seen(images.size(), false);
    for (int v : images) {
      if (v < 1 || v > static_cast<int>(images.size()) || seen[static_cast<size_t>(v) - 1])
        throw Error("INVALID_PARAMS", "not a permutation: " + str_of(images));
      seen[static_cast<size_t>(v) - 1] = true;
    }
  }

  static Perm identity(int n) {
    std::vector<int> im;
    for (int i = 1; i <= std::max(n, 1); ++i) im.push_back(i);
    return Perm(std::move(im));
  }

  // DSL: whitespace-separated images, e.g. "2 1 3".
  static Perm parse(std::string_view s) {
    std::vector<int> im;
    int v = -1;
    for (char c : s) {
      if (c >= '0' && c <= '9') {
        v = (v < 0 ? 0 : v) * 10 + (c - '0');
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        if (v >= 0) im.push_back(v);
        v = -1;
      } else {
        throw Error("PARSE_ERROR", "bad permutation token in '" + std::string(s) + "'");
      }
    }
    if (v >= 0) im.push_back(v);
    return Perm(std::move(im));
  }

  int n() const { return static_cast<int>(images.size()); }

  // Image of a 1-based point.
  int operator()(int i) const {
    if (i < 1 || i > n())
      throw Error("OUT_OF_RANGE", "point " + std::to_string(i) + " outside 1.." + std::to_string(n()));
    return images[static_cast<size_t>(i) - 1];
  }

  std::string str() const { return str_of(images); }

  auto operator<=>(const Perm&) const = default;

 private:
  static std::string str_of(const std::vector<int>& im) {
    std::string s;
    for (size_t i = 0; i < im.size(); ++i) {
      if (i) s += ' ';
      s += std::to_string(im[i]);
    }
    return s;
  }
};

// All of S_n in lexicographic order of image vectors; S_0 = S_1.
inline std::vector<Perm> all_perms(int n) {
  if (n < 0) throw Error("INVALID_PARAMS", "S_n needs n >= 0");
  std::vector<int> im;
  for (int i = 1; i <= std::max(n, 1); ++i) im.push_back(i);
  std::vector<Perm> out;
  do {
    out.push_back(Perm(im));
  } while (std::next_permutation(im.begin(), im.end()));
  return out;
}

// rho in S_{n+m} is an (n,m)-permutation when consecutive points map to
// opposite halves: for every i < n+m, one of i rho, (i+1) rho lies in 1..n
// and the other in n+1..n+m.
inline bool is_nm_perm(const Perm& rho, int n, int m) {
  if (n < 0 || m < 0) throw Error("INVALID_PARAMS", "S_{n,m} needs n, m >= 0");
  if (rho.n() != std::max(n + m, 1)) return false;
  auto low = [&](int v) { return 1 <= v && v <= n; };
  auto high = [&](int v) { return n < v && v <= n + m; };
  for (int i = 1; i < n + m; ++i) {
    int a = rho(i), b = rho(i + 1);
    if (!((low(a) && high(b)) || (low(b) && high(a)))) return false;
  }
  return true;
}

inline std::vector<Perm> nm_perms(int n, int m) {
  std::vector<Perm> out;
  for (const Perm& rho : all_perms(n + m))
    if (is_nm_perm(rho, n, m)) out.push_back(rho);
  return out;
}

// S_{2k}^#: the first k points map into the upper half and the last k into
// the lower half.
inline std::vector<Perm> sharp_perms(int k) {
  if (k < 1) throw Error("INVALID_PARAMS", "S_{2k}^# needs k >= 1");
  std::vector<Perm> upper = all_perms(k), lower = all_perms(k);
  std::vector<Perm> out;
  for (const Perm& s : upper)
    for (const Perm& t : lower) {
      std::vector<int> im(static_cast<size_t>(2 * k));
      for (int i = 1; i <= k; ++i) {
        im[static_cast<size_t>(i) - 1] = k + s(i);
        im[static_cast<size_t>(k + i) - 1] = t(i);
      }
      out.push_back(Perm(std::move(im)));
    }
  return out;
}

enum class PermClass { kSn, kSnm, kSharp };

inline std::vector<Perm> enum_perms(PermClass cls, int p1, int p2 = 0) {
  switch (cls) {
    case PermClass::kSn: return all_perms(p1);
    case PermClass::kSnm: return nm_perms(p1, p2);
    default: return sharp_perms(p1);
  }
}

// ---- family words -----------------------------------------------------------

namespace detail {

inline Letter fx() { return Letter{'x', -1, false}; }
inline Letter fy() { return Letter{'y', -1, false}; }
inline Letter ft() { return Letter{'t', -1, false}; }
inline Letter fz(int i, bool prime = false) { return Letter{'z', static_cast<int16_t>(i), prime}; }
inline Letter ftn(int i, bool prime = false) { return Letter{'t', static_cast<int16_t>(i), prime}; }
inline Letter fyn(int i) { return Letter{'y', static_cast<int16_t>(i), false}; }

inline void need_perm(const Perm& p, int points, const char* fam) {
  int want = std::max(points, 1);
  if (p.n() != want)
    throw Error("INVALID_PARAMS", std::string(fam) + ": permutation acts on " +
                                      std::to_string(p.n()) + " points, need " + std::to_string(want));
}

inline void need_counts(int n, int m, int k, const char* fam) {
  if (n < 0 || m < 0 || k < 0)
    throw Error("INVALID_PARAMS", std::string(fam) + ": parameters must be >= 0");
}

inline std::set<Letter> y_range(int lo, int hi) {
  std::set<Letter> s;
  for (int i = lo; i <= hi; ++i) s.insert(fyn(i));
  return s;
}

}  // namespace detail

// a_{n,m}[rho] = (prod_{i<=n} z_i t_i) x (prod_{i<n+m} z_{i rho} y_i^2) z_{(n+m) rho} x
//               (prod_{n<i<=n+m} t_i z_i)
inline Word word_a(int n, int m, const Perm& rho) {
  detail::need_counts(n, m, 0, "a");
  detail::need_perm(rho, n + m, "a");
  Word w;
  for (int i = 1; i <= n; ++i) {
    w.push_back(detail::fz(i));
    w.push_back(detail::ftn(i));
  }
  w.push_back(detail::fx());
  for (int i = 1; i <= n + m - 1; ++i) {
    w.push_back(detail::fz(rho(i)));
    w.push_back(detail::fyn(i));
    w.push_back(detail::fyn(i));
  }
  if (n + m >= 1) w.push_back(detail::fz(rho(n + m)));
  w.push_back(detail::fx());
  for (int i = n + 1; i <= n + m; ++i) {
    w.push_back(detail::ftn(i));
    w.push_back(detail::fz(i));
  }
  return w;
}

// a'_{n,m}[rho]: as a_{n,m}[rho] but both x occurrences merge into x^2 after
// the z-block.
inline Word word_a_prime(int n, int m, const Perm& rho) {
  detail::need_counts(n, m, 0, "a'");
  detail::need_perm(rho, n + m, "a'");
  Word w;
  for (int i = 1; i <= n; ++i) {
    w.push_back(detail::fz(i));
    w.push_back(detail::ftn(i));
  }
  for (int i = 1; i <= n + m - 1; ++i) {
    w.push_back(detail::fz(rho(i)));
    w.push_back(detail::fyn(i));
    w.push_back(detail::fyn(i));
  }
  if (n + m >= 1) w.push_back(detail::fz(rho(n + m)));
  w.push_back(detail::fx());
  w.push_back(detail::fx());
  for (int i = n + 1; i <= n + m; ++i) {
    w.push_back(detail::ftn(i));
    w.push_back(detail::fz(i));
  }
  return w;
}

// abar_{n,m}[rho]: as a_{n,m}[rho] with an extra x after every y_i^2 group.
inline Word word_a_bar(int n, int m, const Perm& rho) {
  detail::need_counts(n, m, 0, "abar");
  detail::need_perm(rho, n + m, "abar");
  Word w;
  for (int i = 1; i <= n; ++i) {
    w.push_back(detail::fz(i));
    w.push_back(detail::ftn(i));
  }
  w.push_back(detail::fx());
  for (int i = 1; i <= n + m - 1; ++i) {
    w.push_back(detail::fz(rho(i)));
    w.push_back(detail::fyn(i));
    w.push_back(detail::fyn(i));
    w.push_back(detail::fx());
  }
  if (n + m >= 1) w.push_back(detail::fz(rho(n + m)));
  w.push_back(detail::fx());
  for (int i = n + 1; i <= n + m; ++i) {
    w.push_back(detail::ftn(i));
    w.push_back(detail::fz(i));
  }
  return w;
}

// Hat variants delete the island letters y_1 .. y_{n+m-1}.
inline Word word_a_hat(int n, int m, const Perm& rho) {
  return delete_letters(word_a(n, m, rho), detail::y_range(1, n + m - 1));
}

inline Word word_a_hat_prime(int n, int m, const Perm& rho) {
  return delete_letters(word_a_prime(n, m, rho), detail::y_range(1, n + m - 1));
}

// ahat^{p,q}_{n,m}[rho]: the two x of ahat move to the cut points p and q of
// the z-block, 0 <= p <= q <= n+m.
inline Word word_a_hat_pq(int n, int m, const Perm& rho, int p, int q) {
  detail::need_counts(n, m, 0, "ahat_pq");
  detail::need_perm(rho, n + m, "ahat_pq");
  if (p < 0 || p > q || q > n + m)
    throw Error("INVALID_PARAMS", "ahat_pq needs 0 <= p <= q <= n+m");
  Word w;
  for (int i = 1; i <= n; ++i) {
    w.push_back(detail::fz(i));
    w.push_back(detail::ftn(i));
  }
  for (int i = 1; i <= p; ++i) w.push_back(detail::fz(rho(i)));
  w.push_back(detail::fx());
  for (int i = p + 1; i <= q; ++i) w.push_back(detail::fz(rho(i)));
  w.push_back(detail::fx());
  for (int i = q + 1; i <= n + m; ++i) w.push_back(detail::fz(rho(i)));
  for (int i = n + 1; i <= n + m; ++i) {
    w.push_back(detail::ftn(i));
    w.push_back(detail::fz(i));
  }
  return w;
}

// ahat^j_{n,m}[rho]: ahat with the single-letter block z_j (the occurrence
// next to t_j, not the one inside the z-block) replaced by x^2 z_j.
inline Word word_a_hat_j(int n, int m, const Perm& rho, int j) {
  detail::need_counts(n, m, 0, "ahat_j");
  detail::need_perm(rho, n + m, "ahat_j");
  if (j < 1 || j > n + m) throw Error("INVALID_PARAMS", "ahat_j needs 1 <= j <= n+m");
  Word w;
  for (int i = 1; i <= n; ++i) {
    if (i == j) {
      w.push_back(detail::fx());
      w.push_back(detail::fx());
    }
    w.push_back(detail::fz(i));
    w.push_back(detail::ftn(i));
  }
  w.push_back(detail::fx());
  for (int i = 1; i <= n + m; ++i) w.push_back(detail::fz(rho(i)));
  w.push_back(detail::fx());
  for (int i = n + 1; i <= n + m; ++i) {
    w.push_back(detail::ftn(i));
    if (i == j) {
      w.push_back(detail::fx());
      w.push_back(detail::fx());
    }
    w.push_back(detail::fz(i));
  }
  return w;
}

// Replaces the factor strictly between the first two occurrences of x by its
// chi-image (an x between each pair of adjacent letters).
inline Word chi_between_x(const Word& w) {
  Letter x = detail::fx();
  std::size_t p1 = occurrence_position(w, x, 1);
  std::size_t p2 = occurrence_position(w, x, 2);
  Word out = slice(w, 0, p1 + 1);
  out.append(chi(slice(w, p1 + 1, p2 - p1 - 1), x));
  out.append(slice(w, p2, w.size() - p2));
  return out;
}

// a^{(i)}_{n,m}[rho], i = 1..4, defined for (n,m) with |n-m| <= 1 and rho an
// (n,m)-permutation. The z-block of index j expands per the table:
//   i=1: plain z_j for j <= n, z_j y_j^2 z_j' above;   suffix gains t_i' z_i'
//   i=2: z_j y_j^2 z_j' for j <= n, plain above;       prefix gains z_i' t_i'
//   i=3: z_j y_j^2 for j <= n, plain above
//   i=4: plain for j <= n, z_j y_j^2 above
// For i = 3,4 the last block drops its y-letters.
inline Word word_a_sup(int which, int n, int m, const Perm& rho) {
  if (which < 1 || which > 4) throw Error("INVALID_PARAMS", "a^{(i)} needs i in 1..4");
  detail::need_counts(n, m, 0, "a^{(i)}");
  if (n - m > 1 || m - n > 1)
    throw Error("INVALID_PARAMS", "a^{(i)} needs |n-m| <= 1");
  if (!is_nm_perm(rho, n, m))
    throw Error("INVALID_PARAMS", "a^{(i)} needs an (n,m)-permutation");
  auto push_block = [&](Word& w, int j, bool strip_y) {
    w.push_back(detail::fz(j));
    bool decorated = (which == 1 || which == 4) ? (j > n) : (j <= n);
    if (decorated && !strip_y) {
      w.push_back(detail::fyn(j));
      w.push_back(detail::fyn(j));
      if (which <= 2) w.push_back(detail::fz(j, true));
    } else if (decorated && which <= 2) {
      w.push_back(detail::fz(j, true));
    }
  };
  Word w;
  for (int i = 1; i <= n; ++i) {
    w.push_back(detail::fz(i));
    w.push_back(detail::ftn(i));
    if (which == 2) {
      w.push_back(detail::fz(i, true));
      w.push_back(detail::ftn(i, true));
    }
  }
  w.push_back(detail::fx());
  for (int i = 1; i <= n + m; ++i) {
    bool last = (i == n + m);
    push_block(w, rho(i), last && which >= 3);
  }
  w.push_back(detail::fx());
  for (int i = n + 1; i <= n + m; ++i) {
    w.push_back(detail::ftn(i));
    w.push_back(detail::fz(i));
    if (which == 1) {
      w.push_back(detail::ftn(i, true));
      w.push_back(detail::fz(i, true));
    }
  }
  return w;
}

// abar^{(i)}: a^{(i)} with the factor between the two x interleaved by chi.
inline Word word_a_bar_sup(int which, int n, int m, const Perm& rho) {
  return chi_between_x(word_a_sup(which, n, m, rho));
}

// c_{n,m,k}[tau] = (prod_{i<=n} z_i t_i) xyt (prod_{n<i<=n+m} z_i t_i) x
//                  (prod_{i<n+m+k} z_{i tau} y_i^2) z_{(n+m+k) tau} y
//                  (prod_{n+m<i<=n+m+k} t_i z_i)
inline Word word_c(int n, int m, int k, const Perm& tau) {
  detail::need_counts(n, m, k, "c");
  detail::need_perm(tau, n + m + k, "c");
  Word w;
  for (int i = 1; i <= n; ++i) {
    w.push_back(detail::fz(i));
    w.push_back(detail::ftn(i));
  }
  w.push_back(detail::fx());
  w.push_back(detail::fy());
  w.push_back(detail::ft());
  for (int i = n + 1; i <= n + m; ++i) {
    w.push_back(detail::fz(i));
    w.push_back(detail::ftn(i));
  }
  w.push_back(detail::fx());
  for (int i = 1; i <= n + m + k - 1; ++i) {
    w.push_back(detail::fz(tau(i)));
    w.push_back(detail::fyn(i));
    w.push_back(detail::fyn(i));
  }
  if (n + m + k >= 1) w.push_back(detail::fz(tau(n + m + k)));
  w.push_back(detail::fy());
  for (int i = n + m + 1; i <= n + m + k; ++i) {
    w.push_back(detail::ftn(i));
    w.push_back(detail::fz(i));
  }
  return w;
}

// Interchanges the first occurrences of x and y (the c -> c' map).
inline Word swap_first_xy(const Word& w) {
  std::size_t px = occurrence_position(w, detail::fx(), 1);
  std::size_t py = occurrence_position(w, detail::fy(), 1);
  std::vector<Letter> ls(w.begin(), w.end());
  std::swap(ls[px], ls[py]);
  return Word(std::move(ls));
}

inline Word word_c_prime(int n, int m, int k, const Perm& tau) {
  return swap_first_xy(word_c(n, m, k, tau));
}

inline Word word_d(int n, int m, int k, const Perm& tau) { return reversed(word_c(n, m, k, tau)); }

inline Word word_d_prime(int n, int m, int k, const Perm& tau) {
  return reversed(word_c_prime(n, m, k, tau));
}

// chat deletes y_1 .. y_{n+m+k-1} (the bare y stays).
inline Word word_c_hat(int n, int m, int k, const Perm& tau) {
  return delete_letters(word_c(n, m, k, tau), detail::y_range(1, n + m + k - 1));
}

// h_{n,m,k}[rho]: c with y_i deleted whenever i rho lands above n+m.
inline Word word_h(int n, int m, int k, const Perm& rho) {
  Word c = word_c(n, m, k, rho);
  std::set<Letter> drop;
  for (int i = 1; i <= n + m + k - 1; ++i)
    if (rho(i) > n + m) drop.insert(detail::fyn(i));
  return delete_letters(c, drop);
}

inline Word word_h_prime(int n, int m, int k, const Perm& rho) {
  return swap_first_xy(word_h(n, m, k, rho));
}

// c^{(i)}_n[pi, tau], i = 1..4. The first permutation acts on 4n+1 / n+1 /
// 2n+1 / 2n+1 points respectively, the second on 2n. The shared frame is
//   (prod_{i<=n} z_i' t_i') xyt (prod_{n<i<=2n} z_i' t_i') x <blocks>
//   z_{last} y (prod t_i z_i)
// with the block pattern per family.
inline Word word_c_sup(int which, int n, const Perm& pi, const Perm& tau) {
  if (which < 1 || which > 4) throw Error("INVALID_PARAMS", "c^{(i)} needs i in 1..4");
  detail::need_counts(n, 0, 0, "c^{(i)}");
  int psz = which == 1 ? 4 * n + 1 : which == 2 ? n + 1 : 2 * n + 1;
  detail::need_perm(pi, psz, "c^{(i)}");
  detail::need_perm(tau, 2 * n, "c^{(i)}");
  Word w;
  for (int i = 1; i <= n; ++i) {
    w.push_back(detail::fz(i, true));
    w.push_back(detail::ftn(i, true));
  }
  w.push_back(detail::fx());
  w.push_back(detail::fy());
  w.push_back(detail::ft());
  for (int i = n + 1; i <= 2 * n; ++i) {
    w.push_back(detail::fz(i, true));
    w.push_back(detail::ftn(i, true));
  }
  w.push_back(detail::fx());
  int tcount = psz;
  switch (which) {
    case 1:
      for (int i = 1; i <= 2 * n; ++i) {
        w.push_back(detail::fz(pi(2 * i - 1)));
        w.push_back(detail::fyn(i));
        w.push_back(detail::fyn(i));
        w.push_back(detail::fz(pi(2 * i)));
        w.push_back(detail::fz(tau(i), true));
      }
      break;
    case 2:
      for (int i = 1; i <= n; ++i) {
        w.push_back(detail::fz(pi(i)));
        w.push_back(detail::fz(tau(2 * i - 1), true));
        w.push_back(detail::fyn(i));
        w.push_back(detail::fyn(i));
        w.push_back(detail::fz(tau(2 * i), true));
      }
      break;
    case 3:
      for (int i = 1; i <= 2 * n; ++i) {
        w.push_back(detail::fz(pi(i)));
        w.push_back(detail::fz(tau(i), true));
        w.push_back(detail::fyn(i));
        w.push_back(detail::fyn(i));
      }
      break;
    default:
      for (int i = 1; i <= 2 * n; ++i) {
        w.push_back(detail::fz(pi(i)));
        w.push_back(detail::fyn(i));
        w.push_back(detail::fyn(i));
        w.push_back(detail::fz(tau(i), true));
      }
      break;
  }
  w.push_back(detail::fz(pi(psz)));
  w.push_back(detail::fy());
  for (int i = 1; i <= tcount; ++i) {
    w.push_back(detail::ftn(i));
    w.push_back(detail::fz(i));
  }
  return w;
}

inline Word word_c_bar_sup(int which, int n, const Perm& pi, const Perm& tau) {
  return swap_first_xy(word_c_sup(which, n, pi, tau));
}

// ---- FamilySpec dispatch ------------------------------------------------------

// family ids: a, a', abar, ahat, ahat', ahat_pq, ahat_j, a1..a4, abar1..abar4,
//             c, c', d, d', chat, c1..c4, cbar1..cbar4, h, h'.
// Primes may be written as a trailing p (a' == ap).
struct FamilySpec {
  std::string family;
  int n = 0, m = 0, k = 0;
  int p = 0, q = 0, j = 0;
  std::vector<Perm> perms;
};

inline Word gen_word(const FamilySpec& spec) {
  std::string f = spec.family;
  if (f == "ap") f = "a'";
  if (f == "cp") f = "c'";
  if (f == "dp") f = "d'";
  if (f == "hp") f = "h'";
  if (f == "ahatp") f = "ahat'";
  auto perm = [&](size_t i) -> const Perm& {
    if (spec.perms.size() <= i)
      throw Error("INVALID_PARAMS", "family '" + spec.family + "' needs " +
                                        std::to_string(i + 1) + " permutation(s)");
    return spec.perms[i];
  };
  auto one_perm = [&]() -> const Perm& {
    if (spec.perms.size() != 1)
      throw Error("INVALID_PARAMS", "family '" + spec.family + "' takes exactly one permutation");
    return perm(0);
  };
  auto two_perms = [&]() {
    if (spec.perms.size() != 2)
      throw Error("INVALID_PARAMS", "family '" + spec.family + "' takes exactly two permutations");
  };
  if (f == "a") return word_a(spec.n, spec.m, one_perm());
  if (f == "a'") return word_a_prime(spec.n, spec.m, one_perm());
  if (f == "abar") return word_a_bar(spec.n, spec.m, one_perm());
  if (f == "ahat") return word_a_hat(spec.n, spec.m, one_perm());
  if (f == "ahat'") return word_a_hat_prime(spec.n, spec.m, one_perm());
  if (f == "ahat_pq") return word_a_hat_pq(spec.n, spec.m, one_perm(), spec.p, spec.q);
  if (f == "ahat_j") return word_a_hat_j(spec.n, spec.m, one_perm(), spec.j);
  if (f.size() == 2 && f[0] == 'a' && f[1] >= '1' && f[1] <= '4')
    return word_a_sup(f[1] - '0', spec.n, spec.m, one_perm());
  if (f.size() == 5 && f.rfind("abar", 0) == 0 && f[4] >= '1' && f[4] <= '4')
    return word_a_bar_sup(f[4] - '0', spec.n, spec.m, one_perm());
  if (f == "c") return word_c(spec.n, spec.m, spec.k, one_perm());
  if (f == "c'") return word_c_prime(spec.n, spec.m, spec.k, one_perm());
  if (f == "d") return word_d(spec.n, spec.m, spec.k, one_perm());
  if (f == "d'") return word_d_prime(spec.n, spec.m, spec.k, one_perm());
  if (f == "chat") return word_c_hat(spec.n, spec.m, spec.k, one_perm());
  if (f == "h") return word_h(spec.n, spec.m, spec.k, one_perm());
  if (f == "h'") return word_h_prime(spec.n, spec.m, spec.k, one_perm());
  if (f.size() == 2 && f[0] == 'c' && f[1] >= '1' && f[1] <= '4') {
    two_perms();
    return word_c_sup(f[1] - '0', spec.n, perm(0), perm(1));
  }
  if (f.size() == 5 && f.rfind("cbar", 0) == 0 && f[4] >= '1' && f[4] <= '4') {
    two_perms();
    return word_c_bar_sup(f[4] - '0', spec.n, perm(0), perm(1));
  }
  throw Error("INVALID_PARAMS", "unknown family '" + spec.family + "'");
}

// ---- identity schemas ---------------------------------------------------------

inline Identity sigma_1() { return Id("x y z x t y = y x z x t y", "sigma_1"); }
inline Identity sigma_2() { return Id("x z y t x y = x z y t y x", "sigma_2"); }
inline Identity sigma_3() { return Id("x z x y t y = x z y x t y", "sigma_3"); }

inline std::vector<Identity> phi_identities() {
  return {Id("x^2 = x^3", "x2=x3"), Id("x^2 y^2 = y^2 x^2", "(28)")};
}

enum class Schema {
  kPhi,
  kPhi1,
  kPhi2,
  kPhi3,
  kDelta,
  kSigma1,
  kSigma2,
  kSigma3,
  kBetaN,
  kGammaN,
};

// Caps for the schema's integer parameters, in the order the schema uses
// them. Phi1 reads all three; Phi2/Phi3 read k and l; Delta enumerates
// beta/gamma up to k; beta_n/gamma_n take k as the exact index.
struct SchemaBounds {
  int k = 2, l = 2, m = 2;
};

inline Schema schema_by_name(std::string_view s) {
  if (s == "Phi" || s == "phi") return Schema::kPhi;
  if (s == "Phi1" || s == "Phi_1" || s == "phi1") return Schema::kPhi1;
  if (s == "Phi2" || s == "Phi_2" || s == "phi2") return Schema::kPhi2;
  if (s == "Phi3" || s == "Phi_3" || s == "phi3") return Schema::kPhi3;
  if (s == "Delta" || s == "delta") return Schema::kDelta;
  if (s == "sigma_1" || s == "sigma1") return Schema::kSigma1;
  if (s == "sigma_2" || s == "sigma2") return Schema::kSigma2;
  if (s == "sigma_3" || s == "sigma3") return Schema::kSigma3;
  if (s == "beta_n" || s == "beta") return Schema::kBetaN;
  if (s == "gamma_n" || s == "gamma") return Schema::kGammaN;
  throw Error("UNKNOWN_NAME", "unknown schema '" + std::string(s) + "'");
}

inline std::vector<Identity> identity_schema(Schema s, SchemaBounds b = {}) {
  std::vector<Identity> out;
  auto tag = [](const std::string& head, std::initializer_list<int> ps, const Perm& rho) {
    std::string t = head + "(";
    bool first = true;
    for (int p : ps) {
      if (!first) t += ",";
      first = false;
      t += std::to_string(p);
    }
    return t + ")[" + rho.str() + "]";
  };
  switch (s) {
    case Schema::kPhi:
      return phi_identities();
    case Schema::kSigma1:
      return {sigma_1()};
    case Schema::kSigma2:
      return {sigma_2()};
    case Schema::kSigma3:
      return {sigma_3()};
    case Schema::kBetaN:
      return {beta_n(b.k)};
    case Schema::kGammaN:
      return {gamma_n(b.k)};
    case Schema::kDelta:
      if (b.k < 0) throw Error("INVALID_PARAMS", "Delta needs a bound >= 0");
      out = {delta_4(), delta_5(), delta_9()};
      for (int i = 1; i <= b.k; ++i) {
        out.push_back(beta_n(i));
        out.push_back(gamma_n(i));
      }
      return out;
    case Schema::kPhi1:
      if (b.k < 1 || b.l < 1 || b.m < 1)
        throw Error("INVALID_PARAMS", "Phi1 needs bounds >= 1");
      for (int k = 1; k <= b.k; ++k)
        for (int l = 1; l <= b.l; ++l)
          for (int m = 1; m <= b.m; ++m)
            for (const Perm& rho : all_perms(k + l + m)) {
              out.emplace_back(word_c(k, l, m, rho), word_c_prime(k, l, m, rho),
                               "Phi1:" + tag("c", {k, l, m}, rho));
              out.emplace_back(word_d(k, l, m, rho), word_d_prime(k, l, m, rho),
                               "Phi1:" + tag("d", {k, l, m}, rho));
            }
      return out;
    case Schema::kPhi2:
    case Schema::kPhi3:
      if (b.k < 1 || b.l < 1)
        throw Error("INVALID_PARAMS", "Phi2/Phi3 need bounds >= 1");
      for (int k = 1; k <= b.k; ++k)
        for (int l = 1; l <= b.l; ++l)
          for (const Perm& rho : all_perms(k + l)) {
            if (s == Schema::kPhi2)
              out.emplace_back(word_a(k, l, rho), word_a_bar(k, l, rho),
                               "Phi2:" + tag("a", {k, l}, rho));
            else
              out.emplace_back(word_a(k, l, rho), word_a_prime(k, l, rho),
                               "Phi3:" + tag("a", {k, l}, rho));
          }
      return out;
  }
  throw Error("INVALID_PARAMS", "unhandled schema");
}

// ---- numbered identity registry ------------------------------------------------

inline const std::vector<Identity>& identity_registry() {
  static const std::vector<Identity> rows = [] {
    const char* dsl[] = {
        "x y x^2 = x^2 y x^2",                      // 1
        "y x^2 t x^2 y x^2 = x^2 y x^2 t x^2 y x^2",// 2
        "x^2 y t y = x^2 y x t y",                  // 3
        "y x^2 = x y x^2",                          // 4
        "x^2 y = x^2 y x",                          // 5
        "y x^2 t y = x y x^2 t y",                  // 6
        "x^2 y t x y = y x^2 t x y",                // 7
        "x^2 y x = x^2 y x^2",                      // 8
        "x^2 y z x = x^2 y x z x",                  // 9
        "x^2 y z y t x = y x^2 z y t x",            // 10
        "x^2 y z x t y = y x^2 z x t y",            // 11
        "y t y x^2 = y t x y x^2",                  // 12
        "y z x^2 y t x = y z y x^2 t x",            // 13
        "x^2 y t x y = x^2 y t y x",                // 14
        "x^2 z y t x y = x^2 z y t y x",            // 15
        "x y z x^2 t x y x = y x z x^2 t x y x",    // 16
        "x y z y t x^2 = y x z y t x^2",            // 17
        "y z x y t x^2 = y z y x t x^2",            // 18
        "x y z x^2 y^2 = y x z x^2 y^2",            // 19
        "x^2 y t y^2 = y x^2 t y^2",                // 20
        "x y z x^2 t y^2 = y x z x^2 t y^2",        // 21
        "x y z x^2 y = y x z x^2 y",                // 22
        "x y z x^2 t y = y x z x^2 t y",            // 23
        "x y z x^2 t y s x = y x z x^2 t y s x",    // 24
        "x y x = x y x^2",                          // 25
        "x y z x y = y x z x y",                    // 26
        "x z y x t y = x z x y x t y",              // 27
        "x^2 y^2 = y^2 x^2",                        // 28
        "x^2 y x t y = x y x t y",                  // 29
        "x^2 y t y = x y x t y",                    // 30
        "x y z x y = x y z y x",                    // 31
        "x y x^2 = x^2 y x",                        // 32
        "y t y x^2 = y t x y x",                    // 33
        "x y x = x^2 y x",                          // 34
        "y x^2 t y = x y x t y",                    // 35
        "x y x t x^2 y = x y x t y",                // 36
        "x^2 y t y = y x^2 t y",                    // 37
        "y t x^2 y = y t y x^2",                    // 38
        "y t x^2 y = y t x^2 y x",                  // 39
        "x z y t x^2 y = x z y t y x^2",            // 40
        "x z x t y s x y = x z x t y s y x",        // 41
        "x y z x^2 y = x y z y x^2",                // 42
        "x z x y t x y = x z x y t y x",            // 43
        "y t x^2 y = y t x y x",                    // 44
        "y z x^2 y t x = y z x y x t x",            // 45
        "x z y t x^2 y = x z y t x y x",            // 46
        "x z y t x^2 y s x = x z y t x y x s x",    // 47
        "x^2 y z y t x = x y x z y t x",            // 48
        "x^2 y z x t y s x = x y x z x t y s x",    // 49
        "x^2 y z x t y = x y x z x t y",            // 50
        "y z x t x y s x = y z x t y x s x",        // 51
        "x z y t x y s x = x z y t y x s x",        // 52
        "x z x y t y s x = x z y x t y s x",        // 53
        "x z x y t x s y = x z y x t x s y",        // 54
    };
    std::vector<Identity> r;
    for (size_t i = 0; i < sizeof(dsl) / sizeof(dsl[0]); ++i)
      r.push_back(Id(dsl[i], "(" + std::to_string(i + 1) + ")"));
    return r;
  }();
  return rows;
}

inline Identity identity_by_number(int n) {
  const auto& reg = identity_registry();
  if (n < 1 || n > static_cast<int>(reg.size()))
    throw Error("UNKNOWN_NUMBER", "no identity numbered " + std::to_string(n));
  return reg[static_cast<size_t>(n) - 1];
}

// ---- named axiom systems --------------------------------------------------------

// An axiom system whose infinite schema members stay symbolic. instantiate()
// appends the bounded schema expansions to the concrete part.
struct NamedSystem {
  std::string name;
  std::vector<Identity> axioms;
  std::vector<std::pair<Schema, SchemaBounds>> schemas;

  AxiomSystem instantiate() const {
    AxiomSystem sys(name, axioms);
    for (const auto& [s, b] : schemas)
      for (const Identity& id : identity_schema(s, b)) sys.add(id);
    return sys;
  }
};

namespace detail {

// Tags an identity with its registry number when it matches a row exactly.
inline Identity numbered(const char* dsl) {
  Identity id = Id(dsl);
  for (const Identity& row : identity_registry())
    if (row == id) return Id(dsl, row.name);
  return id;
}

}  // namespace detail

inline NamedSystem named_axioms(const std::string& name, int n = 1, SchemaBounds bounds = {}) {
  std::string base = name;
  int sub = n;
  if ((base.rfind("P", 0) == 0 || base.rfind("Q", 0) == 0 || base.rfind("R", 0) == 0) &&
      base.size() > 1 && std::isdigit(static_cast<unsigned char>(base[1]))) {
    sub = std::stoi(base.substr(1));
    base = base.substr(0, 1);
  }
  NamedSystem sys;
  sys.name = name;
  auto C = [&](const char* dsl) { sys.axioms.push_back(detail::numbered(dsl)); };
  auto S = [&](Schema s) { sys.schemas.emplace_back(s, bounds); };
  auto phi = [&] {
    for (Identity& id : identity_schema(Schema::kPhi)) sys.axioms.push_back(std::move(id));
  };
  auto sig = [&](int i) {
    sys.axioms.push_back(i == 1 ? sigma_1() : i == 2 ? sigma_2() : sigma_3());
  };
  auto powers = [&] {
    if (sub < 1) throw Error("INVALID_PARAMS", base + "_n needs n >= 1");
    Word x = W("x");
    sys.axioms.emplace_back(pow(x, sub), pow(x, sub + 1),
                            "x^" + std::to_string(sub) + "=x^" + std::to_string(sub + 1));
  };

  if (base == "D1") {
    phi();
    C("x y x = x y x^2");
    C("x^2 y = x^2 y x");
  } else if (base == "D2") {
    phi();
    S(Schema::kPhi1);
    S(Schema::kPhi2);
    C("x y x = x y x^2");
  } else if (base == "D3") {
    phi();
    sig(2);
    sig(3);
    C("x^2 y = x^2 y x");
    C("x^2 y x = x y x^2");
    C("x y x z x = x y x z x^2");
  } else if (base == "D4") {
    phi();
    sig(2);
    sig(3);
    C("x^2 y = x^2 y x");
    C("x^2 y t y = y x^2 t y");
    C("x y z x^2 t y^2 = y x z x^2 t y^2");
    C("x y x z x = x y x^2 z x");
  } else if (base == "D5") {
    phi();
    sig(2);
    sig(3);
    C("x y x^2 = x^2 y x");
    C("x y z x^2 y = y x z x^2 y");
    C("x y x z x = x y x z x^2");
  } else if (base == "D6") {
    phi();
    sig(2);
    sig(3);
    C("x^2 y x = x^2 y x^2");
    C("x^2 y t y = y x^2 t y");
    C("x y z x^2 t y = y x z x^2 t y");
    C("x y z y t x^2 = y x z y t x^2");
  } else if (base == "D7") {
    phi();
    sig(2);
    sig(3);
    C("x^2 y x = x^2 y x^2");
    C("x^2 y t y = y x^2 t y");
    C("x y z x^2 t y^2 = y x z x^2 t y^2");
    C("x y z x^2 y = y x z x^2 y");
    C("x y x z x = x y x^2 z x");
  } else if (base == "D8") {
    phi();
    sig(2);
    sig(3);
    C("x^2 y x = x^2 y x^2");
    C("x^2 y t y = y x^2 t y");
    C("x y z x^2 t y^2 = y x z x^2 t y^2");
    C("x y z x^2 y = y x z x^2 y");
    C("x y z x^2 t y s x = y x z x^2 t y s x");
    C("x y x z x = x y x z x^2");
  } else if (base == "D9") {
    phi();
    sig(1);
    sig(3);
    C("x^2 y x = x^2 y x^2");
    C("y t x^2 y = y t y x^2");
  } else if (base == "D10") {
    phi();
    sig(1);
    sig(3);
    C("x^2 y x = x^2 y x^2");
    C("x y x z x = x y x z x^2");
    C("x^2 z y t x y = x^2 z y t y x");
  } else if (base == "D11") {
    phi();
    S(Schema::kPhi1);
    S(Schema::kPhi2);
    C("x y x^2 = x^2 y x");
    C("x y x z x = x y x z x^2");
  } else if (base == "D12") {
    phi();
    S(Schema::kPhi1);
    S(Schema::kPhi2);
    C("x^2 y x = x^2 y x^2");
    C("y t x^2 y = y t y x^2");
    C("x^2 y t y = y x^2 t y");
    C("x y z x^2 t y = y x z x^2 t y");
    C("x y z y t x^2 = y x z y t x^2");
    C("y z y x t x^2 = y z x y t x^2");
  } else if (base == "D13" || base == "D14") {
    phi();
    S(Schema::kPhi1);
    S(Schema::kPhi2);
    C("x^2 y x = x^2 y x^2");
    C("y x^2 t y = x y x^2 t y");
    C("y t y x^2 = y t x y x^2");
    C(base == "D13" ? "x y x z x = x y x^2 z x" : "x y x z x = x y x z x^2");
    C("x^2 y t y^2 = y x^2 t y^2");
    C("x^2 y z y t x = y x^2 z y t x");
    C("x^2 y z x t y = y x^2 z x t y");
    C("x^2 z y t x y = x^2 z y t y x");
    C("y z x^2 y t x = y z y x^2 t x");
    C("x y z x^2 t y^2 = y x z x^2 t y^2");
    if (base == "D14") C("x y z x^2 t y s x = y x z x^2 t y s x");
  } else if (base == "P") {
    S(Schema::kPhi1);
    S(Schema::kPhi3);
    powers();
    C("x^2 y = y x^2");
  } else if (base == "Q") {
    powers();
    Word x = W("x"), y = W("y");
    sys.axioms.emplace_back(pow(x, sub) * y, y * pow(x, sub),
                            "x^" + std::to_string(sub) + "y=yx^" + std::to_string(sub));
    C("x^2 y = x y x");
  } else if (base == "R") {
    sig(1);
    sig(2);
    powers();
    C("x^2 y = y x^2");
  } else if (base == "A") {
    C("x^2 = x^3");
    C("x^2 y x = x^2 y x^2");
  } else if (base == "H") {
    NamedSystem d1 = named_axioms("D1", n, bounds);
    sys.axioms = std::move(d1.axioms);
    C("x y x t y = y x^2 t y");
  } else if (base == "N") {
    C("x^2 = x^3");
    C("x^2 y = y x^2");
    C("x y x z x = x^2 y z");
    sig(2);
    sig(3);
  } else if (base == "O") {
    phi();
    S(Schema::kPhi1);
    S(Schema::kPhi2);
  } else {
    throw Error("UNKNOWN_NAME", "unknown axiom system '" + name + "'");
  }
  return sys;
}

// The dual system: every identity read right to left.
inline AxiomSystem dual(const AxiomSystem& sys) {
  AxiomSystem d(sys.name.empty() ? "" : sys.name + "^d", {});
  for (const Identity& id : sys.identities)
    d.add(Identity(reversed(id.lhs), reversed(id.rhs), id.name.empty() ? "" : id.name + "^d"));
  return d;
}

// ---- the class K ------------------------------------------------------------------

// Members of K satisfy (6), (8), (12), (26), (31) and violate some
// ahat_{n,m}[pi] = ahat'_{n,m}[pi] with |n-m| <= 1 and pi an (n,m)-permutation.
inline std::vector<Identity> class_K_identities() {
  return {identity_by_number(6), identity_by_number(8), identity_by_number(12),
          identity_by_number(26), identity_by_number(31)};
}

enum class ClassKVerdict { kInK, kNotInK, kInconclusive };

inline const char* to_string(ClassKVerdict v) {
  switch (v) {
    case ClassKVerdict::kInK: return "IN_K";
    case ClassKVerdict::kNotInK: return "NOT_IN_K";
    default: return "INCONCLUSIVE";
  }
}

struct ClassKBounds {
  int max_nm = 2;  // search (n,m) with n+m up to this
  std::uint64_t eval_budget = 100'000'000;
};

struct ClassKReport {
  ClassKVerdict verdict = ClassKVerdict::kInconclusive;
  std::string note;
  std::optional<Identity> witness;  // failed K-identity, or the violated hat-a identity
};

inline ClassKReport check_class_K(const FiniteMonoid& M, ClassKBounds b = {}) {
  for (const Identity& id : class_K_identities()) {
    SatisfactionReport r = satisfies(M, id, b.eval_budget);
    if (!r.holds)
      return {ClassKVerdict::kNotInK, "violates " + id.name, id};
  }
  if (M.size() == 1)
    return {ClassKVerdict::kNotInK, "the trivial monoid satisfies every identity", std::nullopt};
  for (int total = 1; total <= b.max_nm; ++total) {
    for (int n = 0; n <= total; ++n) {
      int m = total - n;
      if (n - m > 1 || m - n > 1) continue;
      for (const Perm& pi : nm_perms(n, m)) {
        Identity id(word_a_hat(n, m, pi), word_a_hat_prime(n, m, pi),
                    "ahat(" + std::to_string(n) + "," + std::to_string(m) + ")[" + pi.str() + "]");
        if (id.trivial()) continue;
        SatisfactionReport r = satisfies(M, id, b.eval_budget);
        if (!r.holds)
          return {ClassKVerdict::kInK, "violates " + id.name, id};
      }
    }
  }
  return {ClassKVerdict::kInconclusive,
          "the five class identities hold; no hat-a violation with n+m <= " +
              std::to_string(b.max_nm),
          std::nullopt};
}

}  // namespace mvw
