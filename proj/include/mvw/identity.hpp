#pragma once

// Identities u ~ v and named axiom systems.

#include <optional>
#include <string>
#include <vector>

#include "mvw/word.hpp"

namespace mvw {

struct Identity {
  Word lhs, rhs;
  std::string name;  // optional tag, e.g. "sigma_2" or "(17)"

  Identity() = default;
  Identity(Word l, Word r, std::string n = "") : lhs(std::move(l)), rhs(std::move(r)), name(std::move(n)) {}

  bool trivial() const { return lhs == rhs; }

  // DSL: "<word> = <word>", e.g. "x^2 y = x^2 y x".
  static Identity parse(std::string_view s, std::string name = "") {
    auto eq = s.find('=');
    if (eq == std::string_view::npos) throw Error("PARSE_ERROR", "identity needs '=': " + std::string(s));
    if (s.find('=', eq + 1) != std::string_view::npos)
      throw Error("PARSE_ERROR", "identity has two '=': " + std::string(s));
    return Identity(Word::parse(s.substr(0, eq)), Word::parse(s.substr(eq + 1)), std::move(name));
  }

  std::string str() const { return lhs.str() + " = " + rhs.str(); }
  std::string compact() const { return lhs.compact() + " = " + rhs.compact(); }
  std::string tagged() const { return name.empty() ? str() : name + ": " + str(); }

  Identity swapped() const { return Identity(rhs, lhs, name); }
  Identity reversed_sides() const { return Identity(reversed(lhs), reversed(rhs), name); }

  auto operator<=>(const Identity& o) const {
    if (auto c = lhs <=> o.lhs; c != 0) return c;
    return rhs <=> o.rhs;
  }
  bool operator==(const Identity& o) const { return lhs == o.lhs && rhs == o.rhs; }
};

inline Identity Id(std::string_view dsl, std::string name = "") {
  return Identity::parse(dsl, std::move(name));
}

inline bool is_linear_balanced(const Identity& id) { return is_linear_balanced(id.lhs, id.rhs); }

struct AxiomSystem {
  std::string name;
  std::vector<Identity> identities;

  AxiomSystem() = default;
  AxiomSystem(std::string n, std::vector<Identity> ids) : name(std::move(n)), identities(std::move(ids)) {}

  const Identity* find(std::string_view axiom_name) const {
    for (const Identity& id : identities)
      if (id.name == axiom_name) return &id;
    return nullptr;
  }

  AxiomSystem& add(Identity id) {
    identities.push_back(std::move(id));
    return *this;
  }

  AxiomSystem& extend(const AxiomSystem& other) {
    for (const Identity& id : other.identities) identities.push_back(id);
    return *this;
  }
};

// Axiom file: one identity per line, optional trailing "# name"; blank lines
// and lines starting with '#' are skipped.
inline AxiomSystem parse_axiom_file(std::string_view text, std::string sysname = "") {
  AxiomSystem sys(std::move(sysname), {});
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    std::string name;
    if (auto hash = line.find('#'); hash != std::string_view::npos) {
      std::string_view tag = line.substr(hash + 1);
      while (!tag.empty() && std::isspace(static_cast<unsigned char>(tag.front()))) tag.remove_prefix(1);
      while (!tag.empty() && std::isspace(static_cast<unsigned char>(tag.back()))) tag.remove_suffix(1);
      name = std::string(tag);
      line = line.substr(0, hash);
    }
    bool blank = true;
    for (char c : line)
      if (!std::isspace(static_cast<unsigned char>(c))) blank = false;
    if (blank) continue;
    sys.add(Identity::parse(line, name));
  }
  return sys;
}

inline std::string render_axiom_file(const AxiomSystem& sys) {
  std::string out;
  for (const Identity& id : sys.identities) {
    out += id.str();
    if (!id.name.empty()) out += "  # " + id.name;
    out += '\n';
  }
  return out;
}

}  // namespace mvw
