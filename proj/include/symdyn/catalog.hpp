#pragma once

// Named reference systems with golden rank values. The catalog is a plain text
// file (data/catalog.txt); the build embeds a copy so the library works
// without it at run time.

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "symdyn/error.hpp"
#include "symdyn/substitution.hpp"
#include "symdyn/system.hpp"
#include "symdyn/toeplitz.hpp"

#if __has_include("symdyn/catalog_data.hpp")
#include "symdyn/catalog_data.hpp"
#define SYMDYN_HAS_EMBEDDED_CATALOG 1
#endif

namespace symdyn {

enum class Provenance { Published, Computed, Trivial };

inline std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::Published: return "published";
    case Provenance::Computed: return "computed";
    case Provenance::Trivial: return "trivial";
  }
  return "?";
}

struct Golden {
  std::string rank;  // r_c, r_m or r_M
  long value = 1;
  Provenance provenance = Provenance::Computed;
};

struct CatalogEntry {
  std::string name;
  std::string about;
  std::map<std::string, std::string> fields;
  std::map<std::string, std::string> params;  // defaults
  std::vector<Golden> goldens;

  bool constructive() const { return !fields.contains("nonconstructive"); }
  bool is_family() const { return fields.contains("family"); }

  std::optional<long> golden(const std::string& rank) const {
    for (const auto& g : goldens) {
      if (g.rank == rank) return g.value;
    }
    return std::nullopt;
  }
};

inline std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

inline std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(trim(cur));
  out.erase(std::remove(out.begin(), out.end(), std::string{}), out.end());
  return out;
}

// The generalized Morse substitution 0 -> block, 1 -> complement of block.
inline Substitution generalized_morse(const std::string& block) {
  if (block.size() < 2) throw InvalidArgument("generalized-morse: block needs length >= 2");
  Word b;
  for (char c : block) {
    if (c != '0' && c != '1') throw InvalidArgument("generalized-morse: block must be binary");
    b.push_back(static_cast<Symbol>(c - '0'));
  }
  if (b.front() != 0) throw InvalidArgument("generalized-morse: block must start with 0");
  Word comp;
  for (Symbol s : b) comp.push_back(static_cast<Symbol>(1 - s));
  return Substitution({b, comp});
}

// Skeleton "0? 1? ... (r-1)?".
inline ToeplitzSkeleton toeplitz_rank_skeleton(long r) {
  if (r < 1 || r > static_cast<long>(kMaxAlphabet)) throw InvalidArgument("toeplitz-rank: bad r");
  ToeplitzSkeleton sk;
  for (long i = 0; i < r; ++i) sk.stages.push_back(std::string(1, symbol_char(static_cast<Symbol>(i))) + "?");
  return sk;
}

// Skeleton given by nested periods p_1 | p_2 | ... and one filler pattern per
// stage, of length p_i / p_{i-1} with a single '?' marking the hole.
inline System toeplitz_from_skeleton(const std::vector<long>& periods,
                                     const std::vector<std::string>& fillers,
                                     std::string name = "toeplitz") {
  if (periods.empty() || periods.size() != fillers.size()) {
    throw InvalidArgument("toeplitz_from_skeleton: need one filler per period");
  }
  long prev = 1;
  for (std::size_t i = 0; i < periods.size(); ++i) {
    if (periods[i] <= prev || periods[i] % prev != 0) {
      throw InvalidArgument("toeplitz_from_skeleton: periods must increase by divisibility");
    }
    if (static_cast<long>(fillers[i].size()) != periods[i] / prev) {
      throw InvalidArgument("toeplitz_from_skeleton: filler " + std::to_string(i) +
                            " must have length p_i / p_{i-1}");
    }
    prev = periods[i];
  }
  return toeplitz_system(std::move(name), {fillers});
}

class Catalog {
 public:
  static Catalog parse(std::string_view text) {
    Catalog cat;
    CatalogEntry* cur = nullptr;
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    auto fail = [&](const std::string& msg) {
      throw InvalidArgument("catalog line " + std::to_string(lineno) + ": " + msg);
    };
    while (std::getline(in, line)) {
      ++lineno;
      const auto hash = line.find('#');
      auto body = trim(line.substr(0, hash));
      if (body.empty()) continue;
      if (body.front() == '[') {
        if (body.back() != ']') fail("unterminated section header");
        CatalogEntry e;
        e.name = trim(std::string_view(body).substr(1, body.size() - 2));
        if (cat.find(e.name)) fail("duplicate entry " + e.name);
        cat.entries_.push_back(std::move(e));
        cur = &cat.entries_.back();
        continue;
      }
      if (!cur) fail("key outside a section");
      const auto eq = body.find('=');
      if (eq == std::string::npos) fail("expected key = value");
      auto key = trim(std::string_view(body).substr(0, eq));
      auto value = trim(std::string_view(body).substr(eq + 1));
      if (key == "about") {
        cur->about = value;
      } else if (key == "r_c" || key == "r_m" || key == "r_M") {
        auto parts = split(value, ' ');
        if (parts.size() != 2) fail("golden value needs '<value> <provenance>'");
        Golden g;
        g.rank = key;
        g.value = std::stol(parts[0]);
        if (parts[1] == "published") {
          g.provenance = Provenance::Published;
        } else if (parts[1] == "computed") {
          g.provenance = Provenance::Computed;
        } else if (parts[1] == "trivial") {
          g.provenance = Provenance::Trivial;
        } else {
          fail("unknown provenance " + parts[1]);
        }
        cur->goldens.push_back(g);
      } else if (key.rfind("param ", 0) == 0) {
        cur->params[trim(std::string_view(key).substr(6))] = value;
      } else {
        cur->fields[key] = value;
      }
    }
    return cat;
  }

  static Catalog load(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw InvalidArgument("cannot open catalog " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse(ss.str());
  }

#ifdef SYMDYN_HAS_EMBEDDED_CATALOG
  static const Catalog& builtin() {
    static const Catalog cat = parse(kEmbeddedCatalog);
    return cat;
  }
#endif

  std::vector<std::string> list() const {
    std::vector<std::string> out;
    for (const auto& e : entries_) out.push_back(e.name);
    return out;
  }

  const std::vector<CatalogEntry>& entries() const { return entries_; }

  const CatalogEntry* find(const std::string& name) const {
    for (const auto& e : entries_) {
      if (e.name == name) return &e;
    }
    return nullptr;
  }

  const CatalogEntry& entry(const std::string& name) const {
    if (const auto* e = find(name)) return *e;
    throw InvalidArgument("unknown system '" + name + "'");
  }

  System get(const std::string& name, const std::map<std::string, std::string>& params = {}) const {
    const auto& e = entry(name);
    if (!e.constructive()) {
      throw HypothesisError("'" + name + "' is a documentation entry with no explicit construction");
    }
    for (const auto& [k, v] : params) {
      if (!e.params.contains(k)) throw InvalidArgument("'" + name + "' has no parameter '" + k + "'");
    }
    auto param = [&](const std::string& k) {
      auto it = params.find(k);
      return it != params.end() ? it->second : e.params.at(k);
    };
    const auto& f = e.fields;
    if (f.contains("substitution")) {
      std::string rules;
      for (const auto& r : split(f.at("substitution"), ',')) rules += r + "\n";
      return substitution_system(name, Substitution::parse(rules));
    }
    if (f.contains("toeplitz")) {
      return toeplitz_system(name, {split(f.at("toeplitz"), ' ')});
    }
    if (f.contains("factor")) {
      System source = get(f.at("factor"));
      auto rule = split(f.at("rule"), ' ');
      if (rule.size() != 4 || rule[0] != "sum-mod" || rule[2] != "span") {
        throw InvalidArgument("'" + name + "': rule must read 'sum-mod <modulus> span <span>'");
      }
      return factor_system(name, source,
                           sum_mod_rule(source.alphabet_size(), std::stoul(rule[3]), std::stoul(rule[1])));
    }
    if (f.contains("family")) {
      const auto& fam = f.at("family");
      if (fam == "generalized-morse") {
        auto block = param("block");
        return substitution_system(name + "(block=" + block + ")", generalized_morse(block));
      }
      if (fam == "toeplitz-rank") {
        auto r = param("r");
        long rv = 0;
        try {
          rv = std::stol(r);
        } catch (const std::exception&) {
          throw InvalidArgument("toeplitz-rank: r must be an integer");
        }
        return toeplitz_system(name + "(r=" + r + ")", toeplitz_rank_skeleton(rv));
      }
      throw InvalidArgument("unknown family '" + fam + "'");
    }
    throw InvalidArgument("'" + name + "' has no construction");
  }

 private:
  std::vector<CatalogEntry> entries_;
};

}  // namespace symdyn
