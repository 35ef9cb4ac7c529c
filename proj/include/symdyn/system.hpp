#pragma once

// A subshift under study, together with the construction that produced it.
// The construction is plain JSON so certificates can carry it and rebuild the
// system on replay.

#include <cstdint>
#include <cstdio>
#include <map>
#include <memory>
#include <optional>
#include <string>

#include "symdyn/error.hpp"
#include "symdyn/language.hpp"
#include "symdyn/substitution.hpp"
#include "symdyn/toeplitz.hpp"
#include "symdyn/verdict.hpp"

namespace symdyn {

// Local rule of a sliding block code: words of length `span` -> symbols.
struct SlidingRule {
  std::size_t span = 1;
  std::size_t target_alphabet = 1;
  std::map<Word, Symbol> table;
};

// (x_0 + ... + x_{span-1}) mod modulus on all words over the source alphabet.
inline SlidingRule sum_mod_rule(std::size_t source_alphabet, std::size_t span, std::size_t modulus) {
  if (span < 1 || modulus < 1 || modulus > kMaxAlphabet) {
    throw InvalidArgument("sum_mod_rule: bad span or modulus");
  }
  SlidingRule rule;
  rule.span = span;
  rule.target_alphabet = modulus;
  Word w(span, 0);
  for (;;) {
    std::size_t sum = 0;
    for (Symbol s : w) sum += s;
    rule.table[w] = static_cast<Symbol>(sum % modulus);
    std::size_t i = 0;
    while (i < span && ++w[i] == source_alphabet) w[i++] = 0;
    if (i == span) break;
  }
  return rule;
}

inline Word apply_rule(const SlidingRule& rule, std::span<const Symbol> w) {
  Word out;
  if (w.size() < rule.span) return out;
  for (std::size_t i = 0; i + rule.span <= w.size(); ++i) {
    Word key(w.begin() + static_cast<long>(i), w.begin() + static_cast<long>(i + rule.span));
    auto it = rule.table.find(key);
    if (it == rule.table.end()) {
      throw InvalidArgument("sliding rule is not defined on " + to_string(key));
    }
    out.push_back(it->second);
  }
  return out;
}

// Language of the image of `source` under the sliding block code. The rule
// must be total on the source words of length `span`.
inline std::shared_ptr<const LanguageTable> sliding_block_factor(
    std::shared_ptr<const LanguageTable> source, SlidingRule rule) {
  for (const auto& w : source->words(rule.span)) {
    if (!rule.table.contains(w)) {
      throw InvalidArgument("sliding_block_factor: rule is partial, missing " + to_string(w));
    }
    if (rule.table.at(w) >= rule.target_alphabet) {
      throw InvalidArgument("sliding_block_factor: rule output outside target alphabet");
    }
  }
  const auto alphabet = rule.target_alphabet;
  return std::make_shared<const LanguageTable>(
      alphabet, [source = std::move(source), rule = std::move(rule)](std::size_t n,
                                                                     const LanguageTable&) {
        WordSet out;
        if (n == 0) return WordSet{Word{}};
        for (const auto& w : source->words(n + rule.span - 1)) out.push_back(apply_rule(rule, w));
        return out;
      });
}

struct System {
  std::string name;
  json construction;
  std::shared_ptr<const LanguageTable> language;
  // Present when the system is generated by a substitution (directly or via a
  // Toeplitz skeleton).
  std::optional<Substitution> substitution;

  std::size_t alphabet_size() const { return language->alphabet_size(); }

  // FNV-1a 64 of the canonical construction text.
  std::string hash() const {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : construction.dump()) {
      h ^= c;
      h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
  }
};

inline json rule_to_json(const SlidingRule& rule) {
  json table = json::object();
  for (const auto& [k, v] : rule.table) table[to_string(k)] = std::string(1, symbol_char(v));
  return {{"span", rule.span}, {"alphabet", rule.target_alphabet}, {"table", table}};
}

inline SlidingRule rule_from_json(const json& j, std::size_t source_alphabet) {
  SlidingRule rule;
  rule.span = j.at("span").get<std::size_t>();
  rule.target_alphabet = j.at("alphabet").get<std::size_t>();
  for (const auto& [k, v] : j.at("table").items()) {
    Word key = parse_word(k, source_alphabet);
    Word val = parse_word(v.get<std::string>(), rule.target_alphabet);
    if (key.size() != rule.span || val.size() != 1) throw InvalidArgument("bad sliding rule entry");
    rule.table[key] = val[0];
  }
  return rule;
}

inline System substitution_system(std::string name, const Substitution& s) {
  System sys;
  sys.name = std::move(name);
  sys.construction = {{"type", "substitution"}, {"rules", s.to_text()}};
  sys.language = make_language(s);
  sys.substitution = s;
  return sys;
}

inline System toeplitz_system(std::string name, const ToeplitzSkeleton& sk) {
  System sys = substitution_system(std::move(name), toeplitz_substitution(sk));
  sys.construction = {{"type", "toeplitz"}, {"stages", sk.stages}};
  return sys;
}

inline System factor_system(std::string name, const System& source, SlidingRule rule) {
  System sys;
  sys.name = std::move(name);
  sys.construction = {{"type", "factor"},
                      {"source", source.construction},
                      {"rule", rule_to_json(rule)}};
  sys.language = sliding_block_factor(source.language, std::move(rule));
  return sys;
}

// Inverse of System::construction.
inline System build_system(const json& construction, std::string name = "") {
  const auto type = construction.at("type").get<std::string>();
  if (type == "substitution") {
    return substitution_system(std::move(name),
                               Substitution::parse(construction.at("rules").get<std::string>()));
  }
  if (type == "toeplitz") {
    return toeplitz_system(std::move(name),
                           {construction.at("stages").get<std::vector<std::string>>()});
  }
  if (type == "factor") {
    System source = build_system(construction.at("source"));
    auto rule = rule_from_json(construction.at("rule"), source.alphabet_size());
    return factor_system(std::move(name), source, std::move(rule));
  }
  throw InvalidArgument("unknown system construction type '" + type + "'");
}

}  // namespace symdyn
