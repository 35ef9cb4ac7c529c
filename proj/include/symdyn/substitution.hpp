#pragma once

// Substitutions, the languages of their subshifts, two-sided fixed points and
// the structural predicates the exact pipelines depend on.

#include <algorithm>
#include <cstdint>
#include <memory>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "symdyn/error.hpp"
#include "symdyn/language.hpp"
#include "symdyn/verdict.hpp"
#include "symdyn/words.hpp"

namespace symdyn {

class Substitution {
 public:
  Substitution() = default;

  explicit Substitution(std::vector<Word> rules) : rules_(std::move(rules)) {
    if (rules_.empty() || rules_.size() > kMaxAlphabet) {
      throw InvalidArgument("substitution needs between 1 and 36 rules");
    }
    for (const auto& img : rules_) {
      if (img.empty()) throw InvalidArgument("substitution images must be nonempty");
      for (Symbol s : img) {
        if (s >= rules_.size()) throw InvalidArgument("image uses a symbol without a rule");
      }
    }
  }

  // Lines of the form "0 -> 01"; blank lines and '#' comments are skipped.
  static Substitution parse(std::string_view text) {
    std::vector<std::pair<char, std::string>> entries;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
      if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
      auto arrow = line.find("->");
      auto blank = line.find_first_not_of(" \t\r");
      if (blank == std::string::npos) continue;
      if (arrow == std::string::npos) {
        throw InvalidArgument("expected 'symbol -> image', got '" + line + "'");
      }
      auto trim = [](std::string s) {
        auto b = s.find_first_not_of(" \t\r");
        auto e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
      };
      std::string lhs = trim(line.substr(0, arrow));
      std::string rhs = trim(line.substr(arrow + 2));
      if (lhs.size() != 1) throw InvalidArgument("rule left side must be one symbol: '" + lhs + "'");
      if (rhs.empty()) throw InvalidArgument("rule image must be nonempty");
      entries.emplace_back(lhs[0], rhs);
    }
    if (entries.empty()) throw InvalidArgument("no substitution rules found");
    std::size_t n = 0;
    for (auto& [c, img] : entries) {
      n = std::max({n, min_alphabet_for(std::string(1, c)), min_alphabet_for(img)});
    }
    std::vector<std::optional<Word>> rules(n);
    for (auto& [c, img] : entries) {
      Symbol s = *symbol_from_char(c);
      if (rules[s]) throw InvalidArgument(std::string("duplicate rule for symbol ") + c);
      rules[s] = parse_word(img, n);
    }
    std::vector<Word> out;
    for (std::size_t i = 0; i < n; ++i) {
      if (!rules[i]) {
        throw InvalidArgument(std::string("missing rule for symbol ") +
                              symbol_char(static_cast<Symbol>(i)));
      }
      out.push_back(std::move(*rules[i]));
    }
    return Substitution(std::move(out));
  }

  std::size_t alphabet_size() const { return rules_.size(); }
  const Word& image(Symbol s) const { return rules_.at(s); }
  const std::vector<Word>& rules() const { return rules_; }

  bool is_constant_length() const {
    return std::all_of(rules_.begin(), rules_.end(),
                       [&](const Word& w) { return w.size() == rules_[0].size(); });
  }

  // Common image length q; throws for non-constant-length substitutions.
  std::size_t length() const {
    if (!is_constant_length()) throw HypothesisError("substitution is not of constant length");
    return rules_[0].size();
  }

  std::size_t min_image_length() const {
    std::size_t m = rules_[0].size();
    for (const auto& r : rules_) m = std::min(m, r.size());
    return m;
  }

  Word apply(std::span<const Symbol> w) const {
    Word out;
    for (Symbol s : w) {
      const auto& img = image(s);
      out.insert(out.end(), img.begin(), img.end());
    }
    return out;
  }

  Word power_image(Symbol s, int k) const {
    Word w{s};
    for (int i = 0; i < k; ++i) w = apply(w);
    return w;
  }

  // Canonical text form, one rule per line.
  std::string to_text() const {
    std::string out;
    for (std::size_t i = 0; i < rules_.size(); ++i) {
      out += symbol_char(static_cast<Symbol>(i));
      out += " -> ";
      out += to_string(rules_[i]);
      out += '\n';
    }
    return out;
  }

  friend bool operator==(const Substitution&, const Substitution&) = default;

 private:
  std::vector<Word> rules_;
};

// M[a][b] = number of occurrences of b in image(a).
inline std::vector<std::vector<std::uint64_t>> incidence_matrix(const Substitution& s) {
  const auto n = s.alphabet_size();
  std::vector<std::vector<std::uint64_t>> m(n, std::vector<std::uint64_t>(n, 0));
  for (std::size_t a = 0; a < n; ++a) {
    for (Symbol b : s.image(static_cast<Symbol>(a))) ++m[a][b];
  }
  return m;
}

// Some power M^k (k <= n^2) of the incidence matrix is entrywise positive.
// Works on the boolean pattern, which is all positivity depends on.
inline bool is_primitive(const Substitution& s) {
  const auto n = s.alphabet_size();
  std::vector<std::vector<bool>> base(n, std::vector<bool>(n, false));
  for (std::size_t a = 0; a < n; ++a) {
    for (Symbol b : s.image(static_cast<Symbol>(a))) base[a][b] = true;
  }
  auto power = base;
  for (std::size_t k = 1; k <= n * n; ++k) {
    bool positive = true;
    for (const auto& row : power) {
      for (bool x : row) positive = positive && x;
    }
    if (positive) return true;
    std::vector<std::vector<bool>> next(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (!power[i][j]) continue;
        for (std::size_t l = 0; l < n; ++l) {
          if (base[j][l]) next[i][l] = true;
        }
      }
    }
    power = std::move(next);
  }
  return false;
}

namespace detail {

// Factors of length <= n of all iterates image^k(a): grow the set by images of
// its own members until one round adds nothing. Every factor of length l of
// image(v) already lies in the image of a factor of v of length <= l, so the
// fixed point is the full set.
inline WordSet short_language(const Substitution& s, std::size_t n) {
  std::set<Word> found;
  for (std::size_t a = 0; a < s.alphabet_size(); ++a) {
    if (n >= 1) found.insert(Word{static_cast<Symbol>(a)});
  }
  for (;;) {
    std::set<Word> next = found;
    for (const auto& u : found) {
      Word img = s.apply(u);
      for (std::size_t len = 1; len <= n; ++len) {
        for (std::size_t i = 0; i + len <= img.size(); ++i) {
          next.emplace(img.begin() + static_cast<long>(i),
                       img.begin() + static_cast<long>(i + len));
        }
      }
    }
    if (next == found) break;
    found = std::move(next);
  }
  WordSet out;
  for (const auto& w : found) {
    if (w.size() == n) out.push_back(w);
  }
  return out;
}

}  // namespace detail

// Language table of the subshift generated by a primitive substitution.
// Length n is read off the images of admissible words of length
// ceil((n-1)/q_min) + 1; short lengths come from a closure fixed point.
inline std::shared_ptr<const LanguageTable> make_language(const Substitution& s) {
  if (!is_primitive(s)) throw HypothesisError("language(): substitution is not primitive");
  return std::make_shared<const LanguageTable>(
      s.alphabet_size(), [s](std::size_t n, const LanguageTable& self) -> WordSet {
        if (n == 0) return {Word{}};
        const std::size_t qmin = s.min_image_length();
        if (qmin < 2 || n <= 2) return detail::short_language(s, n);
        const std::size_t r = (n - 1 + qmin - 1) / qmin + 1;
        WordSet out;
        for (const auto& u : self.words(r)) collect_factors(s.apply(u), n, out);
        return out;
      });
}

inline WordSet language(const Substitution& s, std::size_t n) {
  if (n == 0) throw InvalidArgument("language(): n must be >= 1");
  return make_language(s)->words(n);
}

// A two-sided fixed point of image^period: lim image^{pk}(left) . image^{pk}(right).
struct SeedPair {
  Symbol left = 0;   // b: last letter, fixed under image^period
  Symbol right = 0;  // a: first letter, fixed under image^period
  int period = 1;
  friend bool operator==(const SeedPair&, const SeedPair&) = default;
  friend auto operator<=>(const SeedPair&, const SeedPair&) = default;
};

inline std::vector<SeedPair> seed_pairs(const Substitution& s, const LanguageTable& lang) {
  const auto n = s.alphabet_size();
  auto first = [&](Symbol a) { return s.image(a).front(); };
  auto last = [&](Symbol a) { return s.image(a).back(); };
  // Period of a under f, or 0 if a is not periodic.
  auto cycle_length = [&](auto f, Symbol a) {
    Symbol x = a;
    for (std::size_t i = 1; i <= n; ++i) {
      x = f(x);
      if (x == a) return static_cast<int>(i);
    }
    return 0;
  };
  int period = 1;
  for (std::size_t a = 0; a < n; ++a) {
    if (int c = cycle_length(first, static_cast<Symbol>(a))) period = std::lcm(period, c);
    if (int c = cycle_length(last, static_cast<Symbol>(a))) period = std::lcm(period, c);
  }
  std::vector<SeedPair> out;
  for (std::size_t b = 0; b < n; ++b) {
    if (cycle_length(last, static_cast<Symbol>(b)) == 0) continue;
    for (std::size_t a = 0; a < n; ++a) {
      if (cycle_length(first, static_cast<Symbol>(a)) == 0) continue;
      Word ba{static_cast<Symbol>(b), static_cast<Symbol>(a)};
      if (lang.contains(ba)) {
        out.push_back({static_cast<Symbol>(b), static_cast<Symbol>(a), period});
      }
    }
  }
  return out;
}

inline std::vector<SeedPair> seed_pairs(const Substitution& s) {
  return seed_pairs(s, *make_language(s));
}

// Window [-radius, radius] of the fixed point generated by a seed, shifted by g
// (coordinate n of the result is coordinate n+g of the fixed point).
inline CenteredWord seed_window(const Substitution& s, const SeedPair& seed, long radius,
                                long shift = 0) {
  if (radius < 0) throw InvalidArgument("seed_window: negative radius");
  const std::size_t need = static_cast<std::size_t>(radius + std::abs(shift)) + 1;
  Word left{seed.left}, right{seed.right};
  for (int iter = 0; left.size() < need || right.size() < need; ++iter) {
    if (iter > 64) throw HypothesisError("seed_window: images do not grow");
    for (int i = 0; i < seed.period; ++i) {
      left = s.apply(left);
      right = s.apply(right);
    }
  }
  if (left.back() != seed.left || right.front() != seed.right) {
    throw InvalidArgument("seed_window: letters are not fixed under the seed period");
  }
  Word sym(left.end() - static_cast<long>(need - 1), left.end());
  sym.insert(sym.end(), right.begin(), right.begin() + static_cast<long>(need));
  CenteredWord full(std::move(sym), -static_cast<long>(need - 1), s.alphabet_size());
  return shift_window(full, shift).restricted(-radius, radius);
}

inline long ipow(long base, int exp) {
  long r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

// image^k applied to a window; the image of the coordinate-0 symbol occupies
// q^k cells and the new origin sits at offset `cut` inside that block.
inline CenteredWord expand(const Substitution& s, const CenteredWord& w, int k, long cut) {
  if (k < 0) throw InvalidArgument("expand: negative power");
  const long block = ipow(static_cast<long>(s.length()), k);
  if (cut < 0 || cut >= block) throw InvalidArgument("expand: cut out of range");
  Word out = w.symbols();
  for (int i = 0; i < k; ++i) out = s.apply(out);
  return CenteredWord(std::move(out), w.left() * block - cut, w.alphabet_size());
}

struct HeightConfig {
  int prefix_exponent = 8;         // prefix length q^prefix_exponent
  std::size_t max_prefix = 1u << 24;
};

// Largest h >= 1 coprime to q dividing gcd{n >= 1 : u_n = u_0}, u a one-sided
// fixed point. The gcd is read at prefix lengths q^(e-2), q^(e-1), q^e and
// must agree at all three; otherwise the result is Exhausted.
inline Verdict height(const Substitution& s, const HeightConfig& config = {}) {
  const std::size_t q = s.length();
  if (q < 2) throw HypothesisError("height: substitution length must be >= 2");
  auto first = [&](Symbol a) { return s.image(a).front(); };
  // A letter on a cycle of the first-letter map, and that cycle's length.
  Symbol a = 0;
  for (std::size_t i = 0; i < s.alphabet_size(); ++i) a = first(a);
  int p = 1;
  for (Symbol x = first(a); x != a; x = first(x)) ++p;

  std::vector<std::size_t> checkpoints;
  for (int e = std::max(1, config.prefix_exponent - 2); e <= config.prefix_exponent; ++e) {
    checkpoints.push_back(std::min<std::size_t>(static_cast<std::size_t>(ipow(q, e)),
                                                config.max_prefix));
  }
  Word u{a};
  while (u.size() < checkpoints.back()) {
    for (int i = 0; i < p; ++i) u = s.apply(u);
  }
  std::vector<long> gcds;
  long g = 0;
  std::size_t next = 0;
  for (std::size_t n = 1; n <= checkpoints.back() && next < checkpoints.size(); ++n) {
    if (n < u.size() && u[n] == u[0]) g = std::gcd(g, static_cast<long>(n));
    if (n + 1 == checkpoints[next]) {
      gcds.push_back(g);
      ++next;
    }
  }
  while (gcds.size() < checkpoints.size()) gcds.push_back(g);
  Verdict v;
  v.budget = {{"prefix_lengths", checkpoints}};
  if (gcds.front() == 0 || !std::all_of(gcds.begin(), gcds.end(),
                                        [&](long x) { return x == gcds.front(); })) {
    v.outcome = Outcome::Exhausted;
    v.label = "Unstable";
    v.reason = "return-time gcd did not stabilize over the prefix checkpoints";
    return v;
  }
  long h = gcds.front();
  for (long d = std::gcd(h, static_cast<long>(q)); d > 1; d = std::gcd(h, static_cast<long>(q))) {
    h /= d;
  }
  v.outcome = Outcome::Witnessed;
  v.label = "Height";
  v.value = h;
  return v;
}

// Factor-complexity test: Refuted (periodic, value = p(n)) as soon as
// p(n) == p(n+1); Witnessed when p is strictly increasing up to n_max and
// p(n_max) > n_max; Exhausted otherwise.
inline Verdict aperiodicity_check(const LanguageTable& lang, std::size_t n_max) {
  Verdict v;
  v.budget = {{"n_max", n_max}};
  std::size_t prev = lang.complexity(1);
  for (std::size_t n = 1; n <= n_max; ++n) {
    std::size_t cur = lang.complexity(n + 1);
    if (cur == prev) {
      v.outcome = Outcome::Refuted;
      v.label = "Periodic";
      v.value = static_cast<long>(prev);
      v.reason = "p(" + std::to_string(n) + ") = p(" + std::to_string(n + 1) + ") = " +
                 std::to_string(prev);
      return v;
    }
    prev = cur;
  }
  if (lang.complexity(n_max) > n_max) {
    v.outcome = Outcome::Witnessed;
    v.label = "Aperiodic";
    v.reason = "p(n) > n and strictly increasing up to n = " + std::to_string(n_max);
  } else {
    v.outcome = Outcome::Exhausted;
    v.label = "Undecided";
  }
  return v;
}

inline Verdict aperiodicity_check(const Substitution& s, std::size_t n_max) {
  return aperiodicity_check(*make_language(s), n_max);
}

// The hypotheses the exact rank pipelines rely on.
struct Regime {
  bool primitive = false;
  bool constant_length = false;
  bool aperiodic = false;
  std::optional<long> height;
  std::size_t length = 0;

  bool trivial_alphabet = false;
  bool exact() const {
    return primitive && constant_length && length >= 2 && height == 1 &&
           (aperiodic || trivial_alphabet);
  }
};

inline Regime classify(const Substitution& s, std::size_t n_max = 32) {
  Regime r;
  r.primitive = is_primitive(s);
  r.constant_length = s.is_constant_length();
  r.trivial_alphabet = s.alphabet_size() == 1;
  if (r.constant_length) r.length = s.length();
  if (r.primitive) r.aperiodic = aperiodicity_check(s, n_max).witnessed();
  if (r.primitive && r.constant_length && r.length >= 2) {
    auto h = height(s);
    if (h.witnessed()) r.height = h.value;
  }
  return r;
}

}  // namespace symdyn
