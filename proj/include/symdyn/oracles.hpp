#pragma once

// Finite-horizon witness searches for proximality, regional proximality,
// m-equicontinuity points, m-sensitivity, block (compact) m-sensitivity,
// cover m-equicontinuity and return sets.
//
// Conventions, with eps = 2^-K:
//   close at g      d(gx, gy) <  eps   windows agree on [g-K, g+K]
//   separated at g  d(gx, gy) >  eps   windows differ somewhere on [g-K+1, g+K-1]
// Open sets are cylinders on central words of radius L (or W); points are
// windows of two-sided substitution fixed points.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "symdyn/error.hpp"
#include "symdyn/language.hpp"
#include "symdyn/odometer.hpp"
#include "symdyn/substitution.hpp"
#include "symdyn/system.hpp"
#include "symdyn/verdict.hpp"
#include "symdyn/words.hpp"

namespace symdyn {

inline constexpr int kCertificateSchema = 1;

struct SearchBudget {
  long L = 2;    // cylinder radius of the open sets
  long N = 256;  // horizon, |g| <= N
  int K = 2;     // scale exponent, eps = 2^-K
  long B = 8;    // block half-length, compact sets are [-B, B]
  int m = 2;     // tuple arity
  std::vector<long> ladder{1, 2, 4, 8};  // point-neighbourhood radii W

  void validate() const {
    if (L < 0 || N < 0 || K < 1 || B < 0 || m < 2) {
      throw InvalidArgument("budget: need L >= 0, N >= 0, K >= 1, B >= 0, m >= 2");
    }
    if (ladder.empty() || !std::is_sorted(ladder.begin(), ladder.end()) ||
        std::adjacent_find(ladder.begin(), ladder.end()) != ladder.end() || ladder.front() < 0) {
      throw InvalidArgument("budget: ladder must be nonempty and strictly increasing");
    }
  }
};

inline json to_json(const SearchBudget& b) {
  return {{"L", b.L}, {"N", b.N}, {"K", b.K}, {"B", b.B}, {"m", b.m}, {"ladder", b.ladder}};
}

inline SearchBudget budget_from_json(const json& j) {
  SearchBudget b;
  b.L = j.value("L", b.L);
  b.N = j.value("N", b.N);
  b.K = j.value("K", b.K);
  b.B = j.value("B", b.B);
  b.m = j.value("m", b.m);
  if (j.contains("ladder")) b.ladder = j.at("ladder").get<std::vector<long>>();
  return b;
}

// 0, 1, -1, 2, -2, ..., N, -N
inline std::vector<long> horizon_order(long n) {
  std::vector<long> out{0};
  for (long g = 1; g <= n; ++g) {
    out.push_back(g);
    out.push_back(-g);
  }
  return out;
}

inline json system_header(const System& sys) {
  return {{"name", sys.name}, {"construction", sys.construction}, {"hash", sys.hash()}};
}

enum class Proximality { Proximal, Distal };

inline std::string_view to_string(Proximality p) {
  return p == Proximality::Proximal ? "Proximal" : "Distal";
}

namespace detail {

// Aligned pairs: (a, b) -> (image(a)_i, image(b)_i) for every column i. The
// pair is proximal iff a diagonal pair is reachable.
inline Proximality pair_graph_proximality(const Substitution& s, Symbol a, Symbol b) {
  const auto n = s.alphabet_size();
  std::vector<bool> seen(n * n, false);
  std::vector<std::pair<Symbol, Symbol>> stack{{a, b}};
  seen[a * n + b] = true;
  while (!stack.empty()) {
    auto [x, y] = stack.back();
    stack.pop_back();
    if (x == y) return Proximality::Proximal;
    for (std::size_t i = 0; i < s.length(); ++i) {
      Symbol u = s.image(x)[i], v = s.image(y)[i];
      if (!seen[u * n + v]) {
        seen[u * n + v] = true;
        stack.emplace_back(u, v);
      }
    }
  }
  return Proximality::Distal;
}

}  // namespace detail

inline Proximality proximal_pair_exact(const Substitution& s, Symbol a, Symbol b) {
  require_exact_regime(s, "proximal_pair_exact");
  if (a >= s.alphabet_size() || b >= s.alphabet_size()) {
    throw InvalidArgument("proximal_pair_exact: symbol outside alphabet");
  }
  return detail::pair_graph_proximality(s, a, b);
}

namespace detail {

inline std::string_view view(const Word& w, long from, std::size_t len) {
  return {reinterpret_cast<const char*>(w.data()) + from, len};
}

// Words of length 2M+1 (coordinate n at index n+M) whose central block of
// radius W equals `center`.
inline std::vector<const Word*> extensions_of(const LanguageTable& lang, const Word& center, long M) {
  const long W = static_cast<long>(center.size() / 2);
  std::vector<const Word*> out;
  for (const auto& w : lang.words(static_cast<std::size_t>(2 * M + 1))) {
    if (std::equal(center.begin(), center.end(), w.begin() + (M - W))) out.push_back(&w);
  }
  return out;
}

// Groups one language level by central block, so every cylinder is served by
// a single pass over the level.
inline std::map<Word, std::vector<const Word*>> group_by_center(const LanguageTable& lang, long W,
                                                               long M) {
  std::map<Word, std::vector<const Word*>> out;
  for (const auto& w : lang.words(static_cast<std::size_t>(2 * M + 1))) {
    out[Word(w.begin() + (M - W), w.begin() + (M + W + 1))].push_back(&w);
  }
  return out;
}

// First m extensions (in lexicographic order) whose windows at g are pairwise
// separated, i.e. pairwise distinct on [g-K+1, g+K-1].
inline std::vector<const Word*> separated_tuple_at(const std::vector<const Word*>& ext, long M,
                                                   long g, int K, int m) {
  std::vector<const Word*> tuple;
  std::set<std::string_view> patterns;
  const long from = g - K + 1 + M;
  const auto len = static_cast<std::size_t>(2 * K - 1);
  for (const Word* w : ext) {
    if (patterns.insert(view(*w, from, len)).second) {
      tuple.push_back(w);
      if (static_cast<int>(tuple.size()) == m) return tuple;
    }
  }
  return {};
}

// Two segments stay separated at every time of the block iff they never agree
// on 2K-1 consecutive cells.
inline bool separated_throughout(std::string_view a, std::string_view b, int K) {
  long run = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    run = (a[i] == b[i]) ? run + 1 : 0;
    if (run >= 2 * K - 1) return false;
  }
  return true;
}

struct BlockHit {
  std::vector<const Word*> tuple;
  long start = 0;  // first time of the block
};

inline bool extend_clique(const std::vector<std::vector<bool>>& ok, std::vector<std::size_t>& chosen,
                          std::size_t next, int m) {
  if (static_cast<int>(chosen.size()) == m) return true;
  for (std::size_t i = next; i < ok.size(); ++i) {
    bool fits = true;
    for (auto c : chosen) fits = fits && ok[c][i];
    if (!fits) continue;
    chosen.push_back(i);
    if (extend_clique(ok, chosen, i + 1, m)) return true;
    chosen.pop_back();
  }
  return false;
}

// Some m extensions pairwise separated at every time in [s, s+len-1] for a
// block start s from `starts`.
inline std::optional<BlockHit> separated_block(const std::vector<const Word*>& ext, long M, int K,
                                               int m, long len, const std::vector<long>& starts) {
  const auto seg_len = static_cast<std::size_t>(len + 2 * K - 2);
  for (long s : starts) {
    const long from = s - K + 1 + M;
    std::vector<std::string_view> segs;
    std::vector<const Word*> owners;
    std::set<std::string_view> seen;
    for (const Word* w : ext) {
      auto v = view(*w, from, seg_len);
      if (seen.insert(v).second) {
        segs.push_back(v);
        owners.push_back(w);
      }
    }
    if (static_cast<int>(segs.size()) < m) continue;
    std::vector<std::vector<bool>> ok(segs.size(), std::vector<bool>(segs.size(), false));
    for (std::size_t i = 0; i < segs.size(); ++i) {
      for (std::size_t j = i + 1; j < segs.size(); ++j) {
        ok[i][j] = ok[j][i] = separated_throughout(segs[i], segs[j], K);
      }
    }
    std::vector<std::size_t> chosen;
    if (extend_clique(ok, chosen, 0, m)) {
      BlockHit hit;
      hit.start = s;
      for (auto c : chosen) hit.tuple.push_back(owners[c]);
      return hit;
    }
  }
  return std::nullopt;
}

inline json trimmed_tuple(const std::vector<const Word*>& tuple, long M, long lo, long hi,
                          std::size_t alphabet) {
  json out = json::array();
  for (const Word* w : tuple) {
    out.push_back(to_string(CenteredWord(*w, -M, alphabet).restricted(lo, hi)));
  }
  return out;
}

// Block starts s with [s, s+len-1] inside [-N, N], nearest the origin first.
inline std::vector<long> block_starts(long N, long len) {
  std::vector<long> out;
  for (long c : horizon_order(N)) {
    long s = c - len / 2;
    if (s >= -N && s + len - 1 <= N) out.push_back(s);
  }
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Proximality and regional proximality

inline Verdict proximal_pair_search(const CenteredWord& x, const CenteredWord& y,
                                    const SearchBudget& budget) {
  budget.validate();
  const long need = budget.N + budget.K;
  if (x.radius() < need || y.radius() < need) {
    throw InvalidArgument("proximal_pair_search: windows need radius >= N + K");
  }
  Verdict v;
  v.budget = to_json(budget);
  for (long g : horizon_order(budget.N)) {
    if (close_at(x, y, g, budget.K)) {
      v.outcome = Outcome::Witnessed;
      v.label = "Proximal";
      v.certificate = {{"schema_version", kCertificateSchema},
                       {"kind", "proximal-pair"},
                       {"alphabet", x.alphabet_size()},
                       {"scale", budget.K},
                       {"g", g},
                       {"x", to_string(x.restricted(std::min(0L, g - budget.K), std::max(0L, g + budget.K)))},
                       {"y", to_string(y.restricted(std::min(0L, g - budget.K), std::max(0L, g + budget.K)))}};
      return v;
    }
  }
  v.outcome = Outcome::Exhausted;
  v.label = "NoCloseTime";
  v.reason = "no |g| <= N brings the windows within 2^-K";
  return v;
}

inline Verdict regional_proximal_search(const System& sys, const std::vector<CenteredWord>& tuple,
                                        const SearchBudget& budget) {
  budget.validate();
  if (tuple.size() < 2) throw InvalidArgument("regional_proximal_search: need at least 2 points");
  const int K = budget.K;
  std::vector<Word> centers;
  for (const auto& x : tuple) {
    if (x.alphabet_size() != sys.alphabet_size()) throw InvalidArgument("alphabet mismatch");
    if (x.radius() < K) throw InvalidArgument("regional_proximal_search: windows need radius >= K");
    auto c = x.range(-K, K);
    centers.emplace_back(c.begin(), c.end());
    if (!sys.language->contains(centers.back())) {
      throw InvalidArgument("regional_proximal_search: inadmissible window " + to_string(x));
    }
  }
  const long M = budget.N + K;
  std::vector<std::vector<const Word*>> ext;
  for (const auto& c : centers) ext.push_back(detail::extensions_of(*sys.language, c, M));
  Verdict v;
  v.budget = to_json(budget);
  const auto len = static_cast<std::size_t>(2 * K + 1);
  for (long g : horizon_order(budget.N)) {
    std::vector<std::map<std::string_view, const Word*>> pats(ext.size());
    for (std::size_t i = 0; i < ext.size(); ++i) {
      for (const Word* w : ext[i]) pats[i].emplace(detail::view(*w, g - K + M, len), w);
    }
    for (const auto& [pat, w0] : pats[0]) {
      bool common = true;
      for (std::size_t i = 1; i < pats.size() && common; ++i) common = pats[i].contains(pat);
      if (!common) continue;
      std::vector<const Word*> chosen;
      for (const auto& p : pats) chosen.push_back(p.at(pat));
      json originals = json::array();
      for (const auto& c : centers) originals.push_back(to_string(CenteredWord(c, -K, sys.alphabet_size())));
      v.outcome = Outcome::Witnessed;
      v.label = "RegionallyProximal";
      v.certificate = {{"schema_version", kCertificateSchema},
                       {"kind", "regional-proximal"},
                       {"system", system_header(sys)},
                       {"scale", K},
                       {"g", g},
                       {"tuple", originals},
                       {"perturbed", detail::trimmed_tuple(chosen, M, std::min(-long{K}, g - K),
                                                           std::max(long{K}, g + K),
                                                           sys.alphabet_size())}};
      return v;
    }
  }
  v.outcome = Outcome::Exhausted;
  v.label = "NoCommonCloseTime";
  v.reason = "no perturbation within 2^-K meets a common |g| <= N";
  if (sys.substitution && classify(*sys.substitution).exact()) {
    for (int d = 1; d <= 4; ++d) {
      std::vector<std::vector<OdometerResidue>> res;
      for (const auto& c : centers) {
        res.push_back(residue_of_window(*sys.substitution, *sys.language,
                                        CenteredWord(c, -K, sys.alphabet_size()), d));
      }
      bool singletons = std::all_of(res.begin(), res.end(), [](auto& r) { return r.size() == 1; });
      if (!singletons) break;
      bool differ = std::any_of(res.begin(), res.end(), [&](auto& r) { return r[0] != res[0][0]; });
      if (differ) {
        v.notes.push_back("residue mismatch at depth " + std::to_string(d) +
                          ": the points lie in different fibers, so the tuple is not regionally "
                          "proximal");
        break;
      }
    }
  }
  return v;
}

// ---------------------------------------------------------------------------
// m-sensitivity and block m-sensitivity over all cylinders of radius L

struct CylinderReport {
  CenteredWord cylinder;
  bool witnessed = false;
  json witness;  // null when no witness was found
};

struct SensitivityReport {
  Verdict verdict;
  std::vector<CylinderReport> cylinders;
};

inline SensitivityReport m_sensitivity_test(const System& sys, const SearchBudget& budget) {
  budget.validate();
  const long L = budget.L, N = budget.N;
  const int K = budget.K, m = budget.m;
  const long M = std::max(L, N + K);
  auto groups = detail::group_by_center(*sys.language, L, M);
  SensitivityReport report;
  json witnesses = json::array();
  std::vector<std::string> missing;
  const auto order = horizon_order(N);
  for (const auto& u : sys.language->words(static_cast<std::size_t>(2 * L + 1))) {
    CylinderReport cyl{CenteredWord(u, -L, sys.alphabet_size()), false, nullptr};
    const auto& ext = groups[u];
    for (long g : order) {
      auto tuple = detail::separated_tuple_at(ext, M, g, K, m);
      if (tuple.empty()) continue;
      cyl.witnessed = true;
      cyl.witness = {{"cylinder", to_string(cyl.cylinder)},
                     {"g", g},
                     {"tuple", detail::trimmed_tuple(tuple, M, std::min(-L, g - K + 1),
                                                     std::max(L, g + K - 1), sys.alphabet_size())}};
      break;
    }
    if (cyl.witnessed) {
      witnesses.push_back(cyl.witness);
    } else {
      missing.push_back(to_string(u));
    }
    report.cylinders.push_back(std::move(cyl));
  }
  auto& v = report.verdict;
  v.budget = to_json(budget);
  if (missing.empty()) {
    v.outcome = Outcome::Witnessed;
    v.label = "Sensitive";
    v.certificate = {{"schema_version", kCertificateSchema}, {"kind", "m-sensitivity"},
                     {"system", system_header(sys)},         {"m", m},
                     {"scale", K},                           {"cylinder_radius", L},
                     {"witnesses", witnesses}};
  } else {
    v.outcome = Outcome::Exhausted;
    v.label = "NoWitness";
    v.reason = std::to_string(missing.size()) + " cylinder(s) without a separated " +
               std::to_string(m) + "-tuple within the horizon";
    v.notes = missing;
  }
  return report;
}

inline SensitivityReport block_m_sensitivity_test(const System& sys, const SearchBudget& budget) {
  budget.validate();
  const long L = budget.L, N = budget.N, B = budget.B;
  const int K = budget.K, m = budget.m;
  if (N < B) throw InvalidArgument("block test: horizon must be >= B");
  const long M = std::max(L, N + B + K);
  auto groups = detail::group_by_center(*sys.language, L, M);
  std::vector<long> starts;
  for (long h : horizon_order(N)) starts.push_back(h - B);
  SensitivityReport report;
  json witnesses = json::array();
  std::vector<std::string> missing;
  for (const auto& u : sys.language->words(static_cast<std::size_t>(2 * L + 1))) {
    CylinderReport cyl{CenteredWord(u, -L, sys.alphabet_size()), false, nullptr};
    if (auto hit = detail::separated_block(groups[u], M, K, m, 2 * B + 1, starts)) {
      const long h = hit->start + B;
      cyl.witnessed = true;
      cyl.witness = {{"cylinder", to_string(cyl.cylinder)},
                     {"h", h},
                     {"half_length", B},
                     {"tuple", detail::trimmed_tuple(hit->tuple, M, std::min(-L, h - B - K + 1),
                                                     std::max(L, h + B + K - 1),
                                                     sys.alphabet_size())}};
      witnesses.push_back(cyl.witness);
    } else {
      missing.push_back(to_string(u));
    }
    report.cylinders.push_back(std::move(cyl));
  }
  auto& v = report.verdict;
  v.budget = to_json(budget);
  if (missing.empty()) {
    v.outcome = Outcome::Witnessed;
    v.label = "BlockSensitive";
    v.certificate = {{"schema_version", kCertificateSchema}, {"kind", "block-m-sensitivity"},
                     {"system", system_header(sys)},         {"m", m},
                     {"scale", K},                           {"cylinder_radius", L},
                     {"half_length", B},                     {"witnesses", witnesses}};
  } else {
    v.outcome = Outcome::Exhausted;
    v.label = "NoBlockWitness";
    v.reason = std::to_string(missing.size()) + " cylinder(s) without a block-separated " +
               std::to_string(m) + "-tuple within the horizon";
    v.notes = missing;
  }
  return report;
}

// ---------------------------------------------------------------------------
// Point tests

// A point of a substitution shift: the two-sided fixed point of a seed,
// shifted by `shift`.
struct SeedSpec {
  SeedPair seed;
  long shift = 0;
};

inline json to_json(const SeedSpec& s) {
  return {{"left", std::string(1, symbol_char(s.seed.left))},
          {"right", std::string(1, symbol_char(s.seed.right))},
          {"period", s.seed.period},
          {"shift", s.shift}};
}

inline SeedSpec seed_spec_from_json(const json& j) {
  SeedSpec s;
  s.seed.left = *symbol_from_char(j.at("left").get<std::string>().at(0));
  s.seed.right = *symbol_from_char(j.at("right").get<std::string>().at(0));
  s.seed.period = j.at("period").get<int>();
  s.shift = j.value("shift", 0L);
  return s;
}

inline const Substitution& require_substitution(const System& sys, const char* op) {
  if (!sys.substitution) {
    throw HypothesisError(std::string(op) + ": point tests need a substitution-generated system");
  }
  return *sys.substitution;
}

// For every W of the ladder: m points agreeing with x on [-W, W] that are
// pairwise separated at one |g| <= N. Found for all W -> CounterexampleFound
// (x is not an m-equicontinuity point at scale 2^-K); otherwise ConsistentUpTo.
inline Verdict m_equicontinuity_point_test(const System& sys, const SeedSpec& x,
                                           const SearchBudget& budget) {
  budget.validate();
  const auto& s = require_substitution(sys, "m_equicontinuity_point_test");
  const int K = budget.K, m = budget.m;
  Verdict v;
  v.budget = to_json(budget);
  json witnesses = json::array();
  const auto order = horizon_order(budget.N);
  for (long W : budget.ladder) {
    const long M = std::max(W, budget.N + K);
    auto center = seed_window(s, x.seed, W, x.shift);
    auto ext = detail::extensions_of(*sys.language, center.symbols(), M);
    bool found = false;
    for (long g : order) {
      auto tuple = detail::separated_tuple_at(ext, M, g, K, m);
      if (tuple.empty()) continue;
      witnesses.push_back({{"W", W},
                           {"center", to_string(center)},
                           {"g", g},
                           {"tuple", detail::trimmed_tuple(tuple, M, std::min(-W, g - K + 1),
                                                           std::max(W, g + K - 1),
                                                           sys.alphabet_size())}});
      found = true;
      break;
    }
    if (!found) {
      v.outcome = Outcome::Exhausted;
      v.label = "ConsistentUpTo";
      v.value = W;
      v.reason = "no " + std::to_string(m) + " points within radius " + std::to_string(W) +
                 " separate within the horizon";
      return v;
    }
  }
  v.outcome = Outcome::Witnessed;
  v.label = "CounterexampleFound";
  v.certificate = {{"schema_version", kCertificateSchema},
                   {"kind", "point-counterexample"},
                   {"system", system_header(sys)},
                   {"seed", to_json(x)},
                   {"m", m},
                   {"scale", K},
                   {"witnesses", witnesses}};
  return v;
}

// Return set {g : some pair of the tuple is within 2^-K at g} must have no gap
// longer than 2B+1 for every m-tuple near x. A gap of length > 2B+1 is a run of
// 2B+2 consecutive times at which the tuple stays pairwise separated.
inline Verdict cover_m_equicontinuity_test(const System& sys, const SeedSpec& x,
                                           const SearchBudget& budget) {
  budget.validate();
  const auto& s = require_substitution(sys, "cover_m_equicontinuity_test");
  const int K = budget.K, m = budget.m;
  const long N = budget.N;
  Verdict v;
  v.budget = to_json(budget);
  json gaps = json::array();
  for (long W : budget.ladder) {
    const long M = std::max(W, N + K);
    auto center = seed_window(s, x.seed, W, x.shift);
    auto ext = detail::extensions_of(*sys.language, center.symbols(), M);
    // Smallest b <= B such that no tuple stays separated for 2b+2 steps.
    std::optional<detail::BlockHit> longest;
    long bound = -1;
    for (long b = 0; b <= budget.B; ++b) {
      auto hit = detail::separated_block(ext, M, K, m, 2 * b + 2, detail::block_starts(N, 2 * b + 2));
      if (!hit) {
        bound = b;
        break;
      }
      longest = hit;
    }
    if (bound >= 0) {
      v.outcome = Outcome::Witnessed;
      v.label = "CoverBounded";
      v.value = bound;
      v.reason = "every " + std::to_string(m) + "-tuple within radius " + std::to_string(W) +
                 " has return-set gaps of length <= " + std::to_string(2 * bound + 1) +
                 " inside the horizon";
      v.notes.push_back("W=" + std::to_string(W));
      return v;
    }
    const long len = 2 * budget.B + 2;
    gaps.push_back({{"W", W},
                    {"center", to_string(center)},
                    {"start", longest->start},
                    {"length", len},
                    {"tuple", detail::trimmed_tuple(longest->tuple, M,
                                                    std::min(-W, longest->start - K + 1),
                                                    std::max(W, longest->start + len - 1 + K - 1),
                                                    sys.alphabet_size())}});
  }
  v.outcome = Outcome::Exhausted;
  v.label = "FalsifiedUpTo";
  v.reason = "every neighbourhood radius on the ladder holds a tuple with a return-set gap longer "
             "than 2B+1";
  v.certificate = {{"schema_version", kCertificateSchema},
                   {"kind", "cover-gap"},
                   {"system", system_header(sys)},
                   {"seed", to_json(x)},
                   {"m", m},
                   {"scale", K},
                   {"gaps", gaps}};
  return v;
}

// ---------------------------------------------------------------------------
// Return sets N(U, V) = {g : U intersects g V} for cylinders [u]_0, [v]_0:
// some admissible x has v at coordinates 0.. and u at coordinates g...

inline std::vector<long> return_set(const System& sys, const Word& u, const Word& v, long N) {
  if (u.empty() || v.empty()) throw InvalidArgument("return_set: empty word");
  if (!sys.language->contains(u) || !sys.language->contains(v)) {
    throw InvalidArgument("return_set: inadmissible word");
  }
  const long T = N + static_cast<long>(std::max(u.size(), v.size()));
  std::vector<bool> hit(static_cast<std::size_t>(2 * N + 1), false);
  for (const auto& w : sys.language->words(static_cast<std::size_t>(2 * T + 1))) {
    if (!std::equal(v.begin(), v.end(), w.begin() + T)) continue;
    for (long g = -N; g <= N; ++g) {
      if (!hit[static_cast<std::size_t>(g + N)] && std::equal(u.begin(), u.end(), w.begin() + T + g)) {
        hit[static_cast<std::size_t>(g + N)] = true;
      }
    }
  }
  std::vector<long> out;
  for (long g = -N; g <= N; ++g) {
    if (hit[static_cast<std::size_t>(g + N)]) out.push_back(g);
  }
  return out;
}

// Largest difference between consecutive elements (0 for fewer than 2).
inline long max_gap(const std::vector<long>& sorted) {
  long gap = 0;
  for (std::size_t i = 1; i < sorted.size(); ++i) gap = std::max(gap, sorted[i] - sorted[i - 1]);
  return gap;
}

}  // namespace symdyn
