#pragma once

// Coincidence, minimal and maximal rank of a constant-length substitution
// shift over its odometer, the rank profile they predict, and the extension
// inequality r_c(Y) <= r_c(X) <= r_m(Y) for proximal extensions X -> Y.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "symdyn/error.hpp"
#include "symdyn/odometer.hpp"
#include "symdyn/oracles.hpp"
#include "symdyn/substitution.hpp"
#include "symdyn/system.hpp"
#include "symdyn/verdict.hpp"

namespace symdyn {

enum class EstimateKind { Exact, Stabilized, LowerBound };

inline std::string_view to_string(EstimateKind k) {
  switch (k) {
    case EstimateKind::Exact: return "Exact";
    case EstimateKind::Stabilized: return "Stabilized";
    case EstimateKind::LowerBound: return "LowerBound";
  }
  return "?";
}

struct Estimate {
  std::optional<long> value;  // nullopt is the infinity marker
  EstimateKind kind = EstimateKind::LowerBound;
  std::string method;         // pair-graph, column-number, fiber-census, ...
  json evidence = json::object();

  bool infinite() const { return !value.has_value(); }

  static Estimate infinity(std::string method) {
    return {std::nullopt, EstimateKind::LowerBound, std::move(method), json::object()};
  }
};

inline json to_json(const Estimate& e) {
  json j{{"kind", std::string(to_string(e.kind))}, {"method", e.method}, {"evidence", e.evidence}};
  j["value"] = e.value ? json(*e.value) : json("inf");
  return j;
}

// a <= b with infinity above every integer.
inline bool rank_le(const Estimate& a, const Estimate& b) {
  if (b.infinite()) return true;
  if (a.infinite()) return false;
  return *a.value <= *b.value;
}

struct RankReport {
  std::string system;
  Estimate r_c, r_m, r_M;
  json regime = json::object();

  bool almost_automorphic() const { return r_m.value == 1; }
};

inline json to_json(const RankReport& r) {
  return {{"system", r.system},     {"r_c", to_json(r.r_c)}, {"r_m", to_json(r.r_m)},
          {"r_M", to_json(r.r_M)},  {"regime", r.regime},
          {"almost_automorphic", r.almost_automorphic()}};
}

inline bool rank_chain_holds(const RankReport& r) {
  return rank_le(r.r_c, r.r_m) && rank_le(r.r_m, r.r_M);
}

inline json to_json(const Regime& r) {
  json j{{"primitive", r.primitive},
         {"constant_length", r.constant_length},
         {"aperiodic", r.aperiodic},
         {"exact", r.exact()}};
  j["height"] = r.height ? json(*r.height) : json(nullptr);
  if (r.constant_length) j["length"] = r.length;
  return j;
}

// ---------------------------------------------------------------------------
// Coincidence rank

namespace detail {

inline void largest_distal_subset(const Substitution& s, const Word& column, std::size_t next,
                                  Word& current, Word& best) {
  if (current.size() > best.size()) best = current;
  for (std::size_t i = next; i < column.size(); ++i) {
    if (current.size() + (column.size() - i) <= best.size()) return;
    bool distal = true;
    for (Symbol a : current) {
      distal = distal && pair_graph_proximality(s, a, column[i]) == Proximality::Distal;
    }
    if (!distal) continue;
    current.push_back(column[i]);
    largest_distal_subset(s, column, i + 1, current, best);
    current.pop_back();
  }
}

}  // namespace detail

// Largest pairwise-distal subset of a minimal column. Outside the exact
// regime only the trivial bound 1 is returned.
inline Estimate coincidence_rank(const Substitution& s) {
  if (!classify(s).exact()) {
    return {1, EstimateKind::LowerBound, "trivial-bound",
            {{"note", "outside the exact regime; no pair-graph computation"}}};
  }
  auto cn = column_number(s);
  Word current, best;
  detail::largest_distal_subset(s, cn.witness_column, 0, current, best);
  json witness = json::array();
  for (Symbol a : best) witness.push_back(std::string(1, symbol_char(a)));
  return {static_cast<long>(best.size()),
          EstimateKind::Exact,
          "pair-graph",
          {{"column", to_string(cn.witness_column)},
           {"column_depth", cn.depth_witness},
           {"column_number", cn.c},
           {"distal_subset", witness}}};
}

// ---------------------------------------------------------------------------
// Minimal and maximal rank from fiber censuses

struct RankOptions {
  int depth_max = 4;
  long radius_max = 64;
  // Residues per depth before switching to an evenly spaced sample.
  long residue_cap = 4096;
  // Extra residues drawn at random_depth, folded into the deepest level.
  int random_residues = 16;
  int random_depth = 6;
  std::uint64_t seed = 0x5eed;
  CensusOptions census{};
};

struct CensusSample {
  OdometerResidue residue;
  int level = 0;  // depth level the sample is counted at
  std::size_t count_full = 0;  // radius radius_max
  std::size_t count_half = 0;  // radius radius_max / 2
  bool stabilized = false;
  int resolved_depth = 0;
};

inline std::vector<OdometerResidue> residue_samples(long q, int depth, long cap) {
  const long mod = ipow(q, depth);
  std::vector<OdometerResidue> out;
  if (mod <= cap) {
    for (long v = 0; v < mod; ++v) out.emplace_back(q, depth, v);
    return out;
  }
  // Both orbit-of-zero residues plus an even spread.
  std::set<long> values{0, mod - 1};
  for (long i = 0; i < cap; ++i) values.insert(i * (mod / cap));
  for (long v : values) out.emplace_back(q, depth, v);
  return out;
}

inline std::vector<CensusSample> census_samples(const Substitution& s, const LanguageTable& lang,
                                                const RankOptions& opt) {
  if (opt.depth_max < 1 || opt.radius_max < 2) {
    throw InvalidArgument("rank options: need depth_max >= 1 and radius_max >= 2");
  }
  const long q = static_cast<long>(s.length());
  std::vector<std::pair<OdometerResidue, int>> todo;
  for (int d = 1; d <= opt.depth_max; ++d) {
    for (const auto& r : residue_samples(q, d, opt.residue_cap)) todo.emplace_back(r, d);
  }
  if (opt.random_residues > 0) {
    // Keep q^depth small enough that the census has room to deepen.
    int depth = opt.random_depth;
    while (depth > opt.depth_max && ipow(q, depth) > (1L << 16)) --depth;
    std::mt19937_64 rng(opt.seed);
    const long mod = ipow(q, depth);
    std::uniform_int_distribution<long> pick(0, mod - 1);
    for (int i = 0; i < opt.random_residues; ++i) {
      todo.emplace_back(OdometerResidue(q, depth, pick(rng)), opt.depth_max);
    }
  }
  PowerImages powers(s);
  std::vector<CensusSample> out;
  for (const auto& [r, level] : todo) {
    auto full = fiber_census(s, lang, powers, r, opt.radius_max, opt.census);
    auto half = fiber_census(s, lang, powers, r, opt.radius_max / 2, opt.census);
    out.push_back({r, level, full.count(), half.count(), full.stabilized && half.stabilized,
                   full.resolved_depth});
  }
  return out;
}

namespace detail {

// Cumulative extremum over levels <= depth, at full or half radius. Among
// samples tied at the extremum a stabilized one is preferred.
inline const CensusSample* extremal(const std::vector<CensusSample>& samples, int depth, bool half,
                                    bool want_max) {
  const CensusSample* best = nullptr;
  for (const auto& c : samples) {
    if (c.level > depth) continue;
    const auto v = half ? c.count_half : c.count_full;
    if (!best) {
      best = &c;
      continue;
    }
    const auto b = half ? best->count_half : best->count_full;
    if (want_max ? v > b : v < b) {
      best = &c;
    } else if (v == b && c.stabilized && !best->stabilized) {
      best = &c;
    }
  }
  return best;
}

inline Estimate census_estimate(const std::vector<CensusSample>& samples, const RankOptions& opt,
                                bool want_max) {
  const auto* deep = extremal(samples, opt.depth_max, false, want_max);
  const auto* shallow = extremal(samples, opt.depth_max - 1, false, want_max);
  const auto* narrow = extremal(samples, opt.depth_max, true, want_max);
  const auto value = deep->count_full;
  const bool stable = shallow && shallow->count_full == value && narrow->count_half == value &&
                      deep->stabilized;
  Estimate e;
  e.value = static_cast<long>(value);
  e.kind = stable ? EstimateKind::Stabilized : EstimateKind::LowerBound;
  e.method = "fiber-census";
  e.evidence = {{"depth", opt.depth_max},
                {"radius", opt.radius_max},
                {"samples", samples.size()},
                {"residue",
                 {{"q", deep->residue.q}, {"depth", deep->residue.depth}, {"value", deep->residue.value}}},
                {"resolved_depth", deep->resolved_depth}};
  if (!stable) {
    e.evidence["note"] = "count changed across the last depth or radius increment";
  }
  return e;
}

}  // namespace detail

inline Estimate minimal_rank(const Substitution& s, const RankOptions& opt = {}) {
  require_exact_regime(s, "minimal_rank");
  auto lang = make_language(s);
  return detail::census_estimate(census_samples(s, *lang, opt), opt, false);
}

inline Estimate maximal_rank(const Substitution& s, const RankOptions& opt = {}) {
  require_exact_regime(s, "maximal_rank");
  auto lang = make_language(s);
  return detail::census_estimate(census_samples(s, *lang, opt), opt, true);
}

inline RankReport rank_report(const System& sys, const RankOptions& opt = {}) {
  RankReport r;
  r.system = sys.name;
  if (!sys.substitution) {
    const Estimate one{1, EstimateKind::LowerBound, "trivial-bound",
                       {{"note", "not substitution-generated; no exact pipeline"}}};
    r.r_c = r.r_m = r.r_M = one;
    r.regime = {{"exact", false}, {"substitution", false}};
    return r;
  }
  const auto& s = *sys.substitution;
  const auto regime = classify(s);
  r.regime = to_json(regime);
  if (!regime.exact()) {
    const Estimate one{1, EstimateKind::LowerBound, "trivial-bound",
                       {{"note", "outside the exact regime"}}};
    r.r_c = r.r_m = r.r_M = one;
    return r;
  }
  r.r_c = coincidence_rank(s);
  auto samples = census_samples(s, *sys.language, opt);
  r.r_m = detail::census_estimate(samples, opt, false);
  r.r_M = detail::census_estimate(samples, opt, true);
  return r;
}

// The odometer Z_q is equicontinuous: every fiber over itself is a point.
inline RankReport odometer_rank_report(long q) {
  if (q < 2) throw InvalidArgument("odometer base must be >= 2");
  RankReport r;
  r.system = "odometer-" + std::to_string(q);
  const Estimate one{1, EstimateKind::Exact, "equicontinuous", json::object()};
  r.r_c = r.r_m = r.r_M = one;
  r.regime = {{"exact", true}, {"equicontinuous", true}, {"q", q}};
  return r;
}

// ---------------------------------------------------------------------------
// Predicted profile

struct ProfileRow {
  int m = 2;
  bool equicontinuous = false;
  bool sensitive = false;
  bool compactly_sensitive = false;
  bool cover_equicontinuous = false;
};

struct MultivariateProfile {
  std::string system;
  std::vector<ProfileRow> rows;
  // Some rank was only a lower bound, so the profile is provisional.
  bool provisional = false;
};

inline MultivariateProfile predict_profile(const RankReport& r, int m_max) {
  if (m_max < 2) throw InvalidArgument("predict_profile: m_max must be >= 2");
  MultivariateProfile p;
  p.system = r.system;
  p.provisional = r.r_c.kind == EstimateKind::LowerBound || r.r_M.kind == EstimateKind::LowerBound;
  for (int m = 2; m <= m_max; ++m) {
    ProfileRow row;
    row.m = m;
    row.sensitive = r.r_M.infinite() || *r.r_M.value >= m;
    row.equicontinuous = !row.sensitive;
    row.compactly_sensitive = r.r_c.infinite() || *r.r_c.value >= m;
    row.cover_equicontinuous = !row.compactly_sensitive;
    p.rows.push_back(row);
  }
  return p;
}

inline json to_json(const MultivariateProfile& p) {
  json rows = json::object();
  for (const auto& r : p.rows) {
    rows[std::to_string(r.m)] = {{"m_equicontinuous", r.equicontinuous},
                                 {"m_sensitive", r.sensitive},
                                 {"compactly_m_sensitive", r.compactly_sensitive},
                                 {"cover_m_equicontinuous", r.cover_equicontinuous}};
  }
  return {{"system", p.system}, {"provisional", p.provisional}, {"profile", rows}};
}

// r_c(Y) <= r_c(X) <= r_m(Y) for a factor map X -> Y the caller certifies as
// a proximal extension.
inline bool check_extension_inequality(const RankReport& x, const RankReport& y, bool proximal) {
  if (!proximal) {
    throw HypothesisError("check_extension_inequality: the factor map must be a proximal extension");
  }
  return rank_le(y.r_c, x.r_c) && rank_le(x.r_c, y.r_m);
}

}  // namespace symdyn
