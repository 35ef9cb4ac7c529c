#pragma once

// The q-adic odometer as maximal equicontinuous factor of a constant-length
// substitution shift: cutting windows into image blocks, residues, columns and
// fiber censuses.

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "symdyn/error.hpp"
#include "symdyn/language.hpp"
#include "symdyn/substitution.hpp"
#include "symdyn/verdict.hpp"
#include "symdyn/words.hpp"

namespace symdyn {

// A point of Z/q^k Z, the depth-k coordinate of the odometer.
struct OdometerResidue {
  long q = 2;
  int depth = 0;
  long value = 0;

  OdometerResidue() = default;
  OdometerResidue(long q_, int depth_, long value_) : q(q_), depth(depth_), value(value_) {
    if (q < 2) throw InvalidArgument("odometer base must be >= 2");
    if (depth < 0) throw InvalidArgument("odometer depth must be >= 0");
    if (value < 0 || value >= modulus()) throw InvalidArgument("residue out of range");
  }

  long modulus() const { return ipow(q, depth); }

  // Base-q digits, least significant (finest level) first.
  std::vector<long> digits() const {
    std::vector<long> d;
    long v = value;
    for (int i = 0; i < depth; ++i) {
      d.push_back(v % q);
      v /= q;
    }
    return d;
  }

  friend bool operator==(const OdometerResidue&, const OdometerResidue&) = default;
  friend auto operator<=>(const OdometerResidue&, const OdometerResidue&) = default;
};

inline OdometerResidue odometer_successor(const OdometerResidue& r) {
  return OdometerResidue(r.q, r.depth, (r.value + 1) % r.modulus());
}

inline long floordiv(long a, long b) {
  long d = a / b;
  return (a % b != 0 && ((a < 0) != (b < 0))) ? d - 1 : d;
}

inline long floormod(long a, long b) { return a - floordiv(a, b) * b; }

inline void require_constant_length(const Substitution& s, const char* op) {
  if (!s.is_constant_length() || s.length() < 2) {
    throw HypothesisError(std::string(op) + ": needs a constant-length substitution with q >= 2");
  }
}

inline void require_exact_regime(const Substitution& s, const char* op) {
  if (!classify(s).exact()) {
    throw HypothesisError(std::string(op) +
                          ": needs a primitive, aperiodic, height-1, constant-length substitution");
  }
}

// image^k(a) for every letter a, grown lazily by depth.
class PowerImages {
 public:
  explicit PowerImages(const Substitution& s) : s_(s) {
    require_constant_length(s, "PowerImages");
    std::vector<Word> level;
    for (std::size_t a = 0; a < s.alphabet_size(); ++a) level.push_back(Word{static_cast<Symbol>(a)});
    levels_.push_back(std::move(level));
  }

  static constexpr std::size_t kMaxBlock = std::size_t{1} << 22;

  const std::vector<Word>& at(int k) {
    while (static_cast<int>(levels_.size()) <= k) {
      const auto& prev = levels_.back();
      if (prev[0].size() * s_.length() > kMaxBlock) {
        throw InvalidArgument("PowerImages: block length exceeds 2^22");
      }
      std::vector<Word> next;
      for (const auto& w : prev) next.push_back(s_.apply(w));
      levels_.push_back(std::move(next));
    }
    return levels_[static_cast<std::size_t>(k)];
  }

 private:
  Substitution s_;
  std::vector<std::vector<Word>> levels_;
};

struct ColumnStructure {
  int depth = 0;
  // Column i = { image^depth(a)_i : a in alphabet }, sorted.
  std::vector<Word> columns;
};

inline ColumnStructure column_sets(const Substitution& s, int k) {
  require_constant_length(s, "column_sets");
  if (k < 1) throw InvalidArgument("column_sets: depth must be >= 1");
  PowerImages powers(s);
  const auto& imgs = powers.at(k);
  ColumnStructure out;
  out.depth = k;
  out.columns.resize(imgs[0].size());
  for (std::size_t i = 0; i < imgs[0].size(); ++i) {
    std::set<Symbol> col;
    for (const auto& w : imgs) col.insert(w[i]);
    out.columns[i].assign(col.begin(), col.end());
  }
  return out;
}

struct ColumnNumber {
  int c = 0;
  int depth_witness = 0;
  // The sequence of column families became periodic within the budget, so no
  // deeper power can lower c.
  bool stabilized = false;
  Word witness_column;
};

// min over 1 <= k <= k_max of the smallest column of image^k. Columns of
// image^(k+1) are the sets image(C)_r for columns C of image^k, so only the
// family of distinct column sets needs to be tracked.
inline ColumnNumber column_number(const Substitution& s, int k_max = 64) {
  require_exact_regime(s, "column_number");
  const std::size_t q = s.length();
  using Family = std::set<Word>;
  Family family;
  for (std::size_t r = 0; r < q; ++r) {
    std::set<Symbol> col;
    for (std::size_t a = 0; a < s.alphabet_size(); ++a) col.insert(s.image(static_cast<Symbol>(a))[r]);
    family.insert(Word(col.begin(), col.end()));
  }
  std::vector<Family> seen;
  ColumnNumber out;
  out.c = static_cast<int>(s.alphabet_size()) + 1;
  for (int k = 1; k <= k_max; ++k) {
    for (const auto& col : family) {
      if (static_cast<int>(col.size()) < out.c) {
        out.c = static_cast<int>(col.size());
        out.depth_witness = k;
        out.witness_column = col;
      }
    }
    if (std::find(seen.begin(), seen.end(), family) != seen.end()) {
      out.stabilized = true;
      break;
    }
    seen.push_back(family);
    Family next;
    for (const auto& col : family) {
      for (std::size_t r = 0; r < q; ++r) {
        std::set<Symbol> img;
        for (Symbol a : col) img.insert(s.image(a)[r]);
        next.insert(Word(img.begin(), img.end()));
      }
    }
    family = std::move(next);
  }
  return out;
}

struct Preimage {
  long cut = 0;
  CenteredWord preimage;
  friend bool operator==(const Preimage&, const Preimage&) = default;
};

// All (cut, v) with v admissible and expand(s, v, k, cut) agreeing with w on
// w's window; v is the shortest window covering w's image blocks.
inline std::vector<Preimage> desubstitute(const Substitution& s, const LanguageTable& lang,
                                          const CenteredWord& w, int k) {
  require_constant_length(s, "desubstitute");
  if (k < 0) throw InvalidArgument("desubstitute: negative depth");
  std::vector<Preimage> out;
  if (k == 0) {
    if (lang.contains(w.symbols())) out.push_back({0, w});
    return out;
  }
  PowerImages powers(s);
  const auto& imgs = powers.at(k);
  const long block = static_cast<long>(imgs[0].size());
  for (long cut = 0; cut < block; ++cut) {
    const long lo = floordiv(w.left() + cut, block);
    const long hi = floordiv(w.right() + cut, block);
    const auto len = static_cast<std::size_t>(hi - lo + 1);
    for (const auto& v : lang.words(len)) {
      bool match = true;
      for (long n = w.left(); n <= w.right() && match; ++n) {
        const long t = n + cut;
        const auto idx = static_cast<std::size_t>(floordiv(t, block) - lo);
        match = imgs[v[idx]][static_cast<std::size_t>(floormod(t, block))] == w.at(n);
      }
      if (match) out.push_back({cut, CenteredWord(v, lo, s.alphabet_size())});
    }
  }
  return out;
}

// Residues j mod q^k such that the window can sit at offset j of an
// image^k-block decomposition. Empty means the window is inadmissible.
inline std::vector<OdometerResidue> residue_of_window(const Substitution& s,
                                                      const LanguageTable& lang,
                                                      const CenteredWord& w, int k) {
  std::set<long> cuts;
  for (const auto& p : desubstitute(s, lang, w, k)) cuts.insert(p.cut);
  std::vector<OdometerResidue> out;
  for (long c : cuts) out.emplace_back(static_cast<long>(s.length()), k, c);
  return out;
}

// Finite-depth picture of a fiber of the factor map: one representative per
// distinct radius-L window.
struct FiberCensus {
  OdometerResidue residue;
  long radius = 0;
  std::vector<CenteredWord> representatives;
  // Depth at which the windows were cut (>= residue.depth).
  int resolved_depth = 0;
  bool stabilized = false;

  std::size_t count() const { return representatives.size(); }
};

inline json to_json(const FiberCensus& f) {
  json reps = json::array();
  for (const auto& r : f.representatives) reps.push_back(to_string(r));
  return {{"q", f.residue.q},           {"depth", f.residue.depth},
          {"residue", f.residue.value}, {"radius", f.radius},
          {"count", f.count()},         {"representatives", reps},
          {"resolved_depth", f.resolved_depth}, {"stabilized", f.stabilized}};
}

namespace detail {

inline std::vector<CenteredWord> windows_at_residue(const Substitution& s,
                                                    const LanguageTable& lang,
                                                    PowerImages& powers, int k, long j,
                                                    long radius) {
  const auto& imgs = powers.at(k);
  const long block = static_cast<long>(imgs[0].size());
  const long lo = floordiv(j - radius, block);
  const long hi = floordiv(j + radius, block);
  std::set<Word> windows;
  for (const auto& v : lang.words(static_cast<std::size_t>(hi - lo + 1))) {
    Word win;
    win.reserve(static_cast<std::size_t>(2 * radius + 1));
    for (long n = -radius; n <= radius; ++n) {
      const long t = n + j;
      win.push_back(imgs[v[static_cast<std::size_t>(floordiv(t, block) - lo)]]
                        [static_cast<std::size_t>(floormod(t, block))]);
    }
    windows.insert(std::move(win));
  }
  std::vector<CenteredWord> out;
  for (const auto& w : windows) out.push_back(CenteredWord(w, -radius, s.alphabet_size()));
  return out;
}

}  // namespace detail

// Radius-L windows of all points whose depth-k odometer coordinate is r.
inline FiberCensus residue_window_census(const Substitution& s, const LanguageTable& lang,
                                         const OdometerResidue& r, long radius) {
  require_constant_length(s, "residue_window_census");
  if (r.q != static_cast<long>(s.length())) throw InvalidArgument("residue base differs from q");
  if (radius < 0) throw InvalidArgument("census radius must be >= 0");
  PowerImages powers(s);
  FiberCensus out;
  out.residue = r;
  out.radius = radius;
  out.resolved_depth = r.depth;
  out.representatives = detail::windows_at_residue(s, lang, powers, r.depth, r.value, radius);
  return out;
}

struct CensusOptions {
  // Depth increments past the first one whose blocks cover the window.
  int max_extra_depth = 16;
  // Consecutive unchanged counts required to call the census stable.
  int stable_increments = 2;
};

// The point y of the odometer whose digit sequence repeats r's digits forever
// (r = 0 gives y = 0, r = q^k - 1 gives y = -1). Its coordinate at depth d.
inline long periodic_lift(const OdometerResidue& r, int d) {
  auto digits = r.digits();
  if (digits.empty()) return 0;
  long v = 0;
  for (int i = d - 1; i >= 0; --i) v = v * r.q + digits[static_cast<std::size_t>(i) % digits.size()];
  return v;
}

// Radius-L windows of the fiber above the periodic lift of r. The set of
// windows of points with depth-d coordinate y mod q^d shrinks as d grows and
// equals the fiber's windows once it settles; d is raised until the count is
// unchanged for `stable_increments` consecutive increments, and at least for a
// full digit period of r: a synchronizing digit pattern only shows up once a
// whole period sits above the window.
inline FiberCensus fiber_census(const Substitution& s, const LanguageTable& lang,
                                PowerImages& powers, const OdometerResidue& r, long radius,
                                const CensusOptions& options = {}) {
  require_constant_length(s, "fiber_census");
  if (r.q != static_cast<long>(s.length())) throw InvalidArgument("residue base differs from q");
  if (radius < 1) throw InvalidArgument("fiber_census: radius must be >= 1");
  int d = std::max(r.depth, 1);
  while (ipow(r.q, d) < 2 * radius + 1) ++d;
  FiberCensus out;
  out.residue = r;
  out.radius = radius;
  std::size_t last = 0;
  int unchanged = 0;
  for (int extra = 0; extra <= options.max_extra_depth; ++extra, ++d) {
    if (ipow(r.q, d) > static_cast<long>(PowerImages::kMaxBlock)) break;
    auto reps = detail::windows_at_residue(s, lang, powers, d, periodic_lift(r, d), radius);
    unchanged = (extra > 0 && reps.size() == last) ? unchanged + 1 : 0;
    last = reps.size();
    out.representatives = std::move(reps);
    out.resolved_depth = d;
    if (unchanged >= std::max(options.stable_increments, r.depth)) {
      out.stabilized = true;
      break;
    }
  }
  return out;
}

inline FiberCensus fiber_census(const Substitution& s, const LanguageTable& lang,
                                const OdometerResidue& r, long radius,
                                const CensusOptions& options = {}) {
  PowerImages powers(s);
  return fiber_census(s, lang, powers, r, radius, options);
}

inline FiberCensus fiber_census(const Substitution& s, const OdometerResidue& r, long radius) {
  require_exact_regime(s, "fiber_census");
  return fiber_census(s, *make_language(s), r, radius);
}

}  // namespace symdyn
