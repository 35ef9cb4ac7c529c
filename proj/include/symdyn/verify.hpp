#pragma once

// Cross-check of the rank-based predictions against the finite witness
// searches: m-sensitivity against r_M, block m-sensitivity and cover
// m-equicontinuity against r_c, and a point test at a fixed point.

#include <string>
#include <vector>

#include "symdyn/oracles.hpp"
#include "symdyn/ranks.hpp"
#include "symdyn/system.hpp"

namespace symdyn {

enum class CellStatus { Consistent, Inconsistent, Inconclusive };

inline std::string_view to_string(CellStatus s) {
  switch (s) {
    case CellStatus::Consistent: return "CONSISTENT";
    case CellStatus::Inconsistent: return "INCONSISTENT";
    case CellStatus::Inconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

struct VerifyCell {
  int m = 2;
  std::string test;       // sensitivity, block, point, cover
  bool predicted = false; // the property the test searches evidence for
  Verdict verdict;
  CellStatus status = CellStatus::Inconclusive;
};

struct VerifyOptions {
  SearchBudget budget;
  RankOptions ranks;
  int m_max = 5;
};

struct VerifyReport {
  RankReport ranks;
  MultivariateProfile profile;
  std::vector<VerifyCell> cells;

  bool ok() const {
    for (const auto& c : cells) {
      if (c.status == CellStatus::Inconsistent) return false;
    }
    return true;
  }
};

// Evidence for a property settles the cell only if the property was predicted;
// absence of evidence never contradicts anything. Predictions built on lower
// bounds cannot be contradicted either.
inline CellStatus judge(bool predicted, bool evidence, bool provisional) {
  if (evidence) {
    if (predicted) return CellStatus::Consistent;
    return provisional ? CellStatus::Inconclusive : CellStatus::Inconsistent;
  }
  return predicted || provisional ? CellStatus::Inconclusive : CellStatus::Consistent;
}

inline VerifyReport verify_system(const System& sys, const VerifyOptions& opt) {
  VerifyReport report;
  report.ranks = rank_report(sys, opt.ranks);
  report.profile = predict_profile(report.ranks, opt.m_max);
  const bool provisional = report.profile.provisional;
  std::optional<SeedSpec> seed;
  if (sys.substitution) {
    auto seeds = seed_pairs(*sys.substitution, *sys.language);
    if (!seeds.empty()) seed = SeedSpec{seeds.front(), 0};
  }
  for (const auto& row : report.profile.rows) {
    SearchBudget b = opt.budget;
    b.m = row.m;
    {
      VerifyCell c{row.m, "sensitivity", row.sensitive, m_sensitivity_test(sys, b).verdict, {}};
      c.status = judge(c.predicted, c.verdict.witnessed(), provisional);
      report.cells.push_back(std::move(c));
    }
    {
      VerifyCell c{row.m, "block", row.compactly_sensitive, block_m_sensitivity_test(sys, b).verdict, {}};
      c.status = judge(c.predicted, c.verdict.witnessed(), provisional);
      report.cells.push_back(std::move(c));
    }
    if (!seed) continue;
    {
      // A counterexample shows the point is not an m-equicontinuity point,
      // which the profile predicts exactly when the system is m-sensitive.
      VerifyCell c{row.m, "point", row.sensitive, m_equicontinuity_point_test(sys, *seed, b), {}};
      c.status = judge(c.predicted, c.verdict.witnessed(), provisional);
      report.cells.push_back(std::move(c));
    }
    {
      // Both outcomes of the cover test are finite-horizon evidence only.
      VerifyCell c{row.m, "cover", row.cover_equicontinuous, cover_m_equicontinuity_test(sys, *seed, b), {}};
      const bool bounded = c.verdict.witnessed();
      c.status = (bounded == c.predicted && !provisional) ? CellStatus::Consistent
                                                          : CellStatus::Inconclusive;
      report.cells.push_back(std::move(c));
    }
  }
  return report;
}

inline json to_json(const VerifyReport& r) {
  json cells = json::array();
  for (const auto& c : r.cells) {
    cells.push_back({{"m", c.m},
                     {"test", c.test},
                     {"predicted", c.predicted},
                     {"status", std::string(to_string(c.status))},
                     {"verdict", to_json(c.verdict)}});
  }
  return {{"ranks", to_json(r.ranks)},
          {"profile", to_json(r.profile)},
          {"cells", cells},
          {"ok", r.ok()}};
}

}  // namespace symdyn
