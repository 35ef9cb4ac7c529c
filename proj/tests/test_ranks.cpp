#include <gtest/gtest.h>

#include <random>

#include "symdyn/ranks.hpp"

using namespace symdyn;

namespace {

System make(const char* name, const char* rules) {
  return substitution_system(name, Substitution::parse(rules));
}

// Images of every letter under the n-th power, computed by plain iteration.
std::vector<Word> power_images(const Substitution& s, int n) {
  std::vector<Word> out;
  for (Symbol a = 0; a < s.alphabet_size(); ++a) {
    Word w{a};
    for (int k = 0; k < n; ++k) {
      Word next;
      for (Symbol b : w) {
        const auto& img = s.image(b);
        next.insert(next.end(), img.begin(), img.end());
      }
      w = std::move(next);
    }
    out.push_back(std::move(w));
  }
  return out;
}

// Smallest column of any power up to n_max, as a set of letters.
std::set<Symbol> brute_min_column(const Substitution& s, int n_max) {
  std::set<Symbol> best;
  for (Symbol a = 0; a < s.alphabet_size(); ++a) best.insert(a);
  for (int n = 1; n <= n_max; ++n) {
    auto imgs = power_images(s, n);
    for (std::size_t i = 0; i < imgs[0].size(); ++i) {
      std::set<Symbol> col;
      for (const auto& w : imgs) col.insert(w[i]);
      if (col.size() < best.size()) best = col;
    }
  }
  return best;
}

// a, b proximal iff some power of the substitution sends them to words with a
// common letter in the same position.
bool brute_coincide(const Substitution& s, Symbol a, Symbol b, int n_max) {
  for (int n = 1; n <= n_max; ++n) {
    auto imgs = power_images(s, n);
    for (std::size_t i = 0; i < imgs[a].size(); ++i) {
      if (imgs[a][i] == imgs[b][i]) return true;
    }
  }
  return false;
}

long brute_coincidence_rank(const Substitution& s, int n_max) {
  auto col = brute_min_column(s, n_max);
  std::vector<Symbol> v(col.begin(), col.end());
  long best = 1;
  for (unsigned mask = 1; mask < (1u << v.size()); ++mask) {
    std::vector<Symbol> sub;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (mask & (1u << i)) sub.push_back(v[i]);
    }
    bool distal = true;
    for (std::size_t i = 0; i < sub.size() && distal; ++i) {
      for (std::size_t j = i + 1; j < sub.size() && distal; ++j) distal = !brute_coincide(s, sub[i], sub[j], n_max);
    }
    if (distal) best = std::max(best, static_cast<long>(sub.size()));
  }
  return best;
}

Estimate exact(long v) { return {v, EstimateKind::Exact, "test", json::object()}; }

RankReport synthetic(long rc, long rm, long rM) {
  RankReport r;
  r.system = "synthetic";
  r.r_c = exact(rc);
  r.r_m = exact(rm);
  r.r_M = exact(rM);
  return r;
}

}  // namespace

TEST(Ranks, CatalogValues) {
  struct Case {
    const char* name;
    const char* rules;
    long rc, rm, rM;
  };
  for (const auto& c : {Case{"thue-morse", "0 -> 01\n1 -> 10", 2, 2, 4},
                        Case{"period-doubling", "0 -> 01\n1 -> 00", 1, 1, 2},
                        Case{"ternary-morse", "0 -> 012\n1 -> 120\n2 -> 201", 3, 3, 9},
                        Case{"trivial-1", "0 -> 00", 1, 1, 1}}) {
    auto r = rank_report(make(c.name, c.rules));
    EXPECT_EQ(r.r_c.value, c.rc) << c.name;
    EXPECT_EQ(r.r_m.value, c.rm) << c.name;
    EXPECT_EQ(r.r_M.value, c.rM) << c.name;
    EXPECT_EQ(r.r_m.kind, EstimateKind::Stabilized) << c.name;
    EXPECT_EQ(r.r_M.kind, EstimateKind::Stabilized) << c.name;
    EXPECT_TRUE(rank_chain_holds(r));
    EXPECT_EQ(r.almost_automorphic(), c.rm == 1);
  }
}

TEST(Ranks, ToeplitzSystemsAreAlmostAutomorphic) {
  auto r = rank_report(toeplitz_system("tz", {{"0?", "1?", "2?"}}));
  EXPECT_EQ(r.r_c.value, 1);
  EXPECT_EQ(r.r_m.value, 1);
  EXPECT_EQ(r.r_M.value, 3);
  EXPECT_TRUE(r.almost_automorphic());
}

TEST(Ranks, OutsideTheExactRegimeOnlyTrivialBounds) {
  for (const auto& sys : {make("fib", "0 -> 01\n1 -> 0"),
                          factor_system("f", make("tm", "0 -> 01\n1 -> 10"), sum_mod_rule(2, 2, 2))}) {
    auto r = rank_report(sys);
    for (const auto* e : {&r.r_c, &r.r_m, &r.r_M}) {
      EXPECT_EQ(e->kind, EstimateKind::LowerBound);
      EXPECT_EQ(e->value, 1);
    }
    EXPECT_TRUE(predict_profile(r, 3).provisional);
  }
  EXPECT_THROW(minimal_rank(Substitution::parse("0 -> 01\n1 -> 0")), HypothesisError);
}

TEST(Ranks, CoincidenceRankMatchesBruteForce) {
  for (const char* rules : {"0 -> 01\n1 -> 10", "0 -> 01\n1 -> 00", "0 -> 012\n1 -> 120\n2 -> 201",
                            "0 -> 001\n1 -> 110", "0 -> 010\n1 -> 201\n2 -> 102"}) {
    auto s = Substitution::parse(rules);
    if (!classify(s).exact()) continue;
    EXPECT_EQ(coincidence_rank(s).value, brute_coincidence_rank(s, 6)) << rules;
  }
}

TEST(Ranks, RandomSubstitutionsAgreeWithColumnOracle) {
  std::mt19937_64 rng(2024);
  int found = 0;
  while (found < 40) {
    const int n = 2 + static_cast<int>(rng() % 2), q = 2 + static_cast<int>(rng() % 3);
    std::vector<Word> rules(n, Word(q));
    for (auto& w : rules) {
      for (auto& c : w) c = static_cast<Symbol>(rng() % n);
    }
    Substitution s(rules);
    if (!classify(s).exact()) continue;
    ++found;
    const long c = static_cast<long>(brute_min_column(s, 8).size());
    auto r = rank_report(substitution_system("random", s));
    EXPECT_EQ(r.r_c.value, brute_coincidence_rank(s, 8)) << s.to_text();
    EXPECT_EQ(r.r_c.value, c) << s.to_text();
    EXPECT_EQ(r.r_m.value, c) << s.to_text();
    EXPECT_EQ(r.r_m.kind, EstimateKind::Stabilized) << s.to_text();
    EXPECT_TRUE(rank_chain_holds(r)) << s.to_text();
  }
}

TEST(Estimates, InfinityOrdering) {
  auto inf = Estimate::infinity("test");
  EXPECT_TRUE(inf.infinite());
  EXPECT_TRUE(rank_le(exact(7), inf));
  EXPECT_FALSE(rank_le(inf, exact(7)));
  EXPECT_TRUE(rank_le(inf, inf));
  EXPECT_EQ(to_json(inf)["value"], "inf");
  auto r = synthetic(2, 3, 3);
  r.r_M = inf;
  EXPECT_TRUE(rank_chain_holds(r));
  auto p = predict_profile(r, 6);
  for (const auto& row : p.rows) EXPECT_TRUE(row.sensitive);
  EXPECT_FALSE(rank_chain_holds(synthetic(3, 2, 4)));
  EXPECT_FALSE(rank_chain_holds(synthetic(1, 3, 2)));
}

TEST(Profile, ThresholdsFollowTheRanks) {
  auto p = predict_profile(synthetic(2, 2, 4), 5);
  ASSERT_EQ(p.rows.size(), 4u);
  EXPECT_FALSE(p.provisional);
  for (const auto& row : p.rows) {
    EXPECT_EQ(row.sensitive, row.m <= 4);
    EXPECT_EQ(row.equicontinuous, row.m >= 5);
    EXPECT_EQ(row.compactly_sensitive, row.m <= 2);
    EXPECT_EQ(row.cover_equicontinuous, row.m >= 3);
  }
  auto j = to_json(p);
  EXPECT_EQ(j["profile"]["5"]["m_equicontinuous"], true);
  EXPECT_THROW(predict_profile(synthetic(1, 1, 1), 1), InvalidArgument);
}

TEST(ExtensionInequality, IdentityAndToeplitzOverOdometer) {
  auto tm = rank_report(make("thue-morse", "0 -> 01\n1 -> 10"));
  EXPECT_TRUE(check_extension_inequality(tm, tm, true));
  auto tz = rank_report(toeplitz_system("tz", {{"0?", "1?"}}));
  EXPECT_TRUE(check_extension_inequality(tz, odometer_rank_report(2), true));
  EXPECT_FALSE(check_extension_inequality(synthetic(3, 3, 3), odometer_rank_report(2), true));
  EXPECT_FALSE(check_extension_inequality(synthetic(1, 1, 1), synthetic(2, 2, 2), true));
  EXPECT_THROW(check_extension_inequality(tm, tm, false), HypothesisError);
  EXPECT_THROW(odometer_rank_report(1), InvalidArgument);
}

TEST(Json, ReportShape) {
  auto j = to_json(rank_report(make("period-doubling", "0 -> 01\n1 -> 00")));
  EXPECT_EQ(j["system"], "period-doubling");
  EXPECT_EQ(j["r_M"]["value"], 2);
  EXPECT_EQ(j["r_M"]["kind"], "Stabilized");
  EXPECT_EQ(j["almost_automorphic"], true);
  EXPECT_EQ(j["regime"]["exact"], true);
}
