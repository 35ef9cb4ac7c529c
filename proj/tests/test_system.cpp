#include <gtest/gtest.h>

#include "reference_sequences.hpp"
#include "symdyn/system.hpp"

using namespace symdyn;

namespace {

std::set<Word> as_set(const WordSet& ws) { return {ws.begin(), ws.end()}; }

System thue_morse() { return substitution_system("thue-morse", Substitution::parse("0 -> 01\n1 -> 10")); }
System ternary() {
  return substitution_system("ternary-morse", Substitution::parse("0 -> 012\n1 -> 120\n2 -> 201"));
}

}  // namespace

TEST(SlidingRule, SumModTable) {
  auto r = sum_mod_rule(3, 3, 3);
  EXPECT_EQ(r.table.size(), 27u);
  EXPECT_EQ(r.table.at(Word{1, 2, 2}), 2);
  EXPECT_EQ(apply_rule(r, Word{0, 1, 2, 0, 1}), (Word{0, 0, 0}));
  EXPECT_TRUE(apply_rule(r, Word{0, 1}).empty());
  EXPECT_THROW(sum_mod_rule(2, 0, 2), InvalidArgument);
}

TEST(Factor, IdentityRuleKeepsTheLanguage) {
  auto tm = thue_morse();
  auto image = factor_system("id", tm, sum_mod_rule(2, 1, 2));
  for (std::size_t n = 1; n <= 12; ++n) {
    EXPECT_EQ(image.language->words(n), tm.language->words(n));
  }
}

TEST(Factor, ThueMorseSumIsComplementedPeriodDoubling) {
  // Second presentation: the fixed point of 0 -> 11, 1 -> 10.
  auto image = factor_system("sum", thue_morse(), sum_mod_rule(2, 2, 2));
  auto other = make_language(Substitution::parse("0 -> 11\n1 -> 10"));
  for (std::size_t n = 1; n <= 12; ++n) {
    EXPECT_EQ(image.language->words(n), other->words(n)) << "n = " << n;
  }
}

TEST(Factor, TernarySumMatchesClosedForm) {
  auto image = factor_system("sum", ternary(), sum_mod_rule(3, 3, 3));
  auto x = ref::prefix(ref::ternary_morse, 59049 + 2);
  Word y(59049);
  for (std::size_t n = 0; n < y.size(); ++n) y[n] = static_cast<Symbol>((x[n] + x[n + 1] + x[n + 2]) % 3);
  for (std::size_t n = 1; n <= 12; ++n) {
    EXPECT_EQ(as_set(image.language->words(n)), ref::factors(y, n)) << "n = " << n;
  }
}

TEST(Factor, TernarySumIsThreeToOne) {
  // Adding a constant to every cell leaves the sums unchanged, and nothing else
  // does: each image word of length 12 has exactly three preimages of length 14.
  auto src = ternary();
  auto rule = sum_mod_rule(3, 3, 3);
  auto image = factor_system("sum", src, rule);
  std::map<Word, int> preimages;
  for (const auto& w : src.language->words(14)) ++preimages[apply_rule(rule, w)];
  EXPECT_EQ(preimages.size(), image.language->complexity(12));
  for (const auto& [w, count] : preimages) EXPECT_EQ(count, 3) << to_string(w);
}

TEST(Factor, ImageIsFactorClosedAndNoRicher) {
  auto src = ternary();
  auto image = factor_system("sum", src, sum_mod_rule(3, 3, 3));
  for (std::size_t n = 1; n <= 10; ++n) {
    EXPECT_TRUE(is_factor_closed(*image.language, n));
    EXPECT_LE(image.language->complexity(n), src.language->complexity(n));
  }
}

TEST(Factor, PartialRuleIsRejected) {
  SlidingRule rule;
  rule.span = 2;
  rule.target_alphabet = 2;
  rule.table[Word{0, 0}] = 0;
  rule.table[Word{0, 1}] = 1;
  EXPECT_THROW(factor_system("partial", thue_morse(), rule), InvalidArgument);
  rule.table[Word{1, 0}] = 1;
  rule.table[Word{1, 1}] = 2;  // outside the target alphabet
  EXPECT_THROW(factor_system("bad", thue_morse(), rule), InvalidArgument);
}

TEST(System, ConstructionRoundTripAndHash) {
  auto tm = thue_morse();
  auto factor = factor_system("sum", tm, sum_mod_rule(2, 2, 2));
  auto toeplitz = toeplitz_system("tz", {{"0?", "1?"}});
  for (const auto* sys : {&tm, &factor, &toeplitz}) {
    auto rebuilt = build_system(sys->construction, sys->name);
    EXPECT_EQ(rebuilt.hash(), sys->hash());
    EXPECT_EQ(rebuilt.language->words(9), sys->language->words(9));
  }
  EXPECT_EQ(tm.hash().size(), 16u);
  EXPECT_NE(tm.hash(), factor.hash());
  EXPECT_THROW(build_system({{"type", "nope"}}), InvalidArgument);
}
