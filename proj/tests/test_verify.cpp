#include <gtest/gtest.h>

#include "symdyn/catalog.hpp"
#include "symdyn/verify.hpp"

using namespace symdyn;

TEST(Judge, Table) {
  EXPECT_EQ(judge(true, true, false), CellStatus::Consistent);
  EXPECT_EQ(judge(false, true, false), CellStatus::Inconsistent);
  EXPECT_EQ(judge(false, true, true), CellStatus::Inconclusive);
  EXPECT_EQ(judge(true, false, false), CellStatus::Inconclusive);
  EXPECT_EQ(judge(false, false, false), CellStatus::Consistent);
  EXPECT_EQ(judge(false, false, true), CellStatus::Inconclusive);
}

TEST(Verify, ThueMorseIsFullyConsistent) {
  VerifyOptions opt;
  auto r = verify_system(Catalog::builtin().get("thue-morse"), opt);
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(r.cells.size(), 4u * 4u);
  for (const auto& c : r.cells) {
    EXPECT_EQ(c.status, CellStatus::Consistent) << c.test << " m=" << c.m;
    if (c.test == "sensitivity") {
      EXPECT_EQ(c.verdict.witnessed(), c.m <= 4);
    } else if (c.test == "block") {
      EXPECT_EQ(c.verdict.witnessed(), c.m <= 2);
    }
  }
}

TEST(Verify, FactorSystemsAreInconclusive) {
  VerifyOptions opt;
  opt.m_max = 3;
  auto r = verify_system(Catalog::builtin().get("thue-morse-sum-factor"), opt);
  EXPECT_TRUE(r.ok());
  EXPECT_TRUE(r.profile.provisional);
  for (const auto& c : r.cells) {
    EXPECT_NE(c.test, "point");
    EXPECT_NE(c.test, "cover");
  }
  // Sensitivity at m = 2 is witnessed but the rank bound is too weak to predict it.
  EXPECT_EQ(r.cells[0].status, CellStatus::Inconclusive);
}

TEST(Verify, JsonIsStable) {
  VerifyOptions opt;
  opt.m_max = 2;
  const auto& sys = Catalog::builtin().get("period-doubling");
  auto a = to_json(verify_system(sys, opt)).dump();
  auto b = to_json(verify_system(sys, opt)).dump();
  EXPECT_EQ(a, b);
  auto j = json::parse(a);
  EXPECT_EQ(j["ok"], true);
  EXPECT_EQ(j["cells"][0]["status"], "CONSISTENT");
}
