#include <gtest/gtest.h>

#include "reference_sequences.hpp"
#include "symdyn/toeplitz.hpp"

using namespace symdyn;

TEST(Skeleton, DoublingComposesToPeriodDoubling) {
  auto tb = compose_skeleton({{"0?", "1?"}});
  EXPECT_EQ(to_string(tb.block), "0100");
  EXPECT_EQ(tb.hole, 3);
  EXPECT_EQ(toeplitz_substitution({{"0?", "1?"}}).to_text(), "0 -> 0100\n1 -> 0101\n");
  // The fixed point is the period-doubling sequence.
  EXPECT_EQ(toeplitz_prefix({{"0?", "1?"}}, 4096), ref::prefix(ref::period_doubling, 4096));
}

TEST(Skeleton, ThreeStages) {
  auto sub = toeplitz_substitution({{"0?", "1?", "2?"}});
  EXPECT_EQ(sub.length(), 8u);
  EXPECT_EQ(to_string(sub.image(2)), "01020102");
  EXPECT_EQ(toeplitz_periods({{"0?", "1?", "2?"}}, 64), (std::vector<long>{2, 4, 8, 16, 32, 64}));
}

TEST(Skeleton, ToeplitzPropertyOnLongPrefix) {
  for (const ToeplitzSkeleton& sk : {ToeplitzSkeleton{{"0?", "1?"}}, ToeplitzSkeleton{{"0?", "1?", "2?"}},
                                     ToeplitzSkeleton{{"01?", "1?"}}}) {
    // Cells near 2^12 may need periods up to 2^13, so the prefix runs further.
    auto u = toeplitz_prefix(sk, 1 << 15);
    EXPECT_FALSE(toeplitz_property_failure(u, toeplitz_periods(sk, 1 << 14), 1 << 12).has_value());
  }
  // Thue-Morse is not Toeplitz: position 0 repeats along no power of 2.
  auto tm = ref::prefix(ref::thue_morse, 1 << 12);
  EXPECT_TRUE(toeplitz_property_failure(tm, toeplitz_periods({{"0?"}}, 1 << 11), 64).has_value());
}

TEST(Skeleton, DegenerateSkeletonIsPeriodic) {
  auto sub = toeplitz_substitution({{"01"}});
  EXPECT_FALSE(compose_skeleton({{"01"}}).hole.has_value());
  EXPECT_FALSE(classify(sub).aperiodic);
  EXPECT_FALSE(classify(sub).exact());
}

TEST(Skeleton, RejectsMalformedStages) {
  EXPECT_THROW(compose_skeleton({{}}), InvalidArgument);
  EXPECT_THROW(compose_skeleton({{"?0"}}), InvalidArgument);  // position 0 never filled
  EXPECT_THROW(compose_skeleton({{"0??"}}), InvalidArgument);
  EXPECT_THROW(compose_skeleton({{"?"}}), InvalidArgument);
  EXPECT_THROW(compose_skeleton({{"0!"}}), InvalidArgument);
}
