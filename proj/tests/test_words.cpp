#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "symdyn/words.hpp"

using namespace symdyn;

namespace {

CenteredWord cw(const std::string& s, long left, std::size_t alphabet = 2) {
  return CenteredWord(parse_word(s, alphabet), left, alphabet);
}

// Direct evaluation of d = 2^-min{|n| : a_n != b_n} on the common window.
double brute_distance(const CenteredWord& a, const CenteredWord& b) {
  long best = -1;
  for (long n = std::max(a.left(), b.left()); n <= std::min(a.right(), b.right()); ++n) {
    if (a.at(n) != b.at(n) && (best < 0 || std::abs(n) < best)) best = std::abs(n);
  }
  return best < 0 ? 0.0 : std::ldexp(1.0, -static_cast<int>(best));
}

}  // namespace

TEST(Symbols, RoundTripThroughCharacters) {
  for (std::size_t s = 0; s < kMaxAlphabet; ++s) {
    EXPECT_EQ(symbol_from_char(symbol_char(static_cast<Symbol>(s))), static_cast<Symbol>(s));
  }
  EXPECT_EQ(symbol_char(10), 'a');
  EXPECT_FALSE(symbol_from_char('?').has_value());
  EXPECT_THROW(symbol_char(36), InvalidArgument);
}

TEST(Symbols, ParseRejectsLettersOutsideAlphabet) {
  EXPECT_EQ(parse_word("0110", 2), (Word{0, 1, 1, 0}));
  EXPECT_THROW(parse_word("012", 2), InvalidArgument);
  EXPECT_THROW(parse_word("0 1", 2), InvalidArgument);
  EXPECT_EQ(min_alphabet_for("0120"), 3u);
  EXPECT_EQ(min_alphabet_for(""), 0u);
}

TEST(CenteredWord, CoordinatesAndRestriction) {
  auto w = cw("01101", -2);
  EXPECT_EQ(w.left(), -2);
  EXPECT_EQ(w.right(), 2);
  EXPECT_EQ(w.radius(), 2);
  EXPECT_EQ(w.at(-2), 0);
  EXPECT_EQ(w.at(0), 1);
  EXPECT_EQ(w.restricted(-1, 0), cw("11", -1));
  EXPECT_THROW(w.at(3), InvalidArgument);
  EXPECT_THROW(w.restricted(1, 2), InvalidArgument);  // loses the origin
}

TEST(CenteredWord, RejectsWindowsMissingTheOrigin) {
  EXPECT_THROW(cw("01", 1), InvalidArgument);
  EXPECT_THROW(cw("01", -3), InvalidArgument);
  EXPECT_THROW(CenteredWord(Word{}, 0, 2), InvalidArgument);
  EXPECT_THROW(CenteredWord(Word{2}, 0, 2), InvalidArgument);
  EXPECT_THROW(CenteredWord::centered(parse_word("01", 2), 2), InvalidArgument);
  EXPECT_EQ(CenteredWord::centered(parse_word("010", 2), 2).left(), -1);
}

TEST(CenteredWord, SerializationRoundTrip) {
  auto w = cw("0120", -3, 3);
  EXPECT_EQ(to_string(w), "offset:left=-3 word=0120");
  EXPECT_EQ(parse_centered(to_string(w), 3), w);
  EXPECT_THROW(parse_centered("left=-3 word=01", 2), InvalidArgument);
  EXPECT_THROW(parse_centered("offset:left=x word=01", 2), InvalidArgument);
  EXPECT_THROW(parse_centered("offset:left=-1", 2), InvalidArgument);
}

TEST(Distance, ScaleIsSmallestDifferingCoordinate) {
  auto a = cw("0000000", -3);
  auto b = cw("0100000", -3);  // differs at -2
  auto s = scale_of_difference(a, b);
  ASSERT_FALSE(s.infinite());
  EXPECT_EQ(*s.k, 2);
  EXPECT_TRUE(s.exact());
  EXPECT_DOUBLE_EQ(s.distance_upper_bound(), 0.25);
}

TEST(Distance, AgreementOnOverlapOnlyCertifiesTheOverlap) {
  auto a = cw("00000", -2);
  auto b = cw("000", -1);
  auto s = scale_of_difference(a, b);
  EXPECT_TRUE(s.infinite());
  EXPECT_EQ(s.certified_radius, 1);
  EXPECT_DOUBLE_EQ(s.distance_upper_bound(), 0.25);
}

TEST(Distance, MatchesBruteForceOnRandomWindows) {
  std::mt19937 rng(7);
  for (int t = 0; t < 500; ++t) {
    Word x(9), y(9);
    for (auto& s : x) s = rng() % 2;
    y = x;
    if (rng() % 4) y[rng() % 9] ^= 1;
    auto a = CenteredWord(x, -4, 2), b = CenteredWord(y, -4, 2);
    auto s = scale_of_difference(a, b);
    const double d = brute_distance(a, b);
    if (d == 0.0) {
      EXPECT_TRUE(s.infinite());
    } else {
      EXPECT_DOUBLE_EQ(std::ldexp(1.0, -*s.k), d);
    }
  }
}

TEST(Distance, CloseAndSeparatedFollowStrictInequalities) {
  // a and b first differ at coordinate 2, so d = 1/4.
  auto a = cw("000000000", -4);
  auto b = cw("000000100", -4);
  EXPECT_TRUE(close_at(a, b, 0, 1));       // d < 1/2
  EXPECT_FALSE(close_at(a, b, 0, 2));      // d < 1/4 fails
  EXPECT_FALSE(separated_at(a, b, 0, 2));  // d > 1/4 fails
  EXPECT_TRUE(separated_at(a, b, 0, 3));   // d > 1/8
  EXPECT_TRUE(separated_at(a, b, 2, 1));   // difference at the shifted origin
  EXPECT_THROW(separated_at(a, b, 0, 0), InvalidArgument);
}

TEST(Shift, MovesTheOrigin) {
  auto w = cw("01234", -2, 5);
  auto s = shift_window(w, 1);
  EXPECT_EQ(s.at(0), w.at(1));
  EXPECT_EQ(s.at(-3), w.at(-2));
  EXPECT_EQ(shift_window(s, -1), w);
  EXPECT_THROW(shift_window(w, 3), InvalidArgument);
}
