#pragma once

// Finite words over small alphabets, two-sided windows around the origin, and
// the standard subshift metric d(x, y) = 2^-min{|n| : x_n != y_n}.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "symdyn/error.hpp"

namespace symdyn {

using Symbol = std::uint8_t;
using Word = std::vector<Symbol>;

inline constexpr std::size_t kMaxAlphabet = 36;

// Symbols print as 0-9 then a-z.
inline char symbol_char(Symbol s) {
  if (s < 10) return static_cast<char>('0' + s);
  if (s < kMaxAlphabet) return static_cast<char>('a' + (s - 10));
  throw InvalidArgument("symbol index out of printable range");
}

inline std::optional<Symbol> symbol_from_char(char c) {
  if (c >= '0' && c <= '9') return static_cast<Symbol>(c - '0');
  if (c >= 'a' && c <= 'z') return static_cast<Symbol>(10 + (c - 'a'));
  return std::nullopt;
}

inline std::string to_string(std::span<const Symbol> w) {
  std::string out;
  out.reserve(w.size());
  for (Symbol s : w) out.push_back(symbol_char(s));
  return out;
}

inline Word parse_word(std::string_view text, std::size_t alphabet_size) {
  Word w;
  w.reserve(text.size());
  for (char c : text) {
    auto s = symbol_from_char(c);
    if (!s || *s >= alphabet_size) {
      throw InvalidArgument("symbol '" + std::string(1, c) +
                            "' is not in an alphabet of size " +
                            std::to_string(alphabet_size));
    }
    w.push_back(*s);
  }
  return w;
}

// Returns the largest symbol index + 1 occurring in the text, i.e. the
// smallest alphabet the text fits in.
inline std::size_t min_alphabet_for(std::string_view text) {
  std::size_t n = 0;
  for (char c : text) {
    auto s = symbol_from_char(c);
    if (!s) throw InvalidArgument("bad symbol character '" + std::string(1, c) + "'");
    n = std::max<std::size_t>(n, *s + 1u);
  }
  return n;
}

// Scale k of a distance 2^-k. An infinite scale means "no difference inside the
// compared overlap"; certified_radius is the symmetric radius R around the
// origin on which both windows were actually compared, so an infinite scale
// only certifies d <= 2^-(R+1).
struct DistanceScale {
  std::optional<int> k;
  int certified_radius = 0;

  bool infinite() const { return !k.has_value(); }
  // True when the value is the exact metric value of any two points extending
  // the windows (the first difference lies inside the symmetric overlap).
  bool exact() const { return k.has_value() && *k <= certified_radius; }
  double distance_upper_bound() const {
    if (k) return std::ldexp(1.0, -*k);
    return std::ldexp(1.0, -(certified_radius + 1));
  }
  friend bool operator==(const DistanceScale&, const DistanceScale&) = default;
};

// A finite window of a point of a subshift: symbols at coordinates
// left, left+1, ..., left+size-1, where the range always contains 0.
class CenteredWord {
 public:
  CenteredWord() = default;

  CenteredWord(Word symbols, long left, std::size_t alphabet_size)
      : symbols_(std::move(symbols)), left_(left), alphabet_size_(alphabet_size) {
    if (alphabet_size_ == 0 || alphabet_size_ > kMaxAlphabet) {
      throw InvalidArgument("alphabet size must be in [1, 36]");
    }
    if (symbols_.empty()) throw InvalidArgument("centered word must be nonempty");
    if (left_ > 0 || right() < 0) {
      throw InvalidArgument("centered word must straddle the origin");
    }
    for (Symbol s : symbols_) {
      if (s >= alphabet_size_) throw InvalidArgument("symbol outside alphabet");
    }
  }

  // Window with coordinates -radius..radius taken from a word of odd length.
  static CenteredWord centered(Word symbols, std::size_t alphabet_size) {
    if (symbols.size() % 2 == 0) {
      throw InvalidArgument("centered(): word length must be odd");
    }
    long left = -static_cast<long>(symbols.size() / 2);
    return CenteredWord(std::move(symbols), left, alphabet_size);
  }

  const Word& symbols() const { return symbols_; }
  long left() const { return left_; }
  long right() const { return left_ + static_cast<long>(symbols_.size()) - 1; }
  std::size_t size() const { return symbols_.size(); }
  std::size_t alphabet_size() const { return alphabet_size_; }
  // Largest R with [-R, R] inside the window.
  long radius() const { return std::min(-left_, right()); }

  bool contains(long n) const { return n >= left_ && n <= right(); }

  Symbol at(long n) const {
    if (!contains(n)) throw InvalidArgument("coordinate outside window");
    return symbols_[static_cast<std::size_t>(n - left_)];
  }

  // Symbols on coordinates [from, to] (inclusive), which must lie in the window.
  std::span<const Symbol> range(long from, long to) const {
    if (from > to || !contains(from) || !contains(to)) {
      throw InvalidArgument("range outside window");
    }
    return {symbols_.data() + (from - left_), static_cast<std::size_t>(to - from + 1)};
  }

  // Restriction to [from, to]; the result must still contain the origin.
  CenteredWord restricted(long from, long to) const {
    auto r = range(from, to);
    return CenteredWord(Word(r.begin(), r.end()), from, alphabet_size_);
  }

  friend bool operator==(const CenteredWord&, const CenteredWord&) = default;

 private:
  Word symbols_{0};
  long left_ = 0;
  std::size_t alphabet_size_ = 1;
};

// "offset:left=-3 word=0110100"
inline std::string to_string(const CenteredWord& w) {
  return "offset:left=" + std::to_string(w.left()) + " word=" + to_string(w.symbols());
}

inline std::ostream& operator<<(std::ostream& os, const CenteredWord& w) {
  return os << to_string(w);
}

inline CenteredWord parse_centered(std::string_view text, std::size_t alphabet_size) {
  constexpr std::string_view kPrefix = "offset:left=";
  constexpr std::string_view kWord = " word=";
  if (!text.starts_with(kPrefix)) throw InvalidArgument("expected 'offset:left=' prefix");
  auto pos = text.find(kWord);
  if (pos == std::string_view::npos) throw InvalidArgument("expected ' word=' field");
  std::string left_text(text.substr(kPrefix.size(), pos - kPrefix.size()));
  long left = 0;
  try {
    std::size_t used = 0;
    left = std::stol(left_text, &used);
    if (used != left_text.size()) throw InvalidArgument("trailing characters in offset");
  } catch (const std::logic_error&) {
    throw InvalidArgument("bad offset '" + left_text + "'");
  }
  return CenteredWord(parse_word(text.substr(pos + kWord.size()), alphabet_size), left,
                      alphabet_size);
}

// min{|n| : a_n != b_n} over the intersection of both windows; infinite if
// they agree on the whole intersection.
inline DistanceScale scale_of_difference(const CenteredWord& a, const CenteredWord& b) {
  if (a.alphabet_size() != b.alphabet_size()) {
    throw InvalidArgument("scale_of_difference: alphabet mismatch");
  }
  const long lo = std::max(a.left(), b.left());
  const long hi = std::min(a.right(), b.right());
  DistanceScale out;
  out.certified_radius = static_cast<int>(std::min(-lo, hi));
  for (long r = 0; r <= std::max(-lo, hi); ++r) {
    if (r <= hi && a.at(r) != b.at(r)) {
      out.k = static_cast<int>(r);
      return out;
    }
    if (-r >= lo && a.at(-r) != b.at(-r)) {
      out.k = static_cast<int>(r);
      return out;
    }
  }
  return out;
}

// The Z-action: coordinate n of the result is coordinate n+g of w.
inline CenteredWord shift_window(const CenteredWord& w, long g) {
  if (!w.contains(g)) throw InvalidArgument("shift moves the origin outside the window");
  return CenteredWord(w.symbols(), w.left() - g, w.alphabet_size());
}

// True when a and b agree on every coordinate of [from, to].
inline bool agree_on(const CenteredWord& a, const CenteredWord& b, long from, long to) {
  auto ra = a.range(from, to);
  auto rb = b.range(from, to);
  return std::equal(ra.begin(), ra.end(), rb.begin());
}

// d(g a, g b) < 2^-K, i.e. agreement on [g-K, g+K].
inline bool close_at(const CenteredWord& a, const CenteredWord& b, long g, int scale) {
  return agree_on(a, b, g - scale, g + scale);
}

// d(g a, g b) > 2^-K, i.e. a difference somewhere in [g-K+1, g+K-1].
inline bool separated_at(const CenteredWord& a, const CenteredWord& b, long g, int scale) {
  if (scale < 1) throw InvalidArgument("separation scale must be >= 1");
  return !agree_on(a, b, g - scale + 1, g + scale - 1);
}

}  // namespace symdyn
