#pragma once

// Closed-form one-sided sequences, used to check the substitution machinery
// without going through it.

#include <bit>
#include <set>

#include "symdyn/words.hpp"

namespace ref {

using symdyn::Symbol;
using symdyn::Word;

// Parity of the binary digit sum.
inline Symbol thue_morse(unsigned long n) { return static_cast<Symbol>(std::popcount(n) & 1); }

// Parity of the 2-adic valuation of n + 1.
inline Symbol period_doubling(unsigned long n) {
  return static_cast<Symbol>(std::countr_zero(n + 1) & 1);
}

// Ternary digit sum mod 3.
inline Symbol ternary_morse(unsigned long n) {
  unsigned long s = 0;
  for (; n; n /= 3) s += n % 3;
  return static_cast<Symbol>(s % 3);
}

template <class F>
Word prefix(F f, std::size_t len) {
  Word w(len);
  for (std::size_t i = 0; i < len; ++i) w[i] = f(i);
  return w;
}

inline std::set<Word> factors(const Word& w, std::size_t n) {
  std::set<Word> out;
  for (std::size_t i = 0; i + n <= w.size(); ++i) out.emplace(w.begin() + i, w.begin() + i + n);
  return out;
}

}  // namespace ref
