#pragma once

// Toeplitz sequences from cyclic one-hole skeletons. Each stage is a pattern
// like "0?" whose '?' is filled by the sequence built from the next stage;
// after the last stage the holes are filled by the sequence itself. Such a
// sequence is the fixed point of a constant-length substitution whose image of
// a is the composite block with its single hole filled by a.

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "symdyn/error.hpp"
#include "symdyn/substitution.hpp"
#include "symdyn/words.hpp"

namespace symdyn {

struct ToeplitzSkeleton {
  std::vector<std::string> stages;
};

struct ToeplitzBlock {
  Word block;                   // composite block, hole cell holds 0
  std::optional<long> hole;     // position of the hole, if any survives
  std::size_t alphabet_size = 0;
};

inline ToeplitzBlock compose_skeleton(const ToeplitzSkeleton& sk) {
  if (sk.stages.empty()) throw InvalidArgument("toeplitz skeleton needs at least one stage");
  std::size_t alphabet = 1;
  for (const auto& st : sk.stages) {
    if (st.size() < 2) throw InvalidArgument("skeleton stage '" + st + "' is shorter than 2");
    if (std::count(st.begin(), st.end(), '?') > 1) {
      throw InvalidArgument("skeleton stage '" + st + "' has more than one hole");
    }
    for (char c : st) {
      if (c == '?') continue;
      auto s = symbol_from_char(c);
      if (!s) throw InvalidArgument("bad symbol '" + std::string(1, c) + "' in skeleton");
      alphabet = std::max<std::size_t>(alphabet, *s + 1u);
    }
  }
  long total = 1;
  for (const auto& st : sk.stages) total *= static_cast<long>(st.size());
  ToeplitzBlock out;
  out.alphabet_size = alphabet;
  out.block.assign(static_cast<std::size_t>(total), 0);
  for (long n = 0; n < total; ++n) {
    long pos = n;
    bool filled = false;
    for (const auto& st : sk.stages) {
      const long len = static_cast<long>(st.size());
      const char c = st[static_cast<std::size_t>(pos % len)];
      if (c != '?') {
        out.block[static_cast<std::size_t>(n)] = *symbol_from_char(c);
        filled = true;
        break;
      }
      pos /= len;
    }
    if (!filled) out.hole = n;
  }
  if (out.hole && *out.hole == 0) {
    throw InvalidArgument("skeleton leaves position 0 permanently unfilled");
  }
  return out;
}

inline Substitution toeplitz_substitution(const ToeplitzSkeleton& sk) {
  auto tb = compose_skeleton(sk);
  std::vector<Word> rules;
  for (std::size_t a = 0; a < tb.alphabet_size; ++a) {
    Word img = tb.block;
    if (tb.hole) img[static_cast<std::size_t>(*tb.hole)] = static_cast<Symbol>(a);
    rules.push_back(std::move(img));
  }
  return Substitution(std::move(rules));
}

// Periods of the skeleton: partial products of the stage lengths, cycling
// through the stages, up to `limit`.
inline std::vector<long> toeplitz_periods(const ToeplitzSkeleton& sk, long limit) {
  std::vector<long> out;
  long p = 1;
  for (std::size_t i = 0;; ++i) {
    p *= static_cast<long>(sk.stages[i % sk.stages.size()].size());
    if (p > limit) break;
    out.push_back(p);
  }
  return out;
}

// One-sided fixed point starting at position 0.
inline Word toeplitz_prefix(const ToeplitzSkeleton& sk, std::size_t length) {
  auto sub = toeplitz_substitution(sk);
  Word u{sub.image(0).front()};
  while (u.size() < length) u = sub.apply(u);
  u.resize(length);
  return u;
}

// For every position n < n_max some period p in `periods` has
// u[n + kp] = u[n] for all k with n + kp inside the prefix, and at least one
// such repetition inside the prefix. Returns the first failing position.
inline std::optional<std::size_t> toeplitz_property_failure(const Word& u,
                                                            const std::vector<long>& periods,
                                                            std::size_t n_max) {
  for (std::size_t n = 0; n < std::min(n_max, u.size()); ++n) {
    bool ok = false;
    for (long p : periods) {
      const auto step = static_cast<std::size_t>(p);
      if (n + step >= u.size()) break;
      bool periodic = true;
      for (std::size_t i = n + step; i < u.size() && periodic; i += step) periodic = u[i] == u[n];
      if (periodic) {
        ok = true;
        break;
      }
    }
    if (!ok) return n;
  }
  return std::nullopt;
}

}  // namespace symdyn
