#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "symdyn/error.hpp"
#include "symdyn/words.hpp"

namespace symdyn {

// Sorted, duplicate-free list of words of one length.
using WordSet = std::vector<Word>;

inline void normalize(WordSet& words) {
  std::sort(words.begin(), words.end());
  words.erase(std::unique(words.begin(), words.end()), words.end());
}

inline bool contains_word(const WordSet& words, std::span<const Symbol> w) {
  return std::binary_search(words.begin(), words.end(), w,
                            [](const auto& a, const auto& b) {
                              return std::lexicographical_compare(a.begin(), a.end(),
                                                                  b.begin(), b.end());
                            });
}

// All length-n factors of w appended to out (unsorted).
inline void collect_factors(std::span<const Symbol> w, std::size_t n, WordSet& out) {
  if (w.size() < n) return;
  for (std::size_t i = 0; i + n <= w.size(); ++i) {
    out.emplace_back(w.begin() + static_cast<long>(i), w.begin() + static_cast<long>(i + n));
  }
}

// Memoized map n -> admissible words of length n for one subshift. The
// generator may recursively ask the table for other lengths; it is never called
// with the cache lock held. Entries are never evicted, so returned references
// stay valid for the lifetime of the table.
class LanguageTable {
 public:
  using Generator = std::function<WordSet(std::size_t n, const LanguageTable& self)>;

  LanguageTable(std::size_t alphabet_size, Generator generator)
      : alphabet_size_(alphabet_size), generator_(std::move(generator)) {
    if (alphabet_size_ == 0 || alphabet_size_ > kMaxAlphabet) {
      throw InvalidArgument("alphabet size must be in [1, 36]");
    }
  }

  std::size_t alphabet_size() const { return alphabet_size_; }

  const WordSet& words(std::size_t n) const {
    {
      std::lock_guard lock(mutex_);
      auto it = cache_.find(n);
      if (it != cache_.end()) return *it->second;
    }
    auto computed = std::make_shared<WordSet>(generator_(n, *this));
    normalize(*computed);
    std::lock_guard lock(mutex_);
    auto [it, inserted] = cache_.emplace(n, std::move(computed));
    return *it->second;
  }

  bool contains(std::span<const Symbol> w) const { return contains_word(words(w.size()), w); }

  // p(n), the factor complexity.
  std::size_t complexity(std::size_t n) const { return words(n).size(); }

 private:
  std::size_t alphabet_size_;
  Generator generator_;
  mutable std::mutex mutex_;
  mutable std::map<std::size_t, std::shared_ptr<const WordSet>> cache_;
};

// Every length-(n-1) factor of a length-n word is present at length n-1.
inline bool is_factor_closed(const LanguageTable& table, std::size_t n) {
  if (n < 2) return true;
  const auto& shorter = table.words(n - 1);
  for (const auto& w : table.words(n)) {
    std::span<const Symbol> s(w);
    if (!contains_word(shorter, s.first(n - 1)) || !contains_word(shorter, s.last(n - 1))) {
      return false;
    }
  }
  return true;
}

// Every length-n word extends on both sides inside the length-(n+1) words.
inline bool is_extendable(const LanguageTable& table, std::size_t n) {
  const auto& longer = table.words(n + 1);
  std::set<Word> left_ext, right_ext;
  for (const auto& w : longer) {
    left_ext.emplace(w.begin() + 1, w.end());
    right_ext.emplace(w.begin(), w.end() - 1);
  }
  for (const auto& w : table.words(n)) {
    if (!left_ext.contains(w) || !right_ext.contains(w)) return false;
  }
  return true;
}

}  // namespace symdyn
