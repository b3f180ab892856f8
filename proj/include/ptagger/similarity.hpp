// Copyright 2026 The ptagger Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Regular and partial string similarity.
//
// Both scores are built on the indel distance (insertions and deletions cost
// 1, a substitution costs 2), which satisfies
//
//   indel(a, b) = |a| + |b| - 2 * LCS(a, b)
//
// so the normalized similarity is 200 * LCS / (|a| + |b|), rounded half-up to
// an integer percent. Partial similarity slides a window of the shorter
// operand's length over the longer operand and keeps the best score.
//
// Comparison is case-sensitive and runs on code points.

#ifndef PTAGGER_SIMILARITY_HPP_
#define PTAGGER_SIMILARITY_HPP_

#include <algorithm>
#include <array>
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ptagger/error.hpp"
#include "ptagger/unicode.hpp"

namespace ptagger {

// Integer percent in [0, 100].
class SimilarityScore {
 public:
  constexpr SimilarityScore() = default;
  explicit SimilarityScore(int value) : value_(value) {
    if (value < 0 || value > 100) {
      throw DataError("similarity score out of range: " +
                      std::to_string(value));
    }
  }

  constexpr int value() const { return value_; }

  friend constexpr auto operator<=>(SimilarityScore, SimilarityScore) = default;
  friend constexpr bool operator==(SimilarityScore, SimilarityScore) = default;
  friend constexpr bool operator==(SimilarityScore a, int b) {
    return a.value_ == b;
  }

 private:
  int value_ = 0;
};

namespace detail {

// Per-character match masks of a pattern, one 64-bit word per 64 pattern
// positions.
class PatternMasks {
 public:
  explicit PatternMasks(std::u32string_view pattern)
      : words_((pattern.size() + 63) / 64), size_(pattern.size()) {
    ascii_.assign(128 * words_, 0);
    for (size_t i = 0; i < pattern.size(); ++i) {
      uint64_t* m = mutable_mask(pattern[i]);
      m[i / 64] |= uint64_t{1} << (i % 64);
    }
  }

  size_t words() const { return words_; }
  size_t size() const { return size_; }

  const uint64_t* mask(char32_t c) const {
    if (c < 128) return &ascii_[c * words_];
    auto it = other_.find(c);
    return it == other_.end() ? nullptr : it->second.data();
  }

 private:
  uint64_t* mutable_mask(char32_t c) {
    if (c < 128) return &ascii_[c * words_];
    auto& v = other_[c];
    if (v.empty()) v.assign(words_, 0);
    return v.data();
  }

  size_t words_;
  size_t size_;
  std::vector<uint64_t> ascii_;
  std::unordered_map<char32_t, std::vector<uint64_t>> other_;
};

// Bit-parallel LCS (Allison-Dix / Hyyro). `state` must hold masks.words()
// words; it is reused across calls to avoid allocation.
inline size_t lcs_bitparallel(const PatternMasks& masks,
                              std::u32string_view text,
                              std::vector<uint64_t>& state) {
  const size_t w = masks.words();
  state.assign(w, ~uint64_t{0});
  for (char32_t c : text) {
    const uint64_t* m = masks.mask(c);
    if (m == nullptr) continue;  // no match: V unchanged
    uint64_t carry = 0;
    for (size_t k = 0; k < w; ++k) {
      uint64_t v = state[k];
      uint64_t u = v & m[k];
      uint64_t tmp = v + carry;
      uint64_t c1 = tmp < carry;
      uint64_t sum = tmp + u;
      uint64_t c2 = sum < u;
      carry = c1 | c2;
      state[k] = sum | (v & ~m[k]);
    }
  }
  size_t ones = 0;
  const size_t m = masks.size();
  for (size_t k = 0; k < w; ++k) {
    uint64_t v = state[k];
    if (k == w - 1 && m % 64 != 0) v &= (uint64_t{1} << (m % 64)) - 1;
    ones += static_cast<size_t>(std::popcount(v));
  }
  return m - ones;
}

inline int normalized_percent(size_t lcs, size_t len_sum) {
  if (len_sum == 0) return 100;
  // round(200 * lcs / len_sum), half-up, in integer arithmetic
  return static_cast<int>((400 * lcs + len_sum) / (2 * len_sum));
}

}  // namespace detail

inline size_t lcs_length(std::u32string_view a, std::u32string_view b) {
  if (a.empty() || b.empty()) return 0;
  if (a.size() > b.size()) std::swap(a, b);
  detail::PatternMasks masks(a);
  std::vector<uint64_t> state;
  return detail::lcs_bitparallel(masks, b, state);
}

inline size_t lcs_length(std::string_view a, std::string_view b) {
  return lcs_length(utf8_decode(a), utf8_decode(b));
}

inline SimilarityScore regular_similarity(std::u32string_view a,
                                          std::u32string_view b) {
  return SimilarityScore(
      detail::normalized_percent(lcs_length(a, b), a.size() + b.size()));
}

inline SimilarityScore regular_similarity(std::string_view a,
                                          std::string_view b) {
  return regular_similarity(utf8_decode(a), utf8_decode(b));
}

// Scores one fixed pattern against many texts; reuses the pattern masks.
// An instance keeps scratch state and must not be shared across threads.
class PartialScorer {
 public:
  explicit PartialScorer(std::u32string_view pattern)
      : pattern_(pattern), masks_(pattern) {}

  const std::u32string& pattern() const { return pattern_; }

  // partial_similarity(pattern, text). Throws DataError if the shorter
  // operand is empty.
  SimilarityScore score(std::u32string_view text) const {
    if (text.size() < pattern_.size()) {
      return PartialScorer(text).score(pattern_);
    }
    if (pattern_.empty()) {
      throw DataError("partial similarity needs a non-empty shorter operand");
    }
    const size_t m = pattern_.size();
    if (m == text.size()) {
      return SimilarityScore(detail::normalized_percent(
          detail::lcs_bitparallel(masks_, text, state_), 2 * m));
    }
    size_t best = 0;
    for (size_t start = 0; start + m <= text.size() && best < m; ++start) {
      best = std::max(best, detail::lcs_bitparallel(
                                masks_, text.substr(start, m), state_));
    }
    return SimilarityScore(detail::normalized_percent(best, 2 * m));
  }

 private:
  std::u32string pattern_;
  detail::PatternMasks masks_;
  mutable std::vector<uint64_t> state_;
};

inline SimilarityScore partial_similarity(std::u32string_view a,
                                          std::u32string_view b) {
  if (a.size() > b.size()) std::swap(a, b);
  return PartialScorer(a).score(b);
}

inline SimilarityScore partial_similarity(std::string_view a,
                                          std::string_view b) {
  return partial_similarity(utf8_decode(a), utf8_decode(b));
}

}  // namespace ptagger

#endif  // PTAGGER_SIMILARITY_HPP_
