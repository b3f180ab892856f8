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

// Document, tokens and spans.
//
// Tokenization rules:
//  - letters and digits form words; an apostrophe or hyphen between two word
//    characters stays inside the word ("Lizzy's", "Anne-Marie");
//  - a word found in the title lexicon keeps an immediately following period
//    ("Mr.");
//  - every other non-space character is a token of its own.
//
// Sentence boundaries fall after a run of . ! ? (plus any closing quotes or
// brackets glued to it) when whitespace follows and the next token starts
// with a capital letter, possibly behind an opening quote. A title keeps its
// period inside the token, so "Mr. Bennet" never splits.

#ifndef PTAGGER_TEXT_MODEL_HPP_
#define PTAGGER_TEXT_MODEL_HPP_

#include <algorithm>
#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ptagger/error.hpp"
#include "ptagger/lexicons.hpp"
#include "ptagger/unicode.hpp"

namespace ptagger {

// Half-open range of code point offsets.
struct Span {
  size_t start = 0;
  size_t end = 0;

  size_t length() const { return end - start; }
  bool overlaps(const Span& o) const { return start < o.end && o.start < end; }
  bool contains(size_t offset) const { return offset >= start && offset < end; }

  friend auto operator<=>(const Span&, const Span&) = default;
};

struct Token {
  std::string surface;  // UTF-8
  Span range;
  bool is_title_abbrev = false;

  friend bool operator==(const Token&, const Token&) = default;
};

namespace detail {

inline bool is_terminator(char32_t c) {
  return c == U'.' || c == U'!' || c == U'?' || c == 0x2026;
}

inline bool is_closing(char32_t c) {
  return c == U'"' || c == U'\'' || c == 0x201D || c == 0x2019 || c == U')' ||
         c == U']' || c == 0xBB;
}

inline bool is_opening(char32_t c) {
  return c == U'"' || c == U'\'' || c == 0x201C || c == 0x2018 || c == U'(' ||
         c == U'[' || c == 0xAB;
}

// End of the word starting at `i` (apostrophes/hyphens kept when internal).
inline size_t word_end(std::u32string_view text, size_t i) {
  size_t j = i;
  while (true) {
    while (j < text.size() && is_word_char(text[j])) ++j;
    if (j + 1 < text.size() && (is_apostrophe(text[j]) || is_hyphen(text[j])) &&
        is_word_char(text[j + 1])) {
      ++j;
      continue;
    }
    return j;
  }
}

}  // namespace detail

inline std::vector<Token> tokenize(std::u32string_view text,
                                   const TitleLexicon& titles) {
  std::vector<Token> tokens;
  size_t i = 0;
  while (i < text.size()) {
    char32_t c = text[i];
    if (is_space(c)) {
      ++i;
      continue;
    }
    Token tok;
    if (is_word_char(c)) {
      size_t j = detail::word_end(text, i);
      std::string word = utf8_encode(text.substr(i, j - i));
      bool title = titles.contains(word);
      if (title && j < text.size() && text[j] == U'.') ++j;
      tok.surface = utf8_encode(text.substr(i, j - i));
      tok.range = {i, j};
      tok.is_title_abbrev = title;
      i = j;
    } else {
      tok.surface = utf8_encode(text.substr(i, 1));
      tok.range = {i, i + 1};
      ++i;
    }
    tokens.push_back(std::move(tok));
  }
  return tokens;
}

inline std::vector<Token> tokenize(std::string_view utf8,
                                   const TitleLexicon& titles) {
  return tokenize(utf8_decode(utf8), titles);
}

inline std::vector<Span> split_sentences(std::u32string_view text,
                                         const std::vector<Token>& tokens) {
  std::vector<Span> sentences;
  if (tokens.empty()) return sentences;
  auto first_char = [&](size_t k) { return text[tokens[k].range.start]; };
  auto glued = [&](size_t k) {
    return tokens[k].range.start == tokens[k - 1].range.end;
  };
  size_t sentence_start = tokens.front().range.start;
  size_t i = 0;
  while (i < tokens.size()) {
    if (tokens[i].range.length() != 1 || !detail::is_terminator(first_char(i))) {
      ++i;
      continue;
    }
    size_t j = i + 1;
    while (j < tokens.size() && glued(j) && tokens[j].range.length() == 1 &&
           (detail::is_terminator(first_char(j)) ||
            detail::is_closing(first_char(j)))) {
      ++j;
    }
    if (j < tokens.size() && !glued(j)) {
      bool capital = is_upper(first_char(j));
      if (!capital && tokens[j].range.length() == 1 &&
          detail::is_opening(first_char(j)) && j + 1 < tokens.size() &&
          glued(j + 1)) {
        capital = is_upper(first_char(j + 1));
      }
      if (capital) {
        sentences.push_back({sentence_start, tokens[j - 1].range.end});
        sentence_start = tokens[j].range.start;
      }
    }
    i = j;
  }
  sentences.push_back({sentence_start, tokens.back().range.end});
  return sentences;
}

inline std::vector<Span> split_sentences(std::string_view utf8,
                                         const TitleLexicon& titles) {
  std::u32string text = utf8_decode(utf8);
  return split_sentences(text, tokenize(text, titles));
}

// Immutable text with its tokens and sentence spans.
class Document {
 public:
  Document() = default;

  Document(std::string_view utf8, const TitleLexicon& titles)
      : utf8_(utf8), text_(utf8_decode(utf8)) {
    tokens_ = tokenize(text_, titles);
    sentences_ = split_sentences(text_, tokens_);
  }

  const std::string& utf8() const { return utf8_; }
  const std::u32string& text() const { return text_; }
  size_t length() const { return text_.size(); }
  const std::vector<Token>& tokens() const { return tokens_; }
  const std::vector<Span>& sentences() const { return sentences_; }

  bool valid(const Span& s) const {
    return s.start < s.end && s.end <= text_.size();
  }

  void check(const Span& s) const {
    if (!valid(s)) {
      throw DataError("span [" + std::to_string(s.start) + ", " +
                      std::to_string(s.end) + ") outside document of length " +
                      std::to_string(text_.size()));
    }
  }

  std::string substr(const Span& s) const {
    check(s);
    return utf8_encode(std::u32string_view(text_).substr(s.start, s.length()));
  }

  std::u32string_view view(const Span& s) const {
    return std::u32string_view(text_).substr(s.start, s.length());
  }

  // Index of the sentence holding `offset`, or of the last sentence starting
  // before it when the offset falls between sentences.
  std::optional<size_t> sentence_index(size_t offset) const {
    auto it = std::upper_bound(
        sentences_.begin(), sentences_.end(), offset,
        [](size_t off, const Span& s) { return off < s.start; });
    if (it == sentences_.begin()) return std::nullopt;
    return static_cast<size_t>(std::distance(sentences_.begin(), it) - 1);
  }

  // Index of the first token whose range ends after `offset`.
  size_t first_token_ending_after(size_t offset) const {
    auto it = std::upper_bound(
        tokens_.begin(), tokens_.end(), offset,
        [](size_t off, const Token& t) { return off < t.range.end; });
    return static_cast<size_t>(std::distance(tokens_.begin(), it));
  }

  friend bool operator==(const Document& a, const Document& b) {
    return a.text_ == b.text_;
  }

 private:
  std::string utf8_;
  std::u32string text_;
  std::vector<Token> tokens_;
  std::vector<Span> sentences_;
};

// The last token ending at or before span.start inside the same sentence.
inline std::optional<Token> preceding_token(const Document& doc,
                                            const Span& span) {
  doc.check(span);
  auto sentence = doc.sentence_index(span.start);
  if (!sentence) return std::nullopt;
  size_t k = doc.first_token_ending_after(span.start);
  if (k == 0) return std::nullopt;
  const Token& tok = doc.tokens()[k - 1];
  if (tok.range.start < doc.sentences()[*sentence].start) return std::nullopt;
  return tok;
}

}  // namespace ptagger

#endif  // PTAGGER_TEXT_MODEL_HPP_
