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

// Person mention recognition.
//
// Two sources feed the matcher: a recall-oriented gazetteer built from the tag
// list and the name lexicons, and standoff spans produced by any external NER
// system:
//
//   {"sha256": "<hex of the UTF-8 text>",
//    "spans": [{"start": 0, "end": 4, "label": "person"}, ...]}
//
// Offsets are code point indices. Only "person" spans are kept.

#ifndef PTAGGER_RECOGNIZER_HPP_
#define PTAGGER_RECOGNIZER_HPP_

#include <algorithm>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "json.hpp"
#include "ptagger/error.hpp"
#include "ptagger/lexicons.hpp"
#include "ptagger/matcher.hpp"
#include "ptagger/sha256.hpp"
#include "ptagger/similarity.hpp"
#include "ptagger/tag_model.hpp"
#include "ptagger/text_model.hpp"
#include "ptagger/unicode.hpp"

namespace ptagger {

enum class MentionSource { kGazetteer, kExternal };

struct EntityMention {
  Span span;
  std::string surface;
  std::optional<std::string> prefix;
  MentionSource source = MentionSource::kGazetteer;

  friend bool operator==(const EntityMention&, const EntityMention&) = default;
};

inline EntityMention make_mention(const Document& doc, Span span,
                                  MentionSource source) {
  EntityMention m;
  m.span = span;
  m.surface = doc.substr(span);
  if (auto tok = preceding_token(doc, span)) m.prefix = tok->surface;
  m.source = source;
  return m;
}

namespace detail {

// Lowercase particles allowed inside a name run ("Catherine de Bourgh").
inline bool is_name_particle(std::string_view w) {
  static const std::unordered_set<std::string_view> kParticles = {
      "de", "da", "di", "du", "la", "le", "van", "von", "der", "den", "del"};
  return kParticles.count(w) > 0;
}

// Capitalized function words that never start or join a name.
inline bool is_function_word(std::u32string_view w) {
  static const std::unordered_set<std::string> kWords = {
      "a",    "an",   "and",  "as",    "at",    "but",  "by",    "for",
      "he",   "her",  "his",  "i",     "if",    "in",   "it",    "its",
      "my",   "no",   "not",  "of",    "oh",    "on",   "or",    "our",
      "she",  "so",   "that", "the",   "their", "then", "there", "these",
      "they", "this", "those", "to",   "we",    "what", "when",  "who",
      "yes",  "you",  "your"};
  return kWords.count(utf8_encode(to_lower(w))) > 0;
}

// Length of a possessive suffix ('s or ’s) at the end of a word.
inline size_t possessive_suffix(std::u32string_view w) {
  if (w.size() > 2 && (w.back() == U's' || w.back() == U'S') &&
      is_apostrophe(w[w.size() - 2])) {
    return 2;
  }
  return 0;
}

}  // namespace detail

// Emits maximal runs of name-like tokens. A capitalized word is name-like when
//  (a) it, or the bigram it forms with a neighbour, reaches the matcher
//      threshold in partial similarity against some tag's full name, or
//  (b) it is a known name form in the diminutive or common-names lexicons, or
//  (c) it directly follows a gendered title, which then joins the mention.
// Function words, and sentence-initial words that also occur in lowercase
// elsewhere in the document, are treated as ordinary words. Possessive 's is left outside the
// span. Runs never overlap.
inline std::vector<EntityMention> recognize_gazetteer(const Document& doc,
                                                      const TagList& tags,
                                                      const Lexicons& lex,
                                                      const MatcherConfig& cfg) {
  const auto& toks = doc.tokens();
  const std::u32string& text = doc.text();
  const size_t n = toks.size();

  std::vector<std::u32string> names;
  names.reserve(tags.size());
  for (const auto& t : tags.tags) names.push_back(utf8_decode(t.full_name));

  std::unordered_map<std::u32string, bool> resembles_cache;
  auto resembles_tag = [&](const std::u32string& s) {
    auto it = resembles_cache.find(s);
    if (it != resembles_cache.end()) return it->second;
    bool hit = false;
    if (!s.empty()) {
      PartialScorer scorer(s);
      for (const auto& name : names) {
        if (scorer.score(name).value() >= cfg.partial_similarity_precision) {
          hit = true;
          break;
        }
      }
    }
    resembles_cache.emplace(s, hit);
    return hit;
  };

  std::unordered_set<std::u32string> lowercase_words;
  for (const auto& t : toks) {
    char32_t c = text[t.range.start];
    if (is_word_char(c) && !is_upper(c)) {
      lowercase_words.insert(to_lower(doc.view(t.range)));
    }
  }

  std::vector<size_t> core_end(n);
  std::vector<bool> capitalized(n, false);
  std::vector<bool> sentence_initial(n, false);
  for (size_t i = 0; i < n; ++i) {
    std::u32string_view w = doc.view(toks[i].range);
    core_end[i] = toks[i].range.end - detail::possessive_suffix(w);
    capitalized[i] = is_word_char(w.front()) && is_upper(w.front()) &&
                     !toks[i].is_title_abbrev &&
                     core_end[i] - toks[i].range.start >= 2;
    auto sentence = doc.sentence_index(toks[i].range.start);
    size_t sstart = sentence ? doc.sentences()[*sentence].start : 0;
    size_t k = i;
    while (k > 0 && toks[k - 1].range.start >= sstart &&
           toks[k - 1].range.length() == 1 &&
           detail::is_opening(text[toks[k - 1].range.start])) {
      --k;
    }
    sentence_initial[i] = k == 0 || toks[k - 1].range.start < sstart;
  }
  auto core = [&](size_t i) {
    return std::u32string(
        doc.view({toks[i].range.start, core_end[i]}));
  };
  // Separated by whitespace only.
  auto spaced = [&](size_t i) {
    return i + 1 < n && toks[i + 1].range.start > toks[i].range.end &&
           core_end[i] == toks[i].range.end;
  };

  for (size_t i = 0; i < n; ++i) {
    if (!capitalized[i]) continue;
    std::u32string w = core(i);
    if (detail::is_function_word(w) ||
        (sentence_initial[i] && lowercase_words.count(to_lower(w)))) {
      capitalized[i] = false;
    }
  }

  std::vector<bool> marked(n, false);
  for (size_t i = 0; i < n; ++i) {
    if (!capitalized[i]) continue;
    std::u32string w = core(i);
    std::string utf8 = utf8_encode(w);
    if (resembles_tag(w) || lex.diminutives.is_name_form(utf8) ||
        lex.common_names.contains(utf8)) {
      marked[i] = true;
    }
  }
  for (size_t i = 0; i + 1 < n; ++i) {
    if (!capitalized[i] || !capitalized[i + 1] || !spaced(i)) continue;
    if (marked[i] && marked[i + 1]) continue;
    std::u32string bigram(doc.view({toks[i].range.start, core_end[i + 1]}));
    if (resembles_tag(bigram)) marked[i] = marked[i + 1] = true;
  }
  std::vector<bool> after_title(n, false);
  for (size_t i = 0; i + 1 < n; ++i) {
    if (toks[i].is_title_abbrev && lex.titles.is_gendered_title(toks[i].surface) &&
        spaced(i) && capitalized[i + 1]) {
      marked[i + 1] = true;
      after_title[i + 1] = true;
    }
  }

  std::vector<EntityMention> out;
  size_t i = 0;
  while (i < n) {
    if (!marked[i]) {
      ++i;
      continue;
    }
    size_t first = after_title[i] ? i - 1 : i;
    size_t last = i;
    while (spaced(last)) {
      size_t next = last + 1;
      if (marked[next]) {
        last = next;
        continue;
      }
      if (detail::is_name_particle(toks[next].surface) && spaced(next) &&
          marked[next + 1]) {
        last = next + 1;
        continue;
      }
      break;
    }
    out.push_back(make_mention(
        doc, {toks[first].range.start, core_end[last]}, MentionSource::kGazetteer));
    i = last + 1;
  }
  return out;
}

struct SpanLabel {
  size_t start = 0;
  size_t end = 0;
  std::string label;

  friend bool operator==(const SpanLabel&, const SpanLabel&) = default;
};

struct StandoffInput {
  std::string sha256;
  std::vector<SpanLabel> spans;

  static StandoffInput from_json(const nlohmann::json& j) {
    StandoffInput in;
    try {
      in.sha256 = j.at("sha256").get<std::string>();
      for (const auto& s : j.at("spans")) {
        in.spans.push_back({s.at("start").get<size_t>(),
                            s.at("end").get<size_t>(),
                            s.at("label").get<std::string>()});
      }
    } catch (const nlohmann::json::exception& e) {
      throw DataError(std::string("malformed spans file: ") + e.what());
    }
    return in;
  }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["sha256"] = sha256;
    j["spans"] = nlohmann::ordered_json::array();
    for (const auto& s : spans) {
      j["spans"].push_back({{"start", s.start}, {"end", s.end}, {"label", s.label}});
    }
    return j;
  }
};

inline std::vector<EntityMention> ingest_spans(const Document& doc,
                                               const StandoffInput& input) {
  if (to_lower_utf8(input.sha256) != sha256_hex(doc.utf8())) {
    throw DataError("document/spans desynchronized: sha256 mismatch");
  }
  std::vector<Span> kept;
  for (size_t k = 0; k < input.spans.size(); ++k) {
    const SpanLabel& s = input.spans[k];
    if (!doc.valid({s.start, s.end})) {
      throw DataError("span " + std::to_string(k) + " [" +
                      std::to_string(s.start) + ", " + std::to_string(s.end) +
                      ") out of range for text of length " +
                      std::to_string(doc.length()));
    }
    if (to_lower_utf8(s.label) == kPersonLabel) kept.push_back({s.start, s.end});
  }
  std::sort(kept.begin(), kept.end());
  std::vector<EntityMention> out;
  for (size_t k = 0; k < kept.size(); ++k) {
    if (k > 0 && kept[k].overlaps(kept[k - 1])) {
      throw DataError("overlapping person spans at offset " +
                      std::to_string(kept[k].start));
    }
    out.push_back(make_mention(doc, kept[k], MentionSource::kExternal));
  }
  return out;
}

}  // namespace ptagger

#endif  // PTAGGER_RECOGNIZER_HPP_
