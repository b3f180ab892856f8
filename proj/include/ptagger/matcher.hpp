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

// Links a recognized person mention to one of the predefined character tags.
//
// find_match runs, in order:
//  1. exact fast path: an entity identical to a full name (regular
//     similarity 100) returns that tag;
//  2. candidates: every tag whose full name has partial similarity to the
//     entity at or above the threshold, best first, ties in tag-list order.
//     With at least one candidate:
//       prefix "the"          -> family label "the <entity>"
//       prefix gendered title -> first candidate of the title's gender,
//                                else the top candidate
//       otherwise             -> top candidate;
//  3. no candidate: look the entity up as a diminutive and return the first
//     tag holding one of its canonical names as a token; failing that the
//     generic "person" label.

#ifndef PTAGGER_MATCHER_HPP_
#define PTAGGER_MATCHER_HPP_

#include <algorithm>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ptagger/error.hpp"
#include "ptagger/lexicons.hpp"
#include "ptagger/similarity.hpp"
#include "ptagger/tag_model.hpp"
#include "ptagger/unicode.hpp"

namespace ptagger {

inline constexpr std::string_view kPersonLabel = "person";

struct MatcherConfig {
  // Lower bound on partial similarity for a tag to become a candidate.
  int partial_similarity_precision = 70;

  void validate() const {
    if (partial_similarity_precision <= 0 ||
        partial_similarity_precision > 100) {
      throw DataError("threshold must be in (0, 100], got " +
                      std::to_string(partial_similarity_precision));
    }
  }
};

enum class MatchKind { kTag, kFamily, kGenericPerson };

inline std::string_view to_string(MatchKind k) {
  switch (k) {
    case MatchKind::kTag:
      return "tag";
    case MatchKind::kFamily:
      return "family";
    case MatchKind::kGenericPerson:
      break;
  }
  return "person";
}

struct MatchResult {
  MatchKind kind = MatchKind::kGenericPerson;
  std::optional<CharacterTag> tag;
  std::optional<std::string> family_label;
  std::optional<SimilarityScore> score;  // only for direct tag matches
  bool via_diminutive = false;

  static MatchResult of_tag(CharacterTag t, SimilarityScore s) {
    MatchResult r;
    r.kind = MatchKind::kTag;
    r.tag = std::move(t);
    r.score = s;
    return r;
  }

  static MatchResult of_diminutive(CharacterTag t) {
    MatchResult r;
    r.kind = MatchKind::kTag;
    r.tag = std::move(t);
    r.via_diminutive = true;
    return r;
  }

  static MatchResult family(std::string label) {
    MatchResult r;
    r.kind = MatchKind::kFamily;
    r.family_label = std::move(label);
    return r;
  }

  static MatchResult generic_person() { return MatchResult{}; }

  // Full name, family label or "person".
  std::string label() const {
    switch (kind) {
      case MatchKind::kTag:
        return tag->full_name;
      case MatchKind::kFamily:
        return *family_label;
      case MatchKind::kGenericPerson:
        break;
    }
    return std::string(kPersonLabel);
  }

  // Tags are identified by their full name.
  friend bool operator==(const MatchResult& a, const MatchResult& b) {
    return a.kind == b.kind && a.label() == b.label() && a.score == b.score &&
           a.via_diminutive == b.via_diminutive;
  }
};

struct Candidate {
  size_t index;  // position in the tag list
  CharacterTag tag;
  SimilarityScore score;
};

inline std::vector<Candidate> collect_candidates(std::string_view entity,
                                                 const TagList& tags,
                                                 const MatcherConfig& cfg) {
  if (trim(entity).empty()) throw DataError("empty entity");
  std::vector<Candidate> out;
  PartialScorer scorer(utf8_decode(entity));
  for (size_t i = 0; i < tags.tags.size(); ++i) {
    SimilarityScore s = scorer.score(utf8_decode(tags.tags[i].full_name));
    if (s.value() >= cfg.partial_similarity_precision) {
      out.push_back({i, tags.tags[i], s});
    }
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const Candidate& a, const Candidate& b) {
                     return a.score > b.score;
                   });
  return out;
}

namespace detail {

inline bool tag_has_token(const CharacterTag& tag, const std::string& lower) {
  for (const auto& g : tag.given_names) {
    if (to_lower_utf8(g) == lower) return true;
  }
  for (const auto& t : split_whitespace(tag.full_name)) {
    if (to_lower_utf8(t) == lower) return true;
  }
  return false;
}

}  // namespace detail

inline std::optional<MatchResult> match_diminutive(std::string_view entity,
                                                   const TagList& tags,
                                                   const Lexicons& lex) {
  const auto* names = &lex.diminutives.canonical_names_for(entity);
  if (names->empty()) {
    auto words = split_whitespace(entity);
    if (words.size() > 1) {
      names = &lex.diminutives.canonical_names_for(words.front());
    }
  }
  for (const auto& canonical : *names) {
    std::string lower = to_lower_utf8(canonical);
    for (const auto& tag : tags.tags) {
      if (detail::tag_has_token(tag, lower)) {
        return MatchResult::of_diminutive(tag);
      }
    }
  }
  return std::nullopt;
}

// `prefix` is the surface of the token preceding the entity, if any.
inline MatchResult find_match(std::string_view entity,
                              const std::optional<std::string>& prefix,
                              const TagList& tags, const Lexicons& lex,
                              const MatcherConfig& cfg) {
  if (trim(entity).empty()) throw DataError("empty entity");
  if (tags.empty()) return MatchResult::generic_person();

  std::u32string ent = utf8_decode(entity);
  for (const auto& tag : tags.tags) {
    if (regular_similarity(ent, utf8_decode(tag.full_name)) == 100) {
      return MatchResult::of_tag(tag, SimilarityScore(100));
    }
  }

  std::vector<Candidate> candidates = collect_candidates(entity, tags, cfg);
  if (!candidates.empty()) {
    if (prefix) {
      if (to_lower_utf8(*prefix) == "the") {
        return MatchResult::family("the " + std::string(entity));
      }
      Gender g = lex.titles.title_gender(*prefix);
      if (g != Gender::kUnknown) {
        for (const auto& c : candidates) {
          if (c.tag.gender == g) return MatchResult::of_tag(c.tag, c.score);
        }
      }
    }
    return MatchResult::of_tag(candidates.front().tag,
                               candidates.front().score);
  }

  if (auto m = match_diminutive(entity, tags, lex)) return *m;
  return MatchResult::generic_person();
}

struct TitleSplit {
  std::optional<std::string> title;
  std::string rest;

  friend bool operator==(const TitleSplit&, const TitleSplit&) = default;
};

// "Miss Bennet" -> ("Miss", "Bennet"). A lone title is not split.
inline TitleSplit strip_leading_title(std::string_view entity,
                                      const TitleLexicon& titles) {
  std::string_view t = trim(entity);
  size_t ws = t.find_first_of(" \t\r\n");
  if (ws != std::string_view::npos && titles.contains(t.substr(0, ws))) {
    std::string_view rest = trim(t.substr(ws));
    if (!rest.empty()) return {std::string(t.substr(0, ws)), std::string(rest)};
  }
  return {std::nullopt, std::string(t)};
}

// Matches a mention surface as produced by a recognizer: the whole surface
// gets the exact fast path first (so "Mrs. Bennet" hits the tag
// "Mrs. Bennet"), then a leading title is split off and, being adjacent to
// the name, takes precedence over the preceding token as the prefix.
inline MatchResult match_mention(std::string_view surface,
                                 const std::optional<std::string>& prefix,
                                 const TagList& tags, const Lexicons& lex,
                                 const MatcherConfig& cfg) {
  if (trim(surface).empty()) throw DataError("empty entity");
  std::u32string whole = utf8_decode(trim(surface));
  for (const auto& tag : tags.tags) {
    if (regular_similarity(whole, utf8_decode(tag.full_name)) == 100) {
      return MatchResult::of_tag(tag, SimilarityScore(100));
    }
  }
  TitleSplit split = strip_leading_title(surface, lex.titles);
  return find_match(split.rest, split.title ? split.title : prefix, tags, lex,
                    cfg);
}

}  // namespace ptagger

#endif  // PTAGGER_MATCHER_HPP_
