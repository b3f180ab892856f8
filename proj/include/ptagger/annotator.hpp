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

// Annotation pipeline and its two output formats.
//
// Inline: the label follows the mention in double angle brackets,
//
//   Jane<<Jane Bennet>> had sent Caroline<<Caroline Bingley>> an answer.
//
// A reader recovers where a mention starts by walking back over capitalized
// words joined by single spaces. When that walk would not land on the real
// start the marker carries the mention length in code points instead:
// "the Creature<<person|12>>". Removing every <<...>> marker gives back the
// original text.
//
// Standoff: one JSON object per document,
//
//   {"tag_list": id, "config": {"threshold": 70, "recognizer": "gazetteer"},
//    "text": "...",
//    "annotations": [{"start": 0, "end": 4, "surface": "Jane",
//                     "label": "Jane Bennet", "kind": "tag", "score": 100,
//                     "via_diminutive": false}, ...]}

#ifndef PTAGGER_ANNOTATOR_HPP_
#define PTAGGER_ANNOTATOR_HPP_

#include <algorithm>
#include <cctype>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "json.hpp"
#include "ptagger/error.hpp"
#include "ptagger/lexicons.hpp"
#include "ptagger/matcher.hpp"
#include "ptagger/recognizer.hpp"
#include "ptagger/tag_model.hpp"
#include "ptagger/text_model.hpp"
#include "ptagger/unicode.hpp"

namespace ptagger {

struct Annotation {
  Span span;
  std::string surface;
  MatchResult result;

  friend bool operator==(const Annotation&, const Annotation&) = default;
};

struct ConfigSnapshot {
  int threshold = MatcherConfig{}.partial_similarity_precision;
  std::string recognizer = "gazetteer";

  friend bool operator==(const ConfigSnapshot&, const ConfigSnapshot&) = default;
};

struct AnnotatedDocument {
  Document document;
  std::vector<Annotation> annotations;  // sorted by start, non-overlapping
  std::string tag_list_id;
  ConfigSnapshot config;

  friend bool operator==(const AnnotatedDocument&,
                         const AnnotatedDocument&) = default;
};

namespace detail {

// Only "the" and the gender of a title influence find_match.
inline std::string prefix_key(const std::optional<std::string>& prefix,
                              const TitleLexicon& titles) {
  if (!prefix) return {};
  if (to_lower_utf8(*prefix) == "the") return "the";
  Gender g = titles.title_gender(*prefix);
  return g == Gender::kUnknown ? std::string() : std::string(to_string(g));
}

}  // namespace detail

inline AnnotatedDocument annotate(const Document& doc, const TagList& tags,
                                  const Lexicons& lex, const MatcherConfig& cfg,
                                  std::vector<EntityMention> mentions) {
  cfg.validate();
  std::sort(mentions.begin(), mentions.end(),
            [](const EntityMention& a, const EntityMention& b) {
              return a.span < b.span;
            });
  AnnotatedDocument ad;
  ad.document = doc;
  ad.tag_list_id = tags.novel_id;
  ad.config.threshold = cfg.partial_similarity_precision;
  bool external = std::any_of(mentions.begin(), mentions.end(), [](auto& m) {
    return m.source == MentionSource::kExternal;
  });
  ad.config.recognizer = external ? "external" : "gazetteer";

  std::unordered_map<std::string, MatchResult> cache;
  for (size_t k = 0; k < mentions.size(); ++k) {
    const EntityMention& m = mentions[k];
    doc.check(m.span);
    if (k > 0 && m.span.overlaps(mentions[k - 1].span)) {
      throw DataError("overlapping mentions at offset " +
                      std::to_string(m.span.start));
    }
    TitleSplit split = strip_leading_title(m.surface, lex.titles);
    std::string key = m.surface + '\x1f' +
                      detail::prefix_key(split.title ? split.title : m.prefix,
                                         lex.titles);
    auto it = cache.find(key);
    if (it == cache.end()) {
      it = cache.emplace(key, match_mention(m.surface, m.prefix, tags, lex, cfg))
               .first;
    }
    ad.annotations.push_back({m.span, m.surface, it->second});
  }
  return ad;
}

namespace detail {

inline bool is_inline_name_char(char32_t c) {
  return is_word_char(c) || is_apostrophe(c) || is_hyphen(c) || c == U'.';
}

// Start of the run of capitalized words (joined by single spaces) that ends
// at `end`, never reaching below `floor`. Returns `end` when the text right
// before `end` is not a capitalized word.
inline size_t default_mention_start(std::u32string_view text, size_t end,
                                    size_t floor) {
  size_t start = end;
  size_t pos = end;
  while (true) {
    size_t w = pos;
    while (w > floor && is_inline_name_char(text[w - 1])) --w;
    if (w == pos || !is_upper(text[w])) break;
    start = w;
    if (w >= floor + 2 && text[w - 1] == U' ' &&
        is_inline_name_char(text[w - 2])) {
      pos = w - 1;
      continue;
    }
    break;
  }
  return start;
}

}  // namespace detail

inline std::string render_inline(const AnnotatedDocument& ad) {
  const std::u32string& text = ad.document.text();
  std::string out;
  size_t pos = 0;
  size_t floor = 0;
  for (const auto& a : ad.annotations) {
    out += utf8_encode(std::u32string_view(text).substr(pos, a.span.end - pos));
    out += "<<";
    out += a.result.label();
    if (detail::default_mention_start(text, a.span.end, floor) != a.span.start) {
      out += '|';
      out += std::to_string(a.span.length());
    }
    out += ">>";
    pos = a.span.end;
    floor = a.span.end;
  }
  out += utf8_encode(std::u32string_view(text).substr(pos));
  return out;
}

struct InlineMention {
  Span span;
  std::string label;

  friend bool operator==(const InlineMention&, const InlineMention&) = default;
};

struct InlineDocument {
  std::string text;  // markers removed
  std::vector<InlineMention> mentions;
};

inline InlineDocument parse_inline(std::string_view marked) {
  InlineDocument doc;
  std::u32string in = utf8_decode(marked);
  std::u32string text;
  size_t floor = 0;
  size_t i = 0;
  while (i < in.size()) {
    if (in[i] == U'<' && i + 1 < in.size() && in[i + 1] == U'<') {
      size_t close = in.find(U">>", i + 2);
      if (close == std::u32string::npos) {
        throw DataError("unterminated << marker at offset " + std::to_string(i));
      }
      std::string body = utf8_encode(in.substr(i + 2, close - i - 2));
      std::string label = body;
      size_t start;
      size_t bar = body.rfind('|');
      bool explicit_length =
          bar != std::string::npos && bar + 1 < body.size() &&
          std::all_of(body.begin() + bar + 1, body.end(),
                      [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
      if (explicit_length) {
        label = body.substr(0, bar);
        size_t len = std::stoul(body.substr(bar + 1));
        if (len == 0 || len > text.size() - floor) {
          throw DataError("bad mention length in marker '" + body + "'");
        }
        start = text.size() - len;
      } else {
        start = detail::default_mention_start(text, text.size(), floor);
        if (start == text.size()) {
          throw DataError("marker '" + body + "' does not follow a name");
        }
      }
      doc.mentions.push_back({{start, text.size()}, label});
      floor = text.size();
      i = close + 2;
    } else {
      text.push_back(in[i]);
      ++i;
    }
  }
  doc.text = utf8_encode(text);
  return doc;
}

inline nlohmann::ordered_json write_standoff(const AnnotatedDocument& ad) {
  nlohmann::ordered_json j;
  j["tag_list"] = ad.tag_list_id;
  j["config"] = {{"threshold", ad.config.threshold},
                 {"recognizer", ad.config.recognizer}};
  j["text"] = ad.document.utf8();
  j["annotations"] = nlohmann::ordered_json::array();
  for (const auto& a : ad.annotations) {
    nlohmann::ordered_json r;
    r["start"] = a.span.start;
    r["end"] = a.span.end;
    r["surface"] = a.surface;
    r["label"] = a.result.label();
    r["kind"] = to_string(a.result.kind);
    if (a.result.score) {
      r["score"] = a.result.score->value();
    } else {
      r["score"] = nullptr;
    }
    r["via_diminutive"] = a.result.via_diminutive;
    j["annotations"].push_back(std::move(r));
  }
  return j;
}

inline std::string standoff_string(const AnnotatedDocument& ad) {
  return write_standoff(ad).dump(2) + "\n";
}

// Tag labels are resolved against `tags` when given, otherwise re-parsed.
inline AnnotatedDocument read_standoff(const nlohmann::json& j,
                                       const Lexicons& lex,
                                       const TagList* tags = nullptr) {
  AnnotatedDocument ad;
  try {
    ad.tag_list_id = j.value("tag_list", std::string());
    if (j.contains("config")) {
      const auto& c = j.at("config");
      ad.config.threshold = c.value("threshold", ad.config.threshold);
      ad.config.recognizer = c.value("recognizer", ad.config.recognizer);
    }
    ad.document = Document(j.at("text").get<std::string>(), lex.titles);
    for (const auto& r : j.at("annotations")) {
      Annotation a;
      a.span = {r.at("start").get<size_t>(), r.at("end").get<size_t>()};
      ad.document.check(a.span);
      a.surface = ad.document.substr(a.span);
      if (r.contains("surface") && r.at("surface").get<std::string>() != a.surface) {
        throw DataError("annotation surface '" + r.at("surface").get<std::string>() +
                        "' does not match text '" + a.surface + "'");
      }
      std::string label = r.at("label").get<std::string>();
      std::string kind = r.value("kind", std::string("tag"));
      if (kind == "tag") {
        const CharacterTag* known = tags ? tags->find(label) : nullptr;
        CharacterTag tag = known ? *known : parse_tag(label, lex);
        a.result.kind = MatchKind::kTag;
        a.result.tag = std::move(tag);
        if (r.contains("score") && !r.at("score").is_null()) {
          a.result.score = SimilarityScore(r.at("score").get<int>());
        }
        a.result.via_diminutive = r.value("via_diminutive", false);
      } else if (kind == "family") {
        a.result = MatchResult::family(label);
      } else if (kind == "person") {
        a.result = MatchResult::generic_person();
      } else {
        throw DataError("unknown annotation kind '" + kind + "'");
      }
      if (!ad.annotations.empty() &&
          a.span.start < ad.annotations.back().span.end) {
        throw DataError("annotations unsorted or overlapping at offset " +
                        std::to_string(a.span.start));
      }
      ad.annotations.push_back(std::move(a));
    }
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed standoff file: ") + e.what());
  }
  return ad;
}

}  // namespace ptagger

#endif  // PTAGGER_ANNOTATOR_HPP_
