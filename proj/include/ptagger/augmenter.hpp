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

// NER training data: sentences that mention given entities, and name
// injection that swaps annotated names for common first names while keeping
// the annotations aligned. Records are JSON lines:
//
//   {"text": "...", "spans": [{"start": 0, "end": 4, "label": "person"}]}

#ifndef PTAGGER_AUGMENTER_HPP_
#define PTAGGER_AUGMENTER_HPP_

#include <algorithm>
#include <cstdint>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "ptagger/error.hpp"
#include "ptagger/lexicons.hpp"
#include "ptagger/recognizer.hpp"
#include "ptagger/text_model.hpp"
#include "ptagger/unicode.hpp"

namespace ptagger {

struct TrainingRecord {
  std::string text;
  std::vector<SpanLabel> spans;

  friend bool operator==(const TrainingRecord&, const TrainingRecord&) = default;

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["text"] = text;
    j["spans"] = nlohmann::ordered_json::array();
    for (const auto& s : spans) {
      j["spans"].push_back({{"start", s.start}, {"end", s.end}, {"label", s.label}});
    }
    return j;
  }

  static TrainingRecord from_json(const nlohmann::json& j) {
    TrainingRecord r;
    try {
      r.text = j.at("text").get<std::string>();
      for (const auto& s : j.at("spans")) {
        r.spans.push_back({s.at("start").get<size_t>(), s.at("end").get<size_t>(),
                           s.value("label", std::string(kPersonLabel))});
      }
    } catch (const nlohmann::json::exception& e) {
      throw DataError(std::string("malformed training record: ") + e.what());
    }
    return r;
  }
};

inline std::vector<TrainingRecord> read_jsonl(std::istream& in) {
  std::vector<TrainingRecord> out;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded()) {
      throw DataError("line " + std::to_string(lineno) + ": invalid JSON");
    }
    out.push_back(TrainingRecord::from_json(j));
  }
  return out;
}

inline void write_jsonl(std::ostream& out,
                        const std::vector<TrainingRecord>& records) {
  for (const auto& r : records) out << r.to_json().dump() << '\n';
}

// Draws replacement names. Each gender partition is dealt from a shuffled
// deck, so names repeat only after the partition is exhausted. Only the raw
// mt19937_64 output is used, which keeps draws identical across standard
// libraries for a given seed.
class NameSampler {
 public:
  NameSampler(const CommonNamesList& pool, uint64_t seed) : rng_(seed) {
    female_.names = pool.female();
    male_.names = pool.male();
    all_.names = pool.female();
    all_.names.insert(all_.names.end(), pool.male().begin(), pool.male().end());
    if (all_.names.empty()) throw DataError("empty common names pool");
  }

  // Unknown gender draws from both partitions.
  const std::string& draw(Gender g) {
    Deck* d = &all_;
    if (g == Gender::kFemale && !female_.names.empty()) d = &female_;
    if (g == Gender::kMale && !male_.names.empty()) d = &male_;
    if (d->next >= d->order.size()) reshuffle(*d);
    return d->names[d->order[d->next++]];
  }

  size_t pool_size(Gender g) const {
    if (g == Gender::kFemale && !female_.names.empty()) return female_.names.size();
    if (g == Gender::kMale && !male_.names.empty()) return male_.names.size();
    return all_.names.size();
  }

 private:
  struct Deck {
    std::vector<std::string> names;
    std::vector<size_t> order;
    size_t next = 0;
  };

  void reshuffle(Deck& d) {
    d.order.resize(d.names.size());
    std::iota(d.order.begin(), d.order.end(), size_t{0});
    for (size_t i = d.order.size(); i > 1; --i) {
      std::swap(d.order[i - 1], d.order[rng_() % i]);
    }
    d.next = 0;
  }

  std::mt19937_64 rng_;
  Deck female_, male_, all_;
};

struct InjectionOptions {
  bool gender_consistent = false;
  const GenderLexicon* genders = nullptr;  // required when gender_consistent
};

namespace detail {

inline std::vector<SpanLabel> sorted_checked(const std::u32string& text,
                                             std::vector<SpanLabel> spans) {
  std::sort(spans.begin(), spans.end(), [](const SpanLabel& a, const SpanLabel& b) {
    return a.start < b.start || (a.start == b.start && a.end < b.end);
  });
  for (size_t k = 0; k < spans.size(); ++k) {
    if (spans[k].start >= spans[k].end || spans[k].end > text.size()) {
      throw DataError("span [" + std::to_string(spans[k].start) + ", " +
                      std::to_string(spans[k].end) + ") out of range");
    }
    if (k > 0 && spans[k].start < spans[k - 1].end) {
      throw DataError("overlapping spans at offset " +
                      std::to_string(spans[k].start));
    }
  }
  return spans;
}

}  // namespace detail

// Replaces each annotated surface found in `mapping`; others stay as they
// are. Spans are recomputed for the new lengths.
inline TrainingRecord inject_names_with_mapping(
    std::string_view sentence, const std::vector<SpanLabel>& spans,
    const std::map<std::string, std::string>& mapping) {
  std::u32string text = utf8_decode(sentence);
  std::vector<SpanLabel> sorted = detail::sorted_checked(text, spans);
  TrainingRecord out;
  std::u32string result;
  size_t pos = 0;
  for (const auto& s : sorted) {
    result.append(text, pos, s.start - pos);
    std::string surface = utf8_encode(text.substr(s.start, s.end - s.start));
    auto it = mapping.find(surface);
    std::u32string replacement =
        it == mapping.end() ? utf8_decode(surface) : utf8_decode(it->second);
    size_t start = result.size();
    result += replacement;
    out.spans.push_back({start, result.size(), s.label});
    pos = s.end;
  }
  result.append(text, pos, std::u32string::npos);
  out.text = utf8_encode(result);
  return out;
}

// One replacement per distinct surface, so a name repeated in the sentence
// gets the same substitute each time.
inline TrainingRecord inject_names(std::string_view sentence,
                                   const std::vector<SpanLabel>& spans,
                                   NameSampler& sampler,
                                   const InjectionOptions& opts = {}) {
  std::u32string text = utf8_decode(sentence);
  std::vector<SpanLabel> sorted = detail::sorted_checked(text, spans);
  std::map<std::string, std::string> mapping;
  for (const auto& s : sorted) {
    std::string surface = utf8_encode(text.substr(s.start, s.end - s.start));
    if (mapping.count(surface)) continue;
    Gender g = Gender::kUnknown;
    if (opts.gender_consistent && opts.genders != nullptr) {
      auto words = split_whitespace(surface);
      g = opts.genders->gender_of_first_name(words.front());
    }
    std::string pick = sampler.draw(g);
    for (size_t tries = 1; pick == surface && tries < sampler.pool_size(g); ++tries) {
      pick = sampler.draw(g);
    }
    mapping.emplace(surface, pick);
  }
  return inject_names_with_mapping(sentence, sorted, mapping);
}

inline TrainingRecord inject_names(std::string_view sentence,
                                   const std::vector<SpanLabel>& spans,
                                   const CommonNamesList& pool, uint64_t seed,
                                   const InjectionOptions& opts = {}) {
  NameSampler sampler(pool, seed);
  return inject_names(sentence, spans, sampler, opts);
}

// Every sentence with a whole-token occurrence of a listed entity, each
// occurrence labelled "person". A trailing possessive 's does not block a
// match but stays outside the span. Longer entities win at a position.
inline std::vector<TrainingRecord> build_entity_sentences(
    std::string_view text, const std::vector<std::string>& entities,
    const TitleLexicon& titles) {
  Document doc(text, titles);
  std::vector<std::vector<std::string>> patterns;
  for (const auto& e : entities) {
    auto toks = tokenize(e, titles);
    if (toks.empty()) throw DataError("empty entity");
    std::vector<std::string> surfaces;
    for (auto& t : toks) surfaces.push_back(t.surface);
    patterns.push_back(std::move(surfaces));
  }
  std::sort(patterns.begin(), patterns.end(),
            [](const auto& a, const auto& b) { return a.size() > b.size(); });

  const auto& toks = doc.tokens();
  std::vector<TrainingRecord> out;
  size_t t = 0;
  for (const Span& sentence : doc.sentences()) {
    size_t first = t;
    while (t < toks.size() && toks[t].range.end <= sentence.end) ++t;
    std::vector<SpanLabel> hits;
    for (size_t i = first; i < t;) {
      size_t matched = 0;
      size_t end = 0;
      for (const auto& p : patterns) {
        if (i + p.size() > t) continue;
        bool ok = true;
        for (size_t k = 0; k < p.size() && ok; ++k) {
          const std::string& s = toks[i + k].surface;
          ok = s == p[k];
          if (!ok && k + 1 == p.size()) {
            std::u32string w = utf8_decode(s);
            size_t suffix = detail::possessive_suffix(w);
            ok = suffix > 0 && utf8_encode(w.substr(0, w.size() - suffix)) == p[k];
          }
        }
        if (ok) {
          matched = p.size();
          const Token& last = toks[i + matched - 1];
          end = last.range.end - detail::possessive_suffix(doc.view(last.range));
          break;
        }
      }
      if (matched == 0) {
        ++i;
        continue;
      }
      hits.push_back({toks[i].range.start - sentence.start, end - sentence.start,
                      std::string(kPersonLabel)});
      i += matched;
    }
    if (!hits.empty()) out.push_back({doc.substr(sentence), std::move(hits)});
  }
  return out;
}

}  // namespace ptagger

#endif  // PTAGGER_AUGMENTER_HPP_
