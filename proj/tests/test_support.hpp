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

// Shared fixtures and reference implementations for the test binaries. The
// reference implementations are deliberately naive so they can serve as
// oracles for the optimized library code.

#ifndef PTAGGER_TESTS_TEST_SUPPORT_HPP_
#define PTAGGER_TESTS_TEST_SUPPORT_HPP_

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ptagger/annotator.hpp"
#include "ptagger/eval.hpp"
#include "ptagger/lexicons.hpp"
#include "ptagger/tag_model.hpp"
#include "ptagger/unicode.hpp"

namespace ptagger::testing {

inline std::filesystem::path source_dir() { return PTAGGER_SOURCE_DIR; }
inline std::filesystem::path data_dir() { return source_dir() / "data"; }
inline std::filesystem::path fixture_dir() {
  return source_dir() / "tests" / "fixtures";
}

inline const Lexicons& bundled_lexicons() {
  static const Lexicons lex = Lexicons::load_directory(data_dir());
  return lex;
}

inline const TagList& tag_list(const std::string& novel) {
  static std::map<std::string, TagList> cache;
  auto it = cache.find(novel);
  if (it == cache.end()) {
    it = cache.emplace(novel, load_tag_list(data_dir() / "characters" /
                                                (novel + ".txt"),
                                            bundled_lexicons()))
             .first;
  }
  return it->second;
}

inline const TagList& pnp_tags() { return tag_list("pride_and_prejudice"); }

inline TagList make_tags(const std::vector<std::string>& names,
                         const Lexicons& lex = bundled_lexicons()) {
  std::ostringstream s;
  for (const auto& n : names) s << n << '\n';
  std::istringstream in(s.str());
  return parse_tag_list(in, "test", lex);
}

// Longest common subsequence by enumerating every subsequence of `a`.
inline size_t brute_force_lcs(const std::u32string& a, const std::u32string& b) {
  size_t best = 0;
  for (uint32_t mask = 0; mask < (1u << a.size()); ++mask) {
    std::u32string sub;
    for (size_t i = 0; i < a.size(); ++i) {
      if (mask & (1u << i)) sub.push_back(a[i]);
    }
    if (sub.size() <= best) continue;
    size_t j = 0;
    for (char32_t c : b) {
      if (j < sub.size() && sub[j] == c) ++j;
    }
    if (j == sub.size()) best = sub.size();
  }
  return best;
}

// Compares every pair of tags directly. Name parts are the whitespace tokens
// of the full name minus a leading title.
inline std::pair<size_t, int> brute_force_shared_parts(
    const std::vector<std::string>& full_names, const TitleLexicon& titles) {
  auto parts = [&](const std::string& name) {
    std::vector<std::string> toks;
    std::istringstream in(name);
    for (std::string t; in >> t;) toks.push_back(t);
    if (toks.size() > 1 && titles.contains(toks[0])) toks.erase(toks.begin());
    for (auto& t : toks) t = to_lower_utf8(t);
    return toks;
  };
  size_t n = full_names.size();
  size_t sharing = 0;
  for (size_t i = 0; i < n; ++i) {
    auto pi = parts(full_names[i]);
    bool shares = false;
    for (size_t j = 0; j < n && !shares; ++j) {
      if (i == j) continue;
      auto pj = parts(full_names[j]);
      for (const auto& x : pi) {
        if (std::find(pj.begin(), pj.end(), x) != pj.end()) shares = true;
      }
    }
    sharing += shares ? 1 : 0;
  }
  if (n == 0) return {0, 0};
  double pct = 100.0 * double(sharing) / double(n);
  return {sharing, static_cast<int>(pct + 0.5)};
}

struct Triple {
  size_t tp = 0, fp = 0, fn = 0;
};

// True positives by greedy pairing over (start, end, label) triples.
inline Triple brute_force_counts(
    std::vector<std::tuple<size_t, size_t, std::string>> gold,
    const std::vector<std::tuple<size_t, size_t, std::string>>& pred) {
  Triple t;
  for (const auto& p : pred) {
    auto it = std::find(gold.begin(), gold.end(), p);
    if (it != gold.end()) {
      ++t.tp;
      gold.erase(it);
    } else {
      ++t.fp;
    }
  }
  t.fn = gold.size();
  return t;
}

// Words built only from the given letters, capitalized, with the tag list's
// title vocabulary mixed in.
inline std::vector<std::string> random_tag_names(std::mt19937_64& rng,
                                                 size_t count) {
  static const std::vector<std::string> kParts = {
      "Ann", "Bell", "Cole", "Dale", "Eve", "Finn", "Gale", "Hart", "Ives", "Jude"};
  static const std::vector<std::string> kTitles = {"Mr.", "Mrs.", "Miss", "Ms."};
  std::set<std::string> seen;
  std::vector<std::string> out;
  while (out.size() < count) {
    std::string name;
    if (rng() % 4 == 0) name = kTitles[rng() % kTitles.size()] + " ";
    size_t words = 1 + rng() % 3;
    for (size_t w = 0; w < words; ++w) {
      if (w) name += ' ';
      name += kParts[rng() % kParts.size()];
    }
    if (seen.insert(name).second) out.push_back(name);
  }
  return out;
}


// Random text with random non-overlapping annotations. Spans are arbitrary
// code-point ranges, not only token-aligned ones.
inline AnnotatedDocument random_annotated_document(std::mt19937_64& rng,
                                                   const TagList& tags,
                                                   const Lexicons& lex) {
  static const std::vector<std::string> kWords = {
      "Jane", "Bennet", "said", "the", "Mr.", "Lizzy's", "Zoë", "creature", ",",
      ".", "“", "”", "de", "Anne-Marie", "Heathcliff", "she", "Miss", "’s", "!"};
  static const std::vector<std::string> kGaps = {" ", " ", " ", "", "\n", "  "};
  std::string text;
  size_t words = rng() % 30;
  for (size_t i = 0; i < words; ++i) {
    if (i) text += kGaps[rng() % kGaps.size()];
    text += kWords[rng() % kWords.size()];
  }
  AnnotatedDocument ad;
  ad.document = Document(text, lex.titles);
  ad.tag_list_id = tags.novel_id;
  ad.config.threshold = 1 + static_cast<int>(rng() % 100);
  ad.config.recognizer = rng() % 2 ? "gazetteer" : "external";
  size_t n = ad.document.length();
  size_t pos = 0;
  while (n > 0 && pos < n && rng() % 4 != 0) {
    size_t start = pos + rng() % (n - pos);
    size_t end = start + 1 + rng() % std::min<size_t>(n - start, 12);
    Annotation a;
    a.span = {start, end};
    a.surface = ad.document.substr(a.span);
    switch (rng() % 4) {
      case 0:
        a.result = MatchResult::generic_person();
        break;
      case 1:
        a.result = MatchResult::family("the " + tags.tags[rng() % tags.size()]
                                                    .name_parts()
                                                    .back());
        break;
      case 2:
        a.result = MatchResult::of_diminutive(tags.tags[rng() % tags.size()]);
        break;
      default:
        a.result = MatchResult::of_tag(
            tags.tags[rng() % tags.size()],
            SimilarityScore(static_cast<int>(rng() % 101)));
    }
    ad.annotations.push_back(std::move(a));
    pos = end + rng() % 3;
  }
  return ad;
}

}  // namespace ptagger::testing

#endif  // PTAGGER_TESTS_TEST_SUPPORT_HPP_
