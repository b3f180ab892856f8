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

#ifndef PTAGGER_TAG_MODEL_HPP_
#define PTAGGER_TAG_MODEL_HPP_

#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "ptagger/error.hpp"
#include "ptagger/lexicons.hpp"
#include "ptagger/unicode.hpp"

namespace ptagger {

// A character's full name split into title, given names and surname.
struct CharacterTag {
  std::string full_name;
  std::optional<std::string> title;
  std::vector<std::string> given_names;
  std::optional<std::string> surname;
  Gender gender = Gender::kUnknown;

  // Given names and surname; titles are not name parts.
  std::vector<std::string> name_parts() const {
    std::vector<std::string> parts = given_names;
    if (surname) parts.push_back(*surname);
    return parts;
  }

  friend bool operator==(const CharacterTag&, const CharacterTag&) = default;
};

inline std::string render_tag(const CharacterTag& tag) {
  std::string out;
  auto append = [&out](const std::string& part) {
    if (!out.empty()) out.push_back(' ');
    out += part;
  };
  if (tag.title) append(*tag.title);
  for (const auto& g : tag.given_names) append(g);
  if (tag.surname) append(*tag.surname);
  return out;
}

inline std::vector<std::string> split_whitespace(std::string_view s) {
  std::vector<std::string> out;
  size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i) out.emplace_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

// A leading title is split off only when at least one name token follows it;
// of several leading titles only the first counts. With two or more name
// tokens left the last one is the surname.
inline CharacterTag parse_tag(std::string_view raw, const Lexicons& lex) {
  std::vector<std::string> parts = split_whitespace(raw);
  if (parts.empty()) throw DataError("empty character name");
  CharacterTag tag;
  size_t first = 0;
  if (parts.size() > 1 && lex.titles.contains(parts[0])) {
    tag.title = parts[0];
    first = 1;
  }
  size_t remaining = parts.size() - first;
  size_t given_end = remaining >= 2 ? parts.size() - 1 : parts.size();
  tag.given_names.assign(parts.begin() + first, parts.begin() + given_end);
  if (remaining >= 2) tag.surname = parts.back();
  tag.full_name = render_tag(tag);

  Gender from_title =
      tag.title ? lex.titles.title_gender(*tag.title) : Gender::kUnknown;
  tag.gender = from_title != Gender::kUnknown
                   ? from_title
                   : lex.genders.gender_of_first_name(tag.given_names.front());
  return tag;
}

struct TagList {
  std::string novel_id;
  std::vector<CharacterTag> tags;

  bool empty() const { return tags.empty(); }
  size_t size() const { return tags.size(); }

  const CharacterTag* find(std::string_view full_name) const {
    for (const auto& t : tags) {
      if (t.full_name == full_name) return &t;
    }
    return nullptr;
  }
};

// One full name per line; blank lines and `#` comments are skipped. Names
// must be unique.
inline TagList parse_tag_list(std::istream& in, std::string novel_id,
                              const Lexicons& lex) {
  TagList list;
  list.novel_id = std::move(novel_id);
  std::unordered_set<std::string> seen;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    CharacterTag tag = parse_tag(t, lex);
    if (!seen.insert(tag.full_name).second) {
      throw DataError("tag list line " + std::to_string(lineno) +
                      ": duplicate name '" + tag.full_name + "'");
    }
    list.tags.push_back(std::move(tag));
  }
  return list;
}

// The novel id is the file stem: characters/emma.txt -> "emma".
inline TagList load_tag_list(const std::filesystem::path& path,
                             const Lexicons& lex) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open tag list " + path.string());
  return parse_tag_list(in, path.stem().string(), lex);
}

struct SharedPartStats {
  size_t tag_count = 0;
  size_t sharing_count = 0;
  int sharing_percent = 0;

  friend bool operator==(const SharedPartStats&,
                         const SharedPartStats&) = default;
};

// A tag shares a common part when one of its given names or its surname
// equals (case-insensitively) a given name or surname of another tag.
inline SharedPartStats shared_part_stats(const std::vector<CharacterTag>& tags) {
  SharedPartStats stats;
  stats.tag_count = tags.size();
  if (tags.empty()) return stats;
  std::unordered_map<std::string, std::vector<size_t>> owners;
  for (size_t i = 0; i < tags.size(); ++i) {
    for (const auto& part : tags[i].name_parts()) {
      auto& v = owners[to_lower_utf8(part)];
      if (v.empty() || v.back() != i) v.push_back(i);
    }
  }
  std::vector<bool> shares(tags.size(), false);
  for (const auto& [part, who] : owners) {
    if (who.size() < 2) continue;
    for (size_t i : who) shares[i] = true;
  }
  for (bool s : shares) stats.sharing_count += s ? 1 : 0;
  stats.sharing_percent = static_cast<int>(
      (200 * stats.sharing_count + tags.size()) / (2 * tags.size()));
  return stats;
}

inline SharedPartStats shared_part_stats(const TagList& list) {
  return shared_part_stats(list.tags);
}

}  // namespace ptagger

#endif  // PTAGGER_TAG_MODEL_HPP_
