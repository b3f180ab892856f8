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

// Name lexicons: diminutives, first-name genders, personal titles and the
// common-names pool used for augmentation.
//
// All files are UTF-8, one record per line, `#` starts a comment line:
//
//   diminutives.csv   nickname,canonical1,canonical2,...
//   genders.tsv       name<TAB>female|male|unknown
//   titles.tsv        title<TAB>female|male|unknown
//   common_names.tsv  name<TAB>female|male
//
// Lookups are case-insensitive. Every lexicon is immutable after loading.

#ifndef PTAGGER_LEXICONS_HPP_
#define PTAGGER_LEXICONS_HPP_

#include <filesystem>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "ptagger/error.hpp"
#include "ptagger/unicode.hpp"

namespace ptagger {

enum class Gender { kFemale, kMale, kUnknown };

inline std::string_view to_string(Gender g) {
  switch (g) {
    case Gender::kFemale:
      return "female";
    case Gender::kMale:
      return "male";
    case Gender::kUnknown:
      break;
  }
  return "unknown";
}

inline std::optional<Gender> parse_gender(std::string_view s) {
  if (s == "female") return Gender::kFemale;
  if (s == "male") return Gender::kMale;
  if (s == "unknown") return Gender::kUnknown;
  return std::nullopt;
}

namespace detail {

// Splits a lexicon stream into (line number, fields) records.
inline std::vector<std::pair<size_t, std::vector<std::string>>> read_records(
    std::istream& in, char sep) {
  std::vector<std::pair<size_t, std::vector<std::string>>> out;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    std::vector<std::string> fields;
    size_t pos = 0;
    while (true) {
      size_t next = t.find(sep, pos);
      fields.emplace_back(trim(t.substr(pos, next - pos)));
      if (next == std::string_view::npos) break;
      pos = next + 1;
    }
    out.emplace_back(lineno, std::move(fields));
  }
  return out;
}

inline Gender gender_field(const std::string& s, size_t lineno) {
  auto g = parse_gender(s);
  if (!g) {
    throw DataError("line " + std::to_string(lineno) + ": bad gender '" + s +
                    "'");
  }
  return *g;
}

inline std::ifstream open_lexicon(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open lexicon " + path.string());
  return in;
}

}  // namespace detail

class DiminutiveLexicon {
 public:
  DiminutiveLexicon() = default;

  static DiminutiveLexicon parse(std::istream& in) {
    DiminutiveLexicon lex;
    for (auto& [lineno, fields] : detail::read_records(in, ',')) {
      if (fields[0].empty()) {
        throw DataError("diminutives line " + std::to_string(lineno) +
                        ": empty nickname");
      }
      for (size_t i = 1; i < fields.size(); ++i) {
        if (!fields[i].empty()) lex.add(fields[0], fields[i]);
      }
    }
    return lex;
  }

  static DiminutiveLexicon load(const std::filesystem::path& path) {
    auto in = detail::open_lexicon(path);
    return parse(in);
  }

  void add(const std::string& nickname, const std::string& canonical) {
    std::string key = to_lower_utf8(nickname);
    auto [it, inserted] = entries_.try_emplace(key);
    if (inserted) {
      order_.push_back(key);
      display_.emplace(key, nickname);
    }
    for (const auto& c : it->second) {
      if (to_lower_utf8(c) == to_lower_utf8(canonical)) return;
    }
    it->second.push_back(canonical);
    forms_.insert(key);
    forms_.insert(to_lower_utf8(canonical));
  }

  // Canonical names in file order; empty when the nickname is unknown.
  const std::vector<std::string>& canonical_names_for(
      std::string_view nickname) const {
    static const std::vector<std::string> kEmpty;
    auto it = entries_.find(to_lower_utf8(nickname));
    return it == entries_.end() ? kEmpty : it->second;
  }

  // True for both nicknames and canonical names.
  bool is_name_form(std::string_view name) const {
    return forms_.count(to_lower_utf8(name)) > 0;
  }

  size_t nickname_count() const { return entries_.size(); }
  size_t distinct_forms() const { return forms_.size(); }

  void write(std::ostream& out) const {
    for (const auto& key : order_) {
      out << display_.at(key);
      for (const auto& c : entries_.at(key)) out << ',' << c;
      out << '\n';
    }
  }

  bool operator==(const DiminutiveLexicon& o) const {
    return entries_ == o.entries_;
  }

 private:
  std::unordered_map<std::string, std::vector<std::string>> entries_;
  std::unordered_map<std::string, std::string> display_;
  std::vector<std::string> order_;
  std::unordered_set<std::string> forms_;
};

class GenderLexicon {
 public:
  GenderLexicon() = default;

  static GenderLexicon parse(std::istream& in) {
    GenderLexicon lex;
    for (auto& [lineno, fields] : detail::read_records(in, '\t')) {
      if (fields.size() != 2 || fields[0].empty()) {
        throw DataError("genders line " + std::to_string(lineno) +
                        ": expected name<TAB>gender");
      }
      lex.set(fields[0], detail::gender_field(fields[1], lineno));
    }
    return lex;
  }

  static GenderLexicon load(const std::filesystem::path& path) {
    auto in = detail::open_lexicon(path);
    return parse(in);
  }

  void set(const std::string& name, Gender g) {
    std::string key = to_lower_utf8(name);
    if (entries_.insert_or_assign(key, g).second) order_.push_back(key);
  }

  Gender gender_of_first_name(std::string_view name) const {
    auto it = entries_.find(to_lower_utf8(name));
    return it == entries_.end() ? Gender::kUnknown : it->second;
  }

  size_t size() const { return entries_.size(); }

  void write(std::ostream& out) const {
    for (const auto& key : order_) {
      out << key << '\t' << to_string(entries_.at(key)) << '\n';
    }
  }

  bool operator==(const GenderLexicon& o) const {
    return entries_ == o.entries_;
  }

 private:
  std::unordered_map<std::string, Gender> entries_;
  std::vector<std::string> order_;
};

// Personal titles. Keys are normalized by lowercasing and dropping one
// trailing period, so "Mr", "Mr." and "MR." are the same title.
class TitleLexicon {
 public:
  TitleLexicon() = default;

  // Mr. (male); Mrs., Ms., Miss (female).
  static TitleLexicon defaults() {
    TitleLexicon lex;
    lex.set("Mr.", Gender::kMale);
    lex.set("Mrs.", Gender::kFemale);
    lex.set("Ms.", Gender::kFemale);
    lex.set("Miss", Gender::kFemale);
    return lex;
  }

  static TitleLexicon parse(std::istream& in) {
    TitleLexicon lex;
    for (auto& [lineno, fields] : detail::read_records(in, '\t')) {
      if (fields.size() != 2 || normalize(fields[0]).empty()) {
        throw DataError("titles line " + std::to_string(lineno) +
                        ": expected title<TAB>gender");
      }
      lex.set(fields[0], detail::gender_field(fields[1], lineno));
    }
    return lex;
  }

  static TitleLexicon load(const std::filesystem::path& path) {
    auto in = detail::open_lexicon(path);
    return parse(in);
  }

  static std::string normalize(std::string_view title) {
    std::string key = to_lower_utf8(trim(title));
    if (!key.empty() && key.back() == '.') key.pop_back();
    return key;
  }

  void set(const std::string& title, Gender g) {
    std::string key = normalize(title);
    if (!entries_.count(key)) order_.push_back(key);
    entries_[key] = Entry{title, g};
  }

  bool contains(std::string_view token) const {
    return entries_.count(normalize(token)) > 0;
  }

  // Unknown for anything that is not a title.
  Gender title_gender(std::string_view title) const {
    auto it = entries_.find(normalize(title));
    return it == entries_.end() ? Gender::kUnknown : it->second.gender;
  }

  bool is_gendered_title(std::string_view token) const {
    return title_gender(token) != Gender::kUnknown;
  }

  // Spelling as written in the lexicon ("Mr." for "mr").
  std::optional<std::string> canonical(std::string_view title) const {
    auto it = entries_.find(normalize(title));
    if (it == entries_.end()) return std::nullopt;
    return it->second.display;
  }

  size_t size() const { return entries_.size(); }

  void write(std::ostream& out) const {
    for (const auto& key : order_) {
      const Entry& e = entries_.at(key);
      out << e.display << '\t' << to_string(e.gender) << '\n';
    }
  }

  bool operator==(const TitleLexicon& o) const {
    if (entries_.size() != o.entries_.size()) return false;
    for (const auto& [k, e] : entries_) {
      auto it = o.entries_.find(k);
      if (it == o.entries_.end() || it->second.gender != e.gender) return false;
    }
    return true;
  }

 private:
  struct Entry {
    std::string display;
    Gender gender;
  };
  std::unordered_map<std::string, Entry> entries_;
  std::vector<std::string> order_;
};

// Base-form first names partitioned by gender.
class CommonNamesList {
 public:
  CommonNamesList() = default;

  static CommonNamesList parse(std::istream& in) {
    CommonNamesList list;
    for (auto& [lineno, fields] : detail::read_records(in, '\t')) {
      if (fields.size() != 2 || fields[0].empty()) {
        throw DataError("common names line " + std::to_string(lineno) +
                        ": expected name<TAB>gender");
      }
      Gender g = detail::gender_field(fields[1], lineno);
      if (g == Gender::kUnknown) {
        throw DataError("common names line " + std::to_string(lineno) +
                        ": gender must be female or male");
      }
      if (!list.add(fields[0], g)) {
        throw DataError("common names line " + std::to_string(lineno) +
                        ": duplicate name '" + fields[0] + "'");
      }
    }
    return list;
  }

  static CommonNamesList load(const std::filesystem::path& path) {
    auto in = detail::open_lexicon(path);
    return parse(in);
  }

  // False if the name is already in that partition.
  bool add(const std::string& name, Gender g) {
    auto& seen = g == Gender::kFemale ? female_keys_ : male_keys_;
    if (!seen.insert(to_lower_utf8(name)).second) return false;
    (g == Gender::kFemale ? female_ : male_).push_back(name);
    return true;
  }

  const std::vector<std::string>& female() const { return female_; }
  const std::vector<std::string>& male() const { return male_; }
  bool empty() const { return female_.empty() && male_.empty(); }

  bool contains(std::string_view name) const {
    std::string key = to_lower_utf8(name);
    return female_keys_.count(key) > 0 || male_keys_.count(key) > 0;
  }

  void write(std::ostream& out) const {
    for (const auto& n : female_) out << n << "\tfemale\n";
    for (const auto& n : male_) out << n << "\tmale\n";
  }

  bool operator==(const CommonNamesList& o) const {
    return female_ == o.female_ && male_ == o.male_;
  }

 private:
  std::vector<std::string> female_;
  std::vector<std::string> male_;
  std::unordered_set<std::string> female_keys_;
  std::unordered_set<std::string> male_keys_;
};

struct Lexicons {
  DiminutiveLexicon diminutives;
  GenderLexicon genders;
  TitleLexicon titles = TitleLexicon::defaults();
  CommonNamesList common_names;

  // Loads the four standard files from `dir`. A missing titles.tsv falls
  // back to the default titles; the other files are required.
  static Lexicons load_directory(const std::filesystem::path& dir) {
    Lexicons lex;
    lex.diminutives = DiminutiveLexicon::load(dir / "diminutives.csv");
    lex.genders = GenderLexicon::load(dir / "genders.tsv");
    if (std::filesystem::exists(dir / "titles.tsv")) {
      lex.titles = TitleLexicon::load(dir / "titles.tsv");
    }
    lex.common_names = CommonNamesList::load(dir / "common_names.tsv");
    return lex;
  }
};

}  // namespace ptagger

#endif  // PTAGGER_LEXICONS_HPP_
