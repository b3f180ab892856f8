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

// Character lists from encyclopedia articles, in wikitext or rendered HTML.
//
// The first section titled "Characters", "Main characters" or "Cast of
// characters" (any case, any heading level) is taken together with its
// subsections. Each list item contributes the phrase before its first comma,
// colon, opening parenthesis or dash; a hyphen counts as a dash only with
// spaces around it, so hyphenated names survive.

#ifndef PTAGGER_WIKI_CHARACTERS_HPP_
#define PTAGGER_WIKI_CHARACTERS_HPP_

#include <algorithm>
#include <cctype>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "ptagger/error.hpp"
#include "ptagger/unicode.hpp"

namespace ptagger {
namespace wiki {

inline bool is_character_heading(std::string_view heading) {
  std::string h = to_lower_utf8(trim(heading));
  return h == "characters" || h == "main characters" ||
         h == "cast of characters";
}

inline std::string strip_html_tags(std::string_view s) {
  std::string out;
  bool in_tag = false;
  for (char c : s) {
    if (c == '<') {
      in_tag = true;
    } else if (c == '>' && in_tag) {
      in_tag = false;
    } else if (!in_tag) {
      out.push_back(c);
    }
  }
  return out;
}

inline std::string decode_entities(std::string_view s) {
  struct Entity {
    std::string_view name;
    std::string_view text;
  };
  static const Entity kEntities[] = {
      {"&amp;", "&"},       {"&lt;", "<"},        {"&gt;", ">"},
      {"&quot;", "\""},     {"&#39;", "'"},       {"&apos;", "'"},
      {"&nbsp;", " "},      {"&#160;", " "},      {"&ndash;", "–"},
      {"&mdash;", "—"}, {"&#8211;", "–"}, {"&#8212;", "—"}};
  std::string out;
  size_t i = 0;
  while (i < s.size()) {
    bool hit = false;
    if (s[i] == '&') {
      for (const auto& e : kEntities) {
        if (s.substr(i, e.name.size()) == e.name) {
          out += e.text;
          i += e.name.size();
          hit = true;
          break;
        }
      }
    }
    if (!hit) out.push_back(s[i++]);
  }
  return out;
}

// Removes refs, templates, links, emphasis quotes and HTML tags.
inline std::string strip_wikitext(std::string_view in) {
  std::string s(in);
  // <ref>...</ref> and <ref/>
  for (size_t p; (p = s.find("<ref")) != std::string::npos;) {
    size_t self_close = s.find("/>", p);
    size_t open_end = s.find('>', p);
    if (open_end == std::string::npos) break;
    if (self_close != std::string::npos && self_close + 1 == open_end) {
      s.erase(p, open_end + 1 - p);
      continue;
    }
    size_t close = s.find("</ref>", open_end);
    s.erase(p, (close == std::string::npos ? s.size() : close + 6) - p);
  }
  // {{templates}}, nested
  std::string t;
  int depth = 0;
  for (size_t i = 0; i < s.size(); ++i) {
    if (s.compare(i, 2, "{{") == 0) {
      ++depth;
      ++i;
    } else if (depth > 0 && s.compare(i, 2, "}}") == 0) {
      --depth;
      ++i;
    } else if (depth == 0) {
      t.push_back(s[i]);
    }
  }
  // [[target|text]] -> text, [[target]] -> target
  std::string l;
  for (size_t i = 0; i < t.size();) {
    if (t.compare(i, 2, "[[") == 0) {
      size_t close = t.find("]]", i + 2);
      if (close == std::string::npos) {
        l.append(t, i + 2, std::string::npos);
        break;
      }
      std::string inner = t.substr(i + 2, close - i - 2);
      size_t bar = inner.rfind('|');
      l += bar == std::string::npos ? inner : inner.substr(bar + 1);
      i = close + 2;
    } else {
      l.push_back(t[i++]);
    }
  }
  std::string q;
  for (size_t i = 0; i < l.size(); ++i) {
    if (l[i] == '\'' && i + 1 < l.size() && l[i + 1] == '\'') {
      while (i + 1 < l.size() && l[i + 1] == '\'') ++i;
      continue;
    }
    q.push_back(l[i]);
  }
  return decode_entities(strip_html_tags(q));
}

// Text before the first delimiter, trimmed.
inline std::string leading_name_phrase(std::string_view item) {
  std::string s(trim(item));
  size_t cut = s.size();
  auto take = [&cut](size_t p) { cut = std::min(cut, p); };
  for (std::string_view d : {",", ":", "(", "–", "—", " - "}) {
    size_t p = s.find(d);
    if (p != std::string::npos) take(p);
  }
  std::string out(trim(std::string_view(s).substr(0, cut)));
  // Quotes around a nickname in the middle stay; stray edge quotes go.
  while (!out.empty() && (out.back() == '"' || out.back() == '\'')) out.pop_back();
  return std::string(trim(out));
}

inline std::vector<std::string> extract_wikitext_items(std::string_view src) {
  std::vector<std::string> items;
  std::optional<int> section_level;
  bool found = false;
  size_t pos = 0;
  while (pos <= src.size()) {
    size_t nl = src.find('\n', pos);
    std::string_view line = src.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? src.size() + 1 : nl + 1;
    std::string_view t = trim(line);
    int level = 0;
    while (level < static_cast<int>(t.size()) && t[level] == '=') ++level;
    int closing = 0;
    while (closing < static_cast<int>(t.size()) - level &&
           t[t.size() - 1 - closing] == '=') {
      ++closing;
    }
    if (level >= 2 && closing == level) {
      std::string heading = strip_wikitext(t.substr(level, t.size() - 2 * level));
      if (section_level) {
        if (level <= *section_level) break;
        continue;
      }
      if (!found && is_character_heading(heading)) {
        section_level = level;
        found = true;
      }
      continue;
    }
    if (!section_level) continue;
    if (!t.empty() && (t[0] == '*' || t[0] == '#' || t[0] == ';')) {
      size_t k = 0;
      while (k < t.size() && (t[k] == '*' || t[k] == '#' || t[k] == ';' || t[k] == ':')) ++k;
      items.push_back(strip_wikitext(t.substr(k)));
    }
  }
  if (!found) throw DataError("no character section found");
  return items;
}

inline std::string lower_ascii(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

// Heading level of an <hN> tag starting at `p`, 0 if none.
inline int html_heading_level(const std::string& lower, size_t p) {
  if (p + 3 >= lower.size() || lower[p] != '<' || lower[p + 1] != 'h') return 0;
  char d = lower[p + 2];
  if (d < '1' || d > '6') return 0;
  char after = lower[p + 3];
  if (after != '>' && after != ' ' && after != '\t' && after != '\n') return 0;
  return d - '0';
}

inline std::vector<std::string> extract_html_items(std::string_view src) {
  std::string lower = lower_ascii(src);
  std::vector<std::string> items;
  size_t region_begin = std::string::npos;
  size_t region_end = src.size();
  int section_level = 0;
  for (size_t p = lower.find('<'); p != std::string::npos; p = lower.find('<', p + 1)) {
    int level = html_heading_level(lower, p);
    if (level == 0) continue;
    size_t close = lower.find("</h" + std::to_string(level), p);
    if (close == std::string::npos) break;
    if (region_begin != std::string::npos) {
      if (level <= section_level) {
        region_end = p;
        break;
      }
      continue;
    }
    size_t open_end = lower.find('>', p);
    std::string heading = decode_entities(
        strip_html_tags(src.substr(open_end + 1, close - open_end - 1)));
    if (is_character_heading(heading)) {
      section_level = level;
      region_begin = close;
    }
  }
  if (region_begin == std::string::npos) {
    throw DataError("no character section found");
  }
  for (size_t p = lower.find("<li", region_begin); p != std::string::npos && p < region_end;
       p = lower.find("<li", p + 3)) {
    char after = p + 3 < lower.size() ? lower[p + 3] : '\0';
    if (after != '>' && after != ' ') continue;
    size_t body = lower.find('>', p);
    if (body == std::string::npos) break;
    size_t stop = region_end;
    for (std::string_view end_tag : {"</li", "<ul", "<ol", "<li", "<dl"}) {
      size_t q = lower.find(end_tag, body + 1);
      if (q != std::string::npos) stop = std::min(stop, q);
    }
    items.push_back(decode_entities(strip_html_tags(src.substr(body + 1, stop - body - 1))));
  }
  return items;
}

inline bool looks_like_html(std::string_view src) {
  std::string lower = lower_ascii(src.substr(0, std::min<size_t>(src.size(), 1 << 20)));
  return lower.find("<html") != std::string::npos ||
         lower.find("<h2") != std::string::npos ||
         lower.find("<h3") != std::string::npos ||
         lower.find("<body") != std::string::npos;
}

}  // namespace wiki

// Character names in document order, deduplicated.
inline std::vector<std::string> extract_characters(std::string_view source) {
  std::vector<std::string> raw = wiki::looks_like_html(source)
                                     ? wiki::extract_html_items(source)
                                     : wiki::extract_wikitext_items(source);
  std::vector<std::string> out;
  std::unordered_set<std::string> seen;
  for (const auto& item : raw) {
    std::string name = wiki::leading_name_phrase(item);
    // collapse internal whitespace
    std::string norm;
    for (char c : name) {
      if (std::isspace(static_cast<unsigned char>(c))) {
        if (!norm.empty() && norm.back() != ' ') norm.push_back(' ');
      } else {
        norm.push_back(c);
      }
    }
    if (!norm.empty() && seen.insert(norm).second) out.push_back(norm);
  }
  if (out.empty()) throw DataError("character section is empty");
  return out;
}

}  // namespace ptagger

#endif  // PTAGGER_WIKI_CHARACTERS_HPP_
