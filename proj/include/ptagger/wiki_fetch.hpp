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

// The only networked piece of ptagger: fetching raw article wikitext.

#ifndef PTAGGER_WIKI_FETCH_HPP_
#define PTAGGER_WIKI_FETCH_HPP_

#ifndef CPPHTTPLIB_OPENSSL_SUPPORT
#define CPPHTTPLIB_OPENSSL_SUPPORT
#endif

#include <chrono>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>

#include "httplib.h"
#include "ptagger/error.hpp"

namespace ptagger {

struct FetchOptions {
  std::string host = "en.wikipedia.org";
  std::string user_agent = "ptagger/0.1 (character list extraction)";
  std::chrono::milliseconds min_interval{1000};
  std::chrono::seconds timeout{20};
  std::optional<std::filesystem::path> offline;  // read this file instead
};

namespace detail {

inline std::string url_encode_title(const std::string& title) {
  static const char* kHex = "0123456789ABCDEF";
  std::string out;
  for (unsigned char c : title) {
    if (c == ' ') {
      out.push_back('_');
    } else if (std::isalnum(c) || c == '_' || c == '-' || c == '.' || c == '~' ||
               c == '(' || c == ')' || c == ',' || c == '\'') {
      out.push_back(static_cast<char>(c));
    } else {
      out.push_back('%');
      out.push_back(kHex[c >> 4]);
      out.push_back(kHex[c & 0xF]);
    }
  }
  return out;
}

// Requests are spaced at least `interval` apart process-wide.
inline void throttle(std::chrono::milliseconds interval) {
  static std::mutex mu;
  static std::chrono::steady_clock::time_point last{};
  std::lock_guard<std::mutex> lock(mu);
  auto now = std::chrono::steady_clock::now();
  if (last.time_since_epoch().count() != 0 && now - last < interval) {
    std::this_thread::sleep_for(interval - (now - last));
  }
  last = std::chrono::steady_clock::now();
}

}  // namespace detail

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Raw wikitext of an article; follows one #REDIRECT.
inline std::string fetch_article(const std::string& title,
                                 const FetchOptions& opts = {}) {
  if (opts.offline) return read_file(*opts.offline);
  if (title.empty()) throw DataError("empty article title");

  std::string current = title;
  for (int hop = 0; hop < 2; ++hop) {
    detail::throttle(opts.min_interval);
    httplib::SSLClient cli(opts.host);
    cli.set_connection_timeout(opts.timeout);
    cli.set_read_timeout(opts.timeout);
    httplib::Headers headers = {{"User-Agent", opts.user_agent}};
    std::string path = "/w/index.php?title=" +
                       detail::url_encode_title(current) + "&action=raw";
    auto res = cli.Get(path, headers);
    if (!res) {
      throw FetchError("request for '" + current + "' failed: " +
                           httplib::to_string(res.error()),
                       0);
    }
    if (res->status == 404) {
      throw FetchError("article not found: '" + current + "'", 404);
    }
    if (res->status != 200) {
      throw FetchError("fetching '" + current + "' returned HTTP " +
                           std::to_string(res->status),
                       res->status);
    }
    const std::string& body = res->body;
    if (hop == 0 && body.rfind("#REDIRECT", 0) == 0) {
      size_t open = body.find("[[");
      size_t close = body.find("]]", open);
      if (open != std::string::npos && close != std::string::npos) {
        current = body.substr(open + 2, close - open - 2);
        continue;
      }
    }
    return body;
  }
  throw FetchError("too many redirects for '" + title + "'", 0);
}

}  // namespace ptagger

#endif  // PTAGGER_WIKI_FETCH_HPP_
