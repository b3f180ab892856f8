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

// Scoring predicted annotations against a gold standard, plus the mention
// statistics used to describe a corpus.
//
// A prediction is a true positive when its span equals a gold span exactly
// and, in full_names mode, its label equals the gold label ignoring case. In
// person_only mode every annotation counts as a person. Overall scores are
// micro-averaged; support is the number of gold mentions.

#ifndef PTAGGER_EVAL_HPP_
#define PTAGGER_EVAL_HPP_

#include <cstdio>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "ptagger/annotator.hpp"
#include "ptagger/error.hpp"
#include "ptagger/lexicons.hpp"
#include "ptagger/tag_model.hpp"
#include "ptagger/text_model.hpp"

namespace ptagger {

enum class EvalMode { kPersonOnly, kFullNames };

inline std::optional<EvalMode> parse_eval_mode(std::string_view s) {
  if (s == "person_only") return EvalMode::kPersonOnly;
  if (s == "full_names") return EvalMode::kFullNames;
  return std::nullopt;
}

struct EvalOptions {
  EvalMode mode = EvalMode::kFullNames;
  // In full_names mode, score family annotations as plain "person".
  bool family_as_person = false;
};

struct LabelMetrics {
  size_t true_positives = 0;
  size_t predicted = 0;
  size_t support = 0;  // gold mentions
  double precision = 0.0;
  double recall = 0.0;
  double f_measure = 0.0;

  void finish() {
    precision = predicted ? double(true_positives) / double(predicted) : 0.0;
    recall = support ? double(true_positives) / double(support) : 0.0;
    f_measure = precision + recall > 0.0
                    ? 2.0 * precision * recall / (precision + recall)
                    : 0.0;
  }
};

struct MetricsReport {
  std::map<std::string, LabelMetrics> per_label;  // keyed by lowercase label
  LabelMetrics overall;

  // Adds another document's counts; call finish() afterwards.
  void merge(const MetricsReport& o) {
    for (const auto& [k, m] : o.per_label) {
      auto& dst = per_label[k];
      dst.true_positives += m.true_positives;
      dst.predicted += m.predicted;
      dst.support += m.support;
    }
    overall.true_positives += o.overall.true_positives;
    overall.predicted += o.overall.predicted;
    overall.support += o.overall.support;
  }

  void finish() {
    for (auto& [k, m] : per_label) m.finish();
    overall.finish();
  }
};

inline std::string eval_label(const Annotation& a, const EvalOptions& opts) {
  if (opts.mode == EvalMode::kPersonOnly) return std::string(kPersonLabel);
  if (a.result.kind == MatchKind::kFamily && opts.family_as_person) {
    return std::string(kPersonLabel);
  }
  return to_lower_utf8(a.result.label());
}

inline MetricsReport evaluate(const AnnotatedDocument& gold,
                              const AnnotatedDocument& pred,
                              const EvalOptions& opts = {}) {
  if (gold.document.text() != pred.document.text()) {
    throw DataError("gold and prediction texts differ");
  }
  MetricsReport report;
  std::map<Span, std::vector<std::string>> gold_at;
  for (const auto& g : gold.annotations) {
    std::string label = eval_label(g, opts);
    gold_at[g.span].push_back(label);
    report.per_label[label].support++;
    report.overall.support++;
  }
  for (const auto& p : pred.annotations) {
    std::string label = eval_label(p, opts);
    report.per_label[label].predicted++;
    report.overall.predicted++;
    auto it = gold_at.find(p.span);
    if (it == gold_at.end()) continue;
    auto& labels = it->second;
    for (auto l = labels.begin(); l != labels.end(); ++l) {
      if (*l == label) {
        report.per_label[label].true_positives++;
        report.overall.true_positives++;
        labels.erase(l);
        break;
      }
    }
  }
  report.finish();
  return report;
}

// Columns: Label, Precision, Recall, F-measure, Support.
inline std::string format_metrics_table(const MetricsReport& r) {
  size_t width = 14;
  for (const auto& [k, m] : r.per_label) width = std::max(width, k.size() + 2);
  std::ostringstream out;
  char buf[128];
  auto row = [&](const std::string& name, const LabelMetrics& m) {
    std::snprintf(buf, sizeof buf, "%10.2f %10.2f %10.2f %10zu\n", m.precision,
                  m.recall, m.f_measure, m.support);
    out << name << std::string(width - std::min(width, name.size()), ' ') << buf;
  };
  std::snprintf(buf, sizeof buf, "%10s %10s %10s %10s\n", "Precision", "Recall",
                "F-measure", "Support");
  out << std::string(width, ' ') << buf;
  for (const auto& [k, m] : r.per_label) row(k, m);
  row("overall", r.overall);
  return out.str();
}

inline nlohmann::ordered_json metrics_to_json(const MetricsReport& r) {
  auto one = [](const LabelMetrics& m) {
    return nlohmann::ordered_json{{"precision", m.precision},
                                  {"recall", m.recall},
                                  {"f_measure", m.f_measure},
                                  {"support", m.support},
                                  {"true_positives", m.true_positives},
                                  {"predicted", m.predicted}};
  };
  nlohmann::ordered_json j;
  j["overall"] = one(r.overall);
  j["per_label"] = nlohmann::ordered_json::object();
  for (const auto& [k, m] : r.per_label) j["per_label"][k] = one(m);
  return j;
}

// Distinct surfaces linked to `tag`, with counts.
inline std::map<std::string, size_t> mention_form_counts(
    const AnnotatedDocument& ad, const CharacterTag& tag) {
  std::map<std::string, size_t> out;
  for (const auto& a : ad.annotations) {
    if (a.result.kind == MatchKind::kTag &&
        a.result.tag->full_name == tag.full_name) {
      out[a.surface]++;
    }
  }
  return out;
}

inline constexpr std::string_view kBareKey = "bare";

// Occurrences of `surname` (possessive included), keyed by the gendered
// title right before it in canonical spelling, or "bare".
inline std::map<std::string, size_t> title_prefix_counts(
    const Document& doc, std::string_view surname, const TitleLexicon& titles) {
  std::map<std::string, size_t> out;
  const auto& toks = doc.tokens();
  for (size_t i = 0; i < toks.size(); ++i) {
    std::u32string w(doc.view(toks[i].range));
    w.resize(w.size() - detail::possessive_suffix(w));
    if (utf8_encode(w) != surname) continue;
    std::string key(kBareKey);
    if (auto prev = preceding_token(doc, toks[i].range)) {
      if (titles.is_gendered_title(prev->surface)) {
        key = *titles.canonical(prev->surface);
      }
    }
    out[key]++;
  }
  return out;
}

}  // namespace ptagger

#endif  // PTAGGER_EVAL_HPP_
