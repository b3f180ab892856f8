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

// ptagger command-line tool.
//
// Exit status: 0 success, 1 usage error, 2 data error (bad input files,
// failed fetches, inconsistent annotations).

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "ptagger/annotator.hpp"
#include "ptagger/augmenter.hpp"
#include "ptagger/error.hpp"
#include "ptagger/eval.hpp"
#include "ptagger/lexicons.hpp"
#include "ptagger/matcher.hpp"
#include "ptagger/recognizer.hpp"
#include "ptagger/tag_model.hpp"
#include "ptagger/text_model.hpp"
#include "ptagger/wiki_characters.hpp"
#include "ptagger/wiki_fetch.hpp"

namespace fs = std::filesystem;

namespace ptagger {
namespace {

constexpr int kUsageError = 1;
constexpr int kDataError = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

fs::path default_data_dir() {
  if (const char* env = std::getenv("PTAGGER_DATA_DIR")) return env;
  return PTAGGER_DATA_DIR;
}

// Writes through a temporary file in the same directory, then renames, so
// readers never see a partial file.
void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    std::cout.flush();
    return;
  }
  fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  static std::atomic<unsigned> counter{0};
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(counter++);
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw DataError("cannot write " + tmp.string());
    out << content;
    if (!out.flush()) throw DataError("cannot write " + tmp.string());
  }
  fs::rename(tmp, target);
}

std::vector<std::string> read_lines(const fs::path& path) {
  std::istringstream in(read_file(path));
  std::vector<std::string> out;
  for (std::string line; std::getline(in, line);) {
    std::string_view t = trim(line);
    if (!t.empty() && t.front() != '#') out.emplace_back(t);
  }
  return out;
}

nlohmann::json read_json(const fs::path& path) {
  nlohmann::json j = nlohmann::json::parse(read_file(path), nullptr, false);
  if (j.is_discarded()) throw DataError(path.string() + ": invalid JSON");
  return j;
}

struct Common {
  std::string data_dir = default_data_dir().string();
  std::string config;
  std::optional<Lexicons> lex;

  const Lexicons& lexicons() {
    if (!lex) lex = Lexicons::load_directory(data_dir);
    return *lex;
  }
};

// ---------------------------------------------------------------- characters

struct CharactersArgs {
  std::string title;
  std::string offline;
  std::string output;
};

int run_characters(const CharactersArgs& a) {
  if (a.title.empty() && a.offline.empty()) {
    throw UsageError("characters needs --title or --offline");
  }
  FetchOptions opts;
  if (!a.offline.empty()) opts.offline = a.offline;
  std::string source = fetch_article(a.title, opts);
  std::string out = "# " + (a.title.empty() ? fs::path(a.offline).filename().string()
                                            : a.title) +
                    "\n";
  for (const auto& name : extract_characters(source)) out += name + "\n";
  write_output(a.output, out);
  return 0;
}

// ------------------------------------------------------------------ annotate

struct AnnotateArgs {
  std::string text;
  std::string tags;
  std::string spans;
  std::string format = "standoff";
  int threshold = MatcherConfig{}.partial_similarity_precision;
  unsigned jobs = 0;
  std::string output;
};

std::string annotate_one(const fs::path& text_path, const std::string& spans_path,
                         const TagList& tags, const Lexicons& lex,
                         const AnnotateArgs& a) {
  MatcherConfig cfg{a.threshold};
  Document doc(read_file(text_path), lex.titles);
  std::vector<EntityMention> mentions;
  if (!spans_path.empty()) {
    try {
      mentions = ingest_spans(doc, StandoffInput::from_json(read_json(spans_path)));
    } catch (const DataError& e) {
      throw DataError(spans_path + ": " + e.what());
    }
  } else {
    mentions = recognize_gazetteer(doc, tags, lex, cfg);
  }
  AnnotatedDocument ad = annotate(doc, tags, lex, cfg, std::move(mentions));
  return a.format == "inline" ? render_inline(ad) : standoff_string(ad);
}

int run_annotate(Common& common, const AnnotateArgs& a) {
  if (a.text.empty() || a.tags.empty()) {
    throw UsageError("annotate needs --text and --tags");
  }
  const Lexicons& lex = common.lexicons();
  TagList tags = load_tag_list(a.tags, lex);

  if (!fs::is_directory(a.text)) {
    write_output(a.output, annotate_one(a.text, a.spans, tags, lex, a));
    return 0;
  }

  if (a.output.empty() || a.output == "-") {
    throw UsageError("annotating a directory needs -o <output directory>");
  }
  std::vector<fs::path> inputs;
  for (const auto& e : fs::directory_iterator(a.text)) {
    if (e.is_regular_file() && e.path().extension() == ".txt") {
      inputs.push_back(e.path());
    }
  }
  std::sort(inputs.begin(), inputs.end());
  fs::create_directories(a.output);
  std::string ext = a.format == "inline" ? ".inline.txt" : ".json";

  unsigned jobs = a.jobs ? a.jobs : std::max(1u, std::thread::hardware_concurrency());
  jobs = std::min<unsigned>(jobs, std::max<size_t>(inputs.size(), 1));
  std::atomic<size_t> next{0};
  std::mutex err_mu;
  std::vector<std::string> errors;
  auto worker = [&] {
    for (size_t i; (i = next++) < inputs.size();) {
      const fs::path& in = inputs[i];
      try {
        std::string spans;
        if (!a.spans.empty()) {
          spans = (fs::path(a.spans) / (in.stem().string() + ".spans.json")).string();
        }
        std::string out = annotate_one(in, spans, tags, lex, a);
        write_output((fs::path(a.output) / (in.stem().string() + ext)).string(), out);
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(err_mu);
        errors.push_back(in.string() + ": " + e.what());
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (!errors.empty()) {
    std::sort(errors.begin(), errors.end());
    std::string msg;
    for (const auto& e : errors) msg += (msg.empty() ? "" : "\n") + e;
    throw DataError(msg);
  }
  return 0;
}

// --------------------------------------------------------------------- match

struct MatchArgs {
  std::string entity;
  std::string prefix;
  std::string tags;
  int threshold = MatcherConfig{}.partial_similarity_precision;
};

int run_match(Common& common, const MatchArgs& a) {
  if (a.entity.empty() || a.tags.empty()) {
    throw UsageError("match needs --entity and --tags");
  }
  const Lexicons& lex = common.lexicons();
  TagList tags = load_tag_list(a.tags, lex);
  MatcherConfig cfg{a.threshold};
  cfg.validate();
  std::optional<std::string> prefix;
  if (!a.prefix.empty()) prefix = a.prefix;

  TitleSplit split = strip_leading_title(a.entity, lex.titles);
  std::ostringstream out;
  out << "entity: " << split.rest << "\n";
  std::optional<std::string> used = split.title ? split.title : prefix;
  out << "prefix: " << (used ? *used : "(none)") << "\n";
  out << "candidates (partial similarity >= " << cfg.partial_similarity_precision
      << "):\n";
  auto candidates = collect_candidates(split.rest, tags, cfg);
  if (candidates.empty()) out << "  (none)\n";
  for (const auto& c : candidates) {
    out << "  " << c.score.value() << "  " << c.tag.full_name << " ["
        << to_string(c.tag.gender) << "]\n";
  }
  MatchResult r = match_mention(a.entity, prefix, tags, lex, cfg);
  out << "result: " << r.label();
  switch (r.kind) {
    case MatchKind::kTag:
      if (r.via_diminutive) {
        out << " (via diminutive)";
      } else {
        out << " (score " << r.score->value() << ")";
      }
      break;
    case MatchKind::kFamily:
      out << " (family)";
      break;
    case MatchKind::kGenericPerson:
      out << " (no matching tag)";
      break;
  }
  out << "\n";
  std::cout << out.str();
  return 0;
}

// ------------------------------------------------------------------- augment

struct AugmentArgs {
  std::string input;
  uint64_t seed = 0;
  bool gender_consistent = false;
  std::string output;
};

int run_augment(Common& common, const AugmentArgs& a) {
  if (a.input.empty()) throw UsageError("augment needs --input");
  const Lexicons& lex = common.lexicons();
  std::istringstream in(read_file(a.input));
  std::vector<TrainingRecord> records = read_jsonl(in);
  NameSampler sampler(lex.common_names, a.seed);
  InjectionOptions opts{a.gender_consistent, &lex.genders};
  std::vector<TrainingRecord> out;
  out.reserve(records.size());
  for (size_t i = 0; i < records.size(); ++i) {
    try {
      out.push_back(inject_names(records[i].text, records[i].spans, sampler, opts));
    } catch (const DataError& e) {
      throw DataError("record " + std::to_string(i + 1) + ": " + e.what());
    }
  }
  std::ostringstream s;
  write_jsonl(s, out);
  write_output(a.output, s.str());
  return 0;
}

// ---------------------------------------------------------- extract-training

struct ExtractArgs {
  std::string text;
  std::string entities;
  std::string output;
};

int run_extract(Common& common, const ExtractArgs& a) {
  if (a.text.empty() || a.entities.empty()) {
    throw UsageError("extract-training needs --text and --entities");
  }
  auto entities = read_lines(a.entities);
  if (entities.empty()) throw DataError(a.entities + ": no entities");
  auto records =
      build_entity_sentences(read_file(a.text), entities, common.lexicons().titles);
  std::ostringstream s;
  write_jsonl(s, records);
  write_output(a.output, s.str());
  return 0;
}

// ------------------------------------------------------------------ evaluate

struct EvaluateArgs {
  std::string gold;
  std::string pred;
  std::string mode = "full_names";
  bool family_as_person = false;
  bool json = false;
  std::string output;
};

int run_evaluate(Common& common, const EvaluateArgs& a) {
  if (a.gold.empty() || a.pred.empty()) {
    throw UsageError("evaluate needs --gold and --pred");
  }
  auto mode = parse_eval_mode(a.mode);
  if (!mode) throw UsageError("--mode must be person_only or full_names");
  EvalOptions opts{*mode, a.family_as_person};
  const Lexicons& lex = common.lexicons();

  std::vector<std::pair<fs::path, fs::path>> pairs;
  if (fs::is_directory(a.gold)) {
    for (const auto& e : fs::directory_iterator(a.gold)) {
      if (e.path().extension() == ".json") {
        pairs.emplace_back(e.path(), fs::path(a.pred) / e.path().filename());
      }
    }
    std::sort(pairs.begin(), pairs.end());
  } else {
    pairs.emplace_back(a.gold, a.pred);
  }
  MetricsReport total;
  for (const auto& [g, p] : pairs) {
    try {
      auto gold = read_standoff(read_json(g), lex);
      auto pred = read_standoff(read_json(p), lex);
      total.merge(evaluate(gold, pred, opts));
    } catch (const DataError& e) {
      throw DataError(g.string() + ": " + e.what());
    }
  }
  total.finish();
  write_output(a.output, a.json ? metrics_to_json(total).dump(2) + "\n"
                                 : format_metrics_table(total));
  return 0;
}

// --------------------------------------------------------------------- stats

struct StatsArgs {
  std::string tags;
  std::string standoff;
  std::string character;
  std::string text;
  std::string surname;
};

int run_stats_shared(Common& common, const StatsArgs& a) {
  if (a.tags.empty()) throw UsageError("stats shared needs --tags");
  auto s = shared_part_stats(load_tag_list(a.tags, common.lexicons()));
  std::cout << "tags\t" << s.tag_count << "\nsharing\t" << s.sharing_count
            << "\npercent\t" << s.sharing_percent << "\n";
  return 0;
}

void print_counts(const std::map<std::string, size_t>& counts) {
  std::vector<std::pair<std::string, size_t>> rows(counts.begin(), counts.end());
  std::stable_sort(rows.begin(), rows.end(),
                   [](const auto& x, const auto& y) { return x.second > y.second; });
  for (const auto& [k, n] : rows) std::cout << n << "\t" << k << "\n";
}

int run_stats_forms(Common& common, const StatsArgs& a) {
  if (a.standoff.empty() || a.character.empty()) {
    throw UsageError("stats forms needs --standoff and --character");
  }
  const Lexicons& lex = common.lexicons();
  std::optional<TagList> tags;
  if (!a.tags.empty()) tags = load_tag_list(a.tags, lex);
  auto ad = read_standoff(read_json(a.standoff), lex, tags ? &*tags : nullptr);
  CharacterTag tag = parse_tag(a.character, lex);
  print_counts(mention_form_counts(ad, tag));
  return 0;
}

int run_stats_titles(Common& common, const StatsArgs& a) {
  if (a.text.empty() || a.surname.empty()) {
    throw UsageError("stats titles needs --text and --surname");
  }
  const Lexicons& lex = common.lexicons();
  Document doc(read_file(a.text), lex.titles);
  auto counts = title_prefix_counts(doc, a.surname, lex.titles);
  size_t total = 0;
  for (const auto& [k, n] : counts) total += n;
  std::cout << total << "\ttotal\n";
  print_counts(counts);
  return 0;
}

// Values from the key=value config file fill options the command line left
// unset. Keys are flag names without dashes, optionally qualified by the
// subcommand ("annotate.threshold = 80").
void apply_config(CLI::App& app, const std::string& path) {
  std::vector<CLI::ConfigItem> items;
  try {
    items = CLI::ConfigINI().from_file(path);
  } catch (const CLI::Error& e) {
    throw DataError("config " + path + ": " + e.what());
  }
  std::vector<CLI::App*> chain;
  for (CLI::App* sub = &app; sub;) {
    chain.push_back(sub);
    auto subs = sub->get_subcommands();
    sub = subs.empty() ? nullptr : subs.front();
  }
  for (const auto& item : items) {
    bool known = false;
    bool applied = false;
    std::function<void(CLI::App*)> visit = [&](CLI::App* a) {
      if (a->get_option_no_throw("--" + item.name)) known = true;
      for (CLI::App* s : a->get_subcommands({})) visit(s);
    };
    visit(&app);
    if (!known) throw UsageError("config " + path + ": unknown key '" + item.fullname() + "'");
    for (CLI::App* a : chain) {
      if (applied) break;
      if (!item.parents.empty() && item.parents.back() != a->get_name()) continue;
      CLI::Option* opt = a->get_option_no_throw("--" + item.name);
      if (!opt || opt->count() > 0) continue;
      opt->add_result(item.inputs);
      opt->run_callback();
      applied = true;
    }
  }
}

int run(int argc, char** argv) {
  CLI::App app{"Character tagging for novels: link person mentions to full names."};
  app.require_subcommand(1);
  Common common;
  app.add_option("--data", common.data_dir, "Lexicon directory")
      ->capture_default_str();
  app.add_option("--config", common.config,
                 "key=value file supplying defaults for any flag");

  auto* characters = app.add_subcommand("characters", "List characters from an article");
  CharactersArgs ca;
  characters->add_option("--title", ca.title, "Article title");
  characters->add_option("--offline", ca.offline, "Read the article from this file");
  characters->add_option("-o,--output", ca.output, "Output file (default stdout)");

  auto* annotate_cmd = app.add_subcommand("annotate", "Annotate a text or a directory");
  AnnotateArgs aa;
  annotate_cmd->add_option("--text", aa.text, "Text file or directory of .txt files");
  annotate_cmd->add_option("--tags", aa.tags, "Tag list, one full name per line");
  annotate_cmd->add_option("--spans", aa.spans,
                           "External person spans (file, or directory of <stem>.spans.json)");
  annotate_cmd->add_option("--format", aa.format, "inline or standoff")
      ->check(CLI::IsMember({"inline", "standoff"}))
      ->capture_default_str();
  annotate_cmd->add_option("--threshold", aa.threshold, "Partial similarity threshold")
      ->check(CLI::Range(1, 100))
      ->capture_default_str();
  annotate_cmd->add_option("--jobs", aa.jobs, "Parallel files (default: cores)")
      ->check(CLI::Range(1u, 1024u));
  annotate_cmd->add_option("-o,--output", aa.output, "Output file or directory");

  auto* match_cmd = app.add_subcommand("match", "Explain how one entity is matched");
  MatchArgs ma;
  match_cmd->add_option("--entity", ma.entity, "Entity surface, e.g. \"Mrs. Bennet\"");
  match_cmd->add_option("--prefix", ma.prefix, "Token preceding the entity");
  match_cmd->add_option("--tags", ma.tags, "Tag list");
  match_cmd->add_option("--threshold", ma.threshold, "Partial similarity threshold")
      ->check(CLI::Range(1, 100))
      ->capture_default_str();

  auto* augment_cmd = app.add_subcommand("augment", "Inject common names into training data");
  AugmentArgs ga;
  augment_cmd->add_option("--input", ga.input, "JSON-lines training records");
  augment_cmd->add_option("--seed", ga.seed, "Random seed")->capture_default_str();
  augment_cmd->add_flag("--gender-consistent", ga.gender_consistent,
                        "Replace names with names of the same gender");
  augment_cmd->add_option("-o,--output", ga.output, "Output file (default stdout)");

  auto* extract_cmd =
      app.add_subcommand("extract-training", "Sentences mentioning listed entities");
  ExtractArgs ea;
  extract_cmd->add_option("--text", ea.text, "Text file");
  extract_cmd->add_option("--entities", ea.entities, "Entity list, one per line");
  extract_cmd->add_option("-o,--output", ea.output, "Output file (default stdout)");

  auto* evaluate_cmd = app.add_subcommand("evaluate", "Score predictions against gold");
  EvaluateArgs va;
  evaluate_cmd->add_option("--gold", va.gold, "Gold standoff file or directory");
  evaluate_cmd->add_option("--pred", va.pred, "Predicted standoff file or directory");
  evaluate_cmd->add_option("--mode", va.mode, "person_only or full_names")
      ->capture_default_str();
  evaluate_cmd->add_flag("--family-as-person", va.family_as_person,
                         "Score family annotations as person");
  evaluate_cmd->add_flag("--json", va.json, "Print JSON instead of a table");
  evaluate_cmd->add_option("-o,--output", va.output, "Output file (default stdout)");

  auto* stats_cmd = app.add_subcommand("stats", "Corpus statistics");
  stats_cmd->require_subcommand(1);
  StatsArgs sa;
  auto* shared_cmd = stats_cmd->add_subcommand("shared", "Tags sharing a name part");
  shared_cmd->add_option("--tags", sa.tags, "Tag list");
  auto* forms_cmd = stats_cmd->add_subcommand("forms", "Mention forms of one character");
  forms_cmd->add_option("--standoff", sa.standoff, "Annotated standoff file");
  forms_cmd->add_option("--character", sa.character, "Full name of the character");
  forms_cmd->add_option("--tags", sa.tags, "Tag list");
  auto* titles_cmd = stats_cmd->add_subcommand("titles", "Titles before a surname");
  titles_cmd->add_option("--text", sa.text, "Text file");
  titles_cmd->add_option("--surname", sa.surname, "Surname");

  try {
    app.parse(argc, argv);
    if (!common.config.empty()) apply_config(app, common.config);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kUsageError;
  }

  if (characters->parsed()) return run_characters(ca);
  if (annotate_cmd->parsed()) return run_annotate(common, aa);
  if (match_cmd->parsed()) return run_match(common, ma);
  if (augment_cmd->parsed()) return run_augment(common, ga);
  if (extract_cmd->parsed()) return run_extract(common, ea);
  if (evaluate_cmd->parsed()) return run_evaluate(common, va);
  if (shared_cmd->parsed()) return run_stats_shared(common, sa);
  if (forms_cmd->parsed()) return run_stats_forms(common, sa);
  if (titles_cmd->parsed()) return run_stats_titles(common, sa);
  return kUsageError;
}

}  // namespace
}  // namespace ptagger

int main(int argc, char** argv) {
  try {
    return ptagger::run(argc, argv);
  } catch (const ptagger::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\nRun with --help for usage.\n";
    return ptagger::kUsageError;
  } catch (const ptagger::FetchError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return ptagger::kDataError;
  } catch (const ptagger::DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return ptagger::kDataError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return ptagger::kDataError;
  }
}
