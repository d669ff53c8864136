// Copyright 2026 The Arianna Authors.
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

#include "arianna/cli.h"

#include <algorithm>
#include <charconv>
#include <csignal>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "arianna/corpus_io.h"
#include "arianna/error.h"
#include "arianna/http_service.h"
#include "arianna/model_io.h"
#include "arianna/ngram_model.h"
#include "arianna/report_json.h"
#include "arianna/scorer.h"
#include "arianna/session.h"

namespace arianna {
namespace {

namespace fs = std::filesystem;

// Usage problems detected after CLI11 has parsed.
struct UsageError {
  std::string message;
};

std::string FormatDouble(double value) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

struct TextInput {
  std::optional<std::string> text;
  std::optional<std::string> text_file;

  void Register(CLI::App* cmd) {
    auto* t = cmd->add_option("--text", text, "Text to evaluate");
    auto* f = cmd->add_option("--text-file", text_file, "File holding the text to evaluate");
    t->excludes(f);
  }

  std::string Read() const {
    if (text) return ReadCorpus(CorpusSource::FromLiteral(*text)).text;
    if (text_file) return ReadCorpus(CorpusSource::FromPaths({*text_file}, "")).text;
    throw UsageError{"one of --text or --text-file is required"};
  }
};

ConsistencyModel LoadModelOrThrow(const std::string& path, std::ostream& err) {
  LoadedModel loaded = LoadModel(path);
  for (const std::string& w : loaded.warnings) err << "warning: " << w << "\n";
  return std::move(loaded.model);
}

void PrintHumanReport(const ScoreReport& r, const ConsistencyModel& model,
                      std::ostream& out) {
  out << "model: " << model.name() << " (" << ModelKindName(model.kind()) << ")\n";
  out << "mode: " << ScoreModeName(r.mode) << "\n";
  out << "words: " << r.word_count << "\n";
  out << "as_expected: " << r.as_expected << "\n";
  out << "unexpected: " << r.unexpected << "\n";
  if (r.unevaluable) out << "unevaluable: " << *r.unevaluable << "\n";
  out << "consistency: " << FormatDouble(r.consistency()) << "\n";
  out << "flags: " << r.flags.size() << "\n";
  for (const Flag& f : r.flags) {
    out << "  [" << f.position << "] " << f.judge_context << " " << f.actual
        << " → ";
    if (f.candidates.empty()) {
      out << "(no candidates)";
    } else {
      for (std::size_t i = 0; i < f.candidates.size(); ++i) {
        if (i > 0) out << ", ";
        out << f.candidates[i].word;
      }
    }
    out << "\n";
  }
}

void PrintSuggestions(const ScoreReport& r, std::ostream& out) {
  if (r.flags.empty()) {
    out << "no flags\n";
    return;
  }
  for (std::size_t k = 0; k < r.flags.size(); ++k) {
    const Flag& f = r.flags[k];
    if (k > 0) out << "\n";
    out << "position " << f.position << ": " << f.actual << "\n";
    if (f.candidates.empty()) {
      out << "  (no candidates)\n";
      continue;
    }
    std::vector<std::array<std::string, 5>> rows;
    rows.push_back({"rank", "context", "actual", "candidate", "order"});
    for (const Candidate& c : f.candidates) {
      rows.push_back({std::to_string(c.rank), c.context, f.actual, c.word,
                      std::to_string(c.order)});
    }
    std::array<std::size_t, 5> width{};
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        width[i] = std::max(width[i], row[i].size());
      }
    }
    for (const auto& row : rows) {
      std::string line = "  ";
      for (std::size_t i = 0; i < row.size(); ++i) {
        line += row[i];
        if (i + 1 < row.size()) line += std::string(width[i] - row[i].size() + 2, ' ');
      }
      out << line << "\n";
    }
  }
}

ServiceServer* g_server = nullptr;

void HandleSignal(int) {
  if (g_server) g_server->Stop();
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Consistency scoring for text corpora with n-gram models", "arianna"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "arianna 1.0.0");

  // build
  std::vector<std::string> build_in;
  std::optional<std::string> build_text;
  std::string build_ext = ".txt";
  std::string build_out;
  std::string build_kind = "internal";
  std::optional<std::string> build_name;
  std::string orders_flag = "3,4,5";
  std::int64_t min_frequency = 2;
  auto* build = app.add_subcommand("build", "Build an arianna-model v1 file from a corpus");
  auto* in_opt = build->add_option("--in", build_in, "Corpus files or directories (repeatable)");
  build->add_option("--text", build_text, "Literal corpus text")->excludes(in_opt);
  build->add_option("--ext", build_ext, "Extension matched inside directories ('' for all)");
  build->add_option("--out", build_out, "Model file to write")->required();
  build->add_option("--kind", build_kind, "internal or external");
  build->add_option("--name", build_name, "Model name (default: output file stem)");
  build->add_option("--orders", orders_flag, "Comma list of n-gram orders");
  build->add_option("--min-frequency", min_frequency, "Keep n-grams seen at least this often");

  // score
  std::string model_path;
  TextInput score_input;
  std::string mode_flag = "paper";
  std::string format_flag = "human";
  std::optional<double> fail_below;
  auto* score = app.add_subcommand("score", "Score text against a model");
  score->add_option("--model", model_path, "Model file")->required();
  score_input.Register(score);
  score->add_option("--mode", mode_flag, "paper or strict");
  score->add_option("--format", format_flag, "human or report");
  score->add_option("--fail-below", fail_below, "Exit 3 when consistency is below this");

  // suggest
  TextInput suggest_input;
  auto* suggest = app.add_subcommand("suggest", "List ranked replacement candidates");
  suggest->add_option("--model", model_path, "Model file")->required();
  suggest_input.Register(suggest);

  // replay
  std::string session_path;
  auto* replay = app.add_subcommand("replay", "Verify a session document against a model");
  replay->add_option("--model", model_path, "Model file")->required();
  replay->add_option("--session", session_path, "Session document")->required();

  // serve
  int port = 8080;
  std::string host = "127.0.0.1";
  std::optional<std::string> model_dir;
  auto* serve = app.add_subcommand("serve", "Run the HTTP API");
  serve->add_option("--port", port, "Port to listen on");
  serve->add_option("--host", host, "Address to bind");
  serve->add_option("--model-dir", model_dir, "Store root (default: $ARIANNA_MODEL_DIR)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    // Help and version requests surface as parse errors with exit code 0.
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    err << "error: " << e.what() << "\n" << "run with --help for usage\n";
    return kExitUsage;
  }

  try {
    if (build->parsed()) {
      BuildOptions options;
      try {
        options.orders = OrderSet::Parse(orders_flag);
        options.kind = ParseModelKind(build_kind);
      } catch (const Error& e) {
        throw UsageError{e.what()};
      }
      if (min_frequency < 1) throw UsageError{"--min-frequency must be >= 1"};
      options.min_frequency = min_frequency;
      options.name = build_name ? *build_name : fs::path(build_out).stem().string();
      if (!IsValidModelName(options.name)) {
        throw UsageError{"invalid model name '" + options.name +
                         "' (allowed: letters, digits, '.', '_', '-')"};
      }
      if (!build_text && build_in.empty()) {
        throw UsageError{"one of --in or --text is required"};
      }
      std::vector<fs::path> paths(build_in.begin(), build_in.end());
      Corpus corpus = ReadCorpus(build_text ? CorpusSource::FromLiteral(*build_text)
                                            : CorpusSource::FromPaths(paths, build_ext));
      options.source_checksum = corpus.checksum;
      ConsistencyModel model = ConsistencyModel::Build(corpus.text, options);
      SaveModel(model, build_out);
      out << "model " << model.name() << " (" << ModelKindName(model.kind())
          << "): " << model.meta().token_count << " tokens, orders "
          << model.orders().ToString() << ", min_frequency "
          << model.min_frequency() << "\n";
      for (const auto& [order, n] : model.EntryCounts()) {
        out << "order " << order << ": " << n << " entries\n";
      }
      out << "total: " << model.size() << " entries\n";
      return kExitOk;
    }

    if (score->parsed()) {
      ScoreMode mode;
      try {
        mode = ParseScoreMode(mode_flag);
      } catch (const Error& e) {
        throw UsageError{e.what()};
      }
      if (format_flag != "human" && format_flag != "report") {
        throw UsageError{"--format must be human or report"};
      }
      const std::string text = score_input.Read();
      ConsistencyModel model = LoadModelOrThrow(model_path, err);
      ScoreReport report = Score(text, model, mode);
      if (format_flag == "report") {
        out << DumpReport(report) << "\n";
      } else {
        PrintHumanReport(report, model, out);
      }
      if (fail_below && report.consistency() < *fail_below) {
        err << "consistency " << FormatDouble(report.consistency())
            << " is below " << FormatDouble(*fail_below) << "\n";
        return kExitBelowThreshold;
      }
      return kExitOk;
    }

    if (suggest->parsed()) {
      const std::string text = suggest_input.Read();
      ConsistencyModel model = LoadModelOrThrow(model_path, err);
      PrintSuggestions(Score(text, model), out);
      return kExitOk;
    }

    if (replay->parsed()) {
      auto model = std::make_shared<const ConsistencyModel>(
          LoadModelOrThrow(model_path, err));
      Json doc = Json::parse(ReadFileBytes(session_path), nullptr, false);
      if (doc.is_discarded()) {
        throw MalformedError(0, session_path + " is not a JSON document");
      }
      CleaningSession session = ImportSession(doc, model);
      out << "session " << session.id() << ": " << session.seq()
          << " edits replayed, all scores verified\n";
      for (const HistoryPoint& h : session.score_history()) {
        out << "seq " << h.seq << ": " << FormatDouble(h.report.consistency()) << "\n";
      }
      return kExitOk;
    }

    if (serve->parsed()) {
      ServiceConfig config;
      config.root = model_dir ? fs::path(*model_dir) : DefaultServiceRoot();
      ServiceServer server(config);
      const int bound = server.Bind(host, port);
      if (bound < 0) {
        err << "error: cannot bind " << host << ":" << port << "\n";
        return kExitData;
      }
      g_server = &server;
      std::signal(SIGINT, HandleSignal);
      std::signal(SIGTERM, HandleSignal);
      out << "serving on http://" << host << ":" << bound << " (store "
          << config.root.string() << ")" << std::endl;
      server.Listen();
      g_server = nullptr;
      return kExitOk;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.message << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}

}  // namespace arianna
