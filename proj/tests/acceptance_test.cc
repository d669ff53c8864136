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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero if any fails. Consistency values are compared exactly; runtime
// limits are wall-clock.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <exception>
#include <functional>
#include <iostream>
#include <memory>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "arianna/cli.h"
#include "arianna/corpus_io.h"
#include "arianna/model_io.h"
#include "arianna/ngram_model.h"
#include "arianna/report_json.h"
#include "arianna/scorer.h"
#include "arianna/session.h"
#include "oracle/brute_force.h"
#include "service_harness.h"
#include "test_support.h"

namespace arianna {
namespace {

using Clock = std::chrono::steady_clock;

constexpr double kInternalLimitSeconds = 1.0;
constexpr double kOracleLimitSeconds = 30.0;
constexpr int kOracleTrials = 1000;
constexpr int kRaceTrials = 100;

// Collects the first failure message of a criterion.
class Checker {
 public:
  void Expect(bool ok, const std::string& what) {
    if (!ok && failure_.empty()) failure_ = what;
  }
  bool ok() const { return failure_.empty(); }
  const std::string& failure() const { return failure_; }

 private:
  std::string failure_;
};

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

std::string Fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

std::string InternalExample(Checker& c) {
  const auto start = Clock::now();
  BuildOptions options;
  options.name = "je";
  ConsistencyModel model = ConsistencyModel::Build(testing::JaneEyreText(), options);
  ScoreReport r = Score("when there was na company", model);
  const double elapsed = Seconds(start);
  c.Expect(model.size() == 1, "model has " + std::to_string(model.size()) + " entries");
  c.Expect(model.size() == 1 &&
               model.entries()[0] == NGramEntry{3, "there_was", "no", 2},
           "entry is not (3, there_was, no, 2)");
  c.Expect(r.word_count == 5 && r.as_expected == 4 && r.unexpected == 1,
           "counts differ");
  c.Expect(r.consistency() == 0.8, "consistency " + std::to_string(r.consistency()));
  c.Expect(r.flags.size() == 1 && r.flags[0].candidates.size() == 1 &&
               r.flags[0].candidates[0].word == "no",
           "flag/candidate differ");
  c.Expect(elapsed < kInternalLimitSeconds, "took " + Fmt(elapsed) + " s");
  return "consistency " + Fmt(r.consistency()) + ", " + Fmt(elapsed) + " s";
}

std::string ExternalExample(Checker& c) {
  ConsistencyModel model = testing::ExternalFixture();
  ScoreReport r = Score("there was no possibiliti", model);
  const std::vector<std::tuple<std::string, int>> expected = {
      {"evidence", 4}, {"immediate", 4}, {"infrastructure", 4}, {"one", 4},
      {"possibility", 4}, {"sound", 4}, {"way", 4}, {"good", 3},
      {"longer", 3}, {"more", 3}, {"wonder", 3}};
  c.Expect(r.consistency() == 0.75, "consistency " + std::to_string(r.consistency()));
  c.Expect(r.as_expected == 3 && r.unexpected == 1, "counts differ");
  std::vector<std::tuple<std::string, int>> got;
  if (r.flags.size() == 1) {
    for (const Candidate& cand : r.flags[0].candidates) {
      got.emplace_back(cand.word, cand.order);
      c.Expect(cand.frequency >= 2, "candidate frequency below 2");
    }
  }
  c.Expect(got == expected, "candidate order differs");
  return "consistency " + Fmt(r.consistency()) + ", " + std::to_string(got.size()) +
         " candidates";
}

bool SameReport(const ScoreReport& r, const oracle::Report& o) {
  if (r.word_count != o.word_count || r.unexpected != o.unexpected ||
      r.as_expected != r.word_count - o.unexpected || r.flags.size() != o.flags.size()) {
    return false;
  }
  for (std::size_t i = 0; i < o.flags.size(); ++i) {
    const Flag& f = r.flags[i];
    const oracle::Flag& g = o.flags[i];
    if (f.position != g.position || f.actual != g.actual ||
        f.judge_context != g.judge_context ||
        f.candidates.size() != g.candidates.size()) {
      return false;
    }
    for (std::size_t k = 0; k < g.candidates.size(); ++k) {
      const Candidate& a = f.candidates[k];
      const oracle::Candidate& b = g.candidates[k];
      if (a.word != b.word || a.order != b.order || a.context != b.context ||
          a.frequency != b.frequency || a.rank != b.rank) {
        return false;
      }
    }
  }
  return true;
}

std::string OracleEquivalence(Checker& c) {
  std::mt19937_64 rng(20260101);
  std::uniform_int_distribution<std::size_t> train_len(0, 500);
  std::uniform_int_distribution<std::size_t> eval_len(1, 50);
  std::uniform_int_distribution<int> minf(1, 3);
  std::uniform_int_distribution<int> coin(0, 3);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const auto start = Clock::now();
  int mismatches = 0;
  std::size_t flags = 0;
  for (int trial = 0; trial < kOracleTrials; ++trial) {
    const oracle::Words train = oracle::RandomWords(rng, train_len(rng), 20);
    std::vector<int> orders = {3};
    if (coin(rng) != 0) orders.push_back(4);
    if (coin(rng) != 0) orders.push_back(5);
    const int min_frequency = minf(rng);

    // Most evaluated texts are perturbed training slices so that known
    // contexts and flags actually occur; the rest are uniform noise.
    oracle::Words eval;
    const std::size_t n = eval_len(rng);
    if (coin(rng) != 0 && train.size() >= n) {
      std::uniform_int_distribution<std::size_t> at(0, train.size() - n);
      const std::size_t s = at(rng);
      eval.assign(train.begin() + s, train.begin() + s + n);
      for (std::string& w : eval) {
        if (unit(rng) < 0.2) w = oracle::RandomWords(rng, 1, 20)[0];
      }
    } else {
      eval = oracle::RandomWords(rng, n, 20);
    }

    BuildOptions options;
    options.orders = OrderSet::FromVector(orders);
    options.min_frequency = min_frequency;
    ConsistencyModel model = ConsistencyModel::Build(oracle::JoinSpaces(train), options);
    std::vector<oracle::Entry> entries;
    for (const NGramEntry& e : model.entries()) {
      entries.emplace_back(e.order, e.context, e.expected_word, e.frequency);
    }
    const bool entries_ok = entries == oracle::Entries(train, orders, min_frequency);
    const ScoreReport report = Score(oracle::JoinSpaces(eval), model);
    const bool report_ok =
        SameReport(report, oracle::Score(train, orders, min_frequency, eval));
    flags += report.flags.size();
    if (!entries_ok || !report_ok) {
      if (mismatches == 0) {
        c.Expect(false, "trial " + std::to_string(trial) +
                            (entries_ok ? " report mismatch" : " entry mismatch"));
      }
      ++mismatches;
    }
  }
  const double elapsed = Seconds(start);
  c.Expect(elapsed < kOracleLimitSeconds, "took " + Fmt(elapsed) + " s");
  return std::to_string(kOracleTrials) + " trials, " + std::to_string(mismatches) +
         " mismatches, " +
         std::to_string(flags) + " flags, " + Fmt(elapsed) + " s";
}

std::string Properties(Checker& c) {
  std::mt19937_64 rng(4242);
  std::uniform_int_distribution<std::size_t> len(1, 60);

  // Bounds in both modes.
  for (int trial = 0; trial < 300; ++trial) {
    ConsistencyModel model = ConsistencyModel::Build(
        oracle::JoinSpaces(oracle::RandomWords(rng, 400, 6)), {});
    const std::string text = oracle::JoinSpaces(oracle::RandomWords(rng, len(rng), 8));
    for (ScoreMode mode : {ScoreMode::kPaper, ScoreMode::kStrict}) {
      const double v = Score(text, model, mode).consistency();
      c.Expect(v >= 0.0 && v <= 1.0, "consistency out of range");
    }
  }

  // Empty model.
  ConsistencyModel empty = ConsistencyModel::Build("", {});
  for (int trial = 0; trial < 50; ++trial) {
    const std::string text = oracle::JoinSpaces(oracle::RandomWords(rng, len(rng), 8));
    c.Expect(Score(text, empty).consistency() == 1.0, "empty model below 1.0");
    c.Expect(ScoreStrict(text, empty).consistency() == 1.0, "empty model below 1.0 (strict)");
  }

  // Model file round trip and byte determinism.
  for (int trial = 0; trial < 50; ++trial) {
    BuildOptions options;
    options.min_frequency = 1 + trial % 3;
    const std::string corpus = oracle::JoinSpaces(oracle::RandomWords(rng, 500, 5));
    ConsistencyModel model = ConsistencyModel::Build(corpus, options);
    const std::string bytes = SerializeModel(model);
    ConsistencyModel back = ParseModel(bytes).model;
    c.Expect(back.entries() == model.entries(), "round trip changed entries");
    c.Expect(SerializeModel(back) == bytes, "re-serialization differs");
    c.Expect(SerializeModel(ConsistencyModel::Build(corpus, options)) == bytes,
             "rebuild is not byte-identical");
  }
  {
    testing::TempDir dir;
    ConsistencyModel je = testing::JaneEyreModel();
    SaveModel(je, dir / "a.model");
    SaveModel(LoadModel(dir / "a.model").model, dir / "b.model");
    c.Expect(ReadFileBytes(dir / "a.model") == ReadFileBytes(dir / "b.model"),
             "saved files differ");
  }

  // Threshold monotonicity.
  for (int trial = 0; trial < 100; ++trial) {
    const std::string corpus = oracle::JoinSpaces(oracle::RandomWords(rng, 400, 4));
    std::set<std::tuple<int, std::string, std::string>> previous;
    for (std::int64_t k = 1; k <= 5; ++k) {
      BuildOptions options;
      options.min_frequency = k;
      const ConsistencyModel model = ConsistencyModel::Build(corpus, options);
      std::set<std::tuple<int, std::string, std::string>> current;
      for (const NGramEntry& e : model.entries()) {
        current.emplace(e.order, e.context, e.expected_word);
      }
      if (k > 1) {
        c.Expect(std::includes(previous.begin(), previous.end(), current.begin(),
                               current.end()),
                 "min_frequency " + std::to_string(k) + " adds entries");
      }
      previous = std::move(current);
    }
  }

  // Session replay and the demo trajectory.
  auto je = std::make_shared<const ConsistencyModel>(testing::JaneEyreModel());
  CleaningSession s = CleaningSession::Open("when there was na company", je);
  s.ApplyEdit(3, "no", EditSource::kAcceptedCandidate);
  s.Undo();
  std::vector<double> trajectory;
  for (const HistoryPoint& h : s.score_history()) trajectory.push_back(h.report.consistency());
  c.Expect(trajectory == std::vector<double>{0.8, 1.0, 0.8}, "trajectory differs");
  const Json doc = ExportSession(s);
  CleaningSession a = ImportSession(doc, je);
  CleaningSession b = ImportSession(Json::parse(doc.dump()), je);
  c.Expect(a.score_history() == s.score_history() && b.score_history() == s.score_history(),
           "replay produced different scores");
  c.Expect(ExportSession(a) == doc, "re-export differs");
  return "trajectory 0.8 -> 1.0 -> 0.8";
}

struct CliResult {
  int code;
  std::string out;
};

CliResult Cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = RunCli(args, out, err);
  return {code, out.str()};
}

std::string CliGoldens(Checker& c) {
  testing::TempDir dir;
  const std::string je = (dir / "je.model").string();
  const std::string ext = testing::TestPath("data/external_fixture.model").string();
  auto golden = [](const std::string& name) {
    return ReadFileBytes(testing::TestPath("golden/" + name));
  };
  int compared = 0;
  auto compare = [&](const CliResult& r, const std::string& name) {
    ++compared;
    c.Expect(r.code == kExitOk, name + ": exit " + std::to_string(r.code));
    c.Expect(r.out == golden(name), name + ": output differs");
  };
  compare(Cli({"build", "--in", testing::TestPath("data/jane_eyre_p1.txt").string(),
               "--out", je}),
          "je_build.txt");
  c.Expect(ReadFileBytes(je) == golden("je.model"), "je.model differs");
  const std::string na = "when there was na company";
  const std::string poss = "there was no possibiliti";
  compare(Cli({"score", "--model", je, "--text", na}), "je_score.txt");
  compare(Cli({"score", "--model", je, "--text", na, "--format", "report"}),
          "je_score_report.json");
  compare(Cli({"suggest", "--model", je, "--text", na}), "je_suggest.txt");
  compare(Cli({"score", "--model", ext, "--text", poss}), "external_score.txt");
  compare(Cli({"score", "--model", ext, "--text", poss, "--format", "report"}),
          "external_score_report.json");
  compare(Cli({"suggest", "--model", ext, "--text", poss}), "external_suggest.txt");

  const int below = Cli({"score", "--model", je, "--text", na, "--fail-below", "0.9"}).code;
  const int fixed = Cli({"score", "--model", je, "--text", "when there was no company",
                         "--fail-below", "0.9"})
                        .code;
  c.Expect(below == kExitBelowThreshold, "--fail-below exit " + std::to_string(below));
  c.Expect(fixed == kExitOk, "--fail-below after fix exit " + std::to_string(fixed));
  return std::to_string(compared) + " goldens, fail-below exits " + std::to_string(below) +
         "/" + std::to_string(fixed);
}

std::string ApiContract(Checker& c) {
  testing::TempDir dir;
  testing::ServiceHarness service(dir.path());
  const ConsistencyModel je = testing::JaneEyreModel();
  testing::HttpReply created =
      service.Post("/v1/models", {{"name", "je"}, {"text", testing::JaneEyreText()}});
  c.Expect(created.status == 201, "model upload status " + std::to_string(created.status));
  const std::string model_id = created.body.value("id", "");

  // Score responses against the library for fixed and random texts.
  std::vector<std::string> texts = {"when there was na company", "there was no",
                                    testing::JaneEyreText()};
  std::mt19937_64 rng(99);
  for (int i = 0; i < 20; ++i) {
    oracle::Words w = oracle::RandomWords(rng, 1 + i * 2, 4);
    if (w.size() >= 3) {
      w[0] = "there";
      w[1] = "was";
    }
    texts.push_back(oracle::JoinSpaces(w));
  }
  int scored = 0;
  for (const std::string& text : texts) {
    for (const char* mode : {"paper", "strict"}) {
      testing::HttpReply r =
          service.Post("/v1/score", {{"text", text}, {"model_id", model_id}, {"mode", mode}});
      const ScoreReport lib = Score(text, je, ParseScoreMode(mode));
      c.Expect(r.status == 200, "score status " + std::to_string(r.status));
      c.Expect(r.status == 200 && ReportFromJson(r.body) == lib &&
                   r.body.dump() == ReportToJson(lib).dump(),
               "score response differs from library report");
      ++scored;
    }
  }

  // Same-seq edit races.
  testing::HttpReply open = service.Post(
      "/v1/sessions", {{"text", "when there was na company"}, {"model_id", model_id}});
  c.Expect(open.status == 201, "session open status " + std::to_string(open.status));
  const std::string sid = open.body.value("id", "");
  int clean_trials = 0;
  for (int trial = 0; trial < kRaceTrials; ++trial) {
    int status[2] = {0, 0};
    auto edit = [&](int which) {
      status[which] = service
                          .Post("/v1/sessions/" + sid + "/edits",
                                {{"position", 3 + which},
                                 {"new_word", "w" + std::to_string(trial)},
                                 {"expected_seq", trial}})
                          .status;
    };
    std::thread a(edit, 0), b(edit, 1);
    a.join();
    b.join();
    const bool one_each = (status[0] == 200 && status[1] == 409) ||
                          (status[0] == 409 && status[1] == 200);
    if (one_each) ++clean_trials;
    c.Expect(one_each, "race trial " + std::to_string(trial) + " got " +
                           std::to_string(status[0]) + "/" + std::to_string(status[1]));
  }
  return std::to_string(scored) + " score responses, " + std::to_string(clean_trials) + "/" +
         std::to_string(kRaceTrials) + " races with one 200 and one 409";
}

}  // namespace
}  // namespace arianna

int main() {
  using Criterion = std::pair<const char*, std::function<std::string(arianna::Checker&)>>;
  const std::vector<Criterion> criteria = {
      {"internal-example", arianna::InternalExample},
      {"external-example", arianna::ExternalExample},
      {"oracle-equivalence", arianna::OracleEquivalence},
      {"properties", arianna::Properties},
      {"cli-goldens", arianna::CliGoldens},
      {"api-contract", arianna::ApiContract},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    arianna::Checker checker;
    std::string summary;
    try {
      summary = run(checker);
    } catch (const std::exception& e) {
      checker.Expect(false, std::string("exception: ") + e.what());
    }
    if (checker.ok()) {
      std::cout << "PASS " << name << ": " << summary << "\n";
    } else {
      ++failed;
      std::cout << "FAIL " << name << ": " << checker.failure() << "\n";
    }
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " failed")
            << std::endl;
  return failed == 0 ? 0 : 1;
}
