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

#include "arianna/report_json.h"

#include "arianna/error.h"

namespace arianna {

Json ReportToJson(const ScoreReport& report) {
  Json doc;
  doc["word_count"] = report.word_count;
  doc["as_expected"] = report.as_expected;
  doc["unexpected"] = report.unexpected;
  if (report.unevaluable) doc["unevaluable"] = *report.unevaluable;
  doc["consistency"] = report.consistency();
  doc["mode"] = ScoreModeName(report.mode);
  doc["model_name"] = report.model_name;
  Json flags = Json::array();
  for (const Flag& f : report.flags) {
    Json flag;
    flag["position"] = f.position;
    flag["actual"] = f.actual;
    flag["judge_context"] = f.judge_context;
    Json candidates = Json::array();
    for (const Candidate& c : f.candidates) {
      candidates.push_back({{"word", c.word},
                            {"order", c.order},
                            {"context", c.context},
                            {"frequency", c.frequency},
                            {"rank", c.rank}});
    }
    flag["candidates"] = std::move(candidates);
    flags.push_back(std::move(flag));
  }
  doc["flags"] = std::move(flags);
  return doc;
}

ScoreReport ReportFromJson(const Json& doc) {
  try {
    ScoreReport report;
    report.word_count = doc.at("word_count").get<std::size_t>();
    report.as_expected = doc.at("as_expected").get<std::size_t>();
    report.unexpected = doc.at("unexpected").get<std::size_t>();
    if (doc.contains("unevaluable")) {
      report.unevaluable = doc.at("unevaluable").get<std::size_t>();
    }
    report.mode = ParseScoreMode(doc.at("mode").get<std::string>());
    report.model_name = doc.at("model_name").get<std::string>();
    for (const Json& f : doc.at("flags")) {
      Flag flag;
      flag.position = f.at("position").get<std::size_t>();
      flag.actual = f.at("actual").get<std::string>();
      flag.judge_context = f.at("judge_context").get<std::string>();
      for (const Json& c : f.at("candidates")) {
        flag.candidates.push_back({c.at("word").get<std::string>(),
                                   c.at("order").get<int>(),
                                   c.at("context").get<std::string>(),
                                   c.at("frequency").get<std::int64_t>(),
                                   c.at("rank").get<int>()});
      }
      report.flags.push_back(std::move(flag));
    }
    return report;
  } catch (const Json::exception& e) {
    throw MalformedError(0, std::string("bad score report: ") + e.what());
  } catch (const Error& e) {
    throw MalformedError(0, std::string("bad score report: ") + e.what());
  }
}

std::string DumpReport(const ScoreReport& report) {
  return ReportToJson(report).dump();
}

}  // namespace arianna
