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

#ifndef ARIANNA_REPORT_JSON_H_
#define ARIANNA_REPORT_JSON_H_

#include <string>

#include "arianna/scorer.h"
#include "json.hpp"

namespace arianna {

using Json = nlohmann::ordered_json;

// Field order is fixed: word_count, as_expected, unexpected, [unevaluable],
// consistency, mode, model_name, flags. consistency is written with the
// shortest decimal that round-trips the double.
Json ReportToJson(const ScoreReport& report);
// Throws MalformedError on missing or mistyped fields.
ScoreReport ReportFromJson(const Json& doc);

// Compact single-line serialization used by the CLI and the service.
std::string DumpReport(const ScoreReport& report);

}  // namespace arianna

#endif  // ARIANNA_REPORT_JSON_H_
