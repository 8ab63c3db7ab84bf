// Copyright 2026 The xlt Authors
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

#ifndef XLT_RECORDS_H_
#define XLT_RECORDS_H_

#include <string>
#include <vector>

#include <json.hpp>

#include "xlt/expected.h"
#include "xlt/pipeline.h"
#include "xlt/suite.h"
#include "xlt/value.h"

namespace xlt {

using Json = nlohmann::ordered_json;

// Values carry their tag: {"type": "i32", "value": 5}. BigInt values are
// decimal strings and non-finite doubles are the strings "nan", "inf", "-inf".
Json ValueToJson(const Value& v);
Expected<Value, std::string> ValueFromJson(const Json& j);

Json OutcomeToJson(const ExecOutcome& o);
Expected<ExecOutcome, std::string> OutcomeFromJson(const Json& j);

Json SuiteToJson(const TestSuite& s);
Expected<TestSuite, std::string> SuiteFromJson(const Json& j);

Json ChoicesToJson(const DirectedChoices& c);
Expected<DirectedChoices, std::string> ChoicesFromJson(const Json& j);

Json PairToJson(const ParallelPair& p);
Expected<ParallelPair, std::string> PairFromJson(const Json& j);

Json IterationReportToJson(const IterationReport& r);

// One compact JSON document per line.
template <typename T, typename F>
std::string ToJsonLines(const std::vector<T>& items, F&& to_json) {
  std::string out;
  for (const T& item : items) out += to_json(item).dump() + "\n";
  return out;
}

// Parses every non-blank line; errors name the line number.
Expected<std::vector<Json>, std::string> ParseJsonLines(const std::string& text);

Expected<std::string, std::string> ReadFile(const std::string& path);
Expected<bool, std::string> WriteFile(const std::string& path, const std::string& contents);

}  // namespace xlt

#endif  // XLT_RECORDS_H_
