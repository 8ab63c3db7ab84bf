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

#include "xlt/records.h"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <sstream>

namespace xlt {
namespace {

using Error = std::string;

template <typename T>
Expected<T, Error> Fail(const std::string& why) {
  return MakeUnexpected(why);
}

Json DoubleToJson(double d) {
  if (std::isnan(d)) return "nan";
  if (std::isinf(d)) return d > 0 ? "inf" : "-inf";
  return d;
}

Expected<double, Error> DoubleFromJson(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string& s = j.get_ref<const std::string&>();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
  }
  return Fail<double>("bad f64 " + j.dump());
}

Expected<Dialect, Error> DialectField(const Json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_string()) return Fail<Dialect>(std::string("missing ") + key);
  auto d = DialectFromName(j.at(key).get<std::string>());
  if (!d) return Fail<Dialect>("unknown dialect " + j.at(key).dump());
  return *d;
}

}  // namespace

Json ValueToJson(const Value& v) {
  Json j;
  j["type"] = TypeKindName(v.tag());
  switch (v.tag()) {
    case TypeKind::kVoid:
      break;
    case TypeKind::kI32:
    case TypeKind::kI64:
      j["value"] = v.AsFixed();
      break;
    case TypeKind::kBigInt:
      j["value"] = v.AsBig().str();
      break;
    case TypeKind::kF64:
      j["value"] = DoubleToJson(v.AsF64());
      break;
    case TypeKind::kBool:
      j["value"] = v.AsBool();
      break;
    case TypeKind::kStr:
      j["value"] = v.AsStr();
      break;
    case TypeKind::kArr:
    case TypeKind::kLst: {
      j["elem"] = TypeKindName(v.elem());
      Json items = Json::array();
      for (const Value& item : v.items()) items.push_back(ValueToJson(item));
      j["value"] = std::move(items);
      break;
    }
  }
  return j;
}

Expected<Value, Error> ValueFromJson(const Json& j) {
  if (!j.is_object() || !j.contains("type")) return Fail<Value>("value without type: " + j.dump());
  auto tag = TypeKindFromName(j.at("type").get<std::string>());
  if (!tag) return Fail<Value>("unknown value type " + j.at("type").dump());
  if (*tag == TypeKind::kVoid) return Value::Void();
  if (!j.contains("value")) return Fail<Value>("value missing in " + j.dump());
  const Json& v = j.at("value");
  try {
    switch (*tag) {
      case TypeKind::kI32: {
        std::int64_t x = v.get<std::int64_t>();
        if (x < INT32_MIN || x > INT32_MAX) return Fail<Value>("i32 out of range: " + v.dump());
        return Value::I32(static_cast<std::int32_t>(x));
      }
      case TypeKind::kI64:
        return Value::I64(v.get<std::int64_t>());
      case TypeKind::kBigInt:
        return Value::Big(BigInt(v.get<std::string>()));
      case TypeKind::kF64: {
        auto d = DoubleFromJson(v);
        if (!d) return MakeUnexpected(d.error());
        return Value::F64(*d);
      }
      case TypeKind::kBool:
        return Value::Bool(v.get<bool>());
      case TypeKind::kStr:
        return Value::Str(v.get<std::string>());
      case TypeKind::kArr:
      case TypeKind::kLst: {
        auto elem = TypeKindFromName(j.at("elem").get<std::string>());
        if (!elem) return Fail<Value>("unknown element type " + j.at("elem").dump());
        Value::Seq items;
        for (const Json& item : v) {
          auto parsed = ValueFromJson(item);
          if (!parsed) return parsed;
          items.push_back(std::move(*parsed));
        }
        return *tag == TypeKind::kArr ? Value::Arr(*elem, std::move(items))
                                      : Value::Lst(*elem, std::move(items));
      }
      default:
        break;
    }
  } catch (const std::exception& e) {
    return Fail<Value>(std::string("bad value ") + j.dump() + ": " + e.what());
  }
  return Fail<Value>("bad value " + j.dump());
}

Json OutcomeToJson(const ExecOutcome& o) {
  Json j;
  j["status"] = ExecStatusName(o.status);
  if (o.return_value) j["return"] = ValueToJson(*o.return_value);
  if (!o.param_state.empty()) {
    Json params = Json::object();
    for (const auto& [index, value] : o.param_state) params[std::to_string(index)] = ValueToJson(value);
    j["params"] = std::move(params);
  }
  j["printed"] = o.printed;
  j["steps"] = o.steps;
  return j;
}

Expected<ExecOutcome, Error> OutcomeFromJson(const Json& j) {
  ExecOutcome o;
  try {
    auto status = ExecStatusFromName(j.at("status").get<std::string>());
    if (!status) return Fail<ExecOutcome>("unknown status " + j.at("status").dump());
    o.status = *status;
    if (j.contains("return")) {
      auto v = ValueFromJson(j.at("return"));
      if (!v) return MakeUnexpected(v.error());
      o.return_value = std::move(*v);
    }
    if (j.contains("params")) {
      for (const auto& [key, value] : j.at("params").items()) {
        auto v = ValueFromJson(value);
        if (!v) return MakeUnexpected(v.error());
        o.param_state[std::stoi(key)] = std::move(*v);
      }
    }
    o.printed = j.value("printed", "");
    o.steps = j.value("steps", std::int64_t{0});
  } catch (const std::exception& e) {
    return Fail<ExecOutcome>(std::string("bad outcome: ") + e.what());
  }
  return o;
}

Json SuiteToJson(const TestSuite& s) {
  Json j;
  j["id"] = s.id;
  j["function_id"] = s.function_id;
  j["dialect"] = DialectName(s.dialect);
  if (s.ported_from) j["ported_from"] = DialectName(*s.ported_from);
  j["assert_count"] = s.assert_count;
  Json report;
  report["total_mutants"] = s.report.total_mutants;
  report["killed"] = s.report.killed;
  report["score"] = s.report.score;
  Json verdicts = Json::array();
  for (const MutantVerdict& v : s.report.verdicts) verdicts.push_back(v.killed ? v.killing_case : -1);
  report["killing_case"] = std::move(verdicts);
  j["report"] = std::move(report);
  Json cases = Json::array();
  for (const TestCase& c : s.cases) {
    Json cj;
    Json args = Json::array();
    for (const Value& a : c.args) args.push_back(ValueToJson(a));
    cj["args"] = std::move(args);
    cj["expected"] = OutcomeToJson(c.expected);
    cj["float_tol"] = c.float_tol;
    cases.push_back(std::move(cj));
  }
  j["cases"] = std::move(cases);
  return j;
}

Expected<TestSuite, Error> SuiteFromJson(const Json& j) {
  TestSuite s;
  try {
    s.id = j.at("id").get<std::string>();
    s.function_id = j.value("function_id", "");
    auto d = DialectField(j, "dialect");
    if (!d) return MakeUnexpected(d.error());
    s.dialect = *d;
    if (j.contains("ported_from")) {
      auto p = DialectField(j, "ported_from");
      if (!p) return MakeUnexpected(p.error());
      s.ported_from = *p;
    }
    s.assert_count = j.value("assert_count", 0);
    if (j.contains("report")) {
      const Json& r = j.at("report");
      s.report.total_mutants = r.value("total_mutants", 0);
      s.report.killed = r.value("killed", 0);
      s.report.score = r.value("score", 0.0);
      if (r.contains("killing_case")) {
        for (const Json& v : r.at("killing_case")) {
          int k = v.get<int>();
          s.report.verdicts.push_back({k >= 0, k});
        }
      }
    }
    for (const Json& cj : j.at("cases")) {
      TestCase c;
      for (const Json& a : cj.at("args")) {
        auto v = ValueFromJson(a);
        if (!v) return MakeUnexpected(v.error());
        c.args.push_back(std::move(*v));
      }
      auto o = OutcomeFromJson(cj.at("expected"));
      if (!o) return MakeUnexpected(o.error());
      c.expected = std::move(*o);
      c.float_tol = cj.value("float_tol", 0.01);
      s.cases.push_back(std::move(c));
    }
  } catch (const std::exception& e) {
    return Fail<TestSuite>(std::string("bad suite: ") + e.what());
  }
  return s;
}

Json ChoicesToJson(const DirectedChoices& c) {
  Json j;
  j["src"] = DialectName(c.src);
  j["tgt"] = DialectName(c.tgt);
  Json kinds = Json::array();
  for (SiteKind k : c.kinds) kinds.push_back(SiteKindName(k));
  j["kinds"] = std::move(kinds);
  j["options"] = c.options;
  return j;
}

Expected<DirectedChoices, Error> ChoicesFromJson(const Json& j) {
  DirectedChoices c;
  auto src = DialectField(j, "src");
  auto tgt = DialectField(j, "tgt");
  if (!src) return MakeUnexpected(src.error());
  if (!tgt) return MakeUnexpected(tgt.error());
  c.src = *src;
  c.tgt = *tgt;
  try {
    for (const Json& k : j.at("kinds")) {
      auto kind = SiteKindFromName(k.get<std::string>());
      if (!kind) return Fail<DirectedChoices>("unknown site kind " + k.dump());
      c.kinds.push_back(*kind);
    }
    c.options = j.at("options").get<std::vector<int>>();
  } catch (const std::exception& e) {
    return Fail<DirectedChoices>(std::string("bad choices: ") + e.what());
  }
  if (c.kinds.size() != c.options.size()) return Fail<DirectedChoices>("kinds/options length mismatch");
  return c;
}

Json PairToJson(const ParallelPair& p) {
  Json j;
  j["src_id"] = p.src_id;
  j["src_dialect"] = DialectName(p.src_dialect);
  j["tgt_dialect"] = DialectName(p.tgt_dialect);
  j["tgt_source_text"] = p.tgt_text;
  j["suite_id"] = p.suite_id;
  j["beam_rank"] = p.beam_rank;
  j["choice_vector"] = ChoicesToJson(p.forward);
  if (p.reverse) j["reverse_choice_vector"] = ChoicesToJson(*p.reverse);
  j["iteration"] = p.iteration;
  j["src_source_text"] = p.src_text;
  return j;
}

Expected<ParallelPair, Error> PairFromJson(const Json& j) {
  ParallelPair p;
  try {
    p.src_id = j.at("src_id").get<std::string>();
    auto src = DialectField(j, "src_dialect");
    auto tgt = DialectField(j, "tgt_dialect");
    if (!src) return MakeUnexpected(src.error());
    if (!tgt) return MakeUnexpected(tgt.error());
    p.src_dialect = *src;
    p.tgt_dialect = *tgt;
    p.tgt_text = j.at("tgt_source_text").get<std::string>();
    p.src_text = j.value("src_source_text", "");
    p.suite_id = j.at("suite_id").get<std::string>();
    p.beam_rank = j.at("beam_rank").get<int>();
    p.iteration = j.value("iteration", 0);
    auto fwd = ChoicesFromJson(j.at("choice_vector"));
    if (!fwd) return MakeUnexpected(fwd.error());
    p.forward = std::move(*fwd);
    if (j.contains("reverse_choice_vector")) {
      auto rev = ChoicesFromJson(j.at("reverse_choice_vector"));
      if (!rev) return MakeUnexpected(rev.error());
      p.reverse = std::move(*rev);
    }
  } catch (const std::exception& e) {
    return Fail<ParallelPair>(std::string("bad pair: ") + e.what());
  }
  return p;
}

Json IterationReportToJson(const IterationReport& r) {
  Json j;
  j["iteration"] = r.iteration;
  Json pairs = Json::object();
  for (const auto& [k, v] : r.pairs) pairs[k] = v;
  j["pairs"] = std::move(pairs);
  j["updates"] = r.updates;
  j["validation_ca1"] = r.validation_ca1;
  j["model_id"] = r.model_id;
  j["accepted"] = r.accepted;
  return j;
}

Expected<std::vector<Json>, Error> ParseJsonLines(const std::string& text) {
  std::vector<Json> out;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    Json j = Json::parse(line, nullptr, false);
    if (j.is_discarded()) return Fail<std::vector<Json>>("line " + std::to_string(line_no) + ": invalid JSON");
    out.push_back(std::move(j));
  }
  return out;
}

Expected<std::string, Error> ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return Fail<std::string>("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Expected<bool, Error> WriteFile(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) return Fail<bool>("cannot write " + path);
  out << contents;
  if (!out) return Fail<bool>("write failed for " + path);
  return true;
}

}  // namespace xlt
