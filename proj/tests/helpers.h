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

#ifndef XLT_TESTS_HELPERS_H_
#define XLT_TESTS_HELPERS_H_

#include <gtest/gtest.h>

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "xlt/exec.h"
#include "xlt/parse.h"
#include "xlt/pipeline.h"
#include "xlt/typecheck.h"

namespace xlt::testing {

inline TypedFunction Typed(Dialect d, const std::string& src) {
  auto fn = Parse(d, src);
  if (!fn) {
    ADD_FAILURE() << fn.error().ToString() << "\n" << src;
    return {};
  }
  auto tf = Typecheck(*fn);
  if (!tf) {
    ADD_FAILURE() << tf.error().ToString() << "\n" << src;
    return {};
  }
  return *tf;
}

// Functions shared by several suites.
inline const char* kJavaPow =
    "static int pow(int b, int e) {\n"
    "  int r = 1;\n"
    "  while (e > 0) {\n"
    "    if ((e & 1) == 1) {\n"
    "      r = r * b;\n"
    "    }\n"
    "    b = b * b;\n"
    "    e = e >> 1;\n"
    "  }\n"
    "  return r;\n"
    "}\n";

inline const char* kJavaClamp =
    "static double clamp(double a, double min, double max) {\n"
    "  return a<min?min:(a>max?max:a);\n"
    "}\n";

inline const char* kJavaFactorial =
    "static int factorial(int n) {\n"
    "  int r = 1;\n"
    "  int i = 2;\n"
    "  while (i <= n) {\n"
    "    r *= i;\n"
    "    i += 1;\n"
    "  }\n"
    "  return r;\n"
    "}\n";

inline const char* kJavaPrintb =
    "static void printb(int x) {\n"
    "  while (x > 0) {\n"
    "    System.out.println(x % 2);\n"
    "    x /= 2;\n"
    "  }\n"
    "}\n";

inline const char* kPyIsOdd =
    "def is_odd(x: int) -> bool:\n"
    "    return x & 1 == 1\n";

inline std::string ReadFileForTest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  EXPECT_TRUE(in.good()) << path;
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string DataPath(const std::string& rel) { return std::string(XLT_SOURCE_DIR) + "/" + rel; }

// The first `count` bundled corpus functions with selected suites, built once
// per process.
inline const std::vector<CorpusFunction>& SmallCorpus(size_t count = 40) {
  static std::map<size_t, std::vector<CorpusFunction>> cache;
  auto it = cache.find(count);
  if (it != cache.end()) return it->second;
  auto fns = LoadCorpusFunctions(ReadFileForTest(DataPath("data/corpus.dj")), Dialect::kDJ);
  EXPECT_TRUE(fns.has_value());
  std::vector<CorpusFunction> out;
  if (fns) out.assign(fns->begin(), fns->begin() + std::min(count, fns->size()));
  AttachSelectedSuites(out, GenConfig{});
  return cache.emplace(count, std::move(out)).first->second;
}

}  // namespace xlt::testing

#endif  // XLT_TESTS_HELPERS_H_
