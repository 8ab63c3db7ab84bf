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

#ifndef XLT_PARSE_H_
#define XLT_PARSE_H_

#include <set>
#include <string>
#include <utility>
#include <string_view>
#include <vector>

#include "xlt/ast.h"
#include "xlt/expected.h"

namespace xlt {

enum class TokenKind : std::uint8_t {
  kIdent,
  kInt,
  kFloat,
  kStr,
  kOp,
  kNewline,  // DP only
  kIndent,   // DP only
  kDedent,   // DP only
  kEnd,
};

struct Token {
  TokenKind kind = TokenKind::kEnd;
  std::string text;  // for kStr the decoded contents
  int line = 0;
  int col = 0;
};

struct ParseErrorReport {
  int line = 0;
  int col = 0;
  std::string expected;
  std::string found;

  std::string ToString() const;
};

Expected<std::vector<Token>, ParseErrorReport> Tokenize(Dialect dialect, std::string_view text);

// Number of lexical tokens, not counting layout tokens.
int TokenCount(Dialect dialect, std::string_view text);

Expected<FunctionDef, ParseErrorReport> Parse(Dialect dialect, std::string_view text);
// A file holding any number of functions one after the other.
Expected<std::vector<FunctionDef>, ParseErrorReport> ParseMany(Dialect dialect,
                                                               std::string_view text);

struct PrintOptions {
  // (parent node id, child index) pairs printed without the parentheses the
  // dialect's precedence would require. The output may then parse to a
  // different tree, which is exactly what a translator that copies the
  // source's token order produces.
  std::set<std::pair<int, int>> bare_children;
};

std::string Print(const FunctionDef& fn, const PrintOptions& options = {});
std::string PrintExpr(const Expr& e, Dialect dialect);

// Binding level of an expression's outermost operator in a dialect, and the
// minimum level the child at `index` must have to print without parentheses.
int ExprLevel(const Expr& e, Dialect dialect);
int ChildMinLevel(const Expr& parent, size_t index, Dialect dialect);
std::string PrintType(const Type& type, Dialect dialect);

}  // namespace xlt

#endif  // XLT_PARSE_H_
