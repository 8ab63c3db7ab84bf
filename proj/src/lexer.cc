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

#include <array>
#include <cctype>

#include "xlt/parse.h"

namespace xlt {

std::string ParseErrorReport::ToString() const {
  return "parse error at " + std::to_string(line) + ":" + std::to_string(col) + ": expected " +
         expected + ", found " + found;
}

namespace {

constexpr std::array<std::string_view, 18> kCOps3 = {
    "<<=", ">>=", "==", "!=", "<=", ">=", "&&", "||", "<<",
    ">>",  "+=",  "-=", "*=", "/=", "%=", "&=", "|=", "^="};
constexpr std::string_view kCOps1 = "+-*/%<>=!&|^~?:(),;{}[]";

constexpr std::array<std::string_view, 21> kPyOps3 = {
    "**=", "//=", "<<=", ">>=", "**", "//", "==", "!=", "<=", ">=", "<<",
    ">>",  "->",  "+=",  "-=",  "*=", "/=", "%=", "&=", "|=", "^="};
constexpr std::string_view kPyOps1 = "+-*/%<>=&|^~:(),[]";

bool IsIdentStart(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool IsIdentChar(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool IsDigit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

class Lexer {
 public:
  Lexer(Dialect dialect, std::string_view text) : dialect_(dialect), text_(text) {}

  Expected<std::vector<Token>, ParseErrorReport> Run() {
    const bool py = dialect_ == Dialect::kDP;
    std::vector<int> indents = {0};
    bool line_start = true;
    while (true) {
      if (py && line_start && depth_ == 0) {
        int width = 0;
        size_t p = i_;
        while (p < text_.size() && text_[p] == ' ') {
          ++width;
          ++p;
        }
        if (p < text_.size() && text_[p] == '\t') return Error("spaces", "tab");
        if (p >= text_.size()) break;
        if (text_[p] == '\n' || text_[p] == '\r') {
          Advance(p - i_);
          SkipNewline();
          continue;
        }
        Advance(p - i_);
        if (width > indents.back()) {
          indents.push_back(width);
          Push(TokenKind::kIndent, "");
        } else {
          while (width < indents.back()) {
            indents.pop_back();
            Push(TokenKind::kDedent, "");
          }
          if (width != indents.back()) return Error("consistent indentation", "dedent");
        }
        line_start = false;
      }
      if (i_ >= text_.size()) break;
      char c = text_[i_];
      if (c == '\n' || c == '\r') {
        if (py && depth_ == 0) {
          Push(TokenKind::kNewline, "");
          line_start = true;
        }
        SkipNewline();
        continue;
      }
      if (c == ' ' || c == '\t') {
        Advance(1);
        continue;
      }
      if (IsIdentStart(c)) {
        LexIdent();
        continue;
      }
      if (IsDigit(c)) {
        if (auto err = LexNumber(); err) return MakeUnexpected(*err);
        continue;
      }
      if (c == '"') {
        if (auto err = LexString(); err) return MakeUnexpected(*err);
        continue;
      }
      if (!LexOp()) return Error("token", std::string(1, c));
    }
    if (py) {
      if (!tokens_.empty() && tokens_.back().kind != TokenKind::kNewline &&
          tokens_.back().kind != TokenKind::kDedent) {
        Push(TokenKind::kNewline, "");
      }
      while (indents.size() > 1) {
        indents.pop_back();
        Push(TokenKind::kDedent, "");
      }
    }
    Push(TokenKind::kEnd, "");
    return std::move(tokens_);
  }

 private:
  Unexpected<ParseErrorReport> Error(std::string expected, std::string found) const {
    return MakeUnexpected(ParseErrorReport{line_, col_, std::move(expected), std::move(found)});
  }

  void Advance(size_t n) {
    i_ += n;
    col_ += static_cast<int>(n);
  }

  void SkipNewline() {
    if (text_[i_] == '\r' && i_ + 1 < text_.size() && text_[i_ + 1] == '\n') ++i_;
    ++i_;
    ++line_;
    col_ = 1;
  }

  void Push(TokenKind kind, std::string text) {
    tokens_.push_back(Token{kind, std::move(text), tok_line_, tok_col_});
  }

  void Mark() {
    tok_line_ = line_;
    tok_col_ = col_;
  }

  void LexIdent() {
    Mark();
    size_t start = i_;
    while (true) {
      while (i_ < text_.size() && IsIdentChar(text_[i_])) Advance(1);
      // DJ library names such as Math.max and Integer.MIN_VALUE are single tokens.
      if (dialect_ == Dialect::kDJ && i_ + 1 < text_.size() && text_[i_] == '.' &&
          IsIdentStart(text_[i_ + 1])) {
        Advance(1);
        continue;
      }
      break;
    }
    Push(TokenKind::kIdent, std::string(text_.substr(start, i_ - start)));
  }

  std::optional<ParseErrorReport> LexNumber() {
    Mark();
    size_t start = i_;
    bool is_float = false;
    while (i_ < text_.size() && IsDigit(text_[i_])) Advance(1);
    if (i_ + 1 < text_.size() && text_[i_] == '.' && IsDigit(text_[i_ + 1])) {
      is_float = true;
      Advance(1);
      while (i_ < text_.size() && IsDigit(text_[i_])) Advance(1);
    }
    if (i_ < text_.size() && (text_[i_] == 'e' || text_[i_] == 'E')) {
      size_t p = i_ + 1;
      if (p < text_.size() && (text_[p] == '+' || text_[p] == '-')) ++p;
      if (p < text_.size() && IsDigit(text_[p])) {
        is_float = true;
        Advance(p - i_);
        while (i_ < text_.size() && IsDigit(text_[i_])) Advance(1);
      }
    }
    if (i_ < text_.size() && IsIdentChar(text_[i_])) {
      return ParseErrorReport{line_, col_, "number", std::string(1, text_[i_])};
    }
    Push(is_float ? TokenKind::kFloat : TokenKind::kInt,
         std::string(text_.substr(start, i_ - start)));
    return std::nullopt;
  }

  std::optional<ParseErrorReport> LexString() {
    Mark();
    Advance(1);
    std::string out;
    while (true) {
      if (i_ >= text_.size() || text_[i_] == '\n') {
        return ParseErrorReport{line_, col_, "closing quote", "end of line"};
      }
      char c = text_[i_];
      if (c == '"') {
        Advance(1);
        break;
      }
      if (c == '\\') {
        if (i_ + 1 >= text_.size()) return ParseErrorReport{line_, col_, "escape", "end of input"};
        char e = text_[i_ + 1];
        switch (e) {
          case 'n':
            out += '\n';
            break;
          case 't':
            out += '\t';
            break;
          case '\\':
          case '"':
            out += e;
            break;
          default:
            return ParseErrorReport{line_, col_, "escape", std::string(1, e)};
        }
        Advance(2);
        continue;
      }
      out += c;
      Advance(1);
    }
    Push(TokenKind::kStr, std::move(out));
    return std::nullopt;
  }

  bool LexOp() {
    Mark();
    const bool py = dialect_ == Dialect::kDP;
    auto try_multi = [&](auto& ops) {
      for (std::string_view op : ops) {
        if (text_.substr(i_, op.size()) == op) {
          Advance(op.size());
          Push(TokenKind::kOp, std::string(op));
          return true;
        }
      }
      return false;
    };
    if (py ? try_multi(kPyOps3) : try_multi(kCOps3)) return true;
    std::string_view singles = py ? kPyOps1 : kCOps1;
    char c = text_[i_];
    if (singles.find(c) == std::string_view::npos) return false;
    if (c == '(' || c == '[' || c == '{') ++depth_;
    if ((c == ')' || c == ']' || c == '}') && depth_ > 0) --depth_;
    Advance(1);
    Push(TokenKind::kOp, std::string(1, c));
    return true;
  }

  Dialect dialect_;
  std::string_view text_;
  size_t i_ = 0;
  int line_ = 1;
  int col_ = 1;
  int tok_line_ = 1;
  int tok_col_ = 1;
  int depth_ = 0;
  std::vector<Token> tokens_;
};

}  // namespace

Expected<std::vector<Token>, ParseErrorReport> Tokenize(Dialect dialect, std::string_view text) {
  return Lexer(dialect, text).Run();
}

int TokenCount(Dialect dialect, std::string_view text) {
  auto tokens = Tokenize(dialect, text);
  if (!tokens) return 0;
  int n = 0;
  for (const Token& t : *tokens) {
    if (t.kind != TokenKind::kNewline && t.kind != TokenKind::kIndent &&
        t.kind != TokenKind::kDedent && t.kind != TokenKind::kEnd) {
      ++n;
    }
  }
  return n;
}

}  // namespace xlt
