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

#include <charconv>
#include <map>

#include "xlt/parse.h"

namespace xlt {
namespace {

struct ParseFailure {
  ParseErrorReport report;
};

std::optional<Type> ScalarTypeName(Dialect d, std::string_view name, bool boxed) {
  switch (d) {
    case Dialect::kDJ: {
      static const std::map<std::string_view, TypeKind, std::less<>> kPrim = {
          {"int", TypeKind::kI32},     {"long", TypeKind::kI64},
          {"double", TypeKind::kF64},  {"boolean", TypeKind::kBool},
          {"String", TypeKind::kStr}};
      static const std::map<std::string_view, TypeKind, std::less<>> kBoxed = {
          {"Integer", TypeKind::kI32}, {"Long", TypeKind::kI64},
          {"Double", TypeKind::kF64},  {"Boolean", TypeKind::kBool},
          {"String", TypeKind::kStr}};
      const auto& table = boxed ? kBoxed : kPrim;
      if (auto it = table.find(name); it != table.end()) return Type::Of(it->second);
      return std::nullopt;
    }
    case Dialect::kDC: {
      static const std::map<std::string_view, TypeKind, std::less<>> kNames = {
          {"int", TypeKind::kI32},   {"long", TypeKind::kI64}, {"double", TypeKind::kF64},
          {"bool", TypeKind::kBool}, {"string", TypeKind::kStr}};
      if (auto it = kNames.find(name); it != kNames.end()) return Type::Of(it->second);
      return std::nullopt;
    }
    case Dialect::kDP: {
      static const std::map<std::string_view, TypeKind, std::less<>> kNames = {
          {"int", TypeKind::kBigInt}, {"i32", TypeKind::kI32},  {"i64", TypeKind::kI64},
          {"float", TypeKind::kF64},  {"bool", TypeKind::kBool}, {"str", TypeKind::kStr}};
      if (auto it = kNames.find(name); it != kNames.end()) return Type::Of(it->second);
      return std::nullopt;
    }
  }
  return std::nullopt;
}

bool IsVoidName(Dialect d, std::string_view name) {
  return d == Dialect::kDP ? name == "None" : name == "void";
}

struct BuiltinSpelling {
  std::string_view name;
  Builtin builtin;
};

std::optional<Builtin> BuiltinFromName(Dialect d, std::string_view name) {
  static constexpr BuiltinSpelling kCommon[] = {
      {"len", Builtin::kLen}, {"push", Builtin::kPush}, {"pop", Builtin::kPop},
      {"peek", Builtin::kPeek}};
  for (const auto& s : kCommon) {
    if (s.name == name) return s.builtin;
  }
  if (d == Dialect::kDJ) {
    static constexpr BuiltinSpelling kJ[] = {{"Math.min", Builtin::kMin},
                                             {"Math.max", Builtin::kMax},
                                             {"Math.abs", Builtin::kAbs},
                                             {"System.out.println", Builtin::kPrint}};
    for (const auto& s : kJ) {
      if (s.name == name) return s.builtin;
    }
    return std::nullopt;
  }
  static constexpr BuiltinSpelling kOther[] = {{"min", Builtin::kMin},
                                               {"max", Builtin::kMax},
                                               {"abs", Builtin::kAbs},
                                               {"print", Builtin::kPrint}};
  for (const auto& s : kOther) {
    if (s.name == name) return s.builtin;
  }
  return std::nullopt;
}

std::optional<Extreme> ExtremeFromName(Dialect d, std::string_view name) {
  if (d == Dialect::kDJ) {
    if (name == "Integer.MAX_VALUE") return Extreme::kMax;
    if (name == "Integer.MIN_VALUE") return Extreme::kMin;
    return std::nullopt;
  }
  if (name == "INT_MAX") return Extreme::kMax;
  if (name == "INT_MIN") return Extreme::kMin;
  return std::nullopt;
}

std::optional<BinaryOp> CompoundFromToken(Dialect d, std::string_view tok) {
  if (tok.size() < 2 || tok.back() != '=' || tok == "==" || tok == "!=" || tok == "<=" ||
      tok == ">=") {
    return std::nullopt;
  }
  auto op = ProfileOf(d).BinaryFromToken(tok.substr(0, tok.size() - 1));
  if (op && (IsArithmetic(*op) || IsBitwise(*op) || IsShift(*op))) return op;
  return std::nullopt;
}

class Parser {
 public:
  Parser(Dialect dialect, std::vector<Token> tokens)
      : d_(dialect), profile_(ProfileOf(dialect)), toks_(std::move(tokens)) {}

  std::vector<FunctionDef> ParseFunctions() {
    std::vector<FunctionDef> out;
    SkipNewlines();
    while (Peek().kind != TokenKind::kEnd) {
      out.push_back(ParseFunction());
      SkipNewlines();
    }
    return out;
  }

  bool AtEnd() {
    SkipNewlines();
    return Peek().kind == TokenKind::kEnd;
  }

  FunctionDef ParseFunction() {
    FunctionDef fn;
    fn.dialect = d_;
    fn.pos = Pos();
    if (d_ == Dialect::kDP) {
      ExpectIdent("def");
      fn.name = ExpectName();
      ExpectOp("(");
      if (!IsOp(")")) {
        do {
          Param p;
          p.name = ExpectName();
          ExpectOp(":");
          p.type = ParseType(false);
          fn.params.push_back(std::move(p));
        } while (AcceptOp(","));
      }
      ExpectOp(")");
      ExpectOp("->");
      fn.ret = ParseType(true);
      ExpectOp(":");
      fn.body = ParseSuite();
    } else {
      if (d_ == Dialect::kDJ) ExpectIdent("static");
      fn.ret = ParseType(true);
      fn.name = ExpectName();
      ExpectOp("(");
      if (!IsOp(")")) {
        do {
          Param p;
          p.type = ParseType(false);
          p.name = ExpectName();
          fn.params.push_back(std::move(p));
        } while (AcceptOp(","));
      }
      ExpectOp(")");
      fn.body = ParseBraced();
    }
    return fn;
  }

 private:
  // ---- token helpers ----
  const Token& Peek(int ahead = 0) const {
    size_t i = std::min(pos_ + ahead, toks_.size() - 1);
    return toks_[i];
  }
  const Token& Next() {
    const Token& t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }
  SourcePos Pos() const { return SourcePos{Peek().line, Peek().col}; }

  static std::string Describe(const Token& t) {
    switch (t.kind) {
      case TokenKind::kNewline:
        return "newline";
      case TokenKind::kIndent:
        return "indent";
      case TokenKind::kDedent:
        return "dedent";
      case TokenKind::kEnd:
        return "end of input";
      case TokenKind::kStr:
        return "string literal";
      default:
        return "'" + t.text + "'";
    }
  }

  [[noreturn]] void Fail(std::string expected) const {
    const Token& t = Peek();
    throw ParseFailure{ParseErrorReport{t.line, t.col, std::move(expected), Describe(t)}};
  }

  bool IsOp(std::string_view text, int ahead = 0) const {
    const Token& t = Peek(ahead);
    return t.kind == TokenKind::kOp && t.text == text;
  }
  bool IsIdent(std::string_view text, int ahead = 0) const {
    const Token& t = Peek(ahead);
    return t.kind == TokenKind::kIdent && t.text == text;
  }
  bool AcceptOp(std::string_view text) {
    if (!IsOp(text)) return false;
    Next();
    return true;
  }
  void ExpectOp(std::string_view text) {
    if (!AcceptOp(text)) Fail("'" + std::string(text) + "'");
  }
  void ExpectIdent(std::string_view text) {
    if (!IsIdent(text)) Fail("'" + std::string(text) + "'");
    Next();
  }
  void ExpectKind(TokenKind kind, std::string what) {
    if (Peek().kind != kind) Fail(std::move(what));
    Next();
  }
  void SkipNewlines() {
    while (Peek().kind == TokenKind::kNewline) Next();
  }

  bool IsKeyword(std::string_view s) const {
    static const std::vector<std::string_view> kC = {
        "if", "else", "while", "return", "break", "continue", "static", "true", "false"};
    static const std::vector<std::string_view> kPy = {
        "if", "elif", "else", "while", "return", "break", "continue", "def", "pass",
        "and", "or", "not", "True", "False", "None"};
    const auto& list = d_ == Dialect::kDP ? kPy : kC;
    if (std::find(list.begin(), list.end(), s) != list.end()) return true;
    if (ScalarTypeName(d_, s, false) || IsVoidName(d_, s)) return true;
    if (ExtremeFromName(d_, s)) return true;
    // Builtin names stay usable as variables; a call is recognized by its '('.
    if (d_ == Dialect::kDJ && s.find('.') != std::string_view::npos) return true;
    return false;
  }

  std::string ExpectName() {
    const Token& t = Peek();
    if (t.kind != TokenKind::kIdent || IsKeyword(t.text) ||
        t.text.find('.') != std::string::npos) {
      Fail("identifier");
    }
    return Next().text;
  }

  // ---- types ----
  bool AtTypeStart() const {
    const Token& t = Peek();
    if (t.kind != TokenKind::kIdent) return false;
    if (d_ == Dialect::kDJ && t.text == "List") return true;
    if (d_ == Dialect::kDC && (t.text == "array" || t.text == "vector")) return true;
    if (d_ == Dialect::kDP && t.text == "list") return true;
    return ScalarTypeName(d_, t.text, false).has_value();
  }

  Type ParseType(bool allow_void) {
    const Token& t = Peek();
    if (t.kind != TokenKind::kIdent) Fail("type");
    if (IsVoidName(d_, t.text)) {
      if (!allow_void) Fail("non-void type");
      Next();
      return Type::Of(TypeKind::kVoid);
    }
    if (d_ == Dialect::kDJ && t.text == "List") {
      Next();
      ExpectOp("<");
      Type elem = ScalarNamed(true);
      ExpectOp(">");
      return Type::LstOf(elem.kind);
    }
    if (d_ == Dialect::kDC && (t.text == "array" || t.text == "vector")) {
      bool arr = Next().text == "array";
      ExpectOp("<");
      Type elem = ScalarNamed(false);
      ExpectOp(">");
      return arr ? Type::ArrOf(elem.kind) : Type::LstOf(elem.kind);
    }
    if (d_ == Dialect::kDP && t.text == "list") {
      Next();
      ExpectOp("[");
      Type elem = ScalarNamed(false);
      ExpectOp("]");
      return Type::LstOf(elem.kind);
    }
    Type scalar = ScalarNamed(false);
    if (d_ == Dialect::kDJ && IsOp("[") && IsOp("]", 1)) {
      Next();
      Next();
      return Type::ArrOf(scalar.kind);
    }
    return scalar;
  }

  Type ScalarNamed(bool boxed) {
    const Token& t = Peek();
    if (t.kind == TokenKind::kIdent) {
      if (auto type = ScalarTypeName(d_, t.text, boxed)) {
        Next();
        return *type;
      }
    }
    Fail("scalar type");
  }

  // ---- statements ----
  std::vector<Stmt> ParseBraced() {
    ExpectOp("{");
    std::vector<Stmt> out;
    while (!IsOp("}")) {
      if (Peek().kind == TokenKind::kEnd) Fail("'}'");
      out.push_back(ParseCStmt());
    }
    Next();
    return out;
  }

  std::vector<Stmt> ParseSuite() {
    ExpectKind(TokenKind::kNewline, "newline");
    ExpectKind(TokenKind::kIndent, "indented block");
    std::vector<Stmt> out;
    while (Peek().kind != TokenKind::kDedent) {
      if (Peek().kind == TokenKind::kEnd) Fail("dedent");
      if (IsIdent("pass")) {
        Next();
        ExpectKind(TokenKind::kNewline, "newline");
        continue;
      }
      out.push_back(ParsePyStmt());
    }
    Next();
    return out;
  }

  Stmt ParseCStmt() {
    SourcePos pos = Pos();
    Stmt s;
    if (IsIdent("if")) {
      s = ParseCIf();
    } else if (IsIdent("while")) {
      Next();
      ExpectOp("(");
      Expr cond = ParseExpr(kTernaryLevel);
      ExpectOp(")");
      s = Stmt::While(std::move(cond), ParseBraced());
    } else if (IsIdent("return")) {
      Next();
      if (AcceptOp(";")) {
        s = Stmt::Return(std::nullopt);
      } else {
        s = Stmt::Return(ParseExpr(kTernaryLevel));
        ExpectOp(";");
      }
    } else if (IsIdent("break") || IsIdent("continue")) {
      s = Next().text == "break" ? Stmt::Break() : Stmt::Continue();
      ExpectOp(";");
    } else if (AtTypeStart()) {
      Type type = ParseType(false);
      std::string name = ExpectName();
      ExpectOp("=");
      s = Stmt::Decl(std::move(name), type, ParseExpr(kTernaryLevel));
      ExpectOp(";");
    } else {
      s = ParseSimple();
      ExpectOp(";");
    }
    s.pos = pos;
    return s;
  }

  Stmt ParseCIf() {
    SourcePos pos = Pos();
    ExpectIdent("if");
    ExpectOp("(");
    Expr cond = ParseExpr(kTernaryLevel);
    ExpectOp(")");
    std::vector<Stmt> body = ParseBraced();
    std::vector<Stmt> orelse;
    if (IsIdent("else")) {
      Next();
      if (IsIdent("if")) {
        orelse.push_back(ParseCIf());
      } else {
        orelse = ParseBraced();
      }
    }
    Stmt s = Stmt::If(std::move(cond), std::move(body), std::move(orelse));
    s.pos = pos;
    return s;
  }

  Stmt ParsePyStmt() {
    SourcePos pos = Pos();
    Stmt s;
    if (IsIdent("if")) {
      return ParsePyIf("if");
    } else if (IsIdent("while")) {
      Next();
      Expr cond = ParseExpr(kTernaryLevel);
      ExpectOp(":");
      s = Stmt::While(std::move(cond), ParseSuite());
    } else {
      if (IsIdent("return")) {
        Next();
        if (Peek().kind == TokenKind::kNewline) {
          s = Stmt::Return(std::nullopt);
        } else {
          s = Stmt::Return(ParseExpr(kTernaryLevel));
        }
      } else if (IsIdent("break") || IsIdent("continue")) {
        s = Next().text == "break" ? Stmt::Break() : Stmt::Continue();
      } else if (Peek().kind == TokenKind::kIdent && IsOp(":", 1)) {
        std::string name = ExpectName();
        ExpectOp(":");
        Type type = ParseType(false);
        ExpectOp("=");
        s = Stmt::Decl(std::move(name), type, ParseExpr(kTernaryLevel));
      } else {
        s = ParseSimple();
      }
      ExpectKind(TokenKind::kNewline, "newline");
    }
    s.pos = pos;
    return s;
  }

  Stmt ParsePyIf(std::string_view keyword) {
    SourcePos pos = Pos();
    ExpectIdent(keyword);
    Expr cond = ParseExpr(kTernaryLevel);
    ExpectOp(":");
    std::vector<Stmt> body = ParseSuite();
    std::vector<Stmt> orelse;
    if (IsIdent("elif")) {
      orelse.push_back(ParsePyIf("elif"));
    } else if (IsIdent("else")) {
      Next();
      ExpectOp(":");
      orelse = ParseSuite();
    }
    Stmt s = Stmt::If(std::move(cond), std::move(body), std::move(orelse));
    s.pos = pos;
    return s;
  }

  // Assignment or call statement.
  Stmt ParseSimple() {
    Expr lhs = ParseExpr(kTernaryLevel);
    const Token& t = Peek();
    if (t.kind == TokenKind::kOp) {
      if (t.text == "=") {
        Next();
        return Stmt::Assign(std::move(lhs), ParseExpr(kTernaryLevel));
      }
      if (auto op = CompoundFromToken(d_, t.text)) {
        Next();
        return Stmt::Assign(std::move(lhs), ParseExpr(kTernaryLevel), *op);
      }
    }
    return Stmt::ExprStmt(std::move(lhs));
  }

  // ---- expressions ----
  std::optional<BinaryOp> PeekBinary() const {
    const Token& t = Peek();
    if (t.kind != TokenKind::kOp && t.kind != TokenKind::kIdent) return std::nullopt;
    return profile_.BinaryFromToken(t.text);
  }

  std::optional<UnaryOp> PeekUnary() const {
    const Token& t = Peek();
    if (t.kind != TokenKind::kOp && t.kind != TokenKind::kIdent) return std::nullopt;
    for (UnaryOp op : {UnaryOp::kNeg, UnaryOp::kNot, UnaryOp::kBitNot}) {
      if (profile_.UnaryToken(op) == t.text) return op;
    }
    return std::nullopt;
  }

  Expr ParseExpr(int min_level) {
    if (min_level > kTernaryLevel) return ParseBinary(min_level);
    SourcePos pos = Pos();
    Expr first = ParseBinary(kTernaryLevel + 1);
    if (d_ == Dialect::kDP) {
      if (!IsIdent("if")) return first;
      Next();
      Expr cond = ParseBinary(kTernaryLevel + 1);
      ExpectIdent("else");
      Expr other = ParseExpr(kTernaryLevel);
      Expr e = Expr::Ternary(std::move(cond), std::move(first), std::move(other));
      e.pos = pos;
      return e;
    }
    if (!AcceptOp("?")) return first;
    Expr then_e = ParseExpr(kTernaryLevel);
    ExpectOp(":");
    Expr else_e = ParseExpr(kTernaryLevel);
    Expr e = Expr::Ternary(std::move(first), std::move(then_e), std::move(else_e));
    e.pos = pos;
    return e;
  }

  Expr ParseBinary(int min_level) {
    SourcePos pos = Pos();
    Expr lhs = ParsePrefix(min_level);
    while (true) {
      auto op = PeekBinary();
      if (!op) break;
      int level = profile_.BinaryLevel(*op);
      if (level < min_level) break;
      Next();
      Expr rhs;
      switch (profile_.BinaryAssoc(*op)) {
        case Assoc::kLeft:
          rhs = ParseBinary(level + 1);
          break;
        case Assoc::kRight:
          rhs = ParseBinary(std::min(level, profile_.UnaryLevel(UnaryOp::kNeg)));
          break;
        case Assoc::kNone:
          rhs = ParseBinary(level + 1);
          if (auto next = PeekBinary(); next && profile_.BinaryLevel(*next) == level) {
            Fail("end of comparison (comparisons do not chain)");
          }
          break;
      }
      lhs = Expr::Binary(*op, std::move(lhs), std::move(rhs));
      lhs.pos = pos;
    }
    return lhs;
  }

  Expr ParsePrefix(int min_level) {
    SourcePos pos = Pos();
    if (auto op = PeekUnary()) {
      int level = profile_.UnaryLevel(*op);
      if (level < min_level) Fail("operand");
      Next();
      size_t start = pos_;
      bool literal = Peek().kind == TokenKind::kInt || Peek().kind == TokenKind::kFloat;
      Expr operand = ParseBinary(level);
      Expr e;
      if (*op == UnaryOp::kNeg && literal && pos_ == start + 1) {
        // A minus sign directly in front of a number is part of the literal.
        e = std::move(operand);
        if (e.kind == ExprKind::kIntLit) {
          e.int_value = -e.int_value;
        } else {
          e.float_value = -e.float_value;
        }
      } else {
        e = Expr::Unary(*op, std::move(operand));
      }
      e.pos = pos;
      return e;
    }
    if (d_ != Dialect::kDP && IsOp("(") && Peek(1).kind == TokenKind::kIdent &&
        IsOp(")", 2)) {
      if (auto type = ScalarTypeName(d_, Peek(1).text, false)) {
        int level = profile_.CastLevel();
        if (level < min_level) Fail("operand");
        Next();
        Next();
        Next();
        Expr e = Expr::Cast(*type, ParseBinary(level));
        e.pos = pos;
        return e;
      }
    }
    return ParsePostfix();
  }

  Expr ParsePostfix() {
    SourcePos pos = Pos();
    Expr e = ParsePrimary();
    while (IsOp("[")) {
      Next();
      Expr index = ParseExpr(kTernaryLevel);
      ExpectOp("]");
      e = Expr::Index(std::move(e), std::move(index));
      e.pos = pos;
    }
    return e;
  }

  Expr ParsePrimary() {
    SourcePos pos = Pos();
    const Token& t = Peek();
    Expr e;
    switch (t.kind) {
      case TokenKind::kInt:
        e = Expr::IntLit(BigInt(Next().text));
        break;
      case TokenKind::kFloat: {
        const std::string& text = Next().text;
        double v = 0;
        auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
        if (ec != std::errc()) Fail("float literal");
        e = Expr::FloatLit(v);
        break;
      }
      case TokenKind::kStr:
        e = Expr::StrLit(Next().text);
        break;
      case TokenKind::kOp:
        if (t.text == "(") {
          Next();
          e = ParseExpr(kTernaryLevel);
          ExpectOp(")");
          return e;
        }
        Fail("expression");
      case TokenKind::kIdent:
        e = ParseNamed();
        break;
      default:
        Fail("expression");
    }
    e.pos = pos;
    return e;
  }

  Expr ParseNamed() {
    const std::string& name = Peek().text;
    const bool py = d_ == Dialect::kDP;
    if (name == (py ? "True" : "true")) {
      Next();
      return Expr::BoolLit(true);
    }
    if (name == (py ? "False" : "false")) {
      Next();
      return Expr::BoolLit(false);
    }
    if (auto ex = ExtremeFromName(d_, name)) {
      Next();
      return Expr::ExtremeLit(*ex);
    }
    if (auto b = BuiltinFromName(d_, name); b && IsOp("(", 1)) {
      Next();
      return Expr::Call(*b, ParseArgs());
    }
    if (py && IsOp("(", 1)) {
      std::optional<Type> cast;
      if (name == "float") cast = Type::Of(TypeKind::kF64);
      if (name == "int") cast = Type::Of(TypeKind::kBigInt);
      if (name == "i32") cast = Type::Of(TypeKind::kI32);
      if (name == "i64") cast = Type::Of(TypeKind::kI64);
      if (cast) {
        Next();
        ExpectOp("(");
        Expr operand = ParseExpr(kTernaryLevel);
        ExpectOp(")");
        return Expr::Cast(*cast, std::move(operand));
      }
    }
    return Expr::Var(ExpectName());
  }

  std::vector<Expr> ParseArgs() {
    ExpectOp("(");
    std::vector<Expr> args;
    if (!IsOp(")")) {
      do {
        args.push_back(ParseExpr(kTernaryLevel));
      } while (AcceptOp(","));
    }
    ExpectOp(")");
    return args;
  }

  Dialect d_;
  const SemanticsProfile& profile_;
  std::vector<Token> toks_;
  size_t pos_ = 0;
};

}  // namespace

Expected<std::vector<FunctionDef>, ParseErrorReport> ParseMany(Dialect dialect,
                                                               std::string_view text) {
  auto tokens = Tokenize(dialect, text);
  if (!tokens) return MakeUnexpected(tokens.error());
  try {
    Parser parser(dialect, std::move(*tokens));
    return parser.ParseFunctions();
  } catch (ParseFailure& f) {
    return MakeUnexpected(std::move(f.report));
  }
}

Expected<FunctionDef, ParseErrorReport> Parse(Dialect dialect, std::string_view text) {
  auto tokens = Tokenize(dialect, text);
  if (!tokens) return MakeUnexpected(tokens.error());
  try {
    Parser parser(dialect, std::move(*tokens));
    if (parser.AtEnd()) return MakeUnexpected(ParseErrorReport{1, 1, "function", "end of input"});
    FunctionDef fn = parser.ParseFunction();
    if (!parser.AtEnd()) {
      return MakeUnexpected(ParseErrorReport{0, 0, "end of input", "trailing tokens"});
    }
    return fn;
  } catch (ParseFailure& f) {
    return MakeUnexpected(std::move(f.report));
  }
}

}  // namespace xlt
