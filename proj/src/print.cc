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

#include <cmath>

#include "xlt/parse.h"

namespace xlt {

namespace {

std::string ScalarName(TypeKind k, Dialect d, bool boxed) {
  switch (d) {
    case Dialect::kDJ:
      switch (k) {
        case TypeKind::kI32:
          return boxed ? "Integer" : "int";
        case TypeKind::kI64:
        case TypeKind::kBigInt:
          return boxed ? "Long" : "long";
        case TypeKind::kF64:
          return boxed ? "Double" : "double";
        case TypeKind::kBool:
          return boxed ? "Boolean" : "boolean";
        case TypeKind::kStr:
          return "String";
        default:
          return "void";
      }
    case Dialect::kDC:
      switch (k) {
        case TypeKind::kI32:
          return "int";
        case TypeKind::kI64:
        case TypeKind::kBigInt:
          return "long";
        case TypeKind::kF64:
          return "double";
        case TypeKind::kBool:
          return "bool";
        case TypeKind::kStr:
          return "string";
        default:
          return "void";
      }
    case Dialect::kDP:
      switch (k) {
        case TypeKind::kI32:
          return "i32";
        case TypeKind::kI64:
          return "i64";
        case TypeKind::kBigInt:
          return "int";
        case TypeKind::kF64:
          return "float";
        case TypeKind::kBool:
          return "bool";
        case TypeKind::kStr:
          return "str";
        default:
          return "None";
      }
  }
  return "?";
}

std::string Quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '\n':
        out += "\\n";
        break;
      case '\t':
        out += "\\t";
        break;
      case '\\':
      case '"':
        out += '\\';
        out += c;
        break;
      default:
        out += c;
    }
  }
  return out + "\"";
}

std::string_view BuiltinSpelling(Builtin b, Dialect d) {
  if (d == Dialect::kDJ) {
    switch (b) {
      case Builtin::kMin:
        return "Math.min";
      case Builtin::kMax:
        return "Math.max";
      case Builtin::kAbs:
        return "Math.abs";
      case Builtin::kPrint:
        return "System.out.println";
      default:
        break;
    }
  }
  return BuiltinName(b);
}

bool IsNonNegativeLiteral(const Expr& e) {
  if (e.kind == ExprKind::kIntLit) return e.int_value >= 0;
  if (e.kind == ExprKind::kFloatLit) return !std::signbit(e.float_value);
  return false;
}

class ExprPrinter {
 public:
  ExprPrinter(Dialect d, const PrintOptions& options)
      : d_(d), profile_(ProfileOf(d)), options_(options) {}

  std::string Print(const Expr& e, int min_level, bool bare = false) {
    std::string s = Render(e);
    if (!bare && ExprLevel(e, d_) < min_level) return "( " + s + " )";
    return s;
  }

 private:
  std::string Kid(const Expr& e, size_t i) {
    bool bare = e.id >= 0 && options_.bare_children.count({e.id, static_cast<int>(i)}) != 0;
    return Print(e.kids[i], ChildMinLevel(e, i, d_), bare);
  }

  std::string Render(const Expr& e) {
    switch (e.kind) {
      case ExprKind::kIntLit:
        if (e.int_value < 0) return "- " + BigInt(-e.int_value).str();
        return e.int_value.str();
      case ExprKind::kFloatLit:
        if (std::signbit(e.float_value)) return "- " + FormatDouble(-e.float_value);
        return FormatDouble(e.float_value);
      case ExprKind::kBoolLit:
        if (d_ == Dialect::kDP) return e.bool_value ? "True" : "False";
        return e.bool_value ? "true" : "false";
      case ExprKind::kStrLit:
        return Quote(e.text);
      case ExprKind::kExtreme:
        if (d_ == Dialect::kDJ) {
          return e.extreme == Extreme::kMax ? "Integer.MAX_VALUE" : "Integer.MIN_VALUE";
        }
        return e.extreme == Extreme::kMax ? "INT_MAX" : "INT_MIN";
      case ExprKind::kVar:
        return e.text;
      case ExprKind::kUnary: {
        std::string tok(profile_.UnaryToken(e.unary));
        if (e.unary == UnaryOp::kNeg && IsNonNegativeLiteral(e.kids[0])) {
          // Keeps `- ( 1 )` distinct from the literal -1.
          return tok + " ( " + Print(e.kids[0], kPrimaryLevel) + " )";
        }
        return tok + " " + Kid(e, 0);
      }
      case ExprKind::kBinary:
        return Kid(e, 0) + " " + std::string(profile_.BinaryToken(e.binary)) + " " + Kid(e, 1);
      case ExprKind::kTernary:
        if (d_ == Dialect::kDP) return Kid(e, 1) + " if " + Kid(e, 0) + " else " + Kid(e, 2);
        return Kid(e, 0) + " ? " + Kid(e, 1) + " : " + Kid(e, 2);
      case ExprKind::kCall: {
        std::string out = std::string(BuiltinSpelling(e.builtin, d_)) + " (";
        for (size_t i = 0; i < e.kids.size(); ++i) out += (i == 0 ? " " : " , ") + Kid(e, i);
        return out + " )";
      }
      case ExprKind::kIndex:
        return Kid(e, 0) + " [ " + Kid(e, 1) + " ]";
      case ExprKind::kCast:
        if (d_ == Dialect::kDP) {
          std::string name = e.cast_type.kind == TypeKind::kF64
                                 ? "float"
                                 : ScalarName(e.cast_type.kind, d_, false);
          return name + " ( " + Kid(e, 0) + " )";
        }
        return "( " + ScalarName(e.cast_type.kind, d_, false) + " ) " + Kid(e, 0);
    }
    return "?";
  }

  Dialect d_;
  const SemanticsProfile& profile_;
  const PrintOptions& options_;
};

class FunctionPrinter {
 public:
  FunctionPrinter(Dialect d, const PrintOptions& options) : d_(d), exprs_(d, options) {}

  std::string Run(const FunctionDef& fn) {
    if (d_ == Dialect::kDP) {
      std::string head = "def " + fn.name + " (";
      for (size_t i = 0; i < fn.params.size(); ++i) {
        head += (i == 0 ? " " : " , ") + fn.params[i].name + " : " +
                PrintType(fn.params[i].type, d_);
      }
      head += fn.params.empty() ? ")" : " )";
      Line(0, head + " -> " + PrintType(fn.ret, d_) + " :");
      Suite(fn.body, 1);
    } else {
      std::string head = d_ == Dialect::kDJ ? "static " : "";
      head += PrintType(fn.ret, d_) + " " + fn.name + " (";
      for (size_t i = 0; i < fn.params.size(); ++i) {
        head += (i == 0 ? " " : " , ") + PrintType(fn.params[i].type, d_) + " " +
                fn.params[i].name;
      }
      head += fn.params.empty() ? ")" : " )";
      Line(0, head + " {");
      Braced(fn.body, 1);
      Line(0, "}");
    }
    return out_;
  }

 private:
  void Line(int depth, const std::string& text) {
    out_.append(static_cast<size_t>(depth) * 4, ' ');
    out_ += text;
    out_ += '\n';
  }

  std::string E(const Expr& e) { return exprs_.Print(e, kTernaryLevel); }

  std::string Simple(const Stmt& s) {
    switch (s.kind) {
      case StmtKind::kDecl:
        if (d_ == Dialect::kDP) return s.name + " : " + PrintType(s.decl_type, d_) + " = " + E(s.exprs[0]);
        return PrintType(s.decl_type, d_) + " " + s.name + " = " + E(s.exprs[0]);
      case StmtKind::kAssign: {
        std::string op = "=";
        if (s.compound) op = std::string(ProfileOf(d_).BinaryToken(*s.compound)) + "=";
        return E(s.exprs[0]) + " " + op + " " + E(s.exprs[1]);
      }
      case StmtKind::kReturn:
        return s.exprs.empty() ? "return" : "return " + E(s.exprs[0]);
      case StmtKind::kExprStmt:
        return E(s.exprs[0]);
      case StmtKind::kBreak:
        return "break";
      case StmtKind::kContinue:
        return "continue";
      default:
        return "";
    }
  }

  void Braced(const std::vector<Stmt>& body, int depth) {
    for (const Stmt& s : body) {
      if (s.kind == StmtKind::kIf) {
        CIf(s, depth, "if");
      } else if (s.kind == StmtKind::kWhile) {
        Line(depth, "while ( " + E(s.exprs[0]) + " ) {");
        Braced(s.body, depth + 1);
        Line(depth, "}");
      } else {
        Line(depth, Simple(s) + " ;");
      }
    }
  }

  void CIf(const Stmt& s, int depth, const std::string& lead) {
    Line(depth, lead + " ( " + E(s.exprs[0]) + " ) {");
    Braced(s.body, depth + 1);
    if (s.orelse.size() == 1 && s.orelse[0].kind == StmtKind::kIf) {
      out_.append(static_cast<size_t>(depth) * 4, ' ');
      out_ += "} ";
      // The chained `else if` line continues the closing brace line.
      size_t mark = out_.size();
      CIf(s.orelse[0], depth, "else if");
      out_.erase(mark, static_cast<size_t>(depth) * 4);
      return;
    }
    if (!s.orelse.empty()) {
      Line(depth, "} else {");
      Braced(s.orelse, depth + 1);
    }
    Line(depth, "}");
  }

  void Suite(const std::vector<Stmt>& body, int depth) {
    if (body.empty()) Line(depth, "pass");
    for (const Stmt& s : body) {
      if (s.kind == StmtKind::kIf) {
        PyIf(s, depth, "if");
      } else if (s.kind == StmtKind::kWhile) {
        Line(depth, "while " + E(s.exprs[0]) + " :");
        Suite(s.body, depth + 1);
      } else {
        Line(depth, Simple(s));
      }
    }
  }

  void PyIf(const Stmt& s, int depth, const std::string& lead) {
    Line(depth, lead + " " + E(s.exprs[0]) + " :");
    Suite(s.body, depth + 1);
    if (s.orelse.size() == 1 && s.orelse[0].kind == StmtKind::kIf) {
      PyIf(s.orelse[0], depth, "elif");
    } else if (!s.orelse.empty()) {
      Line(depth, "else :");
      Suite(s.orelse, depth + 1);
    }
  }

  Dialect d_;
  ExprPrinter exprs_;
  std::string out_;
};

}  // namespace

std::string PrintType(const Type& type, Dialect dialect) {
  if (type.kind == TypeKind::kArr) {
    if (dialect == Dialect::kDJ) return ScalarName(type.elem, dialect, false) + " [ ]";
    if (dialect == Dialect::kDC) return "array < " + ScalarName(type.elem, dialect, false) + " >";
    return "list [ " + ScalarName(type.elem, dialect, false) + " ]";
  }
  if (type.kind == TypeKind::kLst) {
    if (dialect == Dialect::kDJ) return "List < " + ScalarName(type.elem, dialect, true) + " >";
    if (dialect == Dialect::kDC) return "vector < " + ScalarName(type.elem, dialect, false) + " >";
    return "list [ " + ScalarName(type.elem, dialect, false) + " ]";
  }
  return ScalarName(type.kind, dialect, false);
}

std::string PrintExpr(const Expr& e, Dialect dialect) {
  PrintOptions options;
  return ExprPrinter(dialect, options).Print(e, kTernaryLevel);
}

std::string Print(const FunctionDef& fn, const PrintOptions& options) {
  return FunctionPrinter(fn.dialect, options).Run(fn);
}

int ExprLevel(const Expr& e, Dialect dialect) {
  const SemanticsProfile& profile = ProfileOf(dialect);
  switch (e.kind) {
    case ExprKind::kIntLit:
      return e.int_value < 0 ? profile.UnaryLevel(UnaryOp::kNeg) : kPrimaryLevel;
    case ExprKind::kFloatLit:
      return std::signbit(e.float_value) ? profile.UnaryLevel(UnaryOp::kNeg) : kPrimaryLevel;
    case ExprKind::kUnary:
      return profile.UnaryLevel(e.unary);
    case ExprKind::kBinary:
      return profile.BinaryLevel(e.binary);
    case ExprKind::kTernary:
      return kTernaryLevel;
    case ExprKind::kCast:
      return profile.CastLevel();
    default:
      return kPrimaryLevel;
  }
}

int ChildMinLevel(const Expr& parent, size_t index, Dialect dialect) {
  const SemanticsProfile& profile = ProfileOf(dialect);
  switch (parent.kind) {
    case ExprKind::kUnary:
      return profile.UnaryLevel(parent.unary);
    case ExprKind::kCast:
      return dialect == Dialect::kDP ? kTernaryLevel : profile.CastLevel();
    case ExprKind::kBinary: {
      int level = profile.BinaryLevel(parent.binary);
      switch (profile.BinaryAssoc(parent.binary)) {
        case Assoc::kLeft:
          return index == 0 ? level : level + 1;
        case Assoc::kRight:
          return index == 0 ? level + 1 : std::min(level, profile.UnaryLevel(UnaryOp::kNeg));
        case Assoc::kNone:
          return level + 1;
      }
      return level;
    }
    case ExprKind::kTernary:
      if (dialect == Dialect::kDP) return index == 2 ? kTernaryLevel : kTernaryLevel + 1;
      return index == 0 ? kTernaryLevel + 1 : kTernaryLevel;
    case ExprKind::kIndex:
      return index == 0 ? kPrimaryLevel : kTernaryLevel;
    default:
      return kTernaryLevel;
  }
}

}  // namespace xlt
