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

#include "xlt/mutation.h"

#include <map>
#include <set>

#include "xlt/parallel.h"
#include "xlt/parse.h"

namespace xlt {

std::string_view MutationOperatorName(MutationOperator op) {
  switch (op) {
    case MutationOperator::kReplaceArith:
      return "ReplaceArith";
    case MutationOperator::kReplaceRelational:
      return "ReplaceRelational";
    case MutationOperator::kReplaceConstant:
      return "ReplaceConstant";
    case MutationOperator::kInsertUnary:
      return "InsertUnary";
    case MutationOperator::kReplaceVariable:
      return "ReplaceVariable";
    case MutationOperator::kDeleteCall:
      return "DeleteCall";
    case MutationOperator::kSwapTernaryBranches:
      return "SwapTernaryBranches";
  }
  return "?";
}

namespace {

const std::vector<std::vector<BinaryOp>>& OperatorGroups() {
  static const std::vector<std::vector<BinaryOp>> kGroups = {
      {BinaryOp::kAdd, BinaryOp::kSub, BinaryOp::kMul, BinaryOp::kDiv, BinaryOp::kFloorDiv,
       BinaryOp::kMod, BinaryOp::kPow},
      {BinaryOp::kBitAnd, BinaryOp::kBitOr, BinaryOp::kBitXor},
      {BinaryOp::kShl, BinaryOp::kShr},
      {BinaryOp::kLt, BinaryOp::kLe, BinaryOp::kGt, BinaryOp::kGe, BinaryOp::kEq, BinaryOp::kNe},
      {BinaryOp::kAnd, BinaryOp::kOr},
  };
  return kGroups;
}

std::vector<BinaryOp> Alternatives(BinaryOp op, const SemanticsProfile& profile) {
  for (const auto& group : OperatorGroups()) {
    if (std::find(group.begin(), group.end(), op) == group.end()) continue;
    std::vector<BinaryOp> out;
    for (BinaryOp other : group) {
      if (other != op && profile.Supports(other)) out.push_back(other);
    }
    return out;
  }
  return {};
}

bool RemoveStmt(std::vector<Stmt>& block, int id) {
  for (auto it = block.begin(); it != block.end(); ++it) {
    if (it->id == id) {
      block.erase(it);
      return true;
    }
    if (RemoveStmt(it->body, id) || RemoveStmt(it->orelse, id)) return true;
  }
  return false;
}

std::optional<Expr> DefaultValue(const Type& t) {
  if (t.IsInt()) return Expr::IntLit(0);
  switch (t.kind) {
    case TypeKind::kF64:
      return Expr::FloatLit(0.0);
    case TypeKind::kBool:
      return Expr::BoolLit(false);
    case TypeKind::kStr:
      return Expr::StrLit("");
    default:
      return std::nullopt;
  }
}

struct VarInfo {
  std::string name;
  Type type;
  int declared_at;  // -1 for parameters
};

struct Candidate {
  MutationOperator op;
  std::string description;
  std::function<void(FunctionDef&)> apply;
};

class Generator {
 public:
  explicit Generator(const TypedFunction& fn)
      : fn_(fn), base_(fn.def), profile_(ProfileOf(fn.dialect())) {}

  std::vector<Mutant> Run() {
    for (size_t i = 0; i < base_.params.size(); ++i) {
      vars_.push_back({base_.params[i].name, fn_.slot_types[i], -1});
    }
    std::set<std::string> seen_names;
    for (const auto& v : vars_) seen_names.insert(v.name);
    ForEachNode(base_, [&](NodeRef& ref) {
      if (ref.stmt == nullptr) {
        for (const Expr& k : ref.expr->kids) {
          if (ref.expr->kind == ExprKind::kUnary) under_unary_.insert(k.id);
        }
        return;
      }
      Stmt& s = *ref.stmt;
      if (s.kind == StmtKind::kDecl && seen_names.insert(s.name).second) {
        vars_.push_back({s.name, fn_.slot_types[s.slot], s.id});
      }
      if (s.kind == StmtKind::kAssign && s.exprs[0].kind == ExprKind::kVar) {
        targets_.insert(s.exprs[0].id);
      }
      if (s.kind == StmtKind::kExprStmt) call_stmts_[s.exprs[0].id] = s.id;
    });

    std::set<std::string> texts = {Print(base_)};
    std::vector<Mutant> out;
    ForEachNode(base_, [&](NodeRef& ref) {
      for (Candidate& c : CandidatesAt(ref)) {
        FunctionDef copy = base_;
        c.apply(copy);
        std::string text = Print(copy);
        if (!texts.insert(text).second) continue;
        auto typed = Typecheck(copy);
        if (!typed) continue;
        Mutant m;
        m.index = static_cast<int>(out.size());
        m.op = c.op;
        m.node_id = ref.id;
        m.site = ref.path;
        m.description = std::move(c.description);
        m.mutated = std::move(*typed);
        out.push_back(std::move(m));
      }
    });
    return out;
  }

 private:
  static std::function<void(FunctionDef&)> Replace(int id, Expr replacement) {
    return [id, replacement = std::move(replacement)](FunctionDef& f) {
      RewriteNode(f, id, [&](NodeRef& r) { *r.expr = replacement; });
    };
  }

  std::string Show(const Expr& e) const { return PrintExpr(e, base_.dialect); }

  std::vector<Candidate> CandidatesAt(const NodeRef& ref) {
    std::vector<Candidate> out;
    if (ref.stmt != nullptr) {
      const Stmt& s = *ref.stmt;
      if (s.kind == StmtKind::kAssign && s.compound) {
        for (BinaryOp alt : Alternatives(*s.compound, profile_)) {
          int id = s.id;
          out.push_back({MutationOperator::kReplaceArith,
                         std::string(profile_.BinaryToken(*s.compound)) + "= -> " +
                             std::string(profile_.BinaryToken(alt)) + "=",
                         [id, alt](FunctionDef& f) {
                           RewriteNode(f, id, [&](NodeRef& r) { r.stmt->compound = alt; });
                         }});
        }
      }
      return out;
    }
    const Expr& e = *ref.expr;
    const int id = ref.id;
    switch (e.kind) {
      case ExprKind::kBinary: {
        auto op = (IsComparison(e.binary) || IsLogical(e.binary))
                      ? MutationOperator::kReplaceRelational
                      : MutationOperator::kReplaceArith;
        for (BinaryOp alt : Alternatives(e.binary, profile_)) {
          Expr m = e;
          m.binary = alt;
          out.push_back({op,
                         std::string(profile_.BinaryToken(e.binary)) + " -> " +
                             std::string(profile_.BinaryToken(alt)),
                         Replace(id, std::move(m))});
        }
        break;
      }
      case ExprKind::kIntLit:
      case ExprKind::kExtreme:
        for (int c : {-1, 0, 1}) {
          if (e.kind == ExprKind::kIntLit && e.int_value == c) continue;
          out.push_back({MutationOperator::kReplaceConstant, Show(e) + " -> " + std::to_string(c),
                         Replace(id, Expr::IntLit(c))});
        }
        break;
      case ExprKind::kFloatLit:
        for (double c : {-1.0, 0.0, 1.0}) {
          if (e.float_value == c) continue;
          out.push_back({MutationOperator::kReplaceConstant, Show(e) + " -> " + FormatDouble(c),
                         Replace(id, Expr::FloatLit(c))});
        }
        break;
      case ExprKind::kBoolLit:
        out.push_back({MutationOperator::kReplaceConstant,
                       Show(e) + " -> " + Show(Expr::BoolLit(!e.bool_value)),
                       Replace(id, Expr::BoolLit(!e.bool_value))});
        break;
      case ExprKind::kVar: {
        bool target = targets_.count(id) != 0;
        if (!target && under_unary_.count(id) == 0) {
          if (e.type.IsNumeric()) {
            out.push_back({MutationOperator::kInsertUnary, "negate " + e.text,
                           Replace(id, Expr::Unary(UnaryOp::kNeg, e))});
          } else if (e.type.kind == TypeKind::kBool) {
            out.push_back({MutationOperator::kInsertUnary, "not " + e.text,
                           Replace(id, Expr::Unary(UnaryOp::kNot, e))});
          }
        }
        if (!target) {
          for (const VarInfo& v : vars_) {
            if (v.name == e.text || v.type != e.type || v.declared_at >= id) continue;
            out.push_back({MutationOperator::kReplaceVariable, e.text + " -> " + v.name,
                           Replace(id, Expr::Var(v.name))});
          }
        }
        break;
      }
      case ExprKind::kCall: {
        if (auto it = call_stmts_.find(id); it != call_stmts_.end()) {
          int stmt_id = it->second;
          out.push_back({MutationOperator::kDeleteCall,
                         "remove " + std::string(BuiltinName(e.builtin)) + " statement",
                         [stmt_id](FunctionDef& f) { RemoveStmt(f.body, stmt_id); }});
        } else if (auto def = DefaultValue(e.type)) {
          out.push_back({MutationOperator::kDeleteCall,
                         std::string(BuiltinName(e.builtin)) + " -> " + Show(*def),
                         Replace(id, std::move(*def))});
        }
        break;
      }
      case ExprKind::kTernary: {
        Expr m = e;
        std::swap(m.kids[1], m.kids[2]);
        out.push_back({MutationOperator::kSwapTernaryBranches, "swap branches",
                       Replace(id, std::move(m))});
        break;
      }
      default:
        break;
    }
    return out;
  }

  const TypedFunction& fn_;
  FunctionDef base_;
  const SemanticsProfile& profile_;
  std::vector<VarInfo> vars_;
  std::set<int> targets_;
  std::set<int> under_unary_;
  std::map<int, int> call_stmts_;
};

}  // namespace

std::vector<Mutant> GenerateMutants(const TypedFunction& fn) { return Generator(fn).Run(); }

bool Kills(const TestCase& test, const Mutant& mutant, const ExecLimits& limits) {
  try {
    ExecOutcome got = Execute(mutant.mutated, test.args, limits);
    return !OutcomesMatch(test.expected, got, test.float_tol);
  } catch (const ArityMismatch&) {
    return true;
  }
}

Expected<MutationReport, NoMutants> MutationScore(const std::vector<TestCase>& cases,
                                                  const std::vector<Mutant>& mutants,
                                                  const ExecLimits& limits, int jobs) {
  if (mutants.empty()) return MakeUnexpected(NoMutants{});
  MutationReport report;
  report.total_mutants = static_cast<int>(mutants.size());
  report.verdicts.resize(mutants.size());
  ParallelFor(mutants.size(), jobs, [&](size_t i) {
    for (size_t j = 0; j < cases.size(); ++j) {
      if (Kills(cases[j], mutants[i], limits)) {
        report.verdicts[i] = {true, static_cast<int>(j)};
        return;
      }
    }
  });
  for (const auto& v : report.verdicts) report.killed += v.killed ? 1 : 0;
  report.score = static_cast<double>(report.killed) / report.total_mutants;
  return report;
}

Expected<MutationReport, NoMutants> MutationScore(const TestSuite& suite, const TypedFunction& fn,
                                                  const ExecLimits& limits, int jobs) {
  return MutationScore(suite.cases, GenerateMutants(fn), limits, jobs);
}

}  // namespace xlt
