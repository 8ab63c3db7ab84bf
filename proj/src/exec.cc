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

#include "xlt/exec.h"

#include <cmath>
#include <limits>

namespace xlt {

std::string_view ExecStatusName(ExecStatus s) {
  switch (s) {
    case ExecStatus::kOk:
      return "Ok";
    case ExecStatus::kDivByZero:
      return "DivByZero";
    case ExecStatus::kIndexOutOfBounds:
      return "IndexOutOfBounds";
    case ExecStatus::kStepBudgetExceeded:
      return "StepBudgetExceeded";
    case ExecStatus::kTypeFault:
      return "TypeFault";
  }
  return "?";
}

std::optional<ExecStatus> ExecStatusFromName(std::string_view name) {
  for (ExecStatus s : {ExecStatus::kOk, ExecStatus::kDivByZero, ExecStatus::kIndexOutOfBounds,
                       ExecStatus::kStepBudgetExceeded, ExecStatus::kTypeFault}) {
    if (ExecStatusName(s) == name) return s;
  }
  return std::nullopt;
}

bool OutcomesMatch(const ExecOutcome& expected, const ExecOutcome& actual, double float_tol) {
  if (expected.status != actual.status) return false;
  if (expected.return_value.has_value() != actual.return_value.has_value()) return false;
  if (expected.return_value &&
      !ValuesMatch(*expected.return_value, *actual.return_value, float_tol)) {
    return false;
  }
  if (expected.param_state.size() != actual.param_state.size()) return false;
  for (const auto& [index, value] : expected.param_state) {
    auto it = actual.param_state.find(index);
    if (it == actual.param_state.end() || !ValuesMatch(value, it->second, float_tol)) return false;
  }
  return expected.printed == actual.printed;
}

void BranchTrace::Merge(const BranchTrace& other) {
  if (bits_.size() < other.bits_.size()) bits_.resize(other.bits_.size(), 0);
  for (size_t i = 0; i < other.bits_.size(); ++i) bits_[i] |= other.bits_[i];
}

namespace {

constexpr unsigned kMaxBigIntBits = 65536;
constexpr int kMaxDepth = 512;

struct Fault {
  ExecStatus status;
};

[[noreturn]] void Throw(ExecStatus s) { throw Fault{s}; }

void CheckBig(const BigInt& v) {
  if (v != 0 && boost::multiprecision::msb(boost::multiprecision::abs(v)) > kMaxBigIntBits) {
    Throw(ExecStatus::kStepBudgetExceeded);
  }
}

std::int64_t WrapFixed(TypeKind k, std::int64_t v) {
  return k == TypeKind::kI32 ? static_cast<std::int32_t>(static_cast<std::uint32_t>(v)) : v;
}

Value MakeFixed(TypeKind k, std::int64_t v) {
  return k == TypeKind::kI32 ? Value::I32(static_cast<std::int32_t>(v)) : Value::I64(v);
}

// Operand as a fixed-width integer of kind k.
std::int64_t FixedOf(const Value& v, TypeKind k) {
  if (v.tag() == TypeKind::kBigInt) {
    return k == TypeKind::kI32 ? WrapToI32(v.AsBig()) : WrapToI64(v.AsBig());
  }
  return WrapFixed(k, v.AsFixed());
}

std::int64_t FloorDivFixed(std::int64_t x, std::int64_t y) {
  if (x == std::numeric_limits<std::int64_t>::min() && y == -1) return x;
  std::int64_t q = x / y;
  if ((x % y != 0) && ((x < 0) != (y < 0))) --q;
  return q;
}

std::int64_t FloorModFixed(std::int64_t x, std::int64_t y) {
  if (y == -1) return 0;
  std::int64_t r = x % y;
  if (r != 0 && ((r < 0) != (y < 0))) r += y;
  return r;
}

BigInt FloorDivBig(const BigInt& x, const BigInt& y) {
  BigInt q = x / y;
  if ((x % y != 0) && ((x < 0) != (y < 0))) --q;
  return q;
}

BigInt FloorModBig(const BigInt& x, const BigInt& y) {
  BigInt r = x % y;
  if (r != 0 && ((r < 0) != (y < 0))) r += y;
  return r;
}

double PyFloatMod(double x, double y) {
  double r = std::fmod(x, y);
  if (r != 0 && ((r < 0) != (y < 0))) r += y;
  return r;
}

class Interp {
 public:
  Interp(const TypedFunction& fn, const ExecLimits& limits, BranchTrace* trace)
      : fn_(fn), profile_(ProfileOf(fn.dialect())), limits_(limits), trace_(trace),
        py_(fn.dialect() == Dialect::kDP) {}

  ExecOutcome Run(const std::vector<Value>& args) {
    ExecOutcome out;
    slots_.assign(fn_.slot_types.size(), Value());
    std::vector<Value> originals;
    for (size_t i = 0; i < args.size(); ++i) {
      slots_[i] = ConvertArg(args[i].DeepCopy(), fn_.slot_types[i]);
      originals.push_back(slots_[i]);
    }
    try {
      Flow flow = Block(fn_.def.body);
      if (fn_.def.ret.kind != TypeKind::kVoid) {
        // Falling off the end of a value-returning function.
        if (flow != Flow::kReturn) Throw(ExecStatus::kTypeFault);
        out.return_value = std::move(ret_);
      }
    } catch (const Fault& f) {
      out.status = f.status;
      out.return_value.reset();
    }
    for (size_t i = 0; i < originals.size(); ++i) {
      if (originals[i].IsSeq()) out.param_state.emplace(static_cast<int>(i), originals[i]);
    }
    out.printed = std::move(printed_);
    out.steps = steps_;
    return out;
  }

 private:
  enum class Flow { kNormal, kBreak, kContinue, kReturn };

  void Tick() {
    if (++steps_ > limits_.max_steps) Throw(ExecStatus::kStepBudgetExceeded);
  }

  Flow Block(const std::vector<Stmt>& block) {
    for (const Stmt& s : block) {
      Flow f = Exec(s);
      if (f != Flow::kNormal) return f;
    }
    return Flow::kNormal;
  }

  bool Decide(int id, const Expr& cond) {
    bool taken = Eval(cond).AsBool();
    if (trace_ != nullptr) trace_->Hit(id, taken);
    return taken;
  }

  Flow Exec(const Stmt& s) {
    Tick();
    switch (s.kind) {
      case StmtKind::kDecl:
        slots_[s.slot] = Coerce(Eval(s.exprs[0]), fn_.slot_types[s.slot]);
        return Flow::kNormal;
      case StmtKind::kAssign:
        Assign(s);
        return Flow::kNormal;
      case StmtKind::kIf:
        return Block(Decide(s.id, s.exprs[0]) ? s.body : s.orelse);
      case StmtKind::kWhile:
        while (Decide(s.id, s.exprs[0])) {
          Flow f = Block(s.body);
          if (f == Flow::kBreak) break;
          if (f == Flow::kReturn) return f;
          Tick();
        }
        return Flow::kNormal;
      case StmtKind::kReturn:
        if (!s.exprs.empty()) {
          Value v = Eval(s.exprs[0]);
          if (py_ && v.tag() == TypeKind::kF64 && fn_.def.ret.IsInt()) {
            ret_ = std::move(v);
          } else {
            ret_ = Coerce(v, fn_.def.ret);
          }
        }
        return Flow::kReturn;
      case StmtKind::kExprStmt:
        Eval(s.exprs[0]);
        return Flow::kNormal;
      case StmtKind::kBreak:
        return Flow::kBreak;
      case StmtKind::kContinue:
        return Flow::kContinue;
    }
    return Flow::kNormal;
  }

  void Assign(const Stmt& s) {
    const Expr& target = s.exprs[0];
    if (target.kind == ExprKind::kVar) {
      Value v = Eval(s.exprs[1]);
      const Type& slot_type = fn_.slot_types[target.slot];
      if (s.compound) {
        Value cur = Read(target.slot);
        v = Binary(*s.compound, cur, v);
      }
      slots_[target.slot] = Coerce(v, slot_type);
      return;
    }
    // Element assignment: the sequence handle shares storage with its owner.
    Value seq = Eval(target.kids[0]);
    Value index = Eval(target.kids[1]);
    Value v = Eval(s.exprs[1]);
    size_t i = Locate(seq, index);
    Value& slot = seq.mutable_items()[i];
    if (s.compound) v = Binary(*s.compound, slot, v);
    slot = Coerce(v, Type::Of(seq.elem()));
  }

  const Value& Read(int slot) {
    const Value& v = slots_[slot];
    // DP names bound only on some paths.
    if (v.tag() == TypeKind::kVoid) Throw(ExecStatus::kTypeFault);
    return v;
  }

  size_t Locate(const Value& seq, const Value& index) {
    std::int64_t size = seq.tag() == TypeKind::kStr ? static_cast<std::int64_t>(seq.AsStr().size())
                                                    : static_cast<std::int64_t>(seq.items().size());
    BigInt big = index.ToBigInt();
    if (py_ && big < 0) big += size;
    if (big < 0 || big >= size) Throw(ExecStatus::kIndexOutOfBounds);
    return static_cast<size_t>(static_cast<std::int64_t>(big));
  }

  Value FloatToInt(double d, TypeKind k) {
    if (py_) {
      if (!std::isfinite(d)) Throw(ExecStatus::kTypeFault);
      return Value::IntOf(k, BigInt(std::trunc(d)));
    }
    if (std::isnan(d)) return MakeFixed(k, 0);
    if (k == TypeKind::kI32) {
      if (d >= 2147483647.0) return Value::I32(std::numeric_limits<std::int32_t>::max());
      if (d <= -2147483648.0) return Value::I32(std::numeric_limits<std::int32_t>::min());
      return Value::I32(static_cast<std::int32_t>(d));
    }
    if (d >= 9223372036854775807.0) return Value::I64(std::numeric_limits<std::int64_t>::max());
    if (d <= -9223372036854775808.0) return Value::I64(std::numeric_limits<std::int64_t>::min());
    return Value::I64(static_cast<std::int64_t>(d));
  }

  // Converts a value to a static type: integers wrap or widen, integers widen
  // to F64, and F64 narrows to integers under the dialect's cast rule.
  Value Coerce(const Value& v, const Type& t) {
    if (v.tag() == t.kind) return v;
    if (t.IsInt()) {
      if (v.IsInt()) {
        if (v.tag() != TypeKind::kBigInt && t.kind != TypeKind::kBigInt) {
          return MakeFixed(t.kind, WrapFixed(t.kind, v.AsFixed()));
        }
        return Value::IntOf(t.kind, v.ToBigInt());
      }
      if (v.tag() == TypeKind::kF64) return FloatToInt(v.AsF64(), t.kind);
    }
    if (t.kind == TypeKind::kF64 && v.IsInt()) return Value::F64(v.ToDouble());
    return v;
  }

  Value Eval(const Expr& e) {
    Tick();
    if (++depth_ > kMaxDepth) Throw(ExecStatus::kStepBudgetExceeded);
    Value v = EvalInner(e);
    --depth_;
    return v;
  }

  Value EvalInner(const Expr& e) {
    switch (e.kind) {
      case ExprKind::kIntLit:
        return Value::IntOf(e.type.kind, e.int_value);
      case ExprKind::kFloatLit:
        return Value::F64(e.float_value);
      case ExprKind::kBoolLit:
        return Value::Bool(e.bool_value);
      case ExprKind::kStrLit:
        return Value::Str(e.text);
      case ExprKind::kExtreme: {
        std::int64_t v = e.extreme == Extreme::kMax ? std::numeric_limits<std::int32_t>::max()
                                                    : std::numeric_limits<std::int32_t>::min();
        return Value::IntOf(profile_.default_int, BigInt(v));
      }
      case ExprKind::kVar:
        return Read(e.slot);
      case ExprKind::kUnary:
        return Unary(e.unary, Eval(e.kids[0]));
      case ExprKind::kBinary: {
        if (IsLogical(e.binary)) {
          bool l = Eval(e.kids[0]).AsBool();
          if (e.binary == BinaryOp::kAnd && !l) return Value::Bool(false);
          if (e.binary == BinaryOp::kOr && l) return Value::Bool(true);
          return Value::Bool(Eval(e.kids[1]).AsBool());
        }
        Value l = Eval(e.kids[0]);
        Value r = Eval(e.kids[1]);
        return Binary(e.binary, l, r);
      }
      case ExprKind::kTernary:
        return Coerce(Eval(Decide(e.id, e.kids[0]) ? e.kids[1] : e.kids[2]), e.type);
      case ExprKind::kCall:
        return Call(e);
      case ExprKind::kIndex: {
        Value seq = Eval(e.kids[0]);
        Value index = Eval(e.kids[1]);
        size_t i = Locate(seq, index);
        if (seq.tag() == TypeKind::kStr) return Value::Str(std::string(1, seq.AsStr()[i]));
        return seq.items()[i];
      }
      case ExprKind::kCast: {
        Value v = Eval(e.kids[0]);
        if (e.cast_type.kind == TypeKind::kF64) return Value::F64(v.ToDouble());
        return Coerce(v, e.cast_type);
      }
    }
    Throw(ExecStatus::kTypeFault);
  }

  Value Unary(UnaryOp op, const Value& v) {
    switch (op) {
      case UnaryOp::kNot:
        return Value::Bool(!v.AsBool());
      case UnaryOp::kNeg:
        switch (v.tag()) {
          case TypeKind::kF64:
            return Value::F64(-v.AsF64());
          case TypeKind::kBigInt:
            return Value::Big(-v.AsBig());
          default:
            return MakeFixed(v.tag(),
                             WrapFixed(v.tag(), static_cast<std::int64_t>(
                                                    0ull - static_cast<std::uint64_t>(v.AsFixed()))));
        }
      case UnaryOp::kBitNot:
        if (v.tag() == TypeKind::kBigInt) return Value::Big(-v.AsBig() - 1);
        return MakeFixed(v.tag(), ~v.AsFixed());
    }
    Throw(ExecStatus::kTypeFault);
  }

  Value Binary(BinaryOp op, const Value& l, const Value& r) {
    if (IsComparison(op)) return Value::Bool(Compare(op, l, r));
    if (l.tag() == TypeKind::kBool) {
      bool a = l.AsBool();
      bool b = r.AsBool();
      switch (op) {
        case BinaryOp::kBitAnd:
          return Value::Bool(a && b);
        case BinaryOp::kBitOr:
          return Value::Bool(a || b);
        case BinaryOp::kBitXor:
          return Value::Bool(a != b);
        default:
          Throw(ExecStatus::kTypeFault);
      }
    }
    if (l.tag() == TypeKind::kStr) {
      if (op != BinaryOp::kAdd) Throw(ExecStatus::kTypeFault);
      return Value::Str(l.AsStr() + r.AsStr());
    }
    if (IsShift(op)) return Shift(op, l, r);
    bool float_result = l.tag() == TypeKind::kF64 || r.tag() == TypeKind::kF64 ||
                        (op == BinaryOp::kDiv && profile_.true_division);
    if (float_result) return FloatArith(op, l.ToDouble(), r.ToDouble());
    TypeKind k = PromoteInt(l.tag(), r.tag());
    if (op == BinaryOp::kPow) return IntPow(k, l, r);
    if (k == TypeKind::kBigInt) return BigArith(op, l.AsBig(), r.AsBig());
    return FixedArith(op, k, FixedOf(l, k), FixedOf(r, k));
  }

  bool Compare(BinaryOp op, const Value& l, const Value& r) {
    int c = 0;
    if (l.IsNumeric()) {
      if (l.tag() == TypeKind::kF64 || r.tag() == TypeKind::kF64) {
        double a = l.ToDouble();
        double b = r.ToDouble();
        switch (op) {
          case BinaryOp::kEq:
            return a == b;
          case BinaryOp::kNe:
            return a != b;
          case BinaryOp::kLt:
            return a < b;
          case BinaryOp::kLe:
            return a <= b;
          case BinaryOp::kGt:
            return a > b;
          default:
            return a >= b;
        }
      }
      if (l.tag() != TypeKind::kBigInt && r.tag() != TypeKind::kBigInt) {
        c = l.AsFixed() < r.AsFixed() ? -1 : (l.AsFixed() > r.AsFixed() ? 1 : 0);
      } else {
        BigInt a = l.ToBigInt();
        BigInt b = r.ToBigInt();
        c = a < b ? -1 : (a > b ? 1 : 0);
      }
    } else if (l.tag() == TypeKind::kStr) {
      int raw = l.AsStr().compare(r.AsStr());
      c = raw < 0 ? -1 : (raw > 0 ? 1 : 0);
    } else if (l.tag() == TypeKind::kBool) {
      c = static_cast<int>(l.AsBool()) - static_cast<int>(r.AsBool());
    } else {
      Throw(ExecStatus::kTypeFault);
    }
    switch (op) {
      case BinaryOp::kEq:
        return c == 0;
      case BinaryOp::kNe:
        return c != 0;
      case BinaryOp::kLt:
        return c < 0;
      case BinaryOp::kLe:
        return c <= 0;
      case BinaryOp::kGt:
        return c > 0;
      default:
        return c >= 0;
    }
  }

  Value FloatArith(BinaryOp op, double a, double b) {
    switch (op) {
      case BinaryOp::kAdd:
        return Value::F64(a + b);
      case BinaryOp::kSub:
        return Value::F64(a - b);
      case BinaryOp::kMul:
        return Value::F64(a * b);
      case BinaryOp::kDiv:
        if (b == 0 && profile_.float_div_by_zero_faults) Throw(ExecStatus::kDivByZero);
        return Value::F64(a / b);
      case BinaryOp::kFloorDiv:
        if (b == 0) Throw(ExecStatus::kDivByZero);
        return Value::F64(std::floor(a / b));
      case BinaryOp::kMod:
        if (py_) {
          if (b == 0) Throw(ExecStatus::kDivByZero);
          return Value::F64(PyFloatMod(a, b));
        }
        return Value::F64(std::fmod(a, b));
      case BinaryOp::kPow: {
        if (a == 0 && b < 0) Throw(ExecStatus::kDivByZero);
        if (a < 0 && std::isfinite(b) && b != std::trunc(b)) Throw(ExecStatus::kTypeFault);
        double r = std::pow(a, b);
        if (std::isinf(r) && std::isfinite(a) && std::isfinite(b)) Throw(ExecStatus::kTypeFault);
        return Value::F64(r);
      }
      default:
        Throw(ExecStatus::kTypeFault);
    }
  }

  Value FixedArith(BinaryOp op, TypeKind k, std::int64_t a, std::int64_t b) {
    auto ua = static_cast<std::uint64_t>(a);
    auto ub = static_cast<std::uint64_t>(b);
    std::int64_t r = 0;
    switch (op) {
      case BinaryOp::kAdd:
        r = static_cast<std::int64_t>(ua + ub);
        break;
      case BinaryOp::kSub:
        r = static_cast<std::int64_t>(ua - ub);
        break;
      case BinaryOp::kMul:
        r = static_cast<std::int64_t>(ua * ub);
        break;
      case BinaryOp::kDiv:
        if (b == 0) Throw(ExecStatus::kDivByZero);
        r = (a == std::numeric_limits<std::int64_t>::min() && b == -1) ? a : a / b;
        break;
      case BinaryOp::kFloorDiv:
        if (b == 0) Throw(ExecStatus::kDivByZero);
        r = FloorDivFixed(a, b);
        break;
      case BinaryOp::kMod:
        if (b == 0) Throw(ExecStatus::kDivByZero);
        if (profile_.floored_remainder) {
          r = FloorModFixed(a, b);
        } else {
          r = b == -1 ? 0 : a % b;
        }
        break;
      case BinaryOp::kBitAnd:
        r = a & b;
        break;
      case BinaryOp::kBitOr:
        r = a | b;
        break;
      case BinaryOp::kBitXor:
        r = a ^ b;
        break;
      default:
        Throw(ExecStatus::kTypeFault);
    }
    return MakeFixed(k, WrapFixed(k, r));
  }

  Value BigArith(BinaryOp op, const BigInt& a, const BigInt& b) {
    BigInt r;
    switch (op) {
      case BinaryOp::kAdd:
        r = a + b;
        break;
      case BinaryOp::kSub:
        r = a - b;
        break;
      case BinaryOp::kMul:
        r = a * b;
        break;
      case BinaryOp::kDiv:
        if (b == 0) Throw(ExecStatus::kDivByZero);
        r = a / b;
        break;
      case BinaryOp::kFloorDiv:
        if (b == 0) Throw(ExecStatus::kDivByZero);
        r = FloorDivBig(a, b);
        break;
      case BinaryOp::kMod:
        if (b == 0) Throw(ExecStatus::kDivByZero);
        r = profile_.floored_remainder ? FloorModBig(a, b) : BigInt(a % b);
        break;
      case BinaryOp::kBitAnd:
        r = a & b;
        break;
      case BinaryOp::kBitOr:
        r = a | b;
        break;
      case BinaryOp::kBitXor:
        r = a ^ b;
        break;
      default:
        Throw(ExecStatus::kTypeFault);
    }
    CheckBig(r);
    return Value::Big(std::move(r));
  }

  Value IntPow(TypeKind k, const Value& l, const Value& r) {
    BigInt exp = r.ToBigInt();
    BigInt base = l.ToBigInt();
    if (exp < 0) Throw(base == 0 ? ExecStatus::kDivByZero : ExecStatus::kTypeFault);
    if (k != TypeKind::kBigInt) {
      // Wrapping multiplication is a ring homomorphism, so square-and-multiply
      // modulo 2^64 gives the wrapped result directly.
      std::uint64_t acc = 1;
      auto b = static_cast<std::uint64_t>(FixedOf(l, k));
      BigInt e = exp;
      while (e > 0) {
        Tick();
        if ((e & 1) != 0) acc *= b;
        b *= b;
        e >>= 1;
      }
      return MakeFixed(k, WrapFixed(k, static_cast<std::int64_t>(acc)));
    }
    if (base == 0 || base == 1) return Value::Big(exp == 0 ? BigInt(1) : base);
    if (base == -1) return Value::Big((exp & 1) != 0 ? BigInt(-1) : BigInt(1));
    BigInt bits = BigInt(boost::multiprecision::msb(boost::multiprecision::abs(base)) + 1) * exp;
    if (bits > kMaxBigIntBits) Throw(ExecStatus::kStepBudgetExceeded);
    return Value::Big(boost::multiprecision::pow(base, static_cast<unsigned>(exp)));
  }

  Value Shift(BinaryOp op, const Value& l, const Value& r) {
    bool left = op == BinaryOp::kShl;
    if (!py_) {
      // Java semantics: the count is masked to the operand width.
      TypeKind k = l.tag();
      int width = k == TypeKind::kI32 ? 32 : 64;
      auto count = static_cast<int>(FixedOf(r, TypeKind::kI64) & (width - 1));
      std::int64_t a = l.AsFixed();
      std::int64_t out;
      if (left) {
        out = static_cast<std::int64_t>(static_cast<std::uint64_t>(a) << count);
      } else {
        out = a >> count;
      }
      return MakeFixed(k, WrapFixed(k, out));
    }
    TypeKind k = PromoteInt(l.tag(), r.tag());
    BigInt count = r.ToBigInt();
    if (count < 0) Throw(ExecStatus::kTypeFault);
    BigInt a = l.ToBigInt();
    BigInt out;
    if (left) {
      if (a != 0 &&
          count + boost::multiprecision::msb(boost::multiprecision::abs(a)) > kMaxBigIntBits) {
        Throw(ExecStatus::kStepBudgetExceeded);
      }
      out = a == 0 ? BigInt(0) : BigInt(a << static_cast<unsigned>(count));
    } else {
      out = count > kMaxBigIntBits ? BigInt(a < 0 ? -1 : 0) : BigInt(a >> static_cast<unsigned>(count));
    }
    return Value::IntOf(k, out);
  }

  Value Call(const Expr& e) {
    switch (e.builtin) {
      case Builtin::kLen: {
        Value s = Eval(e.kids[0]);
        size_t n = s.tag() == TypeKind::kStr ? s.AsStr().size() : s.items().size();
        return Value::IntOf(profile_.default_int, BigInt(n));
      }
      case Builtin::kMin:
      case Builtin::kMax: {
        Value a = Eval(e.kids[0]);
        Value b = Eval(e.kids[1]);
        bool a_less = Compare(BinaryOp::kLt, a, b);
        bool b_less = Compare(BinaryOp::kLt, b, a);
        const Value& pick = e.builtin == Builtin::kMin ? (b_less ? b : a) : (a_less ? b : a);
        return Coerce(pick, e.type);
      }
      case Builtin::kAbs: {
        Value a = Eval(e.kids[0]);
        if (a.tag() == TypeKind::kF64) return Value::F64(std::fabs(a.AsF64()));
        if (a.tag() == TypeKind::kBigInt) return Value::Big(boost::multiprecision::abs(a.AsBig()));
        return a.AsFixed() < 0 ? Unary(UnaryOp::kNeg, a) : a;
      }
      case Builtin::kPush: {
        Value s = Eval(e.kids[0]);
        Value v = Eval(e.kids[1]);
        if (s.items().size() >= static_cast<size_t>(limits_.max_steps)) {
          Throw(ExecStatus::kStepBudgetExceeded);
        }
        s.mutable_items().push_back(Coerce(v, Type::Of(s.elem())));
        return Value();
      }
      case Builtin::kPop:
      case Builtin::kPeek: {
        Value s = Eval(e.kids[0]);
        if (s.items().empty()) Throw(ExecStatus::kIndexOutOfBounds);
        Value top = s.items().back();
        if (e.builtin == Builtin::kPop) s.mutable_items().pop_back();
        return top;
      }
      case Builtin::kPrint: {
        Value v = Eval(e.kids[0]);
        printed_ += v.Format();
        printed_ += '\n';
        if (static_cast<std::int64_t>(printed_.size()) > limits_.max_print_bytes) {
          Throw(ExecStatus::kStepBudgetExceeded);
        }
        return Value();
      }
    }
    Throw(ExecStatus::kTypeFault);
  }

  const TypedFunction& fn_;
  const SemanticsProfile& profile_;
  const ExecLimits& limits_;
  BranchTrace* trace_;
  bool py_;
  std::vector<Value> slots_;
  Value ret_;
  std::string printed_;
  std::int64_t steps_ = 0;
  int depth_ = 0;
};

}  // namespace

Value ConvertArg(const Value& v, const Type& to) {
  if (to.IsSeq()) {
    if (!v.IsSeq()) throw ArityMismatch("expected a sequence argument");
    Value::Seq items;
    items.reserve(v.items().size());
    for (const Value& item : v.items()) items.push_back(ConvertArg(item, Type::Of(to.elem)));
    return to.kind == TypeKind::kArr ? Value::Arr(to.elem, std::move(items))
                                     : Value::Lst(to.elem, std::move(items));
  }
  if (to.IsInt()) {
    if (!v.IsInt()) throw ArityMismatch("expected an integer argument");
    if (v.tag() == to.kind) return v;
    return Value::IntOf(to.kind, v.ToBigInt());
  }
  if (to.kind == TypeKind::kF64) {
    if (!v.IsNumeric()) throw ArityMismatch("expected a numeric argument");
    return Value::F64(v.ToDouble());
  }
  if (v.tag() != to.kind) throw ArityMismatch("argument type does not match parameter");
  return v;
}

ExecOutcome Execute(const TypedFunction& fn, const std::vector<Value>& args,
                    const ExecLimits& limits, BranchTrace* trace) {
  if (args.size() != fn.def.params.size()) {
    throw ArityMismatch(fn.def.name + ": expected " + std::to_string(fn.def.params.size()) +
                        " arguments, got " + std::to_string(args.size()));
  }
  return Interp(fn, limits, trace).Run(args);
}

}  // namespace xlt
