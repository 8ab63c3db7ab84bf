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

#ifndef XLT_EXEC_H_
#define XLT_EXEC_H_

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "xlt/typecheck.h"
#include "xlt/value.h"

namespace xlt {

struct ExecLimits {
  std::int64_t max_steps = 100000;
  std::int64_t max_print_bytes = 65536;
};

enum class ExecStatus : std::uint8_t {
  kOk,
  kDivByZero,
  kIndexOutOfBounds,
  kStepBudgetExceeded,
  kTypeFault,
};

std::string_view ExecStatusName(ExecStatus s);
std::optional<ExecStatus> ExecStatusFromName(std::string_view name);

struct ExecOutcome {
  ExecStatus status = ExecStatus::kOk;
  std::optional<Value> return_value;  // set iff status is Ok and the function is not void
  std::map<int, Value> param_state;   // parameter index -> final Arr/Lst value
  std::string printed;
  std::int64_t steps = 0;
};

// Every observable part agrees: status, return value, mutable parameters and
// printed text. Numbers are compared with ValuesMatch under float_tol.
bool OutcomesMatch(const ExecOutcome& expected, const ExecOutcome& actual, double float_tol);

// Branch outcomes seen during one or more executions: bit 2*id is the true
// edge of decision node `id`, bit 2*id+1 its false edge.
class BranchTrace {
 public:
  explicit BranchTrace(int num_nodes = 0) : bits_(static_cast<size_t>(num_nodes) * 2, 0) {}
  void Hit(int id, bool taken) { bits_[static_cast<size_t>(id) * 2 + (taken ? 0 : 1)] = 1; }
  bool Covered(int id, bool taken) const {
    return bits_[static_cast<size_t>(id) * 2 + (taken ? 0 : 1)] != 0;
  }
  const std::vector<std::uint8_t>& bits() const { return bits_; }
  void Merge(const BranchTrace& other);

 private:
  std::vector<std::uint8_t> bits_;
};

class ArityMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Converts an argument to the declared parameter type: integers wrap into
// fixed widths, integers widen to F64, Arr and Lst convert element-wise.
// Throws ArityMismatch when no conversion exists.
Value ConvertArg(const Value& v, const Type& to);

// Runs fn on deep copies of args. Never throws except ArityMismatch.
ExecOutcome Execute(const TypedFunction& fn, const std::vector<Value>& args,
                    const ExecLimits& limits = {}, BranchTrace* trace = nullptr);

}  // namespace xlt

#endif  // XLT_EXEC_H_
