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

#ifndef XLT_TESTPORT_H_
#define XLT_TESTPORT_H_

#include <string>

#include "xlt/suite.h"

namespace xlt {

struct Unsupported {
  std::string type;
  std::string ToString() const { return "unsupported value for target dialect: " + type; }
};

// Image of a value in the target dialect's type map: fixed-width integers
// become DP BigInt; DP BigInt becomes I32 when it fits, otherwise I64;
// Arr becomes Lst in DP. Numeric content is never changed.
Expected<Value, Unsupported> PortValue(const Value& v, Dialect from, Dialect to);

// Ports every argument and every expected observation verbatim. Porting to the
// suite's own dialect is the identity.
Expected<TestSuite, Unsupported> PortSuite(const TestSuite& suite, Dialect target);

}  // namespace xlt

#endif  // XLT_TESTPORT_H_
