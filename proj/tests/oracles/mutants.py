#!/usr/bin/env python3
# Copyright 2026 The xlt Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Counts mutants of the Java pow function by direct site enumeration.

The function is written out by hand as a tree; the operator catalogue is
applied to each site and the resulting programs are deduplicated by their
text. Also evaluates the two clamp comparison mutants on two sample inputs.
"""

import sys

ARITH = ["+", "-", "*", "/", "%"]
REL = ["<", "<=", ">", ">=", "==", "!="]
BIT = ["&", "|", "^"]
SHIFT = ["<<", ">>"]
GROUPS = [ARITH, REL, BIT, SHIFT, ["&&", "||"]]

# Expressions: ("lit", v) ("var", name) ("bin", op, l, r)
# Statements: ("decl", name, e) ("assign", name, e) ("while", c, [..])
#             ("if", c, [..]) ("return", e)
POW = [
    ("decl", "r", ("lit", 1)),
    ("while", ("bin", ">", ("var", "e"), ("lit", 0)), [
        ("if", ("bin", "==", ("bin", "&", ("var", "e"), ("lit", 1)), ("lit", 1)), [
            ("assign", "r", ("bin", "*", ("var", "r"), ("var", "b"))),
        ]),
        ("assign", "b", ("bin", "*", ("var", "b"), ("var", "b"))),
        ("assign", "e", ("bin", ">>", ("var", "e"), ("lit", 1))),
    ]),
    ("return", ("var", "r")),
]
PARAMS = ["b", "e"]


def show(x):
    if isinstance(x, list):
        return "{" + ";".join(show(s) for s in x) + "}"
    tag = x[0]
    if tag == "lit":
        return str(x[1])
    if tag == "var":
        return x[1]
    if tag == "neg":
        return "(-" + show(x[1]) + ")"
    if tag == "bin":
        return "(" + show(x[2]) + x[1] + show(x[3]) + ")"
    if tag in ("decl", "assign"):
        return tag + " " + x[1] + "=" + show(x[2])
    if tag in ("while", "if"):
        return tag + show(x[1]) + show(x[2])
    return "return " + show(x[1])


def expr_mutants(e, scope):
    """All single-site variants of e."""
    tag = e[0]
    if tag == "lit":
        return [("lit", c) for c in (-1, 0, 1) if c != e[1]]
    if tag == "var":
        out = [("neg", e)]
        out += [("var", v) for v in scope if v != e[1]]
        return out
    # binary: the operator itself, then the operands left to right
    out = []
    group = next(g for g in GROUPS if e[1] in g)
    out += [("bin", op, e[2], e[3]) for op in group if op != e[1]]
    out += [("bin", e[1], m, e[3]) for m in expr_mutants(e[2], scope)]
    out += [("bin", e[1], e[2], m) for m in expr_mutants(e[3], scope)]
    return out


def block_mutants(block, scope):
    out = []
    scope = list(scope)
    for i, s in enumerate(block):
        def put(new_s):
            return block[:i] + [new_s] + block[i + 1:]
        tag = s[0]
        if tag == "decl":
            out += [put(("decl", s[1], m)) for m in expr_mutants(s[2], scope)]
            scope.append(s[1])
        elif tag == "assign":
            # the assigned variable itself is not a mutation site
            out += [put(("assign", s[1], m)) for m in expr_mutants(s[2], scope)]
        elif tag in ("while", "if"):
            out += [put((tag, m, s[2])) for m in expr_mutants(s[1], scope)]
            out += [put((tag, s[1], m)) for m in block_mutants(s[2], scope)]
        else:
            out += [put(("return", m)) for m in expr_mutants(s[1], scope)]
    return out


def pow_mutant_count():
    base = show(POW)
    texts = {show(m) for m in block_mutants(POW, PARAMS)}
    texts.discard(base)
    return len(texts)


def clamp(a, lo, hi, first="<", second=">"):
    c1 = a < lo if first == "<" else a > lo
    c2 = a > hi if second == ">" else a < hi
    return lo if c1 else (hi if c2 else a)


def main():
    vals = {
        "pow_mutants": pow_mutant_count(),
        "clamp(742,0,0)": clamp(742.0, 0.0, 0.0),
        "clamp_first_gt(742,0,0)": clamp(742.0, 0.0, 0.0, first=">"),
        "clamp_second_lt(742,0,0)": clamp(742.0, 0.0, 0.0, second="<"),
        "clamp(-800,-800,-1)": clamp(-800.0, -800.0, -1.0),
        "clamp_first_gt(-800,-800,-1)": clamp(-800.0, -800.0, -1.0, first=">"),
    }
    frozen = {
        "pow_mutants": 55,
        "clamp(742,0,0)": 0.0,
        "clamp_first_gt(742,0,0)": 0.0,
        "clamp_second_lt(742,0,0)": 742.0,
        "clamp(-800,-800,-1)": -800.0,
        "clamp_first_gt(-800,-800,-1)": -800.0,
    }
    if "--check" in sys.argv:
        bad = [k for k in frozen if vals[k] != frozen[k]]
        for k in bad:
            print(f"mismatch {k}: {vals[k]} != {frozen[k]}")
        return 1 if bad else 0
    for k, v in vals.items():
        print(f"{k} = {v}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
