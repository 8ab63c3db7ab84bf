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
"""Writes the DJ training corpus and the DJ sources of the benchmark.

Every function comes from a small family of templates with randomized names,
constants and operators. Output is a pure function of the seeds.
"""

import argparse
import json
import pathlib
import random

NAMES = ["a", "b", "c", "d", "n", "m", "k", "p", "q", "u", "v", "w", "x", "y", "z"]
ACC = ["s", "acc", "total", "res", "out", "r"]
IDX = ["i", "j", "t"]
REL = ["<", "<=", ">", ">="]


def pick_vars(rng, count, pool=NAMES):
    return rng.sample(pool, count)


def f_digit_sum(rng, name):
    n, s = pick_vars(rng, 1)[0], rng.choice(ACC)
    base = rng.choice([10, 10, 8, 16])
    return f"""static int {name}(int {n}) {{
    int {s} = 0;
    {n} = Math.abs({n});
    while ({n} > 0) {{
        {s} += {n} % {base};
        {n} /= {base};
    }}
    return {s};
}}"""


def f_count_bits(rng, name):
    x, c = pick_vars(rng, 2)
    bit = rng.choice([0, 1])
    return f"""static int {name}(int {x}) {{
    int {c} = 0;
    if ({x} < 0) {{
        {x} = -{x};
    }}
    while ({x} > 0) {{
        if (({x} & 1) == {bit}) {{
            {c} += 1;
        }}
        {x} = {x} >> 1;
    }}
    return {c};
}}"""


def f_mask_eq(rng, name):
    x = pick_vars(rng, 1)[0]
    mask = rng.choice([1, 3, 7, 15])
    val = rng.randint(0, mask)
    op = rng.choice(["==", "!="])
    return f"""static boolean {name}(int {x}) {{
    return ({x} & {mask}) {op} {val};
}}"""


def f_clamp(rng, name):
    v, lo, hi = pick_vars(rng, 3)
    return f"""static double {name}(double {v}, double {lo}, double {hi}) {{
    return {v} < {lo} ? {lo} : ({v} > {hi} ? {hi} : {v});
}}"""


def f_array_max(rng, name):
    a, best, i = rng.choice(["a", "xs", "vals"]), rng.choice(["best", "top", "m"]), rng.choice(IDX)
    return f"""static int {name}(int[] {a}) {{
    int {best} = Integer.MIN_VALUE;
    int {i} = 0;
    while ({i} < len({a})) {{
        if ({a}[{i}] > {best}) {{
            {best} = {a}[{i}];
        }}
        {i} += 1;
    }}
    return {best};
}}"""


def f_array_min(rng, name):
    a, low, i = rng.choice(["a", "xs", "vals"]), rng.choice(["low", "lo", "m"]), rng.choice(IDX)
    return f"""static int {name}(int[] {a}) {{
    int {low} = Integer.MAX_VALUE;
    int {i} = 0;
    while ({i} < len({a})) {{
        if ({a}[{i}] < {low}) {{
            {low} = {a}[{i}];
        }}
        {i} += 1;
    }}
    return {low};
}}"""


def f_power(rng, name):
    b, e, r, i = pick_vars(rng, 3) + [rng.choice(IDX)]
    cap = rng.choice([4, 5, 6])
    return f"""static int {name}(int {b}, int {e}) {{
    if ({e} < 0 || {e} > {cap}) {{
        return 0;
    }}
    {b} = Math.abs({b}) % 10;
    int {r} = 1;
    int {i} = 0;
    while ({i} < {e}) {{
        {r} = {r} * {b};
        {i} += 1;
    }}
    return {r};
}}"""


def f_affine(rng, name):
    x = pick_vars(rng, 1)[0]
    k, c = rng.randint(2, 9), rng.randint(-20, 20)
    return f"""static int {name}(int {x}) {{
    return {x} * {k} + {c};
}}"""


def f_mean(rng, name):
    a, b = pick_vars(rng, 2)
    d = rng.choice([2, 3, 4])
    return f"""static double {name}(int {a}, int {b}) {{
    return (double) ({a} + {b}) / {d};
}}"""


def f_ratio(rng, name):
    a, b = pick_vars(rng, 2)
    return f"""static double {name}(int {a}, int {b}) {{
    if ({b} == 0) {{
        return 0.0;
    }}
    return (double) {a} / {b};
}}"""


def f_sign(rng, name):
    x = pick_vars(rng, 1)[0]
    return f"""static int {name}(int {x}) {{
    return {x} > 0 ? 1 : ({x} < 0 ? -1 : 0);
}}"""


def f_same_sign(rng, name):
    a, b = pick_vars(rng, 2)
    t = rng.randint(-3, 3)
    return f"""static boolean {name}(int {a}, int {b}) {{
    return ({a} > {t}) == ({b} > {t});
}}"""


def f_printb(rng, name):
    x = pick_vars(rng, 1)[0]
    base = rng.choice([2, 2, 3, 10])
    return f"""static void {name}(int {x}) {{
    while ({x} > 0) {{
        System.out.println({x} % {base});
        {x} /= {base};
    }}
}}"""


def f_gcd(rng, name):
    a, b, t = pick_vars(rng, 3)
    return f"""static int {name}(int {a}, int {b}) {{
    {a} = Math.abs({a});
    {b} = Math.abs({b});
    while ({b} != 0) {{
        int {t} = {a} % {b};
        {a} = {b};
        {b} = {t};
    }}
    return {a};
}}"""


def f_count_above(rng, name):
    a, t, c, i = rng.choice(["a", "xs", "vals"]), "t", rng.choice(["c", "cnt", "hits"]), rng.choice(["i", "j"])
    op = rng.choice(REL)
    return f"""static int {name}(int[] {a}, int {t}) {{
    int {c} = 0;
    int {i} = 0;
    while ({i} < len({a})) {{
        if ({a}[{i}] {op} {t}) {{
            {c} += 1;
        }}
        {i} += 1;
    }}
    return {c};
}}"""


def f_push_squares(rng, name):
    xs, n, i = "xs", rng.choice(["n", "m", "k"]), rng.choice(IDX)
    cap = rng.randint(3, 6)
    return f"""static void {name}(List<Integer> {xs}, int {n}) {{
    int {i} = 0;
    while ({i} < {n} && {i} < {cap}) {{
        push({xs}, {i} * {i});
        {i} += 1;
    }}
}}"""


def f_classify(rng, name):
    n = pick_vars(rng, 1)[0]
    p, q = rng.sample([2, 3, 5, 7], 2)
    return f"""static int {name}(int {n}) {{
    if ({n} % {p * q} == 0) {{
        return 3;
    }} else if ({n} % {q} == 0) {{
        return 2;
    }} else if ({n} % {p} == 0) {{
        return 1;
    }}
    return 0;
}}"""


def f_abs_diff(rng, name):
    a, b, d = pick_vars(rng, 3)
    return f"""static int {name}(int {a}, int {b}) {{
    int {d} = {a} - {b};
    if ({d} < 0) {{
        {d} = -{d};
    }}
    return {d};
}}"""


def f_sat_add(rng, name):
    a, b, s = pick_vars(rng, 3)
    return f"""static int {name}(int {a}, int {b}) {{
    long {s} = (long) {a} + {b};
    if ({s} > Integer.MAX_VALUE) {{
        return Integer.MAX_VALUE;
    }}
    if ({s} < Integer.MIN_VALUE) {{
        return Integer.MIN_VALUE;
    }}
    return (int) {s};
}}"""


def f_triangle(rng, name):
    n = pick_vars(rng, 1)[0]
    return f"""static int {name}(int {n}) {{
    return {n} * ({n} + 1) / 2;
}}"""


def f_array_mean(rng, name):
    a, s, i = rng.choice(["a", "xs", "vals"]), rng.choice(ACC), rng.choice(IDX)
    return f"""static double {name}(int[] {a}) {{
    double {s} = 0.0;
    int {i} = 0;
    while ({i} < len({a})) {{
        {s} += {a}[{i}];
        {i} += 1;
    }}
    return len({a}) == 0 ? 0.0 : {s} / len({a});
}}"""


def f_label(rng, name):
    x = pick_vars(rng, 1)[0]
    k = rng.randint(-10, 10)
    op = rng.choice(REL)
    w1, w2 = rng.sample(["big", "small", "hot", "cold", "up", "down"], 2)
    return f"""static String {name}(int {x}) {{
    return {x} {op} {k} ? "{w1}" : "{w2}";
}}"""


def f_max3(rng, name):
    a, b, c = pick_vars(rng, 3)
    return f"""static int {name}(int {a}, int {b}, int {c}) {{
    return {a} > {b} ? ({a} > {c} ? {a} : {c}) : ({b} > {c} ? {b} : {c});
}}"""


def f_poly(rng, name):
    x = pick_vars(rng, 1)[0]
    p, q, r = rng.randint(1, 5), rng.randint(-5, 5), rng.randint(-9, 9)
    return f"""static int {name}(int {x}) {{
    {x} = Math.abs({x}) % 100 - 50;
    return {p} * {x} * {x} + {q} * {x} + {r};
}}"""


def f_reverse(rng, name):
    n, r = pick_vars(rng, 2)
    return f"""static int {name}(int {n}) {{
    {n} = Math.abs({n}) % 10000;
    int {r} = 0;
    while ({n} > 0) {{
        {r} = {r} * 10 + {n} % 10;
        {n} /= 10;
    }}
    return {r};
}}"""


def f_collatz(rng, name):
    n, steps = pick_vars(rng, 1)[0], rng.choice(["steps", "cnt"])
    cap = rng.choice([50, 100])
    return f"""static int {name}(int {n}) {{
    if ({n} <= 0) {{
        return 0;
    }}
    int {steps} = 0;
    while ({n} != 1 && {steps} < {cap}) {{
        if ({n} % 2 == 0) {{
            {n} = {n} / 2;
        }} else {{
            {n} = 3 * {n} + 1;
        }}
        {steps} += 1;
    }}
    return {steps};
}}"""


def f_spread(rng, name):
    a, lo, hi, i = rng.choice(["a", "xs"]), "lo", "hi", rng.choice(IDX)
    return f"""static int {name}(int[] {a}) {{
    if (len({a}) == 0) {{
        return 0;
    }}
    int {lo} = Integer.MAX_VALUE;
    int {hi} = Integer.MIN_VALUE;
    int {i} = 0;
    while ({i} < len({a})) {{
        {lo} = Math.min({lo}, {a}[{i}]);
        {hi} = Math.max({hi}, {a}[{i}]);
        {i} += 1;
    }}
    return {hi} - {lo};
}}"""


def f_nested_choice(rng, name):
    x, y = pick_vars(rng, 2)
    v = rng.sample(range(1, 9), 3)
    return f"""static int {name}(int {x}, int {y}) {{
    return {x} > 0 ? {y} > 0 ? {v[0]} : {v[1]} : {v[2]};
}}"""


def f_halves(rng, name):
    x, c = pick_vars(rng, 2)
    lim = rng.choice(["1.0", "0.5", "2.0"])
    return f"""static int {name}(double {x}) {{
    int {c} = 0;
    {x} = Math.abs({x});
    while ({x} > {lim} && {c} < 60) {{
        {x} = {x} / 2.0;
        {c} += 1;
    }}
    return {c};
}}"""


def f_step_sum(rng, name):
    n, s, i = pick_vars(rng, 2) + [rng.choice(IDX)]
    st = rng.choice([2, 3])
    return f"""static int {name}(int {n}) {{
    int {s} = 0;
    int {i} = 0;
    while ({i} < {n} && {i} < 500) {{
        if ({i} % {st} == 0) {{
            {s} += {i};
        }} else {{
            {s} -= 1;
        }}
        {i} += 1;
    }}
    return {s};
}}"""


def f_find(rng, name):
    a, t, i = rng.choice(["a", "xs"]), rng.choice(["t", "key"]), rng.choice(["i", "j"])
    return f"""static int {name}(int[] {a}, int {t}) {{
    int {i} = 0;
    while ({i} < len({a})) {{
        if ({a}[{i}] == {t}) {{
            return {i};
        }}
        {i} += 1;
    }}
    return -1;
}}"""


def f_scale_list(rng, name):
    xs, k, i = "xs", rng.choice(["k", "f"]), rng.choice(IDX)
    return f"""static void {name}(List<Integer> {xs}, int {k}) {{
    int {i} = 0;
    while ({i} < len({xs})) {{
        {xs}[{i}] = Math.abs({xs}[{i}] * {k}) % 1000;
        {i} += 1;
    }}
}}"""


def f_bucket(rng, name):
    x = pick_vars(rng, 1)[0]
    w = rng.choice([5, 10, 25])
    return f"""static int {name}(int {x}) {{
    if ({x} < 0) {{
        return -1;
    }}
    return {x} / {w} * {w};
}}"""


def f_constant(rng, name):
    return f"""static int {name}() {{
    return {rng.choice([1, 8, 16, 32, 64])};
}}"""


FAMILIES = [
    f_digit_sum, f_count_bits, f_mask_eq, f_clamp, f_array_max, f_array_min, f_power,
    f_affine, f_mean, f_ratio, f_sign, f_same_sign, f_printb, f_gcd, f_count_above,
    f_push_squares, f_classify, f_abs_diff, f_sat_add, f_triangle, f_array_mean, f_label,
    f_max3, f_poly, f_reverse, f_collatz, f_spread, f_nested_choice, f_halves, f_step_sum,
    f_find, f_scale_list, f_bucket,
]

# Benchmark entries whose 32-bit results differ from unbounded integers on
# some inputs. Each has a branch only an overflowing input reaches, and the
# listed inputs make the difference visible to every evaluation suite.
DIVERGENT = [
    ("cube_flag", """static int cube_flag(int x) {
    int c = x * x * x;
    if (x > 0 && c < 0) {
        return -1;
    }
    return c;
}""", [[2000], [1500], [-1700]]),
    ("square_twice", """static int square_twice(int x) {
    int s = x * x * 2;
    if (s < 0) {
        return 0;
    }
    return s;
}""", [[40000], [33000], [-45000]]),
    ("shift_mul", """static int shift_mul(int x) {
    int y = x * 65536;
    if (y < 0 && x > 0) {
        return 1;
    }
    return y;
}""", [[40000], [32768], [-40000]]),
    ("poly_hash", """static int poly_hash(int[] a) {
    int h = 7;
    int i = 0;
    while (i < len(a)) {
        h = h * 31 + a[i];
        i += 1;
    }
    if (h < 0) {
        return -h;
    }
    return h;
}""", [[[1, 2, 3, 4, 5, 6, 7, 8]], [[40000, 40000, 40000, 40000, 40000]]]),
    ("factorial", """static int factorial(int n) {
    if (n > 20) {
        return 0;
    }
    int r = 1;
    int i = 2;
    while (i <= n) {
        r = r * i;
        i += 1;
    }
    return r;
}""", [[13], [17], [20]]),
]


# Functions whose only behavior is a constant; their suites have one assert.
CORPUS_ONLY = [f_constant]


def generate(seed, count, prefix, families):
    rng = random.Random(seed)
    out = []
    for i in range(count):
        family = families[i % len(families)]
        name = f"{family.__name__[2:]}_{prefix}{i}"
        out.append((name, family(rng, name)))
    return out


def dj_value(v):
    if isinstance(v, list):
        return {"type": "arr", "elem": "i32", "value": [dj_value(x) for x in v]}
    return {"type": "i32", "value": v}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default=str(pathlib.Path(__file__).resolve().parent.parent / "data"))
    ap.add_argument("--corpus-size", type=int, default=272)
    ap.add_argument("--bench-size", type=int, default=99)
    ap.add_argument("--corpus-seed", type=int, default=11)
    ap.add_argument("--bench-seed", type=int, default=29)
    args = ap.parse_args()
    out = pathlib.Path(args.out)
    (out / "benchmark").mkdir(parents=True, exist_ok=True)

    corpus = generate(args.corpus_seed, args.corpus_size, "c", FAMILIES + CORPUS_ONLY)
    (out / "corpus.dj").write_text("\n\n".join(text for _, text in corpus) + "\n")

    lines = []
    bench = generate(args.bench_seed, args.bench_size, "b", FAMILIES)
    for i, (name, text) in enumerate(bench):
        split = "validation" if i % 3 == 0 else "test"
        lines.append({"id": name, "split": split, "dj": text, "extra_inputs": []})
    for name, text, inputs in DIVERGENT:
        lines.append({"id": name, "split": "test", "dj": text,
                      "extra_inputs": [[dj_value(v) for v in args_] for args_ in inputs]})
    with open(out / "benchmark" / "sources.jsonl", "w") as f:
        for line in lines:
            f.write(json.dumps(line) + "\n")


if __name__ == "__main__":
    main()
