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
"""Independent arithmetic for the interpreter and beam-score tests.

Everything here uses Python integers and floats directly; nothing is shared
with the C++ code. Run with no arguments to print, --check to compare with
the values frozen in the C++ tests.
"""

import math
import sys


def wrap32(v):
    v &= 0xFFFFFFFF
    return v - (1 << 32) if v >= 1 << 31 else v


def fast_pow(b, e, wrap):
    # Square-and-multiply, the loop of the Java pow function.
    r = 1
    while e > 0:
        if e & 1 == 1:
            r = r * b
            if wrap:
                r = wrap32(r)
        b = b * b
        if wrap:
            b = wrap32(b)
        e >>= 1
    return r


MOD = 1_000_000_007


def cache_sim(steps, p_sample, p_remove, warmup, seed, drain=False):
    # Each generated pair is trained once and cached; a cache step trains a
    # uniformly drawn entry and removes it with probability p_remove.
    import random
    rng = random.Random(seed)
    cache = []
    retired = []
    for _ in range(steps):
        if len(cache) >= max(warmup, 1) and rng.random() < p_sample:
            i = rng.randrange(len(cache))
            cache[i] += 1
            if rng.random() < p_remove:
                retired.append(cache.pop(i))
        else:
            cache.append(1)
    while drain and cache:
        i = rng.randrange(len(cache))
        cache[i] += 1
        if rng.random() < p_remove:
            retired.append(cache.pop(i))
    return sum(retired) / len(retired), len(retired)


def compute():
    out = {}
    out["pow_wrap(-1,-1)"] = fast_pow(-1, -1, True)
    out["pow_wrap(0,1)"] = fast_pow(0, 1, True)
    out["pow_wrap(1,1)"] = fast_pow(1, 1, True)
    out["pow_wrap(-13133,2743)"] = fast_pow(-13133, 2743, True)
    big = (-13133) ** 2743
    assert big == fast_pow(-13133, 2743, False)
    out["pow_big_mod"] = big % MOD
    out["pow_big_bits"] = big.bit_length()
    out["pow_big_negative"] = big < 0
    first = None
    for n in range(1, 21):
        exact = math.factorial(n)
        wrapped = 1
        for i in range(1, n + 1):
            wrapped = wrap32(wrapped * i)
        if exact != wrapped and first is None:
            first = n
        if first is not None:
            assert exact != wrapped, n
    out["factorial_first_divergence"] = first
    out["factorial_wrap(13)"] = wrap32(math.factorial(13))
    out["score(-2,16,.5)"] = -2 / math.sqrt(16)
    out["score(-2,25,.5)"] = -2 / math.sqrt(25)
    out["laplace(100 of 100)"] = (100 + 1) / (100 + 2)
    out["i32_max_plus_1"] = wrap32(2147483647 + 1)
    out["cache_mean_times_trained(p_remove=.3)"] = 1 + 1 / 0.3
    # Entries still cached at the end are censored, so the plain mean over
    # retired entries is biased low; draining the cache removes the bias.
    out["cache_sim(100000 steps)"] = cache_sim(100_000, 0.5, 0.3, 500, 7)
    out["cache_sim(100000 steps, drained)"] = cache_sim(100_000, 0.5, 0.3, 500, 7, True)
    return out


FROZEN = {
    "pow_wrap(-1,-1)": 1,
    "pow_wrap(0,1)": 0,
    "pow_wrap(1,1)": 1,
    "pow_wrap(-13133,2743)": -1787379173,
    "pow_big_mod": 466698401,
    "pow_big_bits": 37527,
    "factorial_wrap(13)": 1932053504,
    "factorial_first_divergence": 13,
    "score(-2,16,.5)": -0.5,
    "score(-2,25,.5)": -0.4,
    "i32_max_plus_1": -2147483648,
    "laplace(100 of 100)": 101 / 102,
}


def main():
    vals = compute()
    if "--check" in sys.argv:
        bad = [k for k, v in FROZEN.items() if vals[k] != v]
        for k in bad:
            print(f"mismatch {k}: {vals[k]} != {FROZEN[k]}")
        return 1 if bad else 0
    for k, v in vals.items():
        print(f"{k} = {v}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
