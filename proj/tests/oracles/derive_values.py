#!/usr/bin/env python3
"""Independent brute-force derivation of expected values frozen into the C++ tests.

Uses only Python's exact `fractions` module and a direct transcription of the
recycler loop, so none of the C++ implementation paths are involved.
"""
from fractions import Fraction as F
from math import log2, ceil
from collections import Counter, defaultdict


def roll(n, bits):
    """Return (outcome | None, flips, final state) replaying `bits`."""
    x, m, used = 1, 1, 0
    while m < n:
        if used == len(bits):
            return None, used, (x, m)
        b = bits[used]
        used += 1
        x, m = x + b * m, 2 * m
        if m >= n and x <= n:
            m = n
        elif m >= n and x > n:
            x, m = x - n, m - n
    return x, used, (x, m)


def enumerate_uniform(n, depth):
    """Walk every bit string up to depth; exact masses."""
    outcome, flips, live = defaultdict(F), defaultdict(F), F(0)
    states = {}
    frontier = [()]
    res = roll(n, [])
    if res[0] is not None:
        return {res[0]: F(1)}, {0: F(1)}, F(0), {"": res[2]}
    states[""] = (1, 1)
    for d in range(1, depth + 1):
        nxt = []
        for h in frontier:
            for b in (0, 1):
                hb = h + (b,)
                o, used, st = roll(n, list(hb))
                states["".join(map(str, hb))] = st
                if o is None:
                    nxt.append(hb)
                else:
                    assert used == d
                    outcome[o] += F(1, 2 ** d)
                    flips[d] += F(1, 2 ** d)
        frontier = nxt
    live = F(len(frontier), 2 ** depth)
    return dict(outcome), dict(flips), live, states


def bit(p, j):
    return (p * 2 ** j).__floor__() - 2 * (p * 2 ** (j - 1)).__floor__()


def expected_truncated(n, depth):
    tot = F(0)
    for j in range(1, depth + 1):
        tot += j * n * bit(F(1, n), j) * F(1, 2 ** j)
    return tot


if __name__ == "__main__":
    print("n=4 replay [1,0]:", roll(4, [1, 0]))
    print("n=5 replay [0,0,0]:", roll(5, [0, 0, 0]))
    print("n=5 replay [1,1,1]:", roll(5, [1, 1, 1]))
    print("n=5 replay [1,1,1,1]:", roll(5, [1, 1, 1, 1]))
    for n in (2, 3, 5, 6, 7, 12):
        o, fl, live, _ = enumerate_uniform(n, 30)
        e_trunc = sum(j * m for j, m in fl.items())
        print(f"n={n} depth30 E_trunc={float(e_trunc):.12f} live={live}")
    o, fl, live, st = enumerate_uniform(5, 4)
    print("n=5 d4 live", live, "flips", fl)
    o, fl, live, st = enumerate_uniform(5, 8)
    print("n=5 d8 outcome masses", o, "live", live)
    by_depth = defaultdict(list)
    for h, s in st.items():
        by_depth[len(h)].append(s)
    for d in range(0, 7):
        print("depth", d, sorted(Counter(by_depth[d]).items()))
    _, _, _, st6 = enumerate_uniform(5, 6)
    for d in range(0, 7):
        print("d6 depth", d, sorted(Counter(s for h, s in st6.items() if len(h) == d).items()))
    print("1/5 bits", [bit(F(1, 5), j) for j in range(1, 13)])
    print("1/6 bits", [bit(F(1, 6), j) for j in range(1, 13)])
    print("n=6 P(N=j)", [(j, 6 * bit(F(1, 6), j) * F(1, 2 ** j)) for j in range(1, 9)])
    print("n=3 E trunc 200", float(expected_truncated(3, 200)), "n=5", float(expected_truncated(5, 200)))
    for n in (3, 5, 6, 7, 9, 12):
        print(n, "E~", float(expected_truncated(n, 400)))
    # (1/3, 2/3) canonical residual at depth 6: live nodes = Σ frac(2^6 p_i)
    p = [F(1, 3), F(2, 3)]
    for d in range(1, 7):
        res = sum((x * 2 ** d) - (x * 2 ** d).__floor__() for x in p)
        print("(1/3,2/3) depth", d, "live nodes", res, "residual mass", res / 2 ** d,
              "A", [i + 1 for i, x in enumerate(p) if bit(x, d)])
    q = [F(3, 8), F(1, 2), F(1, 8)]
    print("entropy(3/8,1/2,1/8)", -sum(float(x) * log2(float(x)) for x in q))
    # n=5 slack
    print("slack n=5", 4 - F(18, 5))
