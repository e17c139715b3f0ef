#!/usr/bin/env python3
"""Regenerates src/igusa_terms.inc.

I2, I4, I6 are fitted as polynomials in a0..a6 from their root forms on
random split sextics (exact rational linear algebra); I10 is the
discriminant. Usage: gen_igusa_terms.py > src/igusa_terms.inc
"""

import itertools
import random
import sys
from fractions import Fraction

import sympy as sp


def pairings(s):
    if not s:
        yield []
        return
    for i in range(1, len(s)):
        for rest in pairings(s[1:i] + s[i + 1:]):
            yield [(s[0], s[i])] + rest


PAIRINGS = list(pairings(list(range(6))))
SPLITS = [(c, tuple(x for x in range(6) if x not in c))
          for c in itertools.combinations(range(6), 3) if 0 in c]


def d2(r, i, j):
    return (r[i] - r[j]) ** 2


def root_forms(lead, r):
    i2 = sum(d2(r, *p[0]) * d2(r, *p[1]) * d2(r, *p[2]) for p in PAIRINGS)
    i4 = 0
    i6 = 0
    for a, b in SPLITS:
        ta = d2(r, a[0], a[1]) * d2(r, a[1], a[2]) * d2(r, a[2], a[0])
        tb = d2(r, b[0], b[1]) * d2(r, b[1], b[2]) * d2(r, b[2], b[0])
        i4 += ta * tb
        for perm in itertools.permutations(b):
            i6 += ta * tb * d2(r, a[0], perm[0]) * d2(r, a[1], perm[1]) * d2(r, a[2], perm[2])
    return [i2 * lead ** 2, i4 * lead ** 4, i6 * lead ** 6]


def expand(lead, r):
    c = [lead]
    for root in r:
        n = [0] * (len(c) + 1)
        for i, v in enumerate(c):
            n[i] -= root * v
            n[i + 1] += v
        c = n
    return c


def monomials(k):
    out = []

    def rec(i, left, w, cur):
        if i == 6:
            if 6 * left == w:
                out.append(tuple(cur + [left]))
            return
        for e in range(left + 1):
            if i * e > w:
                break
            rec(i + 1, left - e, w - i * e, cur + [e])

    rec(0, k, 3 * k, [])
    return out


def solve(rows, rhs):
    n = len(rows[0])
    m = [[Fraction(v) for v in row] + [Fraction(b)] for row, b in zip(rows, rhs)]
    rank = 0
    for col in range(n):
        piv = next(i for i in range(rank, len(m)) if m[i][col] != 0)
        m[rank], m[piv] = m[piv], m[rank]
        inv = 1 / m[rank][col]
        m[rank] = [v * inv for v in m[rank]]
        for i in range(len(m)):
            if i != rank and m[i][col] != 0:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
        rank += 1
    assert all(row[n] == 0 for row in m[rank:])
    return [m[i][n] for i in range(n)]


def evaluate(c, e):
    out = 1
    for ci, ei in zip(c, e):
        out *= ci ** ei
    return out


def main():
    rng = random.Random(1)
    tables = {}
    for idx, k in enumerate([2, 4, 6]):
        ms = monomials(k)
        rows, rhs = [], []
        while len(rows) < len(ms) + 8:
            r = [rng.randint(-12, 12) for _ in range(6)]
            if len(set(r)) < 6:
                continue
            lead = rng.choice([1, 2, 3, -1, 5])
            c = expand(lead, r)
            rows.append([evaluate(c, e) for e in ms])
            rhs.append(root_forms(lead, r)[idx])
        sol = solve(rows, rhs)
        tables[k] = {ms[i]: sol[i] for i in range(len(ms)) if sol[i] != 0}
    a = sp.symbols("a0:7")
    x = sp.symbols("x")
    disc = sp.Poly(sp.discriminant(sum(a[i] * x ** i for i in range(7)), x), *a)
    tables[10] = {m: Fraction(int(c)) for m, c in disc.terms()}

    out = sys.stdout
    out.write("// Generated by tools/gen_igusa_terms.py. Do not edit.\n")
    for k in (2, 4, 6, 10):
        terms = sorted(tables[k].items())
        out.write(f"constexpr IgusaTerm kI{k}[] = {{\n")
        for e, c in terms:
            assert c.denominator == 1
            exps = ", ".join(str(v) for v in e)
            out.write(f"    {{{int(c)}, {{{exps}}}}},\n")
        out.write("};\n")


if __name__ == "__main__":
    main()
