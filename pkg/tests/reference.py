"""Slow, set-based reimplementations used as oracles.

Everything here works on frozensets of (prime, slot) pairs and Fractions;
nothing is imported from the package beyond plain data.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import chain, combinations, product


def slots(degrees):
    return [(i, j) for i, f in enumerate(degrees) for j in range(f)]


def shift(degrees, s, k):
    return frozenset((i, (j + k) % degrees[i]) for i, j in s)


def left(degrees, s):
    return shift(degrees, s, -1)


def right(degrees, s):
    return shift(degrees, s, 1)


def subsets(xs):
    xs = list(xs)
    return [frozenset(c) for c in chain.from_iterable(combinations(xs, r) for r in range(len(xs) + 1))]


def admissible(degrees, phi, eta):
    full = frozenset(slots(degrees))
    return left(degrees, full - phi) <= eta


def admissible_pairs(degrees):
    subs = subsets(slots(degrees))
    return {(phi, eta) for phi in subs for eta in subs if admissible(degrees, phi, eta)}


def values(degrees, entries):
    return dict(zip(slots(degrees), (Fraction(x) for x in entries)))


def lam(p, degrees, nu, b):
    i, j = b
    return nu[b] + p * nu[(i, (j - 1) % degrees[i])]


def in_U(p, degrees, nu):
    return all(lam(p, degrees, nu, b) < p for b in nu)


def prime_class(p, degrees, nu, i):
    ls = [lam(p, degrees, nu, (i, j)) for j in range(degrees[i])]
    if all(x < p for x in ls):
        return "Canonical"
    if all(x > p for x in ls):
        return "AntiCanonical"
    return "TooSingular"


def pi_bounds(p, degrees, nu):
    """Per-embedding (lo, hi) straight from the case table on (q, s) = (nu_b, nu_{sigma^-1 b})."""
    out = {}
    for (i, j), q in nu.items():
        s = nu[(i, (j - 1) % degrees[i])]
        if q == 0 and s != 1:
            out[(i, j)] = (Fraction(0), Fraction(0))
        elif q != 0 and s == 1:
            out[(i, j)] = (Fraction(0), Fraction(0))
        elif q == 0 and s == 1:
            out[(i, j)] = (Fraction(0), Fraction(1))
        elif q != 1 and s != 0:
            m = min(q, p * (1 - s))
            out[(i, j)] = (m, m) if q != p * (1 - s) else (m, Fraction(1))
        elif q != 1:
            out[(i, j)] = (q, q)
        elif s != 0:
            m = min(p * (1 - s), Fraction(1))
            out[(i, j)] = (m, m)
        else:
            out[(i, j)] = (Fraction(1), Fraction(1))
    return out


def face(nu):
    return "".join("0" if v == 0 else "1" if v == 1 else "*" for v in nu.values())


def face_pair(degrees, word):
    """(phi, eta) of a face word laid out in slot order."""
    ss = slots(degrees)
    not_one = frozenset(b for b, a in zip(ss, word) if a != "1")
    not_zero = frozenset(b for b, a in zip(ss, word) if a != "0")
    return right(degrees, not_one), not_zero


def spaced(degrees, s):
    return not (right(degrees, s) & s)


def compositions(n):
    for cut in product((0, 1), repeat=n - 1):
        parts, cur = [], 1
        for c in cut:
            if c:
                parts.append(cur)
                cur = 1
            else:
                cur += 1
        parts.append(cur)
        yield tuple(parts)
