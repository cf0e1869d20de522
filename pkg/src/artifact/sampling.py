"""Seeded random rational vectors for property checks."""

from __future__ import annotations

import functools
import math
import random
from fractions import Fraction
from typing import Callable

from .dynamics import Role, ValuationVector
from .index import PrimeSplitting

DEFAULT_MAX_DEN = 30
_ZERO, _ONE = Fraction(0), Fraction(1)


def random_rational(rng: random.Random, lo: Fraction = Fraction(0), hi: Fraction = Fraction(1), max_den: int = DEFAULT_MAX_DEN) -> Fraction:
    """``lo + (hi - lo) * n / d`` with ``d`` uniform in ``1..max_den``; small denominators hit boundaries often."""
    d = rng.randint(1, max_den)
    return lo + (hi - lo) * Fraction(rng.randint(0, d), d)


@functools.lru_cache(maxsize=8)
def _numerator_ranges(max_den: int) -> tuple[range, ...]:
    """Slot 0 holds the denominators ``1..max_den``; slot ``d`` holds ``0..d``."""
    return (range(1, max_den + 1),) + tuple(range(d + 1) for d in range(1, max_den + 1))


def random_vector(
    rng: random.Random,
    splitting: PrimeSplitting,
    role: Role = Role.X,
    lo: Fraction = _ZERO,
    hi: Fraction = _ONE,
    max_den: int = DEFAULT_MAX_DEN,
) -> ValuationVector:
    """Entries drawn as by :func:`random_rational`, assembled over one common denominator."""
    # choice(range(...)) draws the same stream as randrange with less overhead
    choice, numerators = rng.choice, _numerator_ranges(max_den)
    dens = numerators[0]
    ds, ns = [], []
    for _ in range(splitting.g):
        d = choice(dens)
        ds.append(d)
        ns.append(choice(numerators[d]))
    den = math.lcm(*ds)
    if (lo is _ZERO or lo == 0) and (hi is _ONE or hi == 1):
        nums = [n * (den // d) for d, n in zip(ds, ns)]
        c = math.gcd(den, *nums)
        if c != 1:
            den //= c
            nums = [n // c for n in nums]
        return ValuationVector._trusted(splitting, tuple(nums), den, role)
    lo, width = Fraction(lo), Fraction(hi) - Fraction(lo)
    # entry k is (lo.n * w.d * d + w.n * lo.d * n) / (lo.d * w.d * d)
    a, b = lo.numerator * width.denominator, width.numerator * lo.denominator
    base = lo.denominator * width.denominator
    nums = tuple((a * d + b * n) * (den // d) for d, n in zip(ds, ns))
    return ValuationVector(splitting, nums, base * den, role)


def sample_where(
    rng: random.Random,
    splitting: PrimeSplitting,
    pred: Callable[[ValuationVector], bool],
    role: Role = Role.X,
    lo: Fraction = _ZERO,
    hi: Fraction = _ONE,
    max_den: int = DEFAULT_MAX_DEN,
    max_tries: int = 100_000,
) -> ValuationVector:
    """Rejection sampling inside the box ``[lo, hi]^g``."""
    for _ in range(max_tries):
        v = random_vector(rng, splitting, role, lo, hi, max_den)
        if pred(v):
            return v
    raise RuntimeError(f"no sample satisfied the predicate in {max_tries} tries")
