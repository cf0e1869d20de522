"""Exact valuation vectors and the maps between them.

A vector is stored as integer numerators over one positive common
denominator, reduced so that the gcd of everything is 1.  All region tests
reduce to integer comparisons, so boundary cases are decided exactly.

Notation: for a vector ``v`` and embedding ``b`` write
``lambda_b(v) = v_b + p * v_{sigma^-1 b}``.
"""

from __future__ import annotations

import enum
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DomainError, InvariantViolation, ParseError, TooSingularError
from .index import PrimeSplitting, ideal_block

Rational = Fraction | int | str


class Role(enum.Enum):
    X = "X"
    Y = "Y"


class PrimeClass(enum.Enum):
    CANONICAL = "Canonical"
    ANTICANONICAL = "AntiCanonical"
    TOO_SINGULAR = "TooSingular"


def parse_rational(text: str) -> Fraction:
    t = text.strip()
    if not re.fullmatch(r"[+-]?\d+(/\d+)?", t):
        raise ParseError(f"malformed rational {text!r}; expected 'a' or 'a/b'")
    try:
        return Fraction(t)
    except ZeroDivisionError as exc:
        raise ParseError(f"zero denominator in {text!r}") from exc


def fmt_rational(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class ValuationVector:
    splitting: PrimeSplitting
    num: tuple[int, ...]
    den: int
    role: Role = Role.X

    def __post_init__(self) -> None:
        if len(self.num) != self.splitting.g:
            raise ValueError(f"expected {self.splitting.g} entries, got {len(self.num)}")
        if self.den <= 0:
            raise ValueError("denominator must be positive")
        for n in self.num:
            if n < 0 or n > self.den:
                raise DomainError(f"valuation {Fraction(n, self.den)} outside [0, 1]")
        c = math.gcd(self.den, *self.num)
        if c != 1:
            object.__setattr__(self, "num", tuple(n // c for n in self.num))
            object.__setattr__(self, "den", self.den // c)

    @classmethod
    def _trusted(cls, splitting: PrimeSplitting, num: tuple[int, ...], den: int, role: Role) -> ValuationVector:
        """For numerators already in ``[0, den]`` and coprime to ``den`` as a family."""
        obj = object.__new__(cls)
        obj.__dict__.update(splitting=splitting, num=num, den=den, role=role)
        return obj

    @classmethod
    def of(cls, splitting: PrimeSplitting, values: Iterable[Rational], role: Role = Role.X) -> ValuationVector:
        fr = [v if isinstance(v, Fraction) else parse_rational(v) if isinstance(v, str) else Fraction(v) for v in values]
        if len(fr) != splitting.g:
            raise DomainError(f"expected {splitting.g} entries, got {len(fr)}")
        den = math.lcm(*(f.denominator for f in fr)) if fr else 1
        return cls(splitting, tuple(int(f * den) for f in fr), den, role)

    @classmethod
    def parse(cls, splitting: PrimeSplitting, text: str, role: Role = Role.X) -> ValuationVector:
        parts = [t for t in re.split(r"[,\s]+", text.strip()) if t]
        if len(parts) != splitting.g:
            raise ParseError(f"expected {splitting.g} comma-separated rationals for {splitting}, got {len(parts)}")
        return cls.of(splitting, [parse_rational(t) for t in parts], role)

    @classmethod
    def constant(cls, splitting: PrimeSplitting, c: Rational, role: Role = Role.X) -> ValuationVector:
        return cls.of(splitting, [c] * splitting.g, role)

    @property
    def entries(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(n, self.den) for n in self.num)

    def __getitem__(self, slot: tuple[int, int] | int) -> Fraction:
        idx = slot if isinstance(slot, int) else self.splitting.index(slot)
        return Fraction(self.num[idx], self.den)

    def with_role(self, role: Role) -> ValuationVector:
        return ValuationVector._trusted(self.splitting, self.num, self.den, role)

    def same_values(self, other: ValuationVector) -> bool:
        return self.splitting == other.splitting and self.num == other.num and self.den == other.den

    def max(self) -> Fraction:
        return Fraction(max(self.num), self.den)

    def strings(self) -> list[str]:
        return [fmt_rational(x) for x in self.entries]

    def __str__(self) -> str:
        return f"{self.role.value}(" + ", ".join(self.strings()) + ")"


def _check_role(nu: ValuationVector, role: Role, op: str) -> None:
    if nu.role is not role:
        raise DomainError(f"{op} expects a {role.value}-point, got a {nu.role.value}-point")


def _lam_num(nu: ValuationVector, idx: int) -> int:
    """Numerator of lambda at ``idx`` over ``nu.den``."""
    return nu.num[idx] + nu.splitting.p * nu.num[nu.splitting.pred[idx]]


def lam(nu: ValuationVector, slot: tuple[int, int] | int) -> Fraction:
    idx = slot if isinstance(slot, int) else nu.splitting.index(slot)
    return Fraction(_lam_num(nu, idx), nu.den)


def lambdas(nu: ValuationVector) -> tuple[Fraction, ...]:
    return tuple(Fraction(_lam_num(nu, k), nu.den) for k in range(nu.splitting.g))


def _cycle(s: PrimeSplitting, prime: int) -> range:
    return s.cycles[prime]


def _primes(s: PrimeSplitting, primes: Iterable[int] | None) -> Sequence[int]:
    if primes is None:
        return range(s.num_primes)
    out = sorted(set(primes))
    s.block_mask(out)
    return out


def classify_at_prime(nu: ValuationVector, prime: int) -> PrimeClass:
    _check_role(nu, Role.Y, "classify_at_prime")
    s = nu.splitting
    bound = s.p * nu.den
    lams = [_lam_num(nu, k) for k in s.cycles[prime]]
    if max(lams) < bound:
        return PrimeClass.CANONICAL
    if min(lams) > bound:
        return PrimeClass.ANTICANONICAL
    return PrimeClass.TOO_SINGULAR


def classify(nu: ValuationVector) -> tuple[PrimeClass, ...]:
    return tuple(classify_at_prime(nu, i) for i in range(nu.splitting.num_primes))


def in_U(nu: ValuationVector, primes: Iterable[int] | None = None) -> bool:
    """Every lambda over the chosen cycles is below p (default: all cycles)."""
    _check_role(nu, Role.X, "in_U")
    s = nu.splitting
    bound = s.p * nu.den
    if primes is None:
        return max(_lam_num(nu, k) for k in range(s.g)) < bound
    return all(_lam_num(nu, k) < bound for i in _primes(s, primes) for k in s.cycles[i])


def in_V(nu: ValuationVector, primes: Iterable[int] | None = None) -> bool:
    return all(classify_at_prime(nu, i) is PrimeClass.CANONICAL for i in _primes(nu.splitting, primes))


def in_W(nu: ValuationVector, primes: Iterable[int] | None = None) -> bool:
    return all(classify_at_prime(nu, i) is PrimeClass.ANTICANONICAL for i in _primes(nu.splitting, primes))


def is_determined(nu: ValuationVector) -> bool:
    """No prime is too singular, i.e. the point lies over the union of V- and W-type regions."""
    return all(c is not PrimeClass.TOO_SINGULAR for c in classify(nu))


def w_map(nu: ValuationVector) -> ValuationVector:
    _check_role(nu, Role.Y, "w_map")
    # gcd(den, den - n_k) over k equals gcd(den, n_k), so the result stays reduced
    return ValuationVector._trusted(nu.splitting, tuple(nu.den - n for n in nu.num), nu.den, Role.Y)


@dataclass(frozen=True)
class Interval:
    """Closed rational interval; exact values have ``lo == hi``."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))
        if not 0 <= self.lo <= self.hi <= 1:
            raise InvariantViolation(f"bad interval [{self.lo}, {self.hi}]")

    @classmethod
    def exact(cls, x: Fraction) -> Interval:
        return cls(x, x)

    @property
    def is_exact(self) -> bool:
        return self.lo == self.hi

    def serialize(self) -> str | list[str]:
        return fmt_rational(self.lo) if self.is_exact else [fmt_rational(self.lo), fmt_rational(self.hi)]


@dataclass(frozen=True)
class IntervalVector:
    splitting: PrimeSplitting
    intervals: tuple[Interval, ...]

    @property
    def is_exact(self) -> bool:
        return all(iv.is_exact for iv in self.intervals)

    def lower(self) -> ValuationVector:
        return ValuationVector.of(self.splitting, [iv.lo for iv in self.intervals], Role.X)

    def upper(self) -> ValuationVector:
        return ValuationVector.of(self.splitting, [iv.hi for iv in self.intervals], Role.X)

    def exact_vector(self) -> ValuationVector:
        if not self.is_exact:
            raise DomainError("interval vector is not exact")
        return self.lower()


def pi_fiberwise(nu: ValuationVector) -> IntervalVector:
    """Per-embedding value (or bounds) of the image valuation under the projection."""
    _check_role(nu, Role.Y, "pi_fiberwise")
    s = nu.splitting
    d = nu.den
    p = s.p
    out = []
    for k in range(s.g):
        q = nu.num[k]
        t = nu.num[s.pred[k]]
        # everything below is a numerator over d; p(1 - s) has numerator p(d - t)
        if q == 0 and t != d:
            iv = Interval.exact(Fraction(0))
        elif q != 0 and t == d:
            iv = Interval.exact(Fraction(0))
        elif q == 0 and t == d:
            iv = Interval(Fraction(0), Fraction(1))
        elif q != d and t != 0:
            other = p * (d - t)
            m = Fraction(min(q, other), d)
            iv = Interval.exact(m) if q != other else Interval(m, Fraction(1))
        elif q != d:
            iv = Interval.exact(Fraction(q, d))
        elif t != 0:
            iv = Interval.exact(Fraction(min(p * (d - t), d), d))
        else:
            iv = Interval.exact(Fraction(1))
        out.append(iv)
    return IntervalVector(s, tuple(out))


def _too_singular(nu: ValuationVector, prime: int, what: str) -> TooSingularError:
    s = nu.splitting
    bound = s.p * nu.den
    cyc = list(_cycle(s, prime))
    low = next(k for k in cyc if _lam_num(nu, k) <= bound)
    high = next(k for k in cyc if _lam_num(nu, k) >= bound)
    return TooSingularError(
        f"{what}: too singular at prime {prime} (lambda{s.slots[low]} = {lam(nu, low)}, "
        f"lambda{s.slots[high]} = {lam(nu, high)}, p = {s.p}); valuation not determined, use pi_fiberwise",
        prime,
        s.slots[low],
        s.slots[high],
    )


def pi_exact(nu: ValuationVector) -> ValuationVector:
    """Image valuation vector, defined when no prime is too singular."""
    _check_role(nu, Role.Y, "pi_exact")
    s = nu.splitting
    d = nu.den
    out = list(nu.num)
    changed = False
    for i, cls in enumerate(classify(nu)):
        if cls is PrimeClass.TOO_SINGULAR:
            raise _too_singular(nu, i, "pi_exact")
        if cls is PrimeClass.ANTICANONICAL:
            changed = True
            for k in _cycle(s, i):
                out[k] = min(s.p * (d - nu.num[s.pred[k]]), d)
    if not changed:
        return ValuationVector._trusted(s, nu.num, d, Role.X)
    return ValuationVector(s, tuple(out), d, Role.X)


def restrict_vector(nu: ValuationVector, primes: Iterable[int]) -> ValuationVector:
    """Coordinates on the chosen cycles, over the restricted splitting."""
    chosen = sorted(set(primes))
    s = nu.splitting
    sub = s.restrict(chosen)
    nums = tuple(nu.num[k] for i in chosen for k in _cycle(s, i))
    return ValuationVector(sub, nums, nu.den, nu.role)


def section_dagger(nu: ValuationVector, primes: Iterable[int] | None = None) -> ValuationVector:
    """Canonical-subgroup section.

    With ``primes`` given, the result is a point over the splitting restricted
    to those cycles (coordinates outside them carry no data).
    """
    _check_role(nu, Role.X, "section_dagger")
    chosen = _primes(nu.splitting, primes)
    if not in_U(nu, chosen):
        s = nu.splitting
        bad = next(k for i in chosen for k in _cycle(s, i) if _lam_num(nu, k) >= s.p * nu.den)
        raise DomainError(
            f"section_dagger: point not in U (lambda{s.slots[bad]} = {lam(nu, bad)} >= p = {s.p})"
        )
    base = nu if primes is None else restrict_vector(nu, chosen)
    return base.with_role(Role.Y)


def quotient_valuation(nu: ValuationVector) -> ValuationVector:
    """Valuation vector of the quotient by the marked subgroup."""
    _check_role(nu, Role.Y, "quotient_valuation")
    try:
        return pi_exact(w_map(nu))
    except TooSingularError as exc:
        raise TooSingularError(
            f"quotient_valuation: w-image {exc}", exc.prime, exc.low, exc.high
        ) from None


def hecke_regime(nu: ValuationVector, prime: int) -> int:
    """Regime of an X-point in U at one prime: 1 (all lambda < 1), 2 (all in (1, p)), else 3."""
    _check_role(nu, Role.X, "hecke_regime")
    if not in_U(nu, [prime]):
        raise DomainError(f"point not in U at prime {prime}")
    lams = [_lam_num(nu, k) for k in _cycle(nu.splitting, prime)]
    if all(x < nu.den for x in lams):
        return 1
    if all(x > nu.den for x in lams):
        return 2
    return 3


def step_rules(nu: ValuationVector) -> tuple[str, ...]:
    """Per-prime rule applied by ``quotient_valuation`` at a Y-point."""
    _check_role(nu, Role.Y, "step_rules")
    here = classify(nu)
    there = classify(w_map(nu))
    out = []
    for h, t in zip(here, there):
        if t is PrimeClass.TOO_SINGULAR:
            out.append("error-3")
        elif h is PrimeClass.CANONICAL:
            out.append("hecke-1" if t is PrimeClass.ANTICANONICAL else "hecke-2")
        elif h is PrimeClass.ANTICANONICAL:
            out.append("hecke-4")
        else:
            out.append("undetermined")
    return tuple(out)


def iterate_canonical(nu: ValuationVector, n: int) -> list[ValuationVector | IntervalVector]:
    """Valuations of the quotients by the first ``n + 1`` higher canonical subgroups.

    The first ``n`` entries are always exact.  If the last step is too
    singular, the last entry holds the bounds from ``pi_fiberwise``.
    """
    _check_role(nu, Role.X, "iterate_canonical")
    if n < 0:
        raise DomainError("n must be nonnegative")
    s = nu.splitting
    # lambda < p^(1-n)  <=>  lambda_num * p^(n-1) < den, cleared to integers
    scale, bound = (s.p ** (n - 1), nu.den) if n >= 1 else (1, s.p * nu.den)
    bad = [k for k in range(s.g) if _lam_num(nu, k) * scale >= bound]
    if bad:
        k = bad[0]
        raise DomainError(
            f"iterate_canonical: lambda{s.slots[k]} = {lam(nu, k)} is not below p^(1-n) = {Fraction(s.p) ** (1 - n)}"
        )
    chain: list[ValuationVector | IntervalVector] = []
    cur = nu
    for i in range(n + 1):
        y = section_dagger(cur)
        if i < n:
            cur = quotient_valuation(y)
            chain.append(cur)
            continue
        img = w_map(y)
        chain.append(pi_exact(img) if is_determined(img) else pi_fiberwise(img))
    return chain


def reduction_precision(nu: ValuationVector, order: int = 1, kind: str = "canonical") -> Fraction:
    """Exponent e such that the subgroup reduces to the Frobenius kernel modulo p^e."""
    _check_role(nu, Role.X, "reduction_precision")
    if not in_U(nu):
        raise DomainError("reduction_precision: point not in U")
    if order < 1:
        raise DomainError("order must be >= 1")
    v = nu.max()
    if kind == "canonical":
        return 1 - Fraction(nu.splitting.p) ** (order - 1) * v
    if kind == "anticanonical":
        if order != 1:
            raise DomainError("anticanonical precision is only defined for order 1")
        return 1 - v / nu.splitting.p
    raise DomainError(f"unknown kind {kind!r}")


def cusp_vector(splitting: PrimeSplitting, primes: Iterable[int]) -> ValuationVector:
    """Y-point of the cusp attached to the ideal t: indicator of the complementary cycles."""
    comp = ~ideal_block(splitting, primes)
    return ValuationVector(splitting, tuple(int(comp.has_index(k)) for k in range(splitting.g)), 1, Role.Y)


def optimality_threshold(p: int) -> Fraction:
    return Fraction(p, p + 1)


@dataclass(frozen=True)
class OrbitStep:
    x: ValuationVector
    y: ValuationVector
    rules: tuple[str, ...]
    next_x: ValuationVector | None
    error: str | None = None


def up_orbit(start: ValuationVector, steps: int) -> list[OrbitStep]:
    """Iterate ``x -> quotient_valuation(section_dagger(x))``.

    ``start`` may be an X-point in U or an explicit Y-point in the determined
    region (then the first step uses it as is).  Stops after ``steps`` steps,
    at a fixed point, or at a too-singular step (recorded with ``error``).
    """
    if start.role is Role.X:
        x, y = start, section_dagger(start)
    else:
        x, y = pi_exact(start), start
    trace: list[OrbitStep] = []
    for _ in range(steps):
        rules = step_rules(y)
        try:
            nxt = quotient_valuation(y)
        except TooSingularError as exc:
            trace.append(OrbitStep(x, y, rules, None, str(exc)))
            break
        trace.append(OrbitStep(x, y, rules, nxt))
        if nxt.same_values(x) and y.same_values(section_dagger(x)):
            break
        x = nxt
        y = section_dagger(x)
    return trace


def lambda_table(nu: ValuationVector) -> list[dict[str, object]]:
    s = nu.splitting
    return [{"beta": list(s.slots[k]), "lambda": fmt_rational(lam(nu, k))} for k in range(s.g)]
