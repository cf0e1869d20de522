"""Open faces of the valuation cube [0,1]^B and their bijection with strata.

A face is a word over ``0``, ``*``, ``1``: ``0`` and ``1`` pin the coordinate
to that endpoint and ``*`` leaves it open in ``(0, 1)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from fractions import Fraction
from typing import Iterable, Iterator

from .errors import DomainError
from .index import EmbSet, PrimeSplitting
from .strata import AdmissiblePair

ZERO, STAR, ONE = "0", "*", "1"
SYMBOLS = (ZERO, STAR, ONE)
_DIGIT = {ZERO: 0, STAR: 1, ONE: 2}


@dataclass(frozen=True)
class FaceCode:
    splitting: PrimeSplitting
    entries: tuple[str, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "entries", tuple(self.entries))
        if len(self.entries) != self.splitting.g:
            raise ValueError(f"face code needs {self.splitting.g} entries, got {len(self.entries)}")
        bad = [e for e in self.entries if e not in _DIGIT]
        if bad:
            raise ValueError(f"face entries must be in {SYMBOLS}, got {bad}")

    @classmethod
    def _trusted(cls, splitting: PrimeSplitting, entries: tuple[str, ...]) -> FaceCode:
        obj = object.__new__(cls)
        obj.__dict__.update(splitting=splitting, entries=entries)
        return obj

    @classmethod
    def parse(cls, splitting: PrimeSplitting, text: str) -> FaceCode:
        return cls(splitting, tuple(c for c in text if not c.isspace() and c != ","))

    @classmethod
    def from_code(cls, splitting: PrimeSplitting, code: int) -> FaceCode:
        g = splitting.g
        if not 0 <= code < 3**g:
            raise ValueError(f"face code {code} out of range for g={g}")
        digits = []
        for _ in range(g):
            code, d = divmod(code, 3)
            digits.append(SYMBOLS[d])
        return cls(splitting, tuple(reversed(digits)))

    @property
    def code(self) -> int:
        """Base-3 index with the first embedding as the leading digit."""
        c = 0
        for e in self.entries:
            c = 3 * c + _DIGIT[e]
        return c

    @cached_property
    def _masks(self) -> tuple[int, int, int]:
        """Bit masks of the entries that are not 0, equal *, and are not 1."""
        not_zero = star = not_one = 0
        for k, e in enumerate(self.entries):
            bit = 1 << k
            if e == ZERO:
                not_one |= bit
            elif e == ONE:
                not_zero |= bit
            else:
                not_zero |= bit
                star |= bit
                not_one |= bit
        return not_zero, star, not_one

    def eta(self) -> EmbSet:
        return EmbSet._trusted(self.splitting, self._masks[0])

    def crit(self) -> EmbSet:
        return EmbSet._trusted(self.splitting, self._masks[1])

    def phi(self) -> EmbSet:
        # phi = {b : a at sigma^-1 b is not 1}
        s = self.splitting
        return EmbSet._trusted(s, s.shift_bits(self._masks[2], 1))

    def dim(self) -> int:
        return self.entries.count(STAR)

    def complement(self) -> FaceCode:
        swap = {ZERO: ONE, ONE: ZERO, STAR: STAR}
        return FaceCode(self.splitting, tuple(swap[e] for e in self.entries))

    def __str__(self) -> str:
        return "".join(self.entries)


def iter_faces(splitting: PrimeSplitting) -> Iterator[FaceCode]:
    """All 3^g faces in increasing base-3 code."""
    g = splitting.g
    digits = [0] * g
    for _ in range(3**g):
        yield FaceCode._trusted(splitting, tuple(SYMBOLS[d] for d in digits))
        k = g - 1
        while k >= 0:
            digits[k] += 1
            if digits[k] < 3:
                break
            digits[k] = 0
            k -= 1


def face_of_values(splitting: PrimeSplitting, values: Iterable[Fraction]) -> FaceCode:
    out = []
    for v in values:
        if v < 0 or v > 1:
            raise DomainError(f"valuation {v} outside [0, 1]")
        out.append(ZERO if v == 0 else ONE if v == 1 else STAR)
    return FaceCode(splitting, tuple(out))


def face_of_vector(nu) -> FaceCode:
    """Face containing a valuation vector (any object with ``splitting`` and ``entries``)."""
    num, den = getattr(nu, "num", None), getattr(nu, "den", None)
    if num is None or den is None:
        return face_of_values(nu.splitting, nu.entries)
    # integer numerators over a positive denominator, already checked to lie in [0, den]
    out = []
    not_zero = star = not_one = 0
    for k, n in enumerate(num):
        bit = 1 << k
        if n == 0:
            out.append(ZERO)
            not_one |= bit
        elif n == den:
            out.append(ONE)
            not_zero |= bit
        else:
            out.append(STAR)
            not_zero |= bit
            star |= bit
            not_one |= bit
    face = FaceCode._trusted(nu.splitting, tuple(out))
    face.__dict__["_masks"] = (not_zero, star, not_one)
    return face


def face_to_pair(a: FaceCode) -> AdmissiblePair:
    s = a.splitting
    not_zero, _, not_one = a._masks
    return AdmissiblePair(EmbSet._trusted(s, s.shift_bits(not_one, 1)), EmbSet._trusted(s, not_zero))


def pair_to_face(pair: AdmissiblePair) -> FaceCode:
    crit, eta = pair.crit.bits, pair.eta.bits
    out = [ZERO] * pair.splitting.g
    while eta:
        low = eta & -eta
        k = low.bit_length() - 1
        out[k] = STAR if crit & low else ONE
        eta ^= low
    return FaceCode._trusted(pair.splitting, tuple(out))


def face_in_closure(a: FaceCode, b: FaceCode) -> bool:
    """True iff face ``a`` lies in the closure of face ``b``."""
    if a.splitting != b.splitting:
        raise ValueError(f"{a.splitting} vs {b.splitting}")
    # a * may only sit over a *, and no 0 may sit over a 1 or the reverse
    full = a.splitting.full_mask
    a_not_zero, a_star, a_not_one = a._masks
    b_not_zero, b_star, b_not_one = b._masks
    return a_star & ~b_star == 0 and a_not_zero | b_not_one == full and a_not_one | b_not_zero == full
