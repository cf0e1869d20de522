"""Embedding sets: disjoint Frobenius cycles and their subset algebra.

An embedding is addressed as ``(i, j)``: prime index ``i`` and slot ``j``
with ``0 <= j < f_i``.  Frobenius acts by ``(i, j) -> (i, j + 1 mod f_i)``.
Subsets are bit vectors; bit ``offset[i] + j`` carries ``(i, j)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator

from .errors import ParseError, SplittingMismatchError

Slot = tuple[int, int]

MAX_G = 64
_TABLE_G = 12


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class PrimeSplitting:
    """Unramified decomposition of ``p``: one Frobenius cycle per prime."""

    p: int
    degrees: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "degrees", tuple(int(d) for d in self.degrees))
        if not isinstance(self.p, int) or not is_prime(self.p):
            raise ParseError(f"p must be a prime, got {self.p!r}")
        if not self.degrees:
            raise ParseError("degrees must be nonempty")
        if any(d < 1 for d in self.degrees):
            raise ParseError(f"degrees must be positive, got {list(self.degrees)}")
        if sum(self.degrees) > MAX_G:
            raise ParseError(f"g = {sum(self.degrees)} exceeds {MAX_G}")

    @classmethod
    def parse(cls, text: str) -> PrimeSplitting:
        """Parse ``p=<prime>;f=<d1>,<d2>,...``."""
        m = re.fullmatch(r"\s*p\s*=\s*(\d+)\s*;\s*f\s*=\s*(\d+(?:\s*,\s*\d+)*)\s*", text or "")
        if m is None:
            raise ParseError(f"malformed splitting {text!r}; expected 'p=<prime>;f=<d1>,<d2>,...'")
        return cls(int(m.group(1)), tuple(int(d) for d in m.group(2).split(",")))

    def spec(self) -> str:
        return f"p={self.p};f=" + ",".join(str(d) for d in self.degrees)

    def __str__(self) -> str:
        return self.spec()

    @cached_property
    def g(self) -> int:
        return sum(self.degrees)

    @cached_property
    def num_primes(self) -> int:
        return len(self.degrees)

    @cached_property
    def offsets(self) -> tuple[int, ...]:
        out, acc = [], 0
        for d in self.degrees:
            out.append(acc)
            acc += d
        return tuple(out)

    @cached_property
    def cycles(self) -> tuple[range, ...]:
        """Index range of each prime's Frobenius cycle."""
        return tuple(range(o, o + d) for o, d in zip(self.offsets, self.degrees))

    @cached_property
    def slots(self) -> tuple[Slot, ...]:
        return tuple((i, j) for i, d in enumerate(self.degrees) for j in range(d))

    @cached_property
    def full_mask(self) -> int:
        return (1 << self.g) - 1

    def index(self, slot: Slot) -> int:
        i, j = slot
        if not (0 <= i < self.num_primes and 0 <= j < self.degrees[i]):
            raise IndexError(f"embedding {slot} not in {self.spec()}")
        return self.offsets[i] + j

    def prime_of(self, idx: int) -> int:
        return self.slots[idx][0]

    def block_mask(self, primes: Iterable[int]) -> int:
        bits = 0
        for i in primes:
            if not 0 <= i < self.num_primes:
                raise IndexError(f"prime index {i} out of range for {self.spec()}")
            bits |= ((1 << self.degrees[i]) - 1) << self.offsets[i]
        return bits

    @cached_property
    def _shift_tables(self) -> dict[int, tuple[int, ...]]:
        return {}

    def sigma_index(self, idx: int, k: int = 1) -> int:
        """Index of ``sigma^k`` applied to the embedding at ``idx``."""
        i, j = self.slots[idx]
        return self.offsets[i] + (j + k) % self.degrees[i]

    @cached_property
    def pred(self) -> tuple[int, ...]:
        """``pred[k]`` is the index of sigma^-1 applied to embedding ``k``."""
        return tuple(self.sigma_index(k, -1) for k in range(self.g))

    @cached_property
    def succ(self) -> tuple[int, ...]:
        return tuple(self.sigma_index(k, 1) for k in range(self.g))

    @cached_property
    def _left_table(self) -> tuple[int, ...] | None:
        return tuple(self._rotate(b, -1) for b in range(1 << self.g)) if self.g <= _TABLE_G else None

    @cached_property
    def _right_table(self) -> tuple[int, ...] | None:
        return tuple(self._rotate(b, 1) for b in range(1 << self.g)) if self.g <= _TABLE_G else None

    def shift_bits(self, bits: int, k: int) -> int:
        if k == -1 and self._left_table is not None:
            return self._left_table[bits]
        if k == 1 and self._right_table is not None:
            return self._right_table[bits]
        if self.g <= _TABLE_G:
            table = self._shift_tables.get(k)
            if table is None:
                table = tuple(self._rotate(b, k) for b in range(1 << self.g))
                self._shift_tables[k] = table
            return table[bits]
        return self._rotate(bits, k)

    def _rotate(self, bits: int, k: int) -> int:
        out = 0
        for o, f in zip(self.offsets, self.degrees):
            sub = (bits >> o) & ((1 << f) - 1)
            r = k % f
            if r:
                sub = ((sub << r) | (sub >> (f - r))) & ((1 << f) - 1)
            out |= sub << o
        return out

    def restrict(self, primes: Iterable[int]) -> PrimeSplitting:
        """The splitting formed by the selected cycles, in increasing prime order."""
        chosen = sorted(set(primes))
        self.block_mask(chosen)
        if not chosen:
            raise ParseError("cannot form a splitting with no primes")
        return PrimeSplitting(self.p, tuple(self.degrees[i] for i in chosen))


@dataclass(frozen=True)
class EmbSet:
    """A subset of the embeddings of one splitting."""

    splitting: PrimeSplitting
    bits: int = field(default=0)

    def __post_init__(self) -> None:
        if self.bits < 0 or self.bits > self.splitting.full_mask:
            raise ValueError(f"bit pattern {self.bits:#x} out of range for g={self.splitting.g}")

    @classmethod
    def _trusted(cls, splitting: PrimeSplitting, bits: int) -> EmbSet:
        """Skip the range check; for callers that build ``bits`` from masks of ``splitting``."""
        obj = object.__new__(cls)
        obj.__dict__.update(splitting=splitting, bits=bits)
        return obj

    @classmethod
    def empty(cls, splitting: PrimeSplitting) -> EmbSet:
        return cls(splitting, 0)

    @classmethod
    def full(cls, splitting: PrimeSplitting) -> EmbSet:
        return cls(splitting, splitting.full_mask)

    @classmethod
    def of(cls, splitting: PrimeSplitting, slots: Iterable[Slot]) -> EmbSet:
        bits = 0
        for s in slots:
            bits |= 1 << splitting.index(tuple(s))
        return cls(splitting, bits)

    @classmethod
    def from_flags(cls, splitting: PrimeSplitting, flags: Iterable[bool]) -> EmbSet:
        flags = list(flags)
        if len(flags) != splitting.g:
            raise ValueError(f"expected {splitting.g} flags, got {len(flags)}")
        return cls(splitting, sum(1 << k for k, b in enumerate(flags) if b))

    def _same(self, other: EmbSet) -> None:
        if not isinstance(other, EmbSet):
            raise TypeError(f"expected EmbSet, got {type(other).__name__}")
        if other.splitting is not self.splitting and other.splitting != self.splitting:
            raise SplittingMismatchError(f"{self.splitting} vs {other.splitting}")

    def __or__(self, other: EmbSet) -> EmbSet:
        self._same(other)
        return EmbSet._trusted(self.splitting, self.bits | other.bits)

    def __and__(self, other: EmbSet) -> EmbSet:
        self._same(other)
        return EmbSet._trusted(self.splitting, self.bits & other.bits)

    def __sub__(self, other: EmbSet) -> EmbSet:
        self._same(other)
        return EmbSet._trusted(self.splitting, self.bits & ~other.bits)

    def __xor__(self, other: EmbSet) -> EmbSet:
        self._same(other)
        return EmbSet._trusted(self.splitting, self.bits ^ other.bits)

    def __invert__(self) -> EmbSet:
        return EmbSet._trusted(self.splitting, self.splitting.full_mask & ~self.bits)

    complement = __invert__

    def issubset(self, other: EmbSet) -> bool:
        self._same(other)
        return self.bits & ~other.bits == 0

    def __le__(self, other: EmbSet) -> bool:
        return self.issubset(other)

    def __ge__(self, other: EmbSet) -> bool:
        return other.issubset(self)

    def isdisjoint(self, other: EmbSet) -> bool:
        self._same(other)
        return self.bits & other.bits == 0

    def __contains__(self, slot: Slot) -> bool:
        return bool(self.bits >> self.splitting.index(slot) & 1)

    def has_index(self, idx: int) -> bool:
        return bool(self.bits >> idx & 1)

    def __len__(self) -> int:
        return bin(self.bits).count("1")

    def __bool__(self) -> bool:
        return self.bits != 0

    def __iter__(self) -> Iterator[Slot]:
        for k, s in enumerate(self.splitting.slots):
            if self.bits >> k & 1:
                yield s

    def flags(self) -> tuple[bool, ...]:
        return tuple(bool(self.bits >> k & 1) for k in range(self.splitting.g))

    def shift(self, k: int) -> EmbSet:
        return EmbSet._trusted(self.splitting, self.splitting.shift_bits(self.bits, k))

    def left(self) -> EmbSet:
        """``{sigma^-1 b : b in S}``."""
        return self.shift(-1)

    def right(self) -> EmbSet:
        """``{sigma b : b in S}``."""
        return self.shift(1)

    def to_list(self) -> list[list[int]]:
        return [[i, j] for i, j in self]

    def __repr__(self) -> str:
        return "{" + ", ".join(f"({i},{j})" for i, j in self) + "}"


def shift(s: EmbSet, k: int) -> EmbSet:
    return s.shift(k)


def ideal_block(splitting: PrimeSplitting, primes: Iterable[int]) -> EmbSet:
    """Union of the full cycles of the selected primes."""
    return EmbSet(splitting, splitting.block_mask(primes))


def block_size(splitting: PrimeSplitting, primes: Iterable[int]) -> int:
    return sum(splitting.degrees[i] for i in set(primes))


def restrict_set(s: EmbSet, primes: Iterable[int]) -> EmbSet:
    """Rewrite ``s`` restricted to the chosen cycles over ``splitting.restrict(primes)``."""
    chosen = sorted(set(primes))
    sub = s.splitting.restrict(chosen)
    slots = [(k, j) for k, i in enumerate(chosen) for j in range(s.splitting.degrees[i]) if (i, j) in s]
    return EmbSet.of(sub, slots)


def extend_set(s: EmbSet, splitting: PrimeSplitting, primes: Iterable[int]) -> EmbSet:
    """Inverse of ``restrict_set``: embed a subset of the restricted cycles back."""
    chosen = sorted(set(primes))
    if s.splitting != splitting.restrict(chosen):
        raise SplittingMismatchError(f"{s.splitting} is not the restriction of {splitting} to {chosen}")
    return EmbSet.of(splitting, [(chosen[k], j) for k, j in s])


def parse_subset(splitting: PrimeSplitting, text: str) -> EmbSet:
    """Parse ``"0:0,0:1"`` or ``"(0,0);(0,1)"`` style lists; ``""``/``"none"`` is empty, ``"all"`` is full."""
    t = (text or "").strip().lower()
    if t in ("", "none", "empty", "{}", "[]"):
        return EmbSet.empty(splitting)
    if t in ("all", "full"):
        return EmbSet.full(splitting)
    pairs = re.findall(r"(\d+)\s*[:,]\s*(\d+)", t)
    residue = re.sub(r"(\d+)\s*[:,]\s*(\d+)", "", t)
    if not pairs or re.search(r"[^\s\[\](){};,]", residue):
        raise ParseError(f"malformed subset {text!r}; expected e.g. '0:0,0:1'")
    try:
        return EmbSet.of(splitting, [(int(a), int(b)) for a, b in pairs])
    except IndexError as exc:
        raise ParseError(str(exc)) from exc


def parse_primes(splitting: PrimeSplitting, text: str) -> frozenset[int]:
    t = (text or "").strip().lower()
    if t in ("", "none"):
        return frozenset()
    if t == "all":
        return frozenset(range(splitting.num_primes))
    try:
        out = frozenset(int(x) for x in t.split(","))
    except ValueError as exc:
        raise ParseError(f"malformed prime list {text!r}") from exc
    bad = [i for i in out if not 0 <= i < splitting.num_primes]
    if bad:
        raise ParseError(f"prime indices {sorted(bad)} out of range for {splitting}")
    return out
