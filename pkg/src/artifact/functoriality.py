"""Base change along extensions of totally real fields and the Galois action.

Extensions are described only by how embeddings restrict: target cycle ``j``
of length ``f_j`` lies over source cycle ``cover[j]`` of length dividing
``f_j``, and slot ``(j, s)`` restricts to ``(cover[j], s mod f_cover[j])``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from typing import overload

from .cube import FaceCode
from .dynamics import ValuationVector
from .errors import DomainError, ParseError, SplittingMismatchError
from .index import EmbSet, PrimeSplitting
from .strata import AdmissiblePair


@dataclass(frozen=True)
class ExtensionMap:
    source: PrimeSplitting
    target: PrimeSplitting
    cover: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "cover", tuple(self.cover))
        if self.source.p != self.target.p:
            raise DomainError(f"source p = {self.source.p} and target p = {self.target.p} differ")
        if len(self.cover) != self.target.num_primes:
            raise DomainError(f"cover needs one source cycle per target cycle ({self.target.num_primes})")
        for j, i in enumerate(self.cover):
            if not 0 <= i < self.source.num_primes:
                raise DomainError(f"target cycle {j} covers nonexistent source cycle {i}")
            if self.target.degrees[j] % self.source.degrees[i]:
                raise DomainError(
                    f"target cycle {j} (length {self.target.degrees[j]}) cannot lie over source cycle {i} "
                    f"(length {self.source.degrees[i]}): lengths must divide"
                )
        missing = set(range(self.source.num_primes)) - set(self.cover)
        if missing:
            raise DomainError(f"source cycles {sorted(missing)} are not covered by any target cycle")

    @classmethod
    def parse(cls, text: str) -> ExtensionMap:
        """Parse ``"<src>-><dst>[:cover=i0,i1,...]"``, e.g. ``"p=3;f=1->p=3;f=2,1:cover=0,0"``."""
        m = re.fullmatch(r"\s*(.+?)\s*->\s*(.+?)\s*(?::\s*cover\s*=\s*([\d\s,]+))?\s*", text or "")
        if m is None:
            raise ParseError(f"malformed extension {text!r}; expected '<src>-><dst>:cover=...'")
        src, dst = PrimeSplitting.parse(m.group(1)), PrimeSplitting.parse(m.group(2))
        if m.group(3) is None:
            if src.num_primes != 1:
                raise ParseError("cover=... is required when the source has several primes")
            cover = (0,) * dst.num_primes
        else:
            cover = tuple(int(x) for x in m.group(3).split(",") if x.strip())
        try:
            return cls(src, dst, cover)
        except DomainError as exc:
            raise ParseError(str(exc)) from exc

    def spec(self) -> str:
        return f"{self.source.spec()}->{self.target.spec()}:cover=" + ",".join(map(str, self.cover))

    @cached_property
    def restriction(self) -> tuple[int, ...]:
        """``restriction[k]`` is the source index of target embedding ``k``."""
        out = []
        for j, s in self.target.slots:
            i = self.cover[j]
            out.append(self.source.index((i, s % self.source.degrees[i])))
        return tuple(out)

    def restrict_slot(self, slot: tuple[int, int]) -> tuple[int, int]:
        return self.source.slots[self.restriction[self.target.index(slot)]]

    def covering_primes(self, prime: int) -> list[int]:
        return [j for j, i in enumerate(self.cover) if i == prime]


def _check(ext: ExtensionMap, splitting: PrimeSplitting) -> None:
    if splitting != ext.source:
        raise SplittingMismatchError(f"value lives over {splitting}, extension source is {ext.source}")


def induce_set(ext: ExtensionMap, s: EmbSet) -> EmbSet:
    """Embeddings of the target restricting into ``s``."""
    _check(ext, s.splitting)
    bits = 0
    for k, src in enumerate(ext.restriction):
        if s.has_index(src):
            bits |= 1 << k
    return EmbSet(ext.target, bits)


def induce_pair(ext: ExtensionMap, pair: AdmissiblePair) -> AdmissiblePair:
    return AdmissiblePair(induce_set(ext, pair.phi), induce_set(ext, pair.eta))


def delta(ext: ExtensionMap, nu: ValuationVector) -> ValuationVector:
    """Pull back coordinates: the value at a target embedding is the value at its restriction."""
    _check(ext, nu.splitting)
    return ValuationVector(ext.target, tuple(nu.num[i] for i in ext.restriction), nu.den, nu.role)


@dataclass(frozen=True)
class GaloisElement:
    """The power ``sigma^k`` of Frobenius."""

    k: int

    def __mul__(self, other: GaloisElement) -> GaloisElement:
        return GaloisElement(self.k + other.k)

    def inverse(self) -> GaloisElement:
        return GaloisElement(-self.k)


@overload
def galois_act(gamma: GaloisElement, x: EmbSet) -> EmbSet: ...
@overload
def galois_act(gamma: GaloisElement, x: ValuationVector) -> ValuationVector: ...
@overload
def galois_act(gamma: GaloisElement, x: AdmissiblePair) -> AdmissiblePair: ...
@overload
def galois_act(gamma: GaloisElement, x: FaceCode) -> FaceCode: ...


def galois_act(gamma, x):
    """Relabel indices: entry at ``b`` moves to ``sigma^k b``."""
    k = gamma.k
    if isinstance(x, EmbSet):
        return x.shift(k)
    if isinstance(x, AdmissiblePair):
        return AdmissiblePair(x.phi.shift(k), x.eta.shift(k))
    if isinstance(x, ValuationVector):
        s = x.splitting
        return ValuationVector(s, tuple(x.num[s.sigma_index(i, -k)] for i in range(s.g)), x.den, x.role)
    if isinstance(x, FaceCode):
        s = x.splitting
        return FaceCode(s, tuple(x.entries[s.sigma_index(i, -k)] for i in range(s.g)))
    raise TypeError(f"cannot act on {type(x).__name__}")
