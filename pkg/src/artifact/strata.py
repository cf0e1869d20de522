"""Admissible pairs (phi, eta) and the calculus of the strata they label."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator

from .errors import DomainError, GuardError, InvariantViolation, SplittingMismatchError
from .index import EmbSet, PrimeSplitting, ideal_block, extend_set

MAX_ENUM_G = 20
_SHARED_SETS_G = 12


def is_admissible(phi: EmbSet, eta: EmbSet) -> bool:
    """True iff the left shift of the complement of phi lies in eta."""
    s = phi.splitting
    if s is not eta.splitting and s != eta.splitting:
        raise SplittingMismatchError(f"{phi.splitting} vs {eta.splitting}")
    return s.shift_bits(s.full_mask & ~phi.bits, -1) & ~eta.bits == 0


@dataclass(frozen=True, init=False)
class AdmissiblePair:
    phi: EmbSet
    eta: EmbSet
    crit: EmbSet = field(compare=False, repr=False)

    def __init__(self, phi: EmbSet, eta: EmbSet) -> None:
        # hand-written: pairs are built in bulk and the generated frozen __init__ is slow
        if not is_admissible(phi, eta):
            raise DomainError(f"({phi!r}, {eta!r}) is not admissible")
        s = phi.splitting
        self.__dict__.update(phi=phi, eta=eta, crit=EmbSet._trusted(s, s.shift_bits(phi.bits, -1) & eta.bits))

    @property
    def splitting(self) -> PrimeSplitting:
        return self.phi.splitting

    @classmethod
    def _trusted(cls, phi: EmbSet, eta: EmbSet, crit: EmbSet) -> AdmissiblePair:
        obj = object.__new__(cls)
        obj.__dict__.update(phi=phi, eta=eta, crit=crit)
        return obj

    def sort_key(self) -> tuple[tuple[bool, ...], tuple[bool, ...]]:
        return (self.phi.flags(), self.eta.flags())

    def __repr__(self) -> str:
        return f"AdmissiblePair(phi={self.phi!r}, eta={self.eta!r})"


def _lex_submasks(mask: int, g: int) -> tuple[int, ...]:
    """Submasks of ``mask`` in lexicographic order of their flag vectors (index 0 most significant)."""
    # small cubes repeat the same masks many times; large ones would make the cache huge
    return _lex_submasks_cached(mask, g) if g <= _SHARED_SETS_G else _lex_submasks_uncached(mask, g)


def _lex_submasks_uncached(mask: int, g: int) -> tuple[int, ...]:
    pos = [k for k in range(g) if mask >> k & 1]
    n = len(pos)
    out = []
    for c in range(1 << n):
        bits = 0
        for t in range(n):
            if c >> (n - 1 - t) & 1:
                bits |= 1 << pos[t]
        out.append(bits)
    return tuple(out)


_lex_submasks_cached = lru_cache(maxsize=8192)(_lex_submasks_uncached)


def iter_admissible(splitting: PrimeSplitting, max_g: int = MAX_ENUM_G) -> Iterator[AdmissiblePair]:
    if splitting.g > max_g:
        raise GuardError(f"g = {splitting.g} exceeds the enumeration guard {max_g}")
    g = splitting.g
    full = splitting.full_mask
    if g <= _SHARED_SETS_G:
        # every mask occurs many times over; share one immutable set per mask
        shared = [EmbSet._trusted(splitting, b) for b in range(1 << g)]
        make = shared.__getitem__
    else:
        def make(b: int) -> EmbSet:
            return EmbSet._trusted(splitting, b)
    pair = AdmissiblePair._trusted
    for phi in _lex_submasks(full, g):
        base = splitting.shift_bits(full & ~phi, -1)
        left_phi = splitting.shift_bits(phi, -1)
        free = left_phi & ~base
        phi_set = make(phi)
        for extra in _lex_submasks(free, g):
            eta = base | extra
            yield pair(phi_set, make(eta), make(left_phi & eta))


def enumerate_admissible(splitting: PrimeSplitting, max_g: int = MAX_ENUM_G) -> list[AdmissiblePair]:
    """All 3^g admissible pairs, ordered lexicographically on (phi flags, eta flags)."""
    return list(iter_admissible(splitting, max_g))


def critical_indices(pair: AdmissiblePair) -> EmbSet:
    return pair.crit


def stratum_dim(pair: AdmissiblePair) -> int:
    return 2 * pair.splitting.g - (len(pair.phi) + len(pair.eta))


def pair_geq(a: AdmissiblePair, b: AdmissiblePair) -> bool:
    return b.phi.issubset(a.phi) and b.eta.issubset(a.eta)


def closure_pairs_at(pair: AdmissiblePair) -> list[AdmissiblePair]:
    """Pairs whose closed strata pass through a point with invariants ``pair``."""
    s = pair.splitting
    i = pair.crit
    phi_lo = pair.phi - i.right()
    eta_lo = pair.eta - i
    out = []
    for dphi in _lex_submasks(pair.phi.bits & ~phi_lo.bits, s.g):
        phi = EmbSet(s, phi_lo.bits | dphi)
        for deta in _lex_submasks(pair.eta.bits & ~eta_lo.bits, s.g):
            eta = EmbSet(s, eta_lo.bits | deta)
            if is_admissible(phi, eta):
                out.append(AdmissiblePair(phi, eta))
    return out


def component_count_at(pair: AdmissiblePair) -> int:
    return 1 << len(pair.crit)


def pi_stratum_image(pair: AdmissiblePair) -> EmbSet:
    """Type of the stratum of the base containing the image."""
    return pair.phi & pair.eta


def w_stratum_image(pair: AdmissiblePair) -> AdmissiblePair:
    return AdmissiblePair(pair.eta.right(), pair.phi.left())


def type_window(pair: AdmissiblePair) -> tuple[EmbSet, EmbSet]:
    """Bounds (lo, hi) on the type of any point of the open stratum."""
    return pair.phi & pair.eta, ~(pair.phi ^ pair.eta)


def pi_open_image_types(pair: AdmissiblePair) -> list[EmbSet]:
    lo, hi = type_window(pair)
    s = pair.splitting
    return [EmbSet(s, lo.bits | extra) for extra in _lex_submasks(hi.bits & ~lo.bits, s.g)]


def is_horizontal(pair: AdmissiblePair) -> frozenset[int] | None:
    """The ideal t (as prime indices) with (phi, eta) = (B_t, B_t*), or None."""
    if pair.phi & pair.eta:
        return None
    s = pair.splitting
    primes = frozenset(i for i in range(s.num_primes) if (i, 0) in pair.phi)
    if pair.phi != ideal_block(s, primes) or pair.eta != ~pair.phi:
        raise InvariantViolation(f"pair {pair!r} has disjoint phi, eta but is not a block pair")
    return primes


def horizontal_pair(splitting: PrimeSplitting, primes: Iterable[int]) -> AdmissiblePair:
    block = ideal_block(splitting, primes)
    return AdmissiblePair(block, ~block)


@dataclass(frozen=True)
class TAdmissiblePair:
    """A pair of subsets of B_t with B_t - l(phi) contained in eta."""

    primes: frozenset[int]
    phi: EmbSet
    eta: EmbSet

    def __post_init__(self) -> None:
        object.__setattr__(self, "primes", frozenset(self.primes))
        if not is_t_admissible(self.primes, self.phi, self.eta):
            raise DomainError(f"({self.phi!r}, {self.eta!r}) is not admissible for primes {sorted(self.primes)}")

    @property
    def splitting(self) -> PrimeSplitting:
        return self.phi.splitting


def is_t_admissible(primes: Iterable[int], phi: EmbSet, eta: EmbSet) -> bool:
    if phi.splitting != eta.splitting:
        raise SplittingMismatchError(f"{phi.splitting} vs {eta.splitting}")
    block = ideal_block(phi.splitting, primes)
    if not (phi.issubset(block) and eta.issubset(block)):
        return False
    return (block - phi.left()).issubset(eta)


def enumerate_t_admissible(splitting: PrimeSplitting, primes: Iterable[int]) -> list[TAdmissiblePair]:
    """The 3^{f(t)} pairs, obtained from the full enumeration over the restricted cycles."""
    chosen = frozenset(primes)
    ideal_block(splitting, chosen)
    if not chosen:
        empty = EmbSet.empty(splitting)
        return [TAdmissiblePair(chosen, empty, empty)]
    sub = splitting.restrict(chosen)
    return [
        TAdmissiblePair(chosen, extend_set(p.phi, splitting, chosen), extend_set(p.eta, splitting, chosen))
        for p in enumerate_admissible(sub)
    ]
