"""Brute-force Dieudonne-module oracle.

For a type ``tau`` the model has, at every embedding ``b``, the plane
``D_b = span(e_b, f_b)`` over GF(q), with marked lines

* ``LF_b = span(e_b)``, the kernel of Frobenius and image of Verschiebung;
* ``LV_b = span(e_b)`` if ``b`` is in ``tau``, else ``span(f_b)``, the
  kernel of Verschiebung and image of Frobenius.

Frobenius ``D_b -> D_{sigma b}`` is p-power semilinear and Verschiebung
``D_b -> D_{sigma^-1 b}`` is p-th-root semilinear.  A line tuple is stable
when each map sends every line into the line at the target embedding.
Tuples encode the image of the Dieudonne map for the quotient by ``H``, so
``phi = {H_b = LV_b}`` and ``eta = {H_b = LF_b}``.
"""

from __future__ import annotations

import os
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Iterator

from .errors import DomainError, GuardError, InvariantViolation
from .finite_field import GF, field
from .index import EmbSet, PrimeSplitting
from .strata import AdmissiblePair, enumerate_admissible, type_window

DEFAULT_GUARD = 10**7
GUARD_ENV = "HMV_GUARD_MAX"

Vec = tuple[int, int]
E: Vec = (1, 0)
F: Vec = (0, 1)


def guard_limit() -> int:
    raw = os.environ.get(GUARD_ENV)
    if raw is None:
        return DEFAULT_GUARD
    try:
        val = int(raw)
    except ValueError as exc:
        raise GuardError(f"{GUARD_ENV}={raw!r} is not an integer") from exc
    if val <= 0:
        raise GuardError(f"{GUARD_ENV} must be positive")
    return val


@dataclass(frozen=True)
class LineTuple:
    """One normalized spanning vector per embedding."""

    lines: tuple[Vec, ...]


class DieudonneModel:
    def __init__(self, splitting: PrimeSplitting, tau: EmbSet, fq: GF):
        if tau.splitting != splitting:
            raise DomainError("type must be a subset of the model's embeddings")
        if fq.p != splitting.p:
            raise DomainError(f"field characteristic {fq.p} differs from p = {splitting.p}")
        self.splitting = splitting
        self.tau = tau
        self.fq = fq

    @property
    def q(self) -> int:
        return self.fq.q

    def lf(self, k: int) -> Vec:
        return E

    def lv(self, k: int) -> Vec:
        return E if self.tau.has_index(k) else F

    def fr(self, k: int, v: Vec) -> Vec:
        """Frobenius on ``D_k``, landing in ``D_{succ k}``."""
        b = self.fq.frob(v[1])
        g = self.lv(self.splitting.succ[k])
        return (self.fq.mul(b, g[0]), self.fq.mul(b, g[1]))

    def ver(self, k: int, v: Vec) -> Vec:
        """Verschiebung on ``D_k``, landing in ``D_{pred k}``."""
        # kill LV_k; the other basis vector goes to e at the target
        c = v[0] if self.lv(k) == F else v[1]
        return (self.fq.frob_inv(c), 0)

    @cached_property
    def lines(self) -> tuple[Vec, ...]:
        """Normalized projective coordinates: first nonzero coordinate is 1."""
        return tuple([(1, c) for c in self.fq.elements()] + [(0, 1)])

    def contains(self, line: Vec, v: Vec) -> bool:
        fq = self.fq
        return fq.sub(fq.mul(v[0], line[1]), fq.mul(v[1], line[0])) == 0

    def is_stable(self, h: LineTuple) -> bool:
        s = self.splitting
        for k, line in enumerate(h.lines):
            if not self.contains(h.lines[s.succ[k]], self.fr(k, line)):
                return False
            if not self.contains(h.lines[s.pred[k]], self.ver(k, line)):
                return False
        return True

    def check_structure(self) -> None:
        """Kernels, images and the vanishing of Fr.Ver and Ver.Fr, on every vector."""
        s, fq = self.splitting, self.fq
        for k in range(s.g):
            lf, lv = self.lf(k), self.lv(k)
            if (lf == lv) != self.tau.has_index(k):
                raise InvariantViolation(f"marked lines at {s.slots[k]} do not reflect the type")
            for a, b in product(fq.elements(), repeat=2):
                v = (a, b)
                fv, vv = self.fr(k, v), self.ver(k, v)
                if (fv == (0, 0)) != self.contains(lf, v):
                    raise InvariantViolation(f"Fr kernel at {s.slots[k]}")
                if (vv == (0, 0)) != self.contains(lv, v):
                    raise InvariantViolation(f"Ver kernel at {s.slots[k]}")
                if not self.contains(self.lv(s.succ[k]), fv):
                    raise InvariantViolation(f"Fr image at {s.slots[k]}")
                if not self.contains(self.lf(s.pred[k]), vv):
                    raise InvariantViolation(f"Ver image at {s.slots[k]}")
                if self.fr(s.pred[k], vv) != (0, 0) or self.ver(s.succ[k], fv) != (0, 0):
                    raise InvariantViolation(f"Fr.Ver or Ver.Fr nonzero at {s.slots[k]}")


def build_model(splitting: PrimeSplitting, tau: EmbSet, m: int = 1) -> DieudonneModel:
    return DieudonneModel(splitting, tau, field(splitting.p, m))


def _check_guard(model: DieudonneModel) -> None:
    size = (model.q + 1) ** model.splitting.g
    limit = guard_limit()
    if size > limit:
        raise GuardError(f"(q+1)^g = {size} exceeds the enumeration guard {limit} (set {GUARD_ENV} to raise it)")


def enumerate_stable(model: DieudonneModel) -> list[LineTuple]:
    """All stable tuples, in lexicographic order of line indices."""
    _check_guard(model)
    s = model.splitting
    g = s.g
    lines = model.lines
    n = len(lines)
    fr_ok = [[[model.contains(lines[b], model.fr(k, lines[a])) for b in range(n)] for a in range(n)] for k in range(g)]
    ver_ok = [[[model.contains(lines[b], model.ver(k, lines[a])) for b in range(n)] for a in range(n)] for k in range(g)]
    # constraints checked once both endpoints are assigned; assignment runs in index order
    checks: list[list[tuple[int, int, int]]] = [[] for _ in range(g)]
    for k in range(g):
        for src, dst, kind in ((k, s.succ[k], 0), (k, s.pred[k], 1)):
            checks[max(src, dst)].append((src, dst, kind))
    out: list[LineTuple] = []
    choice = [0] * g

    def ok(k: int) -> bool:
        for src, dst, kind in checks[k]:
            table = fr_ok if kind == 0 else ver_ok
            if not table[src][choice[src]][choice[dst]]:
                return False
        return True

    def rec(k: int) -> None:
        if k == g:
            out.append(LineTuple(tuple(lines[c] for c in choice)))
            return
        for c in range(n):
            choice[k] = c
            if ok(k):
                rec(k + 1)

    rec(0)
    return out


def invariants_of(model: DieudonneModel, h: LineTuple) -> AdmissiblePair:
    s = model.splitting
    phi = EmbSet.from_flags(s, (h.lines[k] == model.lv(k) for k in range(s.g)))
    eta = EmbSet.from_flags(s, (h.lines[k] == model.lf(k) for k in range(s.g)))
    return AdmissiblePair(phi, eta)


def fibre_census(model: DieudonneModel) -> dict[AdmissiblePair, int]:
    """Stable tuples counted by their invariants, keys in enumeration order of pairs."""
    counts = Counter(invariants_of(model, h) for h in enumerate_stable(model))
    order = {p: n for n, p in enumerate(enumerate_admissible(model.splitting))}
    return dict(sorted(counts.items(), key=lambda kv: order[kv[0]]))


def is_spaced(s: EmbSet) -> bool:
    return s.isdisjoint(s.right())


def spaced_census(model: DieudonneModel) -> dict[EmbSet, int]:
    """Superspecial fibre partitioned by ``S = {b : H_b != LF_b}``."""
    if model.tau != EmbSet.full(model.splitting):
        raise DomainError("spaced_census needs the superspecial type tau = B")
    s = model.splitting
    counts = Counter(
        EmbSet.from_flags(s, (h.lines[k] != model.lf(k) for k in range(s.g))) for h in enumerate_stable(model)
    )
    return dict(sorted(counts.items(), key=lambda kv: kv[0].flags()))


def spaced_subsets(splitting: PrimeSplitting) -> list[EmbSet]:
    return [t for t in (EmbSet(splitting, b) for b in range(1 << splitting.g)) if is_spaced(t)]


def free_choice_tuples(model: DieudonneModel, pair: AdmissiblePair) -> Iterator[LineTuple]:
    """Tuples with ``LV`` on phi, ``LF`` on eta and every line elsewhere."""
    s = model.splitting
    if not (pair.phi & pair.eta).issubset(model.tau):
        raise DomainError("prescriptions conflict: phi & eta must lie in the type")
    slots: list[list[Vec]] = []
    for k in range(s.g):
        if pair.phi.has_index(k):
            slots.append([model.lv(k)])
        elif pair.eta.has_index(k):
            slots.append([model.lf(k)])
        else:
            slots.append(list(model.lines))
    for combo in product(*slots):
        yield LineTuple(tuple(combo))


def window_contains(pair: AdmissiblePair, tau: EmbSet) -> bool:
    lo, hi = type_window(pair)
    return lo.issubset(tau) and tau.issubset(hi)


def predicted_count(model: DieudonneModel, pair: AdmissiblePair) -> int:
    """Product over embeddings outside phi | eta of q (in tau) or q - 1 (outside tau)."""
    if not window_contains(pair, model.tau):
        return 0
    out = 1
    for k in range(model.splitting.g):
        if not (pair.phi.has_index(k) or pair.eta.has_index(k)):
            out *= model.q if model.tau.has_index(k) else model.q - 1
    return out


def census_mismatches(model: DieudonneModel) -> list[tuple[AdmissiblePair, int, int]]:
    """Pairs whose measured count differs from ``predicted_count``: (pair, measured, predicted)."""
    census = fibre_census(model)
    out = []
    for pair in enumerate_admissible(model.splitting):
        got, want = census.get(pair, 0), predicted_count(model, pair)
        if got != want:
            out.append((pair, got, want))
    return out
