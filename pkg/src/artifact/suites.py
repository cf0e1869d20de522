"""Invariant batteries run by ``verify``.

Each battery compares library results with small independent reference
computations (slot-tuple arithmetic, ``Fraction`` evaluation, brute-force
filters) and reports the first failing case as a witness.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Callable, Iterable

from . import cube, dynamics as dyn, oracle, strata
from .dynamics import PrimeClass, Role, ValuationVector
from .functoriality import ExtensionMap, GaloisElement, delta, galois_act, induce_pair, induce_set
from .index import EmbSet, PrimeSplitting, extend_set, ideal_block, restrict_set
from .sampling import random_vector

DEFAULT_SPLITTINGS = ("p=2;f=1", "p=2;f=2", "p=3;f=1", "p=3;f=1,1", "p=2;f=3", "p=5;f=2,1", "p=3;f=2,2")
DEFAULT_EXTENSIONS = (
    "p=3;f=1->p=3;f=2",
    "p=2;f=1->p=2;f=1,1",
    "p=2;f=1,1->p=2;f=2,1:cover=1,0",
    "p=3;f=2->p=3;f=4",
    "p=5;f=1,1->p=5;f=3,1,2:cover=0,1,1",
)
SUITES = ("index", "strata", "cube", "dynamics", "restriction", "functoriality", "oracle")


@dataclass
class Check:
    suite: str
    name: str
    passed: bool
    cases: int
    witness: str | None = None

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        tail = "" if self.passed else f"  witness: {self.witness}"
        return f"[{status}] {self.suite}.{self.name} ({self.cases} cases){tail}"


def _run(suite: str, name: str, cases: Iterable, fn: Callable[[object], str | None]) -> Check:
    n = 0
    for case in cases:
        n += 1
        try:
            bad = fn(case)
        except Exception as exc:  # any crash is a failure with the case as witness
            bad = f"{case!r}: {type(exc).__name__}: {exc}"
        if bad:
            return Check(suite, name, False, n, bad)
    return Check(suite, name, True, n)


# reference computations on explicit slot tuples


def _ref_shift(s: EmbSet, k: int) -> frozenset[tuple[int, int]]:
    deg = s.splitting.degrees
    return frozenset((i, (j + k) % deg[i]) for i, j in s)


def _ref_lambda(nu: ValuationVector, slot: tuple[int, int]) -> Fraction:
    i, j = slot
    f = nu.splitting.degrees[i]
    return nu[slot] + nu.splitting.p * nu[(i, (j - 1) % f)]


def _ref_in_U(nu: ValuationVector, primes: Iterable[int] | None = None) -> bool:
    s = nu.splitting
    chosen = set(range(s.num_primes)) if primes is None else set(primes)
    return all(_ref_lambda(nu, b) < s.p for b in s.slots if b[0] in chosen)


def _ref_class(nu: ValuationVector, prime: int) -> PrimeClass:
    s = nu.splitting
    lams = [_ref_lambda(nu, b) for b in s.slots if b[0] == prime]
    if all(x < s.p for x in lams):
        return PrimeClass.CANONICAL
    if all(x > s.p for x in lams):
        return PrimeClass.ANTICANONICAL
    return PrimeClass.TOO_SINGULAR


def _splittings(specs: Iterable[str | PrimeSplitting]) -> list[PrimeSplitting]:
    return [s if isinstance(s, PrimeSplitting) else PrimeSplitting.parse(s) for s in specs]


def index_suite(splittings: list[PrimeSplitting]) -> list[Check]:
    S = "index"
    subsets = [EmbSet(s, b) for s in splittings if s.g <= 10 for b in range(1 << s.g)]

    def shifts(x: EmbSet) -> str | None:
        for k in (-3, -1, 1, 2):
            if frozenset(x.shift(k)) != _ref_shift(x, k):
                return f"shift({x!r}, {k}) = {x.shift(k)!r}"
            if x.shift(k).shift(-k) != x:
                return f"shift not inverted for {x!r}, k={k}"
        if (~x).left() != ~x.left() or (~x).right() != ~x.right():
            return f"complement does not commute with shift at {x!r}"
        return None

    def blocks(s: PrimeSplitting) -> str | None:
        for r in range(1 << s.num_primes):
            primes = [i for i in range(s.num_primes) if r >> i & 1]
            b = ideal_block(s, primes)
            if len(b) != sum(s.degrees[i] for i in primes) or any(b.shift(k) != b for k in range(-2, 3)):
                return f"block {primes} of {s}"
        for slot in s.slots:
            orbit = {frozenset(EmbSet.of(s, [slot]).shift(k)) for k in range(s.g + 1)}
            if len(orbit) != s.degrees[slot[0]]:
                return f"orbit of {slot} in {s} has size {len(orbit)}"
        return None

    return [_run(S, "shift_laws", subsets, shifts), _run(S, "blocks_and_orbits", splittings, blocks)]


def strata_suite(splittings: list[PrimeSplitting], brute_g: int = 6) -> list[Check]:
    S = "strata"
    small = [s for s in splittings if s.g <= 8]
    out = []

    def count(s: PrimeSplitting) -> str | None:
        pairs = strata.enumerate_admissible(s)
        if len(pairs) != 3**s.g or len(set(pairs)) != len(pairs):
            return f"{s}: {len(pairs)} pairs"
        if [p.sort_key() for p in pairs] != sorted(p.sort_key() for p in pairs):
            return f"{s}: enumeration not in lexicographic order"
        if s.g <= brute_g:
            brute = {
                (a, b)
                for a in range(1 << s.g)
                for b in range(1 << s.g)
                if _ref_shift(~EmbSet(s, a), -1) <= frozenset(EmbSet(s, b))
            }
            if brute != {(p.phi.bits, p.eta.bits) for p in pairs}:
                return f"{s}: enumeration differs from brute-force filter"
        return None

    out.append(_run(S, "count_and_order", small, count))
    pairs = [p for s in small for p in strata.enumerate_admissible(s)]

    def decomp(p: strata.AdmissiblePair) -> str | None:
        i = p.crit
        a, b = (~p.eta).right(), i.right()
        c, d = (~p.phi).left(), i
        if not (a.isdisjoint(b) and (a | b) == p.phi and c.isdisjoint(d) and (c | d) == p.eta):
            return repr(p)
        if not 0 <= strata.stratum_dim(p) <= p.splitting.g:
            return f"dim out of range at {p!r}"
        return None

    def w_checks(p: strata.AdmissiblePair) -> str | None:
        w = strata.w_stratum_image(p)
        if strata.w_stratum_image(w) != p:
            return f"w not an involution at {p!r}"
        if strata.pi_stratum_image(w) != p.eta.right() & p.phi.left():
            return f"type of w-image at {p!r}"
        return None

    def horizontal(s: PrimeSplitting) -> str | None:
        hs = [p for p in strata.enumerate_admissible(s) if strata.is_horizontal(p) is not None]
        if len(hs) != 2**s.num_primes:
            return f"{s}: {len(hs)} horizontal pairs"
        for p in hs:
            t = strata.is_horizontal(p)
            if p != strata.horizontal_pair(s, t) or p.crit or strata.stratum_dim(p) != s.g:
                return repr(p)
            lo, hi = strata.type_window(p)
            if lo or hi:
                return f"window of {p!r}"
        return None

    def closure(p: strata.AdmissiblePair) -> str | None:
        cl = strata.closure_pairs_at(p)
        if p not in cl:
            return f"{p!r} missing from its own closure list"
        s = p.splitting
        i = p.crit
        n = 0
        for jb in range(1 << s.g):
            j = EmbSet(s, jb)
            if not j.left().issubset(i):
                continue
            for kb in range(1 << s.g):
                k = EmbSet(s, kb)
                if k.issubset(i) and j.left().isdisjoint(k):
                    n += 1
        if n != len(cl):
            return f"{p!r}: {len(cl)} closure pairs, (J,K) count {n}"
        lo, hi = strata.type_window(p)
        if not lo.issubset(hi):
            return f"window at {p!r}"
        return None

    out.append(_run(S, "decompositions", pairs, decomp))
    out.append(_run(S, "w_involution", pairs, w_checks))
    out.append(_run(S, "horizontal", small, horizontal))
    out.append(_run(S, "closure_count", [p for p in pairs if p.splitting.g <= 4], closure))
    return out


def cube_suite(splittings: list[PrimeSplitting], order_g: int = 4) -> list[Check]:
    S = "cube"
    small = [s for s in splittings if s.g <= 8]

    def bij(s: PrimeSplitting) -> str | None:
        faces = list(cube.iter_faces(s))
        if [f.code for f in faces] != list(range(3**s.g)):
            return f"{s}: base-3 codes out of order"
        seen = set()
        for a in faces:
            p = cube.face_to_pair(a)
            if cube.pair_to_face(p) != a:
                return f"round trip fails at {a}"
            if p.crit != a.crit() or strata.stratum_dim(p) != s.g - a.dim():
                return f"critical set or dimension at {a}"
            if strata.w_stratum_image(p) != cube.face_to_pair(a.complement()):
                return f"w compatibility at {a}"
            seen.add(p)
        if len(seen) != 3**s.g:
            return f"{s}: not a bijection"
        return None

    def order(s: PrimeSplitting) -> str | None:
        faces = list(cube.iter_faces(s))
        pairs = [cube.face_to_pair(a) for a in faces]
        for a, pa in zip(faces, pairs):
            for b, pb in zip(faces, pairs):
                if cube.face_in_closure(a, b) != strata.pair_geq(pb, pa):
                    return f"a={a}, b={b}"
        return None

    return [_run(S, "bijection", small, bij), _run(S, "order_reversal", [s for s in small if s.g <= order_g], order)]


def dynamics_suite(splittings: list[PrimeSplitting], samples: int, rng: random.Random) -> list[Check]:
    S = "dynamics"
    out = []
    ys = [random_vector(rng, s, Role.Y) for s in splittings for _ in range(samples)]
    xs = [random_vector(rng, s, Role.X) for s in splittings for _ in range(samples)]

    def w_checks(y: ValuationVector) -> str | None:
        w = dyn.w_map(y)
        if dyn.w_map(w) != y or any(a + b != 1 for a, b in zip(y.entries, w.entries)):
            return str(y)
        fa, fw = cube.face_of_vector(y), cube.face_of_vector(w)
        if fw != fa.complement() or cube.face_to_pair(fw) != strata.w_stratum_image(cube.face_to_pair(fa)):
            return f"face compatibility at {y}"
        return None

    def regions(x: ValuationVector) -> str | None:
        if dyn.in_U(x) != _ref_in_U(x):
            return f"in_U({x}) = {dyn.in_U(x)}"
        y = x.with_role(Role.Y)
        for i in range(x.splitting.num_primes):
            if dyn.classify_at_prime(y, i) is not _ref_class(y, i):
                return f"class of {y} at prime {i}"
        return None

    def sections(x: ValuationVector) -> str | None:
        if not _ref_in_U(x):
            return None
        y = dyn.section_dagger(x)
        if dyn.pi_exact(y) != x or not dyn.in_V(y):
            return f"section at {x}"
        return None

    def projections(y: ValuationVector) -> str | None:
        s = y.splitting
        fib = dyn.pi_fiberwise(y)
        for k, iv in enumerate(fib.intervals):
            q, t = y.num[k], y.num[s.pred[k]]
            collide = _ref_lambda(y, s.slots[k]) == s.p and q != y.den
            if (not iv.is_exact) != (collide or (q == 0 and t == y.den)):
                return f"interval shape at {s.slots[k]} for {y}"
        if dyn.is_determined(y):
            x = dyn.pi_exact(y)
            if not fib.is_exact or fib.exact_vector() != x or not _ref_in_U(x):
                return f"determined point {y}"
            if dyn.in_V(y) and dyn.section_dagger(x) != y:
                return f"section after projection at {y}"
        else:
            if _ref_in_U(fib.lower()):
                return f"lower endpoints of too-singular {y} land in U"
        return None

    def hecke(x: ValuationVector) -> str | None:
        if not _ref_in_U(x):
            return None
        s = x.splitting
        y = dyn.section_dagger(x)
        regimes = [dyn.hecke_regime(x, i) for i in range(s.num_primes)]
        if 3 in regimes:
            try:
                z = dyn.quotient_valuation(y)
            except dyn.TooSingularError:
                return None
            return None if not dyn.in_U(z) else f"regime 3 at {x} gave {z} in U"
        z = dyn.quotient_valuation(y)
        for k, (i, j) in enumerate(s.slots):
            f = s.degrees[i]
            want = min(s.p * x[(i, (j - 1) % f)], Fraction(1)) if regimes[i] == 1 else 1 - x[(i, j)]
            if z[(i, j)] != want:
                return f"regime {regimes[i]} at {x}: got {z}"
        return None

    def anticanonical(y: ValuationVector) -> str | None:
        s = y.splitting
        anti = [i for i, c in enumerate(dyn.classify(y)) if c is PrimeClass.ANTICANONICAL]
        # other primes must not make the quotient undetermined
        if not anti or not dyn.is_determined(y) or not dyn.is_determined(dyn.w_map(y)):
            return None
        a = dyn.pi_exact(y)
        z = dyn.quotient_valuation(y)
        for i in anti:
            if dyn.classify_at_prime(dyn.w_map(y), i) is not PrimeClass.CANONICAL:
                return f"w-image of {y} not canonical at prime {i}"
            for j in range(s.degrees[i]):
                if z[(i, j)] != a[(i, (j + 1) % s.degrees[i])] / s.p:
                    return f"anticanonical quotient at {y}"
        return None

    def boundary(s: PrimeSplitting) -> str | None:
        c = dyn.optimality_threshold(s.p)
        for e in (Fraction(-1, 97), Fraction(0), Fraction(1, 97)):
            v = ValuationVector.constant(s, c + e)
            if dyn.in_U(v) != (e < 0):
                return f"{s}: c = {c + e}"
        at = ValuationVector.constant(s, c)
        return None if all(x == s.p for x in dyn.lambdas(at)) else f"{s}: lambda at threshold"

    def cusps(s: PrimeSplitting) -> str | None:
        for r in range(1 << s.num_primes):
            t = [i for i in range(s.num_primes) if r >> i & 1]
            v = dyn.cusp_vector(s, t)
            for i in range(s.num_primes):
                want = PrimeClass.CANONICAL if i in t else PrimeClass.ANTICANONICAL
                if dyn.classify_at_prime(v, i) is not want:
                    return f"cusp {t} of {s}, prime {i}"
            if any(dyn.pi_exact(v).num):
                return f"cusp {t} of {s} projects to {dyn.pi_exact(v)}"
        return None

    out.append(_run(S, "w_involution", ys, w_checks))
    out.append(_run(S, "regions", xs, regions))
    out.append(_run(S, "section", xs, sections))
    out.append(_run(S, "projection", ys, projections))
    out.append(_run(S, "hecke_123", xs + [random_vector(rng, x.splitting, Role.X, hi=Fraction(1, x.splitting.p)) for x in xs], hecke))
    out.append(_run(S, "hecke_4", ys + [random_vector(rng, y.splitting, Role.Y, lo=Fraction(y.splitting.p - 1, y.splitting.p)) for y in ys], anticanonical))
    out.append(_run(S, "boundary", splittings, boundary))
    out.append(_run(S, "cusps", splittings, cusps))
    return out


def restriction_suite(splittings: list[PrimeSplitting], samples: int, rng: random.Random) -> list[Check]:
    S = "restriction"
    cases = []
    for s in splittings:
        for r in range(1 << s.num_primes):
            t = [i for i in range(s.num_primes) if r >> i & 1]
            cases.append((s, t))

    def counts(case) -> str | None:
        s, t = case
        tp = strata.enumerate_t_admissible(s, t)
        f = sum(s.degrees[i] for i in t)
        if len(tp) != 3**f or len({(p.phi, p.eta) for p in tp}) != len(tp):
            return f"{s}, t={t}: {len(tp)} pairs"
        block = ideal_block(s, t)
        for p in tp:
            if not (p.phi <= block and p.eta <= block and (block - p.phi.left()) <= p.eta):
                return f"{s}, t={t}: bad pair {p}"
        if len(t) == s.num_primes:
            full = [(p.phi, p.eta) for p in strata.enumerate_admissible(s)]
            if full != [(p.phi, p.eta) for p in tp]:
                return f"{s}: full-ideal pairs differ from the admissible pairs"
        return None

    def coherence(case) -> str | None:
        s, t = case
        if not t:
            return None
        for _ in range(samples):
            x = random_vector(rng, s)
            if dyn.in_U(x, t) != all(dyn.in_U(x, [i]) for i in t) or dyn.in_U(x, t) != _ref_in_U(x, t):
                return f"in_U({x}, {t})"
            if not dyn.in_U(x, t):
                continue
            y = dyn.section_dagger(x, t)
            if y != dyn.restrict_vector(x, t).with_role(Role.Y) or dyn.pi_exact(y) != dyn.restrict_vector(x, t):
                return f"restricted section at {x}, t={t}"
            for k, i in enumerate(sorted(t)):
                if dyn.classify_at_prime(y, k) is not _ref_class(x.with_role(Role.Y), i):
                    return f"class of restricted section at {x}, t={t}"
            if dyn.in_U(x):
                if dyn.restrict_vector(dyn.section_dagger(x), t) != y:
                    return f"global section does not restrict at {x}"
        return None

    def sets(case) -> str | None:
        s, t = case
        if not t:
            return None
        for b in range(min(1 << s.g, 256)):
            e = EmbSet(s, b) & ideal_block(s, t)
            if extend_set(restrict_set(e, t), s, t) != e:
                return f"restrict/extend at {e!r}"
        return None

    return [_run(S, "t_admissible_count", cases, counts), _run(S, "coherence", cases, coherence), _run(S, "set_roundtrip", cases, sets)]


def functoriality_suite(extensions: list[ExtensionMap], samples: int, rng: random.Random) -> list[Check]:
    S = "functoriality"
    out = []

    def ext_checks(ext: ExtensionMap) -> str | None:
        src = ext.source
        for pair in strata.enumerate_admissible(src) if src.g <= 6 else []:
            ip = induce_pair(ext, pair)
            if induce_set(ext, pair.phi.left()) != ip.phi.left():
                return f"induce does not commute with shift at {pair!r}"
        for _ in range(samples):
            x = random_vector(rng, src)
            dx = delta(ext, x)
            if dyn.in_U(x) != dyn.in_U(dx):
                return f"in_U not preserved at {x}"
            y = x.with_role(Role.Y)
            dy = delta(ext, y)
            if dyn.in_V(y) != dyn.in_V(dy) or dyn.in_W(y) != dyn.in_W(dy):
                return f"V/W not preserved at {y}"
            for j, i in enumerate(ext.cover):
                if dyn.classify_at_prime(dy, j) is not dyn.classify_at_prime(y, i):
                    return f"class at target prime {j} differs at {y}"
            if delta(ext, dyn.w_map(y)) != dyn.w_map(dy):
                return f"w does not commute at {y}"
            if dyn.in_U(x) and delta(ext, dyn.section_dagger(x)) != dyn.section_dagger(dx):
                return f"section does not commute at {x}"
            if dyn.is_determined(y) and delta(ext, dyn.pi_exact(y)) != dyn.pi_exact(dy):
                return f"pi does not commute at {y}"
            fa = cube.face_of_vector(y)
            fb = cube.face_of_vector(dy)
            if fb.eta() != induce_set(ext, fa.eta()) or fb.crit() != induce_set(ext, fa.crit()):
                return f"face does not pull back at {y}"
        c = ValuationVector.constant(src, dyn.optimality_threshold(src.p))
        if delta(ext, c) != ValuationVector.constant(ext.target, dyn.optimality_threshold(src.p)) or dyn.in_U(delta(ext, c)):
            return "threshold diagonal not preserved"
        return None

    out.append(_run(S, "extensions", extensions, ext_checks))
    splits = sorted({e.source for e in extensions} | {e.target for e in extensions}, key=str)

    def galois(s: PrimeSplitting) -> str | None:
        for _ in range(samples):
            k1, k2 = rng.randint(-6, 6), rng.randint(-6, 6)
            g1, g2 = GaloisElement(k1), GaloisElement(k2)
            y = random_vector(rng, s, Role.Y)
            x = y.with_role(Role.X)
            if galois_act(g1, galois_act(g2, y)) != galois_act(g1 * g2, y):
                return f"not an action at {y}"
            gy, gx = galois_act(g1, y), galois_act(g1, x)
            if (dyn.in_U(gx), dyn.in_V(gy), dyn.in_W(gy)) != (dyn.in_U(x), dyn.in_V(y), dyn.in_W(y)):
                return f"regions not preserved at {y}, k={k1}"
            if galois_act(g1, dyn.w_map(y)) != dyn.w_map(gy):
                return f"w does not commute at {y}"
            if dyn.is_determined(y) and galois_act(g1, dyn.pi_exact(y)) != dyn.pi_exact(gy):
                return f"pi does not commute at {y}"
            if galois_act(g1, dyn.pi_fiberwise(y).lower()) != dyn.pi_fiberwise(gy).lower():
                return f"fiberwise projection does not commute at {y}"
            fa = cube.face_of_vector(y)
            if cube.face_of_vector(gy) != galois_act(g1, fa) or cube.face_to_pair(galois_act(g1, fa)) != galois_act(g1, cube.face_to_pair(fa)):
                return f"face/pair constructors do not commute at {y}"
        return None

    out.append(_run(S, "galois", splits, galois))
    return out


ORACLE_SPLITTINGS = ((1,), (2,), (1, 1), (3,), (2, 1), (1, 1, 1))


def oracle_suite(primes: Iterable[int] = (2, 3), degrees: Iterable[tuple[int, ...]] = ORACLE_SPLITTINGS, field_degrees: Iterable[int] = (1, 2)) -> list[Check]:
    S = "oracle"
    models = []
    for p in primes:
        for degs in degrees:
            s = PrimeSplitting(p, degs)
            for m in field_degrees:
                for b in range(1 << s.g):
                    models.append(oracle.build_model(s, EmbSet(s, b), m))

    def structure(M: oracle.DieudonneModel) -> str | None:
        M.check_structure()
        return None

    def concordance(M: oracle.DieudonneModel) -> str | None:
        stable = oracle.enumerate_stable(M)
        brute = [h for h in product(M.lines, repeat=M.splitting.g) if M.is_stable(oracle.LineTuple(h))] if M.splitting.g <= 2 else None
        if brute is not None and [h.lines for h in stable] != brute:
            return f"p={M.splitting.p}, tau={M.tau!r}, q={M.q}: pruned enumeration differs from exhaustive"
        for h in stable:
            pair = oracle.invariants_of(M, h)
            if not oracle.window_contains(pair, M.tau):
                return f"tuple {h.lines} over {M.splitting}, tau={M.tau!r}, q={M.q}: pair {pair!r} outside window"
        if not stable:
            return f"empty fibre for tau={M.tau!r}"
        return None

    def superspecial(M: oracle.DieudonneModel) -> str | None:
        if M.tau != EmbSet.full(M.splitting):
            return None
        census = oracle.spaced_census(M)
        want = {t: M.q ** len(t) for t in oracle.spaced_subsets(M.splitting)}
        return None if census == want else f"{M.splitting}, q={M.q}: {census} vs {want}"

    def free_choice(M: oracle.DieudonneModel) -> str | None:
        for pair in strata.enumerate_admissible(M.splitting):
            if not oracle.window_contains(pair, M.tau):
                continue
            for h in oracle.free_choice_tuples(M, pair):
                if not M.is_stable(h):
                    return f"{M.splitting}, tau={M.tau!r}, q={M.q}, pair {pair!r}: {h.lines} unstable"
            if not any(True for _ in oracle.free_choice_tuples(M, pair)):
                return f"no tuple for {pair!r}"
        return None

    def product_law(M: oracle.DieudonneModel) -> str | None:
        s = M.splitting
        if s.num_primes < 2:
            return None
        census = oracle.fibre_census(M)
        parts = []
        for i in range(s.num_primes):
            sub = oracle.build_model(s.restrict([i]), restrict_set(M.tau, [i]), M.fq.m)
            parts.append([(extend_set(p.phi, s, [i]), extend_set(p.eta, s, [i]), n) for p, n in oracle.fibre_census(sub).items()])
        combined: dict[strata.AdmissiblePair, int] = {}
        for combo in product(*parts):
            phi, eta, n = EmbSet.empty(s), EmbSet.empty(s), 1
            for a, b, c in combo:
                phi, eta, n = phi | a, eta | b, n * c
            combined[strata.AdmissiblePair(phi, eta)] = n
        return None if combined == census else f"{s}, tau={M.tau!r}, q={M.q}: census does not factor"

    return [
        _run(S, "model_structure", models, structure),
        _run(S, "concordance", models, concordance),
        _run(S, "superspecial_law", models, superspecial),
        _run(S, "free_choice", models, free_choice),
        _run(S, "product_law", models, product_law),
    ]


def count_report(primes: Iterable[int] = (2, 3), degrees: Iterable[tuple[int, ...]] = ORACLE_SPLITTINGS, field_degrees: Iterable[int] = (1, 2)) -> tuple[int, list[str]]:
    """Measure the per-embedding product formula for census counts; returns (models checked, mismatch lines)."""
    n, lines = 0, []
    for p in primes:
        for degs in degrees:
            s = PrimeSplitting(p, degs)
            for m in field_degrees:
                for b in range(1 << s.g):
                    M = oracle.build_model(s, EmbSet(s, b), m)
                    n += 1
                    for pair, got, want in oracle.census_mismatches(M):
                        lines.append(f"{s}, tau={M.tau!r}, q={M.q}, {pair!r}: measured {got}, formula {want}")
    return n, lines


def run_suite(name: str, splittings: list[PrimeSplitting] | None = None, samples: int = 200, seed: int = 0) -> list[Check]:
    rng = random.Random(seed)
    splits = splittings or _splittings(DEFAULT_SPLITTINGS)
    if name == "index":
        return index_suite(splits)
    if name == "strata":
        return strata_suite(splits)
    if name == "cube":
        return cube_suite(splits)
    if name == "dynamics":
        return dynamics_suite(splits, samples, rng)
    if name == "restriction":
        return restriction_suite(splits, max(1, samples // 4), rng)
    if name == "functoriality":
        return functoriality_suite([ExtensionMap.parse(e) for e in DEFAULT_EXTENSIONS], samples, rng)
    if name == "oracle":
        return oracle_suite()
    if name in ("all", "default"):
        return [c for n in SUITES for c in run_suite(n, splittings, samples, seed)]
    raise KeyError(name)
