"""Small finite fields GF(p^m).

Elements are integers ``0 .. q-1`` read as base-``p`` coefficient vectors of
a polynomial modulo a fixed monic irreducible of degree ``m``.  Products go
through discrete-log tables; sums use an addition table for ``q <= 9`` and
Zech logarithms beyond.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product

from .index import is_prime

ADD_TABLE_MAX = 9


def _digits(x: int, p: int, m: int) -> list[int]:
    out = []
    for _ in range(m):
        x, d = divmod(x, p)
        out.append(d)
    return out


def _undigits(ds: list[int], p: int) -> int:
    x = 0
    for d in reversed(ds):
        x = x * p + d
    return x


def _poly_mulmod(a: list[int], b: list[int], mod: list[int], p: int) -> list[int]:
    """Product of coefficient lists (low degree first) modulo a monic ``mod``."""
    m = len(mod) - 1
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    for k in range(len(prod) - 1, m - 1, -1):
        c = prod[k]
        if c:
            for t in range(m + 1):
                prod[k - m + t] = (prod[k - m + t] - c * mod[t]) % p
    return (prod + [0] * m)[:m]


def _is_irreducible(mod: list[int], p: int) -> bool:
    m = len(mod) - 1
    # no factor of degree d <= m/2: test by trial division over all monic polys
    for d in range(1, m // 2 + 1):
        for tail in product(range(p), repeat=d):
            div = list(tail) + [1]
            r = list(mod)
            for k in range(m, d - 1, -1):
                c = r[k]
                if c:
                    for t in range(d + 1):
                        r[k - d + t] = (r[k - d + t] - c * div[t]) % p
            if not any(r[:d]):
                return False
    return True


def _find_modulus(p: int, m: int) -> list[int]:
    for tail in product(range(p), repeat=m):
        mod = list(reversed(tail)) + [1]
        if mod[0] and _is_irreducible(mod, p):
            return mod
    raise ValueError(f"no irreducible polynomial of degree {m} over GF({p})")


class GF:
    """The field with ``q = p**m`` elements."""

    def __init__(self, p: int, m: int = 1):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if m < 1:
            raise ValueError("degree must be >= 1")
        self.p, self.m, self.q = p, m, p**m
        self.modulus = [0, 1] if m == 1 else _find_modulus(p, m)
        self._build_logs()
        self._add = None
        if self.q <= ADD_TABLE_MAX:
            self._add = [[self._add_digits(a, b) for b in range(self.q)] for a in range(self.q)]
        else:
            self._zech = [self._zech_of(n) for n in range(self.q - 1)]

    def _add_digits(self, a: int, b: int) -> int:
        p, m = self.p, self.m
        return _undigits([(x + y) % p for x, y in zip(_digits(a, p, m), _digits(b, p, m))], p)

    def _build_logs(self) -> None:
        p, m, q = self.p, self.m, self.q
        for g in range(2, q) if q > 2 else [1]:
            exp = [1]
            gd = _digits(g, p, m) if m > 1 else [g % p]
            cur = [1] + [0] * (m - 1)
            for _ in range(q - 2):
                cur = _poly_mulmod(cur, gd, self.modulus, p) if m > 1 else [(cur[0] * g) % p]
                exp.append(_undigits(cur, p))
            if len(set(exp)) == q - 1:
                self.generator = g
                self._exp = exp
                self._log = [0] * q
                for n, x in enumerate(exp):
                    self._log[x] = n
                return
        raise ValueError("no primitive element found")

    def _zech_of(self, n: int) -> int | None:
        """``Z(n)`` with ``1 + g^n = g^Z(n)``; ``None`` when the sum is 0."""
        s = self._add_digits(1, self._exp[n])
        return None if s == 0 else self._log[s]

    def elements(self) -> range:
        return range(self.q)

    def add(self, a: int, b: int) -> int:
        if self._add is not None:
            return self._add[a][b]
        if a == 0:
            return b
        if b == 0:
            return a
        la, lb = self._log[a], self._log[b]
        z = self._zech[(lb - la) % (self.q - 1)]
        return 0 if z is None else self._exp[(la + z) % (self.q - 1)]

    def neg(self, a: int) -> int:
        p, m = self.p, self.m
        return _undigits([(-x) % p for x in _digits(a, p, m)], p)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return self._exp[(-self._log[a]) % (self.q - 1)]

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            return 0 if e > 0 else 1
        return self._exp[(self._log[a] * e) % (self.q - 1)]

    def frob(self, a: int) -> int:
        return self.pow(a, self.p)

    def frob_inv(self, a: int) -> int:
        return self.pow(a, self.p ** (self.m - 1))

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.m})"


@lru_cache(maxsize=None)
def field(p: int, m: int = 1) -> GF:
    return GF(p, m)


def prime_power(q: int) -> tuple[int, int]:
    """``(p, m)`` with ``q = p**m``; raises ``ValueError`` otherwise."""
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    for p in range(2, q + 1):
        if q % p == 0:
            break
    m, r = 0, q
    while r % p == 0:
        r //= p
        m += 1
    if r != 1 or not is_prime(p):
        raise ValueError(f"{q} is not a prime power")
    return p, m
