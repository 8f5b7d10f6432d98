"""Polynomials over finite fields, the reciprocal involution, and the four
orbit sets: Frobenius and twisted-Frobenius orbits on nonzero field elements
and on their characters."""
from __future__ import annotations

import random
from dataclasses import dataclass, field as dfield
from functools import lru_cache
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple

from .algebra import GF, FieldTower, field, prime_power

Poly = Tuple[int, ...]  # coefficients low -> high

KINDS = ("phi", "theta", "phitilde", "thetatilde")
TWISTED = {"phi": False, "theta": False, "phitilde": True, "thetatilde": True}
ON_ELEMENTS = {"phi": True, "theta": False, "phitilde": True, "thetatilde": False}


# ---------------------------------------------------------------------------
# polynomial arithmetic over a GF

def ptrim(a: Sequence[int]) -> Poly:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return tuple(a)


def padd(F: GF, a: Poly, b: Poly) -> Poly:
    n = max(len(a), len(b))
    return ptrim(F.add(a[i] if i < len(a) else 0, b[i] if i < len(b) else 0) for i in range(n))


def psub(F: GF, a: Poly, b: Poly) -> Poly:
    n = max(len(a), len(b))
    return ptrim(F.sub(a[i] if i < len(a) else 0, b[i] if i < len(b) else 0) for i in range(n))


def pmul(F: GF, a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] = F.add(out[i + j], F.mul(ai, bj))
    return ptrim(out)


def pdivmod(F: GF, a: Poly, m: Poly) -> Tuple[Poly, Poly]:
    a = list(a)
    m = ptrim(m)
    if not m:
        raise ZeroDivisionError("polynomial division by zero")
    dm = len(m) - 1
    inv = F.inv(m[-1])
    quo = [0] * max(len(a) - dm, 0)
    while len(a) - 1 >= dm and a:
        c = F.mul(a[-1], inv)
        s = len(a) - 1 - dm
        quo[s] = c
        for i, mi in enumerate(m):
            a[s + i] = F.sub(a[s + i], F.mul(c, mi))
        while a and a[-1] == 0:
            a.pop()
    return ptrim(quo), ptrim(a)


def pmod(F: GF, a: Poly, m: Poly) -> Poly:
    return pdivmod(F, a, m)[1]


def pmonic(F: GF, a: Poly) -> Poly:
    a = ptrim(a)
    inv = F.inv(a[-1])
    return tuple(F.mul(c, inv) for c in a)


def pgcd(F: GF, a: Poly, b: Poly) -> Poly:
    a, b = ptrim(a), ptrim(b)
    while b:
        a, b = b, pmod(F, a, b)
    return pmonic(F, a) if a else a


def ppowmod(F: GF, base: Poly, e: int, m: Poly) -> Poly:
    result: Poly = (1,)
    base = pmod(F, base, m)
    while e:
        if e & 1:
            result = pmod(F, pmul(F, result, base), m)
        base = pmod(F, pmul(F, base, base), m)
        e >>= 1
    return result


def peval(F: GF, f: Poly, x: int) -> int:
    v = 0
    for c in reversed(f):
        v = F.add(F.mul(v, x), c)
    return v


def poly_str(f: Poly, var: str = "t") -> str:
    terms = []
    for i in range(len(f) - 1, -1, -1):
        c = f[i]
        if not c:
            continue
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        if not mono:
            terms.append(str(c))
        elif c == 1:
            terms.append(mono)
        else:
            terms.append(f"{c}{mono}")
    return " + ".join(terms) if terms else "0"


# ---------------------------------------------------------------------------
# factorization: distinct degree, then equal degree splitting

def distinct_degree(F: GF, f: Poly) -> List[Tuple[Poly, int]]:
    """Pairs (g_d, d) with g_d the product of the degree-d irreducible
    factors of the squarefree monic f."""
    out = []
    x: Poly = (0, 1)
    h = x
    f = pmonic(F, f)
    d = 0
    while len(f) - 1 >= 2 * (d + 1):
        d += 1
        h = ppowmod(F, h, F.q, f)
        g = pgcd(F, f, psub(F, h, x))
        if len(g) > 1:
            out.append((g, d))
            f, _ = pdivmod(F, f, g)
            f = pmonic(F, f)
            h = pmod(F, h, f)
    if len(f) > 1:
        out.append((f, len(f) - 1))
    return out


def equal_degree(F: GF, f: Poly, d: int, rng: random.Random) -> List[Poly]:
    """Split a product of distinct monic irreducibles of degree d."""
    n = len(f) - 1
    if n == d:
        return [pmonic(F, f)]
    while True:
        a = ptrim([rng.randrange(F.q) for _ in range(n)])
        if len(a) < 2:
            continue
        if F.p == 2:
            # trace map a + a^2 + ... + a^(2^(k d - 1))
            t = a
            cur = a
            for _ in range(F.k * d - 1):
                cur = pmod(F, pmul(F, cur, cur), f)
                t = padd(F, t, cur)
            g = pgcd(F, f, t)
        else:
            e = (F.q ** d - 1) // 2
            g = pgcd(F, f, psub(F, ppowmod(F, a, e, f), (1,)))
        if 1 < len(g) < len(f):
            h, _ = pdivmod(F, f, g)
            return equal_degree(F, g, d, rng) + equal_degree(F, pmonic(F, h), d, rng)


def irreducible_factors(F: GF, f: Poly, seed: int = 0) -> List[Poly]:
    """Monic irreducible factors of a squarefree polynomial, sorted."""
    rng = random.Random(seed)
    out = []
    for g, d in distinct_degree(F, f):
        out.extend(equal_degree(F, g, d, rng))
    return sorted(out, key=lambda g: (len(g), g))


def irreducibles_by_factoring(F: GF, d: int) -> List[Poly]:
    """Monic irreducibles of degree d with nonzero constant, read off the
    factorization of t^(q^d) - t."""
    big = [0] * (F.q ** d + 1)
    big[F.q ** d] = 1
    big[1] = F.neg(1)
    facs = irreducible_factors(F, ptrim(big), seed=d)
    return [g for g in facs if len(g) - 1 == d and g[0] != 0]


def is_irreducible(F: GF, f: Poly) -> bool:
    f = pmonic(F, f)
    n = len(f) - 1
    if n < 1:
        return False
    dd = distinct_degree(F, f)
    return len(dd) == 1 and dd[0][1] == n and len(dd[0][0]) == len(f)


def monic_polys(F: GF, n: int, nonzero_constant: bool = True):
    for word in range(F.q ** n):
        coeffs = []
        w = word
        for _ in range(n):
            coeffs.append(w % F.q)
            w //= F.q
        if nonzero_constant and coeffs[0] == 0:
            continue
        yield tuple(coeffs) + (1,)


# ---------------------------------------------------------------------------
# the reciprocal involution and its fixed points

def reciprocal(F: GF, f: Poly) -> Poly:
    """a_0^{-1} t^n f(1/t) for monic f of degree n with a_0 != 0."""
    f = ptrim(f)
    if not f or f[0] == 0:
        raise ValueError("reciprocal needs a nonzero constant term")
    inv = F.inv(f[0])
    return tuple(F.mul(c, inv) for c in reversed(f))


def count_self_reciprocal(n: int, q: int) -> int:
    """Number of monic degree-n f over F_q with f(0) != 0 and f equal to its
    reciprocal, by the coefficient case analysis."""
    if n < 1:
        raise ValueError("n must be positive")
    if q % 2 == 0:
        return q ** (n // 2)
    m = n // 2
    if n % 2:
        return 2 * q ** m
    return q ** m + q ** (m - 1)


def count_self_reciprocal_exhaustive(n: int, q: int) -> int:
    p, e = prime_power(q)
    F = field(p, e)
    return sum(1 for f in monic_polys(F, n) if reciprocal(F, f) == f)


# ---------------------------------------------------------------------------
# the ambient cyclic group and orbits

def lcm_upto(n: int) -> int:
    L = 1
    for i in range(1, n + 1):
        L = L * i // gcd(L, i)
    return L


class Ambient:
    """Exponents modulo q^(2L) - 1, L = lcm(1..n), standing for powers of a
    fixed generator of the multiplicative group and of its dual.

    Elements are realized in the field of degree lcm(2, L) over F_q, whose
    generator is matched with the norm of the ambient generator."""

    def __init__(self, n: int, q: int):
        self.n, self.q = n, q
        self.p, self.e = prime_power(q)
        self.L = lcm_upto(n)
        self.D = 2 * self.L
        self.M = q ** self.D - 1
        self.Dr = 2 * self.L // gcd(2, self.L)
        self.scale = self.M // (q ** self.Dr - 1)
        self._tower: Optional[FieldTower] = None

    @property
    def tower(self) -> FieldTower:
        if self._tower is None:
            self._tower = FieldTower(self.p, self.e * self.Dr)
        return self._tower

    def step(self, twisted: bool) -> int:
        return (-self.q) % self.M if twisted else self.q % self.M

    def fixed_order(self, N: int, twisted: bool) -> int:
        """Order of the group of points fixed by the N-th power of the map."""
        s = -self.q if twisted else self.q
        return abs(s ** N - 1)

    def fixed_gen(self, N: int, twisted: bool) -> int:
        """Ambient exponent of the norm generator of the fixed group."""
        s = -self.q if twisted else self.q
        return ((s ** self.D - 1) // (s ** N - 1)) % self.M

    def fixed_exponents(self, N: int, twisted: bool) -> List[int]:
        g = self.fixed_gen(N, twisted)
        return [a * g % self.M for a in range(self.fixed_order(N, twisted))]

    def coset(self, k: int, twisted: bool) -> Tuple[int, ...]:
        s = self.step(twisted)
        seen = []
        cur = k % self.M
        while cur not in seen:
            seen.append(cur)
            cur = cur * s % self.M
        return tuple(sorted(seen))

    def element(self, A: int) -> int:
        """The realized field element for ambient exponent A."""
        if A % self.scale:
            raise ValueError("exponent outside the realized field")
        T = self.tower.top_field
        return T.power_of_gen(A // self.scale)

    def orbit_poly(self, coset: Sequence[int], twisted: bool) -> Poly:
        """prod (t - alpha) over the orbit, pulled back to F_q or F_{q^2}."""
        T = self.tower.top_field
        f: Poly = (1,)
        for A in coset:
            f = pmul(T, f, (T.neg(self.element(A)), 1))
        sub = 2 * self.e if twisted else self.e
        return tuple(self.tower.pull(sub, c) for c in f)

    def coeff_field(self, twisted: bool) -> GF:
        return field(self.p, 2 * self.e if twisted else self.e)


@lru_cache(maxsize=None)
def ambient(n: int, q: int) -> Ambient:
    return Ambient(n, q)


@dataclass(frozen=True)
class OrbitLabel:
    kind: str
    size: int
    rep: Tuple[int, ...]  # polynomial coefficients, or (least exponent,)
    coset: Tuple[int, ...] = dfield(compare=False, repr=False)

    def sort_key(self):
        return (self.size, self.rep)

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def to_json(self) -> dict:
        rep = list(self.rep) if ON_ELEMENTS[self.kind] else self.rep[0]
        return {"kind": self.kind, "size": self.size, "rep": rep}

    def __str__(self):
        if ON_ELEMENTS[self.kind]:
            return poly_str(self.rep)
        return f"[{self.rep[0]}]"


class OrbitSystem:
    """All orbits of size <= n of one kind, with lookup by exponent."""

    def __init__(self, kind: str, n: int, q: int):
        if kind not in KINDS:
            raise ValueError(f"unknown orbit kind {kind!r}")
        self.kind, self.n, self.q = kind, n, q
        self.amb = ambient(n, q)
        tw = TWISTED[kind]
        seen: Dict[int, OrbitLabel] = {}
        orbits = []
        for d in range(1, n + 1):
            for A in self.amb.fixed_exponents(d, tw):
                if A in seen:
                    continue
                c = self.amb.coset(A, tw)
                if len(c) != d:
                    continue
                if ON_ELEMENTS[kind]:
                    rep = self.amb.orbit_poly(c, tw)
                else:
                    rep = (c[0],)
                o = OrbitLabel(kind, d, rep, c)
                orbits.append(o)
                for k in c:
                    seen[k] = o
        self.orbits = sorted(orbits)
        self._by_exp = seen

    def find(self, k: int) -> OrbitLabel:
        return self._by_exp[k % self.amb.M]

    def conj(self, o: OrbitLabel) -> OrbitLabel:
        return self.find(-o.coset[0])

    def by_rep(self, rep: Tuple[int, ...]) -> OrbitLabel:
        for o in self.orbits:
            if o.rep == tuple(rep):
                return o
        raise KeyError(rep)


@lru_cache(maxsize=None)
def orbit_system(kind: str, n: int, q: int) -> OrbitSystem:
    return OrbitSystem(kind, n, q)


def enumerate_orbits(kind: str, n: int, q: int) -> List[OrbitLabel]:
    """All orbits of the given kind of size at most n, sorted."""
    if n < 1:
        raise ValueError("n must be positive")
    return list(orbit_system(kind, n, q).orbits)


def conjugate_orbit(o: OrbitLabel, n: int, q: int) -> OrbitLabel:
    """The orbit of inverses: k -> -k on exponents, reciprocal roots on
    polynomials."""
    return orbit_system(o.kind, max(n, o.size), q).conj(o)


def orbit_union_identity(n: int, q: int) -> bool:
    """[x]_F u [x^-1]_F == [x]_Ft u [x^-1]_Ft for every character exponent
    with orbit size at most n under either map."""
    amb = ambient(n, q)
    ks = set()
    for d in range(1, n + 1):
        ks.update(amb.fixed_exponents(d, False))
        ks.update(amb.fixed_exponents(d, True))
    for k in ks:
        a = set(amb.coset(k, False)) | set(amb.coset(-k, False))
        b = set(amb.coset(k, True)) | set(amb.coset(-k, True))
        if a != b:
            return False
    return True
