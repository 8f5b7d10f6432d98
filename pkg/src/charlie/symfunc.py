"""Symmetric functions with exact coefficients: symmetric group characters,
power sums, Schur and monomial functions, Hall-Littlewood functions at a
rational parameter, Green polynomial values, and the change of alphabet from
character orbits to element orbits."""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field as dfield
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from math import factorial
from typing import Dict, List, Sequence, Tuple

from .algebra import Cyclotomic
from .polyorb import OrbitLabel, ambient, orbit_system, TWISTED
from .xpart import Partition, partitions, pn, multiplicities, make_partition

# ---------------------------------------------------------------------------
# symmetric group characters


def z(rho: Partition) -> int:
    """Centralizer order of a permutation of cycle type rho."""
    out = 1
    for part, m in multiplicities(rho).items():
        out *= part ** m * factorial(m)
    return out


def _beta_set(nu: Partition, length: int) -> Tuple[int, ...]:
    nu = tuple(nu) + (0,) * (length - len(nu))
    return tuple(nu[i] + length - 1 - i for i in range(length))


@lru_cache(maxsize=None)
def _mn(beta: Tuple[int, ...], rho: Tuple[int, ...]) -> int:
    # border strip removal on a beta-set: moving a bead down by r
    if not rho:
        return 1
    r, rest = rho[0], rho[1:]
    bs = set(beta)
    total = 0
    for b in beta:
        if b - r >= 0 and (b - r) not in bs:
            sign = (-1) ** sum(1 for c in beta if b - r < c < b)
            nb = tuple(sorted((c if c != b else b - r for c in beta), reverse=True))
            total += sign * _mn(nb, rest)
    return total


def sn_character(nu: Partition, rho: Partition) -> int:
    """Value of the irreducible character nu of S_n at cycle type rho."""
    nu, rho = make_partition(nu), make_partition(rho)
    if sum(nu) != sum(rho):
        raise ValueError("partition sizes differ")
    return _mn(_beta_set(nu, len(nu)), rho)


@lru_cache(maxsize=None)
def sn_table(n: int) -> Tuple[Tuple[Partition, ...], Tuple[Tuple[int, ...], ...]]:
    ps = partitions(n)
    return ps, tuple(tuple(sn_character(nu, rho) for rho in ps) for nu in ps)


# ---------------------------------------------------------------------------
# sparse symmetric functions


@dataclass
class SymFunc:
    basis: str  # "p", "m", "s" or "P"
    coeffs: Dict[Partition, object]
    t: Fraction | None = None
    nvars: int | None = None

    def __getitem__(self, lam):
        return self.coeffs.get(tuple(lam), 0)

    def items(self):
        return sorted(self.coeffs.items(), key=lambda kv: (sum(kv[0]), tuple(-x for x in kv[0])))

    def __eq__(self, other):
        if not isinstance(other, SymFunc):
            return NotImplemented
        keys = set(self.coeffs) | set(other.coeffs)
        return self.basis == other.basis and all(self[k] == other[k] for k in keys)


def schur_to_power(nu: Partition) -> SymFunc:
    """s_nu = sum over rho of chi^nu(rho)/z_rho p_rho."""
    nu = make_partition(nu)
    n = sum(nu)
    out = {}
    for rho in partitions(n):
        c = Fraction(sn_character(nu, rho), z(rho))
        if c:
            out[rho] = c
    return SymFunc("p", out)


@lru_cache(maxsize=None)
def kostka(lam: Partition, mu: Partition) -> int:
    """Number of semistandard tableaux of shape lam and content mu."""
    lam, mu = make_partition(lam), tuple(mu)
    if sum(lam) != sum(mu):
        return 0
    return _kostka_fill(lam, tuple(x for x in mu if x))


@lru_cache(maxsize=None)
def _kostka_fill(shape: Partition, content: Tuple[int, ...]) -> int:
    # strip the largest entry as a horizontal strip
    if not content:
        return 1 if not shape else 0
    k = content[-1]
    rest = content[:-1]
    total = 0
    for inner in _horizontal_strips(shape, k):
        total += _kostka_fill(inner, rest)
    return total


def _horizontal_strips(shape: Partition, k: int):
    """Shapes inner with shape/inner a horizontal strip of size k."""
    L = len(shape)
    res = []

    def rec(i, left, cur):
        if i == L:
            if left == 0:
                res.append(make_partition(cur))
            return
        lo = shape[i + 1] if i + 1 < L else 0
        for keep in range(shape[i], lo - 1, -1):
            take = shape[i] - keep
            if take > left:
                break
            rec(i + 1, left - take, cur + [keep])

    rec(0, k, [])
    return res


def schur_to_monomial(nu: Partition, nvars: int | None = None) -> SymFunc:
    nu = make_partition(nu)
    out = {}
    for mu in partitions(sum(nu)):
        if nvars is not None and len(mu) > nvars:
            continue
        k = kostka(nu, mu)
        if k:
            out[mu] = Fraction(k)
    return SymFunc("m", out, nvars=nvars)


# ---------------------------------------------------------------------------
# Hall-Littlewood functions


def _vm(m: int, t: Fraction) -> Fraction:
    out = Fraction(1)
    for j in range(1, m + 1):
        # (1 - t^j)/(1 - t) written as a geometric sum so t = 1 is allowed
        out *= sum((t ** i for i in range(j)), Fraction(0))
    return out


def _poly_mul(a: Dict[Tuple[int, ...], Fraction], b: Dict[Tuple[int, ...], Fraction]):
    out: Dict[Tuple[int, ...], Fraction] = defaultdict(Fraction)
    for ea, ca in a.items():
        for eb, cb in b.items():
            out[tuple(x + y for x, y in zip(ea, eb))] += ca * cb
    return {e: c for e, c in out.items() if c}


def _sort_sign(alpha: Tuple[int, ...]):
    if len(set(alpha)) < len(alpha):
        return 0, None
    arr = list(alpha)
    sign = 1
    for i in range(len(arr)):
        for j in range(len(arr) - 1 - i):
            if arr[j] < arr[j + 1]:
                arr[j], arr[j + 1] = arr[j + 1], arr[j]
                sign = -sign
    return sign, tuple(arr)


@lru_cache(maxsize=None)
def hl_schur_coeffs(lam: Partition, t: Fraction, nvars: int) -> Dict[Partition, Fraction]:
    """Schur expansion of P_lam(x_1..x_N; t)."""
    lam = make_partition(lam)
    N = nvars
    if N < len(lam):
        return {}
    t = Fraction(t)
    lamN = tuple(lam) + (0,) * (N - len(lam))
    f = {lamN: Fraction(1)}
    for i in range(N):
        for j in range(i + 1, N):
            ei = tuple(1 if k == i else 0 for k in range(N))
            ej = tuple(1 if k == j else 0 for k in range(N))
            f = _poly_mul(f, {ei: Fraction(1), ej: -t} if t else {ei: Fraction(1)})
    delta = tuple(N - 1 - i for i in range(N))
    acc: Dict[Partition, Fraction] = defaultdict(Fraction)
    for alpha, c in f.items():
        sign, srt = _sort_sign(alpha)
        if not sign:
            continue
        mu = make_partition(tuple(a - d for a, d in zip(srt, delta)))
        acc[mu] += sign * c
    mult = multiplicities(lam)
    mult[0] = N - len(lam)
    v = Fraction(1)
    for m in mult.values():
        v *= _vm(m, t)
    if v == 0:
        return _interpolated_coeffs(lam, t, N)
    return {mu: c / v for mu, c in acc.items() if c}


def _interpolated_coeffs(lam: Partition, t: Fraction, N: int) -> Dict[Partition, Fraction]:
    """The coefficients are polynomials in t of degree at most N(N-1)/2;
    where the normalizing factor vanishes (t a root of unity) evaluate them
    by Lagrange interpolation through integer points."""
    pts = [Fraction(k) for k in range(2, N * (N - 1) // 2 + 3)]
    vals = [hl_schur_coeffs(lam, x, N) for x in pts]
    keys = set().union(*vals)
    out = {}
    for mu in keys:
        acc = Fraction(0)
        for i, xi in enumerate(pts):
            w = Fraction(1)
            for j, xj in enumerate(pts):
                if j != i:
                    w *= (t - xj) / (xi - xj)
            acc += vals[i].get(mu, Fraction(0)) * w
        if acc:
            out[mu] = acc
    return out


def hall_littlewood(lam: Partition, t, nvars: int) -> SymFunc:
    """P_lam(x_1..x_N; t) expanded in monomial symmetric functions."""
    lam = make_partition(lam)
    if nvars < sum(lam):
        raise ValueError("need at least |lambda| variables")
    t = Fraction(t)
    out: Dict[Partition, Fraction] = defaultdict(Fraction)
    for mu, c in hl_schur_coeffs(lam, t, nvars).items():
        for nu, k in schur_to_monomial(mu, nvars).coeffs.items():
            out[nu] += c * k
    return SymFunc("m", {k: v for k, v in out.items() if v}, t=t, nvars=nvars)


def _inverse_unitriangular(rows: List[List[Fraction]]) -> List[List[Fraction]]:
    n = len(rows)
    inv = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    # rows[i][j] nonzero only for j >= i in the chosen order (upper)
    for i in range(n - 1, -1, -1):
        for j in range(i + 1, n):
            c = rows[i][j]
            if c:
                for k in range(n):
                    inv[i][k] -= c * inv[j][k]
    return inv


@lru_cache(maxsize=None)
def transition(grade: int, t: Fraction):
    """Returns (parts, schur_in_P, power_in_P) at one grade: the matrices
    expressing s_nu and p_rho in the P_mu(t) basis."""
    t = Fraction(t)
    ps = partitions(grade)  # dominance-compatible: larger first
    idx = {p: i for i, p in enumerate(ps)}
    # P_lam = s_lam + lower terms; lower terms come later in ps, so B is
    # upper unitriangular in this order
    B = [[Fraction(0)] * len(ps) for _ in ps]
    for lam in ps:
        for mu, c in hl_schur_coeffs(lam, t, grade).items():
            B[idx[lam]][idx[mu]] = c
    Binv = _inverse_unitriangular(B)
    _, table = sn_table(grade)
    power = [[sum((table[k][r] * Binv[k][m] for k in range(len(ps))), Fraction(0))
              for m in range(len(ps))] for r in range(len(ps))]
    return ps, Binv, power


def power_to_hl(k: int, t, max_grade: int | None = None) -> SymFunc:
    """Expansion of p_k in the basis P_mu(t)."""
    if max_grade is not None and k > max_grade:
        raise ValueError("k exceeds the grade bound")
    t = Fraction(t)
    ps, _, power = transition(k, t)
    row = power[ps.index((k,))]
    return SymFunc("P", {mu: c for mu, c in zip(ps, row) if c}, t=t)


def power_product_to_hl(rho: Partition, t) -> Dict[Partition, Fraction]:
    t = Fraction(t)
    ps, _, power = transition(sum(rho), t)
    row = power[ps.index(make_partition(rho))]
    return {mu: c for mu, c in zip(ps, row) if c}


@lru_cache(maxsize=None)
def green_value(mu: Partition, rho: Partition, Q: int) -> Fraction:
    """Q^mu_rho at the integer argument Q, read from the coefficient of
    P_mu(1/Q) in p_rho with the t^{n(mu)} factor removed."""
    t = Fraction(1, Q)
    c = power_product_to_hl(rho, t).get(make_partition(mu), Fraction(0))
    return c * Fraction(Q) ** pn(make_partition(mu))


# ---------------------------------------------------------------------------
# change of alphabet


def _conductor(n: int, q: int, twisted: bool) -> int:
    amb = ambient(n, q)
    C = 1
    for d in range(1, n + 1):
        o = amb.fixed_order(d, twisted)
        from math import gcd
        C = C * o // gcd(C, o)
    return C


def value_conductor(n: int, q: int, twisted: bool) -> int:
    """Least conductor holding every character value on the fixed groups."""
    return _conductor(n, q, twisted)


def variable_transform(kind: str, orbit: OrbitLabel, r: int, n: int, q: int,
                       rep: int | None = None) -> Dict[OrbitLabel, Cyclotomic]:
    """p_r on the alphabet of a character orbit as a combination
    sum_f c_f p_{r|orbit|/|f|} on element-orbit alphabets.

    ``kind`` is "F" or "Ft"; ``rep`` overrides the character representative
    (an ambient exponent in the orbit)."""
    twisted = kind == "Ft"
    if TWISTED[orbit.kind] != twisted:
        raise ValueError("orbit kind does not match the transform")
    amb = ambient(n, q)
    N = r * orbit.size
    if N > n:
        raise ValueError("degree exceeds the ambient bound")
    k = orbit.coset[0] if rep is None else rep
    if rep is not None and rep % amb.M not in orbit.coset:
        raise ValueError("representative outside the orbit")
    C = value_conductor(n, q, twisted)
    step = amb.M // C
    elems = orbit_system("phitilde" if twisted else "phi", n, q)
    acc: Dict[OrbitLabel, Dict[int, int]] = defaultdict(lambda: defaultdict(int))
    # the norm-compatible generators make xi(h_N^a) = zeta_M^(k a) coherent
    for a, A in enumerate(amb.fixed_exponents(N, twisted)):
        e = k * a % amb.M
        acc[elems.find(A)][e // step] += 1
    sign = -1 if (N - 1) % 2 else 1
    out = {}
    for f, mult in acc.items():
        c = Cyclotomic.from_exponents(C, dict(mult)) * sign
        if not c.is_zero():
            out[f] = c
    return out
