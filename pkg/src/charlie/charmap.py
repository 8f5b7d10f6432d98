"""Combinatorial character tables of GL(n, q) and U(n, q^2) read off from
products of Schur functions through the orbit alphabets and Green
polynomials."""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field as dfield
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Tuple

from .algebra import Cyclotomic, prime_power
from .polyorb import OrbitLabel, ambient, count_self_reciprocal, orbit_system
from .symfunc import green_value, sn_character, value_conductor, z
from .xpart import (XPartition, enumerate_xpartitions, multiplicities, partitions,
                    pn, r_bijection)

GroupRing = Dict[int, Fraction]  # exponent of a fixed root of unity -> coefficient

CLASS_KIND = {"GL": "phi", "U": "phitilde"}
CHAR_KIND = {"GL": "theta", "U": "thetatilde"}


def _gr_mul(a: GroupRing, b: GroupRing, C: int) -> GroupRing:
    out: Dict[int, Fraction] = defaultdict(Fraction)
    for i, x in a.items():
        for j, y in b.items():
            out[(i + j) % C] += x * y
    return {k: v for k, v in out.items() if v}


def _gr_scale(a: GroupRing, c) -> GroupRing:
    return {k: v * c for k, v in a.items()} if c else {}


def _gr_add(acc: Dict[int, Fraction], a: GroupRing, c=1):
    for k, v in a.items():
        acc[k] = acc.get(k, Fraction(0)) + v * c


def normalize_kind(kind: str) -> str:
    k = kind.upper()
    if k not in ("GL", "U"):
        raise ValueError(f"unknown group kind {kind!r}")
    return k


def group_order(kind: str, n: int, q: int) -> int:
    kind = normalize_kind(kind)
    out = q ** (n * (n - 1) // 2)
    for i in range(1, n + 1):
        out *= q ** i - (1 if kind == "GL" else (-1) ** i)
    return out


def _phi_m(m: int, t: Fraction) -> Fraction:
    out = Fraction(1)
    for j in range(1, m + 1):
        out *= 1 - t ** j
    return out


def unipotent_centralizer(lam, Q: int) -> Fraction:
    """Q^{|lam| + 2n(lam)} prod_i phi_{m_i}(1/Q)."""
    out = Fraction(Q) ** (sum(lam) + 2 * pn(lam))
    for m in multiplicities(lam).values():
        out *= _phi_m(m, Fraction(1, Q))
    return out


def centralizer_order(label: XPartition) -> int:
    """Order of the centralizer of an element in the class with this label."""
    twisted = label.kind == "phitilde"
    s = -label.q if twisted else label.q
    out = Fraction(1)
    for o, p in label.parts:
        out *= unipotent_centralizer(p, s ** o.size)
    if out.denominator != 1:
        raise ArithmeticError("non-integral centralizer order")
    return abs(int(out))


# ---------------------------------------------------------------------------
# the expansion of a character label into power sums on element orbits


@lru_cache(maxsize=None)
def _transform_raw(kind: str, k: int, size: int, r: int, n: int, q: int):
    """p_r on one character-orbit alphabet: {element orbit: group-ring coeff}."""
    twisted = kind == "U"
    amb = ambient(n, q)
    N = r * size
    C = value_conductor(n, q, twisted)
    step = amb.M // C
    elems = orbit_system(CLASS_KIND[kind], n, q)
    acc: Dict[OrbitLabel, Dict[int, Fraction]] = defaultdict(dict)
    sign = -1 if (N - 1) % 2 else 1
    for a, A in enumerate(amb.fixed_exponents(N, twisted)):
        e = (k * a % amb.M) // step
        d = acc[elems.find(A)]
        d[e] = d.get(e, Fraction(0)) + sign
    return {f: {e: c for e, c in d.items() if c} for f, d in acc.items()}


Monomial = Tuple[Tuple[OrbitLabel, Tuple[int, ...]], ...]


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    d: Dict[OrbitLabel, List[int]] = defaultdict(list)
    for f, idx in a + b:
        d[f].extend(idx)
    return tuple(sorted(((f, tuple(sorted(v, reverse=True))) for f, v in d.items()),
                        key=lambda t: t[0].sort_key()))


def _expand_schur_on_orbit(kind: str, o: OrbitLabel, part, n: int, q: int, C: int):
    """s_part on the alphabet of o as {monomial: group-ring coefficient}."""
    out: Dict[Monomial, Dict[int, Fraction]] = defaultdict(dict)
    for rho in partitions(sum(part)):
        c = Fraction(sn_character(part, rho), z(rho))
        if not c:
            continue
        terms: Dict[Monomial, GroupRing] = {(): {0: c}}
        for r in rho:
            tr = _transform_raw(kind, o.coset[0], o.size, r, n, q)
            nxt: Dict[Monomial, Dict[int, Fraction]] = defaultdict(dict)
            for mono, coef in terms.items():
                for f, g in tr.items():
                    m2 = _mono_mul(mono, ((f, (r * o.size // f.size,)),))
                    _gr_add(nxt[m2], _gr_mul(coef, g, C))
            terms = nxt
        for mono, coef in terms.items():
            _gr_add(out[mono], coef)
    return {m: {e: v for e, v in c.items() if v} for m, c in out.items()}


def expand_label(kind: str, lam: XPartition, C: int) -> Dict[Monomial, GroupRing]:
    terms: Dict[Monomial, GroupRing] = {(): {0: Fraction(1)}}
    for o, part in lam.parts:
        piece = _expand_schur_on_orbit(kind, o, part, lam.n, lam.q, C)
        nxt: Dict[Monomial, Dict[int, Fraction]] = defaultdict(dict)
        for m1, c1 in terms.items():
            for m2, c2 in piece.items():
                _gr_add(nxt[_mono_mul(m1, m2)], _gr_mul(c1, c2, C))
        terms = {m: {e: v for e, v in c.items() if v} for m, c in nxt.items()}
        terms = {m: c for m, c in terms.items() if c}
    return terms


def ennola_sign(nu: XPartition) -> int:
    return -1 if (nu.size // 2 + nu.nstat) % 2 else 1


# ---------------------------------------------------------------------------
# tables


@dataclass
class CombTable:
    kind: str
    n: int
    q: int
    classes: List[XPartition]
    chars: List[XPartition]
    values: List[List[Cyclotomic]]
    centralizers: List[int]
    conductor: int
    sign_flip: bool = False  # testing hook: drop the unitary sign
    _index: Dict[XPartition, int] = dfield(default_factory=dict, repr=False)

    @property
    def order(self) -> int:
        return group_order(self.kind, self.n, self.q)

    def identity_index(self) -> int:
        return self.classes.index(identity_label(self.kind, self.n, self.q))

    @property
    def degrees(self) -> List[int]:
        i = self.identity_index()
        out = []
        for row in self.values:
            v = row[i]
            if not v.is_rational():
                raise ArithmeticError("non-rational degree")
            out.append(int(v.to_rational()))
        return out

    def row(self, lam: XPartition) -> List[Cyclotomic]:
        if not self._index:
            self._index.update({c: i for i, c in enumerate(self.chars)})
        return self.values[self._index[lam]]


def identity_label(kind: str, n: int, q: int) -> XPartition:
    sysm = orbit_system(CLASS_KIND[kind], n, q)
    one = sysm.find(0)
    return XPartition.build(sysm.kind, n, q, {one: (1,) * n})


def trivial_char_label(kind: str, n: int, q: int) -> XPartition:
    sysm = orbit_system(CHAR_KIND[kind], n, q)
    return XPartition.build(sysm.kind, n, q, {sysm.find(0): (1,) * n})


def _value(terms, mu: XPartition, s: int, C: int) -> Cyclotomic:
    target = {f: p for f, p in mu.parts}
    acc: Dict[int, Fraction] = {}
    for mono, coef in terms.items():
        if len(mono) != len(target):
            continue
        w = Fraction(1)
        for f, idx in mono:
            if f not in target or sum(target[f]) != sum(idx):
                w = Fraction(0)
                break
            w *= green_value(target[f], idx, s ** f.size)
            if not w:
                break
        if w:
            _gr_add(acc, coef, w)
    lcm_den = 1
    for v in acc.values():
        lcm_den = lcm_den * v.denominator // _gcd(lcm_den, v.denominator)
    mult = {e: int(v * lcm_den) for e, v in acc.items()}
    return Cyclotomic.from_exponents(C, mult, lcm_den)


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


@lru_cache(maxsize=None)
def build_table(kind: str, n: int, q: int, sign_flip: bool = False) -> CombTable:
    """Character table with rows indexed by character labels and columns by
    class labels."""
    kind = normalize_kind(kind)
    prime_power(q)
    twisted = kind == "U"
    s = -q if twisted else q
    C = value_conductor(n, q, twisted)
    classes = enumerate_xpartitions(CLASS_KIND[kind], n, q)
    chars = enumerate_xpartitions(CHAR_KIND[kind], n, q)
    values = []
    for lam in chars:
        terms = expand_label(kind, lam, C)
        sign = ennola_sign(lam) if twisted and not sign_flip else 1
        values.append([_value(terms, mu, s, C) * sign for mu in classes])
    cent = [centralizer_order(mu) for mu in classes]
    return CombTable(kind, n, q, classes, chars, values, cent, C, sign_flip)


# ---------------------------------------------------------------------------
# classification and counts


def classify(table: CombTable) -> List[dict]:
    p, _ = prime_power(table.q)
    out = []
    for lam, row, deg in zip(table.chars, table.values, table.degrees):
        real_label = lam.is_self_conjugate()
        real_vals = all(v.is_real() for v in row)
        if real_label != real_vals:
            raise AssertionError(f"reality of label and values disagree for {lam}")
        out.append({
            "label": lam,
            "degree": deg,
            "real": real_label,
            "regular": lam.height == 1,
            "semisimple": deg % p != 0,
        })
    return out


def closed_form_real_regular(n: int, q: int) -> int:
    m = n // 2
    if q % 2 == 0:
        return q ** m
    return 2 * q ** m if n % 2 else q ** m + q ** (m - 1)


def count_real_regular(kind: str, n: int, q: int, method: str = "labels") -> int:
    """Number of real-valued characters with height one labels."""
    kind = normalize_kind(kind)
    if method == "closed":
        return closed_form_real_regular(n, q)
    if method == "polys":
        return count_self_reciprocal(n, q)
    if method == "table":
        return sum(1 for f in classify(build_table(kind, n, q)) if f["real"] and f["regular"])
    if method == "bijection":
        if kind != "U":
            raise ValueError("the bijection route counts unitary labels")
        real_gl = [l for l in enumerate_xpartitions("theta", n, q) if l.is_self_conjugate()]
        return sum(1 for l in real_gl if r_bijection(l).height == 1)
    if method == "labels":
        return sum(1 for l in enumerate_xpartitions(CHAR_KIND[kind], n, q)
                   if l.height == 1 and l.is_self_conjugate())
    raise ValueError(f"unknown method {method!r}")


# ---------------------------------------------------------------------------
# structural invariants of a finished table


def row_inner_product(table: CombTable, a: List[Cyclotomic], b: List[Cyclotomic]) -> Cyclotomic:
    acc = Cyclotomic.zero(table.conductor)
    for x, y, c in zip(a, b, table.centralizers):
        acc = acc + x * y.conj() * Fraction(1, c)
    return acc


def structural_checks(table: CombTable) -> List[dict]:
    """Orthogonality, degree sum, conjugation of labels against conjugation
    of values, positivity of degrees, and (unitary tables) the transport of
    real labels from GL."""
    out = []
    r = len(table.chars)
    gram_ok = True
    for i in range(r):
        for j in range(i, r):
            v = row_inner_product(table, table.values[i], table.values[j])
            gram_ok &= v.is_rational() and v.to_rational() == (1 if i == j else 0)
    out.append({"name": "row orthogonality", "ok": gram_ok})
    out.append({"name": "square classes count", "ok": len(table.chars) == len(table.classes)})
    degs = table.degrees
    out.append({"name": "sum of squared degrees is the group order",
                "ok": sum(d * d for d in degs) == table.order})
    out.append({"name": "conjugate label gives the conjugate row",
                "ok": all(table.row(l.conjugate()) == [v.conj() for v in row]
                          for l, row in zip(table.chars, table.values))})
    out.append({"name": "all degrees positive", "ok": all(d > 0 for d in degs)})
    if table.kind == "U":
        real_gl = [l for l in enumerate_xpartitions("theta", table.n, table.q) if l.is_self_conjugate()]
        image = [r_bijection(l) for l in real_gl]
        real_u = {l for l in table.chars if l.is_self_conjugate()}
        out.append({"name": "real labels transport bijectively onto real unitary labels",
                    "ok": len(set(image)) == len(image) and set(image) == real_u})
        out.append({"name": "transported labels index real-valued rows",
                    "ok": all(all(v.is_real() for v in table.row(l)) for l in image)})
        out.append({"name": "transport preserves height",
                    "ok": all(a.height == b.height for a, b in zip(real_gl, image))})
    return out
