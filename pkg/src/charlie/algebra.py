"""Exact scalars: prime fields and their extensions, field towers, characters
of finite fields, and cyclotomic numbers."""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Dict, List, Sequence, Tuple

import numpy as np
from sympy import factorint, isprime, cyclotomic_poly, totient, primitive_root
from sympy.abc import x as _sym_x

TABLE_LIMIT = 1024


# ---------------------------------------------------------------------------
# polynomials over F_p, coefficient lists from low to high degree

def _trim(a: List[int]) -> List[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _trim(out)


def _pmod(a, m, p):
    a = list(a)
    inv = pow(m[-1], p - 2, p)
    dm = len(m) - 1
    while len(a) - 1 >= dm and a:
        c = a[-1] * inv % p
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % p
        _trim(a)
    return a


def _psub(a, b, p):
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)]
    return _trim(out)


def _pgcd(a, b, p):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def _ppowmod(base, e, m, p):
    result = [1]
    base = _pmod(base, m, p)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, base, p), m, p)
        base = _pmod(_pmul(base, base, p), m, p)
        e >>= 1
    return result


def is_irreducible_mod_p(f: Sequence[int], p: int) -> bool:
    """Rabin's test for a monic polynomial over F_p."""
    f = _trim(list(f))
    k = len(f) - 1
    if k < 1:
        return False
    if k == 1:
        return True
    xp = [0, 1]
    if _psub(_ppowmod(xp, p ** k, f, p), xp, p):
        return False
    for r in factorint(k):
        h = _psub(_ppowmod(xp, p ** (k // r), f, p), xp, p)
        if len(_pgcd(f, h, p)) != 1:
            return False
    return True


@lru_cache(maxsize=None)
def least_irreducible(p: int, k: int) -> Tuple[int, ...]:
    """Lexicographically least monic irreducible of degree k over F_p.

    Candidates are ordered by the coefficient word (a_{k-1}, ..., a_0)."""
    for word in range(p ** k):
        coeffs = []
        w = word
        for _ in range(k):
            coeffs.append(w % p)
            w //= p
        # the most significant digit of word is a_{k-1}
        f = coeffs + [1]
        if f[0] != 0 and is_irreducible_mod_p(f, p):
            return tuple(f)
    raise ValueError("no irreducible polynomial found")


# ---------------------------------------------------------------------------
# finite fields

class GF:
    """The field F_p[x]/(f) with f the least monic irreducible of degree k.

    Elements are integers 0..q-1 whose base-p digits are the coefficients
    of 1, x, x^2, ...
    """

    def __init__(self, p: int, k: int = 1):
        if not isprime(p):
            raise ValueError(f"{p} is not prime")
        if k < 1:
            raise ValueError("degree must be positive")
        self.p, self.k = p, k
        self.q = p ** k
        self.poly = least_irreducible(p, k)
        self._digits = None
        self.add_t = self.mul_t = None
        self.log_t = None
        self._build_logs()
        if self.q <= TABLE_LIMIT:
            self._build_tables()

    def __repr__(self):
        return f"GF({self.p}^{self.k})"

    def __eq__(self, other):
        return isinstance(other, GF) and (self.p, self.k) == (other.p, other.k)

    def __hash__(self):
        return hash((self.p, self.k))

    # digit conversions
    def to_vec(self, a: int) -> List[int]:
        out = []
        for _ in range(self.k):
            out.append(a % self.p)
            a //= self.p
        return out

    def from_vec(self, v: Sequence[int]) -> int:
        a = 0
        for c in reversed(list(v)[: self.k]):
            a = a * self.p + (c % self.p)
        return a

    def _slow_mul(self, a: int, b: int) -> int:
        prod = _pmul(_trim(self.to_vec(a)), _trim(self.to_vec(b)), self.p)
        return self.from_vec(_pmod(prod, list(self.poly), self.p) + [0] * self.k)

    def _slow_add(self, a: int, b: int) -> int:
        va, vb = self.to_vec(a), self.to_vec(b)
        return self.from_vec([(s + t) % self.p for s, t in zip(va, vb)])

    def _build_tables(self):
        q, p = self.q, self.p
        digits = np.array([self.to_vec(a) for a in range(q)], dtype=np.int64)
        weights = p ** np.arange(self.k, dtype=np.int64)
        s = (digits[:, None, :] + digits[None, :, :]) % p
        self.add_t = (s * weights).sum(axis=2).astype(np.int32)
        lg = self.log_t.copy()
        lg[0] = 0
        mul = self.exp_t[(lg[:, None] + lg[None, :]) % (q - 1)].astype(np.int32)
        mul[0, :] = 0
        mul[:, 0] = 0
        self.mul_t = mul
        self.neg_t = ((-digits) % p * weights).sum(axis=1).astype(np.int32)
        self._digits = digits

    def _build_logs(self):
        q = self.q
        g = self.primitive_element()
        exp = np.zeros(q - 1, dtype=np.int64)
        log = np.full(q, -1, dtype=np.int64)
        cur = 1
        for i in range(q - 1):
            exp[i] = cur
            log[cur] = i
            cur = self._slow_mul(cur, g)
        if cur != 1 or (log[1:] < 0).any():
            raise RuntimeError("generator does not generate")
        self.gen = g
        self.exp_t, self.log_t = exp, log

    def primitive_element(self) -> int:
        q = self.q
        if q == 2:
            return 1
        primes = list(factorint(q - 1))
        for g in range(2, q):
            if all(self._slow_pow(g, (q - 1) // r) != 1 for r in primes):
                return g
        raise RuntimeError("no primitive element")

    def _slow_pow(self, a: int, e: int) -> int:
        result, base = 1, a
        while e:
            if e & 1:
                result = self._slow_mul(result, base)
            base = self._slow_mul(base, base)
            e >>= 1
        return result

    # arithmetic
    def add(self, a: int, b: int) -> int:
        if self.add_t is not None:
            return int(self.add_t[a, b])
        if self.p == 2:
            return a ^ b
        return self._slow_add(a, b)

    def neg(self, a: int) -> int:
        if self.add_t is not None:
            return int(self.neg_t[a])
        return self.from_vec([(-c) % self.p for c in self.to_vec(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.mul_t is not None:
            return int(self.mul_t[a, b])
        if a == 0 or b == 0:
            return 0
        return int(self.exp_t[(self.log_t[a] + self.log_t[b]) % (self.q - 1)])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return int(self.exp_t[(-self.log_t[a]) % (self.q - 1)])

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e == 0:
                return 1
            if e < 0:
                raise ZeroDivisionError("negative power of zero")
            return 0
        return int(self.exp_t[(self.log_t[a] * e) % (self.q - 1)])

    def dlog(self, a: int) -> int:
        if a == 0:
            raise ValueError("discrete log of zero")
        return int(self.log_t[a])

    def power_of_gen(self, k: int) -> int:
        return int(self.exp_t[k % (self.q - 1)])

    def elements(self) -> range:
        return range(self.q)

    def prime_subfield(self, a: int) -> bool:
        return a < self.p

    def trace_to_prime(self, a: int) -> int:
        s, cur = 0, a
        for _ in range(self.k):
            s = self.add(s, cur)
            cur = self.pow(cur, self.p)
        return s  # an element of F_p, equal to its integer code

    def spec(self) -> dict:
        return {"p": self.p, "e": self.k, "defining_poly": list(self.poly)}


@lru_cache(maxsize=None)
def field(p: int, k: int = 1) -> GF:
    return GF(p, k)


def prime_power(q: int) -> Tuple[int, int]:
    """(p, e) with q = p^e, or ValueError."""
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    f = factorint(q)
    if len(f) != 1:
        raise ValueError(f"{q} is not a prime power")
    (p, e), = f.items()
    return p, e


class FieldTower:
    """Compatible embeddings of all F_{p^d}, d | top, into F_{p^top}.

    Each subfield model is sent to the unique subfield of the top field of its
    size, so that embed(b, c) o embed(a, b) == embed(a, c)."""

    def __init__(self, p: int, top: int):
        self.p, self.top = p, top
        self.top_field = field(p, top)
        self._iota: Dict[int, np.ndarray] = {}
        self._back: Dict[int, Dict[int, int]] = {}

    def sub(self, d: int) -> GF:
        if self.top % d:
            raise ValueError(f"{d} does not divide {self.top}")
        return field(self.p, d)

    def iota(self, d: int) -> np.ndarray:
        if d not in self._iota:
            F = self.sub(d)
            T = self.top_field
            if d == self.top:
                img = np.arange(T.q, dtype=np.int64)
            else:
                c = (T.q - 1) // (F.q - 1)
                cands = sorted(T.power_of_gen(c * j) for j in range(F.q - 1))
                f = F.poly
                root = None
                for r in cands:
                    val = 0
                    for coef in reversed(f):
                        val = T.add(T.mul(val, r), coef)
                    if val == 0:
                        root = r
                        break
                if root is None:
                    raise RuntimeError("defining polynomial has no root")
                img = np.zeros(F.q, dtype=np.int64)
                for a in range(F.q):
                    v = F.to_vec(a)
                    val = 0
                    for coef in reversed(v):
                        val = T.add(T.mul(val, root), coef)
                    img[a] = val
            self._iota[d] = img
            self._back[d] = {int(v): i for i, v in enumerate(img)}
        return self._iota[d]

    def pull(self, d: int, t: int) -> int:
        """Preimage in F_{p^d} of a top-field element, or KeyError."""
        self.iota(d)
        return self._back[d][int(t)]

    def embed(self, a: int, b: int) -> np.ndarray:
        ia, ib = self.iota(a), self.iota(b)
        back = self._back[b]
        return np.array([back[int(v)] for v in ia], dtype=np.int64)


def frobenius(F: GF, x: int, e: int) -> int:
    """x -> x^(p^e), the q-power map for q = p^e."""
    return F.pow(x, F.p ** e)


def unitary_conj(F: GF, x: int, e: int) -> int:
    """The involution x -> x^q of F_{q^2}, with q = p^e and F of degree 2e."""
    if F.k != 2 * e:
        raise ValueError("element is not in F_{q^2}")
    return F.pow(x, F.p ** e)


def mult_character(F: GF, k: int):
    """The character x -> zeta_{|F|-1}^(k dlog x) of F^x."""
    m = F.q - 1

    def xi(a: int) -> "Cyclotomic":
        if a == 0:
            raise ValueError("multiplicative character at zero")
        return Cyclotomic.root_of_unity(m, k * F.dlog(a))

    return xi


def add_character(F: GF, a: int):
    """The additive character x -> zeta_p^(Tr(a x))."""

    def psi(x: int) -> "Cyclotomic":
        return Cyclotomic.root_of_unity(F.p, F.trace_to_prime(F.mul(a, x)))

    return psi


# ---------------------------------------------------------------------------
# cyclotomic numbers

class _CycloData:
    def __init__(self, M: int):
        self.M = M
        poly = cyclotomic_poly(M, _sym_x).as_poly(_sym_x).all_coeffs()[::-1]
        self.phi = len(poly) - 1
        self.poly = [int(c) for c in poly]
        phi = self.phi
        size = max(2 * phi, M + 1)
        red = np.zeros((size, phi), dtype=object)
        for j in range(min(phi, size)):
            red[j, j] = 1
        for j in range(phi, size):
            prev = list(red[j - 1])
            top = prev[-1]
            cur = [0] + prev[:-1]
            if top:
                for i in range(phi):
                    cur[i] -= top * self.poly[i]
            red[j] = cur
        self.red = red
        self.red_int = red.astype(np.int64)
        self.rmax = int(np.abs(self.red_int[:M]).max())


@lru_cache(maxsize=None)
def _cdata(M: int) -> _CycloData:
    return _CycloData(M)


def _normalize(num: Sequence[int], den: int) -> Tuple[Tuple[int, ...], int]:
    if den < 0:
        num, den = [-a for a in num], -den
    g = den
    for a in num:
        g = gcd(g, a)
        if g == 1:
            break
    if g > 1:
        num = [a // g for a in num]
        den //= g
    return tuple(int(a) for a in num), int(den)


class Cyclotomic:
    """An element of Q(zeta_M) in the power basis modulo the M-th cyclotomic
    polynomial, with rational coordinates num/den in lowest terms."""

    __slots__ = ("M", "num", "den", "_h")

    def __init__(self, M: int, num: Sequence[int], den: int = 1):
        d = _cdata(M)
        if len(num) != d.phi:
            raise ValueError("coordinate vector has the wrong length")
        self.M = M
        self.num, self.den = _normalize(num, den)
        self._h = None

    # constructors
    @classmethod
    def from_rational(cls, M: int, r) -> "Cyclotomic":
        r = Fraction(r)
        d = _cdata(M)
        return cls(M, [r.numerator] + [0] * (d.phi - 1), r.denominator)

    @classmethod
    def zero(cls, M: int) -> "Cyclotomic":
        return cls.from_rational(M, 0)

    @classmethod
    def one(cls, M: int) -> "Cyclotomic":
        return cls.from_rational(M, 1)

    @classmethod
    def root_of_unity(cls, M: int, j: int) -> "Cyclotomic":
        d = _cdata(M)
        return cls(M, list(d.red[j % M]), 1)

    @classmethod
    def from_exponents(cls, M: int, mult: Dict[int, int] | Sequence[int], den: int = 1) -> "Cyclotomic":
        """sum_j mult[j] zeta_M^j."""
        d = _cdata(M)
        items = mult.items() if isinstance(mult, dict) else enumerate(mult)
        acc = np.zeros(d.phi, dtype=object)
        for j, c in items:
            if c:
                acc = acc + c * d.red[j % M]
        return cls(M, list(acc), den)

    # basic protocol
    def __repr__(self):
        return f"Cyclotomic({self.M}, {list(self.num)}, {self.den})"

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.to_rational() == other
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        if self.M == other.M:
            return self.num == other.num and self.den == other.den
        L = self.M * other.M // gcd(self.M, other.M)
        a, b = self.embed(L), other.embed(L)
        return a.num == b.num and a.den == b.den

    def __hash__(self):
        # the normalised trace does not depend on the ambient conductor
        if self._h is None:
            self._h = hash(self.mean_trace())
        return self._h

    def mean_trace(self) -> Fraction:
        """Tr(x)/[K:Q], the same for every cyclotomic field K containing x."""
        d = _cdata(self.M)
        s = sum(a * _ramanujan(self.M, i) for i, a in enumerate(self.num))
        return Fraction(s, d.phi * self.den)

    def _coerce(self, other) -> "Cyclotomic":
        if isinstance(other, Cyclotomic):
            if other.M == self.M:
                return other
            raise ValueError("conductor mismatch; embed first")
        return Cyclotomic.from_rational(self.M, other)

    def __add__(self, other):
        o = self._coerce(other)
        num = [a * o.den + b * self.den for a, b in zip(self.num, o.num)]
        return Cyclotomic(self.M, num, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.M, [-a for a in self.num], self.den)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            r = Fraction(other)
            return Cyclotomic(self.M, [a * r.numerator for a in self.num], self.den * r.denominator)
        o = self._coerce(other)
        d = _cdata(self.M)
        a = np.array(self.num, dtype=object)
        b = np.array(o.num, dtype=object)
        conv = np.zeros(2 * d.phi - 1, dtype=object)
        for i, ai in enumerate(a):
            if ai:
                conv[i: i + d.phi] += ai * b
        num = conv.dot(d.red[: 2 * d.phi - 1])
        return Cyclotomic(self.M, list(num), self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        return self * self._coerce(other).inverse()

    def inverse(self) -> "Cyclotomic":
        # product of the nontrivial Galois conjugates over the norm
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        prod = Cyclotomic.one(self.M)
        for k in range(2, self.M):
            if gcd(k, self.M) == 1:
                prod = prod * self.galois(k)
        norm = (prod * self).to_rational()
        return prod * (1 / norm)

    # structure
    def is_zero(self) -> bool:
        return not any(self.num)

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("not a rational number")
        return Fraction(self.num[0], self.den)

    def is_integral_rational(self) -> bool:
        return self.is_rational() and self.den == 1

    def galois(self, k: int) -> "Cyclotomic":
        if gcd(k, self.M) != 1:
            raise ValueError("exponent not coprime to the conductor")
        d = _cdata(self.M)
        acc = np.zeros(d.phi, dtype=object)
        for i, a in enumerate(self.num):
            if a:
                acc = acc + a * d.red[(i * k) % self.M]
        return Cyclotomic(self.M, list(acc), self.den)

    def conj(self) -> "Cyclotomic":
        return self.galois(-1 % self.M) if self.M > 2 else self

    def is_real(self) -> bool:
        return self == self.conj()

    def is_purely_imaginary(self) -> bool:
        return self.conj() == -self

    def embed(self, M2: int) -> "Cyclotomic":
        if M2 % self.M:
            raise ValueError(f"{self.M} does not divide {M2}")
        if M2 == self.M:
            return self
        d2 = _cdata(M2)
        step = M2 // self.M
        acc = np.zeros(d2.phi, dtype=object)
        for i, a in enumerate(self.num):
            if a:
                acc = acc + a * d2.red[(i * step) % M2]
        return Cyclotomic(M2, list(acc), self.den)

    def minimal(self) -> "Cyclotomic":
        """The same number written over the least conductor dividing M that
        contains it."""
        best = self
        for D in sorted(_divisors(self.M)):
            if D == self.M:
                break
            # test membership in Q(zeta_D) via invariance under Gal(M/D)
            if all(self.galois(k) == self for k in _kernel_gens(self.M, D)):
                return _descend(self, D)
        return best

    def value_mod(self, ell: int, omega: int) -> int:
        """Image under zeta_M -> omega in F_ell (den must be invertible)."""
        s = 0
        w = 1
        for a in self.num:
            s = (s + a * w) % ell
            w = w * omega % ell
        return s * pow(self.den, -1, ell) % ell

    def to_complex(self) -> complex:
        z = np.exp(2j * np.pi / self.M)
        return complex(sum(a * z ** i for i, a in enumerate(self.num)) / self.den)

    def to_json(self) -> dict:
        fr = [Fraction(a, self.den) for a in self.num]
        return {"conductor": self.M, "num": [f.numerator for f in fr],
                "den": [f.denominator for f in fr]}

    def __str__(self):
        if self.is_rational():
            return str(self.to_rational())
        terms = []
        for i, a in enumerate(self.num):
            if a:
                terms.append(f"{a}*z{self.M}^{i}" if i else f"{a}")
        s = " + ".join(terms)
        return f"({s})/{self.den}" if self.den != 1 else s


def _divisors(M: int) -> List[int]:
    return [d for d in range(1, M + 1) if M % d == 0]


def _kernel_gens(M: int, D: int) -> List[int]:
    return [k for k in range(1, M) if gcd(k, M) == 1 and k % D == 1 % D]


def _descend(c: Cyclotomic, D: int) -> Cyclotomic:
    """Rewrite c (known to lie in Q(zeta_D)) over conductor D by solving the
    linear system of the embedding."""
    dD = _cdata(D)
    basis = [Cyclotomic.root_of_unity(D, i).embed(c.M) for i in range(dD.phi)]
    cols = [[Fraction(x, b.den) for x in b.num] for b in basis]
    rhs = [Fraction(x, c.den) for x in c.num]
    fr = _solve_columns(cols, rhs)
    den = 1
    for f in fr:
        den = den * f.denominator // gcd(den, f.denominator)
    out = Cyclotomic(D, [int(f * den) for f in fr], den)
    if out.embed(c.M) != c:
        raise ArithmeticError("descent failed")
    return out


def _solve_columns(cols, rhs):
    """Solve sum_j s_j cols[j] = rhs exactly (consistent overdetermined)."""
    m, n = len(rhs), len(cols)
    A = [[cols[j][i] for j in range(n)] + [rhs[i]] for i in range(m)]
    row, pivots = 0, []
    for c in range(n):
        piv = next((r for r in range(row, m) if A[r][c] != 0), None)
        if piv is None:
            continue
        A[row], A[piv] = A[piv], A[row]
        inv = 1 / A[row][c]
        A[row] = [a * inv for a in A[row]]
        for r in range(m):
            if r != row and A[r][c] != 0:
                f = A[r][c]
                A[r] = [a - f * b for a, b in zip(A[r], A[row])]
        pivots.append(c)
        row += 1
    sol = [Fraction(0)] * n
    for r, c in enumerate(pivots):
        sol[c] = A[r][n]
    return sol


def _mobius(n: int) -> int:
    f = factorint(n)
    if any(e > 1 for e in f.values()):
        return 0
    return -1 if len(f) % 2 else 1


@lru_cache(maxsize=None)
def _ramanujan(M: int, i: int) -> int:
    """Sum of zeta_M^(i k) over k coprime to M."""
    g = gcd(i, M)
    m = M // g
    return _mobius(m) * int(totient(M)) // int(totient(m))


def common_conductor(values) -> int:
    M = 1
    for v in values:
        M = M * v.M // gcd(M, v.M)
    return M


def cyclo_sum(values, M: int) -> Cyclotomic:
    """Sum of Cyclotomic values of a common conductor, vectorized."""
    d = _cdata(M)
    acc = np.zeros(d.phi, dtype=object)
    den = 1
    parts = []
    for v in values:
        parts.append(v)
        den = den * v.den // gcd(den, v.den)
    for v in parts:
        acc = acc + np.array(v.num, dtype=object) * (den // v.den)
    return Cyclotomic(M, list(acc), den)


# ---------------------------------------------------------------------------
# exact bulk products through residues

def primes_1_mod(M: int, count: int, lo: int = 1 << 24) -> List[int]:
    out = []
    k = lo // M + 1
    while len(out) < count:
        c = k * M + 1
        if isprime(c):
            out.append(c)
        k += 1
    return out


class ResidueRing:
    """Z[zeta_M] localised at a few split primes: each number becomes its
    images under all embeddings zeta_M -> omega^t mod ell, gcd(t, M) = 1.

    Products and sums are coordinatewise; a result whose power-basis
    coordinates are bounded by B is recovered exactly when prod(ell) > 2B."""

    def __init__(self, M: int, nprimes: int = 4):
        self.M = M
        self.data = _cdata(M)
        self.primes = primes_1_mod(M, nprimes)
        self.ts = [t for t in range(M) if gcd(t, M) == 1] if M > 1 else [0]
        phi = self.data.phi
        self.W = []
        self.Winv = []
        for ell in self.primes:
            g = primitive_root(ell)
            om = pow(g, (ell - 1) // M, ell)
            W = np.array([[pow(om, t * i, ell) for t in self.ts] for i in range(phi)], dtype=np.int64)
            self.W.append(W)
            self.Winv.append(_inv_mod_matrix(W, ell))
        self.conj_perm = np.array([self.ts.index((-t) % M) for t in self.ts]) if M > 1 else np.array([0])

    def encode(self, values: Sequence[Cyclotomic]) -> np.ndarray:
        """Array of shape (len(values), nprimes, phi)."""
        phi = self.data.phi
        out = np.zeros((len(values), len(self.primes), phi), dtype=np.int64)
        nums = [v.embed(self.M) if v.M != self.M else v for v in values]
        for pi, ell in enumerate(self.primes):
            A = np.array([[a % ell for a in v.num] for v in nums], dtype=np.int64).reshape(len(nums), phi)
            dinv = np.array([pow(v.den, -1, ell) for v in nums], dtype=np.int64)
            E = _matmul_mod(A, self.W[pi], ell)
            out[:, pi, :] = E * dinv[:, None] % ell
        return out

    def decode(self, res: np.ndarray, den: int = 1) -> List[Cyclotomic]:
        """Exact numbers from residues (shape (k, nprimes, phi)) assuming
        coordinates of den*value are below prod(primes)/2."""
        k = res.shape[0]
        phi = self.data.phi
        coords = []
        for pi, ell in enumerate(self.primes):
            coords.append(_matmul_mod(res[:, pi, :] * (den % ell) % ell, self.Winv[pi], ell))
        out = []
        modulus = 1
        for ell in self.primes:
            modulus *= ell
        for r in range(k):
            vec = []
            for i in range(phi):
                val, m = 0, 1
                for pi, ell in enumerate(self.primes):
                    # incremental CRT
                    a = int(coords[pi][r, i])
                    t = ((a - val) * pow(m, -1, ell)) % ell
                    val += m * t
                    m *= ell
                if val > modulus // 2:
                    val -= modulus
                vec.append(val)
            out.append(Cyclotomic(self.M, vec, den))
        return out

    @property
    def modulus(self) -> int:
        m = 1
        for ell in self.primes:
            m *= ell
        return m


def _matmul_mod(A: np.ndarray, B: np.ndarray, ell: int) -> np.ndarray:
    # split to stay below 2^63
    lo = B & 0xFFF
    hi = B >> 12
    r1 = (A @ lo) % ell
    r2 = (A @ hi) % ell
    return (r1 + (r2 * 4096) % ell) % ell


def _inv_mod_matrix(W: np.ndarray, ell: int) -> np.ndarray:
    n = W.shape[0]
    A = [[int(W[i, j]) for j in range(n)] + [1 if i == j else 0 for j in range(n)] for i in range(n)]
    for c in range(n):
        piv = next(r for r in range(c, n) if A[r][c] % ell)
        A[c], A[piv] = A[piv], A[c]
        inv = pow(A[c][c], -1, ell)
        A[c] = [a * inv % ell for a in A[c]]
        for r in range(n):
            if r != c and A[r][c]:
                f = A[r][c]
                A[r] = [(a - f * b) % ell for a, b in zip(A[r], A[c])]
    return np.array([row[n:] for row in A], dtype=np.int64)


def coord_l1(v: Cyclotomic) -> int:
    return sum(abs(a) for a in v.num)


def reduction_bound(M: int) -> int:
    """Max absolute power-basis coordinate of zeta_M^j over all j."""
    return _cdata(M).rmax


def euler_phi(M: int) -> int:
    return int(totient(M))
