"""Explicit matrix groups GL(n, q) and U(n, q^2), their extensions by the
transpose-inverse map, conjugacy and coset classes, class invariants, and
the reality constructions on them."""
from __future__ import annotations

import os
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .algebra import FieldTower, GF, field, prime_power
from .polyorb import is_irreducible, monic_polys, orbit_system, pdivmod, pmonic, Poly
from .xpart import XPartition, make_partition

DEFAULT_MAX_ORDER = 1 << 17  # connected group; the extension may be twice this

# largest q enumerated by default, per (kind, n)
DEFAULT_Q_BOUND = {("GL", 1): 32, ("GL", 2): 5, ("GL", 3): 3,
                   ("U", 1): 16, ("U", 2): 3, ("U", 3): 3, ("U", 4): 2}


class ResourceBoundExceeded(RuntimeError):
    def __init__(self, message: str, kind: str = "", n: int = 0, q: int = 0,
                 order: int = 0, limit: int = 0):
        super().__init__(message)
        self.kind, self.n, self.q, self.order, self.limit = kind, n, q, order, limit

    def to_json(self) -> dict:
        return {"error": "resource_bound", "message": str(self), "group": self.kind,
                "n": self.n, "q": self.q, "order": self.order, "limit": self.limit}


_unsafe = [False]


def set_unsafe(flag: bool):
    """Process-wide switch for --unsafe: lift the q box and honor
    CHARLIE_MAX_GROUP_ORDER."""
    _unsafe[0] = bool(flag)


def unsafe_mode() -> bool:
    return _unsafe[0]


def max_group_order() -> int:
    v = os.environ.get("CHARLIE_MAX_GROUP_ORDER")
    return int(v) if v else DEFAULT_MAX_ORDER


def formula_order(kind: str, n: int, q: int) -> int:
    out = q ** (n * (n - 1) // 2)
    for i in range(1, n + 1):
        out *= q ** i - (1 if kind == "GL" else (-1) ** i)
    return out


def check_bounds(kind: str, n: int, q: int, extended: bool = False, unsafe: bool = False):
    """Raise ResourceBoundExceeded when (kind, n, q) lies outside the default
    enumeration box, or the group order exceeds the configured maximum."""
    unsafe = unsafe or unsafe_mode()
    base = formula_order(kind, n, q)
    order = base * (2 if extended else 1)
    limit = max_group_order() if unsafe else DEFAULT_MAX_ORDER
    if base > limit:
        raise ResourceBoundExceeded(f"|{kind}({n},{q})| = {base} exceeds the bound {limit}",
                                    kind, n, q, order, limit)
    if not unsafe:
        qmax = DEFAULT_Q_BOUND.get((kind, n))
        if qmax is None or q > qmax:
            raise ResourceBoundExceeded(
                f"{kind}({n},{q}) lies outside the default enumeration range "
                f"(order {order}); pass --unsafe to override", kind, n, q, order, limit)
    return order


# ---------------------------------------------------------------------------
# batched matrix arithmetic over a table field


class MatrixField:
    """Vectorized arithmetic on integer-coded field elements."""

    def __init__(self, F: GF, q_frob: int):
        if F.mul_t is None:
            raise ValueError("field too large for table arithmetic")
        self.F = F
        self.Q = F.q
        self.add_t = np.asarray(F.add_t, dtype=np.int32)
        self.mul_t = np.asarray(F.mul_t, dtype=np.int32)
        self.neg_t = np.asarray(F.neg_t, dtype=np.int32)
        self.inv_t = np.array([0] + [F.inv(a) for a in range(1, F.q)], dtype=np.int32)
        self.frob_t = np.array([F.pow(a, q_frob) for a in range(F.q)], dtype=np.int32)

    def matmul(self, A: np.ndarray, B: np.ndarray) -> np.ndarray:
        n = A.shape[-1]
        acc = self.mul_t[A[..., :, 0, None], B[..., None, 0, :]]
        for k in range(1, n):
            acc = self.add_t[acc, self.mul_t[A[..., :, k, None], B[..., None, k, :]]]
        return acc

    def det(self, A: np.ndarray) -> np.ndarray:
        n = A.shape[-1]
        if n == 1:
            return A[..., 0, 0]
        out = np.zeros(A.shape[:-2], dtype=np.int32)
        for j in range(n):
            minor = np.delete(np.delete(A, 0, axis=-2), j, axis=-1)
            term = self.mul_t[A[..., 0, j], self.det(minor)]
            if j % 2:
                term = self.neg_t[term]
            out = self.add_t[out, term]
        return out

    def adjugate(self, A: np.ndarray) -> np.ndarray:
        n = A.shape[-1]
        if n == 1:
            return np.ones_like(A)
        adj = np.zeros_like(A)
        for i in range(n):
            for j in range(n):
                minor = np.delete(np.delete(A, i, axis=-2), j, axis=-1)
                c = self.det(minor)
                if (i + j) % 2:
                    c = self.neg_t[c]
                adj[..., j, i] = c
        return adj

    def inverse(self, A: np.ndarray) -> np.ndarray:
        d = self.det(A)
        return self.mul_t[self.adjugate(A), self.inv_t[d][..., None, None]]

    def transpose(self, A: np.ndarray) -> np.ndarray:
        return np.swapaxes(A, -1, -2)

    def frob(self, A: np.ndarray) -> np.ndarray:
        return self.frob_t[A]


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int32)


def antidiagonal(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int32)[::-1].copy()


# ---------------------------------------------------------------------------
# groups


class FiniteGroup:
    """Interface used by the oracle: elements are indices 0..size-1."""

    size: int
    identity_index: int

    def mul(self, a, b):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def power(self, a: int, e: int) -> int:
        r = self.identity_index
        base = a
        while e:
            if e & 1:
                r = int(self.mul(np.array([r]), np.array([base]))[0])
            base = int(self.mul(np.array([base]), np.array([base]))[0])
            e >>= 1
        return r

    def order_of(self, a: int) -> int:
        k, x = 1, a
        while x != self.identity_index:
            x = int(self.mul(np.array([x]), np.array([a]))[0])
            k += 1
        return k


class MatGroup(FiniteGroup):
    """GL(n, q), or the unitary group {g : g J F(g)' = J} inside GL(n, q^2)."""

    def __init__(self, kind: str, n: int, q: int, form: str = "identity", unsafe: bool = False):
        kind = kind.upper()
        if kind not in ("GL", "U"):
            raise ValueError(kind)
        self.kind, self.n, self.q, self.form = kind, n, q, form
        self.order_expected = check_bounds(kind, n, q, unsafe=unsafe)
        p, e = prime_power(q)
        self.p, self.e = p, e
        self.F = field(p, e if kind == "GL" else 2 * e)
        self.ops = MatrixField(self.F, q)
        self.J = antidiagonal(n) if form == "antidiagonal" else identity(n)
        self.Q = self.F.q
        mats = self._enumerate()
        keys = self.encode(mats)
        order = np.argsort(keys)
        self.mats = mats[order]
        self.keys = keys[order]
        self.size = len(self.keys)
        if self.size != self.order_expected:
            raise AssertionError(f"enumerated {self.size} elements, expected {self.order_expected}")
        self.identity_index = int(self.index(identity(n)[None])[0])
        self._inv = None
        self._tr = None
        self._tau = None

    def __repr__(self):
        return f"MatGroup({self.kind}, {self.n}, {self.q}, form={self.form!r})"

    # coding
    def encode(self, mats: np.ndarray) -> np.ndarray:
        flat = mats.reshape(mats.shape[:-2] + (-1,)).astype(np.int64)
        w = self.Q ** np.arange(flat.shape[-1], dtype=np.int64)
        return flat @ w

    def index(self, mats: np.ndarray, strict: bool = True) -> np.ndarray:
        k = self.encode(mats)
        pos = np.searchsorted(self.keys, k)
        pos = np.minimum(pos, self.size - 1)
        hit = self.keys[pos] == k
        if strict and not hit.all():
            raise KeyError("matrix outside the group")
        return np.where(hit, pos, -1)

    def contains(self, mat: np.ndarray) -> bool:
        return bool(self.index(np.asarray(mat)[None], strict=False)[0] >= 0)

    # enumeration
    def _vectors(self) -> np.ndarray:
        n, Q = self.n, self.Q
        idx = np.arange(Q ** n)
        return np.stack([(idx // Q ** i) % Q for i in range(n)], axis=1).astype(np.int32)

    def _enumerate(self) -> np.ndarray:
        vecs = self._vectors()
        if self.kind == "GL":
            return self._enumerate_gl(vecs)
        return self._enumerate_u(vecs)

    def _enumerate_gl(self, vecs):
        ops, n, Q = self.ops, self.n, self.Q
        codes_w = Q ** np.arange(n, dtype=np.int64)
        rows: List[np.ndarray] = [np.zeros((1, 0), dtype=np.int64)]
        partial = np.zeros((1, 0), dtype=np.int64)
        # extend row by row, keeping rows independent via the span of earlier rows
        for i in range(n):
            nxt = []
            for pr in partial:
                span = {0}
                for r in pr:
                    v = vecs[r]
                    new = set()
                    for c in range(1, Q):
                        cv = ops.mul_t[c, v]
                        for s in span:
                            sv = vecs[s]
                            new.add(int(ops.add_t[sv, cv] @ codes_w))
                    span |= new
                ok = np.array([j for j in range(1, Q ** n) if j not in span], dtype=np.int64)
                nxt.append(np.concatenate([np.repeat(pr[None], len(ok), 0), ok[:, None]], 1))
            partial = np.concatenate(nxt, 0)
        return vecs[partial]

    def _enumerate_u(self, vecs):
        ops, n = self.ops, self.n
        J = self.J
        # gram[u, v] = u J F(v)'
        uJ = ops.matmul(vecs[:, None, :], np.broadcast_to(J, (len(vecs), n, n)))[:, 0, :]
        fv = ops.frob(vecs)
        gram = ops.mul_t[uJ[:, None, :], fv[None, :, :]]
        acc = gram[..., 0]
        for k in range(1, n):
            acc = ops.add_t[acc, gram[..., k]]
        gram = acc
        partial = np.zeros((1, 0), dtype=np.int64)
        for i in range(n):
            chunks = []
            for pr in partial:
                ok = gram[np.arange(len(vecs)), np.arange(len(vecs))] == J[i, i]
                for j, r in enumerate(pr):
                    ok &= gram[:, r] == J[i, j]
                cand = np.nonzero(ok)[0]
                chunks.append(np.concatenate([np.repeat(pr[None], len(cand), 0), cand[:, None]], 1))
            partial = np.concatenate(chunks, 0) if chunks else np.zeros((0, i + 1), dtype=np.int64)
        return vecs[partial]

    # group operations on indices
    def mul(self, a, b):
        return self.index(self.ops.matmul(self.mats[a], self.mats[b]))

    @property
    def inv_perm(self) -> np.ndarray:
        if self._inv is None:
            self._inv = self.index(self.ops.inverse(self.mats))
        return self._inv

    @property
    def tr_perm(self) -> np.ndarray:
        if self._tr is None:
            self._tr = self.index(self.ops.transpose(self.mats))
        return self._tr

    @property
    def tau_perm(self) -> np.ndarray:
        if self._tau is None:
            self._tau = self.inv_perm[self.tr_perm]
        return self._tau

    def inv(self, a):
        return self.inv_perm[a]

    def mat(self, i: int) -> np.ndarray:
        return self.mats[i]

    def all(self) -> np.ndarray:
        return np.arange(self.size)


class ExtGroup(FiniteGroup):
    """G extended by tau: index i < |G| is (g_i, 0), index |G| + i is (g_i, 1),
    with (g, e)(h, d) = (g tau^e(h), e + d)."""

    def __init__(self, G: MatGroup):
        self.G = G
        self.N = G.size
        self.size = 2 * G.size
        self.identity_index = G.identity_index

    def __repr__(self):
        return f"ExtGroup({self.G!r})"

    def split(self, a):
        a = np.asarray(a)
        return a % self.N, a // self.N

    def mul(self, a, b):
        ga, ea = self.split(a)
        gb, eb = self.split(b)
        h = np.where(ea == 1, self.G.tau_perm[gb], gb)
        return self.G.mul(ga, h) + self.N * (ea ^ eb)

    def inv(self, a):
        g, e = self.split(a)
        return np.where(e == 1, self.G.tr_perm[g] + self.N, self.G.inv_perm[g])

    def coset(self, g) -> np.ndarray:
        return np.asarray(g) + self.N

    def tau(self) -> int:
        return self.N + self.G.identity_index


class SubGroup(FiniteGroup):
    """A subgroup given by a sorted list of parent indices."""

    def __init__(self, parent: FiniteGroup, members: Sequence[int]):
        self.parent = parent
        self.members = np.array(sorted(set(int(m) for m in members)), dtype=np.int64)
        self.size = len(self.members)
        self.identity_index = int(np.searchsorted(self.members, parent.identity_index))

    def _local(self, x):
        pos = np.searchsorted(self.members, x)
        pos = np.minimum(pos, self.size - 1)
        if not (self.members[pos] == x).all():
            raise AssertionError("subset is not closed under the operation")
        return pos

    def mul(self, a, b):
        return self._local(self.parent.mul(self.members[a], self.members[b]))

    def inv(self, a):
        return self._local(self.parent.inv(self.members[a]))


# ---------------------------------------------------------------------------
# conjugacy


def conjugacy_classes(H: FiniteGroup) -> Tuple[np.ndarray, List[int]]:
    """(class id per element, representative per class), classes ordered by
    least element index."""
    cls = -np.ones(H.size, dtype=np.int64)
    reps = []
    allx = np.arange(H.size)
    xinv = H.inv(allx)
    for a in range(H.size):
        if cls[a] >= 0:
            continue
        orbit = H.mul(H.mul(allx, np.full(H.size, a)), xinv)
        cls[orbit] = len(reps)
        reps.append(a)
    return cls, reps


@dataclass
class CosetClass:
    rep: int  # index of g in G; the element is (g, tau)
    members: np.ndarray
    size: int
    order: int
    centralizer_order: int  # in G

    def to_json(self, G: MatGroup) -> dict:
        return {"rep": G.mat(self.rep).tolist(), "size": self.size, "order": self.order,
                "centralizer_order": self.centralizer_order}


def coset_classes(G: MatGroup) -> List[CosetClass]:
    """Classes of G<tau> inside the coset G tau, as equivalence classes of
    the forms g under g -> x g x'."""
    ops = G.ops
    seen = -np.ones(G.size, dtype=np.int64)
    out = []
    X = G.mats
    Xt = ops.transpose(X)
    E = ExtGroup(G)
    for g in range(G.size):
        if seen[g] >= 0:
            continue
        orbit = np.unique(G.index(ops.matmul(ops.matmul(X, np.broadcast_to(G.mats[g], X.shape)), Xt)))
        seen[orbit] = len(out)
        out.append(CosetClass(g, orbit, len(orbit), E.order_of(int(E.coset(g))),
                              G.size // len(orbit)))
    return out


def coset_classes_via_extension(G: MatGroup) -> List[np.ndarray]:
    """Same partition of the coset computed by conjugation inside G<tau>."""
    E = ExtGroup(G)
    cls, reps = conjugacy_classes(E)
    coset_ids = cls[G.size:]
    return [np.nonzero(coset_ids == c)[0] for c in sorted(set(coset_ids.tolist()))]


def square_in_coset(G: MatGroup, g: int) -> int:
    """Index of (g tau)^2 = g (g')^{-1} in G."""
    return int(G.mul(np.array([g]), np.array([G.tau_perm[g]]))[0])


# ---------------------------------------------------------------------------
# class invariants


def _mat_poly_eval(ops: MatrixField, f: Poly, A: np.ndarray) -> np.ndarray:
    n = A.shape[0]
    R = np.zeros((n, n), dtype=np.int32)
    I = identity(n)
    for c in reversed(f):
        R = ops.matmul(R, A)
        R = ops.add_t[R, ops.mul_t[c, I]]
    return R


def rank(F: GF, A: np.ndarray) -> int:
    M = [list(map(int, row)) for row in A]
    rows, cols = len(M), len(M[0]) if M else 0
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if M[i][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = F.inv(M[r][c])
        M[r] = [F.mul(inv, x) for x in M[r]]
        for i in range(rows):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(M[i], M[r])]
        r += 1
    return r


@lru_cache(maxsize=None)
def irreducibles_upto(p: int, k: int, n: int) -> Tuple[Poly, ...]:
    F = field(p, k)
    out = []
    for d in range(1, n + 1):
        out.extend(f for f in monic_polys(F, d) if is_irreducible(F, f))
    return tuple(out)


def elementary_divisors(A: np.ndarray, ops: MatrixField) -> Tuple[Tuple[Poly, Tuple[int, ...]], ...]:
    """Sorted (irreducible f, partition) pairs: the Jordan type of A at each
    irreducible factor f of its characteristic polynomial."""
    F = ops.F
    n = A.shape[0]
    out = []
    remaining = n
    for f in irreducibles_upto(F.p, F.k, n):
        d = len(f) - 1
        if d > remaining:
            continue
        B = _mat_poly_eval(ops, f, A)
        kdim = n - rank(F, B)
        if not kdim:
            continue
        dims = [0, kdim]
        P = B
        while dims[-1] != dims[-2] and dims[-1] < n:
            P = ops.matmul(P, B)
            dims.append(n - rank(F, P))
        cols = [(dims[i] - dims[i - 1]) // d for i in range(1, len(dims)) if dims[i] > dims[i - 1]]
        part = make_partition(_conj(cols))
        out.append((f, part))
        remaining -= d * sum(part)
        if remaining == 0:
            break
    return tuple(sorted(out))


def _conj(cols):
    if not cols:
        return ()
    return tuple(sum(1 for c in cols if c > i) for i in range(max(cols)))


@lru_cache(maxsize=None)
def _twisted_factor_map(n: int, q: int):
    """Each irreducible factor over F_{q^2} of a twisted orbit polynomial
    mapped to its orbit."""
    p, e = prime_power(q)
    F2 = field(p, 2 * e)
    sysm = orbit_system("phitilde", n, q)
    out = {}
    for o in sysm.orbits:
        f = o.rep
        for g in irreducibles_upto(p, 2 * e, o.size):
            if len(g) - 1 > o.size:
                continue
            quo, rem = pdivmod(F2, f, g)
            if not rem:
                out[g] = o
    return out


def class_label(G: MatGroup, A: np.ndarray) -> XPartition:
    """The orbit-partition label of the conjugacy class of A in G."""
    eds = elementary_divisors(np.asarray(A), G.ops)
    if G.kind == "GL":
        sysm = orbit_system("phi", G.n, G.q)
        return XPartition.build("phi", G.n, G.q, [(sysm.by_rep(f), p) for f, p in eds])
    fmap = _twisted_factor_map(G.n, G.q)
    parts: Dict = {}
    for f, p in eds:
        o = fmap[f]
        if parts.setdefault(o, p) != p:
            raise AssertionError("factors of one twisted orbit carry different Jordan types")
    return XPartition.build("phitilde", G.n, G.q, parts)


def is_regular_unipotent(G: MatGroup, A: np.ndarray) -> bool:
    eds = elementary_divisors(np.asarray(A), G.ops)
    return len(eds) == 1 and eds[0][0] == (G.F.neg(1), 1) and eds[0][1] == (G.n,)


# ---------------------------------------------------------------------------
# the class correspondence between the two cosets


@lru_cache(maxsize=None)
def _embed_table(p: int, e: int) -> np.ndarray:
    return FieldTower(p, 2 * e).embed(e, 2 * e)


class MatchError(AssertionError):
    pass


@dataclass
class PhiMatch:
    pairs: List[Tuple[CosetClass, CosetClass]]
    invariants: List[tuple]
    tied_blocks: int  # invariant blocks holding several classes

    def __len__(self):
        return len(self.pairs)


def phi_match(GL: MatGroup, U: MatGroup, gl_classes=None, u_classes=None) -> PhiMatch:
    """Pair coset classes [x tau] <-> [y tau] whose invariants (x tau)^{-2}
    and (y tau)^2 have the same elementary divisors over F_{q^2}.

    The squared class does not always separate coset classes (symmetric and
    alternating forms both square to 1). Within a block of equal invariant
    the classes are paired by (element order, centralizer order); the block
    must carry the same multiset of these on both sides, and any pairing of
    classes with equal fingerprints is interchangeable for every property
    checked. MatchError signals a mismatch."""
    gl_classes = gl_classes or coset_classes(GL)
    u_classes = u_classes or coset_classes(U)
    emb = _embed_table(GL.p, GL.e)
    uops = U.ops

    def inv_gl(c):
        sq = GL.mat(square_in_coset(GL, c.rep))
        sq_inv = GL.ops.inverse(sq[None])[0]
        return elementary_divisors(emb[sq_inv].astype(np.int32), uops)

    def inv_u(c):
        return elementary_divisors(U.mat(square_in_coset(U, c.rep)), uops)

    a: Dict[tuple, list] = {}
    for c in gl_classes:
        a.setdefault(inv_gl(c), []).append(c)
    b: Dict[tuple, list] = {}
    for c in u_classes:
        b.setdefault(inv_u(c), []).append(c)
    if set(a) != set(b):
        raise MatchError("invariant sets of the two cosets differ: matching not perfect")
    fp = lambda c: (c.order, c.centralizer_order)
    pairs, invs, tied = [], [], 0
    for k in sorted(a):
        xs = sorted(a[k], key=lambda c: (fp(c), c.rep))
        ys = sorted(b[k], key=lambda c: (fp(c), c.rep))
        if [fp(c) for c in xs] != [fp(c) for c in ys]:
            raise MatchError(f"classes with invariant {k} cannot be paired")
        tied += len(xs) > 1
        for x, y in zip(xs, ys):
            pairs.append((x, y))
            invs.append(k)
    return PhiMatch(pairs, invs, tied)


# ---------------------------------------------------------------------------
# square roots in the coset, reality


def _nullspace(F: GF, rows: List[List[int]], ncols: int) -> List[List[int]]:
    M = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(M)) if M[i][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = F.inv(M[r][c])
        M[r] = [F.mul(inv, x) for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * ncols
        v[fc] = 1
        for i, pc in enumerate(pivots):
            v[pc] = F.neg(M[i][fc])
        basis.append(v)
    return basis


def find_coset_sqrt(G: MatGroup, u: np.ndarray, limit: int = 1 << 20) -> Optional[int]:
    """Least-index x in G with x (x')^{-1} = u, i.e. x = u x'; None if absent.

    Solves the linear system x - u x' = 0 and scans its solution space for
    group elements; falls back to scanning G when the space is large."""
    F, n = G.F, G.n
    u = np.asarray(u)
    rows = []
    for i in range(n):
        for j in range(n):
            row = [0] * (n * n)
            row[i * n + j] = 1
            for k in range(n):
                # (u x')_{ij} = sum_k u_ik x_jk
                row[j * n + k] = F.sub(row[j * n + k], int(u[i, k]))
            rows.append(row)
    basis = _nullspace(F, rows, n * n)
    dim = len(basis)
    if G.Q ** dim <= limit:
        B = np.array(basis, dtype=np.int32).reshape(dim, n, n) if dim else np.zeros((0, n, n), np.int32)
        idx = np.arange(G.Q ** dim)
        coeffs = np.stack([(idx // G.Q ** i) % G.Q for i in range(dim)], axis=1) if dim else np.zeros((1, 0), np.int64)
        sols = np.zeros((len(coeffs), n, n), dtype=np.int32)
        for t in range(dim):
            sols = G.ops.add_t[sols, G.ops.mul_t[coeffs[:, t, None, None], B[t][None]]]
        hits = G.index(sols, strict=False)
        hits = hits[hits >= 0]
        return int(hits.min()) if len(hits) else None
    return find_coset_sqrt_exhaustive(G, u)


def find_coset_sqrt_exhaustive(G: MatGroup, u: np.ndarray) -> Optional[int]:
    ops = G.ops
    ux = ops.matmul(np.broadcast_to(np.asarray(u, dtype=np.int32), G.mats.shape), ops.transpose(G.mats))
    ok = np.nonzero((ux == G.mats).all(axis=(1, 2)))[0]
    return int(ok[0]) if len(ok) else None


def involutions(H: FiniteGroup) -> np.ndarray:
    allx = np.arange(H.size)
    return np.nonzero(H.mul(allx, allx) == H.identity_index)[0]


def is_strongly_real(H: FiniteGroup, x: int) -> Tuple[bool, Optional[int]]:
    """Is x inverted by some s with s^2 = 1 (s = 1 allowed)? Returns the least
    such s as witness."""
    S = involutions(H)
    sxs = H.mul(H.mul(S, np.full(len(S), x)), S)
    hit = S[sxs == int(H.inv(np.array([x]))[0])]
    return (True, int(hit[0])) if len(hit) else (False, None)


def is_real(H: FiniteGroup, x: int) -> bool:
    allx = np.arange(H.size)
    conj = H.mul(H.mul(allx, np.full(H.size, x)), H.inv(allx))
    return bool((conj == int(H.inv(np.array([x]))[0])).any())


def transpose_conjugators(G: MatGroup, x: int) -> np.ndarray:
    """All w in G with w^{-1} x w = x'."""
    ops = G.ops
    X = np.broadcast_to(G.mats[x], G.mats.shape)
    xt = np.broadcast_to(ops.transpose(G.mats[x]), G.mats.shape)
    ok = (ops.matmul(X, G.mats) == ops.matmul(G.mats, xt)).all(axis=(1, 2))
    return np.nonzero(ok)[0]


def symmetric_conjugator(G: MatGroup, x: int) -> int:
    """Least-index symmetric s in G with s^{-1} x s = x'."""
    for w in transpose_conjugators(G, x):
        if (G.mats[w] == G.mats[w].T).all():
            return int(w)
    raise AssertionError("no symmetric element conjugates x to its transpose")


def is_cyclic(G: MatGroup, A: np.ndarray) -> bool:
    """Minimal polynomial equals characteristic polynomial."""
    eds = elementary_divisors(np.asarray(A), G.ops)
    return all(len(p) == 1 for _, p in eds)


def regular_unipotent(G: MatGroup) -> int:
    """Least-index regular unipotent element of G."""
    for i in range(G.size):
        if is_regular_unipotent(G, G.mat(i)):
            return i
    raise AssertionError("no regular unipotent element")


def regular_unipotents(G: MatGroup) -> np.ndarray:
    ops = G.ops
    I = identity(G.n)
    N = ops.add_t[G.mats, ops.neg_t[np.broadcast_to(I, G.mats.shape)]]
    P = N
    for _ in range(G.n - 1):
        P = ops.matmul(P, N)
    unip = (P == 0).all(axis=(1, 2))
    # regular iff (x - 1)^(n-1) != 0
    Pm = N
    for _ in range(G.n - 2):
        Pm = ops.matmul(Pm, N)
    nonzero = ~(Pm == 0).all(axis=(1, 2)) if G.n > 1 else np.ones(G.size, bool)
    return np.nonzero(unip & nonzero)[0]


# ---------------------------------------------------------------------------
# the w0-twisted coset elements


def explicit_v(n: int) -> np.ndarray:
    """v with ones on the diagonal and at (i, i+1) for i <= floor(n/2)."""
    v = identity(n)
    for i in range(n // 2):
        v[i, i + 1] = 1
    return v


def sigma_element(G: MatGroup) -> int:
    """Extended index of sigma = w0 tau."""
    E = ExtGroup(G)
    return int(E.coset(G.index(antidiagonal(G.n)[None])[0]))


def regular_unipotent_coset_elements(G: MatGroup):
    """The coset elements g tau whose square is regular unipotent.

    Returns (list of g indices, explicit element index or None). The explicit
    element is v sigma = (v w0) tau when v lies in G."""
    found = []
    for g in range(G.size):
        if is_regular_unipotent(G, G.mat(square_in_coset(G, g))):
            found.append(g)
    v = explicit_v(G.n)
    vw = G.ops.matmul(v, antidiagonal(G.n))
    idx = G.index(vw[None], strict=False)[0]
    return found, (int(idx) if idx >= 0 else None)


# ---------------------------------------------------------------------------
# unipotent and parabolic subgroups


def compositions_from_subset(n: int, J: Sequence[int]) -> List[int]:
    """Block sizes of the standard parabolic for the simple reflections J."""
    blocks, cur = [], 1
    for i in range(1, n):
        if i in J:
            cur += 1
        else:
            blocks.append(cur)
            cur = 1
    blocks.append(cur)
    return blocks


def _block_masks(n: int, blocks: Sequence[int]):
    starts = np.cumsum([0] + list(blocks))
    bid = np.zeros(n, dtype=int)
    for b in range(len(blocks)):
        bid[starts[b]:starts[b + 1]] = b
    below = bid[:, None] > bid[None, :]
    same = bid[:, None] == bid[None, :]
    return below, same


def parabolic(G: MatGroup, J: Sequence[int]) -> Tuple[np.ndarray, np.ndarray]:
    """(P_J, U_J) as sorted arrays of indices of G."""
    blocks = compositions_from_subset(G.n, J)
    below, same = _block_masks(G.n, blocks)
    M = G.mats
    inP = (M[:, below] == 0).all(axis=1)
    I = identity(G.n)
    offdiag_same = same & ~np.eye(G.n, dtype=bool)
    inU = inP & (M[:, same & np.eye(G.n, dtype=bool)] == 1).all(axis=1) & (M[:, offdiag_same] == 0).all(axis=1)
    return np.nonzero(inP)[0], np.nonzero(inU)[0]


def unipotent_radical(G: MatGroup) -> np.ndarray:
    """Upper unitriangular elements of G."""
    return parabolic(G, [])[1]


def diagram_flip(G: MatGroup):
    if G.kind == "GL":
        return lambda i: i
    return lambda i: G.n - i


def stable_subsets(G: MatGroup) -> List[Tuple[int, ...]]:
    rho = diagram_flip(G)
    I = list(range(1, G.n))
    out = []
    for mask in range(1 << len(I)):
        J = tuple(i for k, i in enumerate(I) if mask >> k & 1)
        if set(rho(j) for j in J) == set(J):
            out.append(J)
    return out


def orbit_count(J: Sequence[int], rho) -> int:
    seen, c = set(), 0
    for j in J:
        if j not in seen:
            c += 1
            seen |= {j, rho(j)}
    return c


@lru_cache(maxsize=None)
def group(kind: str, n: int, q: int, form: str = "identity", unsafe: bool = False) -> MatGroup:
    return MatGroup(kind, n, q, form, unsafe)
