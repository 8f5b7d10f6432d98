"""Partitions and partition-valued functions on orbit sets."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterator, List, Sequence, Tuple

from .polyorb import OrbitLabel, OrbitSystem, orbit_system

Partition = Tuple[int, ...]


def make_partition(parts: Sequence[int]) -> Partition:
    p = tuple(sorted((int(x) for x in parts if x), reverse=True))
    if any(x < 0 for x in p):
        raise ValueError("negative part")
    return p


def psize(p: Partition) -> int:
    return sum(p)


def plength(p: Partition) -> int:
    return len(p)


def pn(p: Partition) -> int:
    return sum(i * x for i, x in enumerate(p))


def pconj(p: Partition) -> Partition:
    if not p:
        return ()
    return tuple(sum(1 for x in p if x > i) for i in range(p[0]))


def multiplicities(p: Partition) -> Dict[int, int]:
    m: Dict[int, int] = {}
    for x in p:
        m[x] = m.get(x, 0) + 1
    return m


@lru_cache(maxsize=None)
def partitions(n: int, maxpart: int | None = None) -> Tuple[Partition, ...]:
    """Partitions of n in reverse lexicographic order."""
    if maxpart is None:
        maxpart = n
    if n == 0:
        return ((),)
    out = []
    for first in range(min(n, maxpart), 0, -1):
        for rest in partitions(n - first, first):
            out.append((first,) + rest)
    return tuple(out)


def dominates(a: Partition, b: Partition) -> bool:
    sa = sb = 0
    for i in range(max(len(a), len(b))):
        sa += a[i] if i < len(a) else 0
        sb += b[i] if i < len(b) else 0
        if sa < sb:
            return False
    return True


@dataclass(frozen=True)
class XPartition:
    """A finitely supported map from orbits of one kind to partitions.

    ``n`` and ``q`` fix the ambient orbit system the labels live in."""

    kind: str
    n: int
    q: int
    parts: Tuple[Tuple[OrbitLabel, Partition], ...]

    @classmethod
    def build(cls, kind: str, n: int, q: int, mapping) -> "XPartition":
        items = mapping.items() if isinstance(mapping, dict) else mapping
        clean = sorted(((o, make_partition(p)) for o, p in items if sum(p)),
                       key=lambda t: t[0].sort_key())
        return cls(kind, n, q, tuple(clean))

    @property
    def system(self) -> OrbitSystem:
        return orbit_system(self.kind, self.n, self.q)

    def __call__(self, o: OrbitLabel) -> Partition:
        for x, p in self.parts:
            if x == o:
                return p
        return ()

    def as_dict(self) -> Dict[OrbitLabel, Partition]:
        return dict(self.parts)

    @property
    def size(self) -> int:
        return sum(o.size * psize(p) for o, p in self.parts)

    @property
    def height(self) -> int:
        return max((len(p) for _, p in self.parts), default=0)

    @property
    def nstat(self) -> int:
        return sum(o.size * pn(p) for o, p in self.parts)

    def conjugate(self) -> "XPartition":
        sys = self.system
        return XPartition.build(self.kind, self.n, self.q,
                                [(sys.conj(o), p) for o, p in self.parts])

    def is_self_conjugate(self) -> bool:
        return self.conjugate() == self

    def sort_key(self):
        return tuple((o.sort_key(), p) for o, p in self.parts)

    def to_json(self) -> dict:
        return {"kind": self.kind,
                "parts": [{"orbit": o.to_json(), "partition": list(p)} for o, p in self.parts]}

    def __str__(self):
        inner = ", ".join(f"{o}: {list(p)}" for o, p in self.parts)
        return "{" + inner + "}"


def _xparts(orbits: List[OrbitLabel], i: int, n: int) -> Iterator[List[Tuple[OrbitLabel, Partition]]]:
    if n == 0:
        yield []
        return
    if i == len(orbits):
        return
    o = orbits[i]
    for m in range(n // o.size, -1, -1):
        for p in partitions(m):
            for rest in _xparts(orbits, i + 1, n - m * o.size):
                yield ([(o, p)] if m else []) + rest


def enumerate_xpartitions(kind: str, n: int, q: int, ambient_n: int | None = None) -> List[XPartition]:
    """Every X-partition of total size n, in canonical order."""
    amb = ambient_n or n
    if n > amb:
        raise ValueError("size exceeds the ambient bound")
    orbits = [o for o in orbit_system(kind, amb, q).orbits if o.size <= n]
    out = [XPartition.build(kind, amb, q, parts) for parts in _xparts(orbits, 0, n)]
    return sorted(out, key=XPartition.sort_key)


def r_bijection(lam: XPartition) -> XPartition:
    """Transport a self-conjugate label on Frobenius character orbits to the
    twisted orbits by giving the twisted orbit of each exponent the value of
    its untwisted orbit."""
    if lam.kind != "theta":
        raise ValueError("input must be a theta label")
    if not lam.is_self_conjugate():
        raise ValueError("input label is not self-conjugate")
    target = orbit_system("thetatilde", lam.n, lam.q)
    assigned: Dict[OrbitLabel, Partition] = {}
    for o, p in lam.parts:
        for k in o.coset:
            t = target.find(k)
            if assigned.setdefault(t, p) != p:
                raise AssertionError(f"conflicting values on twisted orbit {t}")
    nu = XPartition.build("thetatilde", lam.n, lam.q, assigned)
    if nu.size != lam.size:
        raise AssertionError("size not preserved")
    return nu


def count_self_conjugate_height_one(kind: str, n: int, q: int) -> int:
    return sum(1 for lam in enumerate_xpartitions(kind, n, q)
               if lam.height == 1 and lam.is_self_conjugate())
