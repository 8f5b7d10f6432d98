import pytest
from hypothesis import given, strategies as st

from charlie.matgrp import conjugacy_classes, group
from charlie.polyorb import orbit_system
from charlie.xpart import (XPartition, count_self_conjugate_height_one, dominates, enumerate_xpartitions,
                           make_partition, partitions, pconj, pn, r_bijection)


def _count_partitions(n):
    # Euler's recurrence via generating-function convolution
    p = [1] + [0] * n
    for k in range(1, n + 1):
        for m in range(k, n + 1):
            p[m] += p[m - k]
    return p[n]


@pytest.mark.parametrize("n", range(0, 12))
def test_partition_counts(n):
    ps = partitions(n)
    assert len(ps) == _count_partitions(n)
    assert len(set(ps)) == len(ps)
    assert all(sum(p) == n and list(p) == sorted(p, reverse=True) for p in ps)


@given(st.lists(st.integers(1, 6), max_size=6))
def test_conjugate_partition_is_involution(parts):
    p = make_partition(parts)
    assert pconj(pconj(p)) == p
    assert sum(pconj(p)) == sum(p)


def test_n_statistic():
    assert pn((2, 1)) == 1
    assert pn((1, 1, 1)) == 3
    assert pn((3,)) == 0


def test_dominance():
    assert dominates((3,), (2, 1))
    assert dominates((2, 1), (1, 1, 1))
    assert not dominates((2, 2), (3, 1))


def test_class_label_counts_against_brute_force():
    assert len(enumerate_xpartitions("phi", 1, 2)) == 1
    _, reps = conjugacy_classes(group("GL", 2, 2))
    assert len(enumerate_xpartitions("phi", 2, 2)) == len(reps) == 3


@pytest.mark.parametrize("kind,n,q", [("GL", 2, 3), ("GL", 3, 2), ("U", 2, 2), ("U", 2, 3), ("U", 3, 2)])
def test_class_label_counts_match_groups(kind, n, q):
    lk = "phi" if kind == "GL" else "phitilde"
    _, reps = conjugacy_classes(group(kind, n, q))
    assert len(enumerate_xpartitions(lk, n, q)) == len(reps)


@pytest.mark.parametrize("a,b", [("phi", "theta"), ("phitilde", "thetatilde")])
def test_class_and_character_label_counts_agree(a, b):
    assert len(enumerate_xpartitions(a, 3, 2)) == len(enumerate_xpartitions(b, 3, 2))


def test_size_and_height():
    sysm = orbit_system("theta", 3, 2)
    one = sysm.find(0)
    lam = XPartition.build("theta", 3, 2, {one: (2, 1)})
    assert lam.size == 3 and lam.height == 2 and lam.nstat == 1
    assert lam.conjugate() == lam
    assert lam.conjugate().nstat == lam.nstat


def test_double_conjugation():
    for lam in enumerate_xpartitions("theta", 3, 2):
        assert lam.conjugate().conjugate() == lam
        assert lam.conjugate().size == lam.size


def test_r_bijection_trivial_label():
    sysm = orbit_system("theta", 3, 2)
    triv = XPartition.build("theta", 3, 2, {sysm.find(0): (1, 1, 1)})
    img = r_bijection(triv)
    assert img == XPartition.build("thetatilde", 3, 2, {orbit_system("thetatilde", 3, 2).find(0): (1, 1, 1)})


def test_r_bijection_count_at_3_3():
    real = [l for l in enumerate_xpartitions("theta", 3, 3) if l.is_self_conjugate() and l.height == 1]
    assert len(real) == 6
    imgs = [r_bijection(l) for l in real]
    assert all(i.is_self_conjugate() and i.height == 1 for i in imgs)
    assert len(set(imgs)) == 6
    assert count_self_conjugate_height_one("thetatilde", 3, 3) == 6


@pytest.mark.parametrize("n,q", [(2, 3), (3, 2), (2, 2), (2, 5)])
def test_r_bijection_is_bijective(n, q):
    src = [l for l in enumerate_xpartitions("theta", n, q) if l.is_self_conjugate()]
    dst = {l for l in enumerate_xpartitions("thetatilde", n, q) if l.is_self_conjugate()}
    imgs = [r_bijection(l) for l in src]
    assert len(set(imgs)) == len(imgs)
    assert set(imgs) == dst
    assert all(a.height == b.height and a.size == b.size for a, b in zip(src, imgs))


def test_r_bijection_rejects_bad_input():
    with pytest.raises(ValueError):
        r_bijection(enumerate_xpartitions("thetatilde", 2, 2)[0])
    nonreal = [l for l in enumerate_xpartitions("theta", 2, 3) if not l.is_self_conjugate()]
    with pytest.raises(ValueError):
        r_bijection(nonreal[0])
