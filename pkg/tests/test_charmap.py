from fractions import Fraction

import numpy as np
import pytest

from charlie.charmap import (build_table, centralizer_order, classify, closed_form_real_regular,
                             count_real_regular, ennola_sign, group_order, identity_label,
                             row_inner_product, structural_checks, trivial_char_label)
from charlie.matgrp import class_label, conjugacy_classes, group, regular_unipotent


def test_group_orders():
    assert group_order("GL", 2, 2) == 6
    assert group_order("U", 2, 2) == 18
    assert group_order("GL", 3, 3) == 11232
    assert group_order("U", 3, 2) == 648


def test_gl1_is_cyclic_dual():
    t = build_table("GL", 1, 5)
    assert len(t.chars) == 4
    assert all(d == 1 for d in t.degrees)
    # rows form the character group of a cyclic group of order 4
    rows = {tuple(v for v in r) for r in t.values}
    assert len(rows) == 4


def test_gl22_degrees():
    assert sorted(build_table("GL", 2, 2).degrees) == [1, 1, 2]


def test_u22_degree_square_sum():
    t = build_table("U", 2, 2)
    assert sum(d * d for d in t.degrees) == 18 == group("U", 2, 2).size


@pytest.mark.parametrize("kind,n,q", [("GL", 2, 2), ("GL", 2, 3), ("GL", 3, 2), ("U", 2, 2), ("U", 2, 3), ("U", 3, 2)])
def test_centralizers_against_brute_force(kind, n, q):
    G = group(kind, n, q)
    cls, reps = conjugacy_classes(G)
    got = {}
    for i, r in enumerate(reps):
        got[class_label(G, G.mat(r))] = G.size // int((cls == i).sum())
    t = build_table(kind, n, q)
    assert set(got) == set(t.classes)
    for lab, c in zip(t.classes, t.centralizers):
        assert got[lab] == c


@pytest.mark.parametrize("kind", ["GL", "U"])
def test_regular_unipotent_centralizer(kind):
    G = group(kind, 3, 2)
    u = regular_unipotent(G)
    allx = np.arange(G.size)
    brute = int((G.mul(allx, np.full(G.size, u)) == G.mul(np.full(G.size, u), allx)).sum())
    assert centralizer_order(class_label(G, G.mat(u))) == brute


def test_identity_centralizer():
    assert centralizer_order(identity_label("GL", 3, 2)) == 168


def test_trivial_character_flags():
    for n in (1, 2, 3):
        t = build_table("GL", n, 2)
        f = classify(t)[t.chars.index(trivial_char_label("GL", n, 2))]
        assert f["real"] and f["semisimple"] and f["degree"] == 1
        assert f["regular"] == (n == 1)


def test_steinberg_gl23_flags():
    t = build_table("GL", 2, 3)
    st = [f for f in classify(t) if f["degree"] == 3]
    assert st and all(f["regular"] and not f["semisimple"] for f in st)


@pytest.mark.parametrize("kind,n,q,expected", [("GL", 3, 3, 6), ("U", 2, 3, 4), ("U", 3, 2, 2),
                                               ("GL", 2, 3, 4), ("U", 3, 3, 6), ("GL", 3, 2, 2)])
def test_real_regular_counts(kind, n, q, expected):
    assert closed_form_real_regular(n, q) == expected
    for method in ["closed", "polys", "labels", "table"] + (["bijection"] if kind == "U" else []):
        assert count_real_regular(kind, n, q, method) == expected


def test_count_rejects_unknown_method():
    with pytest.raises(ValueError):
        count_real_regular("GL", 2, 2, "guess")
    with pytest.raises(ValueError):
        count_real_regular("GL", 2, 2, "bijection")


@pytest.mark.parametrize("kind,n,q", [("GL", 2, 2), ("GL", 2, 3), ("GL", 2, 4), ("GL", 3, 2), ("GL", 3, 3),
                                      ("U", 2, 2), ("U", 2, 3), ("U", 3, 2)])
def test_structural_invariants(kind, n, q):
    checks = structural_checks(build_table(kind, n, q))
    assert all(c["ok"] for c in checks), [c for c in checks if not c["ok"]]


def test_column_orthogonality_gl32():
    t = build_table("GL", 3, 2)
    r = len(t.classes)
    for k in range(r):
        for l in range(r):
            s = sum((t.values[i][k] * t.values[i][l].conj() for i in range(r)), t.values[0][0] * 0)
            assert s.to_rational() == (t.centralizers[k] if k == l else 0)


def test_dropping_the_unitary_sign_breaks_positivity():
    t = build_table("U", 3, 2, sign_flip=True)
    assert any(d < 0 for d in t.degrees)
    # the inner products are unchanged; only positivity fails
    names = {c["name"]: c["ok"] for c in structural_checks(t)}
    assert names["row orthogonality"] and not names["all degrees positive"]


def test_ennola_sign_of_trivial_label():
    lam = trivial_char_label("U", 3, 2)
    # the trivial character itself needs the sign +1 to have degree 1
    t = build_table("U", 3, 2)
    assert t.degrees[t.chars.index(lam)] == 1
    assert ennola_sign(lam) in (1, -1)
