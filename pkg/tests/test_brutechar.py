from fractions import Fraction

import numpy as np
import pytest

from charlie.algebra import Cyclotomic
from charlie.brutechar import (CyclicGroup, cyc_eq, HypothesisError, PermGroup, THEOREMS, apply_matrix,
                               check_column_orthogonality, check_orthogonality, congruent, decompose,
                               duality_matrix, fs_indicator, gelfand_graev, group_table, inner_product,
                               match_tables, oracle_prime, oracle_table, verify)
from charlie.charmap import build_table
from charlie.matgrp import ResourceBoundExceeded

# classical S4 table, columns keyed by cycle type
S4 = {
    (1, 1, 1, 1): [1, 1, 2, 3, 3],
    (2, 1, 1): [1, -1, 0, 1, -1],
    (2, 2): [1, 1, 2, -1, -1],
    (3, 1): [1, 1, -1, 0, 0],
    (4,): [1, -1, 0, -1, 1],
}
S3 = {(1, 1, 1): [1, 1, 2], (2, 1): [1, -1, 0], (3,): [1, 1, -1]}


def _cycle_type(perm):
    seen, out = set(), []
    for i in range(len(perm)):
        if i in seen:
            continue
        j, c = i, 0
        while j not in seen:
            seen.add(j)
            j = perm[j]
            c += 1
        out.append(c)
    return tuple(sorted(out, reverse=True))


@pytest.mark.parametrize("k,classical", [(3, S3), (4, S4)])
def test_symmetric_groups_match_classical_tables(k, classical):
    H = PermGroup(k)
    T = oracle_table(H)
    cols = {}
    for c, r in enumerate(T.reps):
        cols[_cycle_type(H.perms[r])] = c
    assert set(cols) == set(classical)
    got = sorted(tuple(int(T.values[i][cols[ct]].to_rational()) for ct in sorted(classical))
                 for i in range(T.nclasses))
    want = sorted(tuple(classical[ct][i] for ct in sorted(classical)) for i in range(T.nclasses))
    assert got == want


@pytest.mark.parametrize("m", [1, 2, 3, 4, 6, 7])
def test_cyclic_groups(m):
    T = oracle_table(CyclicGroup(m))
    assert T.nclasses == m
    gen = list(T.reps).index(1 % m)
    rows = set()
    for i in range(m):
        z = T.values[i][gen]
        # a linear character is determined by its value on a generator
        for c, r in enumerate(T.reps):
            p = Cyclotomic.one(z.M)
            for _ in range(r):
                p = p * z
            assert cyc_eq(T.values[i][c], p)
        assert cyc_eq(_pow(z, m), Cyclotomic.one(z.M))
        rows.add(str(z))
    assert len(rows) == m


def _pow(z, k):
    p = Cyclotomic.one(z.M)
    for _ in range(k):
        p = p * z
    return p


def test_c3_table_over_third_roots():
    T = oracle_table(CyclicGroup(3))
    w = Cyclotomic.root_of_unity(3, 1)
    cols = [list(T.reps).index(r) for r in range(3)]
    got = {tuple(str(T.values[i][c]) for c in cols) for i in range(3)}
    want = {tuple(str(_pow(_pow(w, k), r)) for r in range(3)) for k in range(3)}
    assert got == want


def test_oracle_prime():
    ell = oracle_prime(48, 24)
    assert ell > 96 and ell % 24 == 1


@pytest.mark.parametrize("kind,n,q,extended", [("GL", 2, 2, False), ("GL", 2, 3, False), ("GL", 2, 3, True),
                                               ("U", 2, 3, True), ("GL", 3, 2, True), ("U", 3, 2, True)])
def test_orthogonality(kind, n, q, extended):
    T = group_table(kind, n, q, extended)
    assert check_orthogonality(T)
    assert check_column_orthogonality(T)
    assert sum(int(d) ** 2 for d in T.degrees) == T.order


def test_gl22_and_gl23_degrees():
    assert sorted([int(d) for d in group_table("GL", 2, 2).degrees]) == [1, 1, 2]
    T = group_table("GL", 2, 3)
    assert T.nclasses == 8 and sum(int(d) ** 2 for d in T.degrees) == 48


def test_indicators():
    T = group_table("GL", 2, 3)
    assert fs_indicator(T, 0) == 1
    for i in range(T.nclasses):
        assert fs_indicator(T, i) == (1 if T.is_real_row(i) else 0)
    U = group_table("U", 2, 3)
    assert -1 in [fs_indicator(U, i) for i in range(U.nclasses)]


@pytest.mark.parametrize("kind,n,q", [("GL", 2, 2), ("GL", 2, 3), ("GL", 2, 4), ("GL", 2, 5), ("GL", 3, 2),
                                      ("U", 2, 2), ("U", 2, 3), ("U", 3, 2)])
def test_tables_match(kind, n, q):
    m = match_tables(build_table(kind, n, q), group_table(kind, n, q))
    assert m["matched"], m.get("reason")


def test_sign_mutation_is_detected():
    m = match_tables(build_table("U", 3, 2, sign_flip=True), group_table("U", 3, 2))
    assert not m["matched"]


def test_gelfand_graev_small():
    g = gelfand_graev("GL", 2, 2)
    assert g.values[0].to_rational() == 3  # |G| / |N| = 6 / 2
    assert all(c in (0, 1) for c in g.decomposition())


def test_gelfand_graev_gl32_constituents_are_height_one():
    g = gelfand_graev("GL", 3, 2)
    comb = build_table("GL", 3, 2)
    m = match_tables(comb, g.table)
    lab = dict(m["rows"])
    got = {lab[i] for i, c in enumerate(g.decomposition()) if c == 1}
    assert got == {l for l in comb.chars if l.height == 1}


@pytest.mark.parametrize("kind", ["GL", "U"])
def test_extended_gelfand_graev(kind):
    g = gelfand_graev(kind, 3, 2, extended=True)
    assert all(c in (0, 1) for c in g.decomposition())
    from charlie.brutechar import coset_classes_of
    ip = inner_product(g.table, g.values, g.values, coset_classes_of(g.table)) * 2
    assert ip.to_rational() == 2


def test_duality_trivial_is_steinberg():
    T, D = duality_matrix("GL", 2, 2)
    triv = T.values[0]
    dual = apply_matrix(D, triv)
    st = [i for i in range(T.nclasses) if T.degrees[i] == 2][0]
    assert dual == T.values[st] or dual == [-v for v in T.values[st]]


@pytest.mark.parametrize("kind,n,q", [("GL", 2, 3), ("U", 3, 2), ("U", 2, 2)])
def test_duality_is_an_isometric_involution(kind, n, q):
    T, D = duality_matrix(kind, n, q)
    duals = [apply_matrix(D, T.values[i]) for i in range(T.nclasses)]
    for i in range(T.nclasses):
        assert apply_matrix(D, duals[i]) == T.values[i]
        for j in range(T.nclasses):
            ip = inner_product(T, duals[i], duals[j])
            assert ip.to_rational() == (1 if i == j else 0)


def test_congruence():
    a = Cyclotomic.from_rational(4, 5)
    b = Cyclotomic.from_rational(4, 1)
    assert congruent(a, b, 2) and not congruent(a, b, 3)
    s = Cyclotomic.root_of_unity(8, 1) + Cyclotomic.root_of_unity(8, 7)  # sqrt 2
    assert not congruent(s, Cyclotomic.zero(8), 2)
    assert congruent(s * s, Cyclotomic.zero(8), 2)


# -- verification routines -----------------------------------------------------

PASSING = [("2.3", "both", 3, 2), ("2.5", "both", 2, 3), ("4.1", "gl", 3, 2), ("4.4", "both", 3, 2),
           ("4.5", "both", 3, 3), ("5.1", "u", 2, 3), ("5.2", "u", 3, 2), ("5.3", "u", 2, 3),
           ("5.5", "u", 2, 3), ("5.7", "u", 2, 3), ("5.8", "both", 3, 3), ("5.10", "both", 3, 3),
           ("6.1", "both", 2, 3), ("6.3", "both", 2, 3), ("6.4", "both", 3, 2), ("6.6", "gl", 3, 3),
           ("6.10", "u", 2, 3), ("7.4", "both", 3, 2)]


@pytest.mark.parametrize("case", PASSING, ids=lambda c: f"{c[0]}-{c[1]}-{c[2]}-{c[3]}")
def test_verify_passes(case):
    r = verify(*case)
    assert r["verdict"] == "PASS", [c for c in r["checks"] if not c["ok"]]
    assert set(r) >= {"theorem", "params", "verdict", "witnesses", "runtime_ms"}


def test_theorem_66_evidence():
    r = verify("6.6", "gl", 3, 3)
    ws = [w for w in r["witnesses"] if "degree_mod_p" in w]
    assert ws
    for w in ws:
        if w["degree_mod_p"]:
            assert w["value_at_y_tau"] in ("1", "-1")
        else:
            assert w["value_at_y_tau"] == "0"
        assert w["centralizer"] == 12


def test_theorem_610_reports_conjecture_without_gating():
    r = verify("6.10", "u", 2, 3)
    assert r["verdict"] == "PASS"
    assert any("report only" in n for n in r["notes"])
    assert all(w["square"] == "-3" for w in r["witnesses"])


def test_char2_values_at_3_2_follow_the_table():
    # GL(3,2)<tau> is PGL(2,7): the elements squaring to regular unipotents
    # form two classes on which the degree-6 characters take +-sqrt 2
    r = verify("7.5", "gl", 3, 2)
    assert r["verdict"] == "FAIL"
    vals = {w["value_at_y_tau"] for w in r["witnesses"] if w["degree"] == 6}
    s = Cyclotomic.root_of_unity(8, 1) + Cyclotomic.root_of_unity(8, 7)
    assert len(vals) == 2
    r3 = verify("7.3", "gl", 3, 2)
    names = {c["name"]: c["ok"] for c in r3["checks"]}
    assert names["GL: census equals |G|/q^m"]
    assert not names["GL: regular unipotent coset elements form one class"]
    ru = verify("7.3", "u", 3, 2)
    names = {c["name"]: c for c in ru["checks"]}
    assert names["U: census equals |G|/q^m"]["ok"]
    assert names["U: regular unipotent coset elements form one class"]["classes"] == 2


def test_sqrt2_values_explicitly():
    T = group_table("GL", 3, 2, True)
    s = Cyclotomic.root_of_unity(8, 1) + Cyclotomic.root_of_unity(8, 7)
    hits = [v for row in T.values for v in row if cyc_eq(v, s) or cyc_eq(v, -s)]
    assert hits


def test_verify_errors():
    with pytest.raises(KeyError):
        verify("9.9", "gl", 2, 2)
    with pytest.raises(ResourceBoundExceeded):
        verify("2.5", "both", 2, 4)
    with pytest.raises(HypothesisError):
        verify("6.6", "gl", 2, 3)
    with pytest.raises(HypothesisError):
        verify("7.3", "gl", 3, 3)


def test_registry_covers_listed_statements():
    for t in ["2.3", "2.5", "4.4", "4.5", "5.1", "5.2", "5.3", "5.6", "5.7", "5.8", "5.9", "5.10",
              "6.1", "6.2", "6.3", "6.4", "6.6", "6.10", "7.3", "7.5"]:
        assert t in THEOREMS
