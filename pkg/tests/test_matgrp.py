import numpy as np
import pytest
from hypothesis import given, strategies as st

from charlie.matgrp import (ExtGroup, ResourceBoundExceeded, antidiagonal, check_bounds, class_label,
                            coset_classes, coset_classes_via_extension, elementary_divisors, explicit_v,
                            find_coset_sqrt, find_coset_sqrt_exhaustive, formula_order, group, identity,
                            is_cyclic, is_real, is_regular_unipotent, is_strongly_real, parabolic,
                            phi_match, regular_unipotent, regular_unipotent_coset_elements,
                            set_unsafe, square_in_coset, stable_subsets, symmetric_conjugator,
                            transpose_conjugators, unipotent_radical)


@pytest.mark.parametrize("kind,n,q,order", [("GL", 2, 2, 6), ("GL", 2, 3, 48), ("GL", 3, 2, 168),
                                            ("U", 2, 2, 18), ("U", 2, 3, 96), ("U", 3, 2, 648)])
def test_group_orders(kind, n, q, order):
    assert formula_order(kind, n, q) == order
    assert group(kind, n, q).size == order


@pytest.mark.parametrize("n,q", [(2, 2), (2, 3), (3, 2)])
def test_unitary_elements_preserve_form(n, q):
    for form in ("identity", "antidiagonal"):
        U = group("U", n, q, form)
        ops, J = U.ops, U.J
        lhs = ops.matmul(ops.matmul(U.mats, np.broadcast_to(J, U.mats.shape)),
                         ops.transpose(ops.frob(U.mats)))
        assert (lhs == J).all()


def test_bounds():
    with pytest.raises(ResourceBoundExceeded) as e:
        check_bounds("U", 2, 4)
    assert e.value.order == 300
    assert check_bounds("GL", 2, 4) == 180
    assert check_bounds("GL", 2, 3, extended=True) == 96
    with pytest.raises(ResourceBoundExceeded):
        check_bounds("GL", 4, 3)


def test_unsafe_switch(monkeypatch):
    monkeypatch.setenv("CHARLIE_MAX_GROUP_ORDER", "100")
    set_unsafe(True)
    try:
        assert check_bounds("U", 2, 4 - 1) == 96
        with pytest.raises(ResourceBoundExceeded):
            check_bounds("U", 2, 4)
    finally:
        set_unsafe(False)


H = group("GL", 2, 3)
idx = st.integers(0, H.size - 1)


@given(idx, idx, idx)
def test_group_laws(a, b, c):
    ab_c = H.mul(H.mul(np.array([a]), np.array([b])), np.array([c]))
    a_bc = H.mul(np.array([a]), H.mul(np.array([b]), np.array([c])))
    assert ab_c == a_bc
    assert H.mul(np.array([a]), H.inv(np.array([a])))[0] == H.identity_index
    assert H.index(H.mat(a)[None])[0] == a


E3 = ExtGroup(group("U", 2, 3))
eidx = st.integers(0, E3.size - 1)


@given(eidx, eidx, eidx)
def test_extension_group_laws(a, b, c):
    m = E3.mul
    A, B, C = (np.array([x]) for x in (a, b, c))
    assert m(m(A, B), C) == m(A, m(B, C))
    assert m(A, E3.inv(A))[0] == E3.identity_index


def test_tau_is_an_involution_acting_by_inverse_transpose():
    G = group("GL", 2, 3)
    E = ExtGroup(G)
    t = np.array([E.tau()])
    assert E.mul(t, t)[0] == E.identity_index
    for g in range(G.size):
        conj = E.mul(E.mul(t, np.array([g])), t)[0]
        assert conj == G.tau_perm[g]


@pytest.mark.parametrize("kind,n,q", [("GL", 2, 2), ("GL", 2, 3), ("GL", 3, 2), ("U", 2, 2), ("U", 2, 3), ("U", 3, 2)])
def test_coset_classes_two_routes(kind, n, q):
    G = group(kind, n, q)
    a = sorted(tuple(c.members.tolist()) for c in coset_classes(G))
    b = sorted(tuple(m.tolist()) for m in coset_classes_via_extension(G))
    assert a == b
    assert sum(len(x) for x in a) == G.size


@pytest.mark.parametrize("n,q", [(2, 2), (2, 3), (3, 2)])
def test_class_counts_and_centralizers_correspond(n, q):
    a, b = coset_classes(group("GL", n, q)), coset_classes(group("U", n, q))
    assert len(a) == len(b)
    assert sorted(c.centralizer_order for c in a) == sorted(c.centralizer_order for c in b)


def test_tau_class_matches_an_involution_class():
    GL, U = group("GL", 2, 2), group("U", 2, 2)
    m = phi_match(GL, U)
    for x, y in m.pairs:
        if GL.identity_index in x.members:
            assert square_in_coset(U, y.rep) == U.identity_index
            assert y.order == 2
            break
    else:
        raise AssertionError("tau not found")


@pytest.mark.parametrize("n,q", [(2, 3), (3, 2), (2, 2)])
def test_phi_match_is_perfect(n, q):
    GL, U = group("GL", n, q), group("U", n, q)
    m = phi_match(GL, U)
    assert len(m.pairs) == len(coset_classes(GL))
    assert all(x.order == y.order and x.centralizer_order == y.centralizer_order for x, y in m.pairs)
    assert len({y.rep for _, y in m.pairs}) == len(m.pairs)


def test_squared_invariant_is_not_injective():
    # two inequivalent forms with the same square already occur for GL(2,2)
    G = group("GL", 2, 2)
    sq = [square_in_coset(G, c.rep) for c in coset_classes(G)]
    assert len(set(sq)) < len(sq)


def test_elementary_divisors_and_labels():
    G = group("GL", 3, 2)
    ed = elementary_divisors(identity(3), G.ops)
    assert ed == (((1, 1), (1, 1, 1)),)
    u = G.mat(regular_unipotent(G))
    assert elementary_divisors(u, G.ops) == (((1, 1), (3,)),)
    assert is_cyclic(G, u) and not is_cyclic(G, identity(3))
    assert class_label(G, u).height == 1


def test_coset_square_roots_q3():
    for kind in ("GL", "U"):
        G3 = group(kind, 3, 3)
        u = G3.mat(regular_unipotent(G3))
        x = find_coset_sqrt(G3, u)
        assert x is not None
        assert (G3.mat(square_in_coset(G3, x)) == u).all()
        G2 = group(kind, 2, 3)
        u2 = G2.mat(regular_unipotent(G2))
        assert find_coset_sqrt(G2, u2) is None
        assert find_coset_sqrt_exhaustive(G2, u2) is None
        neg = G2.ops.neg_t[u2]
        y = find_coset_sqrt(G2, neg)
        assert y is not None and (G2.mat(square_in_coset(G2, y)) == neg).all()


def test_coset_sqrt_of_identity():
    G = group("U", 2, 3)
    x = find_coset_sqrt(G, identity(2))
    assert x is not None and square_in_coset(G, x) == G.identity_index
    assert square_in_coset(G, G.identity_index) == G.identity_index


def test_strong_reality():
    U = group("U", 2, 3)
    ok, s = is_strongly_real(U, U.identity_index)
    assert ok
    for n, q in [(2, 3), (3, 2)]:
        U = group("U", n, q)
        u = regular_unipotent(U)
        assert is_real(U, u)
        assert is_strongly_real(U, u) == (False, None)
    # every real element of GL is strongly real
    G = group("GL", 2, 3)
    assert all(is_strongly_real(G, x)[0] for x in range(G.size) if is_real(G, x))


@pytest.mark.parametrize("q", [2, 3])
def test_symmetric_conjugators_exist(q):
    U = group("U", 2, q)
    for x in range(U.size):
        s = symmetric_conjugator(U, x)
        S = U.mat(s)
        assert (S == S.T).all()
        lhs = U.ops.matmul(U.mat(x), S)
        assert (lhs == U.ops.matmul(S, U.mat(x).T)).all()


def test_conjugators_of_cyclic_element_are_symmetric():
    U = group("U", 2, 3)
    x = regular_unipotent(U)
    ws = transpose_conjugators(U, x)
    assert len(ws) > 0
    assert all((U.mats[w] == U.mats[w].T).all() for w in ws)


def test_explicit_v():
    assert explicit_v(3).tolist() == [[1, 1, 0], [0, 1, 0], [0, 0, 1]]
    assert explicit_v(4).tolist() == [[1, 1, 0, 0], [0, 1, 1, 0], [0, 0, 1, 0], [0, 0, 0, 1]]


def test_regular_unipotent_coset_census_gl32():
    G = group("GL", 3, 2)
    found, v = regular_unipotent_coset_elements(G)
    assert len(found) == 168 // 2
    assert v is not None and v in found
    assert is_regular_unipotent(G, G.mat(square_in_coset(G, v)))


def test_centralizer_in_extension_gl33():
    G = group("GL", 3, 3)
    E = ExtGroup(G)
    x = find_coset_sqrt(G, G.mat(regular_unipotent(G)))
    xt = int(E.coset(x))
    allx = np.arange(E.size)
    c = int((E.mul(allx, np.full(E.size, xt)) == E.mul(np.full(E.size, xt), allx)).sum())
    assert c == 12


def test_parabolics():
    G = group("GL", 3, 2)
    P, U = parabolic(G, [])
    assert len(P) == 8 and len(U) == 8  # the Borel subgroup is unipotent for q = 2
    P, U = parabolic(G, [1, 2])
    assert len(P) == 168 and len(U) == 1
    assert len(unipotent_radical(group("U", 3, 2, "antidiagonal"))) == 8
    assert stable_subsets(group("U", 3, 2, "antidiagonal")) == [(), (1, 2)]
    assert len(stable_subsets(group("GL", 3, 2))) == 4
    P, U = parabolic(G, [1])
    assert len(P) == 24 and len(U) == 4
