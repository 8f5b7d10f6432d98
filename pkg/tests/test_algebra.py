from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from charlie.algebra import (Cyclotomic, FieldTower, add_character, field, frobenius,
                             mult_character, prime_power, unitary_conj)


def test_prime_power():
    assert prime_power(9) == (3, 2)
    assert prime_power(7) == (7, 1)
    with pytest.raises(ValueError):
        prime_power(6)


def test_frobenius_fixes_base_field():
    F = field(3, 4)
    base = [a for a in F.elements() if frobenius(F, a, 1) == a]
    assert len(base) == 3


def test_frobenius_on_f4_generator():
    F = field(2, 2)
    w = F.primitive_element()
    assert frobenius(F, w, 1) == F.mul(w, w)


@given(st.integers(0, 80), st.integers(0, 80))
def test_frobenius_additive(a, b):
    F = field(3, 4)
    assert frobenius(F, F.add(a, b), 1) == F.add(frobenius(F, a, 1), frobenius(F, b, 1))
    # against repeated multiplication
    x = 1
    for _ in range(3):
        x = F.mul(x, a)
    assert frobenius(F, a, 1) == x


def test_unitary_norm_lands_in_base_field():
    F = field(3, 2)
    for x in F.elements():
        nx = F.mul(x, unitary_conj(F, x, 1))
        assert frobenius(F, nx, 1) == nx


def test_norm_one_group_has_q_plus_one_elements():
    F = field(3, 2)
    M = [a for a in range(1, F.q) if F.pow(a, 4) == 1]
    assert len(M) == 4


def test_unitary_conj_needs_quadratic_extension():
    with pytest.raises(ValueError):
        unitary_conj(field(3, 1), 1, 1)


def test_mult_character():
    F = field(7)
    triv = mult_character(F, 0)
    assert all(triv(a) == Cyclotomic.one(6) for a in range(1, 7))
    g = F.primitive_element()
    assert mult_character(F, 1)(g) == Cyclotomic.root_of_unity(6, 1)
    xi = mult_character(F, 2)
    for a in range(1, 7):
        for b in range(1, 7):
            assert xi(F.mul(a, b)) == xi(a) * xi(b)


def test_add_character_is_homomorphism():
    F = field(2, 3)
    psi = add_character(F, 3)
    for a in F.elements():
        for b in F.elements():
            assert psi(F.add(a, b)) == psi(a) * psi(b)


def test_tower_embeddings_compose():
    T = FieldTower(2, 6)
    e12, e26, e16 = T.embed(1, 2), T.embed(2, 6), T.embed(1, 6)
    assert [int(e26[e12[a]]) for a in range(2)] == [int(x) for x in e16]
    F2, F6 = field(2, 2), field(2, 6)
    # the embedding is a ring map
    for a in range(4):
        for b in range(4):
            assert e26[F2.mul(a, b)] == F6.mul(int(e26[a]), int(e26[b]))
            assert e26[F2.add(a, b)] == F6.add(int(e26[a]), int(e26[b]))


cyc = st.builds(lambda js, M: sum((Cyclotomic.root_of_unity(M, j) for j in js), Cyclotomic.zero(M)),
                st.lists(st.integers(0, 23), max_size=5), st.just(24))


@given(cyc, cyc, cyc)
def test_cyclotomic_ring_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)


@given(cyc)
def test_conjugation_is_involution(a):
    assert a.conj().conj() == a
    assert (a * a.conj()).is_real()
    assert a.is_real() == (a == a.conj())


def test_cyclotomic_exact_values():
    i = Cyclotomic.root_of_unity(4, 1)
    assert i * i == Cyclotomic.from_rational(4, -1)
    assert i.is_purely_imaginary()
    z3 = Cyclotomic.root_of_unity(3, 1)
    assert 1 + z3 + z3 * z3 == Cyclotomic.zero(3)
    # sqrt 2 = z8 + z8^-1
    s = Cyclotomic.root_of_unity(8, 1) + Cyclotomic.root_of_unity(8, 7)
    assert (s * s).to_rational() == 2
    assert abs(s.to_complex() - 2 ** 0.5) < 1e-12


def test_embed_preserves_value():
    z = Cyclotomic.root_of_unity(6, 1)
    w = z.embed(12)
    assert w == Cyclotomic.root_of_unity(12, 2)
    assert (z * Fraction(1, 3)).embed(24).to_complex() == pytest.approx(z.to_complex() / 3)
