import pytest
from hypothesis import given, strategies as st

from charlie.algebra import field
from charlie.polyorb import (conjugate_orbit, count_self_reciprocal, count_self_reciprocal_exhaustive,
                             enumerate_orbits, is_irreducible, irreducible_factors, monic_polys,
                             orbit_system, orbit_union_identity, pmul, reciprocal)


def test_reciprocal_examples():
    F3 = field(3)
    assert reciprocal(F3, (2, 1)) == (2, 1)  # t - 1
    assert reciprocal(F3, (2, 1, 1)) == (2, 2, 1)  # t^2 + t + 2 -> t^2 + 2t + 2
    with pytest.raises(ValueError):
        reciprocal(F3, (0, 1))


@pytest.mark.parametrize("q", [2, 3])
def test_reciprocal_is_involution(q):
    F = field(q)
    for n in range(1, 4):
        for f in monic_polys(F, n):
            assert reciprocal(F, reciprocal(F, f)) == f


@pytest.mark.parametrize("n,q,expected", [(3, 3, 6), (2, 3, 4), (3, 2, 2)])
def test_self_reciprocal_counts(n, q, expected):
    assert count_self_reciprocal(n, q) == expected
    assert count_self_reciprocal_exhaustive(n, q) == expected


@pytest.mark.parametrize("n,q", [(1, 2), (2, 2), (4, 2), (1, 3), (4, 3), (2, 4), (3, 4), (2, 5), (3, 5)])
def test_self_reciprocal_closed_form_matches_enumeration(n, q):
    assert count_self_reciprocal(n, q) == count_self_reciprocal_exhaustive(n, q)


def test_phi_orbits_at_2_2():
    orbs = enumerate_orbits("phi", 2, 2)
    assert sorted(o.rep for o in orbs) == [(1, 1), (1, 1, 1)]  # t+1, t^2+t+1


def test_theta_orbits_at_2_2():
    assert sorted(o.size for o in enumerate_orbits("theta", 2, 2)) == [1, 2]
    assert sorted(o.size for o in enumerate_orbits("thetatilde", 2, 2)) == [1, 1, 1]


@pytest.mark.parametrize("kind", ["phi", "theta", "phitilde", "thetatilde"])
@pytest.mark.parametrize("n,q", [(2, 2), (3, 2), (2, 3), (3, 3)])
def test_orbit_counts_agree_by_size(kind, n, q):
    # elements and characters of each fixed group are equinumerous orbit by orbit
    other = {"phi": "theta", "theta": "phi", "phitilde": "thetatilde", "thetatilde": "phitilde"}[kind]
    a = sorted(o.size for o in enumerate_orbits(kind, n, q))
    b = sorted(o.size for o in enumerate_orbits(other, n, q))
    assert a == b


def test_phi_reps_are_irreducible():
    F = field(3)
    for o in enumerate_orbits("phi", 3, 3):
        assert len(o.rep) == o.size + 1
        assert is_irreducible(F, o.rep)


def test_phitilde_size_counts():
    # U(1, q^2) has q + 1 elements, one orbit each
    assert len([o for o in enumerate_orbits("phitilde", 1, 3) if o.size == 1]) == 4


def test_conjugate_orbit():
    sysm = orbit_system("phi", 3, 3)
    triv = sysm.find(0)
    assert conjugate_orbit(triv, 3, 3) == triv
    o = sysm.by_rep((2, 1, 1))
    assert conjugate_orbit(o, 3, 3).rep == (2, 2, 1)
    for o in enumerate_orbits("phi", 3, 3):
        c = conjugate_orbit(o, 3, 3)
        assert c.size == o.size
        assert conjugate_orbit(c, 3, 3) == o
    for o in enumerate_orbits("theta", 3, 3):
        assert conjugate_orbit(o, 3, 3).size == o.size


@pytest.mark.parametrize("n,q", [(2, 2), (3, 2), (2, 3), (3, 3), (2, 5)])
def test_orbit_union_identity(n, q):
    assert orbit_union_identity(n, q)


_IRR5 = [f for n in (1, 2) for f in monic_polys(field(5), n, nonzero_constant=False) if is_irreducible(field(5), f)]


@given(st.sets(st.sampled_from(_IRR5), min_size=1, max_size=4))
def test_factorization_of_squarefree_products(facs):
    F = field(5)
    f = (1,)
    for g in facs:
        f = pmul(F, f, g)
    assert irreducible_factors(F, f) == sorted(facs, key=lambda g: (len(g), g))
