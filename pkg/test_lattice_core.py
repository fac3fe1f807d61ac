"""
Tests for unimodular lattices, characteristic vectors, enumeration and sgn+.
"""
from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from src.errors import LatticeError
from src.lattice import (
    IntersectionLattice,
    LatticeAutomorphism,
    direct_sum,
    divisibility,
    enumerate_characteristics,
    is_characteristic,
    pair,
    positive_basis,
    random_automorphism,
    reflect,
    reflection,
    sgn_plus,
)
from src.lattice.diagonalize import f2_rank, solve_mod2
from src.manifolds import Atom, AtomKind, ManifoldExpr, lattice_of


def z(b_plus, b_minus):
    return IntersectionLattice.diagonal([1] * b_plus + [-1] * b_minus)


Z_2_10 = z(2, 10)


def random_characteristic(lattice, rng, bound=5):
    """Random vector with the characteristic residue and |c_i| <= bound."""
    coords = []
    for r in lattice.residue:
        choices = [x for x in range(-bound, bound + 1) if x % 2 == r]
        coords.append(int(rng.choice(choices)))
    return lattice.vector(coords)


# ---- construction -----------------------------------------------------------

def test_rejects_non_unimodular():
    with pytest.raises(LatticeError):
        IntersectionLattice(((2, 0), (0, 1)), ('a', 'b'))


def test_rejects_non_symmetric():
    with pytest.raises(LatticeError):
        IntersectionLattice(((1, 1), (0, -1)), ('a', 'b'))


def test_rejects_wrong_label_count():
    with pytest.raises(LatticeError):
        IntersectionLattice(((1,),), ('a', 'b'))


def test_standard_signatures():
    assert IntersectionLattice.hyperbolic().signature == (1, 1)
    assert IntersectionLattice.hyperbolic().is_even
    e8 = IntersectionLattice.negative_e8()
    assert e8.signature == (0, 8)
    assert e8.is_even
    k3 = lattice_of(ManifoldExpr.of(Atom(AtomKind.K3)))
    assert k3.signature == (3, 19)
    assert k3.sigma == -16
    assert Z_2_10.signature == (2, 10)
    assert not Z_2_10.is_even


def test_empty_lattice():
    empty = IntersectionLattice.empty()
    assert empty.rank == 0
    assert empty.signature == (0, 0)
    assert enumerate_characteristics(empty, 0, 3) == [empty.zero()]


def test_dict_round_trip():
    lattice = direct_sum(IntersectionLattice.hyperbolic(), z(1, 1), prefixes=('H', 'Z'))
    assert lattice.labels == ('H:a', 'H:b', 'Z:x0', 'Z:x1')
    assert IntersectionLattice.from_dict(lattice.to_dict()) == lattice


def test_from_dict_missing_field():
    with pytest.raises(LatticeError):
        IntersectionLattice.from_dict({'gram': [[1]]})


# ---- vectors ----------------------------------------------------------------

def test_pairing_and_square():
    H = IntersectionLattice.hyperbolic()
    a, b = H.basis_vector(0), H.basis_vector(1)
    assert pair(a, b) == 1
    assert (a + b).square == 2
    assert (2 * a - b).square == -4


def test_vectors_of_different_lattices_do_not_mix():
    with pytest.raises(LatticeError):
        z(1, 1).vector((1, 1)) + IntersectionLattice.hyperbolic().vector((1, 1))


def test_vector_length_checked():
    with pytest.raises(LatticeError):
        z(1, 1).vector((1, 2, 3))


def test_residue_and_characteristic():
    lattice = z(1, 1)
    assert lattice.residue == (1, 1)
    assert is_characteristic(lattice.vector((1, -3)))
    assert not is_characteristic(lattice.vector((2, 1)))

    H = IntersectionLattice.hyperbolic()
    assert H.residue == (0, 0)
    assert is_characteristic(H.vector((2, -4)))
    assert not is_characteristic(H.vector((1, 0)))


def test_divisibility():
    lattice = z(1, 2)
    assert divisibility(lattice.zero()) == 0
    assert divisibility(lattice.vector((3, -6, 9))) == 3
    assert divisibility(lattice.vector((3, 1, 1))) == 1


# ---- automorphisms ----------------------------------------------------------

def test_automorphism_must_preserve_form():
    with pytest.raises(LatticeError):
        LatticeAutomorphism(((1, 1), (0, 1)), z(1, 1))


def test_reflection_is_an_involution():
    lattice = z(2, 3)
    for v in lattice.reflection_roots:
        r = reflection(v)
        assert r.compose(r).is_identity
        assert r.apply(v) == -v


def test_reflection_matches_reflect():
    lattice = Z_2_10
    x = lattice.vector(range(12))
    for v in lattice.reflection_roots[:20]:
        assert reflection(v).apply(x) == reflect(v, x)


def test_reflection_rejects_bad_square():
    lattice = z(1, 1)
    with pytest.raises(LatticeError):
        reflection(lattice.vector((2, 1)))


def test_inverse_and_conjugate():
    phi = random_automorphism(Z_2_10, seed=3, word_length=6)
    psi = random_automorphism(Z_2_10, seed=4, word_length=6)
    assert phi.compose(phi.inverse()).is_identity
    assert phi.inverse().compose(phi).is_identity
    conjugated = phi.conjugate(psi)
    assert conjugated.compose(psi) == psi.compose(phi)


def test_random_automorphism_is_deterministic():
    assert random_automorphism(Z_2_10, 7, 8) == random_automorphism(Z_2_10, 7, 8)
    assert random_automorphism(Z_2_10, 7, 0).is_identity
    with pytest.raises(LatticeError):
        random_automorphism(Z_2_10, 7, -1)


def test_block_sum():
    H = IntersectionLattice.hyperbolic()
    Z = z(1, 1)
    total = direct_sum(H, Z)
    minus = LatticeAutomorphism.from_array(-np.eye(2, dtype=int), H)
    block = LatticeAutomorphism.block_sum(minus, Z.identity(), total)
    assert block.apply(total.vector((1, 2, 3, 4))) == total.vector((-1, -2, 3, 4))


# ---- van der Blij -----------------------------------------------------------

SMALL_LATTICES = [
    z(1, 0),
    z(1, 1),
    z(0, 2),
    z(2, 1),
    z(1, 3),
    IntersectionLattice.hyperbolic(),
    direct_sum(IntersectionLattice.hyperbolic(), z(1, 1)),
]


@pytest.mark.parametrize('lattice', SMALL_LATTICES)
def test_van_der_blij_exhaustive(lattice):
    bound = 5
    for coords in product(range(-bound, bound + 1), repeat=lattice.rank):
        c = lattice.vector(coords)
        if is_characteristic(c):
            assert (c.square - lattice.sigma) % 8 == 0, c


@pytest.mark.slow
def test_van_der_blij_fuzz():
    rng = np.random.default_rng(0)
    for _ in range(10_000):
        c = random_characteristic(Z_2_10, rng)
        assert is_characteristic(c)
        assert (c.square - Z_2_10.sigma) % 8 == 0


# ---- enumeration ------------------------------------------------------------

def test_enumeration_counts():
    assert len(enumerate_characteristics(z(1, 1), 0, 3)) == 8
    assert len(enumerate_characteristics(z(2, 2), 8, 3)) == 64


def test_enumeration_is_sorted_and_correct():
    lattice = direct_sum(IntersectionLattice.hyperbolic(), z(1, 2))
    vectors = enumerate_characteristics(lattice, -1, 3)
    assert vectors
    assert [v.coords for v in vectors] == sorted(v.coords for v in vectors)
    for v in vectors:
        assert is_characteristic(v)
        assert v.square == -1
        assert max(abs(x) for x in v.coords) <= 3


def test_enumeration_matches_brute_force():
    lattice = direct_sum(IntersectionLattice.hyperbolic(), z(1, 1))
    bound = 4
    expected = sorted(
        coords for coords in product(range(-bound, bound + 1), repeat=lattice.rank)
        if is_characteristic(lattice.vector(coords)) and lattice.vector(coords).square == 0
    )
    assert [v.coords for v in enumerate_characteristics(lattice, 0, bound)] == expected


def test_enumeration_multiple():
    vectors = enumerate_characteristics(z(1, 1), 0, 9, multiple=3)
    assert vectors
    assert all(x % 3 == 0 for v in vectors for x in v.coords)
    assert len(vectors) == 8


def test_enumeration_rejects_bad_arguments():
    with pytest.raises(LatticeError):
        enumerate_characteristics(z(1, 1), 0, -1)
    with pytest.raises(LatticeError):
        enumerate_characteristics(z(1, 1), 0, 3, multiple=2)


# ---- sgn+ -------------------------------------------------------------------

def test_positive_basis():
    basis = positive_basis(Z_2_10)
    assert len(basis.vectors) == 2
    assert basis.gram().is_positive_definite
    assert len(positive_basis(IntersectionLattice.hyperbolic()).vectors) == 1


def test_sgn_plus_of_reflections():
    for v in Z_2_10.reflection_roots:
        expected = -1 if v.square > 0 else 1
        assert sgn_plus(reflection(v)) == expected


def test_sgn_plus_of_minus_identity_on_hyperbolic_plane():
    H = IntersectionLattice.hyperbolic()
    minus = LatticeAutomorphism.from_array(-np.eye(2, dtype=int), H)
    assert sgn_plus(minus) == -1
    assert sgn_plus(H.identity()) == 1


@pytest.mark.slow
def test_sgn_plus_multiplicative_fuzz():
    for seed in range(1_000):
        phi = random_automorphism(Z_2_10, seed, 8)
        psi = random_automorphism(Z_2_10, seed + 10_000, 8)
        assert sgn_plus(phi.compose(psi)) == sgn_plus(phi) * sgn_plus(psi)


@settings(max_examples=200, derandomize=True, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), other=st.integers(0, 2**32 - 1))
def test_sgn_plus_basis_independent(seed, other):
    phi = random_automorphism(Z_2_10, seed, 8)
    psi = random_automorphism(Z_2_10, other, 8)
    moved = positive_basis(Z_2_10).transformed(psi)
    assert sgn_plus(phi, moved) == sgn_plus(phi)


@pytest.mark.slow
def test_sgn_plus_basis_independent_fuzz():
    reference = positive_basis(Z_2_10)
    for seed in range(1_000):
        phi = random_automorphism(Z_2_10, seed, 8)
        moved = reference.transformed(random_automorphism(Z_2_10, seed + 20_000, 8))
        assert sgn_plus(phi, moved) == sgn_plus(phi), seed


@pytest.mark.slow
def test_square_and_divisibility_invariant_under_automorphisms():
    X = lattice_of(ManifoldExpr.of(Atom(AtomKind.E1), Atom(AtomKind.S2xS2)))
    c = X.vector((-9, 3, 3, 3, 3, 3, 3, 3, 3, 3, 0, 0))
    for seed in range(1_000):
        image = random_automorphism(X, seed, 8).apply(c)
        assert image.square == c.square == 0
        assert divisibility(image) == divisibility(c) == 3
        assert is_characteristic(image)


# ---- F2 linear algebra ------------------------------------------------------

def test_solve_mod2():
    A = np.array([[1, 1], [0, 1]])
    assert list(solve_mod2(A, np.array([1, 1]))) == [0, 1]
    with pytest.raises(ValueError):
        solve_mod2(np.array([[1, 1], [1, 1]]), np.array([0, 1]))


def test_f2_rank():
    assert f2_rank(np.eye(4, dtype=np.uint8)) == 4
    assert f2_rank(np.array([[1, 1], [1, 1]])) == 1
    assert f2_rank(np.tril(np.ones((5, 5), dtype=np.uint8))) == 5
    assert f2_rank(np.zeros((3, 3), dtype=np.uint8)) == 0
