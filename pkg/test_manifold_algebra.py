"""
Tests for atoms, connected-sum expressions and spin^c classes.
"""
from math import gcd

import pytest

from src.errors import ManifoldError
from src.lattice import enumerate_characteristics, is_characteristic
from src.manifolds import (
    Atom,
    AtomKind,
    E1LogModel,
    ManifoldExpr,
    SpinCClass,
    connected_sum_spinc,
    expected_dimension,
    fiber_class,
    invariants,
    lattice_of,
    spinc_family,
)

CP2 = Atom(AtomKind.CP2)
CP2BAR = Atom(AtomKind.CP2BAR)
S2xS2 = Atom(AtomKind.S2xS2)
K3 = Atom(AtomKind.K3)
E1 = Atom(AtomKind.E1)


def rational_surface():
    return ManifoldExpr.repeated(CP2, 2).connect(ManifoldExpr.repeated(CP2BAR, 10))


def test_string_form_groups_repeats():
    assert str(rational_surface()) == "2CP2 # 10CP2bar"
    assert str(ManifoldExpr.of(Atom.e1log(2, 5), S2xS2)) == "E1(2,5) # S2xS2"
    assert len(rational_surface()) == 12


def test_invariants_of_rational_surface():
    inv = invariants(rational_surface())
    assert (inv.b_plus, inv.b_minus) == (2, 10)
    assert inv.sigma == -8
    assert inv.euler == 14
    assert not inv.is_spin
    assert inv.is_psc


def test_k3_is_spin_and_not_psc():
    inv = invariants(ManifoldExpr.of(K3))
    assert inv.is_spin
    assert inv.sigma == -16
    assert inv.b_plus == 3
    assert not inv.is_psc


def test_elliptic_sums_share_a_homeomorphism_type():
    X = ManifoldExpr.of(E1, S2xS2)
    Xd = ManifoldExpr.of(Atom.e1log(2, 5), S2xS2)
    assert invariants(X).homeomorphism_type == (2, 10, 'odd')
    assert invariants(Xd).homeomorphism_type == invariants(rational_surface()).homeomorphism_type
    assert lattice_of(X) == lattice_of(Xd)
    assert invariants(X).is_psc
    assert not invariants(Xd).is_psc


def test_e1_lattice_is_cp2_with_nine_blowups():
    E1_lattice = lattice_of(ManifoldExpr.of(E1))
    blown_up = lattice_of(ManifoldExpr.of(CP2).connect(ManifoldExpr.repeated(CP2BAR, 9)))
    assert E1_lattice.gram == blown_up.gram


def test_labels_carry_summand_positions():
    lattice = lattice_of(ManifoldExpr.of(CP2, S2xS2))
    assert lattice.labels == ('1:h', '2:a', '2:b')


def test_offsets_and_positions():
    X = ManifoldExpr.of(E1, S2xS2, CP2BAR, S2xS2)
    assert X.offsets == ((0, 10), (10, 12), (12, 13), (13, 15))
    assert X.s2xs2_positions() == [1, 3]


def test_split():
    X = ManifoldExpr.of(E1, S2xS2, CP2BAR)
    first, second = X.split(2)
    assert first == ManifoldExpr.of(E1, S2xS2)
    assert second == ManifoldExpr.of(CP2BAR)
    with pytest.raises(ManifoldError):
        X.split(0)


def test_empty_expression_rejected():
    with pytest.raises(ManifoldError):
        ManifoldExpr(())


@pytest.mark.parametrize('m,n', [(2, 4), (1, 3), (3, 3), (6, 9)])
def test_invalid_log_transforms(m, n):
    with pytest.raises(ManifoldError):
        Atom.e1log(m, n)


def test_parameters_only_on_log_transforms():
    with pytest.raises(ManifoldError):
        Atom(AtomKind.CP2, 2, 3)


# ---- E1(m,n) canonical data -------------------------------------------------

@pytest.mark.parametrize('m,n,k', [(2, 3, 1), (2, 5, 3), (3, 4, 5), (5, 7, 23)])
def test_log_transform_canonical_class(m, n, k):
    model = E1LogModel(m, n)
    t = fiber_class()
    assert model.k == k
    assert model.K == k * t
    assert model.F == (m * n) * t
    assert t.square == 0
    model.verify()


@pytest.mark.parametrize('m', range(2, 51))
def test_log_transform_invariants_for_all_coprime_pairs(m):
    t = fiber_class()
    for n in range(2, 51):
        if gcd(m, n) != 1:
            continue
        model = E1LogModel(m, n)
        model.verify()
        assert model.K.square == 0
        assert model.k == m * n - m - n
        assert model.K == model.k * t
        assert model.F_m == n * t and model.F_n == m * t
        assert is_characteristic(model.K) == (model.k % 2 == 1)


def test_fiber_class_is_primitive():
    t = fiber_class()
    assert t.coords == (3,) + (-1,) * 9
    assert is_characteristic(t)


# ---- spin^c classes ---------------------------------------------------------

def test_spinc_class_must_be_characteristic():
    X = ManifoldExpr.of(CP2, CP2BAR)
    with pytest.raises(ManifoldError):
        SpinCClass.from_coords(X, (2, 1))
    s = SpinCClass.from_coords(X, (3, 1))
    assert s.square == 8
    assert s.divisibility == 1


def test_spinc_family_counts():
    X = ManifoldExpr.repeated(CP2, 2).connect(ManifoldExpr.repeated(CP2BAR, 2))
    family = spinc_family(X, 3)
    assert len(family) == 64
    for s in family:
        assert s.square == 8
        assert expected_dimension(X, s) == -1


@pytest.mark.parametrize('bound', [3, 5])
def test_spinc_family_closed_under_conjugation(bound):
    X = ManifoldExpr.repeated(CP2, 2).connect(ManifoldExpr.repeated(CP2BAR, 3))
    family = spinc_family(X, bound)
    coords = {s.c.coords for s in family}
    assert coords
    assert {(-s.c).coords for s in family} == coords


def test_spinc_family_needs_b_plus_two():
    with pytest.raises(ManifoldError):
        spinc_family(ManifoldExpr.of(K3), 1)
    with pytest.raises(ManifoldError):
        spinc_family(ManifoldExpr.of(E1), 1)


def test_expected_dimension_is_integral():
    X = ManifoldExpr.of(E1, S2xS2)
    for square in (-16, -8, 0):
        for c in enumerate_characteristics(X.lattice, square, 2):
            s = SpinCClass(X, c)
            assert (s.square - invariants(X).sigma) % 4 == 0
            assert expected_dimension(X, s) == (square + 8) // 4 - 3


def test_fiber_classes_have_dimension_minus_one():
    X = ManifoldExpr.of(E1, S2xS2)
    t = fiber_class()
    for d in (1, 3, 5, 7):
        s = SpinCClass(X, X.lattice.vector(tuple((-d * t).coords) + (0, 0)))
        assert expected_dimension(X, s) == -1
        assert s.divisibility == d


def test_split_and_connected_sum_round_trip():
    X = ManifoldExpr.of(E1, S2xS2)
    s = SpinCClass(X, X.lattice.vector(tuple((-fiber_class()).coords) + (2, 0)))
    first, second = s.split(1)
    assert first.manifold == ManifoldExpr.of(E1)
    assert second.c.coords == (2, 0)
    assert second.component(0) == (2, 0)
    assert connected_sum_spinc(first, second) == s
