"""
Tests for the t_d construction, the support matrix rank certificate, blowup
lifts and the summed invariant over divisibility classes.
"""
import numpy as np
import pytest
from joblib import parallel_backend

from src.errors import CertificateError, PreconditionError
from src.families import CertifiedValue, DiffeoExpr, replay
from src.lattice import divisibility, enumerate_characteristics, random_automorphism
from src.manifolds import SpinCClass, expected_dimension
from src.torelli import (
    OqClass,
    SupportMatrix,
    base_manifold,
    blowup_lift,
    build_td,
    candidate_support,
    evaluate_matrix,
    fiber_spinc,
    odd_indices,
    rank_certificate,
    sw_OQ,
)


def expected_entry(row, col):
    """1 on the diagonal, 0 above it, parity of (row - col) / 2 below it."""
    if col > row:
        return 0
    return 1 if ((row - col) // 2) % 2 == 0 else 0


# ---- t_d --------------------------------------------------------------------

@pytest.mark.parametrize('d', [1, 3, 5, 9, 21])
def test_build_td(d):
    family = build_td(d)
    assert str(family.Xd) == f"E1(2,{d + 2}) # S2xS2"
    assert family.psi_d.is_identity
    assert divisibility(family.sd.c) == d
    assert family.sd.square == 0
    assert expected_dimension(family.X, family.sd) == -1
    record = family.to_dict()
    assert record['td_torelli'] is True
    assert record['sgn_plus'] == {'f0': -1, 'fd': -1}
    assert set(record['facts']) == {
        'wall_stabilization', 'elliptic_dissolution', 'mcg_surjective', 'divisibility_orbits',
    }


@pytest.mark.parametrize('d', [0, 2, -1])
def test_build_td_needs_odd_positive_d(d):
    with pytest.raises(PreconditionError):
        build_td(d)


def test_odd_indices():
    assert odd_indices(4) == (1, 3, 5, 7)


# ---- support matrix ---------------------------------------------------------

def test_support_matrix_pattern():
    matrix = evaluate_matrix(4)
    for row in matrix.indices:
        for col in matrix.indices:
            value = matrix.entry(row, col)
            assert value.is_certified
            assert value.value == expected_entry(row, col), (row, col)
    assert matrix.entry(5, 1) == CertifiedValue.mod2(1)
    assert matrix.entry(1, 5) == CertifiedValue.mod2(0)
    assert matrix.entry(7, 3) == CertifiedValue.mod2(1)


def test_every_entry_replays():
    matrix = evaluate_matrix(3)
    for value in matrix.values():
        assert replay(value) == value


def test_small_rank_certificate():
    certificate = rank_certificate(3)
    assert certificate.rank_lower_bound == 3
    assert certificate.triangular
    assert certificate.f2_rank == 3
    record = certificate.to_dict()
    assert record['D'] == 3
    assert record['rank'] == 3
    assert len(record['entries']) == 9


def test_rank_certificate_d50():
    certificate = rank_certificate(50)
    assert certificate.rank_lower_bound == 50
    assert certificate.triangular
    for value in certificate.witness.values():
        assert replay(value) == value


@pytest.mark.slow
def test_rank_certificate_d100():
    certificate = rank_certificate(100)
    assert certificate.rank_lower_bound == 100
    assert certificate.triangular
    for value in certificate.witness.values():
        assert replay(value) == value


def test_parallel_evaluation_matches_serial():
    with parallel_backend('threading'):
        parallel = evaluate_matrix(3, n_jobs=2)
    serial = evaluate_matrix(3)
    assert np.array_equal(parallel.bits(), serial.bits())


def test_unknown_diagonal_is_a_hard_failure():
    matrix = evaluate_matrix(2)
    matrix.entries[(1, 1)] = CertifiedValue.unknown()
    with pytest.raises(CertificateError):
        rank_certificate(2, matrix=matrix)


def test_missing_diagonal_is_a_hard_failure():
    matrix = evaluate_matrix(2)
    del matrix.entries[(3, 3)]
    with pytest.raises(CertificateError):
        rank_certificate(2, matrix=matrix)


def test_non_triangular_matrix_falls_back_to_f2_rank():
    one, zero = CertifiedValue.mod2(1), CertifiedValue.mod2(0)
    rows = {1: [one, one, zero], 3: [one, one, zero], 5: [zero, zero, one]}
    matrix = SupportMatrix(3)
    for row, values in rows.items():
        for col, value in zip(odd_indices(3), values):
            matrix.entries[(row, col)] = value
    certificate = rank_certificate(3, matrix=matrix)
    assert not certificate.triangular
    assert certificate.f2_rank == 2
    assert certificate.rank_lower_bound == 2


def test_matrix_size_must_match():
    with pytest.raises(PreconditionError):
        rank_certificate(3, matrix=SupportMatrix(2))
    with pytest.raises(PreconditionError):
        evaluate_matrix(0)


# ---- blowups ----------------------------------------------------------------

@pytest.mark.parametrize('d', [1, 3, 5])
@pytest.mark.parametrize('times', [1, 2, 5])
def test_blowup_lift_keeps_the_value(d, times):
    family = build_td(d)
    lifted = blowup_lift(family, times)
    assert lifted.base_value == CertifiedValue.mod2(1)
    assert len(lifted.levels) == times
    for level in lifted.levels:
        assert level.dimension == -1
        assert level.value == lifted.base_value
        assert level.diffeo.is_torelli
        assert level.value.trace[0] == 'R2'
        assert replay(level.value) == level.value
    assert len(lifted.top.manifold) == 2 + times


def test_blowup_lift_with_negative_kappa():
    lifted = blowup_lift(build_td(3), 2, kappa=-1)
    assert lifted.top.value == CertifiedValue.mod2(1)


def test_blowup_lift_arguments():
    family = build_td(1)
    with pytest.raises(PreconditionError):
        blowup_lift(family, 0)
    with pytest.raises(PreconditionError):
        blowup_lift(family, 1, kappa=3)


# ---- O_q sums ---------------------------------------------------------------

def test_oq_class():
    X = base_manifold()
    oq = OqClass(3)
    assert fiber_spinc(X, -3) in oq
    assert fiber_spinc(X, -1) not in oq
    with pytest.raises(PreconditionError):
        OqClass(2)
    with pytest.raises(PreconditionError):
        OqClass(-1)


def oq_sample(X):
    """Fiber classes of several divisibilities plus square-zero classes of divisibility 1."""
    sample = [fiber_spinc(X, j) for j in (-7, -5, -3, -1, 1, 3, 5, 7)]
    sample += [SpinCClass(X, c) for c in enumerate_characteristics(X.lattice, 0, 2)[::97]]
    return sample


def test_oq_classes_are_disjoint():
    X = base_manifold()
    classes = [OqClass(q) for q in (1, 3, 5, 7, 9)]
    for s in oq_sample(X):
        owners = [oq.q for oq in classes if s in oq]
        assert owners == [divisibility(s.c)]


@pytest.mark.parametrize('seed', range(25))
def test_oq_classes_are_automorphism_invariant(seed):
    X = base_manifold()
    psi = random_automorphism(X.lattice, seed, 8)
    for s in oq_sample(X):
        image = SpinCClass(X, psi.apply(s.c))
        for q in (1, 3, 5, 7):
            assert (s in OqClass(q)) == (image in OqClass(q)), (q, s)


@pytest.mark.slow
def test_oq_classes_are_automorphism_invariant_fuzz():
    X = base_manifold()
    sample = oq_sample(X)
    for seed in range(1_000):
        psi = random_automorphism(X.lattice, seed, 8)
        for s in sample:
            image = SpinCClass(X, psi.apply(s.c))
            assert divisibility(image.c) == divisibility(s.c)
            assert image.square == 0


def test_candidate_support_of_t3():
    support = candidate_support(build_td(3).td)
    X = base_manifold()
    expected = {fiber_spinc(X, j).c.coords for j in (-3, -1, 1, 3)}
    assert support == expected


def test_candidate_support_of_identity_is_empty():
    assert candidate_support(DiffeoExpr.identity(base_manifold())) == set()


def test_oq_sum_with_empty_window():
    result = sw_OQ(build_td(1).td, q=3, bound=2)
    assert result.contributions == []
    assert result.total == CertifiedValue.integer(0)
    assert result.support_captured
    assert result.to_dict()['nonzero'] == []


def test_oq_sum_preconditions():
    family = build_td(1)
    with pytest.raises(PreconditionError):
        sw_OQ(family.f0, q=1, bound=1)
    with pytest.raises(PreconditionError):
        sw_OQ(family.td, q=2, bound=1)


@pytest.mark.slow
def test_oq_sum_sees_t1_on_its_class():
    family = build_td(1)
    result = sw_OQ(family.td, q=1, bound=3)
    assert result.contribution(family.sd) == CertifiedValue.mod2(1)
    assert result.support_captured
    assert result.certified_count + result.unknown_count == len(result.contributions)
