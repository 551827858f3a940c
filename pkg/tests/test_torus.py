"""Desingularizing integer shifts, mirror partners of singular period
matrices, and the biholomorphism onto the shifted torus."""

import random

import pytest

from mirrortori.exact import QC, QCMat, I
from mirrortori.gcs import (NotPositiveDefinite, gcs_from_complex_structure,
                            gcs_from_complexified_symplectic, split_real_imag)
from mirrortori.torus import (biholomorphism, construct_delta,
                              delta_shift_transform, find_delta,
                              mirror_partner)
from mirrortori.verify import (EXAMPLE_DELTA, EXAMPLE_T, feasible_rank_classes,
                               staircase_family_T, random_singular_T)


def test_worked_example_shift_and_partner():
    shift = find_delta(EXAMPLE_T)
    assert shift.delta == EXAMPLE_DELTA
    assert shift.ones_count() == 1
    partner = mirror_partner(EXAMPLE_T, shift)
    assert partner.tau == EXAMPLE_T - QCMat.from_int(EXAMPLE_DELTA)
    tprime = (QCMat.from_int(EXAMPLE_DELTA) - EXAMPLE_T).inverse()
    assert tprime == QCMat([[QC(1, 1), I], [-I, QC(1)]])


def test_nonsingular_needs_no_shift():
    t = QCMat([[QC(0, 1)]])
    shift = find_delta(t)
    assert shift.delta == ((0,),)


def test_random_singular_classes():
    rng = random.Random(21)
    classes = feasible_rank_classes(nmax=6)
    assert (2, 1) in classes and (6, 5) in classes and len(classes) == 9
    for n, m in classes:
        for _ in range(10):
            t = random_singular_T(rng, n, m)
            assert t.rank() == m
            assert t.imag().is_positive_definite()
            shift = find_delta(t)
            assert not (t - shift.as_qc()).det().is_zero()
            assert shift.ones_count() == n - m
            assert all(x in (0, 1) for row in shift.delta for x in row)


def test_infeasible_rank_rejected():
    rng = random.Random(1)
    with pytest.raises(ValueError):
        random_singular_T(rng, 4, 1)


def test_non_pd_input_rejected():
    t = QCMat([[QC(0, -1), QC(0)], [QC(0), QC(0, 1)]])
    with pytest.raises(NotPositiveDefinite):
        find_delta(t)


def test_staircase_family_pattern():
    rng = random.Random(29)
    expected = {(2, 3), (3, 4), (4, 1)}
    for _ in range(10):
        t = staircase_family_T(rng)
        delta = construct_delta(t)
        ones = {(i, j) for i in range(5) for j in range(5) if delta[i][j]}
        assert ones == expected
        # shifted determinant equals the distinguished 2x2 minor up to sign
        det = (t - QCMat.from_int(delta)).det()
        minor = t.submatrix([0, 1], [0, 2]).det()
        assert det == minor or det == -minor
        assert not det.is_zero()


def test_shift_acts_only_on_b_field():
    # shearing by the delta form subtracts delta from the B-field block
    # and leaves the symplectic form untouched
    from mirrortori.verify import rnd_invertible, rnd_rat_matrix
    rng = random.Random(31)
    for _ in range(15):
        n = rng.randint(1, 3)
        b = rnd_rat_matrix(rng, n)
        omega = rnd_invertible(rng, n)
        delta = tuple(tuple(rng.randint(-1, 1) for _ in range(n))
                      for _ in range(n))
        sheared = delta_shift_transform(
            gcs_from_complexified_symplectic(b, omega), delta)
        direct = gcs_from_complexified_symplectic(
            b - QCMat.from_int(delta), omega)
        assert sheared.M == direct.M


def test_biholomorphism_lattice_map():
    rng = random.Random(37)
    cases = [(EXAMPLE_T, None)]
    for _ in range(10):
        n = rng.randint(2, 4)
        m = rng.randint((n + 1) // 2, n - 1)
        cases.append((random_singular_T(rng, n, m), None))
    for t, _ in cases:
        shift = find_delta(t)
        bh = biholomorphism(t, shift)
        assert bh.check_lattice_map()
        # the target period matrix inverts the shifted one with a sign
        assert bh.Tprime @ (shift.as_qc() - t) == QCMat.identity(t.rows)
