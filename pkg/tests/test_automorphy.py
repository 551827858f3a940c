"""Curvature factor, lattice pairings, the gauge transform relation, the
factor-of-automorphy intertwining, and the two symmetry-set enumerations."""

import random
from fractions import Fraction

import numpy as np
import pytest

from mirrortori.exact import QC, QCMat, I, rat
from mirrortori.bundles import BundleSpec
from mirrortori.automorphy import (ToleranceExceeded, classify_sets,
                                   curvature_factor, gauge_transform,
                                   im_pairings, verify_intertwining)
from mirrortori.verify import (EXAMPLE_DELTA, EXAMPLE_T, AUTOMORPHY_CASES,
                               random_admissible_A, rnd_T)

TPRIME = QCMat([[QC(1, 1), I], [-I, QC(1)]])
A1 = ((0, 1), (1, 1))
A2 = ((1, 1), (1, -1))


def test_curvature_factor_worked_example():
    # Im T is the identity here, so the scaled curvature matrix is just
    # the transposed slope matrix
    factor = curvature_factor(1, 1, A1, EXAMPLE_T)
    assert factor.Rhat == QCMat.from_int(A1).transpose()
    arr = factor.as_float()
    np.testing.assert_allclose(arr * 4 * np.pi,
                               np.array(A1, dtype=float).T)


def test_pairing_tables_worked_example():
    factor = curvature_factor(1, 1, A1, EXAMPLE_T)
    table = im_pairings(factor, EXAMPLE_T, EXAMPLE_DELTA)
    # lattice-lattice pairings are real
    assert table.gg.imag().is_zero()
    # mixed pairing: Im R(gamma_1, gamma'_2) = -pi * a_12 = -pi
    assert table.gp.imag()[0, 1] == QC(-1)
    assert table.gp.imag() == -QCMat.from_int(A1)
    assert table.pg.imag() == QCMat.from_int(A1)
    # shifted-shifted pairing sees the commutator of A with delta
    d = QCMat.from_int(EXAMPLE_DELTA)
    a = QCMat.from_int(A1)
    assert table.pp.imag() == a.transpose() @ d - d.transpose() @ a


def test_pairings_random_admissible():
    from mirrortori.bundles import compute_rank
    from mirrortori.torus import find_delta
    rng = random.Random(79)
    checked = 0
    for _ in range(30):
        n = rng.randint(2, 3)
        t = rnd_T(rng, n)
        shift = find_delta(t)
        tprime = (shift.as_qc() - t).inverse()
        a = random_admissible_A(rng, tprime)
        if not any(x for row in a for x in row):
            continue
        r = rng.randint(1, 3)
        rk = compute_rank(r, a)
        factor = curvature_factor(r, rk.rprime, a, t)
        table = im_pairings(factor, t, shift.delta)
        ratio = QC(rat(rk.rprime, r))
        assert table.gg.imag().is_zero()
        assert table.gp.imag() == -QCMat.from_int(a).scale(ratio)
        checked += 1
    assert checked > 15


def test_gauge_relation_exact():
    for label, t, delta, r, a, p, q in AUTOMORPHY_CASES:
        tprime = (QCMat.from_int(delta) - t).inverse()
        spec = BundleSpec.from_pq(r, a, p, q, tprime)
        gauge = gauge_transform(spec, t, delta)
        assert gauge.CalA.is_symmetric()
        assert gauge.CalA.conj() - gauge.CalA == \
            gauge.Rhat.scale(QC(0, rat(-1, 2)))


def test_intertwining_all_rank_cases():
    ranks = set()
    for label, t, delta, r, a, p, q in AUTOMORPHY_CASES:
        tprime = (QCMat.from_int(delta) - t).inverse()
        spec = BundleSpec.from_pq(r, a, p, q, tprime)
        rep = verify_intertwining(spec, t, delta, samples=12, tol=1e-8,
                                  seed=3)
        assert rep.passed
        assert rep.max_residual <= 1e-8
        assert rep.max_unitarity_defect <= 1e-12
        assert rep.cocycle_exact
        ranks.add(spec.rank.rprime)
    assert ranks == {1, 2, 4}


def test_intertwining_detects_wrong_shift():
    # running the check against a shift that disagrees with the one used
    # to build T' must blow past the tolerance
    label, t, delta, r, a, p, q = AUTOMORPHY_CASES[0]
    tprime = (QCMat.from_int(delta) - t).inverse()
    spec = BundleSpec.from_pq(r, a, p, q, tprime)
    from mirrortori.automorphy import ConditionViolated
    with pytest.raises((ToleranceExceeded, ConditionViolated)):
        verify_intertwining(spec, t, ((0, 0), (1, 1)), samples=6, tol=1e-8,
                            seed=3)


def test_classify_sets_worked_example():
    sm = classify_sets(EXAMPLE_T, EXAMPLE_DELTA, bound=1)
    assert A1 in sm.delta_only
    assert A2 in sm.syz_only
    assert len(sm.both) == 3
    assert len(sm.delta_only) == 4
    assert len(sm.syz_only) == 6
    assert sm.neither_count == 3 ** 4 - 3 - 4 - 6
