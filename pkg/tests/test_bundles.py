"""Bundle rank from elementary divisors, roots-of-unity transition
unitaries, pullback cocycles, and connection data."""

import itertools
import random
from fractions import Fraction

import numpy as np
import pytest

from mirrortori.exact import QC, QCMat, I, smith_normal_form
from mirrortori.rootsofunity import MonomialMatrix, kron
from mirrortori.bundles import (BundleSpec, build_unitary_set, compute_rank,
                                curvature_02_part, is_holomorphic,
                                pullback_connection, pullback_unitaries,
                                verify_pullback_cocycle)
from mirrortori.verify import (EXAMPLE_DELTA, EXAMPLE_T, rank_oracle,
                               random_admissible_A, rnd_T)

TPRIME = QCMat([[QC(1, 1), I], [-I, QC(1)]])
A1 = ((0, 1), (1, 1))
A2 = ((1, 1), (1, -1))


# ---------------------------------------------------------------------------
# monomial matrices over roots of unity
# ---------------------------------------------------------------------------

def rnd_monomial(rng, size, order):
    perm = list(range(size))
    rng.shuffle(perm)
    exps = [rng.randrange(order) for _ in range(size)]
    return MonomialMatrix(size=size, order=order, perm=tuple(perm),
                          exps=tuple(exps))


def test_monomial_algebra_matches_numpy():
    rng = random.Random(41)
    for _ in range(30):
        size = rng.randint(1, 5)
        order = rng.randint(1, 12)
        a = rnd_monomial(rng, size, order)
        b = rnd_monomial(rng, size, order)
        np.testing.assert_allclose((a @ b).to_complex(),
                                   a.to_complex() @ b.to_complex(),
                                   atol=1e-12)
        np.testing.assert_allclose(
            (a @ a.inverse()).to_complex(), np.eye(size), atol=1e-12)
        k = rng.randint(-3, 5)
        np.testing.assert_allclose(
            (a ** k).to_complex(),
            np.linalg.matrix_power(a.to_complex(), k), atol=1e-10)
        turns = a.det_phase_turns()
        det = np.linalg.det(a.to_complex())
        np.testing.assert_allclose(det,
                                   np.exp(2j * np.pi * float(turns)),
                                   atol=1e-10)


def test_kron_matches_numpy():
    rng = random.Random(43)
    for _ in range(15):
        parts = [rnd_monomial(rng, rng.randint(1, 3), 6) for _ in range(2)]
        np.testing.assert_allclose(
            kron(parts).to_complex(),
            np.kron(parts[0].to_complex(), parts[1].to_complex()),
            atol=1e-12)


# ---------------------------------------------------------------------------
# rank
# ---------------------------------------------------------------------------

def test_rank_worked_values():
    assert compute_rank(2, A1).rprime == 4
    assert compute_rank(1, A1).rprime == 1
    assert compute_rank(2, A2).rprime == 2
    assert compute_rank(4, ((2, 0), (0, 6))).rprime == 4
    assert compute_rank(3, ((0, 0), (0, 0))).rprime == 1


def test_rank_against_oracle():
    rng = random.Random(47)
    for r in range(1, 7):
        for entries in itertools.product(range(-6, 7), repeat=1):
            assert compute_rank(r, ((entries[0],),)).rprime == \
                rank_oracle(r, ((entries[0],),))
    for _ in range(200):
        n = rng.randint(2, 3)
        r = rng.randint(1, 6)
        a = tuple(tuple(rng.randint(-6, 6) for _ in range(n))
                  for _ in range(n))
        assert compute_rank(r, a).rprime == rank_oracle(r, a)


def test_rank_invariant_under_unimodular_transforms():
    rng = random.Random(53)
    shear = ((1, 1), (0, 1))
    swap = ((0, 1), (1, 0))
    for _ in range(50):
        r = rng.randint(1, 6)
        a = [[rng.randint(-5, 5) for _ in range(2)] for _ in range(2)]
        base = compute_rank(r, tuple(map(tuple, a))).rprime
        for u in (shear, swap):
            left = [[sum(u[i][k] * a[k][j] for k in range(2))
                     for j in range(2)] for i in range(2)]
            right = [[sum(a[i][k] * u[k][j] for k in range(2))
                      for j in range(2)] for i in range(2)]
            assert compute_rank(r, tuple(map(tuple, left))).rprime == base
            assert compute_rank(r, tuple(map(tuple, right))).rprime == base


# ---------------------------------------------------------------------------
# transition unitaries
# ---------------------------------------------------------------------------

UNITARY_CASES = [
    (1, A1), (2, A1), (3, A1), (2, A2), (2, ((1,),)), (5, ((2,),)),
    (4, ((2, 0), (0, 6))), (6, ((1, 2, 0), (2, 0, 1), (0, 1, 1))),
]


def test_unitary_relations_exact():
    for r, a in UNITARY_CASES:
        uset = build_unitary_set(r, a)
        assert uset.rprime == compute_rank(r, a).rprime
        assert uset.verify(a)


def test_unitary_matrices_are_unitary():
    for r, a in UNITARY_CASES:
        uset = build_unitary_set(r, a)
        for m in uset.V + uset.U:
            arr = m.to_complex()
            np.testing.assert_allclose(arr @ arr.conj().T,
                                       np.eye(m.size), atol=1e-12)


def test_commutator_scalars_numerically():
    for r, a in UNITARY_CASES:
        uset = build_unitary_set(r, a)
        n = len(a)
        zeta = np.exp(2j * np.pi / r)
        for j in range(n):
            for k in range(n):
                lhs = uset.U[k].to_complex() @ uset.V[j].to_complex()
                rhs = zeta ** a[k][j] * (uset.V[j].to_complex()
                                         @ uset.U[k].to_complex())
                np.testing.assert_allclose(lhs, rhs, atol=1e-10)


def test_pullback_cocycle():
    rng = random.Random(59)
    for r, a in UNITARY_CASES:
        n = len(a)
        uset = build_unitary_set(r, a)
        delta = tuple(tuple(rng.randint(0, 1) for _ in range(n))
                      for _ in range(n))
        pulled = pullback_unitaries(uset, a, delta)
        assert verify_pullback_cocycle(pulled, a, delta)


# ---------------------------------------------------------------------------
# bundle data and connections
# ---------------------------------------------------------------------------

def test_holomorphy_worked_values():
    assert is_holomorphic(A1, TPRIME)
    assert not is_holomorphic(A1, EXAMPLE_T)
    assert is_holomorphic(A2, EXAMPLE_T)
    assert not is_holomorphic(A2, TPRIME)


def test_mu_split_round_trip():
    rng = random.Random(61)
    for _ in range(25):
        n = rng.randint(1, 3)
        tprime = rnd_T(rng, n, nonsingular=True)
        p = [Fraction(rng.randint(-6, 6), rng.randint(1, 4))
             for _ in range(n)]
        q = [Fraction(rng.randint(-6, 6), rng.randint(1, 4))
             for _ in range(n)]
        a = tuple((0,) * n for _ in range(n))
        spec = BundleSpec.from_pq(1, a, p, q, tprime)
        mu = spec.mu()
        back = BundleSpec.from_mu(1, a, [mu[i, 0] for i in range(n)], tprime)
        assert back.p == spec.p and back.q == spec.q


def test_connection_02_flat_iff_holomorphic():
    rng = random.Random(67)
    checked_admissible = 0
    for _ in range(40):
        n = rng.randint(2, 3)
        tprime = rnd_T(rng, n, nonsingular=True)
        a = random_admissible_A(rng, tprime)
        if any(x for row in a for x in row):
            spec = BundleSpec.from_pq(1, a, (0,) * n, (0,) * n, tprime)
            conn = pullback_connection(spec, -(tprime.inverse().transpose()))
            assert conn.is_02_flat()
            assert curvature_02_part(a, tprime).is_symmetric()
            checked_admissible += 1
        b = tuple(tuple(rng.randint(-3, 3) for _ in range(n))
                  for _ in range(n))
        assert curvature_02_part(b, tprime).is_symmetric() == \
            is_holomorphic(b, tprime)
    assert checked_admissible > 10


def test_connection_coefficients():
    spec = BundleSpec.from_pq(2, A1, (0, 0), (0, 0), TPRIME)
    conn = pullback_connection(spec, EXAMPLE_T)
    half = QC(Fraction(1, 2))
    assert conn.xy_coeff == QCMat.from_int(A1).scale(-half)
    assert conn.curvature_xy == QCMat.from_int(A1).transpose().scale(-half)
    assert conn.is_02_flat()
