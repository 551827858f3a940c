"""Exact rational-complex linear algebra: determinants, inverses, rank,
Smith normal form, and the Hermite column basis."""

import itertools
import random
from fractions import Fraction
from math import gcd

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from mirrortori.exact import (QC, QCMat, I, exact_det, exact_inverse,
                              exact_rank, hermite_column_basis, rat,
                              smith_normal_form, _int_matmul)

rationals = st.builds(Fraction, st.integers(-12, 12), st.integers(1, 7))
qcs = st.builds(QC, rationals, rationals)


def rnd_int_matrix(rng, rows, cols, bound=6):
    return [[rng.randint(-bound, bound) for _ in range(cols)]
            for _ in range(rows)]


def rnd_rat_matrix(rng, n):
    return QCMat([[QC(Fraction(rng.randint(-4, 4), rng.randint(1, 3)),
                      Fraction(rng.randint(-4, 4), rng.randint(1, 3)))
                   for _ in range(n)] for _ in range(n)])


# ---------------------------------------------------------------------------
# scalar field
# ---------------------------------------------------------------------------

@given(qcs, qcs, qcs)
@settings(max_examples=60, deadline=None)
def test_field_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a - a == QC(0)


@given(qcs)
@settings(max_examples=60, deadline=None)
def test_multiplicative_inverse(a):
    if not a.is_zero():
        assert a * (QC(1) / a) == QC(1)
    assert a.conj().conj() == a


def test_scalar_basics():
    assert I * I == QC(-1)
    assert QC(rat(1, 2), rat(1, 3)) + QC(rat(1, 2), rat(-1, 3)) == QC(1)
    assert complex(QC(rat(1, 2), 1)) == 0.5 + 1j


# ---------------------------------------------------------------------------
# determinant, inverse, rank
# ---------------------------------------------------------------------------

def test_det_worked_values():
    t = QCMat([[I, QC(1)], [QC(-1), I]])
    assert t.det() == QC(0)
    assert t.rank() == 1
    shifted = t - QCMat.from_int(((0, 0), (0, 1)))
    assert shifted.det() == QC(0, -1)
    assert shifted.rank() == 2


def test_inverse_round_trips():
    rng = random.Random(11)
    done = 0
    while done < 200:
        n = rng.randint(1, 4)
        m = rnd_rat_matrix(rng, n)
        if m.det().is_zero():
            continue
        inv = exact_inverse(m)
        assert m @ inv == QCMat.identity(n)
        assert inv @ m == QCMat.identity(n)
        assert exact_det(m) * exact_det(inv) == QC(1)
        done += 1


def test_singular_inverse_raises():
    with pytest.raises(ZeroDivisionError):
        exact_inverse(QCMat([[QC(1), QC(2)], [QC(2), QC(4)]]))


def minor_rank(m: QCMat) -> int:
    """Largest k with a nonzero k x k minor."""
    best = 0
    for k in range(1, min(m.rows, m.cols) + 1):
        found = False
        for ri in itertools.combinations(range(m.rows), k):
            for ci in itertools.combinations(range(m.cols), k):
                if not m.submatrix(ri, ci).det().is_zero():
                    found = True
                    break
            if found:
                break
        if found:
            best = k
    return best


def test_rank_against_minor_enumeration():
    rng = random.Random(7)
    for _ in range(60):
        n = rng.randint(1, 4)
        m = rnd_rat_matrix(rng, n)
        if rng.random() < 0.5:
            # force a dependent row
            rows = m.tolists()
            i, j = rng.sample(range(n), k=min(2, n)) if n > 1 else (0, 0)
            rows[i] = rows[j]
            m = QCMat(rows)
        assert exact_rank(m) == minor_rank(m)


def test_positive_definite_vs_numpy():
    rng = random.Random(3)
    for _ in range(40):
        n = rng.randint(1, 4)
        g = rnd_rat_matrix(rng, n).real()
        sym = g.transpose() @ g
        arr = np.array([[float(Fraction(sym[i, j].re)) for j in range(n)]
                        for i in range(n)])
        eig = np.linalg.eigvalsh(arr)
        assert sym.is_positive_definite() == bool(eig.min() > 1e-12)


# ---------------------------------------------------------------------------
# Smith normal form
# ---------------------------------------------------------------------------

def minor_gcd_divisors(a):
    """Elementary divisors via gcds of k x k minors."""
    rows, cols = len(a), len(a[0])
    m = QCMat.from_int(a)
    g_prev = 1
    out = []
    for k in range(1, min(rows, cols) + 1):
        g = 0
        for ri in itertools.combinations(range(rows), k):
            for ci in itertools.combinations(range(cols), k):
                det = m.submatrix(ri, ci).det()
                g = gcd(g, abs(int(Fraction(det.re))))
        if g == 0:
            break
        out.append(g // g_prev)
        g_prev = g
    return out


def check_snf(a):
    rows, cols = len(a), len(a[0])
    snf = smith_normal_form(a)
    # unimodular transforms
    assert abs(int(Fraction(QCMat.from_int(snf.left).det().re))) == 1
    assert abs(int(Fraction(QCMat.from_int(snf.right).det().re))) == 1
    # product equals the stated diagonal
    prod = _int_matmul(_int_matmul(snf.left, a), snf.right)
    for i in range(rows):
        for j in range(cols):
            expect = snf.divisors[i] if i == j and i < len(snf.divisors) else 0
            assert prod[i][j] == expect
    # nonnegative divisibility chain
    ds = list(snf.divisors)
    assert all(d >= 0 for d in ds)
    for x, y in zip(ds, ds[1:]):
        assert y == 0 or (x != 0 and y % x == 0)
    # matches the minor-gcd oracle
    assert [d for d in ds if d] == minor_gcd_divisors(a)


def test_snf_small_exhaustive():
    for entries in itertools.product(range(-2, 3), repeat=4):
        a = [list(entries[:2]), list(entries[2:])]
        check_snf(a)


def test_snf_random():
    rng = random.Random(19)
    for _ in range(150):
        n = rng.randint(1, 3)
        check_snf(rnd_int_matrix(rng, n, n))


# ---------------------------------------------------------------------------
# Hermite column basis
# ---------------------------------------------------------------------------

def in_lattice(vec, h):
    """Integer membership test against a lower-triangular column basis."""
    n = len(h)
    v = list(vec)
    for i in range(n):
        if v[i] % h[i][i]:
            return False
        c = v[i] // h[i][i]
        for k in range(i, n):
            v[k] -= c * h[k][i]
    return all(x == 0 for x in v)


def test_hermite_shape_and_lattice():
    rng = random.Random(23)
    for _ in range(80):
        n = rng.randint(1, 4)
        extra = rng.randint(0, 2)
        mat = [[n + 1 if i == j else 0 for j in range(n)]
               + [rng.randint(-3, 3) for _ in range(extra)] for i in range(n)]
        h = hermite_column_basis(mat)
        for i in range(n):
            assert h[i][i] > 0
            for j in range(i + 1, n):
                assert h[i][j] == 0
            for j in range(i):
                assert 0 <= h[i][j] < h[i][i]
        # every input column lies in the lattice spanned by the basis
        ncols = len(mat[0])
        for j in range(ncols):
            assert in_lattice([mat[i][j] for i in range(n)], h)
        # the basis is invariant under column operations on the input,
        # which pins down the lattice itself (canonical form uniqueness)
        cols = list(range(ncols))
        rng.shuffle(cols)
        shuffled = [[mat[i][j] for j in cols] for i in range(n)]
        if ncols > 1:
            a, b = rng.sample(range(ncols), 2)
            for i in range(n):
                shuffled[i][a] += 2 * shuffled[i][b]
        assert hermite_column_basis(shuffled) == h
