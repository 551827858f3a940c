"""Complex tori, the integer shift that desingularizes a period matrix, and
the induced biholomorphism onto a torus with invertible period matrix."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from .exact import QC, QCMat, SingularMatrixError
from .gcs import (BFieldForm, GCStructure, NotPositiveDefinite,
                  b_field_transform)


@dataclass(frozen=True)
class ComplexTorus:
    n: int
    T: QCMat

    def __post_init__(self):
        if self.T.rows != self.n or self.T.cols != self.n:
            raise ValueError("period matrix has wrong shape")
        if not self.T.imag().is_positive_definite():
            raise NotPositiveDefinite(
                "imaginary part of the period matrix is not positive definite")


@dataclass(frozen=True)
class ComplexifiedSymplecticTorus:
    n: int
    tau: QCMat

    def __post_init__(self):
        if self.tau.imag().det().is_zero():
            raise ValueError("imaginary part of tau is singular")


@dataclass(frozen=True)
class DeltaShift:
    delta: tuple          # n x n integer matrix, rows as tuples
    T: QCMat

    def __post_init__(self):
        if (self.T - QCMat.from_int(self.delta)).det().is_zero():
            raise ValueError("shift does not make the period matrix invertible")

    def as_qc(self) -> QCMat:
        return QCMat.from_int(self.delta)

    def ones_count(self) -> int:
        return sum(1 for r in self.delta for x in r if x != 0)


def construct_delta(t: QCMat) -> list:
    """Integer matrix with unit entries making ``t - delta`` invertible.

    Works for any square complex matrix of nonzero rank; the shift has one
    unit entry for each row outside a chosen row basis.  By multilinearity
    of the determinant, det(t - delta) equals the chosen row-basis minor up
    to sign, so it is nonzero by construction.
    """
    n = t.rows
    basis_rows = t.row_basis_indices()
    m = len(basis_rows)
    if m == 0:
        raise ValueError("zero matrix admits no rank-based shift")
    delta = [[0] * n for _ in range(n)]
    if m == n:
        return delta
    sub = t.submatrix(basis_rows, range(n))
    # lexicographically first independent column set of the basis rows
    sel_cols = []
    for j in range(n):
        trial = sub.submatrix(range(m), sel_cols + [j])
        if trial.rank() == len(sel_cols) + 1:
            sel_cols.append(j)
        if len(sel_cols) == m:
            break
    i_m = sel_cols[-1]
    comp_high = [j for j in range(i_m + 1, n)]
    comp_low = [j for j in range(i_m) if j not in sel_cols]
    comp_order = comp_high + comp_low
    dep_rows = [i for i in range(n) if i not in basis_rows]
    for row, col in zip(dep_rows, comp_order):
        delta[row][col] = 1
    return delta


def find_delta(t: QCMat, require_pd: bool = True) -> DeltaShift:
    """A deterministic shift with det(t - delta) != 0, verified exactly."""
    if require_pd and not t.imag().is_positive_definite():
        raise NotPositiveDefinite(
            "imaginary part of the period matrix is not positive definite")
    n = t.rows
    if not t.det().is_zero():
        return DeltaShift(delta=tuple((0,) * n for _ in range(n)), T=t)
    delta = construct_delta(t)
    if not (t - QCMat.from_int(delta)).det().is_zero():
        return DeltaShift(delta=tuple(map(tuple, delta)), T=t)
    # cannot happen by the multilinearity argument; cheap seeded fallback
    rng = random.Random(0)
    for _ in range(10000):
        cand = [[rng.choice((-1, 0, 1)) for _ in range(n)] for _ in range(n)]
        if not (t - QCMat.from_int(cand)).det().is_zero():
            return DeltaShift(delta=tuple(map(tuple, cand)), T=t)
    raise RuntimeError("no desingularizing integer shift found")


def mirror_partner(t: QCMat, shift: DeltaShift) -> ComplexifiedSymplecticTorus:
    """The complexified symplectic torus with form matrix t - delta."""
    tau = t - shift.as_qc()
    return ComplexifiedSymplecticTorus(n=t.rows, tau=tau)


def delta_shift_matrix(delta, n: int) -> QCMat:
    d = QCMat.from_int(delta)
    z = QCMat.zeros(n, n)
    return QCMat.blocks([[z, d], [-d.transpose(), z]])


def delta_shift_transform(s: GCStructure, delta) -> GCStructure:
    """Shear by [[O, delta], [-delta^t, O]]; touches only the B-field part."""
    b = BFieldForm(n=s.n, Bmat=delta_shift_matrix(delta, s.n))
    return b_field_transform(s, b)


@dataclass(frozen=True)
class Biholomorphism:
    """z -> (-T + delta)^{-1} z between tori with period matrices T and T'."""

    T: QCMat
    delta: tuple
    Tprime: QCMat = field(init=False)

    def __post_init__(self):
        m = -self.T + QCMat.from_int(self.delta)
        try:
            object.__setattr__(self, "Tprime", m.inverse())
        except SingularMatrixError as e:
            raise SingularMatrixError("-T + delta is singular") from e

    @property
    def real_matrix(self) -> list:
        """Action on (x, y) in the universal cover, an integer matrix."""
        n = self.T.rows
        out = []
        for i in range(n):
            out.append([0] * n + [-1 if j == i else 0 for j in range(n)])
        for i in range(n):
            out.append([1 if j == i else 0 for j in range(n)]
                       + [self.delta[i][j] for j in range(n)])
        return out

    def lattice_generator_images(self):
        """Integer coordinates of phi(gamma) in the target lattice basis.

        Returns pairs (u, v) with phi(gamma) = 2*pi*(u + T' v) for each of
        the 2n source generators, certifying that phi maps lattice to
        lattice.
        """
        n = self.T.rows
        images = []
        for j in range(n):
            images.append(([0] * n, [1 if k == j else 0 for k in range(n)]))
        for k in range(n):
            images.append(([-1 if l == k else 0 for l in range(n)],
                           [self.delta[l][k] for l in range(n)]))
        return images

    def check_lattice_map(self) -> bool:
        n = self.T.rows
        gens = [QCMat([[1 if i == j else 0] for i in range(n)])
                for j in range(n)]
        gens += [self.T.submatrix(range(n), [k]) for k in range(n)]
        for g, (u, v) in zip(gens, self.lattice_generator_images()):
            target = QCMat([[u[i]] for i in range(n)]) \
                + self.Tprime @ QCMat([[v[i]] for i in range(n)])
            if not (self.Tprime @ g == target):
                return False
        return True


def biholomorphism(t: QCMat, shift: DeltaShift) -> Biholomorphism:
    return Biholomorphism(T=t, delta=shift.delta)
