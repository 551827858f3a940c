"""Generalized complex structures on real tori, as exact 4n x 4n matrices.

Coordinates are ordered (x_1..x_n, y_1..y_n, dx_1..dx_n, dy_1..dy_n), so the
two T-duality conjugations are literally the permutation matrices swapping
the second/fourth and first/third blocks of size n.
"""

from __future__ import annotations

from dataclasses import dataclass

from .exact import I, QC, QCMat, SingularMatrixError, rat


class NotPositiveDefinite(ValueError):
    pass


class SingularOmega(ValueError):
    pass


class NotAlternating(ValueError):
    pass


class InvalidStructure(ValueError):
    pass


def pairing_matrix(n: int) -> QCMat:
    """The natural pairing <X+a, Y+b> = a(Y) + b(X) in block form."""
    z = QCMat.zeros(2 * n, 2 * n)
    i2 = QCMat.identity(2 * n)
    return QCMat.blocks([[z, i2], [i2, z]])


def _perm_blocks(n: int, order) -> QCMat:
    """4n x 4n block permutation sending block i to position order[i]."""
    blocks = [[QCMat.zeros(n, n) for _ in range(4)] for _ in range(4)]
    for i, j in enumerate(order):
        blocks[i][j] = QCMat.identity(n)
    return QCMat.blocks(blocks)


def g24_matrix(n: int) -> QCMat:
    return _perm_blocks(n, (0, 3, 2, 1))


def g13_matrix(n: int) -> QCMat:
    return _perm_blocks(n, (2, 1, 0, 3))


@dataclass(frozen=True)
class GCStructure:
    """A pairing-preserving complex structure on (tangent + cotangent) data."""

    n: int
    M: QCMat

    def __post_init__(self):
        d = 4 * self.n
        if self.M.rows != d or self.M.cols != d:
            raise InvalidStructure(f"expected {d}x{d} matrix")
        if not (self.M @ self.M == -QCMat.identity(d)):
            raise InvalidStructure("matrix does not square to -I")
        q = pairing_matrix(self.n)
        if not (self.M.transpose() @ q @ self.M == q):
            raise InvalidStructure("matrix does not preserve the pairing")


@dataclass(frozen=True)
class BFieldForm:
    """An alternating 2n x 2n form used to shear a structure."""

    n: int
    Bmat: QCMat

    def __post_init__(self):
        if self.Bmat.rows != 2 * self.n or self.Bmat.cols != 2 * self.n:
            raise ValueError("B form must be 2n x 2n")
        if not self.Bmat.is_alternating():
            raise NotAlternating("B form must be alternating")


def split_real_imag(t: QCMat):
    return t.real(), t.imag()


def gcs_from_complex_structure(t: QCMat) -> GCStructure:
    """Structure attached to the complex torus with period matrix ``t``."""
    n = t.rows
    tr, ti = split_real_imag(t)
    if not ti.is_positive_definite():
        raise NotPositiveDefinite("imaginary part is not positive definite")
    tii = ti.inverse()
    z = QCMat.zeros(n, n)
    m = QCMat.blocks([
        [-(tr @ tii), -ti - tr @ tii @ tr, z, z],
        [tii, tii @ tr, z, z],
        [z, z, (tii.transpose() @ tr.transpose()), -tii.transpose()],
        [z, z, ti.transpose() + tr.transpose() @ tii.transpose() @ tr.transpose(),
         -(tr.transpose() @ tii.transpose())],
    ])
    return GCStructure(n=n, M=m)


def gcs_from_symplectic(omega: QCMat) -> GCStructure:
    """Structure of a (real) symplectic form given by the n x n matrix omega."""
    n = omega.rows
    z = QCMat.zeros(n, n)
    omega_rep = QCMat.blocks([[z, -omega], [omega.transpose(), z]])
    try:
        inv = omega_rep.inverse()
    except SingularMatrixError as e:
        raise SingularOmega("symplectic matrix is singular") from e
    z2 = QCMat.zeros(2 * n, 2 * n)
    m = QCMat.blocks([[z2, -inv], [omega_rep, z2]])
    return GCStructure(n=n, M=m)


def b_field_transform(s: GCStructure, b: BFieldForm) -> GCStructure:
    """Shear conjugation by [[I, 0], [B, I]]."""
    if b.n != s.n:
        raise ValueError("dimension mismatch")
    n2 = 2 * s.n
    i2 = QCMat.identity(n2)
    z2 = QCMat.zeros(n2, n2)
    lo = QCMat.blocks([[i2, z2], [b.Bmat, i2]])
    hi = QCMat.blocks([[i2, z2], [-b.Bmat, i2]])
    return GCStructure(n=s.n, M=lo @ s.M @ hi)


def gcs_from_complexified_symplectic(b: QCMat, omega: QCMat) -> GCStructure:
    """Structure of the complexified symplectic form with matrix B + i*omega."""
    n = omega.rows
    z = QCMat.zeros(n, n)
    btilde = QCMat.blocks([[z, -b], [b.transpose(), z]])
    return b_field_transform(gcs_from_symplectic(omega),
                             BFieldForm(n=n, Bmat=btilde))


def mirror_g24(s: GCStructure) -> GCStructure:
    g = g24_matrix(s.n)
    return GCStructure(n=s.n, M=g @ s.M @ g)


def mirror_g13(s: GCStructure) -> GCStructure:
    g = g13_matrix(s.n)
    return GCStructure(n=s.n, M=g @ s.M @ g)


@dataclass(frozen=True)
class MirrorRelationReport:
    """Residual matrices of the nine compatibility relations.

    All residuals vanish exactly when the complexified symplectic matrix is
    the negative transposed inverse of the period matrix.
    """

    tau: QCMat
    residuals: dict

    @property
    def all_zero(self) -> bool:
        return all(m.is_zero() for m in self.residuals.values())

    def failing(self):
        return [k for k, m in self.residuals.items() if not m.is_zero()]


class SingularT(ValueError):
    pass


def check_mirror_relations(t: QCMat) -> MirrorRelationReport:
    n = t.rows
    tr, ti = split_real_imag(t)
    if not ti.is_positive_definite():
        raise NotPositiveDefinite("imaginary part is not positive definite")
    if t.det().is_zero():
        raise SingularT("period matrix is singular")
    tau = -(t.inverse().transpose())
    b, omega = split_real_imag(tau)
    tii = ti.inverse()
    wti = omega.inverse().transpose()  # (omega^{-1})^t
    ident = QCMat.identity(n)
    res = {
        "eq1": -(tr @ tii) - wti @ b.transpose(),
        "eq2": (-ti - tr @ tii @ tr) + wti,
        "eq3": tii - omega.transpose() - b.transpose() @ wti @ b.transpose(),
        "eq4": tii @ tr + b.transpose() @ wti,
        "eq5": -(tr.transpose() @ omega) - ti.transpose() @ b,
        "eq6": tr.transpose() @ b
               + tr.transpose() @ tii.transpose() @ tr.transpose() @ omega,
        "eq7": ti.transpose() @ omega - tr.transpose() @ b - ident,
        "right": -(t.transpose() @ tau) - ident,
        "left": tau @ (-t.transpose()) - ident,
    }
    return MirrorRelationReport(tau=tau, residuals=res)


def solve_mirror_tau(t: QCMat) -> QCMat:
    """Recover the complexified symplectic matrix from the matching equations.

    Solves the block-matching system directly (without inverting the period
    matrix as a complex matrix) and returns B + i*omega.
    """
    tr, ti = split_real_imag(t)
    tii = ti.inverse()
    core = (ti + tr @ tii @ tr).transpose()
    if core.det().is_zero():
        raise SingularT("period matrix is singular; no symplectic mirror "
                        "without an integer shift")
    omega = core.inverse()
    b = -(omega @ tr.transpose() @ tii.transpose())
    return b + omega.scale(I)
