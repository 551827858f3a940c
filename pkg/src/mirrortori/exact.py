"""Exact linear algebra over the Gaussian rationals and over the integers.

Everything in here is exact: scalars are rational-complex numbers (``QC``),
matrices are immutable row-major grids of them, and the integer routines
(Smith normal form, Hermite basis) work with unbounded Python ints.  No
floats enter any computation in this module.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

try:
    from gmpy2 import mpq as _mpq

    def rat(x, y=None):
        return _mpq(x) if y is None else _mpq(x, y)

except ImportError:  # pragma: no cover - gmpy2 is normally present
    def rat(x, y=None):
        return Fraction(x) if y is None else Fraction(x, y)


RatLike = Union[int, Fraction, str]


class SingularMatrixError(ZeroDivisionError):
    """Raised when an inverse of an exactly singular matrix is requested."""


class QC:
    """A Gaussian rational: exact rational real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", rat(re))
        object.__setattr__(self, "im", rat(im))

    def __setattr__(self, name, value):
        raise AttributeError("QC is immutable")

    @staticmethod
    def of(x) -> "QC":
        if isinstance(x, QC):
            return x
        if isinstance(x, complex):
            raise TypeError("refusing implicit float -> exact conversion")
        return QC(x)

    def __add__(self, other):
        o = QC.of(other)
        return QC(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = QC.of(other)
        return QC(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return QC.of(other) - self

    def __neg__(self):
        return QC(-self.re, -self.im)

    def __mul__(self, other):
        o = QC.of(other)
        return QC(self.re * o.re - self.im * o.im,
                  self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = QC.of(other)
        d = o.re * o.re + o.im * o.im
        if d == 0:
            raise ZeroDivisionError("division by zero QC")
        return QC((self.re * o.re + self.im * o.im) / d,
                  (self.im * o.re - self.re * o.im) / d)

    def __rtruediv__(self, other):
        return QC.of(other) / self

    def conj(self) -> "QC":
        return QC(self.re, -self.im)

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def is_real(self) -> bool:
        return self.im == 0

    def __eq__(self, other):
        try:
            o = QC.of(other)
        except TypeError:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((Fraction(self.re), Fraction(self.im)))

    def __complex__(self):
        return float(self.re) + 1j * float(self.im)

    def __repr__(self):
        if self.im == 0:
            return f"QC({self.re})"
        return f"QC({self.re}, {self.im})"


ZERO = QC(0)
ONE = QC(1)
I = QC(0, 1)


def _coerce_entry(x) -> QC:
    if isinstance(x, QC):
        return x
    if isinstance(x, str):
        return QC(rat(x))
    return QC(x)


class QCMat:
    """Immutable matrix with ``QC`` entries."""

    __slots__ = ("rows", "cols", "_d")

    def __init__(self, entries: Sequence[Sequence]):
        d = tuple(tuple(_coerce_entry(x) for x in row) for row in entries)
        if not d or not d[0]:
            raise ValueError("empty matrix")
        if len({len(r) for r in d}) != 1:
            raise ValueError("ragged rows")
        object.__setattr__(self, "rows", len(d))
        object.__setattr__(self, "cols", len(d[0]))
        object.__setattr__(self, "_d", d)

    def __setattr__(self, name, value):
        raise AttributeError("QCMat is immutable")

    # -- constructors -------------------------------------------------
    @staticmethod
    def identity(n: int) -> "QCMat":
        return QCMat([[ONE if i == j else ZERO for j in range(n)]
                      for i in range(n)])

    @staticmethod
    def zeros(r: int, c: int) -> "QCMat":
        return QCMat([[ZERO] * c for _ in range(r)])

    @staticmethod
    def from_int(m: Sequence[Sequence[int]]) -> "QCMat":
        return QCMat(m)

    @staticmethod
    def diag(*vals) -> "QCMat":
        n = len(vals)
        return QCMat([[_coerce_entry(vals[i]) if i == j else ZERO
                       for j in range(n)] for i in range(n)])

    @staticmethod
    def blocks(grid: Sequence[Sequence["QCMat"]]) -> "QCMat":
        rows = []
        for brow in grid:
            h = brow[0].rows
            if any(b.rows != h for b in brow):
                raise ValueError("inconsistent block heights")
            for i in range(h):
                rows.append([x for b in brow for x in b._d[i]])
        return QCMat(rows)

    # -- basic access -------------------------------------------------
    def __getitem__(self, ij) -> QC:
        i, j = ij
        return self._d[i][j]

    def row(self, i) -> tuple:
        return self._d[i]

    def tolists(self):
        return [list(r) for r in self._d]

    def __eq__(self, other):
        if not isinstance(other, QCMat):
            return NotImplemented
        return self._d == other._d

    def __hash__(self):
        return hash(self._d)

    def __repr__(self):
        return f"QCMat({self.tolists()!r})"

    # -- arithmetic ---------------------------------------------------
    def __add__(self, other: "QCMat") -> "QCMat":
        self._shape_check(other)
        return QCMat([[a + b for a, b in zip(ra, rb)]
                      for ra, rb in zip(self._d, other._d)])

    def __sub__(self, other: "QCMat") -> "QCMat":
        self._shape_check(other)
        return QCMat([[a - b for a, b in zip(ra, rb)]
                      for ra, rb in zip(self._d, other._d)])

    def __neg__(self) -> "QCMat":
        return QCMat([[-a for a in r] for r in self._d])

    def scale(self, c) -> "QCMat":
        c = _coerce_entry(c)
        return QCMat([[a * c for a in r] for r in self._d])

    def __matmul__(self, other: "QCMat") -> "QCMat":
        if self.cols != other.rows:
            raise ValueError("shape mismatch in matmul")
        ot = list(zip(*other._d))
        out = []
        for r in self._d:
            out.append([sum((a * b for a, b in zip(r, c)), ZERO) for c in ot])
        return QCMat(out)

    def transpose(self) -> "QCMat":
        return QCMat(list(zip(*self._d)))

    def conj(self) -> "QCMat":
        return QCMat([[a.conj() for a in r] for r in self._d])

    def real(self) -> "QCMat":
        return QCMat([[QC(a.re) for a in r] for r in self._d])

    def imag(self) -> "QCMat":
        return QCMat([[QC(a.im) for a in r] for r in self._d])

    # -- predicates ---------------------------------------------------
    def is_zero(self) -> bool:
        return all(a.is_zero() for r in self._d for a in r)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_symmetric(self) -> bool:
        return self.is_square() and all(
            self._d[i][j] == self._d[j][i]
            for i in range(self.rows) for j in range(i))

    def is_alternating(self) -> bool:
        return self.is_square() and all(
            self._d[i][j] == -self._d[j][i]
            for i in range(self.rows) for j in range(i + 1))

    def is_real(self) -> bool:
        return all(a.is_real() for r in self._d for a in r)

    def _shape_check(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")

    # -- elimination-based operations ---------------------------------
    def det(self) -> QC:
        """Determinant by fraction-free (Bareiss) elimination."""
        if not self.is_square():
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        a = [list(r) for r in self._d]
        sign = 1
        prev = ONE
        for k in range(n - 1):
            if a[k][k].is_zero():
                for i in range(k + 1, n):
                    if not a[i][k].is_zero():
                        a[k], a[i] = a[i], a[k]
                        sign = -sign
                        break
                else:
                    return ZERO
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]) / prev
                a[i][k] = ZERO
            prev = a[k][k]
        d = a[n - 1][n - 1]
        return d if sign == 1 else -d

    def rank(self) -> int:
        a = [list(r) for r in self._d]
        rank = 0
        for col in range(self.cols):
            piv = None
            for i in range(rank, self.rows):
                if not a[i][col].is_zero():
                    piv = i
                    break
            if piv is None:
                continue
            a[rank], a[piv] = a[piv], a[rank]
            pv = a[rank][col]
            for i in range(rank + 1, self.rows):
                if not a[i][col].is_zero():
                    f = a[i][col] / pv
                    a[i] = [x - f * y for x, y in zip(a[i], a[rank])]
            rank += 1
            if rank == self.rows:
                break
        return rank

    def inverse(self) -> "QCMat":
        if not self.is_square():
            raise ValueError("inverse of a non-square matrix")
        n = self.rows
        a = [list(r) + [ONE if i == j else ZERO for j in range(n)]
             for i, r in enumerate(self._d)]
        for col in range(n):
            piv = None
            for i in range(col, n):
                if not a[i][col].is_zero():
                    piv = i
                    break
            if piv is None:
                raise SingularMatrixError("matrix is singular")
            a[col], a[piv] = a[piv], a[col]
            pv = a[col][col]
            a[col] = [x / pv for x in a[col]]
            for i in range(n):
                if i != col and not a[i][col].is_zero():
                    f = a[i][col]
                    a[i] = [x - f * y for x, y in zip(a[i], a[col])]
        return QCMat([r[n:] for r in a])

    def row_basis_indices(self) -> list:
        """Indices of the first maximal set of linearly independent rows."""
        basis = []
        echelon = []  # reduced rows spanning the chosen ones
        for i in range(self.rows):
            v = list(self._d[i])
            for r in echelon:
                lead = next(j for j, x in enumerate(r) if not x.is_zero())
                if not v[lead].is_zero():
                    f = v[lead] / r[lead]
                    v = [x - f * y for x, y in zip(v, r)]
            if any(not x.is_zero() for x in v):
                echelon.append(v)
                basis.append(i)
        return basis

    def submatrix(self, row_idx: Iterable[int], col_idx: Iterable[int]) -> "QCMat":
        ri, ci = list(row_idx), list(col_idx)
        return QCMat([[self._d[i][j] for j in ci] for i in ri])

    def is_positive_definite(self) -> bool:
        """Sylvester test on the symmetric part of a real square matrix."""
        if not (self.is_square() and self.is_real()):
            raise ValueError("positive definiteness needs a real square matrix")
        sym = (self + self.transpose()).scale(rat(1, 2))
        for k in range(1, self.rows + 1):
            mk = sym.submatrix(range(k), range(k)).det()
            if not (mk.im == 0 and mk.re > 0):
                return False
        return True


def exact_det(m: QCMat) -> QC:
    return m.det()


def exact_rank(m: QCMat) -> int:
    return m.rank()


def exact_inverse(m: QCMat) -> QCMat:
    return m.inverse()


# ---------------------------------------------------------------------------
# Integer matrices: Smith normal form and Hermite basis
# ---------------------------------------------------------------------------

IntMatrix = Sequence[Sequence[int]]


@dataclass(frozen=True)
class SmithDecomposition:
    """Unimodular left/right transforms and the diagonal of divisors.

    ``left @ A @ right == diag(divisors)`` with both transforms of
    determinant +-1 and each divisor dividing the next.
    """

    left: tuple
    right: tuple
    divisors: tuple

    def diagonal(self, n: int) -> list:
        d = list(self.divisors) + [0] * (n - len(self.divisors))
        return [[d[i] if i == j else 0 for j in range(n)] for i in range(n)]


def _int_matmul(a, b):
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(r, c)) for c in bt] for r in a]


def smith_normal_form(a: IntMatrix) -> SmithDecomposition:
    """Smith normal form of a square integer matrix.

    Pivot choice is the smallest nonzero absolute value, ties broken in
    row-major order, which makes the transforms deterministic.
    """
    n = len(a)
    if any(len(r) != n for r in a):
        raise ValueError("matrix must be square")
    m = [list(r) for r in a]
    left = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    right = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        m[i], m[j] = m[j], m[i]
        left[i], left[j] = left[j], left[i]

    def swap_cols(i, j):
        for r in m:
            r[i], r[j] = r[j], r[i]
        for r in right:
            r[i], r[j] = r[j], r[i]

    def addmul_row(dst, src, f):
        m[dst] = [x + f * y for x, y in zip(m[dst], m[src])]
        left[dst] = [x + f * y for x, y in zip(left[dst], left[src])]

    def addmul_col(dst, src, f):
        for r in m:
            r[dst] += f * r[src]
        for r in right:
            r[dst] += f * r[src]

    def negate_row(i):
        m[i] = [-x for x in m[i]]
        left[i] = [-x for x in left[i]]

    def pivot(k):
        best = None
        for i in range(k, n):
            for j in range(k, n):
                v = abs(m[i][j])
                if v and (best is None or v < best[0]):
                    best = (v, i, j)
        return best

    for k in range(n):
        while True:
            p = pivot(k)
            if p is None:
                break
            _, pi, pj = p
            if pi != k:
                swap_rows(k, pi)
            if pj != k:
                swap_cols(k, pj)
            done = True
            for i in range(k + 1, n):
                if m[i][k]:
                    addmul_row(i, k, -(m[i][k] // m[k][k]))
                    if m[i][k]:
                        done = False
            for j in range(k + 1, n):
                if m[k][j]:
                    addmul_col(j, k, -(m[k][j] // m[k][k]))
                    if m[k][j]:
                        done = False
            if done:
                # absorb any entry not divisible by the pivot
                bad = None
                for i in range(k + 1, n):
                    for j in range(k + 1, n):
                        if m[i][j] % m[k][k]:
                            bad = i
                            break
                    if bad is not None:
                        break
                if bad is None:
                    break
                addmul_row(k, bad, 1)
        if m[k][k] < 0:
            negate_row(k)

    divisors = tuple(m[i][i] for i in range(n) if m[i][i] != 0)
    return SmithDecomposition(left=tuple(map(tuple, left)),
                              right=tuple(map(tuple, right)),
                              divisors=divisors)


def hermite_column_basis(mat: IntMatrix) -> list:
    """Lower-triangular column basis of the lattice spanned by the columns.

    The input is an n x k integer matrix of full row rank; the result is an
    n x n lower-triangular matrix with positive diagonal whose columns
    generate the same lattice.
    """
    n = len(mat)
    cols = [list(c) for c in zip(*mat)]
    basis = []
    row = 0
    while row < n:
        live = [c for c in cols if any(c[row:])]
        # clear row `row` down to a single gcd column by column operations
        while True:
            nz = [c for c in live if c[row] != 0]
            if not nz:
                raise ValueError("columns do not have full row rank")
            if len(nz) == 1:
                lead = nz[0]
                break
            nz.sort(key=lambda c: abs(c[row]))
            a, b = nz[0], nz[1]
            f = b[row] // a[row]
            for i in range(n):
                b[i] -= f * a[i]
        if lead[row] < 0:
            for i in range(n):
                lead[i] = -lead[i]
        basis.append(lead)
        live.remove(lead)
        cols = live
        row += 1
    # canonicalize: 0 <= H[i][j] < H[i][i] for j < i (column-style HNF)
    for i in range(1, n):
        for j in range(i):
            f = basis[j][i] // basis[i][i]
            if f:
                for k in range(n):
                    basis[j][k] -= f * basis[i][k]
    return [[basis[j][i] for j in range(n)] for i in range(n)]
