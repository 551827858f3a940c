"""Vector bundles on the torus with invertible period matrix and their
pullbacks: rank via elementary divisors, unitary transition-matrix sets,
holomorphicity tests, and connection/curvature coefficient data.

A bundle is parametrized by a multiplicity r, an integer matrix A, a complex
translation vector mu (stored in units of 2*pi, so exact rationals) and a
set of r' x r' unitary matrices subject to three commutation relations.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .exact import QC, QCMat, SmithDecomposition, rat, smith_normal_form
from .rootsofunity import MonomialMatrix, kron


class ConstructionFailed(RuntimeError):
    pass


@dataclass(frozen=True)
class RankData:
    """Rank of the bundle attached to (r, A) through elementary divisors.

    Each nonzero divisor d_i gives d_i / r = num_i / den_i in lowest terms;
    the rank is the product of the denominators.
    """

    r: int
    divisors: tuple
    pairs: tuple      # (den_i, num_i) per nonzero divisor, gcd = 1
    rprime: int


def compute_rank(r: int, a) -> RankData:
    if r < 1:
        raise ValueError("multiplicity must be positive")
    snf = smith_normal_form(a)
    pairs = []
    rprime = 1
    for d in snf.divisors:
        f = Fraction(d, r)
        pairs.append((f.denominator, f.numerator))
        rprime *= f.denominator
    return RankData(r=r, divisors=snf.divisors,
                    pairs=tuple(pairs), rprime=rprime)


def is_holomorphic(a, tprime: QCMat) -> bool:
    """The bundle attached to A is holomorphic iff A T' is symmetric."""
    amat = a if isinstance(a, QCMat) else QCMat.from_int(a)
    return (amat @ tprime).is_symmetric()


def curvature_02_part(a, tprime: QCMat) -> QCMat:
    """Coefficient matrix of the antiholomorphic curvature part.

    Its antisymmetric part vanishes exactly when the bundle is holomorphic.
    """
    amat = a if isinstance(a, QCMat) else QCMat.from_int(a)
    d = tprime - tprime.conj()
    dinv = d.inverse()
    return (tprime @ dinv).transpose() @ amat.transpose() @ dinv


@dataclass(frozen=True)
class UnitarySet:
    """Matrices V_j, U_k of size r' with ζ^{-a_{kj}} U_k V_j = V_j U_k.

    Entries are r-th roots of unity stored exactly, so the three relations
    are checked with integer arithmetic.
    """

    n: int
    r: int
    rprime: int
    V: tuple
    U: tuple

    def verify(self, a) -> bool:
        for j in range(self.n):
            for k in range(self.n):
                if not (self.V[j] @ self.V[k] == self.V[k] @ self.V[j]):
                    return False
                if not (self.U[j] @ self.U[k] == self.U[k] @ self.U[j]):
                    return False
                lhs = (self.U[k] @ self.V[j]).scalar_mul(-a[k][j])
                if not (lhs == self.V[j] @ self.U[k]):
                    return False
        return True

    def det_phases_turns(self):
        """(xi, theta) with det V_j = e^{2 pi i xi_j}, det U_k likewise."""
        xi = tuple(v.det_phase_turns() for v in self.V)
        theta = tuple(u.det_phase_turns() for u in self.U)
        return xi, theta


def _factor_matrices(r: int, snf: SmithDecomposition, pairs):
    """Clock/shift pairs embedded in the tensor product of the SNF factors."""
    s = len(snf.divisors)
    sizes = [pairs[i][0] for i in range(s)]
    if not sizes:
        sizes = [1]
    clocks = []
    shifts = []
    for i in range(s):
        factors_c = []
        factors_s = []
        for l, sz in enumerate(sizes):
            if l == i:
                factors_c.append(MonomialMatrix.clock(sz, r, snf.divisors[i]))
                factors_s.append(MonomialMatrix.shift(sz, r).inverse())
            else:
                factors_c.append(MonomialMatrix.identity(sz, r))
                factors_s.append(MonomialMatrix.identity(sz, r))
        clocks.append(kron(factors_c))
        shifts.append(kron(factors_s))
    total = 1
    for sz in sizes:
        total *= sz
    return clocks, shifts, total


def _int_inverse(mat):
    """Inverse of a unimodular integer matrix, as integer lists."""
    inv = QCMat.from_int(mat).inverse()
    n = inv.rows
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            e = inv[i, j]
            if e.im != 0 or Fraction(e.re).denominator != 1:
                raise ValueError("matrix is not unimodular")
            row.append(int(e.re))
        out.append(row)
    return out


def build_unitary_set(r: int, a) -> UnitarySet:
    """Unitary transition matrices for (r, A), verified exactly.

    Diagonal clock matrices and inverse cyclic shifts on the tensor factors
    of the elementary-divisor decomposition are pushed back through the
    unimodular transforms; the commutator exponent of U_k with V_j is then
    the (k, j) entry of A by bilinearity.
    """
    n = len(a)
    rank = compute_rank(r, a)
    snf = smith_normal_form(a)
    clocks, shifts, size = _factor_matrices(r, snf, rank.pairs)
    s = len(snf.divisors)
    left_inv = _int_inverse(snf.left)
    right_inv = _int_inverse(snf.right)
    ident = MonomialMatrix.identity(size, r)
    vs = []
    for j in range(n):
        m = ident
        for l in range(s):
            m = m @ clocks[l] ** right_inv[l][j]
        vs.append(m)
    us = []
    for k in range(n):
        m = ident
        for l in range(s):
            m = m @ shifts[l] ** left_inv[k][l]
        us.append(m)
    out = UnitarySet(n=n, r=r, rprime=rank.rprime, V=tuple(vs), U=tuple(us))
    if out.verify(a):
        return out
    found = _search_unitary_set(r, a, snf, rank, clocks, shifts, size)
    if found is not None:
        return found
    raise ConstructionFailed(
        "no unitary set satisfying the commutation relations was found")


def _search_unitary_set(r, a, snf, rank, clocks, shifts, size, bound=2):
    """Bounded fallback: search small exponent assignments for V_j, U_k."""
    import itertools
    n = len(a)
    s = len(snf.divisors)
    if s == 0 or rank.rprime == 1:
        ident = MonomialMatrix.identity(size, r)
        cand = UnitarySet(n=n, r=r, rprime=rank.rprime,
                          V=(ident,) * n, U=(ident,) * n)
        return cand if cand.verify(a) else None
    if s * n > 4:
        return None
    rng = range(-bound, bound + 1)
    for vexp in itertools.product(rng, repeat=s * n):
        vs = []
        for j in range(n):
            m = MonomialMatrix.identity(size, r)
            for l in range(s):
                m = m @ clocks[l] ** vexp[l * n + j]
            vs.append(m)
        for uexp in itertools.product(rng, repeat=s * n):
            us = []
            for k in range(n):
                m = MonomialMatrix.identity(size, r)
                for l in range(s):
                    m = m @ shifts[l] ** uexp[k * s + l]
                us.append(m)
            cand = UnitarySet(n=n, r=r, rprime=rank.rprime,
                              V=tuple(vs), U=tuple(us))
            if cand.verify(a):
                return cand
    return None


def pullback_unitaries(uset: UnitarySet, a, delta) -> UnitarySet:
    """Transition matrices of the pulled-back bundle.

    The x-direction matrices become the old U_j; the y-direction matrices
    pick up delta-driven products of U's times V_k^{-1}.  The primed
    cocycle condition U'_j U'_k = ζ^{(A^t δ)_{jk} - (A^t δ)_{kj}} U'_k U'_j
    is implied and can be re-verified by the caller.
    """
    n = uset.n
    vprime = tuple(uset.U)
    uprime = []
    for k in range(n):
        m = MonomialMatrix.identity(uset.rprime, uset.r)
        for l in range(n):
            if delta[l][k]:
                m = m @ uset.U[l] ** delta[l][k]
        uprime.append(m @ uset.V[k].inverse())
    return UnitarySet(n=n, r=uset.r, rprime=uset.rprime,
                      V=vprime, U=tuple(uprime))


def verify_pullback_cocycle(uset: UnitarySet, a, delta) -> bool:
    """Exact check of the primed cocycle condition on a pulled-back set."""
    n = uset.n
    atd = [[sum(a[l][i] * delta[l][j] for l in range(n)) for j in range(n)]
           for i in range(n)]
    for j in range(n):
        for k in range(n):
            if not (uset.V[j] @ uset.V[k] == uset.V[k] @ uset.V[j]):
                return False
            lhs = uset.U[j] @ uset.U[k]
            rhs = (uset.U[k] @ uset.U[j]).scalar_mul(atd[j][k] - atd[k][j])
            if not (lhs == rhs):
                return False
            lhs = (uset.U[k] @ uset.V[j]).scalar_mul(-a[j][k])
            if not (lhs == uset.V[j] @ uset.U[k]):
                return False
    return True


def _col(vals):
    return QCMat([[v] for v in vals])


@dataclass(frozen=True)
class BundleSpec:
    """Bundle data (r, A, mu, unitaries) with the derived rank.

    The translation vector is carried as the pair (p, q) of exact rational
    vectors in units of 2*pi, with mu = p + T'^t q recoverable exactly.
    """

    n: int
    r: int
    A: tuple
    p: tuple          # rationals, units of 2*pi
    q: tuple          # rationals, units of 2*pi
    Tprime: QCMat
    rank: RankData = field(init=False)
    unitaries: UnitarySet = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "rank", compute_rank(self.r, self.A))
        object.__setattr__(self, "unitaries",
                           build_unitary_set(self.r, self.A))

    @staticmethod
    def from_pq(r, a, p, q, tprime: QCMat) -> "BundleSpec":
        return BundleSpec(n=len(a), r=r, A=tuple(map(tuple, a)),
                          p=tuple(rat(x) for x in p),
                          q=tuple(rat(x) for x in q), Tprime=tprime)

    @staticmethod
    def from_mu(r, a, mu, tprime: QCMat) -> "BundleSpec":
        """Split mu = p + T'^t q exactly (mu given in units of 2*pi)."""
        n = len(a)
        muv = QCMat([[QC.of(x)] for x in mu])
        tpt = tprime.transpose()
        qv = tpt.imag().inverse() @ muv.imag()
        pv = muv.real() - tpt.real() @ qv
        return BundleSpec.from_pq(
            r, a, [pv[i, 0].re for i in range(n)],
            [qv[i, 0].re for i in range(n)], tprime)

    def mu(self) -> QCMat:
        """Column vector p + T'^t q in units of 2*pi."""
        return _col([QC(x) for x in self.p]) \
            + self.Tprime.transpose() @ _col([QC(x) for x in self.q])

    def holomorphic(self) -> bool:
        return is_holomorphic(self.A, self.Tprime)


@dataclass(frozen=True)
class ConnectionData:
    """Coefficient matrices of the pulled-back connection and curvature.

    xy_coeff: C with 1-form -(i/2pi)(y^t C^t + mu_xy^t)(dx + delta dy),
    where C = -(1/r)A and mu_xy = (2*pi/r)mu.  curvature_xy: coefficient of
    (i/2pi) dX^t (.) dY on the source side, equal to -(1/r)A^t.  z_coeff:
    D with curvature (i/2pi) dz^t D dzbar, D = (1/r){(T-Tbar)^{-1}}^t A^t.
    coeff_02: the antiholomorphic coefficient whose symmetry is equivalent
    to holomorphicity of the bundle.
    """

    n: int
    xy_coeff: QCMat
    curvature_xy: QCMat
    z_coeff: QCMat
    coeff_02: QCMat

    def is_02_flat(self) -> bool:
        return self.coeff_02.is_symmetric()


def pullback_connection(spec: BundleSpec, t: QCMat) -> ConnectionData:
    amat = QCMat.from_int(spec.A)
    rinv = rat(1, spec.r)
    dbar = (t - t.conj()).inverse()
    return ConnectionData(
        n=spec.n,
        xy_coeff=(-amat).scale(QC(rinv)),
        curvature_xy=(-amat.transpose()).scale(QC(rinv)),
        z_coeff=(dbar.transpose() @ amat.transpose()).scale(QC(rinv)),
        coeff_02=curvature_02_part(spec.A, spec.Tprime))
