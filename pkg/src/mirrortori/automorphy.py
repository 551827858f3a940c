"""Projectively flat presentation of the pulled-back bundles: the curvature
factor, the Hermitian lattice pairing, the factor of automorphy, the gauge
transform, and the numerical intertwining check.

Everything algebraic (symmetry conditions, pairing identities, cocycle
exponents) is done in exact rational arithmetic.  Floats appear only where
exponentials do: the scalar gauge function and the sampled residual check.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .exact import QC, QCMat, rat
from .bundles import (BundleSpec, UnitarySet, is_holomorphic,
                      pullback_unitaries, verify_pullback_cocycle)


class ConditionViolated(ValueError):
    pass


class ToleranceExceeded(RuntimeError):
    pass


def _ratio(r, rprime):
    return QC(rat(rprime, r))


@dataclass(frozen=True)
class CurvatureFactor:
    """The real symmetric matrix scaling the projectively flat curvature.

    Stored as Rhat := 4*pi*R = (r'/r)(Im T^{-1})^t A^t, which is rational,
    so symmetry and realness are exact statements.
    """

    n: int
    r: int
    rprime: int
    A: tuple
    Rhat: QCMat

    def as_float(self):
        """R itself, as a float matrix."""
        return np.array([[float(self.Rhat[i, j].re) / (4 * np.pi)
                          for j in range(self.n)] for i in range(self.n)])


def curvature_factor(r: int, rprime: int, a, t: QCMat) -> CurvatureFactor:
    amat = QCMat.from_int(a)
    rhat = (t.imag().inverse().transpose() @ amat.transpose()) \
        .scale(_ratio(r, rprime))
    # second closed form: 2i (r'/r) {(T - Tbar)^{-1}}^t A^t
    alt = ((t - t.conj()).inverse().transpose() @ amat.transpose()) \
        .scale(_ratio(r, rprime) * QC(0, 2))
    if not (rhat == alt):
        raise ConditionViolated("the two closed forms of R disagree")
    if not rhat.is_real():
        raise ConditionViolated("R is not real")
    if not rhat.is_symmetric():
        raise ConditionViolated(
            "R is not symmetric; A T' symmetry fails for this data")
    return CurvatureFactor(n=t.rows, r=r, rprime=rprime,
                           A=tuple(map(tuple, a)), Rhat=rhat)


@dataclass(frozen=True)
class PairingTable:
    """Hermitian pairing of lattice generators, in units of pi.

    gamma_j are the 2*pi unit vectors and gammap_k the columns of 2*pi*T;
    the pairing is R(z, w) = sum R_ij z_i conj(w_j).  Entry (j, k) of each
    table is R(., .) / pi for the corresponding generator pair.
    """

    gg: QCMat       # (gamma_j, gamma_k)
    gp: QCMat       # (gamma_j, gamma'_k)
    pg: QCMat       # (gamma'_k, gamma_j), indexed (j, k)
    pp: QCMat       # (gamma'_j, gamma'_k)


def im_pairings(factor: CurvatureFactor, t: QCMat, delta) -> PairingTable:
    """Pairing tables with the three closed-form imaginary parts asserted.

    Raises ConditionViolated naming the offending block if any closed form
    fails (it cannot when A T' is symmetric).
    """
    rhat = factor.Rhat
    table = PairingTable(
        gg=rhat,
        gp=rhat @ t.conj(),
        pg=rhat.conj() @ t,
        pp=t.transpose() @ rhat @ t.conj())
    amat = QCMat.from_int(factor.A)
    dmat = QCMat.from_int(delta)
    scale = _ratio(factor.r, factor.rprime)
    if not table.gg.imag().is_zero():
        raise ConditionViolated("Im pairing on (gamma, gamma) is nonzero")
    if not (table.gp.imag() == (-amat).scale(scale)):
        raise ConditionViolated("Im pairing on (gamma, gamma') is wrong")
    if not (table.pg.imag() == amat.scale(scale)):
        raise ConditionViolated("Im pairing on (gamma', gamma) is wrong")
    expected = (amat.transpose() @ dmat
                - dmat.transpose() @ amat).scale(scale)
    if not (table.pp.imag() == expected):
        raise ConditionViolated("Im pairing on (gamma', gamma') is wrong")
    return table


@dataclass(frozen=True)
class GaugeTransform:
    """Quadratic-exponential gauge between pulled-back transition functions
    and the factor of automorphy."""

    n: int
    r: int
    rprime: int
    CalA: QCMat
    Rhat: QCMat
    T: QCMat
    delta: tuple
    mu: QCMat          # column vector in absolute units (radians)

    def psi(self, z):
        """The scalar gauge function at a sample point (numpy complex)."""
        n, r, rp = self.n, self.r, self.rprime
        a = _to_complex(self.CalA)
        tn = _to_complex(self.T)
        dn = np.array(self.delta, dtype=float)
        g = np.linalg.inv(tn - tn.conj())
        mu = 2 * np.pi * _to_complex(self.mu).reshape(n)
        zb = z.conj()
        expo = (1j / (4 * np.pi * rp)) * (z @ a.conj() @ z) \
            + (1j / (4 * np.pi * rp)) * (zb @ a @ zb) \
            - (1j / (2 * np.pi * rp)) * (z @ a @ zb) \
            + (1j / (2 * np.pi * r)) * (zb @ g.T @ (dn - tn).T @ mu) \
            - (1j / (2 * np.pi * r)) * (z @ g.T @ (dn - tn.conj()).T
                                        @ mu.conj())
        return np.exp(expo)


def gauge_transform(spec: BundleSpec, t: QCMat, delta) -> GaugeTransform:
    """Build the gauge data and verify its exact invariants.

    Checks that CalA is symmetric and that conj(CalA) - CalA equals
    -(i/2) Rhat, the exact form of the curvature-matching relation.
    """
    if not spec.holomorphic():
        raise ConditionViolated("A T' is not symmetric")
    amat = QCMat.from_int(spec.A)
    dmat = QCMat.from_int(delta)
    g = (t - t.conj()).inverse()
    cala = (g.transpose() @ amat.transpose() @ (dmat - t) @ g) \
        .scale(_ratio(spec.r, spec.rank.rprime))
    if not cala.is_symmetric():
        raise ConditionViolated("gauge quadratic form is not symmetric")
    factor = curvature_factor(spec.r, spec.rank.rprime, spec.A, t)
    if not (cala.conj() - cala == factor.Rhat.scale(QC(0, rat(-1, 2)))):
        raise ConditionViolated(
            "conj(CalA) - CalA does not match the curvature factor")
    # mu is stored in units of 2*pi; evaluators scale at float time
    return GaugeTransform(n=spec.n, r=spec.r, rprime=spec.rank.rprime,
                          CalA=cala, Rhat=factor.Rhat, T=t,
                          delta=tuple(map(tuple, delta)), mu=spec.mu())


def _to_complex(m: QCMat):
    return np.array([[complex(m[i, j]) for j in range(m.cols)]
                     for i in range(m.rows)])


@dataclass(frozen=True)
class IntertwiningReport:
    samples: int
    max_residual: float
    max_unitarity_defect: float
    cocycle_exact: bool
    max_cocycle_residual: float
    tol: float

    @property
    def passed(self) -> bool:
        return (self.max_residual <= self.tol
                and self.max_unitarity_defect <= 1e-12
                and self.cocycle_exact
                and self.max_cocycle_residual <= self.tol)


def automorphy_matrices(spec: BundleSpec, gauge: GaugeTransform,
                        primed: UnitarySet):
    """U(gamma_j), U(gamma'_k) as numpy arrays, with their scalar phases.

    The phase corrections multiply the pulled-back transition matrices; the
    claim that they are unit scalars is re-checked by the caller.
    """
    n, r, rp = spec.n, spec.r, spec.rank.rprime
    tn = _to_complex(gauge.T)
    dn = np.array(gauge.delta, dtype=float)
    g = np.linalg.inv(tn - tn.conj())
    mu = 2 * np.pi * _to_complex(spec.mu()).reshape(n)
    a = _to_complex(gauge.CalA)
    u_gamma = []
    for j in range(n):
        expo = (1j / r) * (g.T @ (dn - tn).T @ mu)[j] \
            - (1j / r) * (g.T @ (dn - tn.conj()).T @ mu.conj())[j]
        u_gamma.append(np.exp(expo) * primed.V[j].to_complex())
    u_gammap = []
    for k in range(n):
        expo = (1j * np.pi / rp) * (tn.T @ a.conj() @ (tn - tn.conj()))[k, k] \
            - (1j * np.pi / rp) * ((tn - tn.conj()).T @ a @ tn.conj())[k, k] \
            + (1j / r) * (tn.conj().T @ g.T @ (dn - tn).T @ mu)[k] \
            - (1j / r) * (tn.T @ g.T @ (dn - tn.conj()).T @ mu.conj())[k]
        u_gammap.append(np.exp(expo) * primed.U[k].to_complex())
    return u_gamma, u_gammap


def verify_intertwining(spec: BundleSpec, t: QCMat, delta,
                        samples: int = 50, tol: float = 1e-8,
                        seed: int = 0) -> IntertwiningReport:
    """Sampled check that the gauge conjugates the pulled-back transition
    functions into the factor of automorphy.

    For each sampled z and each of the 2n lattice generators gamma, the
    left side Psi(z + gamma) transition(z) Psi(z)^{-1} is compared with
    j(gamma, z) = U(gamma) exp{(1/r')R(z,gamma) + (1/2r')R(gamma,gamma)}.
    The cocycle relations of the U(gamma) are checked exactly in
    root-of-unity arithmetic, and the two-generator automorphy identity
    j(gamma, z+lambda) j(lambda, z) = j(lambda, z+gamma) j(gamma, z) is
    sampled as well.
    """
    gauge = gauge_transform(spec, t, delta)
    primed = pullback_unitaries(spec.unitaries, spec.A, delta)
    cocycle_exact = verify_pullback_cocycle(primed, spec.A, delta)
    n, r, rp = spec.n, spec.r, spec.rank.rprime
    tn = _to_complex(t)
    dn = np.array([list(row) for row in delta], dtype=float)
    g = np.linalg.inv(tn - tn.conj())
    an = np.array(spec.A, dtype=float)
    rmat = curvature_factor(r, rp, spec.A, t).as_float()
    u_gamma, u_gammap = automorphy_matrices(spec, gauge, primed)
    unit_defect = 0.0
    for m in u_gamma + u_gammap:
        unit_defect = max(unit_defect, float(np.max(
            np.abs(m.conj().T @ m - np.eye(rp)))))

    gammas = [2 * np.pi * np.eye(n)[:, j] + 0j for j in range(n)]
    gammaps = [2 * np.pi * tn[:, k] for k in range(n)]

    def pairing(zv, wv):
        return zv @ rmat @ wv.conj()

    def transition(idx, z):
        if idx < n:
            return primed.V[idx].to_complex()
        k = idx - n
        ak = an[:, k]
        expo = (-1j / r) * (ak @ (dn - tn.conj()) @ g @ z) \
            + (1j / r) * (ak @ (dn - tn) @ g @ z.conj())
        return np.exp(expo) * primed.U[k].to_complex()

    def jfactor(idx, z):
        gam = gammas[idx] if idx < n else gammaps[idx - n]
        u = u_gamma[idx] if idx < n else u_gammap[idx - n]
        return u * np.exp(pairing(z, gam) / rp + pairing(gam, gam) / (2 * rp))

    rng = np.random.default_rng(seed)
    max_res = 0.0
    max_coc = 0.0
    for _ in range(samples):
        x = rng.uniform(0, 2 * np.pi, n)
        y = rng.uniform(0, 2 * np.pi, n)
        z = x + tn @ y
        psi_z = gauge.psi(z)
        for idx in range(2 * n):
            gam = gammas[idx] if idx < n else gammaps[idx - n]
            lhs = gauge.psi(z + gam) * transition(idx, z) / psi_z
            rhs = jfactor(idx, z)
            scale = max(1.0, float(np.max(np.abs(rhs))))
            res = float(np.max(np.abs(lhs - rhs))) / scale
            max_res = max(max_res, res)
        # automorphy consistency on one generator pair per sample
        i1 = int(rng.integers(0, 2 * n))
        i2 = int(rng.integers(0, 2 * n))
        g1 = gammas[i1] if i1 < n else gammaps[i1 - n]
        g2 = gammas[i2] if i2 < n else gammaps[i2 - n]
        lhs = jfactor(i1, z + g2) @ jfactor(i2, z)
        rhs = jfactor(i2, z + g1) @ jfactor(i1, z)
        scale = max(1.0, float(np.max(np.abs(rhs))))
        max_coc = max(max_coc, float(np.max(np.abs(lhs - rhs))) / scale)
    report = IntertwiningReport(samples=samples, max_residual=max_res,
                                max_unitarity_defect=unit_defect,
                                cocycle_exact=cocycle_exact,
                                max_cocycle_residual=max_coc, tol=tol)
    if not report.passed:
        raise ToleranceExceeded(
            f"residual {max_res:.3e}, unitarity {unit_defect:.3e}, "
            f"cocycle residual {max_coc:.3e} exceed tolerances")
    return report


@dataclass(frozen=True)
class SetMembership:
    bound: int
    both: tuple
    delta_only: tuple         # A T' symmetric but A T not
    syz_only: tuple           # A T symmetric but A T' not
    neither_count: int


def classify_sets(t: QCMat, delta, bound: int) -> SetMembership:
    """Tag every integer A with entries in [-bound, bound] by the two
    symmetry predicates distinguishing the shifted and direct bundle sets."""
    import itertools
    n = t.rows
    tprime = (-t + QCMat.from_int(delta)).inverse()
    both, donly, sonly = [], [], []
    neither = 0
    for entries in itertools.product(range(-bound, bound + 1), repeat=n * n):
        a = tuple(tuple(entries[i * n + j] for j in range(n))
                  for i in range(n))
        in_delta = is_holomorphic(a, tprime)
        in_syz = is_holomorphic(a, t)
        if in_delta and in_syz:
            both.append(a)
        elif in_delta:
            donly.append(a)
        elif in_syz:
            sonly.append(a)
        else:
            neither += 1
    return SetMembership(bound=bound, both=tuple(both),
                         delta_only=tuple(donly), syz_only=tuple(sonly),
                         neither_count=neither)
