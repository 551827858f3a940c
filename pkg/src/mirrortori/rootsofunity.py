"""Exact arithmetic for monomial (generalized permutation) matrices whose
nonzero entries are roots of unity.

A matrix is stored as a permutation together with an exponent vector: row i
has its single nonzero entry at column ``perm[i]`` with value zeta^exps[i],
zeta = exp(2*pi*i/order).  Products, inverses and equality tests are exact
integer arithmetic mod order, so cocycle checks never touch floats.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class MonomialMatrix:
    size: int
    order: int
    perm: tuple   # perm[i] = column index of the nonzero entry in row i
    exps: tuple   # exponent of zeta at (i, perm[i]), reduced mod order

    def __post_init__(self):
        if sorted(self.perm) != list(range(self.size)):
            raise ValueError("perm is not a permutation")
        object.__setattr__(self, "exps",
                           tuple(e % self.order for e in self.exps))

    @staticmethod
    def identity(size: int, order: int) -> "MonomialMatrix":
        return MonomialMatrix(size, order, tuple(range(size)), (0,) * size)

    @staticmethod
    def clock(size: int, order: int, step: int) -> "MonomialMatrix":
        """diag(1, zeta^step, zeta^(2 step), ...)."""
        return MonomialMatrix(size, order, tuple(range(size)),
                              tuple((j * step) % order for j in range(size)))

    @staticmethod
    def shift(size: int, order: int) -> "MonomialMatrix":
        """Cyclic shift e_m -> e_{m+1}: entry 1 at (m+1 mod size, m)."""
        perm = tuple((i - 1) % size for i in range(size))
        return MonomialMatrix(size, order, perm, (0,) * size)

    def __matmul__(self, other: "MonomialMatrix") -> "MonomialMatrix":
        if (self.size, self.order) != (other.size, other.order):
            raise ValueError("incompatible monomial matrices")
        perm = tuple(other.perm[self.perm[i]] for i in range(self.size))
        exps = tuple(self.exps[i] + other.exps[self.perm[i]]
                     for i in range(self.size))
        return MonomialMatrix(self.size, self.order, perm, exps)

    def inverse(self) -> "MonomialMatrix":
        perm = [0] * self.size
        exps = [0] * self.size
        for i in range(self.size):
            perm[self.perm[i]] = i
            exps[self.perm[i]] = -self.exps[i]
        return MonomialMatrix(self.size, self.order, tuple(perm), tuple(exps))

    def __pow__(self, k: int) -> "MonomialMatrix":
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        out = MonomialMatrix.identity(self.size, self.order)
        while k:
            if k & 1:
                out = out @ base
            base = base @ base
            k >>= 1
        return out

    def scalar_mul(self, exp: int) -> "MonomialMatrix":
        """Multiply by the scalar zeta^exp."""
        return MonomialMatrix(self.size, self.order, self.perm,
                              tuple(e + exp for e in self.exps))

    def det_phase_turns(self) -> Fraction:
        """Determinant as a fraction of a full turn, in [0, 1)."""
        sign = 1
        seen = [False] * self.size
        for i in range(self.size):
            if seen[i]:
                continue
            ln = 0
            j = i
            while not seen[j]:
                seen[j] = True
                j = self.perm[j]
                ln += 1
            if ln % 2 == 0:
                sign = -sign
        t = Fraction(sum(self.exps), self.order)
        if sign < 0:
            t += Fraction(1, 2)
        return t % 1

    def to_complex(self):
        import numpy as np
        m = np.zeros((self.size, self.size), dtype=complex)
        for i in range(self.size):
            m[i, self.perm[i]] = np.exp(
                2j * np.pi * self.exps[i] / self.order)
        return m

    def commutes_with(self, other: "MonomialMatrix") -> bool:
        return self @ other == other @ self


def kron(factors) -> MonomialMatrix:
    """Kronecker product of monomial matrices (row-major index flattening)."""
    factors = list(factors)
    order = factors[0].order
    sizes = [f.size for f in factors]
    total = 1
    for s in sizes:
        total *= s
    perm = [0] * total
    exps = [0] * total
    for flat in range(total):
        idx = []
        rem = flat
        for s in reversed(sizes):
            idx.append(rem % s)
            rem //= s
        idx.reverse()
        col = 0
        e = 0
        for f, i in zip(factors, idx):
            col = col * f.size + f.perm[i]
            e += f.exps[i]
        perm[flat] = col
        exps[flat] = e
    return MonomialMatrix(total, order, tuple(perm), tuple(exps))
