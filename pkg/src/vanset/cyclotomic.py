"""Exact arithmetic in the cyclotomic integers ``Z[zeta_e]``.

Elements are kept in the power basis ``1, z, ..., z^(phi(e)-1)`` reduced
modulo the cyclotomic polynomial, which makes the representation canonical:
two elements are equal iff their coefficient vectors are, and zero is the
zero vector.
"""
from __future__ import annotations

import functools

import numpy as np


@functools.lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of the n-th cyclotomic polynomial, lowest degree first."""
    num = [-1] + [0] * (n - 1) + [1]  # x^n - 1
    for d in range(1, n):
        if n % d == 0:
            num = _exact_div(num, list(cyclotomic_polynomial(d)))
    return tuple(num)


def _exact_div(num: list[int], den: list[int]) -> list[int]:
    num = list(num)
    q = [0] * (len(num) - len(den) + 1)
    lead = den[-1]
    for i in range(len(q) - 1, -1, -1):
        c, rem = divmod(num[i + len(den) - 1], lead)
        if rem:
            raise ArithmeticError("inexact polynomial division")
        q[i] = c
        for j, dj in enumerate(den):
            num[i + j] -= c * dj
    if any(num[: len(den) - 1]):
        raise ArithmeticError("inexact polynomial division")
    return q


class _Field:
    """Per-conductor tables: ``reduce[k]`` is ``x^k mod Phi_e`` for ``k < e``."""

    def __init__(self, e: int):
        phi = np.array(cyclotomic_polynomial(e), dtype=np.int64)
        d = len(phi) - 1
        self.e = e
        self.dim = d
        red = np.zeros((e, d), dtype=np.int64)
        cur = np.zeros(d, dtype=np.int64)
        cur[0] = 1
        for k in range(e):
            red[k] = cur
            # multiply by x, then eliminate the x^d term using the monic Phi_e
            top = cur[-1]
            cur = np.concatenate(([0], cur[:-1]))
            if top:
                cur = cur - top * phi[:-1]
        self.reduce = red
        self.conj_index = (-np.arange(d)) % e

    def fold(self, full: np.ndarray) -> np.ndarray:
        """Reduce a coefficient vector in powers of z (any length) to canonical form."""
        n = len(full)
        if n > self.e:
            pad = (-n) % self.e
            full = np.concatenate((full, np.zeros(pad, dtype=np.int64))).reshape(-1, self.e).sum(axis=0)
        return full @ self.reduce[: len(full)]


@functools.lru_cache(maxsize=None)
def _field(e: int) -> _Field:
    return _Field(e)


class Cyclotomic:
    """An element of ``Z[zeta_e]`` in canonical reduced power-basis form."""

    __slots__ = ("e", "coeffs", "_hash")

    def __init__(self, e: int, coeffs):
        F = _field(e)
        c = np.asarray(coeffs, dtype=np.int64)
        if c.shape != (F.dim,):
            c = F.fold(c)
        self.e = e
        self.coeffs: tuple[int, ...] = tuple(int(x) for x in c)
        self._hash = None

    @classmethod
    def from_int(cls, e: int, n: int) -> Cyclotomic:
        c = np.zeros(_field(e).dim, dtype=np.int64)
        c[0] = n
        return cls(e, c)

    @classmethod
    def zeta(cls, e: int, k: int = 1) -> Cyclotomic:
        full = np.zeros(e, dtype=np.int64)
        full[k % e] = 1
        return cls(e, _field(e).fold(full))

    @classmethod
    def from_exponents(cls, e: int, mult) -> Cyclotomic:
        """``sum_k mult[k] * zeta_e**k``; ``mult`` is indexed by exponent mod e."""
        return cls(e, _field(e).fold(np.asarray(mult, dtype=np.int64)))

    # -- arithmetic -----------------------------------------------------------
    def _coerce(self, other) -> Cyclotomic:
        if isinstance(other, Cyclotomic):
            if other.e != self.e:
                raise ValueError(f"conductor mismatch {self.e} != {other.e}")
            return other
        if isinstance(other, (int, np.integer)):
            return Cyclotomic.from_int(self.e, int(other))
        return NotImplemented

    def _array(self) -> np.ndarray:
        return np.array(self.coeffs, dtype=np.int64)

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Cyclotomic(self.e, self._array() + o._array())

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.e, -self._array())

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Cyclotomic(self.e, self._array() - o._array())

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, np.integer)):
            return Cyclotomic(self.e, self._array() * int(other))
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        prod = np.convolve(self._array(), o._array())
        return Cyclotomic(self.e, _field(self.e).fold(prod))

    __rmul__ = __mul__

    def conj(self) -> Cyclotomic:
        """Complex conjugate: ``zeta -> zeta**(e-1)``."""
        F = _field(self.e)
        full = np.zeros(self.e, dtype=np.int64)
        np.add.at(full, F.conj_index, self._array())
        return Cyclotomic(self.e, F.fold(full))

    # -- predicates and conversions ---------------------------------------------
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational_integer(self) -> bool:
        return not any(self.coeffs[1:])

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, np.integer)):
            return self.is_rational_integer() and self.coeffs[0] == other
        if isinstance(other, Cyclotomic):
            return self.e == other.e and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.e, self.coeffs))
        return self._hash

    def __int__(self) -> int:
        if not self.is_rational_integer():
            raise ValueError(f"{self} is not a rational integer")
        return self.coeffs[0]

    def to_complex(self) -> complex:
        z = np.exp(2j * np.pi * np.arange(len(self.coeffs)) / self.e)
        return complex(np.dot(self._array(), z))

    def reduce_mod(self, p: int, lam: int) -> int:
        """Image under ``zeta_e -> lam`` in ``F_p``."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * lam + c) % p
        return acc

    def __str__(self) -> str:
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            terms.append(str(c) if k == 0 else f"{c}*z{self.e}^{k}")
        return " + ".join(terms) if terms else "0"

    def __repr__(self) -> str:
        return f"Cyclotomic({self.e}, {self})"


def is_zero(v: Cyclotomic) -> bool:
    return v.is_zero()
