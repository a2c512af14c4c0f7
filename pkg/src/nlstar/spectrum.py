"""Nonlinear spectra ``e_n = a n^2 + b n`` and their truncated Fock operators.

Every operator lives on a truncated basis ``|psi_0>, ..., |psi_{D-1}>`` and is
stored as a dense read-only complex matrix with entry ``(m, n) = <psi_m|A|psi_n>``.
Products of ladder operators are exact except in the last row and column, which
is why identity checks compare the top-left ``(D-1) x (D-1)`` block only.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from functools import reduce

import numpy as np


@dataclass(frozen=True)
class SpectrumParams:
    """Spectrum coefficients; ``a >= 0`` and ``b > 0`` keep ``e_n`` strictly increasing."""

    a: float
    b: float

    def __post_init__(self):
        if not (np.isfinite(self.a) and np.isfinite(self.b)):
            raise ValueError("spectrum coefficients must be finite")
        if self.a < 0:
            raise ValueError(f"a must be >= 0, got {self.a}")
        if self.b <= 0:
            raise ValueError(f"b must be > 0, got {self.b}")

    @property
    def harmonic(self):
        return self.a == 0

    @property
    def r(self):
        """Ratio ``b / a``; undefined on the harmonic branch ``a = 0``."""
        if self.a == 0:
            raise ValueError("r = b/a is undefined for a = 0")
        return self.b / self.a

    def energy(self, n):
        n = np.asarray(n)
        if np.any(n < 0):
            raise ValueError("level index must be >= 0")
        return self.a * n * n + self.b * n


def energy(params, n):
    """Energy ``e_n``; accepts scalars or integer arrays."""
    return params.energy(n)


@dataclass(frozen=True)
class FockSpace:
    dim: int

    def __post_init__(self):
        if int(self.dim) != self.dim or self.dim < 2:
            raise ValueError(f"Fock space dimension must be an integer >= 2, got {self.dim}")

    @property
    def levels(self):
        return np.arange(self.dim)

    def basis(self, n):
        v = np.zeros(self.dim, dtype=complex)
        v[n] = 1.0
        return v


@dataclass(frozen=True, eq=False)
class FockOperator:
    """Immutable dense operator on a truncated Fock space."""

    space: FockSpace
    entries: np.ndarray

    def __post_init__(self):
        m = np.array(self.entries, dtype=complex)
        if m.shape != (self.space.dim, self.space.dim):
            raise ValueError(f"entries shape {m.shape} does not match dim {self.space.dim}")
        if not np.all(np.isfinite(m)):
            raise ValueError("operator entries must be finite")
        m.setflags(write=False)
        object.__setattr__(self, "entries", m)

    @property
    def dim(self):
        return self.space.dim

    def _check(self, other):
        if not isinstance(other, FockOperator):
            return NotImplemented
        if other.space.dim != self.space.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")
        return other

    def __matmul__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return FockOperator(self.space, self.entries @ other.entries)

    def __add__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return FockOperator(self.space, self.entries + other.entries)

    def __sub__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return FockOperator(self.space, self.entries - other.entries)

    def __neg__(self):
        return FockOperator(self.space, -self.entries)

    def __mul__(self, scalar):
        if isinstance(scalar, FockOperator):
            return NotImplemented
        return FockOperator(self.space, complex(scalar) * self.entries)

    __rmul__ = __mul__

    def dag(self):
        return FockOperator(self.space, self.entries.conj().T)

    def diagonal(self):
        return np.diag(self.entries).copy()

    def block(self, size=None):
        """Top-left ``size x size`` block; defaults to dropping the truncation edge."""
        size = self.dim - 1 if size is None else size
        return self.entries[:size, :size]

    def __repr__(self):
        return f"FockOperator(dim={self.dim})"


def identity(space):
    return FockOperator(space, np.eye(space.dim))


def diagonal_operator(space, values):
    return FockOperator(space, np.diag(np.asarray(values, dtype=complex)))


def ladder_operators(params, space):
    """Return ``(raise, lower)`` with ``a+|n> = sqrt(e_{n+1})|n+1>``."""
    amp = np.sqrt(params.energy(np.arange(1, space.dim)))
    raise_op = np.diag(amp.astype(complex), -1)
    return FockOperator(space, raise_op), FockOperator(space, raise_op.T.copy())


def diagonal_operators(params, space):
    """Return ``(N, H, G)`` with ``G = diag(e_{n+1} - e_n)``."""
    n = space.levels
    e = params.energy(n)
    g = params.energy(n + 1) - e
    return (
        diagonal_operator(space, n),
        diagonal_operator(space, e),
        diagonal_operator(space, g),
    )


def shifted_energy_operator(params, space, l):
    """``g(N + l)``: diagonal entries ``e_{n+l}``."""
    if l < 0:
        raise ValueError("shift l must be >= 0")
    return diagonal_operator(space, params.energy(space.levels + l))


def commutator(A, B):
    return A @ B - B @ A


class Letter(enum.Enum):
    RAISE = "R"
    LOWER = "L"


@dataclass(frozen=True)
class OperatorExpr:
    """Linear combination of words over ``{RAISE, LOWER}``.

    A word is applied as written, left to right as a matrix product, so
    ``(RAISE, LOWER)`` is ``a+ a-``. The empty word is the identity.
    """

    terms: tuple = ()

    def __post_init__(self):
        clean = []
        for coef, word in self.terms:
            word = tuple(Letter(w) if not isinstance(w, Letter) else w for w in word)
            clean.append((complex(coef), word))
        object.__setattr__(self, "terms", tuple(clean))

    @classmethod
    def word(cls, letters, coef=1.0):
        return cls(((coef, tuple(letters)),))

    def __add__(self, other):
        return OperatorExpr(self.terms + other.terms)

    def __mul__(self, scalar):
        return OperatorExpr(tuple((c * scalar, w) for c, w in self.terms))

    __rmul__ = __mul__

    @classmethod
    def parse(cls, text):
        """Parse strings such as ``"RL - LR"`` or ``"2*RRL + (0.5+1j) + L"``.

        Letters are ``R`` (raise) and ``L`` (lower); ``I`` or an empty word
        denotes the identity.
        """
        src = text.replace(" ", "")
        if not src:
            raise ValueError("empty operator expression")
        token = re.compile(
            r"([+-]?)"
            r"(?:(\([^()]*\)|\d+(?:\.\d*)?(?:[eE][+-]?\d+)?j?|\.\d+(?:[eE][+-]?\d+)?j?)\*?)?"
            r"([RLI]*)"
        )
        terms = []
        pos = 0
        while pos < len(src):
            m = token.match(src, pos)
            if m is None or m.end() == pos or (not m.group(2) and not m.group(3)):
                raise ValueError(f"cannot parse operator expression at {src[pos:]!r}")
            if pos > 0 and not m.group(1):
                raise ValueError(f"missing '+' or '-' before {src[pos:]!r}")
            sign = -1.0 if m.group(1) == "-" else 1.0
            coef = complex(m.group(2).strip("()")) if m.group(2) else 1.0
            word = tuple(Letter(ch) for ch in m.group(3) if ch != "I")
            terms.append((sign * coef, word))
            pos = m.end()
        return cls(tuple(terms))


def compile_expr(expr, params, space):
    """Substitute ladder matrices for letters and sum the weighted words."""
    raise_op, lower_op = ladder_operators(params, space)
    table = {Letter.RAISE: raise_op.entries, Letter.LOWER: lower_op.entries}
    eye = np.eye(space.dim, dtype=complex)
    total = np.zeros((space.dim, space.dim), dtype=complex)
    for coef, word in expr.terms:
        prod = reduce(np.matmul, (table[w] for w in word), eye)
        total += coef * prod
    return FockOperator(space, total)
