from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np


class Family(enum.Enum):
    GK = "gk"
    PK = "pk"


@dataclass(frozen=True, eq=False)
class CoherentVector:
    """Truncated coefficients ``c_n = <psi_n|state>``; ``tail_mass = 1 - sum |c_n|^2``."""

    label: complex
    family: Family
    coeffs: np.ndarray
    tail_mass: float

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=complex)
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)
        if self.tail_mass < -1e-12:
            raise ValueError(f"coefficients over-normalised (tail mass {self.tail_mass:.3e})")

    @property
    def dim(self):
        return self.coeffs.shape[0]

    def expect(self, op):
        """Quadratic form ``c^dagger A c``."""
        if op.dim != self.dim:
            raise ValueError(f"dimension mismatch: state {self.dim} vs operator {op.dim}")
        return complex(np.vdot(self.coeffs, op.entries @ self.coeffs))


def _tail(coeffs):
    return float(1.0 - np.sum(np.abs(coeffs) ** 2))
