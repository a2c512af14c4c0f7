"""Special functions and quadrature used by the coherent-state measures.

The confluent hypergeometric limit function ``0F1`` is summed directly from its
power series (it also accepts complex arguments, which the GK kernel needs).
Bessel functions and ``log Gamma`` delegate to :mod:`scipy.special`; the
quadrature driver uses Gauss-Legendre nodes from :mod:`numpy.polynomial`.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy import special as sp

MAX_SERIES_TERMS = 200_000


class ConvergenceError(RuntimeError):
    """A series or quadrature failed to converge within its iteration cap."""


class QuadratureError(ConvergenceError):
    def __init__(self, message, estimates):
        super().__init__(f"{message}; last estimates {estimates}")
        self.estimates = estimates


def hyper0f1(c, y, tol=1e-17):
    """Confluent hypergeometric limit function ``0F1(; c; y)``.

    Parameters
    ----------
    c : float
        Lower parameter, ``c > 0``.
    y : float, complex or array_like
        Argument. Real non-negative arguments give a series of positive
        terms; complex arguments are accepted for kernel evaluation.
    tol : float
        Summation stops once the term magnitude drops below ``tol`` times the
        partial sum and the terms are decreasing.

    Returns
    -------
    float, complex or ndarray
        Same shape as ``y``.
    """
    if c <= 0:
        raise ValueError(f"0F1 needs c > 0, got {c}")
    if tol <= 0:
        raise ValueError("tol must be positive")
    y_arr = np.asarray(y)
    scalar = y_arr.ndim == 0
    y_arr = np.atleast_1d(y_arr)
    if not np.iscomplexobj(y_arr):
        if np.any(y_arr < 0):
            raise ValueError("real arguments of 0F1 must be non-negative")
        y_arr = y_arr.astype(float)
    term = np.ones_like(y_arr)
    total = np.ones_like(y_arr)
    active = np.ones(y_arr.shape, dtype=bool)
    k = 0
    while np.any(active):
        if k >= MAX_SERIES_TERMS:
            raise ConvergenceError(f"0F1 series did not converge in {k} terms")
        ratio = y_arr[active] / ((k + 1) * (c + k))
        term[active] = term[active] * ratio
        total[active] = total[active] + term[active]
        done = (np.abs(term[active]) <= tol * np.abs(total[active])) & (np.abs(ratio) < 1)
        idx = np.flatnonzero(active)
        active[idx[done]] = False
        k += 1
    return total[0] if scalar else total


def bessel_i(nu, x):
    """Modified Bessel function of the first kind ``I_nu(x)``, ``nu, x >= 0``."""
    x = np.asarray(x, dtype=float)
    if nu < 0 or np.any(x < 0):
        raise ValueError("bessel_i needs nu >= 0 and x >= 0")
    return sp.iv(nu, x)


def bessel_k(nu, x):
    """Modified Bessel function of the second kind ``K_nu(x)``, ``x > 0``."""
    x = np.asarray(x, dtype=float)
    if nu < 0:
        raise ValueError("bessel_k needs nu >= 0")
    if np.any(x <= 0):
        raise ValueError("K_nu is singular at x = 0")
    return sp.kv(nu, x)


def log_bessel_k(nu, x):
    """``log K_nu(x)`` without underflow for large ``x``."""
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0):
        raise ValueError("K_nu is singular at x = 0")
    return np.log(sp.kve(nu, x)) - x


def log_gamma(x):
    """Natural log of the Gamma function for ``x > 0``."""
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0):
        raise ValueError("log_gamma is only defined here for x > 0")
    return sp.gammaln(x)


@dataclass(frozen=True)
class QuadratureSpec:
    """Initial Gauss-Legendre rule on an interval.

    ``transform="identity"`` integrates over ``[lo, hi]`` directly.
    ``transform="semi-infinite"`` integrates over ``[lo, inf)`` through the map
    ``x = lo + scale * u / (1 - u)`` on ``u in [0, 1)``; ``hi`` is ignored.
    """

    node_count: int = 32
    interval: tuple = (0.0, 1.0)
    transform: str = "identity"
    scale: float = 1.0
    max_nodes: int = 4096
    rtol: float = 1e-10

    def __post_init__(self):
        if self.node_count < 2:
            raise ValueError("node_count must be >= 2")
        if self.transform not in ("identity", "semi-infinite"):
            raise ValueError(f"unknown transform {self.transform!r}")
        lo, hi = self.interval
        if self.transform == "identity" and not lo < hi:
            raise ValueError("interval needs lo < hi")
        if self.scale <= 0:
            raise ValueError("scale must be positive")


@lru_cache(maxsize=64)
def _legendre(m):
    x, w = np.polynomial.legendre.leggauss(m)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def gauss_legendre(m, lo, hi):
    """Nodes and weights of the ``m``-point Gauss-Legendre rule on ``[lo, hi]``."""
    x, w = _legendre(m)
    half = 0.5 * (hi - lo)
    return lo + half * (x + 1.0), half * w


def _fixed_rule(f, spec, m):
    lo, hi = spec.interval
    if spec.transform == "identity":
        x, w = gauss_legendre(m, lo, hi)
        return np.sum(w * f(x))
    u, w = gauss_legendre(m, 0.0, 1.0)
    x = lo + spec.scale * u / (1.0 - u)
    jac = spec.scale / (1.0 - u) ** 2
    return np.sum(w * jac * f(x))


def integrate(f, spec=QuadratureSpec()):
    """Integrate a vectorised function by Gauss-Legendre with node doubling.

    The node count starts at ``spec.node_count`` and doubles until two
    successive estimates agree to ``spec.rtol`` relative to the latest one.

    Raises
    ------
    QuadratureError
        If ``spec.max_nodes`` is exceeded; carries the last two estimates.
    """
    m = spec.node_count
    prev = cur = _fixed_rule(f, spec, m)
    while True:
        m *= 2
        if m > spec.max_nodes:
            raise QuadratureError("quadrature node cap reached", (prev, cur))
        prev, cur = cur, _fixed_rule(f, spec, m)
        if abs(cur - prev) <= spec.rtol * abs(cur):
            return cur
