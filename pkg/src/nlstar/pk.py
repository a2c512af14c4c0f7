"""Perelomov-Klauder coherent states on the unit disc and the ladder operators they diagonalise.

The displacement orbit of the ground state is labelled by
``zeta = (z/|z|) tanh(|z| sqrt a)`` and has coefficients
``c_n = (1-|zeta|^2)^{(r+1)/2} sqrt(Gamma(n+r+1)/(n! Gamma(r+1))) zeta^n``.

These states are not eigenvectors of ``a-``. The operator
``A- = f(N) a-`` with ``f(N) = (N+1)/g(N+1)`` is: ``A-|zeta> = (zeta/sqrt a)|zeta>``,
and ``[A-, A+] = D(N) = (N+1)^2/g(N+1) - N^2/g(N)``.

For ``a = 0`` the family degenerates to the canonical coherent states of the
oscillator, which are then shared with the GK family.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm

from . import gk
from .special import QuadratureSpec, integrate, log_gamma
from .spectrum import FockOperator, FockSpace, diagonal_operator, ladder_operators
from .states import CoherentVector, Family, _tail


@dataclass(frozen=True)
class DiscPoint:
    zeta: complex

    def __post_init__(self):
        z = complex(self.zeta)
        if not abs(z) < 1:
            raise ValueError(f"disc point must satisfy |zeta| < 1, got {abs(z)}")
        object.__setattr__(self, "zeta", z)


def _label(params, zeta):
    z = complex(zeta.zeta if isinstance(zeta, DiscPoint) else zeta)
    if not params.harmonic and not abs(z) < 1:
        raise ValueError(f"PK label must lie in the unit disc, got |zeta| = {abs(z)}")
    return z


def zeta_map(params, z):
    """``zeta = (z/|z|) tanh(|z| sqrt a)``; the modulus keeps every image inside the disc."""
    if params.harmonic:
        raise ValueError("the disc map needs a > 0")
    z = complex(z)
    if z == 0:
        return DiscPoint(0j)
    return DiscPoint(z / abs(z) * np.tanh(abs(z) * np.sqrt(params.a)))


def zeta_map_literal(params, z):
    """``(z/|z|) tanh(z sqrt a)`` with a complex ``tanh`` argument; agrees with
    :func:`zeta_map` only for real positive ``z``."""
    z = complex(z)
    if z == 0:
        return 0j
    return complex(z / abs(z) * np.tanh(z * np.sqrt(params.a)))


def inverse_zeta_map(params, zeta):
    zeta = _label(params, zeta)
    if zeta == 0:
        return 0j
    return zeta / abs(zeta) * np.arctanh(abs(zeta)) / np.sqrt(params.a)


def log_binomial_weight(r, n):
    """``log(Gamma(n+r+1) / (n! Gamma(r+1)))``."""
    n = np.asarray(n, dtype=float)
    return log_gamma(n + r + 1) - log_gamma(n + 1) - log_gamma(r + 1)


def pk_coefficients(params, n_max, zeta):
    """Exact coefficients ``c_0..c_{n_max}``; shape ``(n_max + 1,) + zeta.shape``."""
    if params.harmonic:
        return gk.gk_coefficients(params, n_max, zeta)
    zeta = np.asarray(zeta, dtype=complex)
    r = params.r
    n = np.arange(n_max + 1).reshape((-1,) + (1,) * zeta.ndim)
    x = np.abs(zeta) ** 2
    with np.errstate(divide="ignore", invalid="ignore"):
        log_mod = 0.5 * (r + 1) * np.log1p(-x) + 0.5 * log_binomial_weight(r, n) + n * np.log(np.abs(zeta))
    log_mod = np.where((n == 0) & (np.abs(zeta) == 0), 0.0, log_mod)
    return np.exp(log_mod) * np.exp(1j * n * np.angle(zeta))


def suggest_pk_dim(params, max_modulus, tail=1e-12, min_dim=16):
    """Smallest ``D`` whose discarded mass at ``|zeta| = max_modulus`` is below ``tail``."""
    if params.harmonic:
        return gk.suggest_gk_dim(params, max_modulus, min_dim=min_dim)
    x = float(max_modulus) ** 2
    if not x < 1:
        raise ValueError("max_modulus must be < 1")
    r = params.r
    term = (1 - x) ** (r + 1)
    n = 0
    while True:
        ratio = x * (n + r + 1) / (n + 1)
        nxt = term * ratio
        # remaining terms decrease at least geometrically once ratio < 1
        if n + 1 >= min_dim and ratio < 1 and nxt / (1 - ratio) < tail:
            return n + 1
        term = nxt
        n += 1


def pk_state(params, space, zeta):
    """PK state, built by ``c_{n+1} = zeta c_n sqrt((n+r+1)/(n+1))``."""
    z = _label(params, zeta)
    if params.harmonic:
        v = gk.gk_state(params, space, z)
        return CoherentVector(z, Family.PK, v.coeffs, v.tail_mass)
    r = params.r
    c = np.empty(space.dim, dtype=complex)
    c[0] = np.exp(0.5 * (r + 1) * np.log1p(-abs(z) ** 2))
    for n in range(space.dim - 1):
        c[n + 1] = z * c[n] * np.sqrt((n + r + 1) / (n + 1))
    return CoherentVector(z, Family.PK, c, _tail(c))


def displacement_state(params, space, z, guard=None):
    """``exp(z a+ - conj(z) a-)|psi_0>`` truncated to ``space``.

    The exponential is taken in a working space of ``space.dim + guard`` levels
    (default ``guard = space.dim``) and the result cut back, so the truncated
    generator does not contaminate the retained coefficients.
    """
    guard = space.dim if guard is None else int(guard)
    work = FockSpace(space.dim + guard)
    raise_op, lower_op = ladder_operators(params, work)
    z = complex(z)
    gen = z * raise_op.entries - np.conj(z) * lower_op.entries
    v = expm(gen)[: space.dim, 0]
    label = zeta_map(params, z).zeta if not params.harmonic else z
    return CoherentVector(label, Family.PK, v, _tail(v))


def pk_kernel(params, zeta1, zeta2):
    """``<zeta1|zeta2>`` from the closed binomial series."""
    z1, z2 = _label(params, zeta1), _label(params, zeta2)
    if params.harmonic:
        return gk.gk_kernel(params, z1, z2)
    r = params.r
    pref = ((1 - abs(z1) ** 2) * (1 - abs(z2) ** 2)) ** ((r + 1) / 2)
    return complex(pref * (1 - np.conj(z1) * z2) ** (-(r + 1)))


def pk_measure_density(params, zeta):
    """Density of ``dmu`` against ``d^2 zeta``: ``(r/pi) / (1 - |zeta|^2)^2``."""
    x = np.abs(np.asarray(zeta)) ** 2
    if np.any(x >= 1):
        raise ValueError("measure is defined on the open disc only")
    return params.r / np.pi / (1 - x) ** 2


def pk_resolution_check(params, space, quad=None, n_max=12):
    """Residuals ``|M - I|`` for ``n, m <= n_max`` with the disc measure.

    Angular integrals are analytic; the radial part is a Gauss-Legendre
    quadrature in ``u = |zeta|^2`` over ``[0, 1]``.
    """
    if params.harmonic:
        return gk.gk_resolution_check(params, space, quad, n_max)
    quad = quad or QuadratureSpec(node_count=32)
    spec = dataclasses.replace(quad, interval=(0.0, 1.0), transform="identity")
    size = min(space.dim, n_max + 1)
    res = np.zeros((size, size))
    for n in range(size):

        def f(u, n=n):
            c2 = np.abs(pk_coefficients(params, n, np.sqrt(u))[n]) ** 2
            # d^2 zeta = (1/2) du dtheta; the angular integral contributes 2 pi
            return c2 * pk_measure_density(params, np.sqrt(u)) * np.pi

        res[n, n] = abs(integrate(f, spec) - 1.0)
    return res


def f_values(params, n):
    """Diagonal of ``f(N) = (N+1)/g(N+1)``."""
    n = np.asarray(n)
    return (n + 1) / params.energy(n + 1)


def modified_ladder(params, space):
    """Return ``(A-, A+, f(N))`` with ``A- = f(N) a-`` and ``A+ = a+ f(N)``.

    ``f(N)`` stands to the left of ``a-`` so that ``A-`` lowers each PK state
    onto a multiple of itself.
    """
    raise_op, lower_op = ladder_operators(params, space)
    f_op = diagonal_operator(space, f_values(params, space.levels))
    return f_op @ lower_op, raise_op @ f_op, f_op


def pk_eigenvalue(params, zeta):
    """Eigenvalue of ``A-`` on the PK state labelled ``zeta``."""
    z = _label(params, zeta)
    if params.harmonic:
        return z / params.b
    return z / np.sqrt(params.a)


def d_values(params, k):
    """``(k+1)^2/e_{k+1} - k^2/e_k`` with the ``k = 0`` second term set to its limit 0."""
    k = np.asarray(k, dtype=float)
    e_k = params.energy(k)
    with np.errstate(divide="ignore", invalid="ignore"):
        second = np.where(k == 0, 0.0, k * k / np.where(k == 0, 1.0, e_k))
    return (k + 1) ** 2 / params.energy(k + 1) - second


def d_operator(params, space, l=0):
    """``D(N + l)`` as a diagonal operator."""
    if l < 0:
        raise ValueError("shift l must be >= 0")
    return diagonal_operator(space, d_values(params, space.levels + l))


def d_symbol(params, space, l, zeta):
    """``<zeta|D(N+l)|zeta>`` by matrix expectation in the PK state."""
    state = pk_state(params, space, zeta)
    return float(state.expect(d_operator(params, space, l)).real)


def d_series_printed_weights(params, k):
    """Per-level weights ``(k+2)^2 e_{k+1}/e_{k+2}^2 - (k+1)^2 e_k/e_{k+1}^2`` of the printed series."""
    k = np.asarray(k, dtype=float)
    e = params.energy
    return (k + 2) ** 2 * e(k + 1) / e(k + 2) ** 2 - (k + 1) ** 2 * e(k) / e(k + 1) ** 2


def d_symbol_printed_series(params, space, l, zeta):
    """The printed series ``sum_n |c_n|^2 w_{n+l}`` with the weights above."""
    state = pk_state(params, space, zeta)
    w = d_series_printed_weights(params, space.levels + l)
    return float(np.sum(np.abs(state.coeffs) ** 2 * w))


def pk_analytic_basis(params, n, zeta):
    """``G_n(zeta) = zeta^n sqrt(Gamma(n+r+1)/(n! Gamma(r+1)))``."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return complex(zeta) ** n * np.exp(0.5 * log_binomial_weight(params.r, n))


def pk_diff_realization_check(params, n_max, zeta_grid):
    """Differential realisation on ``G_n`` against the ladder actions.

    Rows are ``(name, zeta, paper_residual, corrected_residual)``. Printed forms:
    ``a+ = zeta^2 d + (r+1) zeta``, ``a- = d``, ``G = 2 zeta d + (r+1)`` with
    ``G`` claimed to have eigenvalue ``e_n``. Corrected forms scale the ladders
    by ``sqrt a`` and ``G`` by ``a``, and use ``e_{n+1} - e_n``.
    """
    if params.harmonic:
        raise ValueError("the analytic realisation needs a > 0")
    a, r = params.a, params.r
    sa = np.sqrt(a)
    e = params.energy
    ops = {
        "pk_realization_raise": ([(1.0, 2, 1), (r + 1, 1, 0)], [(sa, 2, 1), (sa * (r + 1), 1, 0)], +1),
        "pk_realization_lower": ([(1.0, 0, 1)], [(sa, 0, 1)], -1),
        "pk_realization_g": ([(2.0, 1, 1), (r + 1, 0, 0)], [(2 * a, 1, 1), (a * (r + 1), 0, 0)], 0),
    }
    rows = []
    for name, (printed, fixed, shift) in ops.items():
        for zeta in zeta_grid:
            zeta = complex(zeta)
            worst_p = worst_c = 0.0
            for n in range(n_max + 1):
                k_n = np.exp(0.5 * log_binomial_weight(r, n))
                if shift == +1:
                    want_p = want_c = np.sqrt(e(n + 1)) * pk_analytic_basis(params, n + 1, zeta)
                elif shift == -1:
                    want_p = want_c = np.sqrt(e(n)) * pk_analytic_basis(params, n - 1, zeta) if n > 0 else 0.0
                else:
                    want_p = e(n) * pk_analytic_basis(params, n, zeta)
                    want_c = (e(n + 1) - e(n)) * pk_analytic_basis(params, n, zeta)
                got_p = gk._eval_monomials(gk.apply_monomial_operator(printed, k_n, n), zeta)
                got_c = gk._eval_monomials(gk.apply_monomial_operator(fixed, k_n, n), zeta)
                worst_p = max(worst_p, gk._rel(got_p, want_p))
                worst_c = max(worst_c, gk._rel(got_c, want_c))
            rows.append((name, zeta, worst_p, worst_c))
    return rows
