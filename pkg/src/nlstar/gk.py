"""Gazeau-Klauder coherent states, eigenstates of the lowering operator.

For ``a > 0`` the state is ``|z> = N^{-1} sum_n z^n / sqrt(rho_n) |psi_n>`` with
``rho_n = e_1 e_2 ... e_n = a^n n! Gamma(n+r+1) / Gamma(r+1)`` and
``N^2 = 0F1(; r+1; |z|^2/a)``. For ``a = 0`` it is the canonical coherent state
of the oscillator with level spacing ``b``.

The resolution of the identity uses the weight
``w(x) = 2/(a Gamma(r+1)) (x/a)^{r/2} K_r(2 sqrt(x/a))`` in ``x = |z|^2``,
whose moments are ``rho_n``, so that ``dmu = (1/pi) 0F1(; r+1; x/a) w(x) d^2z``.
"""

from __future__ import annotations

import dataclasses

import numpy as np

from .special import ConvergenceError, QuadratureSpec, bessel_i, bessel_k, hyper0f1, integrate, log_bessel_k, log_gamma
from .spectrum import ladder_operators
from .states import CoherentVector, Family, _tail


def log_rho(params, n):
    """``log(e_1 e_2 ... e_n)``, vectorised over ``n``."""
    n = np.asarray(n, dtype=float)
    if params.harmonic:
        return n * np.log(params.b) + log_gamma(n + 1)
    r = params.r
    return n * np.log(params.a) + log_gamma(n + 1) + log_gamma(n + r + 1) - log_gamma(r + 1)


def normalization_sq(params, x):
    """``N^2(x)`` at ``x = |z|^2``: ``0F1(; r+1; x/a)``, or ``exp(x/b)`` when ``a = 0``."""
    if params.harmonic:
        return np.exp(np.asarray(x, dtype=float) / params.b)
    return hyper0f1(params.r + 1, np.asarray(x, dtype=float) / params.a)


def suggest_gk_dim(params, max_modulus, rel=1e-16, min_dim=16):
    """Smallest ``D`` whose last retained series term of ``N^2`` is below ``rel`` of the sum."""
    x = float(max_modulus) ** 2
    if x == 0:
        return min_dim
    total = 0.0
    term = 1.0
    n = 0
    while True:
        total += term
        if n + 1 >= min_dim and term < rel * total and n > x:
            return n + 1
        n += 1
        term *= x / params.energy(n)


def gk_coefficients(params, n_max, z):
    """Exact coefficients ``c_0..c_{n_max}`` at (an array of) points ``z``.

    Returns an array of shape ``(n_max + 1,) + z.shape`` built in log space, so
    large ``|z|`` does not overflow.
    """
    z = np.asarray(z, dtype=complex)
    n = np.arange(n_max + 1).reshape((-1,) + (1,) * z.ndim)
    x = np.abs(z) ** 2
    log_norm = 0.5 * np.log(normalization_sq(params, x))
    with np.errstate(divide="ignore"):
        log_mod = n * np.log(np.abs(z)) - 0.5 * log_rho(params, n) - log_norm
    log_mod = np.where((n == 0) & (np.abs(z) == 0), -log_norm, log_mod)
    return np.exp(log_mod) * np.exp(1j * n * np.angle(z))


def gk_state(params, space, z):
    """GK state ``|z>`` truncated to ``space``, normalised with the full series."""
    z = complex(z)
    e = params.energy(np.arange(1, space.dim))
    c = np.empty(space.dim, dtype=complex)
    c[0] = 1.0 / np.sqrt(normalization_sq(params, abs(z) ** 2))
    for n in range(space.dim - 1):
        c[n + 1] = z * c[n] / np.sqrt(e[n])
    return CoherentVector(z, Family.GK, c, _tail(c))


def gk_kernel(params, z1, z2):
    """Normalised overlap ``<z1|z2>``."""
    z1, z2 = complex(z1), complex(z2)
    num_arg = np.conj(z1) * z2
    if params.harmonic:
        num = np.exp(num_arg / params.b)
    else:
        num = hyper0f1(params.r + 1, num_arg / params.a)
    den = np.sqrt(normalization_sq(params, abs(z1) ** 2) * normalization_sq(params, abs(z2) ** 2))
    return complex(num / den)


def gk_expect(op, state):
    return state.expect(op)


def gk_measure_weight(params, x):
    """Radial weight ``w(x)`` whose moments are ``rho_n`` (``a = 0``: ``exp(-x/b)/b``)."""
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0):
        raise ValueError("measure weight needs x > 0")
    if params.harmonic:
        return np.exp(-x / params.b) / params.b
    a, r = params.a, params.r
    y = x / a
    return 2.0 / (a * np.exp(log_gamma(r + 1))) * y ** (r / 2) * bessel_k(r, 2 * np.sqrt(y))


def gk_measure_density(params, x):
    """``lambda(x) = N^2(x) w(x)``; the measure is ``(1/pi) lambda(|z|^2) d^2z``."""
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0):
        raise ValueError("measure density needs x > 0")
    if params.harmonic:
        return np.full_like(x, 1.0 / params.b)
    return normalization_sq(params, x) * gk_measure_weight(params, x)


def _tail_cut(k):
    # t^k e^{-t} has dropped below e^{-40} of its peak past this point
    return k + 40.0 + 12.0 * np.sqrt(k + 1.0)


def gk_moment(params, n, quad=None):
    """``int_0^inf x^n w(x) dx`` by quadrature in ``t = 2 sqrt(x/a)``."""
    quad = quad or QuadratureSpec(node_count=64)
    if params.harmonic:
        b = params.b
        spec = dataclasses.replace(quad, interval=(0.0, b * _tail_cut(n)), transform="identity")
        return integrate(lambda x: x**n * np.exp(-x / b) / b, spec)
    a, r = params.a, params.r
    spec = dataclasses.replace(quad, interval=(0.0, _tail_cut(2 * n + r + 1)), transform="identity")
    log_pref = np.log(2.0 / (a * np.exp(log_gamma(r + 1))))

    def f(t):
        x = a * t * t / 4
        log_w = log_pref + (r / 2) * np.log(x / a) + log_bessel_k(r, t)
        return np.exp(n * np.log(x) + log_w) * (a * t / 2)

    return integrate(f, spec)


def gk_moment_closed(params, n):
    return float(np.exp(log_rho(params, n)))


def gk_resolution_check(params, space, quad=None, n_max=12):
    """Residuals ``|M - I|`` of ``M_nm = int c_n conj(c_m) dmu`` for ``n, m <= n_max``.

    The angular integral is done analytically, so off-diagonal entries vanish
    exactly; each diagonal entry is a radial quadrature of the state coefficients
    against the measure density.
    """
    quad = quad or QuadratureSpec(node_count=64)
    size = min(space.dim, n_max + 1)
    res = np.zeros((size, size))
    for n in range(size):
        if params.harmonic:
            b = params.b
            spec = dataclasses.replace(quad, interval=(0.0, b * _tail_cut(n)), transform="identity")

            def f(x, n=n):
                c = gk_coefficients(params, n, np.sqrt(x))[n]
                return np.abs(c) ** 2 * gk_measure_density(params, x)

        else:
            a, r = params.a, params.r
            spec = dataclasses.replace(quad, interval=(0.0, _tail_cut(2 * n + r + 1)), transform="identity")
            log_pref = np.log(2.0 / (a * np.exp(log_gamma(r + 1))))

            def f(t, n=n):
                x = a * t * t / 4
                log_c2 = 2 * np.log(np.abs(gk_coefficients(params, n, np.sqrt(x))[n]))
                log_f0f1 = np.log(normalization_sq(params, x))
                log_w = log_pref + (r / 2) * np.log(x / a) + log_bessel_k(r, t)
                return np.exp(log_c2 + log_f0f1 + log_w) * (a * t / 2)

        res[n, n] = abs(integrate(f, spec) - 1.0)
    return res


def gk_printed_measure_residuals(params, n_max=10, quad=None):
    """Diagonal residuals for the measure ``(2/(pi a)) I_r(2|z|/sqrt a) K_{r/2}(2|z|/sqrt a) d^2z``.

    This is the literal reading of the printed weight with ``r = b/a`` as the
    Bessel order and ``|z|`` in the argument. Kept as a diagnostic; it does not
    resolve the identity.
    """
    quad = quad or QuadratureSpec(node_count=64)
    a, r = params.a, params.r
    out = []
    for n in range(n_max + 1):
        # rho = |z|, integrand over d^2z = rho d rho d theta
        upper = np.sqrt(a) / 2 * _tail_cut(2 * n + 2)
        spec = dataclasses.replace(quad, interval=(0.0, upper), transform="identity")

        def f(rho, n=n):
            c2 = np.abs(gk_coefficients(params, n, rho)[n]) ** 2
            s = 2 * rho / np.sqrt(a)
            return c2 * (2 / (np.pi * a)) * bessel_i(r, s) * bessel_k(r / 2, s) * rho * 2 * np.pi

        try:
            out.append(abs(integrate(f, spec) - 1.0))
        except ConvergenceError:
            out.append(float("nan"))
    return np.array(out)


def gk_analytic_basis(params, n, z):
    """``F_n(z) = z^n / sqrt(rho_n)``; ``F_n(z) / N`` equals the state coefficient."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return complex(z) ** n * np.exp(-0.5 * log_rho(params, n))


def apply_monomial_operator(terms, coef, n):
    """Apply ``sum_j c_j z^{p_j} d^{d_j}/dz^{d_j}`` to ``coef * z^n``.

    ``terms`` is a list of ``(c_j, p_j, d_j)``. Returns a dict mapping power to
    coefficient.
    """
    out = {}
    for c, p, d in terms:
        if d > n:
            continue
        falling = 1.0
        for k in range(d):
            falling *= n - k
        power = n + p - d
        out[power] = out.get(power, 0.0) + c * coef * falling
    return out


def _eval_monomials(poly, z):
    return sum(c * z**p for p, c in poly.items())


def _rel(lhs, rhs):
    return abs(lhs - rhs) / max(1.0, abs(rhs))


def gk_diff_realization_check(params, n_max, z_grid):
    """Compare differential realisations on ``F_n`` with the ladder actions.

    Returns rows ``(name, z, paper_residual, corrected_residual)`` where each
    residual is the worst case over ``n <= n_max``. The printed lowering
    operator ``z d^2/dz^2 + (r+1) d/dz`` is compared alongside the rescaled
    ``a (z d^2/dz^2 + (r+1) d/dz)``.
    """
    if params.harmonic:
        raise ValueError("the analytic realisation needs a > 0")
    a, b, r = params.a, params.b, params.r
    lower_printed = [(1.0, 1, 2), (r + 1, 0, 1)]
    lower_fixed = [(a, 1, 2), (a * (r + 1), 0, 1)]
    ops = {
        "gk_realization_raise": ([(1.0, 1, 0)], [(1.0, 1, 0)], +1),
        "gk_realization_lower": (lower_printed, lower_fixed, -1),
        "gk_realization_g": ([(2 * a, 1, 1), (a + b, 0, 0)], [(2 * a, 1, 1), (a + b, 0, 0)], 0),
    }
    rows = []
    for name, (printed, fixed, shift) in ops.items():
        for z in z_grid:
            z = complex(z)
            worst_p = worst_c = 0.0
            for n in range(n_max + 1):
                k_n = np.exp(-0.5 * log_rho(params, n))
                if shift == +1:
                    want = np.sqrt(params.energy(n + 1)) * gk_analytic_basis(params, n + 1, z)
                elif shift == -1:
                    want = np.sqrt(params.energy(n)) * gk_analytic_basis(params, n - 1, z) if n > 0 else 0.0
                else:
                    want = (params.energy(n + 1) - params.energy(n)) * gk_analytic_basis(params, n, z)
                got_p = _eval_monomials(apply_monomial_operator(printed, k_n, n), z)
                got_c = _eval_monomials(apply_monomial_operator(fixed, k_n, n), z)
                worst_p = max(worst_p, _rel(got_p, want))
                worst_c = max(worst_c, _rel(got_c, want))
            rows.append((name, z, worst_p, worst_c))
    return rows


def gk_eigen_residual(params, space, z):
    """``||(a- - z) c||`` for the truncated state."""
    _, lower = ladder_operators(params, space)
    state = gk_state(params, space, z)
    return float(np.linalg.norm(lower.entries @ state.coeffs - z * state.coeffs))
