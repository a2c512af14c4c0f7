"""Symbols, star products and Moyal brackets over the GK and PK families.

The symbol of an operator ``A`` is ``point -> <point|A|point>``. The star
product of two symbols is the symbol of the matrix product, and the Moyal
bracket is the symbol of the commutator. These truncated-matrix values are the
reference against which every closed-form identity is checked.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field

import numpy as np
from scipy.special import roots_jacobi

from . import gk, pk
from .special import QuadratureError, QuadratureSpec, hyper0f1, integrate, log_gamma
from .spectrum import (
    FockOperator,
    FockSpace,
    OperatorExpr,
    commutator,
    compile_expr,
    diagonal_operators,
    identity,
    ladder_operators,
)
from .states import Family

GK_MODULI = (0.25, 0.5, 1.0, 2.0)
PK_MODULI = (0.2, 0.5, 0.8)
GRID_ANGLES = 8


def polar_grid(moduli, angles=GRID_ANGLES):
    """Points ``m exp(2 pi i k / angles)``; a zero modulus contributes a single point."""
    pts = []
    for m in moduli:
        if m == 0:
            pts.append(0j)
            continue
        for k in range(angles):
            pts.append(m * np.exp(2j * np.pi * k / angles))
    return pts


def default_grid(family):
    return polar_grid(GK_MODULI if Family(family) is Family.GK else PK_MODULI)


def family_state(family, params, space, point):
    if Family(family) is Family.GK:
        return gk.gk_state(params, space, point)
    return pk.pk_state(params, space, point)


@dataclass(frozen=True, eq=False)
class Symbol:
    operator: FockOperator
    family: Family
    params: object

    def __call__(self, point):
        return eval_symbol(self, point)


def eval_symbol(symbol, point):
    state = family_state(symbol.family, symbol.params, symbol.operator.space, point)
    return state.expect(symbol.operator)


def star(A, B, family, params, point):
    """``A(point) * B(point) = <point|AB|point>``."""
    return eval_symbol(Symbol(A @ B, Family(family), params), point)


def moyal(A, B, family, params, point):
    """``{A, B}_M = A * B - B * A``, evaluated as the symbol of ``[A, B]``."""
    return eval_symbol(Symbol(commutator(A, B), Family(family), params), point)


def star_basis_sum(A, B, family, params, point):
    """Star product as the explicit double sum over ``<point|psi_n> <psi_n|AB|psi_m> <psi_m|point>``."""
    c = family_state(family, params, A.space, point).coeffs
    AB = (A @ B).entries
    total = 0j
    for n in range(A.dim):
        row = 0j
        for m in range(A.dim):
            row += AB[n, m] * c[m]
        total += np.conj(c[n]) * row
    return total


def star_integral(A, B, family, params, point, quad=None, angles=None):
    """Star product through the resolution of the identity.

    Evaluates ``int dmu(w) <point|A|w> <w|B|point>`` with a radial rule
    (Gauss-Legendre with node doubling for GK, Gauss-Jacobi in ``u = |w|^2``
    with weight ``(1-u)^{r-1}`` for PK) times ``angles`` uniform angular nodes
    (default: the Fock dimension, which integrates every retained Fourier mode
    exactly).
    """
    family = Family(family)
    space = A.space
    D = space.dim
    angles = angles or D
    theta = 2 * np.pi * np.arange(angles) / angles
    c = family_state(family, params, space, point).coeffs
    left = c.conj() @ A.entries
    right = B.entries @ c
    quad = quad or QuadratureSpec(node_count=64, max_nodes=1024, rtol=1e-10)

    def angular_sum(cols):
        # cols: (D, M, angles) truncated coefficient vectors
        lhs = np.einsum("n,nma->ma", left, cols)
        rhs = np.einsum("nma,n->ma", cols.conj(), right)
        return np.sum(lhs * rhs, axis=1) * (2 * np.pi / angles)

    if family is Family.PK and not params.harmonic:
        r = params.r

        def g(u):
            # (1-u)^{r-1} is carried by the Jacobi weight; what remains is a polynomial
            w = np.sqrt(u)[:, None] * np.exp(1j * theta)[None, :]
            cols = pk.pk_coefficients(params, D - 1, w) / (1 - u)[None, :, None] ** ((r + 1) / 2)
            # dmu = (r/pi) d^2w/(1-u)^2 and d^2w = du dtheta / 2
            return angular_sum(cols) * r / np.pi / 2

        return complex(_jacobi_unit(g, r - 1, D, quad.rtol))

    n_eff = min(D - 1, gk.suggest_gk_dim(params, abs(point), min_dim=1) + 8)
    if params.harmonic:
        b = params.b
        spec = dataclasses.replace(quad, interval=(0.0, b * gk._tail_cut(2 * n_eff)), transform="identity")

        def f(x):
            w = np.sqrt(x)[:, None] * np.exp(1j * theta)[None, :]
            cols = gk.gk_coefficients(params, D - 1, w)
            return angular_sum(cols) / np.pi / b / 2

        return complex(integrate(f, spec))

    a, r = params.a, params.r
    spec = dataclasses.replace(quad, interval=(0.0, gk._tail_cut(2 * n_eff + r + 1)), transform="identity")
    log_pref = np.log(2.0 / (a * np.exp(log_gamma(r + 1))))
    levels = np.arange(D).reshape(-1, 1, 1)

    def f(t):
        x = a * t * t / 4
        log_w = log_pref + (r / 2) * np.log(x / a) + gk.log_bessel_k(r, t)
        # unnormalised basis values F_n(w) with sqrt of the weight folded in;
        # the N^2 of the density cancels the 1/N^2 of the two states
        log_mod = levels * 0.5 * np.log(x)[None, :, None] - 0.5 * gk.log_rho(params, levels)
        log_mod = log_mod + 0.5 * log_w[None, :, None]
        cols = np.exp(log_mod) * np.exp(1j * levels * theta[None, None, :])
        return angular_sum(cols) / np.pi * (a * t / 2) / 2

    return complex(integrate(f, spec))


def _jacobi_unit(g, alpha, m, rtol):
    """``int_0^1 (1-u)^alpha g(u) du`` for polynomial ``g`` of degree below ``2m``, checked at ``2m`` nodes."""
    vals = []
    for k in (m, 2 * m):
        x, w = roots_jacobi(k, alpha, 0.0)
        vals.append(np.sum(w * g((x + 1) / 2)) * 2.0 ** (-alpha - 1))
    if abs(vals[1] - vals[0]) > rtol * max(1.0, abs(vals[1])):
        raise QuadratureError("Gauss-Jacobi estimates disagree", tuple(vals))
    return vals[1]


def _gk_ratio(params, z):
    y = abs(complex(z)) ** 2 / params.a
    r = params.r
    return hyper0f1(r + 2, y) / hyper0f1(r + 1, y)


def g_symbol_closed_form(params, z):
    """``<z|G|z>`` in closed form: ``2|z|^2/(r+1) 0F1(r+2)/0F1(r+1) + a + b``."""
    if params.harmonic:
        return float(params.b)
    r = params.r
    return float(2 * abs(complex(z)) ** 2 / (r + 1) * _gk_ratio(params, z) + params.a + params.b)


def g_symbol_printed(params, z):
    """Printed closed form, which carries an extra factor ``a`` on the first term."""
    if params.harmonic:
        return float(params.b)
    r = params.r
    return float(2 * params.a * abs(complex(z)) ** 2 / (r + 1) * _gk_ratio(params, z) + params.a + params.b)


def g_symbol_series_printed(params, z):
    """Printed series form ``2a z d/dz sum_n F_n(zbar) F_n(z) + a + b`` (no normalisation)."""
    if params.harmonic:
        return float(params.b)
    r = params.r
    y = abs(complex(z)) ** 2 / params.a
    return float(2 * abs(complex(z)) ** 2 / (r + 1) * hyper0f1(r + 2, y) + params.a + params.b)


def _kernel_printed(params, z1, z2):
    num = hyper0f1(params.r + 1, np.conj(z1) * z2 / params.a)
    n1 = gk.normalization_sq(params, abs(z1) ** 2)
    n2 = gk.normalization_sq(params, abs(z2) ** 2)
    return complex(num / (n1 * n2) ** 2)


PASS = "PASS"
CORRECTED = "CORRECTED"
FAIL = "FAIL"


@dataclass(frozen=True)
class ReportEntry:
    identity: str
    point: complex
    paper_residual: float
    corrected_residual: float
    status: str


@dataclass
class ValidationReport:
    family: Family
    params: object
    dim: int
    tol: float
    entries: list = field(default_factory=list)

    def add(self, identity, point, paper_residual, corrected_residual):
        p, c = float(paper_residual), float(corrected_residual)
        if not c < self.tol:
            status = FAIL
        elif p < self.tol:
            status = PASS
        else:
            status = CORRECTED
        self.entries.append(ReportEntry(identity, complex(point), p, c, status))

    @property
    def has_failures(self):
        return any(e.status == FAIL for e in self.entries)

    def identities(self):
        return list(dict.fromkeys(e.identity for e in self.entries))

    def select(self, identity):
        return [e for e in self.entries if e.identity == identity]

    def worst(self, identity, which="corrected"):
        attr = "corrected_residual" if which == "corrected" else "paper_residual"
        return max(getattr(e, attr) for e in self.select(identity))

    def status_of(self, identity):
        """Worst status over the grid for one identity."""
        order = {PASS: 0, CORRECTED: 1, FAIL: 2}
        return max((e.status for e in self.select(identity)), key=order.__getitem__)

    def counts(self):
        out = {PASS: 0, CORRECTED: 0, FAIL: 0}
        for e in self.entries:
            out[e.status] += 1
        return out


def residual(lhs, rhs):
    """``|lhs - rhs| / max(1, |rhs|)``: absolute for small values, relative for large."""
    return abs(complex(lhs) - complex(rhs)) / max(1.0, abs(complex(rhs)))


def random_cubics(seed=0):
    """Two cubic polynomials with complex coefficients in the unit square."""
    rng = np.random.default_rng(seed)
    p = rng.uniform(-1, 1, 4) + 1j * rng.uniform(-1, 1, 4)
    q = rng.uniform(-1, 1, 4) + 1j * rng.uniform(-1, 1, 4)
    return p, q


def _poly_expr(coeffs, letter):
    terms = tuple((c, (letter,) * k) for k, c in enumerate(coeffs))
    return OperatorExpr(terms)


def _gk_identities(params, space, seed):
    """Yield ``(name, lhs(point), paper_rhs(point), corrected_rhs(point))``."""
    R, L = ladder_operators(params, space)
    _, _, G = diagonal_operators(params, space)
    I = identity(space)
    fam = Family.GK

    def sym(op):
        return lambda z: eval_symbol(Symbol(op, fam, params), z)

    def st(A, B):
        return lambda z: star(A, B, fam, params, z)

    def mo(A, B):
        return lambda z: moyal(A, B, fam, params, z)

    g = lambda z: g_symbol_closed_form(params, z)
    ab = params.a + params.b
    a = params.a
    conj = np.conj

    out = [
        ("gk_eigenstate", lambda z: gk.gk_eigen_residual(params, space, z), lambda z: 0.0, lambda z: 0.0),
        ("gk_symbol_lower", sym(L), lambda z: z, lambda z: z),
        ("gk_symbol_raise", sym(R), conj, conj),
        ("gk_unit_one_star_one", st(I, I), lambda z: 1.0, lambda z: 1.0),
        ("gk_unit_one_star_z", st(I, L), lambda z: z, lambda z: z),
        ("gk_unit_z_star_one", st(L, I), lambda z: z, lambda z: z),
        ("gk_unit_one_star_zbar", st(I, R), conj, conj),
        ("gk_unit_zbar_star_one", st(R, I), conj, conj),
    ]
    for p in (2, 3):
        Lp = compile_expr(OperatorExpr.word(["L"] * p), params, space)
        Rp = compile_expr(OperatorExpr.word(["R"] * p), params, space)
        Lq = compile_expr(OperatorExpr.word(["L"] * (p - 1)), params, space)
        Rq = compile_expr(OperatorExpr.word(["R"] * (p - 1)), params, space)
        out.append((f"gk_power_z_star_pow{p}", st(L, Lq), lambda z, p=p: z**p, lambda z, p=p: z**p))
        out.append((f"gk_power_zbar_star_pow{p}", st(R, Rq), lambda z, p=p: conj(z) ** p, lambda z, p=p: conj(z) ** p))
        out.append((f"gk_power_z_pow{p}_symbol", sym(Lp), lambda z, p=p: z**p, lambda z, p=p: z**p))
        out.append((f"gk_power_zbar_pow{p}_symbol", sym(Rp), lambda z, p=p: conj(z) ** p, lambda z, p=p: conj(z) ** p))

    pc, qc = random_cubics(seed)
    P_an = compile_expr(_poly_expr(pc, "L"), params, space)
    Q_an = compile_expr(_poly_expr(qc, "L"), params, space)
    P_anti = compile_expr(_poly_expr(pc, "R"), params, space)
    Q_anti = compile_expr(_poly_expr(qc, "R"), params, space)
    pv = lambda w: np.polyval(pc[::-1], w)
    qv = lambda w: np.polyval(qc[::-1], w)
    out += [
        ("gk_poly_analytic", st(P_an, Q_an), lambda z: pv(z) * qv(z), lambda z: pv(z) * qv(z)),
        ("gk_poly_antianalytic", st(P_anti, Q_anti),
         lambda z: pv(conj(z)) * qv(conj(z)), lambda z: pv(conj(z)) * qv(conj(z))),
        ("gk_poly_zbar_star_z", st(R, L), lambda z: abs(z) ** 2, lambda z: abs(z) ** 2),
        ("gk_poly_factorization", st(P_anti, Q_an), lambda z: pv(conj(z)) * qv(z), lambda z: pv(conj(z)) * qv(z)),
        ("gk_z_star_zbar", st(L, R), lambda z: abs(z) ** 2 - g(z), lambda z: abs(z) ** 2 + g(z)),
        ("gk_g_closed_form", sym(G), lambda z: g_symbol_printed(params, z), g),
        ("gk_g_series_form", sym(G), lambda z: g_symbol_series_printed(params, z), g),
        ("gk_moyal_moyal_z_zbar", mo(L, R), g, g),
        ("gk_moyal_moyal_z_g", mo(L, G), lambda z: 2 * a * z, lambda z: 2 * a * z),
        ("gk_moyal_moyal_zbar_g", mo(R, G), lambda z: -2 * a * conj(z), lambda z: -2 * a * conj(z)),
        ("gk_mixed_zbar_star_g", st(R, G), lambda z: g(z) + conj(z) * ab - ab, lambda z: conj(z) * g(z)),
        ("gk_mixed_g_star_zbar", st(G, R), lambda z: g(z) + conj(z) * (3 * a + params.b) - ab,
         lambda z: conj(z) * (g(z) + 2 * a)),
        ("gk_mixed_g_star_z", st(G, L), lambda z: g(z) + z * ab - ab, lambda z: z * g(z)),
        ("gk_mixed_z_star_g", st(L, G), lambda z: g(z) + z * (3 * a + params.b) - ab, lambda z: z * (g(z) + 2 * a)),
    ]
    RL = R @ L
    out += [
        ("gk_example_a_star_b", st(R, RL), lambda z: conj(z) ** 2 * z, lambda z: conj(z) ** 2 * z),
        ("gk_example_b_star_a", st(RL, R), lambda z: conj(z) ** 2 * z + g(z) + conj(z) * ab - ab,
         lambda z: conj(z) ** 2 * z + conj(z) * g(z)),
        ("gk_example_moyal_a_b", mo(R, RL), lambda z: ab - g(z) - conj(z) * ab, lambda z: -conj(z) * g(z)),
    ]
    if not params.harmonic:
        partner = 0.5 + 0.25j
        out.append((
            "gk_kernel_overlap",
            lambda z: complex(np.vdot(gk.gk_state(params, space, partner).coeffs, gk.gk_state(params, space, z).coeffs)),
            lambda z: _kernel_printed(params, partner, z),
            lambda z: gk.gk_kernel(params, partner, z),
        ))
    return out


def _pk_identities(params, space):
    Am, Ap, _ = pk.modified_ladder(params, space)
    I = identity(space)
    Dl = {l: pk.d_operator(params, space, l) for l in range(4)}
    fam = Family.PK

    def sym(op):
        return lambda z: eval_symbol(Symbol(op, fam, params), z)

    def st(A, B):
        return lambda z: star(A, B, fam, params, z)

    def dsym(l):
        return lambda z: pk.d_symbol(params, space, l, z)

    s = lambda z: pk.pk_eigenvalue(params, z)
    sb = lambda z: np.conj(pk.pk_eigenvalue(params, z))
    conj = np.conj
    out = [
        ("pk_symbol_A_minus", sym(Am), lambda z: z, s),
        ("pk_symbol_A_plus", sym(Ap), conj, sb),
        ("pk_star_one_star_zeta", st(I, Am), lambda z: z, s),
        ("pk_star_zeta_star_one", st(Am, I), lambda z: z, s),
        ("pk_star_one_star_zetabar", st(I, Ap), conj, sb),
        ("pk_star_zetabar_star_one", st(Ap, I), conj, sb),
        ("pk_star_zetabar_star_zeta", st(Ap, Am), lambda z: abs(z) ** 2, lambda z: abs(s(z)) ** 2),
        ("pk_star_zeta_star_zetabar", st(Am, Ap), lambda z: abs(z) ** 2 + dsym(0)(z),
         lambda z: abs(s(z)) ** 2 + dsym(0)(z)),
        ("pk_moyal_zeta_zetabar", lambda z: moyal(Am, Ap, fam, params, z), dsym(0), dsym(0)),
    ]
    for l in range(3):
        d0, d1 = dsym(l), dsym(l + 1)
        out += [
            (f"pk_star_zeta_star_D{l}", st(Am, Dl[l]), lambda z, d1=d1: z * d1(z), lambda z, d1=d1: s(z) * d1(z)),
            (f"pk_star_zetabar_star_D{l}", st(Ap, Dl[l]), lambda z, d0=d0: conj(z) * d0(z),
             lambda z, d0=d0: sb(z) * d0(z)),
            (f"pk_star_D{l}_star_zeta", st(Dl[l], Am), lambda z, d0=d0: z * d0(z), lambda z, d0=d0: s(z) * d0(z)),
            (f"pk_star_D{l}_star_zetabar", st(Dl[l], Ap), lambda z, d1=d1: conj(z) * d1(z),
             lambda z, d1=d1: sb(z) * d1(z)),
        ]
    B = Ap @ Am
    out += [
        ("pk_example_a_star_b", st(Ap, B), lambda z: conj(z) ** 2 * z, lambda z: sb(z) ** 2 * s(z)),
        ("pk_example_b_star_a", st(B, Ap), lambda z: conj(z) ** 2 * z + conj(z) * dsym(0)(z),
         lambda z: sb(z) ** 2 * s(z) + sb(z) * dsym(0)(z)),
        ("pk_example_moyal_b_a", lambda z: moyal(B, Ap, fam, params, z), lambda z: conj(z) * dsym(0)(z),
         lambda z: sb(z) * dsym(0)(z)),
    ]
    for l in range(3):
        out.append((
            f"pk_d_series_l{l}",
            dsym(l),
            lambda z, l=l: pk.d_symbol_printed_series(params, space, l, z),
            lambda z, l=l: _d_symbol_exact(params, l, z),
        ))
    if not params.harmonic:
        partner = 0.3 - 0.2j
        out.append((
            "pk_kernel_overlap",
            lambda z: complex(np.vdot(pk.pk_state(params, space, partner).coeffs, pk.pk_state(params, space, z).coeffs)),
            lambda z: pk.pk_kernel(params, partner, z),
            lambda z: pk.pk_kernel(params, partner, z),
        ))
        out.append((
            "pk_zeta_map",
            lambda z: z,
            lambda z: pk.zeta_map_literal(params, pk.inverse_zeta_map(params, z)),
            lambda z: pk.zeta_map(params, pk.inverse_zeta_map(params, z)).zeta,
        ))
    return out


def _d_symbol_exact(params, l, zeta, n_max=2000):
    """``sum_n |c_n|^2 D(n+l)`` with untruncated coefficients (to ``n_max``)."""
    c = pk.pk_coefficients(params, n_max, zeta)
    return float(np.sum(np.abs(c) ** 2 * pk.d_values(params, np.arange(n_max + 1) + l)))


def run_identity_suite(family, params, space, grid=None, tol=1e-8, seed=0, n_max=10):
    """Evaluate every identity at every grid point and collect a report.

    Each entry holds the residual of the printed closed form and of the
    corrected form against the truncated-matrix value.
    """
    family = Family(family)
    grid = default_grid(family) if grid is None else list(grid)
    report = ValidationReport(family, params, space.dim, tol)
    if family is Family.GK:
        table = _gk_identities(params, space, seed)
    else:
        table = _pk_identities(params, space)
    for name, lhs, paper, fixed in table:
        for z in grid:
            z = complex(z)
            v = lhs(z)
            report.add(name, z, residual(v, paper(z)), residual(v, fixed(z)))
    if not params.harmonic:
        check = gk.gk_diff_realization_check if family is Family.GK else pk.pk_diff_realization_check
        for name, z, p, c in check(params, n_max, grid):
            report.add(name, z, p, c)
    return report


def convergence_sweep(family, params, dims=(16, 32, 64), grid=None, tol=1e-8):
    """Worst corrected residual per identity for each Fock dimension."""
    out = {}
    for d in dims:
        rep = run_identity_suite(family, params, FockSpace(d), grid, tol)
        for name in rep.identities():
            out.setdefault(name, []).append(rep.worst(name))
    return out
