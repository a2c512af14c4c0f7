import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nlstar import pk
from nlstar.spectrum import FockSpace, SpectrumParams, commutator, ladder_operators

PT = SpectrumParams(1.0, 4.0)
ANH = SpectrumParams(1.5, 2.5)
HARM = SpectrumParams(0.0, 1.0)


def test_coefficients_integer_r_binomial():
    # r = 4: Gamma(n+5)/(n! 4!) = C(n+4, 4)
    zeta = 0.4 - 0.3j
    want = [(1 - abs(zeta) ** 2) ** 2.5 * math.sqrt(math.comb(n + 4, 4)) * zeta**n for n in range(30)]
    assert np.allclose(pk.pk_coefficients(PT, 29, zeta), want, rtol=1e-13)
    assert np.allclose(pk.pk_state(PT, FockSpace(30), zeta).coeffs, want, rtol=1e-13)


@pytest.mark.parametrize("p", [PT, ANH])
@pytest.mark.parametrize("m", [0.2, 0.5, 0.8])
def test_state_normalised_at_suggested_dim(p, m):
    d = pk.suggest_pk_dim(p, m)
    s = pk.pk_state(p, FockSpace(d), m * np.exp(0.7j))
    assert s.tail_mass < 1e-12
    assert np.linalg.norm(s.coeffs) == pytest.approx(1.0, abs=1e-12)


def test_default_dim_too_small_at_grid_edge():
    assert pk.suggest_pk_dim(PT, 0.8) > 64
    assert pk.pk_state(PT, FockSpace(64), 0.8).tail_mass > 1e-12


@pytest.mark.parametrize("z", [0.3, 0.5 + 0.5j, -0.9j])
def test_displacement_matches_disc_state(z):
    space = FockSpace(64)
    d = pk.displacement_state(PT, space, z)
    s = pk.pk_state(PT, space, pk.zeta_map(PT, z))
    assert np.max(np.abs(d.coeffs - s.coeffs)) < 1e-12
    assert d.label == pytest.approx(s.label)


def test_unguarded_displacement_is_contaminated():
    space = FockSpace(64)
    z = 1.1
    bad = pk.displacement_state(PT, space, z, guard=0)
    good = pk.pk_state(PT, space, pk.zeta_map(PT, z))
    assert np.max(np.abs(bad.coeffs - good.coeffs)) > 1e-8


def test_zeta_map_round_trip_and_disc():
    for z in [0.1, 1 + 2j, -3.0, 5j]:
        zeta = pk.zeta_map(ANH, z)
        assert abs(zeta.zeta) < 1
        assert pk.inverse_zeta_map(ANH, zeta) == pytest.approx(z, rel=1e-12)
    assert pk.zeta_map(PT, 0).zeta == 0
    with pytest.raises(ValueError):
        pk.zeta_map(HARM, 0.3)


def test_literal_map_agrees_only_on_positive_axis():
    assert pk.zeta_map_literal(PT, 0.7) == pytest.approx(pk.zeta_map(PT, 0.7).zeta, abs=1e-15)
    assert abs(pk.zeta_map_literal(PT, 0.7j) - pk.zeta_map(PT, 0.7j).zeta) > 1e-2


def test_disc_point_validation():
    with pytest.raises(ValueError):
        pk.DiscPoint(1.0)
    with pytest.raises(ValueError):
        pk.pk_state(PT, FockSpace(8), 1.2)


@pytest.mark.parametrize("p", [PT, ANH])
def test_kernel_matches_inner_product(p):
    z1, z2 = 0.3 - 0.4j, 0.6j
    space = FockSpace(200)
    v1, v2 = pk.pk_state(p, space, z1), pk.pk_state(p, space, z2)
    assert pk.pk_kernel(p, z1, z2) == pytest.approx(np.vdot(v1.coeffs, v2.coeffs), abs=1e-14)


@pytest.mark.parametrize("p", [PT, ANH, SpectrumParams(1.0, 2.0)])
def test_resolution_of_identity(p):
    assert pk.pk_resolution_check(p, FockSpace(64), n_max=10).max() < 1e-10


def test_resolution_harmonic_delegates():
    assert pk.pk_resolution_check(HARM, FockSpace(64), n_max=6).max() < 1e-10


def test_measure_density():
    assert pk.pk_measure_density(PT, 0.0) == pytest.approx(4 / np.pi)
    with pytest.raises(ValueError):
        pk.pk_measure_density(PT, 1.0)


@pytest.mark.parametrize("p", [PT, ANH, SpectrumParams(0.4, 3.0)])
@pytest.mark.parametrize("zeta", [0.25, -0.5 + 0.3j])
def test_modified_lowering_eigenvalue(p, zeta):
    space = FockSpace(pk.suggest_pk_dim(p, abs(zeta)))
    A, _, _ = pk.modified_ladder(p, space)
    s = pk.pk_state(p, space, zeta)
    r = A.entries @ s.coeffs - pk.pk_eigenvalue(p, zeta) * s.coeffs
    assert np.max(np.abs(r[:-1])) < 1e-14


def test_plain_lowering_is_not_diagonal_on_pk_states():
    space = FockSpace(80)
    _, L = ladder_operators(PT, space)
    s = pk.pk_state(PT, space, 0.5)
    v = L.entries @ s.coeffs
    lam = np.vdot(s.coeffs, v)
    assert np.linalg.norm(v - lam * s.coeffs) > 0.1


def test_commutator_is_d_operator():
    space = FockSpace(40)
    A, Ap, _ = pk.modified_ladder(ANH, space)
    c = commutator(A, Ap)
    d = pk.d_operator(ANH, space)
    assert np.max(np.abs(c.block() - d.block())) < 1e-15


def test_d_values_explicit():
    e = ANH.energy
    for k in range(1, 8):
        assert pk.d_values(ANH, k) == pytest.approx((k + 1) ** 2 / e(k + 1) - k * k / e(k), rel=1e-14)
    assert pk.d_values(ANH, 0) == pytest.approx(1 / e(1))
    with pytest.raises(ValueError):
        pk.d_operator(ANH, FockSpace(4), -1)


@settings(max_examples=30)
@given(st.floats(0.1, 4), st.floats(0.1, 6), st.integers(2, 30))
def test_ladder_identities_hold_for_any_spectrum(a, b, d):
    p = SpectrumParams(a, b)
    space = FockSpace(d)
    A, Ap, f = pk.modified_ladder(p, space)
    R, L = ladder_operators(p, space)
    assert np.allclose(A.entries, Ap.entries.conj().T)
    assert np.allclose((f @ L).entries, A.entries)
    assert np.allclose(commutator(A, Ap).block(), pk.d_operator(p, space).block(), atol=1e-13)


def test_d_symbol_sum_and_printed_series():
    space = FockSpace(200)
    zeta = 0.5
    c2 = np.abs(pk.pk_state(PT, space, zeta).coeffs) ** 2
    assert pk.d_symbol(PT, space, 1, zeta) == pytest.approx(np.sum(c2 * pk.d_values(PT, space.levels + 1)), rel=1e-14)
    printed = pk.d_symbol_printed_series(PT, space, 0, zeta)
    assert abs(printed - pk.d_symbol(PT, space, 0, zeta)) > 1e-4


def test_harmonic_pk_is_canonical():
    space = FockSpace(40)
    s = pk.pk_state(HARM, space, 0.6)
    want = [np.exp(-0.18) * 0.6**n / math.sqrt(math.factorial(n)) for n in range(40)]
    assert np.allclose(s.coeffs, want, rtol=1e-13)
    assert pk.pk_eigenvalue(HARM, 0.6) == 0.6


def test_diff_realization_rows():
    rows = pk.pk_diff_realization_check(ANH, 8, [0.2, 0.3 + 0.4j])
    assert max(r[3] for r in rows) < 1e-12
    paper = {n: max(r[2] for r in rows if r[0] == n) for n, *_ in rows}
    assert paper["pk_realization_lower"] > 1e-3
    assert paper["pk_realization_g"] > 1e-3
