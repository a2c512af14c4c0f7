import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nlstar.spectrum import (
    FockOperator,
    FockSpace,
    Letter,
    OperatorExpr,
    SpectrumParams,
    commutator,
    compile_expr,
    diagonal_operators,
    energy,
    identity,
    ladder_operators,
    shifted_energy_operator,
)

EDGE = 1e-12
params_st = st.builds(
    SpectrumParams,
    st.floats(0, 5, allow_nan=False),
    st.floats(0.05, 10, allow_nan=False),
)


@pytest.mark.parametrize("a,b,n,want", [(1, 2, 3, 15), (0, 1, 5, 5), (1, 4, 1, 5), (2.5, 1, 0, 0)])
def test_energy(a, b, n, want):
    assert energy(SpectrumParams(a, b), n) == want


@pytest.mark.parametrize("a,b", [(-1, 1), (1, 0), (0, -2), (np.nan, 1)])
def test_params_validation(a, b):
    with pytest.raises(ValueError):
        SpectrumParams(a, b)


def test_r_undefined_for_harmonic():
    assert SpectrumParams(2, 3).r == 1.5
    with pytest.raises(ValueError):
        SpectrumParams(0, 1).r


@settings(max_examples=50)
@given(params_st)
def test_spectrum_strictly_increasing(p):
    e = p.energy(np.arange(200))
    assert e[0] == 0
    assert np.all(np.diff(e) > 0)


def test_fock_space_validation():
    with pytest.raises(ValueError):
        FockSpace(1)


def test_ladder_entries():
    R, L = ladder_operators(SpectrumParams(0, 1), FockSpace(3))
    assert L.entries[0, 1] == 1
    assert L.entries[1, 2] == pytest.approx(np.sqrt(2))
    R, L = ladder_operators(SpectrumParams(1, 2), FockSpace(4))
    assert R.entries[1, 0] == pytest.approx(np.sqrt(3))
    assert np.all(L.entries @ FockSpace(4).basis(0) == 0)


@settings(max_examples=25)
@given(params_st, st.integers(2, 40))
def test_ladder_structure(p, d):
    R, L = ladder_operators(p, FockSpace(d))
    assert np.array_equal(L.entries, R.entries.conj().T)
    off = R.entries - np.diag(np.diag(R.entries, -1), -1)
    assert np.all(off == 0)


def test_diagonal_operators():
    p = SpectrumParams(1, 2)
    S = FockSpace(6)
    N, H, G = diagonal_operators(p, S)
    assert G.entries[0, 0] == 3
    assert np.allclose(N.diagonal(), np.arange(6))
    assert np.allclose(G.diagonal(), 2 * np.arange(6) + 3)
    R, L = ladder_operators(p, S)
    assert np.abs((R @ L).block() - H.block()).max() < EDGE
    _, _, Gh = diagonal_operators(SpectrumParams(0, 1), S)
    assert np.array_equal(Gh.entries, np.eye(6))


def test_shifted_energy_operator():
    S = FockSpace(5)
    assert np.allclose(shifted_energy_operator(SpectrumParams(1, 2), S, 0).diagonal(), [0, 3, 8, 15, 24])
    assert np.allclose(shifted_energy_operator(SpectrumParams(0, 1), S, 1).diagonal(), [1, 2, 3, 4, 5])
    p = SpectrumParams(1.3, 0.7)
    assert shifted_energy_operator(p, S, 1).entries[0, 0] == energy(p, 1)
    with pytest.raises(ValueError):
        shifted_energy_operator(p, S, -1)


def test_compile_basic_words():
    p = SpectrumParams(1, 4)
    S = FockSpace(12)
    _, H, G = diagonal_operators(p, S)
    assert np.abs(compile_expr(OperatorExpr.word("RL"), p, S).block() - H.block()).max() < EDGE
    assert np.array_equal(compile_expr(OperatorExpr(((1, ()),)), p, S).entries, np.eye(12))
    c = compile_expr(OperatorExpr(((1, "LR"), (-1, "RL"))), p, S)
    assert np.abs(c.block() - G.block()).max() < EDGE


@settings(max_examples=25)
@given(params_st, st.integers(3, 30))
def test_commutator_relations(p, d):
    S = FockSpace(d)
    R, L = ladder_operators(p, S)
    N, _, G = diagonal_operators(p, S)
    assert np.abs(commutator(N, R).block() - R.block()).max() < EDGE * max(1, p.energy(d))
    assert np.abs(commutator(N, L).block() + L.block()).max() < EDGE * max(1, p.energy(d))
    gap = np.diag(commutator(L, R).entries)[: d - 1].real
    n = np.arange(d - 1)
    assert np.allclose(gap, 2 * p.a * n + p.a + p.b, rtol=1e-12, atol=1e-12)
    assert np.all(commutator(R, R).entries == 0)


def test_commutator_dimension_mismatch():
    p = SpectrumParams(1, 1)
    with pytest.raises(ValueError):
        commutator(identity(FockSpace(3)), identity(FockSpace(4)))


def test_operator_is_immutable():
    op = identity(FockSpace(3))
    with pytest.raises(ValueError):
        op.entries[0, 0] = 2
    with pytest.raises(ValueError):
        FockOperator(FockSpace(2), np.array([[np.inf, 0], [0, 1]]))


@pytest.mark.parametrize(
    "text,terms",
    [
        ("RL", [(1, "RL")]),
        ("RL - LR", [(1, "RL"), (-1, "LR")]),
        ("2*RRL + (0.5+1j) + L", [(2, "RRL"), (0.5 + 1j, ""), (1, "L")]),
        ("-1.5e-1 L", [(-0.15, "L")]),
        ("I", [(1, "")]),
    ],
)
def test_parse_expressions(text, terms):
    expr = OperatorExpr.parse(text)
    assert [(c, "".join(w.value for w in word)) for c, word in expr.terms] == [(complex(c), w) for c, w in terms]


@pytest.mark.parametrize("bad", ["", "RX", "2**R", "+"])
def test_parse_rejects(bad):
    with pytest.raises(ValueError):
        OperatorExpr.parse(bad)


def test_letters_are_only_raise_and_lower():
    assert {x.value for x in Letter} == {"R", "L"}
