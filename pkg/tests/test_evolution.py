import itertools
import math

import numpy as np
import pytest
from scipy.integrate import quad

from blindfanout.errors import InvalidInputError
from blindfanout.evolution import ProtocolFunction, evolve, integrate, norm_drift, protocol_value
from blindfanout.hamiltonian import HamiltonianParams, synthesize_hamiltonian
from blindfanout.register import basis_state, random_state

CONST = ProtocolFunction("constant")
SINE = ProtocolFunction("sinusoidal", amplitude=0.5, k=2)
SQUARE = ProtocolFunction("square", duty=0.5)


def test_protocol_values():
    assert protocol_value(CONST, 0.37, 1.0) == 1
    assert protocol_value(SINE, 0.0, 1.0) == 1
    sq = ProtocolFunction("square", duty=0.25)
    assert protocol_value(sq, 0.1, 1.0) == 4
    assert protocol_value(sq, 0.5, 1.0) == 0
    assert protocol_value(sq, 0.25, 1.0, side="left") == 4
    assert protocol_value(sq, 0.25, 1.0, side="right") == 0
    with pytest.raises(InvalidInputError):
        protocol_value(CONST, 1.5, 1.0)


@pytest.mark.parametrize("f", [
    CONST, SINE, ProtocolFunction("sinusoidal", amplitude=3.0, k=5),
    SQUARE, ProtocolFunction("square", duty=0.3), ProtocolFunction("square", duty=1.0),
])
@pytest.mark.parametrize("dt", [1.0, 2.5])
def test_protocols_have_unit_mean(f, dt):
    pts = f.breakpoints(dt) or None
    total, _ = quad(lambda t: protocol_value(f, t, dt), 0, dt, points=pts, limit=200)
    assert abs(total - dt) < 1e-10


def test_protocol_validation():
    for kw in ({"kind": "triangle"}, {"kind": "square", "duty": 0}, {"kind": "square", "duty": 1.5},
               {"kind": "sinusoidal", "k": 0}, {"kind": "sinusoidal", "k": 1.5}):
        with pytest.raises(InvalidInputError):
            ProtocolFunction(**kw)


def test_evolve_constant_reaches_closed_form():
    rep = evolve(HamiltonianParams(0, 0), CONST, basis_state("100"), 10_000)
    assert np.linalg.norm(rep.psi_final - (-1j) * basis_state("011")) < 1e-8
    assert rep.residual_vs_u < 1e-8


def test_evolve_square_pulse_same_final_state():
    rep = evolve(HamiltonianParams(0, 0), SQUARE, basis_state("100"), 10_000)
    assert np.linalg.norm(rep.psi_final - (-1j) * basis_state("011")) < 1e-7


@pytest.mark.parametrize("f", [CONST, SINE, SQUARE, ProtocolFunction("square", duty=0.3)])
@pytest.mark.parametrize("p", [HamiltonianParams(0, 0), HamiltonianParams(0.7, 2), HamiltonianParams(1.1, 0, dt=0.5, hbar=2)])
def test_fourth_order_convergence(f, p):
    psi0 = random_state(8, 5)
    r = [evolve(p, f, psi0, s).residual_vs_u for s in (100, 200, 1000)]
    assert 8 <= r[0] / r[1] <= 32
    # Over a decade of step counts: 10^4 within a factor-2 band.
    assert 1e4 / 2 <= r[0] / r[2] <= 1e4 * 2


def test_protocol_independence():
    p = HamiltonianParams(0.4, 1)
    psi0 = random_state(8, 17)
    finals = [evolve(p, f, psi0, 10_000).psi_final for f in (CONST, SINE, SQUARE)]
    for a, b in itertools.combinations(finals, 2):
        assert np.linalg.norm(a - b) < 1e-7


def test_propagator_preserves_inner_products():
    p = HamiltonianParams(-1.3, 1)
    # All eight basis columns at once; column r evolves the basis state at row r.
    outs = integrate(synthesize_hamiltonian(p), SINE, np.eye(8), 10_000)
    assert np.max(np.abs(outs[:, 4] - evolve(p, SINE, basis_state("011"), 10_000).psi_final)) < 1e-13
    gram = outs.conj().T @ outs
    assert np.max(np.abs(gram - np.eye(8))) < 1e-8


def test_norm_drift():
    p = HamiltonianParams(0, 0)
    psi0 = random_state(8, 1)
    assert norm_drift(evolve(p, CONST, psi0, 10_000)) < 1e-10
    coarse = norm_drift(evolve(p, CONST, psi0, 100))
    assert coarse < 1e-4
    assert norm_drift(integrate(np.zeros((8, 8)), CONST, psi0, 100)) == pytest.approx(0, abs=1e-15)


def test_evolve_contract_at_1e4_steps():
    for n in (-2, 0, 3):
        rep = evolve(HamiltonianParams(0.2, n), SINE, random_state(8, n + 10), 10_000)
        assert norm_drift(rep) < 1e-9


def test_evolve_input_validation():
    p = HamiltonianParams()
    with pytest.raises(InvalidInputError):
        evolve(p, CONST, 2 * basis_state("100"), 1000)
    with pytest.raises(InvalidInputError):
        evolve(p, CONST, basis_state("100"), 50)


def test_report_serialization():
    rep = evolve(HamiltonianParams(), SQUARE, basis_state("011"), 200)
    data = rep.to_data()
    assert data["protocol"] == {"kind": "square", "duty": 0.5}
    assert len(data["final_amplitudes"]) == 8
    assert set(data) == {"protocol", "steps", "final_amplitudes", "residual_vs_U", "norm_drift"}
