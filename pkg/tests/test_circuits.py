import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from blindfanout.circuits import (
    ALPHABETS, CERTIFICATE_9, CCNOT, CNOT, NOT, SQRT_NOT, Circuit, Gate, alphabet_gates,
    ccnot_to_cnot_circuit, circuit_permutation, circuit_unitary, dumps_circuit,
    equivalent_up_to_phase, gate_matrix, gates_from_names, generated_group, is_even,
    loads_circuit, search_circuit, swap_target, synthesize_swap_circuit,
)
from blindfanout.errors import InvalidInputError, NotFoundError
from blindfanout.fanout import FanoutPhases, build_fanout_unitary
from blindfanout.linalg import SIGMA_X, unitarity_residual
from blindfanout.pauli import pauli_matrix
from blindfanout.register import basis_state

U00 = build_fanout_unitary(FanoutPhases(0, 0))
QUBIT = {"I": 0, "C": 1, "D": 2}


def trace_bits(gates, bits):
    """Apply gates to a bit triple by hand, independent of any matrix code."""
    b = list(bits)
    for g in gates:
        *ctrl, tgt = [QUBIT[q] for q in g.qubits]
        if all(b[c] for c in ctrl):
            b[tgt] ^= 1
    return tuple(b)


def test_gate_matrix_examples():
    assert np.array_equal(gate_matrix(NOT("D")) @ basis_state("110"), basis_state("111"))
    toff = gate_matrix(CCNOT("I", "C", "D"))
    assert np.array_equal(toff @ basis_state("110"), basis_state("111"))
    assert np.array_equal(toff @ basis_state("010"), basis_state("010"))
    cn = gate_matrix(CNOT("C", "D"))
    assert np.array_equal(cn @ basis_state("011"), basis_state("010"))
    assert np.array_equal(cn @ basis_state("001"), basis_state("001"))


def test_every_gate_is_exact_involutive_permutation():
    for g in alphabet_gates("not+cnot+ccnot"):
        m = gate_matrix(g)
        assert set(np.unique(m)) <= {0, 1}
        assert np.array_equal(m.sum(axis=0), np.ones(8)) and np.array_equal(m.sum(axis=1), np.ones(8))
        assert np.array_equal(m @ m, np.eye(8))


def test_malformed_gates_rejected():
    for kind, qubits in [("SWAP", ("I", "C")), ("NOT", ("I", "C")), ("CNOT", ("I", "I")),
                         ("CCNOT", ("I", "C", "X")), ("CNOT", ("I",))]:
        with pytest.raises(InvalidInputError):
            Gate(kind, qubits)


def test_circuit_unitary_examples():
    assert np.array_equal(circuit_unitary(Circuit()), np.eye(8))
    assert np.array_equal(circuit_unitary([NOT("I"), NOT("I")]), np.eye(8))
    assert np.array_equal(circuit_unitary(CERTIFICATE_9), U00)


def test_application_order_first_acts_first():
    a, b = NOT("I"), CNOT("I", "C")
    assert np.array_equal(circuit_unitary([a, b]), gate_matrix(b) @ gate_matrix(a))
    assert not np.array_equal(circuit_unitary([a, b]), circuit_unitary([b, a]))


def test_certificate_by_hand_trace():
    for r in range(8):
        bits = (1 - (r >> 2 & 1), 1 - (r >> 1 & 1), 1 - (r & 1))
        expected = {(1, 0, 0): (0, 1, 1), (0, 1, 1): (1, 0, 0)}.get(bits, bits)
        assert trace_bits(CERTIFICATE_9, bits) == expected


@settings(max_examples=100, deadline=None)
@given(st.lists(st.sampled_from(alphabet_gates("not+cnot+ccnot")), max_size=12))
def test_permutation_matches_bit_trace(gates):
    u = circuit_unitary(gates)
    for r in range(8):
        bits = (1 - (r >> 2 & 1), 1 - (r >> 1 & 1), 1 - (r & 1))
        out = trace_bits(gates, bits)
        col = u[:, r]
        target = "".join(map(str, out))
        assert np.array_equal(col, basis_state(target))


@settings(max_examples=100, deadline=None)
@given(st.lists(st.sampled_from(alphabet_gates("not+cnot+ccnot")), max_size=15))
def test_parity_is_ccnot_count(gates):
    odd = sum(g.kind == "CCNOT" for g in gates) % 2
    assert is_even(circuit_permutation(gates)) == (odd == 0)


def test_equivalent_up_to_phase():
    m = gate_matrix(CCNOT("I", "C", "D"))
    r = equivalent_up_to_phase(m, m)
    assert r.equal and abs(r.phase - 1) < 1e-15
    ph = np.exp(1j * np.pi / 3)
    r = equivalent_up_to_phase(ph * m, m)
    assert r.equal and abs(r.phase - ph) < 1e-15
    assert not equivalent_up_to_phase(U00, np.eye(8)).equal


def test_synthesized_circuit_is_exact_and_minimal():
    c = synthesize_swap_circuit("not+ccnot", 9)
    assert len(c) <= 9
    assert circuit_permutation(c) == swap_target()
    assert np.array_equal(circuit_unitary(c), U00)
    assert c.count("CCNOT") % 2 == 1
    # Minimality: no shorter word reaches the target.
    dist = generated_group("not+ccnot")
    assert dist[swap_target()] == len(c)
    with pytest.raises(NotFoundError):
        synthesize_swap_circuit("not+ccnot", len(c) - 1)


def test_synthesis_deterministic_and_lexicographic():
    c1 = synthesize_swap_circuit("not+ccnot", 9)
    c2 = synthesize_swap_circuit("not+ccnot", 20)
    assert c1 == c2
    # Depth-first enumeration of every word of the minimal length, in gate order;
    # the first hit is the lexicographically smallest solution.
    gens = [(g, circuit_permutation([g])) for g in alphabet_gates("not+ccnot")]
    target = swap_target()

    def first_word(prefix_perm, depth):
        if depth == 0:
            return () if prefix_perm == target else None
        for g, gp in gens:
            nxt = tuple(gp[prefix_perm[r]] for r in range(8))
            rest = first_word(nxt, depth - 1)
            if rest is not None:
                return (g,) + rest
        return None

    assert first_word(tuple(range(8)), len(c1)) == c1.gates


def test_cnot_alphabet_search():
    c = synthesize_swap_circuit("not+cnot+ccnot", 9)
    assert np.array_equal(circuit_unitary(c), U00)
    assert c.count("CCNOT") % 2 == 1
    assert generated_group("not+cnot+ccnot")[swap_target()] == len(c)


def test_group_size_bounded():
    for alphabet in ALPHABETS:
        assert len(generated_group(alphabet)) <= 40320
        res = search_circuit(swap_target(), alphabet, 50)
        assert res.explored <= 40320


def test_search_argument_errors():
    with pytest.raises(InvalidInputError):
        synthesize_swap_circuit("not+ccnot", 0)
    with pytest.raises(InvalidInputError):
        synthesize_swap_circuit("cnot", 5)


def test_sqrt_not():
    assert np.max(np.abs(SQRT_NOT @ SQRT_NOT - SIGMA_X)) < 1e-15


def test_ccnot_decomposition():
    d = ccnot_to_cnot_circuit()
    assert len(d.factors) == 5
    assert d.equivalence.equal and d.residual < 1e-12
    for _, m in d.factors:
        assert unitarity_residual(m) < 1e-15
    # Each factor touches at most two qubits: it commutes with every operator on the third.
    for name, m in d.factors:
        idle = ({"I", "C", "D"} - set(name.replace("->", ",").split("(")[1].rstrip(")").split(","))).pop()
        for a in "xyz":
            s = "".join(a if q == idle else "1" for q in "ICD")
            p = pauli_matrix(s)
            assert np.max(np.abs(m @ p - p @ m)) < 1e-15


def test_circuit_file_roundtrip():
    text = dumps_circuit(CERTIFICATE_9)
    data = json.loads(text)
    assert data["order"] == "first-acts-first"
    assert data["gates"][1] == {"kind": "CCNOT", "controls": ["I", "C"], "target": "D"}
    assert loads_circuit(text) == CERTIFICATE_9


@pytest.mark.parametrize("doc", [
    {"order": "first-acts-first", "gates": [{"kind": "SWAP", "controls": ["I"], "target": "C"}]},
    {"order": "last-acts-first", "gates": []},
    {"order": "first-acts-first", "gates": [{"kind": "NOT", "controls": [], "target": "Q"}]},
    {"gates": []},
    [],
])
def test_circuit_file_rejections(doc):
    with pytest.raises(InvalidInputError):
        loads_circuit(json.dumps(doc))


def test_gates_from_names():
    c = gates_from_names([str(g) for g in CERTIFICATE_9])
    assert c == CERTIFICATE_9
