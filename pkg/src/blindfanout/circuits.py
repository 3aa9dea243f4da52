"""
NOT / CNOT / CCNOT circuits on the qubits I, C, D.

Gates act on basis rows as permutations, so circuits of these gates are
composed in exact integer arithmetic.  Circuits list gates in application
order: the first gate acts first, so ``circuit_unitary([g1, g2]) = M(g2) @ M(g1)``.
"""
from __future__ import annotations

import functools
import json
from collections import deque
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import InvalidInputError, NotFoundError
from .fanout import FanoutPhases, build_fanout_unitary
from .linalg import ID2, KET0, KET1, QUBITS, SIGMA_X, as_matrix, dagger, frobenius_distance, kron3
from .register import DIM, BasisLabel, basis_index, label_of

ORDER = "first-acts-first"
ARITY = {"NOT": 1, "CNOT": 2, "CCNOT": 3}
_KIND_RANK = {"NOT": 0, "CNOT": 1, "CCNOT": 2}
ALPHABETS = ("not+ccnot", "not+cnot+ccnot")

Permutation = tuple  # p[r] is the image row of basis row r


@dataclass(frozen=True)
class Gate:
    kind: str
    qubits: tuple  # controls first, target last

    def __post_init__(self):
        if not isinstance(self.kind, str) or self.kind not in ARITY:
            raise InvalidInputError(f"unknown gate kind {self.kind!r}")
        qs = tuple(self.qubits)
        if len(qs) != ARITY[self.kind]:
            raise InvalidInputError(f"{self.kind} takes {ARITY[self.kind]} qubit(s), got {qs}")
        if any(q not in QUBITS for q in qs) or len(set(qs)) != len(qs):
            raise InvalidInputError(f"qubits must be distinct labels from I, C, D, got {qs}")
        # Controls commute; store them in register order.
        controls = tuple(sorted(qs[:-1], key=QUBITS.index))
        object.__setattr__(self, "qubits", controls + qs[-1:])

    @property
    def controls(self) -> tuple:
        return self.qubits[:-1]

    @property
    def target(self) -> str:
        return self.qubits[-1]

    def sort_key(self) -> tuple:
        return (_KIND_RANK[self.kind], tuple(QUBITS.index(q) for q in self.qubits))

    def __str__(self) -> str:
        if not self.controls:
            return f"NOT({self.target})"
        return f"{self.kind}({','.join(self.controls)}->{self.target})"


def NOT(t: str) -> Gate:
    return Gate("NOT", (t,))


def CNOT(c: str, t: str) -> Gate:
    return Gate("CNOT", (c, t))


def CCNOT(c1: str, c2: str, t: str) -> Gate:
    return Gate("CCNOT", (c1, c2, t))


@dataclass(frozen=True)
class Circuit:
    gates: tuple = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))

    def __len__(self) -> int:
        return len(self.gates)

    def __iter__(self):
        return iter(self.gates)

    def count(self, kind: str) -> int:
        return sum(g.kind == kind for g in self.gates)

    def __str__(self) -> str:
        return " ; ".join(str(g) for g in self.gates) or "(empty)"


# Nine-gate realization of the |100> <-> |011> swap, checked by permutation tracing.
CERTIFICATE_9 = Circuit((
    NOT("C"), CCNOT("I", "C", "D"), NOT("C"),
    CCNOT("I", "D", "C"), CCNOT("C", "D", "I"), CCNOT("I", "D", "C"),
    NOT("C"), CCNOT("I", "C", "D"), NOT("C"),
))


def gate_permutation(g: Gate) -> Permutation:
    ctrl = [QUBITS.index(q) for q in g.controls]
    tgt = QUBITS.index(g.target)
    out = []
    for r in range(DIM):
        bits = list(label_of(r).bits)
        if all(bits[c] == 1 for c in ctrl):
            bits[tgt] ^= 1
        out.append(basis_index(BasisLabel(*bits)))
    return tuple(out)


def permutation_matrix(p: Permutation) -> np.ndarray:
    m = np.zeros((DIM, DIM), dtype=complex)
    for r, image in enumerate(p):
        m[image, r] = 1.0
    return m


def gate_matrix(g: Gate) -> np.ndarray:
    return permutation_matrix(gate_permutation(g))


def compose(first: Permutation, then: Permutation) -> Permutation:
    return tuple(then[first[r]] for r in range(len(first)))


def circuit_permutation(c: Circuit | Iterable[Gate]) -> Permutation:
    p = tuple(range(DIM))
    for g in c:
        p = compose(p, gate_permutation(g))
    return p


def circuit_unitary(c: Circuit | Iterable[Gate]) -> np.ndarray:
    return permutation_matrix(circuit_permutation(c))


def matrix_permutation(u) -> Permutation | None:
    """The permutation represented by an exact 0/1 matrix, or None."""
    u = as_matrix(u)
    if u.shape != (DIM, DIM) or not np.all((u == 0) | (u == 1)):
        return None
    if not (np.all(u.sum(axis=0) == 1) and np.all(u.sum(axis=1) == 1)):
        return None
    return tuple(int(np.argmax(u[:, r])) for r in range(DIM))


def is_even(p: Permutation) -> bool:
    seen, transpositions = set(), 0
    for start in range(len(p)):
        if start in seen:
            continue
        length, r = 0, start
        while r not in seen:
            seen.add(r)
            r = p[r]
            length += 1
        transpositions += length - 1
    return transpositions % 2 == 0


@dataclass(frozen=True)
class PhaseEquivalence:
    equal: bool
    phase: complex
    residual: float


def equivalent_up_to_phase(u1, u2, tol: float = 1e-12) -> PhaseEquivalence:
    u1, u2 = as_matrix(u1), as_matrix(u2)
    if u1.shape != u2.shape:
        raise InvalidInputError(f"dimension mismatch: {u1.shape} vs {u2.shape}")
    overlap = np.trace(dagger(u2) @ u1)
    if abs(overlap) < 1e-300:
        return PhaseEquivalence(False, 1 + 0j, float("inf"))
    phase = complex(overlap / abs(overlap))
    residual = frobenius_distance(u1, phase * u2)
    return PhaseEquivalence(residual < tol, phase, residual)


def alphabet_gates(alphabet: str) -> list[Gate]:
    key = alphabet.lower().replace(" ", "")
    if key not in ALPHABETS:
        raise InvalidInputError(f"unknown alphabet {alphabet!r}; choose from {ALPHABETS}")
    gates = [NOT(q) for q in QUBITS]
    if "cnot+" in key:
        gates += [CNOT(c, t) for c in QUBITS for t in QUBITS if c != t]
    gates += [CCNOT(*(q for q in QUBITS if q != t), t) for t in QUBITS]
    return sorted(gates, key=Gate.sort_key)


def swap_target() -> Permutation:
    p = matrix_permutation(build_fanout_unitary(FanoutPhases(0.0, 0.0)))
    assert p is not None
    return p


@dataclass(frozen=True)
class SearchResult:
    circuit: Circuit
    explored: int


def search_circuit(target: Permutation, alphabet: str = "not+ccnot", max_gates: int = 9) -> SearchResult:
    """
    Breadth-first search over the permutation group generated by ``alphabet``.

    Generators are tried in their sort order and each permutation keeps the
    first path that reaches it, so the returned circuit is the shortest and,
    among the shortest, lexicographically smallest in gate order.
    """
    if max_gates < 1:
        raise InvalidInputError("max_gates must be at least 1")
    gens = [(g, gate_permutation(g)) for g in alphabet_gates(alphabet)]
    start = tuple(range(DIM))
    parent: dict = {start: None}
    frontier = deque([start])
    depth = {start: 0}
    found = start if target == start else None
    while frontier and found is None:
        p = frontier.popleft()
        if depth[p] >= max_gates:
            continue
        for g, gp in gens:
            q = compose(p, gp)
            if q in parent:
                continue
            parent[q] = (p, g)
            depth[q] = depth[p] + 1
            if q == target:
                found = q
                break
            frontier.append(q)
    if found is None:
        raise NotFoundError(f"target not reachable with at most {max_gates} gates from {alphabet}")
    gates = []
    node = found
    while parent[node] is not None:
        node, g = parent[node]
        gates.append(g)
    return SearchResult(Circuit(reversed(gates)), explored=len(parent))


def synthesize_swap_circuit(alphabet: str = "not+ccnot", max_gates: int = 9) -> Circuit:
    return search_circuit(swap_target(), alphabet, max_gates).circuit


@functools.cache
def generated_group(alphabet: str) -> Mapping:
    """Every permutation reachable from ``alphabet``, mapped to its word length (read-only)."""
    gens = [gate_permutation(g) for g in alphabet_gates(alphabet)]
    start = tuple(range(DIM))
    dist = {start: 0}
    frontier = deque([start])
    while frontier:
        p = frontier.popleft()
        for gp in gens:
            q = compose(p, gp)
            if q not in dist:
                dist[q] = dist[p] + 1
                frontier.append(q)
    return MappingProxyType(dist)


# CCNOT from two-qubit factors.

SQRT_NOT = 0.5 * np.array([[1 + 1j, 1 - 1j], [1 - 1j, 1 + 1j]], dtype=complex)

_PROJ1 = np.outer(KET1, KET1.conj())
_PROJ0 = np.outer(KET0, KET0.conj())


def controlled(v, control: str, target: str) -> np.ndarray:
    """``|1><1|_control (x) v_target + |0><0|_control (x) 1`` on the register."""
    if control == target or control not in QUBITS or target not in QUBITS:
        raise InvalidInputError(f"bad control/target pair {control!r}, {target!r}")
    on = [ID2] * 3
    off = [ID2] * 3
    on[QUBITS.index(control)], on[QUBITS.index(target)] = _PROJ1, as_matrix(v)
    off[QUBITS.index(control)] = _PROJ0
    return kron3(*on) + kron3(*off)


@dataclass(frozen=True)
class Decomposition:
    factors: tuple  # (name, 8x8 matrix) in application order
    product: np.ndarray
    equivalence: PhaseEquivalence

    @property
    def residual(self) -> float:
        return self.equivalence.residual


def ccnot_to_cnot_circuit() -> Decomposition:
    """
    CCNOT(I,C->D) as controlled-V(C->D), CNOT(I->C), controlled-V^dagger(C->D),
    CNOT(I->C), controlled-V(I->D) with V^2 = NOT.
    """
    v, vd = SQRT_NOT, dagger(SQRT_NOT)
    factors = (
        ("CV(C->D)", controlled(v, "C", "D")),
        ("CNOT(I->C)", controlled(SIGMA_X, "I", "C")),
        ("CVdg(C->D)", controlled(vd, "C", "D")),
        ("CNOT(I->C)", controlled(SIGMA_X, "I", "C")),
        ("CV(I->D)", controlled(v, "I", "D")),
    )
    product = np.eye(DIM, dtype=complex)
    for _, m in factors:
        product = m @ product
    eq = equivalent_up_to_phase(product, gate_matrix(CCNOT("I", "C", "D")))
    return Decomposition(factors, product, eq)


# Circuit file format.

def circuit_to_data(c: Circuit) -> dict:
    return {
        "order": ORDER,
        "gates": [{"kind": g.kind, "controls": list(g.controls), "target": g.target} for g in c],
    }


def circuit_from_data(data) -> Circuit:
    if not isinstance(data, dict):
        raise InvalidInputError("circuit document must be an object")
    if data.get("order") != ORDER:
        raise InvalidInputError(f"circuit order must be {ORDER!r}, got {data.get('order')!r}")
    raw = data.get("gates")
    if not isinstance(raw, list):
        raise InvalidInputError("circuit document needs a 'gates' array")
    gates = []
    for item in raw:
        if not isinstance(item, dict):
            raise InvalidInputError(f"malformed gate entry {item!r}")
        kind, controls, target = item.get("kind"), item.get("controls", []), item.get("target")
        if not isinstance(controls, list) or not isinstance(target, str):
            raise InvalidInputError(f"malformed gate entry {item!r}")
        gates.append(Gate(kind, tuple(controls) + (target,)))
    return Circuit(gates)


def dumps_circuit(c: Circuit) -> str:
    return json.dumps(circuit_to_data(c), indent=2)


def loads_circuit(text: str) -> Circuit:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInputError(f"malformed circuit document: {exc}") from exc
    return circuit_from_data(data)


def gates_from_names(names: Sequence[str]) -> Circuit:
    """Parse gate strings like ``"NOT(C)"`` or ``"CCNOT(I,C->D)"``."""
    gates = []
    for name in names:
        s = name.replace(" ", "")
        head, _, rest = s.partition("(")
        if not rest.endswith(")"):
            raise InvalidInputError(f"cannot parse gate {name!r}")
        body = rest[:-1]
        if "->" in body:
            ctrl, tgt = body.split("->")
            qubits = tuple(ctrl.split(",")) + (tgt,)
        else:
            qubits = (body,)
        gates.append(Gate(head.upper(), qubits))
    return Circuit(gates)
