"""
The blind-fanout unitary and checks of its copying semantics.

``U(alpha, beta)`` is the identity except on rows/columns 3 and 4
(``|100>`` and ``|011>``), where it acts as ``[[0, e^{i beta}], [e^{i alpha}, 0]]``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidInputError
from .linalg import KET0, KET1, QUBITS, as_matrix, fidelity, partial_trace, unitarity_residual
from .register import DIM, T0, T1, label_of, random_states, subspace_leakage

SWAP_ROWS = (3, 4)
SUPPORT_CUTOFF = 1e-20


@dataclass(frozen=True)
class FanoutPhases:
    alpha: float = 0.0
    beta: float = 0.0

    def __post_init__(self):
        if not (np.isfinite(self.alpha) and np.isfinite(self.beta)):
            raise InvalidInputError("fanout phases must be finite")


@dataclass(frozen=True)
class SubspaceReport:
    max_leakage: float
    passed: bool
    trials: int


@dataclass(frozen=True)
class DuplicationReport:
    input_bit: int
    passed: bool
    trials: int
    violations: int


@dataclass(frozen=True)
class CloneFidelity:
    f_I: float
    f_C: float
    f_D: float

    @property
    def best(self) -> float:
        return max(self.f_I, self.f_C, self.f_D)


def build_fanout_unitary(p: FanoutPhases | None = None, *, alpha: float | None = None,
                         beta: float | None = None) -> np.ndarray:
    if p is None:
        p = FanoutPhases(alpha or 0.0, beta or 0.0)
    u = np.eye(DIM, dtype=complex)
    a, b = SWAP_ROWS
    u[a, a] = u[b, b] = 0.0
    u[a, b] = np.exp(1j * p.beta)
    u[b, a] = np.exp(1j * p.alpha)
    return u


def embed_blocks(v1, v0) -> np.ndarray:
    """Direct sum of ``v1`` on the T1 rows and ``v0`` on the T0 rows."""
    w = np.zeros((DIM, DIM), dtype=complex)
    for block, sub in ((v1, T1), (v0, T0)):
        rows = sub.sorted_rows
        w[np.ix_(rows, rows)] = block
    return w


def build_general_fanout(v1, v0, tol: float = 1e-10) -> np.ndarray:
    """
    A member of the general fanout family: ``(v1 (+) v0) @ U(0, 0)``.

    ``v1`` and ``v0`` are 4x4 unitaries acting inside T1 and T0, each indexed
    by its rows in increasing row order.
    """
    v1, v0 = as_matrix(v1), as_matrix(v0)
    for name, v in (("v1", v1), ("v0", v0)):
        if v.shape != (4, 4):
            raise InvalidInputError(f"{name} must be 4x4, got {v.shape}")
        if unitarity_residual(v) >= tol:
            raise InvalidInputError(f"{name} is not unitary")
    return embed_blocks(v1, v0) @ build_fanout_unitary(FanoutPhases(0.0, 0.0))


def _input_ket(bit: int) -> np.ndarray:
    if bit not in (0, 1):
        raise InvalidInputError(f"input bit must be 0 or 1, got {bit}")
    return KET1 if bit == 1 else KET0


def fanout_subspace_check(u, trials: int = 1000, seed: int = 0, tol: float = 1e-10) -> SubspaceReport:
    """Worst leakage of ``u(|b> (x) |phi>)`` out of T_b over random targets ``phi``."""
    u = as_matrix(u)
    worst = 0.0
    for phi in random_states(4, trials, seed):
        for bit, sub in ((1, T1), (0, T0)):
            out = u @ np.kron(_input_ket(bit), phi)
            worst = max(worst, subspace_leakage(out, sub))
    return SubspaceReport(max_leakage=worst, passed=worst < tol, trials=trials)


# Rows whose label has at least two bits equal to b.
_COPY_ROWS = {b: frozenset(r for r in range(8) if sum(x == b for x in label_of(r).bits) >= 2) for b in (0, 1)}


def duplicates(u, input_bit: int, phi) -> bool:
    """True if every support state of ``u(|b> (x) |phi>)`` has at least two bits equal to b."""
    out = as_matrix(u) @ np.kron(_input_ket(input_bit), np.asarray(phi, dtype=complex))
    support = np.flatnonzero(np.abs(out) ** 2 > SUPPORT_CUTOFF)
    return _COPY_ROWS[input_bit].issuperset(support.tolist())


def duplication_check(u, input_bit: int, trials: int = 1000, seed: int = 0) -> DuplicationReport:
    bad = sum(not duplicates(u, input_bit, phi) for phi in random_states(4, trials, seed))
    return DuplicationReport(input_bit=input_bit, passed=bad == 0, trials=trials, violations=bad)


def strict_copy_defect(phi1, phi2) -> float:
    """
    ``|<phi1|phi2> - 1|``.

    A map sending both ``|1, phi1>`` and ``|1, phi2>`` to ``|111>`` would
    give the two images unit overlap, while a unitary preserves the input
    overlap ``<phi1|phi2>``; the returned value is that mismatch.
    """
    a = np.asarray(phi1, dtype=complex).ravel()
    b = np.asarray(phi2, dtype=complex).ravel()
    if a.shape != b.shape:
        raise InvalidInputError("target states must have equal dimension")
    return float(abs(np.vdot(a, b) - 1.0))


def clone_fidelity(u, a: complex, b: complex, phi) -> CloneFidelity:
    """Per-qubit fidelity of ``u((a|1> + b|0>) (x) |phi>)`` with ``a|1> + b|0>``."""
    if abs(abs(a) ** 2 + abs(b) ** 2 - 1.0) > 1e-12:
        raise InvalidInputError("input amplitudes must satisfy |a|^2 + |b|^2 = 1")
    phi = np.asarray(phi, dtype=complex).ravel()
    if phi.size != 4 or abs(np.linalg.norm(phi) - 1.0) > 1e-12:
        raise InvalidInputError("phi must be a normalized 4-amplitude state")
    source = a * KET1 + b * KET0
    out = as_matrix(u) @ np.kron(source, phi)
    f = [fidelity(partial_trace(out, [q]), source) for q in QUBITS]
    return CloneFidelity(*f)


def max_clone_fidelity(u, a: complex, b: complex, trials: int = 1000, seed: int = 0) -> float:
    return max(clone_fidelity(u, a, b, phi).best for phi in random_states(4, trials, seed))
