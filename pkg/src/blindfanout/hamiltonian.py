"""
Generating Hamiltonian of the fanout unitary.

``H = -hbar T A T^dagger / dt`` where ``T`` diagonalizes ``U(alpha, beta)`` and
``A`` holds integer-shifted eigenphases.  The integer gauge used here is
``N1..N3 = N6..N8 = 0``, ``N4 = 0``, ``N5 = N``, with

    alpha = gamma - pi (N + 1/2),    beta = -gamma - pi (N + 1/2),

so that ``alpha + beta + pi + 2 pi (N4 + N5) = 0`` and ``gamma = (alpha - beta)/2``.
The result has exactly two nonzero entries,
``H[3, 4] = (pi hbar / dt)(N + 1/2) e^{-i gamma}`` and its conjugate.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidInputError
from .fanout import SWAP_ROWS, FanoutPhases, build_fanout_unitary
from .linalg import as_matrix, dagger, frobenius_distance, mat_exp
from .register import DIM

AGREEMENT_TOL = 1e-12


@dataclass(frozen=True)
class HamiltonianParams:
    gamma: float = 0.0
    n_gap: int = 0
    dt: float = 1.0
    hbar: float = 1.0

    def __post_init__(self):
        if not (self.dt > 0 and math.isfinite(self.dt)):
            raise InvalidInputError(f"dt must be positive, got {self.dt}")
        if not (self.hbar > 0 and math.isfinite(self.hbar)):
            raise InvalidInputError(f"hbar must be positive, got {self.hbar}")
        if not math.isfinite(self.gamma):
            raise InvalidInputError("gamma must be finite")
        if int(self.n_gap) != self.n_gap:
            raise InvalidInputError(f"n_gap must be an integer, got {self.n_gap}")

    @property
    def half_turns(self) -> float:
        return math.pi * (self.n_gap + 0.5)

    @property
    def alpha(self) -> float:
        return self.gamma - self.half_turns

    @property
    def beta(self) -> float:
        return -self.gamma - self.half_turns

    @property
    def phases(self) -> FanoutPhases:
        return FanoutPhases(self.alpha, self.beta)

    @property
    def gap_energy(self) -> float:
        return self.half_turns * self.hbar / self.dt


@dataclass(frozen=True)
class PhaseMatrixSpec:
    alpha: float
    beta: float
    n: tuple = field(default=(0,) * 8)

    def __post_init__(self):
        if len(self.n) != 8 or any(int(k) != k for k in self.n):
            raise InvalidInputError("phase matrix needs eight integers N1..N8")

    def diagonal(self) -> np.ndarray:
        two_pi = 2 * math.pi
        d = np.array([two_pi * k for k in self.n], dtype=float)
        half_sum = 0.5 * (self.alpha + self.beta)
        d[3] += half_sum
        d[4] += half_sum + math.pi
        return d

    @classmethod
    def from_params(cls, p: HamiltonianParams) -> "PhaseMatrixSpec":
        return cls(p.alpha, p.beta, (0, 0, 0, 0, int(p.n_gap), 0, 0, 0))


def build_diagonalizer(alpha: float, beta: float) -> np.ndarray:
    """
    Unitary ``T`` with ``T^dagger U(alpha, beta) T`` diagonal.

    The half-angle phasors are taken from the given ``alpha``, ``beta`` as
    passed (no wrapping).  The phase matrix must use the same values, since
    shifting either angle by 2 pi swaps the two eigenvector columns.
    """
    t = np.eye(DIM, dtype=complex)
    a, b = SWAP_ROWS
    eb, ea = np.exp(0.5j * beta), np.exp(0.5j * alpha)
    s = 1 / math.sqrt(2)
    t[a, a], t[a, b] = s * eb, s * eb
    t[b, a], t[b, b] = s * ea, -s * ea
    return t


def build_phase_matrix(spec: PhaseMatrixSpec) -> np.ndarray:
    return np.diag(spec.diagonal()).astype(complex)


def constructive_hamiltonian(p: HamiltonianParams) -> np.ndarray:
    t = build_diagonalizer(p.alpha, p.beta)
    a = build_phase_matrix(PhaseMatrixSpec.from_params(p))
    return -p.hbar / p.dt * (t @ a @ dagger(t))


def closed_form_hamiltonian(p: HamiltonianParams) -> np.ndarray:
    h = np.zeros((DIM, DIM), dtype=complex)
    a, b = SWAP_ROWS
    h[a, b] = p.gap_energy * np.exp(-1j * p.gamma)
    h[b, a] = p.gap_energy * np.exp(1j * p.gamma)
    return h


def synthesize_hamiltonian(p: HamiltonianParams) -> np.ndarray:
    """
    Build H by the T A T^dagger route and by the closed form, cross-check,
    and return the closed form (exactly Hermitian, exactly zero diagonal).
    """
    closed = closed_form_hamiltonian(p)
    built = constructive_hamiltonian(p)
    gap = float(np.max(np.abs(built - closed)))
    # Relative to the coupling scale so large hbar/dt does not trip the check.
    if gap > AGREEMENT_TOL * max(1.0, p.gap_energy):
        raise ArithmeticError(f"constructive and closed-form H disagree by {gap:.3e}")
    return closed


def energies(p: HamiltonianParams) -> np.ndarray:
    """Sorted spectrum of H, from its 2x2 coupling block."""
    h = synthesize_hamiltonian(p)
    return spectrum_of_block_operator(h)


def spectrum_of_block_operator(h) -> np.ndarray:
    """
    Eigenvalues of a Hermitian 8x8 operator that is diagonal outside the
    {|100>, |011>} block; the block eigenvalues are solved in closed form.
    """
    h = as_matrix(h)
    a, b = SWAP_ROWS
    rest = [r for r in range(DIM) if r not in SWAP_ROWS]
    off = h.copy()
    off[np.ix_([a, b], [a, b])] = 0
    off[rest, rest] = 0
    if np.max(np.abs(off)) > 1e-12 * max(1.0, float(np.max(np.abs(h)))):
        raise InvalidInputError("operator couples rows outside the |100>,|011> block")
    p, q, c = h[a, a].real, h[b, b].real, h[a, b]
    mid, rad = 0.5 * (p + q), math.hypot(0.5 * (p - q), abs(c))
    vals = [mid - rad, mid + rad] + [h[r, r].real for r in rest]
    return np.sort(np.array(vals, dtype=float))


def propagator(p: HamiltonianParams) -> np.ndarray:
    return mat_exp(-1j * synthesize_hamiltonian(p) * p.dt / p.hbar)


def verify_exponential(p: HamiltonianParams) -> float:
    """Frobenius residual between exp(-i H dt / hbar) and U(alpha(p), beta(p))."""
    return frobenius_distance(propagator(p), build_fanout_unitary(p.phases))
