"""
RK4 integration of ``i hbar dpsi/dt = f(t) H psi`` over one switching window.

Protocol functions all integrate to ``dt`` over ``[0, dt]``, and H commutes
with itself at all times, so the exact final state is ``U psi0`` whatever the
time profile.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidInputError
from .fanout import build_fanout_unitary
from .hamiltonian import HamiltonianParams, synthesize_hamiltonian
from .linalg import as_matrix, vector_to_data

KINDS = ("constant", "sinusoidal", "square")
_ALIASES = {"const": "constant", "sin": "sinusoidal", "sine": "sinusoidal", "square-pulse": "square", "pulse": "square"}


@dataclass(frozen=True)
class ProtocolFunction:
    """
    Time profile with unit mean over the window.

    constant:    f = 1
    sinusoidal:  f = 1 + amplitude * sin(2 pi k t / dt), integer k >= 1
    square:      f = 1/duty on [0, duty*dt], 0 afterwards
    """

    kind: str = "constant"
    amplitude: float = 0.5
    k: int = 1
    duty: float = 1.0

    def __post_init__(self):
        kind = _ALIASES.get(self.kind, self.kind)
        if kind not in KINDS:
            raise InvalidInputError(f"unknown protocol kind {self.kind!r}")
        object.__setattr__(self, "kind", kind)
        if kind == "sinusoidal" and (int(self.k) != self.k or self.k < 1):
            raise InvalidInputError(f"sinusoidal k must be a positive integer, got {self.k}")
        if kind == "square" and not 0 < self.duty <= 1:
            raise InvalidInputError(f"duty must lie in (0, 1], got {self.duty}")

    def breakpoints(self, dt: float) -> list[float]:
        if self.kind == "square" and self.duty < 1:
            return [self.duty * dt]
        return []

    def describe(self) -> dict:
        d = {"kind": self.kind}
        if self.kind == "sinusoidal":
            d.update(amplitude=self.amplitude, k=self.k)
        elif self.kind == "square":
            d.update(duty=self.duty)
        return d


def protocol_value(f: ProtocolFunction, t: float, dt: float, side: str = "left") -> float:
    """
    f(t) on ``[0, dt]``.

    At a square-pulse edge ``side="left"`` gives the on value (the pulse is
    the closed interval ``[0, duty*dt]``) and ``side="right"`` the off value.
    """
    if not 0 <= t <= dt:
        raise InvalidInputError(f"t={t} outside [0, {dt}]")
    if f.kind == "constant":
        return 1.0
    if f.kind == "sinusoidal":
        return 1.0 + f.amplitude * math.sin(2 * math.pi * f.k * t / dt)
    edge = f.duty * dt
    on = t < edge or (t == edge and side == "left") or f.duty == 1
    return 1.0 / f.duty if on else 0.0


def _time_grid(f: ProtocolFunction, dt: float, steps: int) -> np.ndarray:
    h = dt / steps
    grid = [k * h for k in range(steps)] + [dt]
    for b in f.breakpoints(dt):
        k = b / h
        if abs(k - round(k)) < 1e-9:
            grid[int(round(k))] = b
        else:
            grid.append(b)
    return np.array(sorted(grid))


def integrate(h, f: ProtocolFunction, psi0, steps: int, dt: float = 1.0, hbar: float = 1.0) -> np.ndarray:
    """
    Classical RK4 with ``steps`` uniform steps; a step containing a protocol
    discontinuity is split there so each RK4 step sees a smooth f.
    A 2-D ``psi0`` is taken as a batch of column states.
    """
    h = as_matrix(h)
    psi = np.array(psi0, dtype=complex)
    if psi.ndim != 2:
        psi = psi.ravel()
    gen = -1j * h / hbar
    grid = _time_grid(f, dt, steps)
    for t0, t1 in zip(grid[:-1], grid[1:]):
        tau = t1 - t0
        f0 = protocol_value(f, t0, dt, side="right")
        fm = protocol_value(f, t0 + 0.5 * tau, dt)
        f1 = protocol_value(f, t1, dt, side="left")
        k1 = f0 * (gen @ psi)
        k2 = fm * (gen @ (psi + 0.5 * tau * k1))
        k3 = fm * (gen @ (psi + 0.5 * tau * k2))
        k4 = f1 * (gen @ (psi + tau * k3))
        psi = psi + tau / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4)
    return psi


@dataclass(frozen=True)
class EvolutionReport:
    psi_final: np.ndarray
    residual_vs_u: float
    steps: int
    protocol: ProtocolFunction

    def to_data(self) -> dict:
        return {
            "protocol": self.protocol.describe(),
            "steps": self.steps,
            "final_amplitudes": vector_to_data(self.psi_final),
            "residual_vs_U": self.residual_vs_u,
            "norm_drift": norm_drift(self),
        }


def evolve(p: HamiltonianParams, f: ProtocolFunction, psi0, steps: int = 10_000) -> EvolutionReport:
    psi0 = np.asarray(psi0, dtype=complex).ravel()
    if psi0.size != 8:
        raise InvalidInputError(f"expected an 8-amplitude state, got {psi0.size}")
    if abs(np.linalg.norm(psi0) - 1.0) > 1e-12:
        raise InvalidInputError("initial state must be normalized")
    if steps < 100:
        raise InvalidInputError(f"steps must be at least 100, got {steps}")
    psi = integrate(synthesize_hamiltonian(p), f, psi0, steps, p.dt, p.hbar)
    exact = build_fanout_unitary(p.phases) @ psi0
    return EvolutionReport(psi, float(np.linalg.norm(psi - exact)), steps, f)


def norm_drift(report: EvolutionReport | np.ndarray) -> float:
    psi = report.psi_final if isinstance(report, EvolutionReport) else np.asarray(report)
    return float(abs(np.linalg.norm(psi) - 1.0))
