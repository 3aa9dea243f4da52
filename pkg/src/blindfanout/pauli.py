"""
Expansion of 8x8 operators in three-fold tensor products of {1, x, y, z}.

Strings are written as three characters over ``"1xyz"`` in register order
(I, C, D), e.g. ``"xyy"`` is sigma_x on I, sigma_y on C and D.  Factors use
the (|1>, |0>) single-qubit ordering of :mod:`blindfanout.linalg`.
"""
from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidInputError
from .hamiltonian import HamiltonianParams, synthesize_hamiltonian
from .linalg import ID2, SIGMA_X, SIGMA_Y, SIGMA_Z, as_matrix, kron3

AXES = "1xyz"
BASIS_CONVENTION = "single-qubit basis (|1>, |0>); register order I, C, D; rows |111> ... |000>"

_FACTORS = {"1": ID2, "x": SIGMA_X, "y": SIGMA_Y, "z": SIGMA_Z}

ALL_STRINGS = tuple("".join(t) for t in itertools.product(AXES, repeat=3))

# Sign pattern of the closed-form expansion, grouped by trig factor.
COS_TERMS = {"xxx": 1, "xyy": -1, "yxy": 1, "yyx": 1}
SIN_TERMS = {"yyy": -1, "yxx": 1, "xyx": -1, "xxy": -1}


def _check(s: str) -> str:
    if not isinstance(s, str) or len(s) != 3 or any(ch not in AXES for ch in s):
        raise InvalidInputError(f"not a Pauli string over '1xyz': {s!r}")
    return s


def pauli_matrix(s: str) -> np.ndarray:
    _check(s)
    return kron3(*(_FACTORS[ch] for ch in s))


_MATRICES = {s: pauli_matrix(s) for s in ALL_STRINGS}


@dataclass(frozen=True)
class PauliExpansion:
    coefficients: dict  # str -> complex, all 64 strings

    def __getitem__(self, s: str) -> complex:
        return self.coefficients[_check(s)]

    def nonzero(self, tol: float = 1e-12) -> dict:
        return {s: c for s, c in self.coefficients.items() if abs(c) > tol}

    def to_data(self, only_nonzero: bool = False, tol: float = 1e-12) -> list[dict]:
        items = self.nonzero(tol) if only_nonzero else self.coefficients
        return [{"axes": s, "re": float(c.real), "im": float(c.imag)} for s, c in items.items()]

    @classmethod
    def from_data(cls, rows) -> "PauliExpansion":
        coeffs = {s: 0j for s in ALL_STRINGS}
        for row in rows:
            try:
                s, re, im = row["axes"], row["re"], row["im"]
            except (KeyError, TypeError) as exc:
                raise InvalidInputError(f"malformed coefficient row {row!r}") from exc
            coeffs[_check(s)] = complex(float(re), float(im))
        return cls(coeffs)

    def dumps(self, only_nonzero: bool = False) -> str:
        return json.dumps(self.to_data(only_nonzero))

    @classmethod
    def loads(cls, text: str) -> "PauliExpansion":
        return cls.from_data(json.loads(text))


def expand(m) -> PauliExpansion:
    m = as_matrix(m)
    if m.shape != (8, 8):
        raise InvalidInputError(f"expand needs an 8x8 matrix, got {m.shape}")
    # Tr(P m) = sum_ij P_ji m_ij
    return PauliExpansion({s: complex(np.sum(_MATRICES[s].T * m) / 8) for s in ALL_STRINGS})


def reconstruct(e: PauliExpansion) -> np.ndarray:
    out = np.zeros((8, 8), dtype=complex)
    for s, c in e.coefficients.items():
        if c != 0:
            out += c * _MATRICES[_check(s)]
    return out


def expected_coefficients(p: HamiltonianParams) -> dict:
    """Closed-form expansion coefficients of H(p); unlisted strings are zero."""
    k = math.pi * p.hbar / (4 * p.dt) * (p.n_gap + 0.5)
    cos_g, sin_g = math.cos(p.gamma), math.sin(p.gamma)
    out = {s: sign * k * cos_g for s, sign in COS_TERMS.items()}
    out.update({s: sign * k * sin_g for s, sign in SIN_TERMS.items()})
    return out


@dataclass(frozen=True)
class Eq7Report:
    passed: bool
    max_deviation: float
    max_extraneous: float
    coefficient_table: PauliExpansion
    convention: str = BASIS_CONVENTION


def verify_eq7(p: HamiltonianParams, tol: float = 1e-12) -> Eq7Report:
    """Expand H(p) and compare with the closed-form three-spin coefficient pattern."""
    table = expand(synthesize_hamiltonian(p))
    expected = expected_coefficients(p)
    dev = max(abs(table[s] - c) for s, c in expected.items())
    extra = max(abs(c) for s, c in table.coefficients.items() if s not in expected)
    return Eq7Report(
        passed=dev < tol and extra < tol,
        max_deviation=float(dev),
        max_extraneous=float(extra),
        coefficient_table=table,
    )
