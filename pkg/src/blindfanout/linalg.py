"""
Dense complex linear algebra for the three-qubit register.

Matrices and state vectors are plain ``numpy`` arrays of dtype ``complex128``.

Basis convention
----------------
Every single-qubit factor is written in the ordered basis ``(|1>, |0>)``.
With that ordering a plain Kronecker product ``I (x) C (x) D`` lists the
eight three-qubit states as ``|111>, |110>, |101>, |100>, |011>, |010>,
|001>, |000>`` (row 0 through row 7), and ``sigma_z |1> = +|1>``.  Most
simulators use the opposite ``(|0>, |1>)`` order; do not mix the two.
"""
from __future__ import annotations

import json
import math
from typing import Iterable, Sequence

import numpy as np

from .errors import InvalidInputError

QUBITS = ("I", "C", "D")

# Single-qubit matrices in the (|1>, |0>) basis.
ID2 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
KET1 = np.array([1, 0], dtype=complex)
KET0 = np.array([0, 1], dtype=complex)

_TAYLOR_ORDER = 18
_SCALED_NORM = 0.5


def as_matrix(m) -> np.ndarray:
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] == 0:
        raise InvalidInputError(f"expected a non-empty square matrix, got shape {a.shape}")
    return a


def _same_dim(a: np.ndarray, b: np.ndarray) -> None:
    if a.shape != b.shape:
        raise InvalidInputError(f"dimension mismatch: {a.shape} vs {b.shape}")


def mat_mul(a, b) -> np.ndarray:
    a, b = as_matrix(a), as_matrix(b)
    _same_dim(a, b)
    return a @ b


def dagger(m) -> np.ndarray:
    return np.conj(as_matrix(m)).T


def kron3(a, b, c) -> np.ndarray:
    """Kronecker product with factor order (I, C, D)."""
    a, b, c = as_matrix(a), as_matrix(b), as_matrix(c)
    for f in (a, b, c):
        if f.shape != (2, 2):
            raise InvalidInputError(f"kron3 factors must be 2x2, got {f.shape}")
    return np.kron(np.kron(a, b), c)


def frobenius_distance(a, b) -> float:
    a, b = as_matrix(a), as_matrix(b)
    _same_dim(a, b)
    return float(np.linalg.norm(a - b, "fro"))


def unitarity_residual(m) -> float:
    m = as_matrix(m)
    return float(np.linalg.norm(m @ m.conj().T - np.eye(m.shape[0]), "fro"))


def hermiticity_residual(m) -> float:
    m = as_matrix(m)
    return float(np.linalg.norm(m - m.conj().T, "fro"))


def mat_exp(m) -> np.ndarray:
    """
    Matrix exponential by scaling and squaring.

    The argument is scaled by ``2**-s`` until its 1-norm is at most 1/2,
    exponentiated with an order-18 Taylor polynomial (truncation error below
    1e-22 at that norm), then squared ``s`` times.

    Parameters
    ----------
    m : array_like
        The full exponent, e.g. ``-1j * H * dt / hbar``.

    Returns
    -------
    numpy.ndarray
        ``exp(m)``.
    """
    m = as_matrix(m)
    if not np.all(np.isfinite(m)):
        raise InvalidInputError("matrix exponential of non-finite input")
    norm = float(np.max(np.sum(np.abs(m), axis=0)))
    s = 0 if norm <= _SCALED_NORM else int(math.ceil(math.log2(norm / _SCALED_NORM)))
    x = m / (2.0 ** s)

    n = m.shape[0]
    result = np.eye(n, dtype=complex)
    term = np.eye(n, dtype=complex)
    for k in range(1, _TAYLOR_ORDER + 1):
        term = term @ x / k
        result = result + term
    for _ in range(s):
        result = result @ result
    return result


def _n_qubits(dim: int) -> int:
    n = int(round(math.log2(dim))) if dim > 0 else -1
    if n < 1 or 2 ** n != dim:
        raise InvalidInputError(f"state dimension {dim} is not a power of two")
    return n


def _qubit_index(q, n: int) -> int:
    if isinstance(q, str):
        if n != 3 or q not in QUBITS:
            raise InvalidInputError(f"unknown qubit label {q!r}")
        return QUBITS.index(q)
    q = int(q)
    if not 0 <= q < n:
        raise InvalidInputError(f"qubit index {q} out of range for {n} qubits")
    return q


def partial_trace(state, keep: Iterable) -> np.ndarray:
    """
    Reduced density matrix of a pure state over the qubits in ``keep``.

    ``keep`` holds qubit labels ("I", "C", "D") or positions (0 = leftmost
    factor).  Kept qubits appear in register order in the result, and the
    reduced matrix uses the same (|1>, |0>) per-qubit ordering.
    """
    psi = np.asarray(state, dtype=complex).ravel()
    n = _n_qubits(psi.size)
    if abs(np.linalg.norm(psi) - 1.0) > 1e-12:
        raise InvalidInputError("partial_trace needs a normalized state")
    kept = sorted({_qubit_index(q, n) for q in keep})
    if not kept or len(kept) == n:
        raise InvalidInputError("keep-set must be a non-empty proper subset of the qubits")
    traced = [q for q in range(n) if q not in kept]
    t = psi.reshape([2] * n).transpose(kept + traced).reshape(2 ** len(kept), -1)
    return t @ t.conj().T


def fidelity(rho, psi) -> float:
    """Overlap <psi|rho|psi> of a density matrix with a pure state."""
    rho = as_matrix(rho)
    psi = np.asarray(psi, dtype=complex).ravel()
    if psi.size != rho.shape[0]:
        raise InvalidInputError(f"dimension mismatch: rho {rho.shape} vs psi {psi.size}")
    return float(np.real(np.vdot(psi, rho @ psi)))


# Interchange format: rows of [re, im] pairs.

def _pair(z: complex) -> list[float]:
    return [float(z.real), float(z.imag)]


def _from_pair(p) -> complex:
    if not isinstance(p, (list, tuple)) or len(p) != 2:
        raise InvalidInputError(f"expected an [re, im] pair, got {p!r}")
    re, im = p
    if isinstance(re, bool) or isinstance(im, bool) or not all(isinstance(v, (int, float)) for v in (re, im)):
        raise InvalidInputError(f"non-numeric entry {p!r}")
    z = complex(re, im)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise InvalidInputError(f"non-finite entry {p!r}")
    return z


def matrix_to_data(m) -> list[list[list[float]]]:
    return [[_pair(z) for z in row] for row in as_matrix(m)]


def matrix_from_data(rows: Sequence) -> np.ndarray:
    if not isinstance(rows, (list, tuple)) or not rows:
        raise InvalidInputError("matrix document must be a non-empty array of rows")
    if not all(isinstance(r, (list, tuple)) for r in rows):
        raise InvalidInputError("every row must be an array")
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise InvalidInputError("non-rectangular matrix")
    if width != len(rows):
        raise InvalidInputError(f"matrix must be square, got {len(rows)}x{width}")
    return np.array([[_from_pair(p) for p in r] for r in rows], dtype=complex)


def dumps_matrix(m) -> str:
    return json.dumps(matrix_to_data(m))


def loads_matrix(text: str) -> np.ndarray:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInputError(f"malformed matrix document: {exc}") from exc
    return matrix_from_data(data)


def vector_to_data(v) -> list[list[float]]:
    return [_pair(z) for z in np.asarray(v, dtype=complex).ravel()]


def vector_from_data(pairs: Sequence, dim: int | None = None) -> np.ndarray:
    if not isinstance(pairs, (list, tuple)) or not pairs:
        raise InvalidInputError("vector document must be a non-empty array of [re, im] pairs")
    if dim is not None and len(pairs) != dim:
        raise InvalidInputError(f"expected {dim} amplitudes, got {len(pairs)}")
    return np.array([_from_pair(p) for p in pairs], dtype=complex)
