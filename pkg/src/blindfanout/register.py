"""
Basis labels, states and target subspaces of the |ICD> register.

Row ``r`` of an 8-vector is the label with bits ``(i, c, d)`` where
``r = 4(1-i) + 2(1-c) + (1-d)``, so ``|111>`` is row 0 and ``|000>`` row 7.

Random states use numpy's ``default_rng`` (PCG64 bit generator, seeded with
the given integer).  A Haar-random pure state draws ``2*dim`` standard
normals, real parts first then imaginary parts, and normalizes.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .errors import InvalidInputError
from .linalg import vector_from_data, vector_to_data

DIM = 8


@dataclass(frozen=True)
class BasisLabel:
    i_bit: int
    c_bit: int
    d_bit: int

    def __post_init__(self):
        for b in self.bits:
            if b not in (0, 1):
                raise InvalidInputError(f"basis bits must be 0 or 1, got {self.bits}")

    @property
    def bits(self) -> tuple[int, int, int]:
        return (self.i_bit, self.c_bit, self.d_bit)

    @classmethod
    def parse(cls, text: str) -> "BasisLabel":
        """Parse a ket string such as ``"100"`` or ``"|100>"``."""
        s = text.strip().lstrip("|").rstrip(">").rstrip("⟩")
        if len(s) != 3 or any(ch not in "01" for ch in s):
            raise InvalidInputError(f"not a three-bit label: {text!r}")
        return cls(*(int(ch) for ch in s))

    def __str__(self) -> str:
        return "|{}{}{}>".format(*self.bits)


def basis_index(label: BasisLabel | tuple[int, int, int]) -> int:
    i, c, d = label.bits if isinstance(label, BasisLabel) else BasisLabel(*label).bits
    return 4 * (1 - i) + 2 * (1 - c) + (1 - d)


def label_of(index: int) -> BasisLabel:
    if not 0 <= index < DIM:
        raise InvalidInputError(f"row index {index} out of range")
    return BasisLabel(1 - (index >> 2 & 1), 1 - (index >> 1 & 1), 1 - (index & 1))


def basis_state(label) -> np.ndarray:
    if isinstance(label, str):
        label = BasisLabel.parse(label)
    v = np.zeros(DIM, dtype=complex)
    v[basis_index(label)] = 1.0
    return v


def _haar_state(rng: np.random.Generator, dim: int) -> np.ndarray:
    x = rng.standard_normal(2 * dim)
    v = x[:dim] + 1j * x[dim:]
    return v / np.linalg.norm(v)


def random_state(dim: int, seed: int) -> np.ndarray:
    if dim not in (2, 4, 8):
        raise InvalidInputError(f"random_state supports dim 2, 4 or 8, got {dim}")
    return _haar_state(np.random.default_rng(seed), dim)


def random_states(dim: int, count: int, seed: int) -> Iterator[np.ndarray]:
    """``count`` consecutive Haar states drawn from one seeded generator."""
    if dim not in (2, 4, 8):
        raise InvalidInputError(f"random_states supports dim 2, 4 or 8, got {dim}")
    rng = np.random.default_rng(seed)
    for _ in range(count):
        yield _haar_state(rng, dim)


def random_unitary(dim: int, seed: int) -> np.ndarray:
    # QR of a complex Ginibre matrix with the R-diagonal phases divided out is Haar.
    rng = np.random.default_rng(seed)
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


@dataclass(frozen=True)
class Subspace:
    name: str
    rows: frozenset

    def __contains__(self, row: int) -> bool:
        return row in self.rows

    @property
    def sorted_rows(self) -> list[int]:
        return sorted(self.rows)


def _rows_with_majority(bit: int) -> frozenset:
    return frozenset(r for r in range(DIM) if sum(b == bit for b in label_of(r).bits) >= 2)


# Allowed images of I=1 inputs (at least two 1s) and of I=0 inputs (at least two 0s).
T1 = Subspace("T1", _rows_with_majority(1))
T0 = Subspace("T0", _rows_with_majority(0))


def subspace_leakage(state, s: Subspace) -> float:
    """Probability weight of ``state`` outside ``s``."""
    psi = np.asarray(state, dtype=complex).ravel()
    if psi.size != DIM:
        raise InvalidInputError(f"expected an 8-amplitude state, got {psi.size}")
    outside = [r for r in range(DIM) if r not in s]
    return float(np.sum(np.abs(psi[outside]) ** 2))


def dumps_state(v) -> str:
    return json.dumps(vector_to_data(v))


def loads_state(text: str) -> np.ndarray:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInputError(f"malformed state document: {exc}") from exc
    return vector_from_data(data, dim=DIM)
