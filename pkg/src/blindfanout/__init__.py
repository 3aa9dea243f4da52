"""Blind fanout: three-qubit signal splitting without target initialization."""
from .errors import InvalidInputError, NotFoundError
from .fanout import FanoutPhases, build_fanout_unitary, build_general_fanout
from .hamiltonian import HamiltonianParams, synthesize_hamiltonian, verify_exponential
from .circuits import CERTIFICATE_9, Circuit, Gate, synthesize_swap_circuit
from .evolution import ProtocolFunction, evolve
from .pauli import expand, reconstruct, verify_eq7

__all__ = [
    "InvalidInputError", "NotFoundError",
    "FanoutPhases", "build_fanout_unitary", "build_general_fanout",
    "HamiltonianParams", "synthesize_hamiltonian", "verify_exponential",
    "CERTIFICATE_9", "Circuit", "Gate", "synthesize_swap_circuit",
    "ProtocolFunction", "evolve",
    "expand", "reconstruct", "verify_eq7",
]
