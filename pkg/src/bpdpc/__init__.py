"""Disjoint path covers and Hamiltonian paths/cycles in faulty burnt pancake graphs."""

from .base_solver import Dpc2
from .dpc_engine import classify_case, dpc2_main, dpc2_solve
from .errors import (
    BPError,
    ConstructionError,
    DomainError,
    NoPathFound,
    PreconditionError,
)
from .fault_model import FaultSet, Region
from .ham_engine import ham_cycle, ham_path
from .verifier import verify_dpc, verify_ham_cycle, verify_ham_path

__all__ = [
    "BPError", "ConstructionError", "DomainError", "Dpc2", "FaultSet", "NoPathFound",
    "PreconditionError", "Region", "classify_case", "dpc2_main", "dpc2_solve",
    "ham_cycle", "ham_path", "verify_dpc", "verify_ham_cycle", "verify_ham_path",
]

__version__ = "0.1.0"
