"""Exact Chevalley-Eilenberg cohomology, contact structures and Lefschetz
obstructions for nilpotent Lie algebras over Q."""
from .algebra import LieAlgebra, heisenberg
from .cohomology import betti_vector, cohomology, is_exact, parity_report
from .contact import is_contact, k_contact_report, reeb
from .errors import InvalidInput, InvariantViolation
from .exterior import Form, ce_d
from .io import parse_input
from .lefschetz import hard_lefschetz_report, lefschetz_verdict

__version__ = "0.1.0"

__all__ = [
    "Form", "InvalidInput", "InvariantViolation", "LieAlgebra", "betti_vector", "ce_d",
    "cohomology", "hard_lefschetz_report", "heisenberg", "is_contact", "is_exact",
    "k_contact_report", "lefschetz_verdict", "parity_report", "parse_input", "reeb",
]
