"""Closed-form bound states of the D-dimensional radial Schrodinger equation.

Pseudoharmonic (a r^2 + b/r^2 + c) and Mie-type (a/r + b/r^2 + c) potentials
are solved with a polynomial-times-exponential ansatz; a finite-difference
solver provides the independent check.
"""

from .ansatz import AnsatzError, AnsatzSolution, NotBoundStateError, solve_state
from .core import (Family, PhysicalConstants, PotentialSpec, QuantumState, ReducedProblem,
                   make_anharmonic, make_coulomb, make_harmonic_inverse_square,
                   make_kratzer_fues, make_modified_kratzer, make_pseudoharmonic, make_raw)
from .oracle import solve_numeric
from .spectra import SpectrumRequest, build_table

__version__ = "0.1.0"

__all__ = [
    "AnsatzError", "AnsatzSolution", "Family", "NotBoundStateError", "PhysicalConstants",
    "PotentialSpec", "QuantumState", "ReducedProblem", "SpectrumRequest", "build_table",
    "make_anharmonic", "make_coulomb", "make_harmonic_inverse_square", "make_kratzer_fues",
    "make_modified_kratzer", "make_pseudoharmonic", "make_raw", "solve_numeric", "solve_state",
]
