"""Family spectra in closed form, and spectrum tables.

Each ``energy_*`` function evaluates one printed formula directly from the
molecular parameters.  :func:`build_table` puts them next to the generic
quantization route of :mod:`radial_ansatz.ansatz` and, on request, the
finite-difference oracle.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from . import ansatz, oracle
from .core import Origin, PhysicalConstants, PotentialSpec, QuantumState, ReducedProblem

RESIDUAL_TOL = 1e-8
NORM_TOL = 1e-8


def _consts(constants):
    return constants or PhysicalConstants()


def _check_quantum_numbers(n, ell, dim=3):
    if n < 0 or ell < 0 or dim < 2:
        raise ValueError(f"need n, ell >= 0 and dim >= 2, got n={n}, ell={ell}, dim={dim}")


def energy_pseudoharmonic(De, re, constants=None, n=0, ell=0, dim=3):
    k = _consts(constants)
    _check_quantum_numbers(n, ell, dim)
    root = math.sqrt(8 * k.mu * De * re**2 / k.hbar**2 + (2 * ell + dim - 2) ** 2)
    return -2 * De + math.sqrt(k.hbar**2 * De / (2 * k.mu * re**2)) * (4 * n + 2 + root)


def energy_harmonic_inverse_square(omega, g, constants=None, n=0, ell=0):
    """Three-dimensional only."""
    k = _consts(constants)
    _check_quantum_numbers(n, ell)
    if g < 0:
        raise ValueError(f"g must be >= 0, got {g}")
    root = math.sqrt((2 * ell + 1) ** 2 + 8 * k.mu * g / k.hbar**2)
    return 0.5 * k.hbar * omega * (4 * n + 2 + root)


def energy_anharmonic(B, constants=None, n=0, ell=0, dim=3):
    k = _consts(constants)
    _check_quantum_numbers(n, ell, dim)
    return math.sqrt(k.hbar**2 / (2 * k.mu)) * B * (4 * n + 2 * ell + dim)


def _kratzer_term(De, re, k, n, ell, dim):
    root = math.sqrt(8 * k.mu * De * re**2 / k.hbar**2 + (2 * ell + dim - 2) ** 2)
    return (k.hbar**2 / (2 * k.mu)) * (4 * k.mu * De * re / k.hbar**2) ** 2 \
        * (2 * n + 1 + root) ** -2


def energy_kratzer_fues(De, re, constants=None, n=0, ell=0, dim=3):
    k = _consts(constants)
    _check_quantum_numbers(n, ell, dim)
    return -_kratzer_term(De, re, k, n, ell, dim)


def energy_modified_kratzer(De, re, constants=None, n=0, ell=0, dim=3):
    k = _consts(constants)
    _check_quantum_numbers(n, ell, dim)
    return De - _kratzer_term(De, re, k, n, ell, dim)


def energy_coulomb(A, constants=None, n=0, ell=0, dim=3):
    k = _consts(constants)
    _check_quantum_numbers(n, ell, dim)
    return -k.mu * A**2 / (2 * k.hbar**2 * (n + ell + (dim - 1) / 2) ** 2)


def printed_energy(potential: PotentialSpec, constants: PhysicalConstants | None,
                   n: int, ell: int, dim: int) -> float | None:
    """The closed-form family formula for this potential, or None if there is none."""
    p, origin = potential.params, potential.origin
    if origin is Origin.PSEUDOHARMONIC:
        return energy_pseudoharmonic(p["De"], p["re"], constants, n, ell, dim)
    if origin is Origin.HARMONIC_INVERSE_SQUARE:
        if dim != 3:
            return None
        return energy_harmonic_inverse_square(p["omega"], p["g"], constants, n, ell)
    if origin is Origin.ANHARMONIC:
        return energy_anharmonic(p["B"], constants, n, ell, dim)
    if origin is Origin.KRATZER_FUES:
        return energy_kratzer_fues(p["De"], p["re"], constants, n, ell, dim)
    if origin is Origin.MODIFIED_KRATZER:
        return energy_modified_kratzer(p["De"], p["re"], constants, n, ell, dim)
    if origin is Origin.COULOMB:
        return energy_coulomb(p["A"], constants, n, ell, dim)
    return None


def generic_energy(potential: PotentialSpec, constants: PhysicalConstants | None,
                   n: int, ell: int, dim: int) -> float:
    """Energy through the delta restriction and A_p = 0."""
    problem = ReducedProblem.for_state(potential, QuantumState(n, ell, dim), constants)
    return ansatz.quantized_energy(problem, n, ansatz.delta_restriction(problem))


@dataclass(frozen=True)
class SpectrumRequest:
    potential: PotentialSpec
    n_max: int
    ell_max: int
    dims: tuple[int, ...] = (3,)
    constants: PhysicalConstants = field(default_factory=PhysicalConstants)
    label: str | None = None

    def __post_init__(self):
        if self.n_max < 0 or self.ell_max < 0:
            raise ValueError(f"n_max and ell_max must be >= 0, got {self.n_max}, {self.ell_max}")
        if not self.dims or any(d < 2 for d in self.dims):
            raise ValueError(f"every dim must be >= 2, got {self.dims}")
        mu = self.potential.params.get("mu")
        if mu is not None and mu != self.constants.mu:
            raise ValueError(f"potential built with mu={mu} but constants have mu={self.constants.mu}")

    def states(self):
        for dim in sorted(set(self.dims)):
            for ell in range(self.ell_max + 1):
                for n in range(self.n_max + 1):
                    yield QuantumState(n, ell, dim)


@dataclass
class SpectrumRow:
    molecule: str
    dim: int
    n: int
    ell: int
    e_analytic: float | None = None
    e_generic: float | None = None
    e_oracle: float | None = None
    rel_err: float | None = None
    norm_check: float | None = None
    residual: float | None = None
    status: str = "ok"
    passed: bool = True

    def fail(self, reason: str):
        self.passed = False
        self.status = reason if self.status == "ok" else f"{self.status}; {reason}"


@dataclass
class SpectrumTable:
    rows: list[SpectrumRow]
    verified: bool = False

    @property
    def all_passed(self) -> bool:
        return all(row.passed for row in self.rows)

    def failures(self) -> list[SpectrumRow]:
        return [row for row in self.rows if not row.passed]


def _build_row(req: SpectrumRequest, state: QuantumState, verify: bool,
               oracle_tol: float | None) -> SpectrumRow:
    label = req.label or req.potential.label
    row = SpectrumRow(label, state.dim, state.p, state.ell)
    try:
        problem = ReducedProblem.for_state(req.potential, state, req.constants)
        sol = ansatz.solve_state(problem, state)
        row.e_generic = sol.energy
        row.e_analytic = printed_energy(req.potential, req.constants, state.p, state.ell,
                                        state.dim)
        reference = row.e_analytic if row.e_analytic is not None else row.e_generic
        if row.e_analytic is not None and not math.isclose(
                row.e_analytic, row.e_generic, rel_tol=ansatz.CONSISTENCY_TOL, abs_tol=1e-300):
            row.fail("printed and generic energies disagree")
        if not verify:
            return row
        if not state.in_validated_range:
            row.status = "ell=0, D=2 outside validated range"
        r_peak = sol.peak_radius()
        row.norm_check = abs(oracle.normalize_integral(
            sol, state.dim, oracle.quadrature_grid(sol, state.dim, r_peak)) - 1)
        row.residual = oracle.ode_residual(sol, problem, oracle.residual_samples(r_peak))
        result = oracle.solve_numeric(problem, state.p, tol=oracle_tol, check=False)
        row.e_oracle = result.eigenvalue
        row.rel_err = abs(result.eigenvalue - reference) / abs(reference)
        tol = oracle_tol if oracle_tol is not None else oracle.DEFAULT_TOL[req.potential.family]
        if not result.converged:
            row.fail(f"oracle not converged (estimate {result.relative_estimate:.2g})")
        if result.node_count != state.p:
            row.fail(f"oracle eigenvector has {result.node_count} nodes")
        if row.rel_err > tol:
            row.fail(f"rel_err {row.rel_err:.3g} > {tol:g}")
        if row.norm_check > NORM_TOL:
            row.fail(f"normalization off by {row.norm_check:.3g}")
        if row.residual > RESIDUAL_TOL:
            row.fail(f"ODE residual {row.residual:.3g}")
    except (ValueError, oracle.OracleError) as exc:
        row.fail(f"failed: {exc}")
    return row


def build_table(req: SpectrumRequest, verify: bool = False, *, oracle_tol: float | None = None,
                workers: int = 1) -> SpectrumTable:
    """One row per (D, ell, n); row errors mark the row failed instead of raising."""
    states = list(req.states())
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            rows = list(pool.map(lambda s: _build_row(req, s, verify, oracle_tol), states))
    else:
        rows = [_build_row(req, s, verify, oracle_tol) for s in states]
    return SpectrumTable(rows, verified=verify)
