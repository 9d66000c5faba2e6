"""End-to-end checks run by ``radial-ansatz verify`` and the acceptance tests.

Each check returns a :class:`CheckResult`; none of them raise on failure.
Reference numbers live in :data:`ANCHORS` so they are stated exactly once.
"""

from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass, replace

import numpy as np

from . import ansatz, oracle, spectra
from .core import (Family, PhysicalConstants, QuantumState, ReducedProblem, make_anharmonic,
                   make_coulomb, make_harmonic_inverse_square, make_kratzer_fues,
                   make_modified_kratzer, make_pseudoharmonic, make_raw)

ANCHORS = {
    "hydrogen_1s_energy": -0.5,
    "hydrogen_2s_energy": -0.125,
    "oscillator_3d_ground": 1.5,
    "hydrogen_1s_a0": 2.0,
    "hydrogen_2s_ratio": -0.5,
    "printed_mie_p1_ratio": -1.5,
    "literal_kratzer_factor": 0.25,
}

TOL = {
    "consistency": 1e-12,
    "oracle_pseudoharmonic": 1e-6,
    "oracle_mie": 1e-5,
    "anchor": 1e-10,
    "oracle_coulomb": 1e-4,
    "norm": 1e-8,
    "residual": 1e-8,
    "orthogonality": 1e-6,
    "determinant": 1e-10,
}

CONSISTENCY_GRID = dict(n=range(6), ell=range(4), dims=(2, 3, 4, 6))
ORACLE_GRID = dict(n=range(4), ell=range(3), dims=(3, 4))
DEMO = PhysicalConstants()
#: wall-clock limits in seconds
RUNTIME = {"1": 1.0, "2": 60.0}


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str
    seconds: float = 0.0

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.name}: {self.detail} ({self.seconds:.2f} s)"


def _rel(x, y):
    return abs(x - y) / max(abs(y), 1e-300)


def _timed(fn):
    def wrapper(*args, **kwargs):
        start = time.perf_counter()
        result = fn(*args, **kwargs)
        result.seconds = time.perf_counter() - start
        return result
    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


def _states(grid, dims=None):
    for dim in dims or grid["dims"]:
        for ell in grid["ell"]:
            for n in grid["n"]:
                yield QuantumState(n, ell, dim)


def printed_vs_generic_cases():
    """(label, potential, constants, dims) covering each closed-form family formula."""
    off_unit = PhysicalConstants(hbar=0.8, mu=1.7)
    for k in (DEMO, off_unit):
        yield "pseudoharmonic", make_pseudoharmonic(1.3, 0.7), k, CONSISTENCY_GRID["dims"]
        yield "harmonic+inverse-square", make_harmonic_inverse_square(1.1, 0.6, k), k, (3,)
        yield "anharmonic", make_anharmonic(0.9), k, CONSISTENCY_GRID["dims"]
        yield "kratzer-fues", make_kratzer_fues(2.5, 1.2), k, CONSISTENCY_GRID["dims"]
        yield "modified-kratzer", make_modified_kratzer(2.5, 1.2), k, CONSISTENCY_GRID["dims"]
        yield "coulomb", make_coulomb(1.4), k, CONSISTENCY_GRID["dims"]


@_timed
def check_printed_vs_generic() -> CheckResult:
    """Criterion 1: printed family formulas equal the A_p = 0 route."""
    start = time.perf_counter()
    worst, count = 0.0, 0
    for _, pot, k, dims in printed_vs_generic_cases():
        for st in _states(CONSISTENCY_GRID, dims):
            printed = spectra.printed_energy(pot, k, st.p, st.ell, st.dim)
            worst = max(worst, _rel(printed, spectra.generic_energy(pot, k, st.p, st.ell, st.dim)))
            count += 1
    elapsed = time.perf_counter() - start
    ok = worst <= TOL["consistency"] and elapsed < RUNTIME["1"]
    return CheckResult("1 printed vs generic energies", ok,
                       f"{count} states, max rel diff {worst:.2e} (tol {TOL['consistency']:g})")


def demo_potentials():
    return {"pseudoharmonic": make_pseudoharmonic(1.0, 1.0),
            "modified-kratzer": make_modified_kratzer(1.0, 1.0)}


@_timed
def check_oracle_equivalence() -> CheckResult:
    """Criterion 2: demo energies against the finite-difference oracle."""
    start = time.perf_counter()
    worst = {}
    failures = []
    for label, pot in demo_potentials().items():
        tol = TOL["oracle_pseudoharmonic"] if pot.family is Family.PSEUDOHARMONIC \
            else TOL["oracle_mie"]
        for st in _states(ORACLE_GRID):
            problem = ReducedProblem.for_state(pot, st, DEMO)
            analytic = spectra.printed_energy(pot, DEMO, st.p, st.ell, st.dim)
            try:
                result = oracle.solve_numeric(problem, st.p, tol=tol)
            except oracle.OracleError as exc:
                failures.append(f"{label} {st}: {exc}")
                continue
            err = _rel(result.eigenvalue, analytic)
            worst[label] = max(worst.get(label, 0.0), err)
            if err > tol:
                failures.append(f"{label} {st}: rel err {err:.2e}")
    if time.perf_counter() - start >= RUNTIME["2"]:
        failures.append(f"exceeded {RUNTIME['2']:g} s")
    detail = ", ".join(f"{k} max {v:.2e}" for k, v in worst.items())
    return CheckResult("2 oracle equivalence", not failures,
                       detail + ("; " + "; ".join(failures[:3]) if failures else ""))


@_timed
def check_anchors() -> CheckResult:
    """Criterion 3: hydrogen and oscillator values known in closed form."""
    bad = []

    def expect(name, value, target, tol):
        if not abs(value - target) <= tol * max(1.0, abs(target)):
            bad.append(f"{name}={value!r} expected {target!r}")

    for n, ell in itertools.product(range(6), range(4)):
        expect(f"coulomb(n={n},l={ell})", spectra.energy_coulomb(1.0, DEMO, n, ell, 3),
               -1 / (2 * (n + ell + 1) ** 2), TOL["anchor"])
    expect("coulomb 1s", spectra.energy_coulomb(1.0, DEMO, 0, 0, 3),
           ANCHORS["hydrogen_1s_energy"], TOL["anchor"])
    expect("coulomb 2s", spectra.energy_coulomb(1.0, DEMO, 1, 0, 3),
           ANCHORS["hydrogen_2s_energy"], TOL["anchor"])

    osc = make_raw(Family.PSEUDOHARMONIC, 0.5, 0.0, 0.0)
    st = QuantumState(0, 0, 3)
    osc_sol = ansatz.solve_state(ReducedProblem.for_state(osc, st), st)
    expect("oscillator ground", osc_sol.energy, ANCHORS["oscillator_3d_ground"], TOL["anchor"])
    expect("oscillator ground (printed)", spectra.energy_anharmonic(2**-0.5, DEMO, 0, 0, 3),
           ANCHORS["oscillator_3d_ground"], TOL["anchor"])

    coulomb = make_coulomb(1.0)
    h1s = ansatz.solve_state(ReducedProblem.for_state(coulomb, st), st)
    expect("hydrogen 1s a0", h1s.coeffs[0], ANCHORS["hydrogen_1s_a0"], TOL["anchor"])
    st2 = QuantumState(1, 0, 3)
    h2s = ansatz.solve_state(ReducedProblem.for_state(coulomb, st2), st2)
    expect("hydrogen 2s a1/a0", h2s.coeffs[1] / h2s.coeffs[0], ANCHORS["hydrogen_2s_ratio"],
           TOL["anchor"])

    numeric = oracle.solve_numeric(ReducedProblem.for_state(coulomb, st), 0)
    expect("oracle hydrogen 1s", numeric.eigenvalue, ANCHORS["hydrogen_1s_energy"],
           TOL["oracle_coulomb"])
    return CheckResult("3 exact anchors", not bad, "; ".join(bad) if bad else "all anchors hold")


def _orthogonality(sols, dim):
    worst = 0.0
    r_scale = max(s.peak_radius() for s in sols)
    grid = oracle.quadrature_grid(lambda r: sum(np.abs(s(r)) for s in sols), dim, r_scale)
    for s, t in itertools.combinations(sols, 2):
        worst = max(worst, abs(oracle.overlap_integral(s, t, dim, grid)))
    return worst


@_timed
def check_wavefunctions() -> CheckResult:
    """Criterion 4: normalization, ODE residual, node count and orthogonality."""
    worst = dict(norm=0.0, residual=0.0, orthogonality=0.0)
    bad = []
    for label, pot in demo_potentials().items():
        for dim in ORACLE_GRID["dims"]:
            for ell in ORACLE_GRID["ell"]:
                sols = []
                for n in ORACLE_GRID["n"]:
                    st = QuantumState(n, ell, dim)
                    problem = ReducedProblem.for_state(pot, st, DEMO)
                    sol = ansatz.solve_state(problem, st)
                    sols.append(sol)
                    r_peak = sol.peak_radius()
                    norm = oracle.normalize_integral(
                        sol, dim, oracle.quadrature_grid(sol, dim, r_peak))
                    res = oracle.ode_residual(sol, problem, oracle.residual_samples(r_peak))
                    worst["norm"] = max(worst["norm"], abs(norm - 1))
                    worst["residual"] = max(worst["residual"], res)
                    nodes = sol.nodes()
                    if len(nodes) != n or len(np.unique(np.round(nodes, 12))) != n:
                        bad.append(f"{label} {st}: {len(nodes)} nodes")
                worst["orthogonality"] = max(worst["orthogonality"], _orthogonality(sols, dim))
    for key in worst:
        if worst[key] > TOL[key]:
            bad.append(f"{key} {worst[key]:.2e} > {TOL[key]:g}")
    detail = ", ".join(f"max {k} {v:.2e}" for k, v in worst.items())
    return CheckResult("4 wavefunction validity", not bad,
                       detail + ("; " + "; ".join(bad[:3]) if bad else ""))


def _degeneracy_families():
    yield lambda n, l, d: spectra.energy_pseudoharmonic(1.3, 0.7, DEMO, n, l, d)
    yield lambda n, l, d: spectra.energy_anharmonic(0.9, DEMO, n, l, d)
    yield lambda n, l, d: spectra.energy_kratzer_fues(2.5, 1.2, DEMO, n, l, d)
    yield lambda n, l, d: spectra.energy_modified_kratzer(2.5, 1.2, DEMO, n, l, d)
    yield lambda n, l, d: spectra.energy_coulomb(1.4, DEMO, n, l, d)
    for pot in (make_pseudoharmonic(1.3, 0.7), make_harmonic_inverse_square(1.1, 0.6),
                make_anharmonic(0.9), make_modified_kratzer(2.5, 1.2), make_coulomb(1.4)):
        yield lambda n, l, d, pot=pot: spectra.generic_energy(pot, DEMO, n, l, d)


@_timed
def check_structural() -> CheckResult:
    """Criterion 5: Kratzer shift, interdimensional degeneracy, determinant."""
    bad = []
    for De, re in ((1.0, 1.0), (2.5, 1.2), (0.37, 3.1), (11.0, 0.45)):
        for st in _states(CONSISTENCY_GRID):
            diff = (spectra.energy_modified_kratzer(De, re, DEMO, st.p, st.ell, st.dim)
                    - spectra.energy_kratzer_fues(De, re, DEMO, st.p, st.ell, st.dim))
            if diff != De:
                bad.append(f"Kratzer shift {diff!r} != De={De!r} at {st}")
    worst = 0.0
    for energy in _degeneracy_families():
        for n, ell in itertools.product(CONSISTENCY_GRID["n"], CONSISTENCY_GRID["ell"]):
            for dim in (2, 3, 4):
                worst = max(worst, _rel(energy(n, ell, dim + 2), energy(n, ell + 1, dim)))
    if worst > TOL["consistency"]:
        bad.append(f"degeneracy rel diff {worst:.2e}")
    det_worst = 0.0
    for pot in (make_pseudoharmonic(1.3, 0.7), make_modified_kratzer(2.5, 1.2), make_coulomb(1.0)):
        for p, ell, dim in itertools.product(range(6), range(3), (3, 4)):
            problem = ReducedProblem.for_state(pot, QuantumState(p, ell, dim))
            delta = ansatz.delta_restriction(problem)
            energy = ansatz.quantized_energy(problem, p, delta)
            rc = ansatz.recursion_coeffs(problem, p, delta,
                                         ansatz.alpha_param(problem, p, delta, energy), energy)
            scale = float(np.prod(np.abs(rc.B[1:p + 1]))) if p else 1.0
            det_worst = max(det_worst, abs(ansatz.determinant_condition(rc, p)) / scale)
    if det_worst > TOL["determinant"]:
        bad.append(f"determinant {det_worst:.2e}")
    return CheckResult("5 structural identities", not bad,
                       f"degeneracy {worst:.2e}, scaled determinant {det_worst:.2e}"
                       + ("; " + "; ".join(bad[:3]) if bad else ""))


def printed_mie_solution(problem: ReducedProblem, state: QuantumState) -> ansatz.AnsatzSolution:
    """p = 1 Mie solution rebuilt with the printed coefficient relation."""
    sol = ansatz.solve_state(problem, state)
    ratio = ansatz.printed_p1_ratio(problem, sol.delta)
    return replace(sol, coeffs=(sol.coeffs[0], sol.coeffs[0] * ratio))


def literal_kratzer_energy(De, re, constants, n, ell, dim):
    """A_p = 0 energy with the 1/r coefficient taken literally as -De*re."""
    pot = make_raw(Family.MIE, -De * re, De * re**2, De)
    problem = ReducedProblem.for_state(pot, QuantumState(n, ell, dim), constants)
    return ansatz.quantized_energy(problem, n, ansatz.delta_restriction(problem))


@_timed
def check_typo_regressions() -> CheckResult:
    """Criterion 6: the two misprints stay detectable."""
    bad = []
    st = QuantumState(1, 0, 3)
    problem = ReducedProblem.for_state(make_coulomb(1.0), st)
    sol = ansatz.solve_state(problem, st)
    rc = ansatz.recursion_coeffs(problem, 1, sol.delta, sol.alpha, sol.energy)
    engine_ratio = -rc.A[0] / rc.B[1]
    if abs(engine_ratio - ANCHORS["hydrogen_2s_ratio"]) > TOL["anchor"]:
        bad.append(f"engine ratio {engine_ratio}")
    printed = printed_mie_solution(problem, st)
    printed_ratio = printed.coeffs[1] / printed.coeffs[0]
    if abs(printed_ratio - ANCHORS["printed_mie_p1_ratio"]) > TOL["anchor"]:
        bad.append(f"printed ratio {printed_ratio}")
    samples = oracle.residual_samples(sol.peak_radius())
    printed_res = oracle.ode_residual(printed, problem, samples)
    engine_res = oracle.ode_residual(sol, problem, samples)
    if printed_res <= TOL["residual"]:
        bad.append(f"printed relation passes residual ({printed_res:.2e})")
    if engine_res > TOL["residual"]:
        bad.append(f"engine residual {engine_res:.2e}")

    factor_worst, agree_worst = 0.0, 0.0
    for De, re in ((1.0, 1.0), (2.5, 1.2)):
        for s in _states(CONSISTENCY_GRID):
            closed = spectra.energy_modified_kratzer(De, re, DEMO, s.p, s.ell, s.dim)
            literal = literal_kratzer_energy(De, re, DEMO, s.p, s.ell, s.dim)
            ratio = (De - literal) / (De - closed)
            factor_worst = max(factor_worst, abs(ratio - ANCHORS["literal_kratzer_factor"]))
            corrected = spectra.generic_energy(make_modified_kratzer(De, re), DEMO,
                                               s.p, s.ell, s.dim)
            agree_worst = max(agree_worst, _rel(corrected, closed))
    if factor_worst > TOL["consistency"] or agree_worst > TOL["consistency"]:
        bad.append(f"Kratzer factor check {factor_worst:.2e}/{agree_worst:.2e}")
    return CheckResult("6 misprint regressions", not bad,
                       f"printed-relation residual {printed_res:.2e}, engine {engine_res:.2e}"
                       + ("; " + "; ".join(bad) if bad else ""))


CHECKS = {
    "1": check_printed_vs_generic,
    "2": check_oracle_equivalence,
    "3": check_anchors,
    "4": check_wavefunctions,
    "5": check_structural,
    "6": check_typo_regressions,
}


def run_checks(selection=None) -> list[CheckResult]:
    results = []
    for key in selection or CHECKS:
        try:
            results.append(CHECKS[key]())
        except Exception as exc:  # a crashing check is a failed check
            results.append(CheckResult(CHECKS[key].__doc__.split(":")[0], False,
                                       f"raised {type(exc).__name__}: {exc}"))
    return results
