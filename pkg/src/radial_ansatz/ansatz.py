"""Polynomial x power x exponential ansatz for the reduced radial equation.

Pseudoharmonic family (V = a r^2 + b/r^2 + c)::

    R(r) = exp(alpha r^2 / 2) * sum_n a_n r^(2n + delta + 3/2)

Mie family (V = a/r + b/r^2 + c)::

    R(r) = exp(alpha r) * sum_n a_n r^(n + delta + 1/2)

Substituting either form gives the two-term recursion
``A_n a_n + B_{n+1} a_{n+1} = 0`` (the third coefficient C_n vanishes).
Truncating at degree p forces ``A_p = 0`` (energy quantization) and the
lowest power forces ``B_0 = 0`` (fixes delta).
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate
from scipy.special import gammaln

from .core import Family, QuantumState, ReducedProblem

log = logging.getLogger(__name__)

#: relative agreement demanded of quantities that are equal by construction
CONSISTENCY_TOL = 1e-12


class AnsatzError(ValueError):
    pass


class NotBoundStateError(AnsatzError):
    pass


class DegenerateRecursionError(AnsatzError):
    pass


@dataclass(frozen=True)
class RecursionCoeffs:
    A: np.ndarray  # A_0 .. A_p
    B: np.ndarray  # B_0 .. B_{p+1}
    C: np.ndarray  # C_0 .. C_{p+2}, identically zero

    @property
    def p(self) -> int:
        return len(self.A) - 1


@dataclass(frozen=True)
class AnsatzSolution:
    state: QuantumState
    problem: ReducedProblem
    delta: float
    alpha: float
    energy: float
    coeffs: tuple[float, ...]
    norm_mode: str = "gamma"

    @property
    def family(self) -> Family:
        return self.problem.potential.family

    def _exponents(self) -> np.ndarray:
        n = np.arange(len(self.coeffs))
        if self.family is Family.PSEUDOHARMONIC:
            return 2 * n + self.delta + 1.5
        return n + self.delta + 0.5

    def _envelope(self, r):
        """g(r), g'(r), g''(r) with R = exp(g) * sum a_n r^s_n."""
        if self.family is Family.PSEUDOHARMONIC:
            return 0.5 * self.alpha * r**2, self.alpha * r, self.alpha
        return self.alpha * r, self.alpha, 0.0

    def reduced(self, r, *, second_derivative: bool = False):
        """R(r), and optionally R''(r) from the closed form."""
        r = np.asarray(r, dtype=float)
        if np.any(r <= 0):
            raise ValueError("r must be strictly positive")
        s = self._exponents()[:, None]
        a = np.asarray(self.coeffs)[:, None]
        rr = r.reshape(1, -1)
        g, dg, d2g = self._envelope(rr)
        terms = a * np.exp(s * np.log(rr) + g)
        R = terms.sum(axis=0).reshape(r.shape)
        if not second_derivative:
            return R
        factor = (s / rr + dg) ** 2 - s / rr**2 + d2g
        return R, (terms * factor).sum(axis=0).reshape(r.shape)

    def __call__(self, r):
        return evaluate_wavefunction(self, r)

    def polynomial(self) -> np.polynomial.Polynomial:
        """Polynomial factor in the variable r^2 (pseudoharmonic) or r (Mie)."""
        return np.polynomial.Polynomial(self.coeffs)

    def nodes(self) -> np.ndarray:
        """Positive radii where the polynomial factor vanishes."""
        if len(self.coeffs) == 1:
            return np.empty(0)
        roots = self.polynomial().roots()
        real = roots[np.abs(roots.imag) <= 1e-9 * np.maximum(1.0, np.abs(roots.real))].real
        real = np.sort(real[real > 0])
        return np.sqrt(real) if self.family is Family.PSEUDOHARMONIC else real

    def peak_radius(self) -> float:
        """Radius of the largest |R(r)|, located on a dense logarithmic scan."""
        length = _length_scale(self)
        r = np.geomspace(1e-4 * length, 50 * length, 4000)
        return float(r[np.argmax(np.abs(self.reduced(r)))])


def _length_scale(sol: AnsatzSolution) -> float:
    if sol.family is Family.PSEUDOHARMONIC:
        return math.sqrt((len(sol.coeffs) + sol.delta + 2) / -sol.alpha)
    return (len(sol.coeffs) + sol.delta + 1) / -sol.alpha


def delta_restriction(problem: ReducedProblem) -> float:
    """Indicial parameter delta from B_0 = 0 (same delta for every p)."""
    radicand = problem.constants.scale * problem.potential.b + problem.eta**2
    if radicand < 0:
        raise AnsatzError(f"2*mu*b/hbar^2 + eta^2 = {radicand} < 0; no real delta")
    root = math.sqrt(radicand)
    if problem.potential.family is Family.PSEUDOHARMONIC:
        return -1.0 + root
    return root


def quantized_energy(problem: ReducedProblem, p: int, delta: float) -> float:
    """Energy fixed by A_p = 0."""
    if p < 0:
        raise ValueError(f"p must be >= 0, got {p}")
    pot, k = problem.potential, problem.constants
    if pot.family is Family.PSEUDOHARMONIC:
        return pot.c + math.sqrt(2 * k.hbar**2 * pot.a / k.mu) * (2 * p + delta + 2)
    return pot.c - k.mu * pot.a**2 / (2 * k.hbar**2 * (p + delta + 0.5) ** 2)


def alpha_param(problem: ReducedProblem, p: int, delta: float, energy: float) -> float:
    """Decaying-branch exponent scale alpha (< 0)."""
    pot, scale = problem.potential, problem.constants.scale
    if pot.family is Family.PSEUDOHARMONIC:
        return -math.sqrt(scale * pot.a)
    if not energy < pot.c:
        raise NotBoundStateError(f"E = {energy} >= c = {pot.c}: not a bound state")
    alpha = -math.sqrt(-scale * (energy - pot.c))
    from_quantization = 0.5 * scale * pot.a / (p + delta + 0.5)
    if not math.isclose(alpha, from_quantization, rel_tol=CONSISTENCY_TOL):
        raise AnsatzError(
            f"E = {energy} is not the quantized energy for p={p}: "
            f"alpha={alpha} but A_p = 0 requires {from_quantization}")
    return alpha


def recursion_coeffs(problem: ReducedProblem, p: int, delta: float, alpha: float,
                     energy: float) -> RecursionCoeffs:
    pot, scale = problem.potential, problem.constants.scale
    barrier = problem.eta**2 - 0.25
    n_a = np.arange(p + 1, dtype=float)
    n_b = np.arange(p + 2, dtype=float)
    if pot.family is Family.PSEUDOHARMONIC:
        A = scale * (energy - pot.c) + 2 * alpha * (2 * n_a + delta + 2)
        B = -scale * pot.b - barrier + (2 * n_b + delta + 1.5) * (2 * n_b + delta + 0.5)
    else:
        A = -scale * pot.a + 2 * alpha * (n_a + delta + 0.5)
        B = -scale * pot.b - barrier + (n_b + delta + 0.5) * (n_b + delta - 0.5)
    return RecursionCoeffs(A, B, np.zeros(p + 3))


def polynomial_coeffs(rc: RecursionCoeffs, p: int) -> np.ndarray:
    """a_0 = 1, a_{n+1} = -A_n a_n / B_{n+1}."""
    a = np.empty(p + 1)
    a[0] = 1.0
    for n in range(p):
        b_next = rc.B[n + 1]
        if abs(b_next) <= CONSISTENCY_TOL * max(1.0, abs(rc.A[n])):
            raise DegenerateRecursionError(f"B_{n + 1} = {b_next} vanishes; a_{n + 1} undetermined")
        a[n + 1] = -rc.A[n] * a[n] / b_next
    return a


def determinant_condition(rc: RecursionCoeffs, p: int) -> float:
    """Determinant of the (p+1)x(p+1) banded matrix with rows (A_{i-1}, B_i, C_{i+1})."""
    m = np.zeros((p + 1, p + 1))
    for i in range(p + 1):
        m[i, i] = rc.B[i]
        if i > 0:
            m[i, i - 1] = rc.A[i - 1]
        if i < p:
            m[i, i + 1] = rc.C[i + 1]
    return float(np.linalg.det(m))


def _gamma_norm(family: Family, coeffs, delta: float, alpha: float) -> float:
    """Exact value of int_0^inf psi^2 r^(D-1) dr for the unnormalized coefficients."""
    a = np.asarray(coeffs, dtype=float)
    idx = np.arange(len(a))
    nm = idx[:, None] + idx[None, :]
    if family is Family.PSEUDOHARMONIC:
        beta = -alpha
        order = nm + delta + 2
        log_terms = gammaln(order) - order * math.log(beta) - math.log(2.0)
    else:
        two_kappa = -2 * alpha
        order = nm + 2 * delta + 2
        log_terms = gammaln(order) - order * math.log(two_kappa)
    return float(np.sum(np.outer(a, a) * np.exp(log_terms)))


def _quadrature_norm(sol: AnsatzSolution) -> float:
    dim = sol.state.dim
    value, _ = integrate.quad(lambda r: evaluate_wavefunction(sol, r) ** 2 * r ** (dim - 1),
                              0, np.inf, limit=400, epsabs=0, epsrel=1e-13)
    return value


def closed_form_a0(problem: ReducedProblem, delta: float, energy: float) -> float:
    """Normalized p = 0 amplitude, factorials read as Gamma functions."""
    pot, scale = problem.potential, problem.constants.scale
    if pot.family is Family.PSEUDOHARMONIC:
        beta = math.sqrt(scale * pot.a)
        return math.sqrt(2 / math.gamma(delta + 2)) * beta ** (delta / 2 + 1)
    kappa = math.sqrt(-scale * (energy - pot.c))
    return (2 * kappa) ** (delta + 1) / math.sqrt(math.gamma(2 * delta + 2))


def printed_p1_ratio(problem: ReducedProblem, delta: float) -> float:
    """a_1/a_0 for p = 1 from the printed two-coefficient relations.

    Pseudoharmonic: 4*beta*a_0 + ((delta+3)^2 - eta^2 - 2mu b/hbar^2) a_1 = 0.
    Mie: -(4 mu a/hbar^2)(delta+1)/(delta+3/2) a_0 + (2 delta + 1) a_1 = 0.
    The Mie version disagrees with the recursion; kept for regression tests.
    """
    pot, scale = problem.potential, problem.constants.scale
    if pot.family is Family.PSEUDOHARMONIC:
        beta = math.sqrt(scale * pot.a)
        return -4 * beta / ((delta + 3) ** 2 - problem.eta**2 - scale * pot.b)
    return 2 * scale * pot.a * (delta + 1) / ((delta + 1.5) * (2 * delta + 1))


def solve_state(problem: ReducedProblem, state: QuantumState, *,
                norm_mode: str = "gamma") -> AnsatzSolution:
    """Closed-form eigenpair for ``state``, normalized so int psi^2 r^(D-1) dr = 1.

    ``norm_mode`` is ``"gamma"`` (exact Gamma-function sum) or ``"quadrature"``
    (adaptive numerical integration).
    """
    if norm_mode not in ("gamma", "quadrature"):
        raise ValueError(f"unknown norm_mode {norm_mode!r}")
    if not math.isclose(problem.eta, state.eta, rel_tol=0, abs_tol=1e-15):
        raise ValueError(f"problem eta={problem.eta} does not match state eta={state.eta}")
    if not state.in_validated_range:
        log.warning("ell=0, D=2 has an attractive barrier; result not covered by the derivation")
    p = state.p
    delta = delta_restriction(problem)
    energy = quantized_energy(problem, p, delta)
    alpha = alpha_param(problem, p, delta, energy)
    rc = recursion_coeffs(problem, p, delta, alpha, energy)
    coeffs = polynomial_coeffs(rc, p)
    raw = AnsatzSolution(state, problem, delta, alpha, energy, tuple(map(float, coeffs)), norm_mode)
    if norm_mode == "gamma":
        norm = _gamma_norm(raw.family, coeffs, delta, alpha)
    else:
        norm = _quadrature_norm(raw)
    return AnsatzSolution(state, problem, delta, alpha, energy,
                          tuple(map(float, coeffs / math.sqrt(norm))), norm_mode)


def evaluate_wavefunction(sol: AnsatzSolution, r):
    """psi(r) = r^(-(D-1)/2) R(r)."""
    r = np.asarray(r, dtype=float)
    out = sol.reduced(r) * r ** (-(sol.state.dim - 1) / 2.0)
    return out.item() if out.ndim == 0 else out
