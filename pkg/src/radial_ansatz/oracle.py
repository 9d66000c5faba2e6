"""Numerical cross-checks that never use the ansatz.

* :func:`solve_numeric` discretizes the reduced radial equation with second
  order central differences and extracts one eigenvalue of the resulting
  symmetric tridiagonal matrix by Sturm-sequence bisection (LAPACK ``stebz``).
* :func:`normalize_integral` / :func:`overlap_integral` are composite
  Gauss-Legendre rules on the panels of a :class:`GridSpec`.
* :func:`ode_residual` plugs a closed-form solution back into the ODE.

Uniform grids discretize R(r) directly.  Logarithmic grids use x = ln r and
u = R / sqrt(r), which turns the equation into

    -u'' + [eta^2 + r^2 * 2mu(V - E)/hbar^2] u = 0,

a generalized problem with diagonal weight r^2 that is symmetrized to a
standard tridiagonal one.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, replace

import numpy as np
from scipy.integrate import cumulative_trapezoid
from scipy.linalg import eigh_tridiagonal

from .core import Family, ReducedProblem

log = logging.getLogger(__name__)

UNIFORM = "uniform"
LOGARITHMIC = "logarithmic"

#: default relative tolerance per family
DEFAULT_TOL = {Family.PSEUDOHARMONIC: 1e-6, Family.MIE: 1e-5}
DEFAULT_POINTS = {UNIFORM: 10000, LOGARITHMIC: 12000}
#: left edge of logarithmic boxes relative to r_max
LOG_RMIN_FACTOR = 1e-14
#: int kappa dr past the turning point before the box ends; |R|^2 ~ exp(-2*DECAY)
DECAY = 18.0
_SEARCH_POINTS = 1500


class OracleError(RuntimeError):
    pass


class NotConvergedError(OracleError):
    def __init__(self, message, result=None):
        super().__init__(message)
        self.result = result


class NodeMismatchError(OracleError):
    pass


class TailNotNegligibleError(OracleError):
    pass


@dataclass(frozen=True)
class GridSpec:
    """Radial grid.

    ``points`` counts interior unknowns.  Uniform grids put Dirichlet walls at
    ``r_min - h`` and ``r_max`` (so ``r_min = h`` puts the wall at the origin);
    logarithmic grids put them at ``r_min`` and ``r_max``.
    """

    r_min: float
    r_max: float
    points: int
    spacing: str = UNIFORM

    def __post_init__(self):
        if self.spacing not in (UNIFORM, LOGARITHMIC):
            raise ValueError(f"unknown spacing {self.spacing!r}")
        if not 0 < self.r_min < self.r_max:
            raise ValueError(f"need 0 < r_min < r_max, got {self.r_min}, {self.r_max}")
        if self.points < 100:
            raise ValueError(f"need at least 100 points, got {self.points}")
        if self.spacing == UNIFORM and self.r_min < self.step * (1 - 1e-9):
            raise ValueError("uniform grid wall r_min - h would be negative")

    @classmethod
    def uniform(cls, r_max: float, points: int = DEFAULT_POINTS[UNIFORM]) -> "GridSpec":
        return cls(r_max / (points + 1), r_max, points, UNIFORM)

    @classmethod
    def logarithmic(cls, r_max: float, points: int = DEFAULT_POINTS[LOGARITHMIC],
                    r_min: float | None = None) -> "GridSpec":
        return cls(r_min if r_min is not None else LOG_RMIN_FACTOR * r_max, r_max, points,
                   LOGARITHMIC)

    @property
    def step(self) -> float:
        """h in r (uniform) or in ln r (logarithmic)."""
        if self.spacing == UNIFORM:
            return (self.r_max - self.r_min) / self.points
        return math.log(self.r_max / self.r_min) / (self.points + 1)

    def edges(self) -> np.ndarray:
        """Walls plus interior points, i.e. the quadrature panel boundaries."""
        if self.spacing == UNIFORM:
            return np.linspace(self.r_min - self.step, self.r_max, self.points + 2)
        return np.geomspace(self.r_min, self.r_max, self.points + 2)

    def interior(self) -> np.ndarray:
        return self.edges()[1:-1]

    def refined(self) -> "GridSpec":
        """Same walls, half the step."""
        if self.spacing == UNIFORM:
            wall = self.r_min - self.step
            return GridSpec(wall + self.step / 2, self.r_max, 2 * self.points + 1, UNIFORM)
        return GridSpec(self.r_min, self.r_max, 2 * self.points + 1, LOGARITHMIC)


@dataclass(frozen=True)
class OracleResult:
    eigenvalue: float
    node_count: int
    grid: GridSpec
    refinement_estimate: float
    converged: bool
    coarse: float = math.nan
    fine: float = math.nan
    box_estimate: float = 0.0

    @property
    def relative_estimate(self) -> float:
        return self.refinement_estimate / max(abs(self.eigenvalue), 1e-300)


def default_spacing(problem: ReducedProblem) -> str:
    return LOGARITHMIC if problem.potential.family is Family.MIE else UNIFORM


def _eigenpair(problem: ReducedProblem, k: int, grid: GridSpec):
    """k-th eigenvalue (ascending) and eigenvector on a single grid."""
    pot, scale = problem.potential, problem.constants.scale
    r = grid.interior()
    h = grid.step
    if grid.spacing == UNIFORM:
        diag = 2 / h**2 + problem.barrier / r**2 + scale * (pot(r) - pot.c)
        off = np.full(len(r) - 1, -1 / h**2)
    else:
        diag = (2 / h**2 + problem.eta**2) / r**2 + scale * (pot(r) - pot.c)
        off = -1 / (h**2 * r[:-1] * r[1:])
    w, v = eigh_tridiagonal(diag, off, select="i", select_range=(k, k),
                            lapack_driver="stebz", tol=np.finfo(float).tiny)
    return w[0] / scale + pot.c, v[:, 0]


def count_sign_changes(vector: np.ndarray, floor: float = 1e-8) -> int:
    """Sign changes among entries above ``floor`` times the largest magnitude."""
    v = np.asarray(vector)
    v = v[np.abs(v) > floor * np.max(np.abs(v))]
    return int(np.count_nonzero(np.signbit(v[1:]) != np.signbit(v[:-1])))


def _length_scale(problem: ReducedProblem, k: int) -> float:
    pot, scale = problem.potential, problem.constants.scale
    if pot.family is Family.PSEUDOHARMONIC:
        return (scale * pot.a) ** -0.25 * math.sqrt(4 * k + 2 * problem.eta + 4)
    return (k + problem.eta + 1) ** 2 / (scale * abs(pot.a)) + math.sqrt(max(pot.b, 0) / abs(pot.a))


def outer_turning_point(problem: ReducedProblem, energy: float, r_hint: float) -> float | None:
    """Largest r with V_eff(r) = energy, or None if the state is not enclosed."""
    r = np.geomspace(r_hint * 1e-8, r_hint * 1e3, 20000)
    allowed = problem.effective_potential(r) < energy
    if not allowed.any() or allowed[-1]:
        return None
    i = np.flatnonzero(allowed)[-1]
    v0, v1 = problem.effective_potential(r[i:i + 2]) - energy
    return float(r[i] + (r[i + 1] - r[i]) * v0 / (v0 - v1))


def box_extent(problem: ReducedProblem, energy: float, r_turn: float) -> float:
    """Twice the turning point, or further if the WKB decay is not yet DECAY."""
    scale = problem.constants.scale
    r = r_turn * (1 + np.geomspace(1e-8, 1e3, 20000))
    kappa = np.sqrt(np.clip(scale * (problem.effective_potential(r) - energy), 0, None))
    decay = cumulative_trapezoid(kappa, r, initial=0)
    past = np.flatnonzero(decay >= DECAY)
    r_decay = r[past[0]] if len(past) else r[-1]
    return float(max(2 * r_turn, r_decay))


def place_box(problem: ReducedProblem, k: int, spacing: str | None = None,
              points: int | None = None) -> GridSpec:
    """Self-consistent box: solve coarsely, move r_max past the turning point, repeat."""
    spacing = spacing or default_spacing(problem)
    points = points or DEFAULT_POINTS[spacing]
    make = GridSpec.uniform if spacing == UNIFORM else GridSpec.logarithmic
    r_max = 3 * _length_scale(problem, k)
    for _ in range(60):
        energy, _ = _eigenpair(problem, k, make(r_max, _SEARCH_POINTS))
        r_turn = outer_turning_point(problem, energy, r_max)
        if r_turn is None or r_turn >= r_max:
            r_max *= 2
            continue
        target = box_extent(problem, energy, r_turn)
        if target <= r_max:
            return make(target, points)
        r_max = target
    raise OracleError(f"could not enclose state k={k}; last r_max={r_max}")


def solve_numeric(problem: ReducedProblem, k: int, grid: GridSpec | None = None, *,
                  tol: float | None = None, check: bool = True) -> OracleResult:
    """k-th bound state of the reduced equation by finite differences.

    The eigenvalue is the Richardson extrapolation (4 E_fine - E_coarse) / 3
    of the grid and its refinement; ``refinement_estimate`` is |E_fine - E_coarse|.
    On logarithmic grids the left wall is also moved 1000x closer to the
    origin and that shift's effect enters the estimate as ``box_estimate``.
    """
    if k < 0:
        raise ValueError(f"k must be >= 0, got {k}")
    tol = DEFAULT_TOL[problem.potential.family] if tol is None else tol
    grid = grid or place_box(problem, k)
    coarse, _ = _eigenpair(problem, k, grid)
    fine_grid = grid.refined()
    fine, vector = _eigenpair(problem, k, fine_grid)
    eigenvalue = (4 * fine - coarse) / 3
    estimate = abs(fine - coarse)
    box = 0.0
    if grid.spacing == LOGARITHMIC:
        extra = int(round(math.log(1e3) / grid.step))
        shifted = GridSpec(grid.r_min * 1e-3, grid.r_max, grid.points + extra, LOGARITHMIC)
        box = abs(_eigenpair(problem, k, shifted)[0] - coarse)
    nodes = count_sign_changes(vector)
    scale = max(abs(eigenvalue), 1e-300)
    converged = bool(np.isfinite(eigenvalue) and max(estimate, box) / scale <= tol)
    result = OracleResult(float(eigenvalue), nodes, grid, float(max(estimate, box)), converged,
                          float(coarse), float(fine), float(box))
    if check:
        if nodes != k:
            raise NodeMismatchError(f"eigenvector {k} has {nodes} sign changes")
        if not converged:
            raise NotConvergedError(
                f"state k={k}: relative change {result.relative_estimate:.3g} exceeds {tol:g}",
                result)
    return result


def _panels(grid: GridSpec, order: int):
    """Gauss-Legendre nodes r and weights w (including dr/dx on log grids)."""
    x, wx = np.polynomial.legendre.leggauss(order)
    edges = grid.edges()
    if grid.spacing == LOGARITHMIC:
        edges = np.log(edges)
    left, right = edges[:-1, None], edges[1:, None]
    half = 0.5 * (right - left)
    t = left + half * (x + 1)
    w = half * wx
    if grid.spacing == LOGARITHMIC:
        r = np.exp(t)
        return r.ravel(), (w * r).ravel()
    return t.ravel(), w.ravel()


def overlap_integral(f, g, dim: int, grid: GridSpec, order: int = 8) -> float:
    """int f(r) g(r) r^(dim-1) dr over the grid's span."""
    r, w = _panels(grid, order)
    density = np.asarray(f(r), dtype=float) * np.asarray(g(r), dtype=float) * r ** (dim - 1)
    peak = np.max(np.abs(density))
    edge = abs(float(f(grid.r_max)) * float(g(grid.r_max))) * grid.r_max ** (dim - 1)
    if not np.isfinite(peak) or edge > 1e-14 * peak:
        raise TailNotNegligibleError(
            f"integrand at r_max={grid.r_max:g} is {edge:.3g}, peak {peak:.3g}")
    return float(np.dot(w, density))


def normalize_integral(f, dim: int, grid: GridSpec, order: int = 8) -> float:
    """int f(r)^2 r^(dim-1) dr over the grid's span."""
    return overlap_integral(f, f, dim, grid, order)


def quadrature_grid(f, dim: int, r_scale: float, points: int = 2000) -> GridSpec:
    """Logarithmic grid whose r_max lies past the decay of f^2 r^(dim-1)."""
    r_max = 4.0 * r_scale
    for _ in range(200):
        probe = np.geomspace(1e-3 * r_scale, r_max, 2000)
        density = np.abs(np.asarray(f(probe), dtype=float)) ** 2 * probe ** (dim - 1)
        if density[-1] <= 1e-16 * np.max(density):
            return GridSpec.logarithmic(r_max, points, r_min=1e-12 * r_scale)
        r_max *= 1.25
    raise TailNotNegligibleError(f"f does not decay within r={r_max:g}")


def residual_samples(r_peak: float, count: int = 200) -> np.ndarray:
    return np.linspace(0.05 * r_peak, 5 * r_peak, count)


def ode_residual(sol, problem: ReducedProblem, sample_points) -> float:
    """max |R'' + (2mu(E - V)/hbar^2 - (eta^2 - 1/4)/r^2) R| / (|2mu E R/hbar^2| + |R''|)."""
    r = np.asarray(sample_points, dtype=float)
    if np.any(r <= 0):
        raise ValueError("sample points must be positive")
    scale = problem.constants.scale
    R, d2R = sol.reduced(r, second_derivative=True)
    k = scale * (sol.energy - problem.potential(r)) - problem.barrier / r**2
    local = np.abs(scale * sol.energy * R) + np.abs(d2R)
    return float(np.max(np.abs(d2R + k * R) / local))


def perturbed(sol, **changes):
    """Copy of a solution with fields replaced (for sensitivity checks)."""
    return replace(sol, **changes)
