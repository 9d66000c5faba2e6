"""Potentials, quantum numbers and the reduction to the effective radial equation.

Every potential handled by the package is stored in the reduced form

    V(r) = a * r**k + b / r**2 + c

with ``k = 2`` for the pseudoharmonic family and ``k = -1`` for the Mie
family.  The molecular constructors keep their original parameters so the
original closed form can be evaluated and compared against the reduced one.

Units are whatever the caller uses consistently; hbar = mu = 1 by default.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np


class Family(enum.Enum):
    PSEUDOHARMONIC = "pseudoharmonic"
    MIE = "mie"

    @property
    def power(self) -> int:
        """Exponent of the ``a`` term: r**2 or 1/r."""
        return 2 if self is Family.PSEUDOHARMONIC else -1


class Origin(enum.Enum):
    RAW = "raw"
    PSEUDOHARMONIC = "pseudoharmonic"
    HARMONIC_INVERSE_SQUARE = "harmonic-inverse-square"
    ANHARMONIC = "anharmonic"
    KRATZER_FUES = "kratzer"
    MODIFIED_KRATZER = "modified-kratzer"
    COULOMB = "coulomb"


@dataclass(frozen=True)
class PhysicalConstants:
    hbar: float = 1.0
    mu: float = 1.0

    def __post_init__(self):
        if not (self.hbar > 0 and self.mu > 0):
            raise ValueError(f"hbar and mu must be positive, got hbar={self.hbar}, mu={self.mu}")

    @property
    def scale(self) -> float:
        """2*mu/hbar**2, the factor turning energies into the ODE's units."""
        return 2.0 * self.mu / self.hbar**2


@dataclass(frozen=True)
class QuantumState:
    """Bound-state label: polynomial degree ``p`` (radial nodes), ``ell`` and ``dim``."""

    p: int
    ell: int
    dim: int

    def __post_init__(self):
        for name in ("p", "ell", "dim"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
                raise TypeError(f"{name} must be an integer, got {value!r}")
        if self.p < 0 or self.ell < 0:
            raise ValueError(f"p and ell must be non-negative, got p={self.p}, ell={self.ell}")
        if self.dim < 2:
            raise ValueError(f"dim must be >= 2, got {self.dim}")

    @property
    def eta(self) -> float:
        return eta(self.ell, self.dim)

    @property
    def in_validated_range(self) -> bool:
        # ell=0, D=2 has an attractive -1/(4 r^2) barrier; not covered by the derivation
        return not (self.dim == 2 and self.ell == 0)


@dataclass(frozen=True)
class PotentialSpec:
    family: Family
    a: float
    b: float
    c: float
    origin: Origin = Origin.RAW
    params: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if not all(math.isfinite(v) for v in (self.a, self.b, self.c)):
            raise ValueError("potential coefficients must be finite")
        if self.family is Family.PSEUDOHARMONIC and not self.a > 0:
            raise ValueError(f"pseudoharmonic family needs a > 0 (confining), got a={self.a}")
        if self.family is Family.MIE:
            if not self.a < 0:
                raise ValueError(f"Mie family needs a < 0 (attractive), got a={self.a}")
            if self.b < 0:
                raise ValueError(f"Mie family needs b >= 0, got b={self.b}")

    @property
    def label(self) -> str:
        return self.origin.value

    def __call__(self, r):
        """Reduced form a*r**k + b/r**2 + c."""
        r = np.asarray(r, dtype=float)
        return self.a * r ** float(self.family.power) + self.b / r**2 + self.c

    def molecular(self, r):
        """The potential in its original molecular form (falls back to the reduced form)."""
        r = np.asarray(r, dtype=float)
        p = self.params
        if self.origin is Origin.PSEUDOHARMONIC:
            return p["De"] * (r / p["re"] - p["re"] / r) ** 2
        if self.origin is Origin.KRATZER_FUES:
            return -p["De"] * (2 * p["re"] / r - p["re"] ** 2 / r**2)
        if self.origin is Origin.MODIFIED_KRATZER:
            return p["De"] * ((r - p["re"]) / r) ** 2
        if self.origin is Origin.HARMONIC_INVERSE_SQUARE:
            return 0.5 * p["mu"] * p["omega"] ** 2 * r**2 + p["g"] / r**2
        if self.origin is Origin.ANHARMONIC:
            return p["B"] ** 2 * r**2
        if self.origin is Origin.COULOMB:
            return -p["A"] / r
        return self(r)


@dataclass(frozen=True)
class ReducedProblem:
    """Effective 1D problem R'' + [2mu(E - V)/hbar^2 - (eta^2 - 1/4)/r^2] R = 0."""

    eta: float
    potential: PotentialSpec
    constants: PhysicalConstants = PhysicalConstants()

    def __post_init__(self):
        if not self.eta >= 0:
            raise ValueError(f"eta must be >= 0, got {self.eta}")

    @classmethod
    def for_state(cls, potential: PotentialSpec, state: QuantumState,
                  constants: PhysicalConstants | None = None) -> "ReducedProblem":
        return cls(state.eta, potential, constants or PhysicalConstants())

    @property
    def barrier(self) -> float:
        """Coefficient of the 1/r**2 centrifugal-like term."""
        return self.eta**2 - 0.25

    def effective_potential(self, r):
        """V(r) plus the barrier, in energy units."""
        r = np.asarray(r, dtype=float)
        return self.potential(r) + self.barrier / (self.constants.scale * r**2)


def eta(ell: int, dim: int) -> float:
    """ell + (dim - 2)/2."""
    if dim < 2:
        raise ValueError(f"dim must be >= 2, got {dim}")
    if ell < 0:
        raise ValueError(f"ell must be >= 0, got {ell}")
    return ell + 0.5 * (dim - 2)


def _positive(**kw):
    for name, value in kw.items():
        if not (isinstance(value, (int, float, np.floating, np.integer)) and value > 0
                and math.isfinite(value)):
            raise ValueError(f"{name} must be positive and finite, got {value!r}")


def make_raw(family: Family | str, a: float, b: float, c: float) -> PotentialSpec:
    return PotentialSpec(Family(family), float(a), float(b), float(c))


def make_pseudoharmonic(De: float, re: float) -> PotentialSpec:
    """De*(r/re - re/r)**2  ->  a = De/re^2, b = De*re^2, c = -2De."""
    _positive(De=De, re=re)
    return PotentialSpec(Family.PSEUDOHARMONIC, De / re**2, De * re**2, -2.0 * De,
                         Origin.PSEUDOHARMONIC, {"De": De, "re": re})


def make_harmonic_inverse_square(omega: float, g: float,
                                 constants: PhysicalConstants | None = None) -> PotentialSpec:
    """mu*omega^2 r^2/2 + g/r^2."""
    constants = constants or PhysicalConstants()
    _positive(omega=omega)
    if not g >= 0:
        raise ValueError(f"g must be >= 0, got {g}")
    return PotentialSpec(Family.PSEUDOHARMONIC, 0.5 * constants.mu * omega**2, float(g), 0.0,
                         Origin.HARMONIC_INVERSE_SQUARE,
                         {"omega": omega, "g": g, "mu": constants.mu})


def make_anharmonic(B: float) -> PotentialSpec:
    """B^2 r^2."""
    _positive(B=B)
    return PotentialSpec(Family.PSEUDOHARMONIC, B**2, 0.0, 0.0, Origin.ANHARMONIC, {"B": B})


def make_kratzer_fues(De: float, re: float) -> PotentialSpec:
    """-De*(2 re/r - re^2/r^2)  ->  a = -2 De re, b = De re^2, c = 0."""
    _positive(De=De, re=re)
    return PotentialSpec(Family.MIE, -2.0 * De * re, De * re**2, 0.0,
                         Origin.KRATZER_FUES, {"De": De, "re": re})


def make_modified_kratzer(De: float, re: float) -> PotentialSpec:
    """De*((r - re)/r)**2: the Kratzer-Fues potential shifted up by De."""
    base = make_kratzer_fues(De, re)
    return PotentialSpec(Family.MIE, base.a, base.b, base.c + De,
                         Origin.MODIFIED_KRATZER, {"De": De, "re": re})


def make_coulomb(A: float) -> PotentialSpec:
    """-A/r."""
    _positive(A=A)
    return PotentialSpec(Family.MIE, -float(A), 0.0, 0.0, Origin.COULOMB, {"A": A})


def wavefunction_from_reduced(R_value, r, dim: int):
    """psi(r) = r**(-(dim-1)/2) * R(r)."""
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0):
        raise ValueError("r must be strictly positive")
    out = np.asarray(R_value, dtype=float) * r ** (-(dim - 1) / 2.0)
    return out.item() if out.ndim == 0 else out
