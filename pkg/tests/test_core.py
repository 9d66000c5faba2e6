import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from radial_ansatz.core import (Family, Origin, PhysicalConstants, PotentialSpec, QuantumState,
                                ReducedProblem, eta, make_anharmonic, make_coulomb,
                                make_harmonic_inverse_square, make_kratzer_fues,
                                make_modified_kratzer, make_pseudoharmonic, make_raw,
                                wavefunction_from_reduced)

positive = st.floats(0.05, 20.0, allow_nan=False)


@pytest.mark.parametrize("ell, dim, expected", [(0, 3, 0.5), (1, 3, 1.5), (2, 6, 4.0), (0, 2, 0.0)])
def test_eta(ell, dim, expected):
    assert eta(ell, dim) == expected


def test_eta_rejects_low_dimension():
    with pytest.raises(ValueError):
        eta(0, 1)


@given(st.integers(0, 50), st.integers(2, 50))
def test_interdimensional_degeneracy(ell, dim):
    assert eta(ell, dim + 2) == eta(ell + 1, dim)


def test_quantum_state_validation():
    assert QuantumState(2, 1, 3).eta == 1.5
    for bad in [(-1, 0, 3), (0, -1, 3), (0, 0, 1)]:
        with pytest.raises(ValueError):
            QuantumState(*bad)
    with pytest.raises(TypeError):
        QuantumState(0.5, 0, 3)
    assert not QuantumState(0, 0, 2).in_validated_range
    assert QuantumState(0, 1, 2).in_validated_range


def test_constants_must_be_positive():
    with pytest.raises(ValueError):
        PhysicalConstants(hbar=0)
    with pytest.raises(ValueError):
        PhysicalConstants(mu=-1)
    assert PhysicalConstants(hbar=2, mu=2).scale == 1.0


@pytest.mark.parametrize("De, re, abc", [(1, 1, (1, 1, -2)), (4, 2, (1, 16, -8))])
def test_make_pseudoharmonic(De, re, abc):
    pot = make_pseudoharmonic(De, re)
    assert (pot.a, pot.b, pot.c) == abc
    assert pot.family is Family.PSEUDOHARMONIC


@pytest.mark.parametrize("De, re, abc", [(1, 1, (-2, 1, 1)), (3, 2, (-12, 12, 3))])
def test_make_modified_kratzer(De, re, abc):
    pot = make_modified_kratzer(De, re)
    assert (pot.a, pot.b, pot.c) == abc
    assert pot.family is Family.MIE


def test_make_kratzer_fues():
    pot = make_kratzer_fues(1, 1)
    assert (pot.a, pot.b, pot.c) == (-2, 1, 0)
    mod = make_modified_kratzer(1, 1)
    assert (pot.a, pot.b) == (mod.a, mod.b)
    assert mod.c - pot.c == 1


def test_kratzer_expansion_matches_reduced_form():
    # independent expansion: De((r-re)/r)^2 = De - 2 De re / r + De re^2 / r^2
    De, re = 1.7, 0.8
    r = np.linspace(0.2, 9, 50)
    expanded = De - 2 * De * re / r + De * re**2 / r**2
    assert np.allclose(make_modified_kratzer(De, re)(r), expanded, rtol=1e-14)


@pytest.mark.parametrize("A, a", [(1, -1), (2, -2)])
def test_make_coulomb(A, a):
    pot = make_coulomb(A)
    assert (pot.a, pot.b, pot.c) == (a, 0, 0)


def test_harmonic_and_anharmonic():
    pot = make_harmonic_inverse_square(1, 0, PhysicalConstants(mu=1))
    assert (pot.a, pot.b, pot.c) == (0.5, 0, 0)
    pot = make_anharmonic(1)
    assert (pot.a, pot.b, pot.c) == (1, 0, 0)


@pytest.mark.parametrize("factory, args", [
    (make_pseudoharmonic, (1, 0)),
    (make_modified_kratzer, (0, 1)),
    (make_kratzer_fues, (1, -1)),
    (make_coulomb, (-1,)),
    (make_harmonic_inverse_square, (1, -1)),
    (make_harmonic_inverse_square, (0, 1)),
    (make_anharmonic, (0,)),
])
def test_constructor_preconditions(factory, args):
    with pytest.raises(ValueError):
        factory(*args)


def test_raw_sign_checks():
    make_raw(Family.PSEUDOHARMONIC, 1, 0.3, -1)
    make_raw("mie", -1, 0.0, 2)
    with pytest.raises(ValueError):
        make_raw(Family.PSEUDOHARMONIC, -1, 0, 0)
    with pytest.raises(ValueError):
        make_raw(Family.MIE, 1, 0, 0)
    with pytest.raises(ValueError):
        make_raw(Family.MIE, -1, -0.5, 0)


@settings(max_examples=40)
@given(positive, positive, positive, positive, positive)
def test_molecular_and_reduced_forms_agree(De, re, omega, B, A):
    r = np.random.default_rng(0).uniform(0.1, 10, 100)
    pots = [make_pseudoharmonic(De, re), make_kratzer_fues(De, re), make_modified_kratzer(De, re),
            make_harmonic_inverse_square(omega, De), make_anharmonic(B), make_coulomb(A)]
    for pot in pots:
        assert pot.origin is not Origin.RAW
        mol, red = pot.molecular(r), pot(r)
        assert np.allclose(red, mol, rtol=1e-12, atol=1e-12 * np.max(np.abs(mol)))


@given(positive, positive)
def test_kratzer_shift_is_exact(De, re):
    assert make_modified_kratzer(De, re).c - make_kratzer_fues(De, re).c == De


def test_barrier_vanishes_for_s_states_in_3d():
    problem = ReducedProblem.for_state(make_coulomb(1), QuantumState(0, 0, 3))
    assert problem.barrier == 0.0


def test_reduced_problem_requires_nonnegative_eta():
    with pytest.raises(ValueError):
        ReducedProblem(-0.5, make_coulomb(1))


@pytest.mark.parametrize("R, r, dim, expected", [(2, 1, 3, 2), (4, 2, 3, 2), (1, 4, 2, 0.5)])
def test_wavefunction_from_reduced(R, r, dim, expected):
    assert math.isclose(wavefunction_from_reduced(R, r, dim), expected)


def test_wavefunction_from_reduced_rejects_origin():
    with pytest.raises(ValueError):
        wavefunction_from_reduced(1, 0, 3)


def test_potential_spec_is_immutable():
    pot = make_coulomb(1)
    with pytest.raises(AttributeError):
        pot.a = 3
    assert isinstance(pot, PotentialSpec)
