import itertools
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from radial_ansatz import spectra
from radial_ansatz.core import (Family, PhysicalConstants, make_anharmonic, make_coulomb,
                                make_harmonic_inverse_square, make_kratzer_fues,
                                make_modified_kratzer, make_pseudoharmonic, make_raw)
from radial_ansatz.spectra import SpectrumRequest, build_table

positive = st.floats(0.1, 10.0)


def test_energy_examples():
    assert spectra.energy_coulomb(1) == -0.5
    assert spectra.energy_coulomb(1, n=1) == -0.125
    assert spectra.energy_harmonic_inverse_square(1, 0) == 1.5
    assert math.isclose(spectra.energy_pseudoharmonic(1, 1), 1.5355339059327378, rel_tol=1e-14)
    assert math.isclose(spectra.energy_pseudoharmonic(1, 1, n=1), 4.363961030678928,
                        rel_tol=1e-14)
    assert math.isclose(spectra.energy_anharmonic(1, n=1, ell=2), 7.7781745930520225,
                        rel_tol=1e-14)
    # eta = 1 (D = 2, l = 1 or D = 4, l = 0): 1 - 8 / (1 + sqrt(12))^2
    for ell, dim in [(1, 2), (0, 4)]:
        assert math.isclose(spectra.energy_modified_kratzer(1, 1, None, 0, ell, dim),
                            0.5985588912578849, rel_tol=1e-14)
    # 3D textbook form: De - 2 mu De^2 re^2 / (hbar^2 (n + 1/2 + sqrt((l+1/2)^2 + 2 mu De re^2))^2)
    assert math.isclose(spectra.energy_modified_kratzer(1, 1, ell=1),
                        1 - 2 / (0.5 + math.sqrt(4.25)) ** 2, rel_tol=1e-14)


def test_oscillator_formulas_match_textbook():
    # 3D isotropic oscillator: E = hbar omega (2n + l + 3/2)
    k = PhysicalConstants(hbar=1.3, mu=0.7)
    for n, ell in itertools.product(range(4), range(4)):
        textbook = 1.3 * 2.0 * (2 * n + ell + 1.5)
        assert math.isclose(spectra.energy_harmonic_inverse_square(2.0, 0, k, n, ell), textbook,
                            rel_tol=1e-14)
        # a r^2 with a = mu omega^2 / 2 = B^2
        B = math.sqrt(0.7 * 4 / 2)
        assert math.isclose(spectra.energy_anharmonic(B, k, n, ell), textbook, rel_tol=1e-14)


def test_coulomb_depends_on_n_plus_l():
    for total in range(5):
        values = {spectra.energy_coulomb(1, None, n, total - n) for n in range(total + 1)}
        assert max(values) - min(values) < 1e-15


@settings(max_examples=50)
@given(positive, positive, st.integers(0, 5), st.integers(0, 5), st.integers(2, 7))
def test_interdimensional_degeneracy(De, re, n, ell, dim):
    for f in (spectra.energy_pseudoharmonic, spectra.energy_modified_kratzer):
        assert math.isclose(f(De, re, None, n, ell, dim + 2), f(De, re, None, n, ell + 1, dim),
                            rel_tol=1e-13)


@settings(max_examples=50)
@given(positive, positive, st.integers(0, 5), st.integers(2, 6))
def test_energies_increase_with_n_and_stay_below_threshold(De, re, ell, dim):
    for f in (spectra.energy_pseudoharmonic, spectra.energy_modified_kratzer):
        levels = [f(De, re, None, n, ell, dim) for n in range(8)]
        assert all(b > a for a, b in zip(levels, levels[1:]))
    kratzer = [spectra.energy_modified_kratzer(De, re, None, n, ell, dim) for n in range(8)]
    assert max(kratzer) < De


@settings(max_examples=50)
@given(positive, positive, st.integers(0, 4), st.integers(0, 4), st.integers(2, 6))
def test_kratzer_forms_differ_by_de(De, re, n, ell, dim):
    diff = (spectra.energy_modified_kratzer(De, re, None, n, ell, dim)
            - spectra.energy_kratzer_fues(De, re, None, n, ell, dim))
    assert math.isclose(diff, De, rel_tol=1e-12)


def test_quantum_number_validation():
    with pytest.raises(ValueError):
        spectra.energy_coulomb(1, None, -1)
    with pytest.raises(ValueError):
        spectra.energy_pseudoharmonic(1, 1, None, 0, 0, 1)
    with pytest.raises(ValueError):
        spectra.energy_harmonic_inverse_square(1, -1)


def test_printed_energy_dispatch():
    k = PhysicalConstants()
    assert spectra.printed_energy(make_raw(Family.MIE, -1, 0, 0), k, 0, 0, 3) is None
    harmonic = make_harmonic_inverse_square(1, 0, k)
    assert spectra.printed_energy(harmonic, k, 0, 0, 3) == 1.5
    assert spectra.printed_energy(harmonic, k, 0, 0, 4) is None
    for pot in (make_pseudoharmonic(1, 1), make_kratzer_fues(1, 1), make_modified_kratzer(1, 1),
                make_coulomb(1), make_anharmonic(1)):
        for n, ell, dim in itertools.product(range(3), range(3), (2, 3, 5)):
            printed = spectra.printed_energy(pot, k, n, ell, dim)
            generic = spectra.generic_energy(pot, k, n, ell, dim)
            assert math.isclose(printed, generic, rel_tol=1e-12)


def test_request_validation():
    with pytest.raises(ValueError):
        SpectrumRequest(make_coulomb(1), -1, 0)
    with pytest.raises(ValueError):
        SpectrumRequest(make_coulomb(1), 0, 0, dims=(1,))
    with pytest.raises(ValueError):
        SpectrumRequest(make_coulomb(1), 0, 0, dims=())
    harmonic = make_harmonic_inverse_square(1, 0, PhysicalConstants(mu=2))
    with pytest.raises(ValueError):
        SpectrumRequest(harmonic, 1, 1, constants=PhysicalConstants(mu=1))


def test_state_order():
    req = SpectrumRequest(make_coulomb(1), 1, 1, dims=(4, 3))
    keys = [(s.dim, s.ell, s.p) for s in req.states()]
    assert keys == sorted(keys)
    assert len(keys) == 8


def test_table_without_verification():
    table = build_table(SpectrumRequest(make_modified_kratzer(1, 1), 2, 1, label="toy"))
    assert len(table.rows) == 6 and table.all_passed and not table.verified
    row = table.rows[3]
    assert (row.molecule, row.dim, row.n, row.ell) == ("toy", 3, 0, 1)
    assert math.isclose(row.e_analytic, 0.6951941016011038, rel_tol=1e-14)
    assert row.e_oracle is None and row.residual is None


def test_table_with_verification():
    table = build_table(SpectrumRequest(make_pseudoharmonic(1, 1), 1, 1, dims=(3, 4)), True)
    assert table.verified and table.all_passed
    for row in table.rows:
        assert row.rel_err <= 1e-6
        assert row.norm_check <= 1e-8
        assert row.residual <= 1e-8
        assert row.status == "ok"


def test_raw_potential_uses_generic_reference():
    table = build_table(SpectrumRequest(make_raw(Family.MIE, -1, 0.2, 0), 1, 0), True)
    row = table.rows[0]
    assert row.e_analytic is None
    assert row.rel_err == abs(row.e_oracle - row.e_generic) / abs(row.e_generic)
    assert table.all_passed


def test_failed_rows_are_marked_not_raised():
    table = build_table(SpectrumRequest(make_coulomb(1), 0, 1, dims=(2,)), True)
    s_row, p_row = table.rows
    assert not s_row.passed
    assert "outside validated range" in s_row.status
    assert "oracle not converged" in s_row.status
    assert p_row.passed
    assert table.failures() == [s_row]


def test_tight_oracle_tolerance_fails_rows():
    table = build_table(SpectrumRequest(make_coulomb(1), 0, 0), True, oracle_tol=1e-15)
    assert not table.all_passed


def test_workers_give_identical_tables():
    req = SpectrumRequest(make_modified_kratzer(1, 1), 2, 1, dims=(3, 4))
    assert build_table(req, True).rows == build_table(req, True, workers=4).rows
