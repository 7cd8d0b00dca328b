#!/usr/bin/env python3
"""
TorsionLab - Torsion complex tests
"""

import numpy as np
import pytest

from torsionlab.complexes import GradedComplex
from torsionlab.det_line import betti_numbers, refined_torsion
from torsionlab.errors import ShapeError, SpectralGapError
from torsionlab.torsion_complex import (
    cappell_miller,
    check_identities,
    commutation_residual,
    cut_levels,
    default_theta,
    eta_Bev,
    graded_det_Bev,
    odd_signature,
    pm_split,
    quarter_turns,
    refined_T,
    refined_T_prime,
    refined_torsion_element,
    require_well_formed,
    rho_invariant,
    sharp_residual,
    spectral_split,
    validate,
    xi,
)
from torsionlab.workbench import FixtureSpec, gen_complex


def test_validate_toy(toy):
    """Test the toy complex satisfies both assumptions"""
    report = validate(toy)
    assert report.assumption1
    assert report.assumption2
    assert report.well_formed
    assert report.smallest_singular_value == pytest.approx(2.0)


def test_validate_detects_cohomology(cohomology_complex):
    """Test a complex with cohomology fails the acyclicity assumption"""
    report = validate(cohomology_complex)
    assert not report.assumption1
    assert report.chain_residual <= 1e-10


def test_require_well_formed_rejects_non_palindromic():
    """Test non-palindromic dimensions are a shape error"""
    complex_ = GradedComplex.from_blocks(1, (1, 2), [np.zeros((2, 1))], [[[1.0], [0.0]], [[1.0, 0.0]]])
    with pytest.raises(ShapeError):
        require_well_formed(complex_)


def test_odd_signature_structure(random_complex):
    """Test B^2 is the flat Laplacian and commutes with partial and Gamma"""
    osig = odd_signature(random_complex)
    assert sharp_residual(osig) <= 1e-10
    assert commutation_residual(osig) <= 1e-10
    split = pm_split(osig)
    assert split.plus_basis.shape[1] + split.minus_basis.shape[1] == osig.even_dim


def test_toy_quantities(toy):
    """Test det_gr, xi, eta and the refined torsions on the toy complex"""
    osig = odd_signature(toy)
    assert default_theta(osig) == pytest.approx(-np.pi / 2)
    assert graded_det_Bev(osig) == pytest.approx(2.0)
    assert xi(osig) == pytest.approx(np.log(2.0))
    assert eta_Bev(osig).eta == 0.5
    assert refined_T(osig, None, 0.5, 1) == pytest.approx(2.0j)
    assert refined_T_prime(osig, None, 1.0, 1) == pytest.approx(2.0j)
    assert rho_invariant(0.5, 0.25, 2) == 0.0


def test_toy_cappell_miller(toy):
    """Test tau = a^2 at every admissible cut level"""
    assert cut_levels(toy) == [0.0, 9.0]
    for level in cut_levels(toy):
        assert cappell_miller(toy, level).value == pytest.approx(4.0)


def test_toy_identities(toy):
    """Test the comparison identities hold on the toy complex with zero phase offset"""
    report = check_identities(toy)
    assert report.passed
    assert not report.skipped
    assert report.get("det-gr-xi").nu == 1
    assert report.get("cm-refined").nu == 2
    assert all(c.offset == 0 for c in report.checks if c.offset is not None)
    assert report.get("cm-xi-modulus").lhs == pytest.approx(4.0)


def test_quarter_turns():
    """Test the quarter-turn integer and its residual"""
    assert quarter_turns(1j, 1.0) == (1, 0.0)
    nu, residual = quarter_turns(-2.0, 1.0)
    assert nu == 2
    assert residual == pytest.approx(0.0)
    nu, residual = quarter_turns(np.exp(-0.2j * np.pi), 1.0)
    assert nu == 0
    assert residual == pytest.approx(0.4)


def test_identities_on_random_complexes(random_complex):
    """Test the comparison identities with zero offsets on random acyclic complexes"""
    report = check_identities(random_complex)
    assert not report.skipped
    assert report.passed
    assert all(c.offset == 0 for c in report.checks if c.offset is not None)


def test_identities_on_hermitian_complexes(hermitian_complex):
    """Test the comparison identities on hermitian model complexes and their perturbations"""
    report = check_identities(hermitian_complex)
    assert not report.skipped
    assert report.passed


def test_identities_skip_cohomology(cohomology_complex):
    """Test identities are skipped with a reason when the complex is not acyclic"""
    report = check_identities(cohomology_complex)
    assert report.skipped
    assert not report.checks


@pytest.mark.parametrize("d", [3, 5])
def test_hermitian_spectrum_is_real(d):
    """Test unperturbed hermitian models have real B^ev spectrum and no imaginary-axis correction"""
    osig = odd_signature(gen_complex(FixtureSpec(kind="hermitian-model-complex", d=d, seed=11)))
    values = osig.ev_spectrum.values
    assert np.max(np.abs(values.imag)) <= 1e-8 * np.max(np.abs(values))
    result = eta_Bev(osig)
    assert result.m_plus == result.m_minus == 0
    assert abs(xi(osig).imag) <= 1e-8 * max(abs(xi(osig)), 1.0)


def test_lambda_split(random_complex):
    """Test rho_Gamma factors through every admissible cut level"""
    rho = refined_torsion(random_complex).coeff
    for level in cut_levels(random_complex):
        parts = spectral_split(random_complex, level)
        assert parts.high_acyclic
        assert parts.commutation_residual <= 1e-8
        element = refined_torsion_element(random_complex, level, eta_tr=0.0)
        assert abs(element.coeff - rho) <= 1e-8 * abs(rho)


def test_cappell_miller_is_level_independent(random_complex):
    """Test tau_Gamma does not depend on the cut level"""
    values = [cappell_miller(random_complex, level).value for level in cut_levels(random_complex)]
    for value in values[1:]:
        assert abs(value - values[0]) <= 1e-8 * abs(values[0])


def test_refined_element_carries_eta_phase(random_complex):
    """Test the trivial-connection eta enters as e^{i pi rank eta_tr}"""
    base = refined_torsion_element(random_complex).coeff
    shifted = refined_torsion_element(random_complex, eta_tr=0.5, rank=2).coeff
    assert shifted == pytest.approx(-base)


def test_spectral_split_rejects_bad_levels(toy):
    """Test negative levels and levels on the spectrum are rejected"""
    with pytest.raises(SpectralGapError):
        spectral_split(toy, -1.0)
    with pytest.raises(SpectralGapError):
        spectral_split(toy, 4.0)


def test_spectral_split_requires_commuting_laplacian():
    """Test a differential with nonzero square is refused before any projection is built"""
    one = [[1.0]]
    complex_ = GradedComplex.from_blocks(3, (1, 1, 1, 1), [one, one, one], [one] * 4)
    assert commutation_residual(odd_signature(complex_)) > 0.1
    with pytest.raises(SpectralGapError, match="commute with B"):
        spectral_split(complex_, 0.0)
    with pytest.raises(SpectralGapError):
        cappell_miller(complex_)


def test_restriction_drops_roundoff_blocks():
    """Test differential blocks at roundoff level vanish after restriction and in the chain residual"""
    one = [[1.0]]
    complex_ = GradedComplex.from_blocks(3, (1, 1, 1, 1), [one, [[3.7e-17]], one], [one] * 4)
    assert complex_.chain_residual() == 0.0
    restricted = complex_.restricted([np.eye(1)] * 4)
    assert not np.any(restricted.partial[1])
    assert betti_numbers(restricted) == (0, 0, 0, 0)


def test_spectral_split_parts_are_acyclic(random_complex):
    """Test both parts of every cut are acyclic complexes with a certified even split"""
    for level in cut_levels(random_complex):
        parts = spectral_split(random_complex, level)
        assert parts.high_acyclic
        for part in (parts.low, parts.high):
            assert betti_numbers(part) == (0,) * (part.d + 1)
            assert part.chain_residual() <= 1e-10
            osig = odd_signature(part)
            split = pm_split(osig)
            assert split.plus_basis.shape[1] + split.minus_basis.shape[1] == osig.even_dim


def test_zero_complex_cappell_miller():
    """Test tau_Gamma = 1 on the zero complex"""
    zero = GradedComplex.zero(3)
    assert validate(zero).assumption1
    assert cappell_miller(zero).value == 1.0


def test_vanishing_differential_fails_acyclicity():
    """Test partial = 0 on nonzero spaces fails both assumptions and gives B = 0"""
    zero = [[0.0]]
    complex_ = GradedComplex.from_blocks(3, (1, 1, 1, 1), [zero] * 3, [[[1.0]]] * 4)
    report = validate(complex_)
    assert not report.assumption1
    assert not report.assumption2
    assert report.smallest_singular_value == 0.0
    assert not np.any(odd_signature(complex_).B)
    assert betti_numbers(complex_) == (1, 1, 1, 1)


@pytest.mark.parametrize("t", [0.5, 3.0, 10.0])
def test_xi_shifts_by_log_of_scale(toy, t):
    """Test scaling the toy differential by t shifts xi by log t"""
    base = xi(odd_signature(toy))
    assert xi(odd_signature(toy.scaled(t))) == pytest.approx(base + np.log(t))
