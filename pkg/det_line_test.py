#!/usr/bin/env python3
"""
TorsionLab - Determinant line tests
"""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from torsionlab.complexes import GradedComplex
from torsionlab.det_line import (
    SplitChoice,
    betti_numbers,
    c_gamma,
    cohomology_frame,
    default_split,
    fuse,
    inverse,
    is_acyclic,
    line,
    phi,
    random_split,
    refined_torsion,
    reorder,
    reorder_sign,
    sign_N,
    sign_R,
    validate_split,
)
from torsionlab.errors import ChiralityError, SplitChoiceError, TagMismatchError
from torsionlab.linalg import random_invertible


def block_permutation_sign(dims, order):
    offsets = np.concatenate([[0], np.cumsum(dims)]).astype(int)
    columns = np.concatenate([np.arange(offsets[i], offsets[i + 1]) for i in order]).astype(int)
    if columns.size == 0:
        return 1
    return int(round(np.linalg.det(np.eye(columns.size)[:, columns])))


@st.composite
def blocks_and_order(draw):
    dims = draw(st.lists(st.integers(0, 3), min_size=1, max_size=5))
    order = draw(st.permutations(range(len(dims))))
    return dims, order


@settings(max_examples=100, deadline=None)
@given(blocks_and_order())
def test_reorder_sign_matches_permutation_matrix(case):
    """Test the block reorder sign against the determinant of the permutation matrix"""
    dims, order = case
    assert reorder_sign(dims, order) == block_permutation_sign(dims, order)


def test_fuse_and_reorder():
    """Test fusion multiplies coordinates and reordering applies the Koszul sign"""
    v = line("V", 1, 3.0)
    w = line("W", 1, 5.0)
    fused = fuse(v, w)
    assert fused.coeff == 15.0
    assert fused.tag.labels == ("V", "W")
    swapped = reorder(fused, ["W", "V"])
    assert swapped.coeff == -15.0
    assert swapped.tag.labels == ("W", "V")
    even = reorder(fuse(line("V", 2, 3.0), w), ["W", "V"])
    assert even.coeff == 15.0


def test_fuse_rejects_mismatched_tags():
    """Test overlapping summands and mixed dual lines are rejected"""
    v = line("V", 1, 2.0)
    with pytest.raises(TagMismatchError):
        fuse(v, line("V", 1))
    with pytest.raises(TagMismatchError):
        fuse(inverse(v), line("W", 1))
    with pytest.raises(TagMismatchError):
        v.ratio(inverse(v))
    with pytest.raises(TagMismatchError):
        reorder(v, ["W"])


def test_inverse_pairs_to_one():
    """Test a^{-1} evaluates to 1 on a"""
    a = line("V", 3, 2.0 - 1.0j)
    assert inverse(a).tag.dual
    assert inverse(a).coeff * a.coeff == pytest.approx(1.0)
    assert fuse(line("k", 0, 4.0), inverse(a)).tag.dual


def test_sign_exponents():
    """Test the exact sign exponents on small dimension vectors"""
    assert sign_N([1, 0]) == 0
    assert sign_N([1, 1, 0]) == 1
    assert sign_N([2, 2, 0]) == 4
    assert sign_R([1, 1], 1) == 0
    assert sign_R([1, 2, 2, 1], 2) == 2


def test_toy_refined_torsion(toy):
    """Test rho_Gamma = a on the d = 1 toy complex"""
    assert refined_torsion(toy).coeff == pytest.approx(2.0)
    assert c_gamma(toy).coeff == pytest.approx(1.0)


def test_toy_refined_torsion_with_chirality_scale():
    """Test rho_Gamma = a / g when Gamma_0 = g"""
    complex_ = GradedComplex.from_blocks(1, (1, 1), [[[2.0]]], [[[3.0]], [[1.0 / 3.0]]])
    assert refined_torsion(complex_).coeff == pytest.approx(2.0 / 3.0)


def test_c_gamma_requires_involution():
    """Test a chirality that is not an involution is rejected"""
    complex_ = GradedComplex.from_blocks(1, (1, 1), [[[2.0]]], [[[2.0]], [[1.0]]])
    with pytest.raises(ChiralityError):
        c_gamma(complex_)


def test_phi_is_split_independent(random_complex, rng):
    """Test phi does not depend on the choice of split on acyclic complexes"""
    assert is_acyclic(random_complex)
    reference = phi(random_complex).coeff
    for _ in range(5):
        choice = random_split(random_complex, rng)
        assert abs(phi(random_complex, choice).coeff - reference) <= 1e-9 * abs(reference)


def test_phi_with_cohomology_is_split_independent(cohomology_complex, rng):
    """Test phi is split independent once the cohomology frame is fixed"""
    assert betti_numbers(cohomology_complex) == (0, 1, 1, 0)
    frame = cohomology_frame(cohomology_complex)
    reference = phi(cohomology_complex, frame=frame)
    assert reference.tag.labels == ("H0", "H1", "H2", "H3")
    for _ in range(5):
        value = phi(cohomology_complex, random_split(cohomology_complex, rng), frame).coeff
        assert abs(value - reference.coeff) <= 1e-9 * abs(reference.coeff)


def test_refined_torsion_is_split_independent(hermitian_complex, rng):
    """Test rho_Gamma is split independent"""
    reference = refined_torsion(hermitian_complex).coeff
    value = refined_torsion(hermitian_complex, random_split(hermitian_complex, rng)).coeff
    assert abs(value - reference) <= 1e-9 * abs(reference)


def test_validate_split_errors(random_complex):
    """Test malformed splits are rejected"""
    base = default_split(random_complex)
    validate_split(random_complex, base)
    with pytest.raises(SplitChoiceError):
        validate_split(random_complex, SplitChoice(base.A[:-1], base.H))
    top = random_complex.dims.dims[-1]
    with pytest.raises(SplitChoiceError):
        validate_split(random_complex, SplitChoice(base.A[:-1] + (np.ones((top, 1)),), base.H))
    swapped = list(base.A)
    swapped[1] = random_complex.partial[0] @ base.A[0]
    with pytest.raises(SplitChoiceError):
        validate_split(random_complex, SplitChoice(tuple(swapped), base.H))


def literal_rho(complex_):
    """rho_Gamma of an acyclic complex from plain determinants against the standard bases"""
    d, r, dims = complex_.d, complex_.r, complex_.dims.dims
    value = 1.0 + 0.0j
    a_dims = []
    image = np.zeros((dims[0], 0))
    for j in range(d + 1):
        if j < d:
            _, s, vh = np.linalg.svd(complex_.partial[j])
            a = vh[: int(np.sum(s > 1e-10 * s[0]))].conj().T
        else:
            a = np.zeros((dims[j], 0))
        value *= np.linalg.det(np.hstack([image, a])) ** (-((-1) ** j))
        a_dims.append(a.shape[1])
        if j < d:
            image = complex_.partial[j] @ a
    for j in range(r):
        value *= np.linalg.det(complex_.gamma[j]) ** (-((-1) ** j))
    n_sign = sum(a * (a + (-1) ** (j + 1)) for j, a in enumerate(a_dims)) // 2
    r_sign = sum(n * (n + (-1) ** (r + j)) for j, n in enumerate(dims[:r])) // 2
    return (-1) ** (n_sign + r_sign) * value


coefficients = st.floats(min_value=0.1, max_value=10.0) | st.floats(min_value=-10.0, max_value=-0.1)


@settings(max_examples=50, deadline=None)
@given(coefficients, coefficients, coefficients)
def test_fuse_is_associative(x, y, z):
    """Test fusing three lines gives the same element in either grouping"""
    a, b, c = line("U", 1, x), line("V", 2, y), line("W", 3, z)
    left = fuse(fuse(a, b), c)
    right = fuse(a, fuse(b, c))
    assert left.tag == right.tag
    assert left.coeff == pytest.approx(right.coeff)


@settings(max_examples=50, deadline=None)
@given(coefficients, coefficients)
def test_fuse_of_duals_is_dual_of_fuse(x, y):
    """Test fusing inverses gives the inverse of the fused element"""
    a, b = line("V", 2, x), line("W", 1, y)
    fused = fuse(inverse(a), inverse(b))
    expected = inverse(fuse(a, b))
    assert fused.tag == expected.tag
    assert fused.coeff == pytest.approx(expected.coeff)
    assert fused.coeff * fuse(a, b).coeff == pytest.approx(1.0)


def test_zero_complex_has_unit_torsion():
    """Test phi, c_Gamma and rho_Gamma are 1 on the zero complex"""
    zero = GradedComplex.zero(3)
    assert is_acyclic(zero)
    assert phi(zero).coeff == 1.0
    assert c_gamma(zero).coeff == 1.0
    assert refined_torsion(zero).coeff == 1.0


def test_c_gamma_is_independent_of_the_bases(random_complex, rng):
    """Test c_Gamma has the same coordinate for random choices of c_0, ..., c_{r-1}"""
    dims = random_complex.dims.dims[: random_complex.r]
    reference = c_gamma(random_complex).coeff
    for _ in range(2):
        bases = [random_invertible(rng, n) for n in dims]
        value = c_gamma(random_complex, bases=bases).coeff
        assert abs(value - reference) <= 1e-10 * abs(reference)
    with pytest.raises(SplitChoiceError):
        c_gamma(random_complex, bases=[np.zeros((n, n)) for n in dims])
    with pytest.raises(SplitChoiceError):
        c_gamma(random_complex, bases=[np.eye(dims[0])])


def test_literal_rho_on_toy(toy):
    """Test the plain-determinant evaluation gives rho_Gamma = a on the toy complex"""
    assert literal_rho(toy) == pytest.approx(2.0)


@pytest.mark.parametrize("t", [3.0, 0.5 - 2.0j])
def test_refined_torsion_rescales_with_the_differential(random_complex, t):
    """Test rho_Gamma(t partial) = t^(sum_k (-1)^k rank partial_k) rho_Gamma(partial)"""
    exponent = sum((-1) ** k * np.linalg.matrix_rank(p) for k, p in enumerate(random_complex.partial))
    base = refined_torsion(random_complex).coeff
    scaled = refined_torsion(random_complex.scaled(t)).coeff
    assert abs(base - literal_rho(random_complex)) <= 1e-9 * abs(base)
    assert abs(scaled - literal_rho(random_complex.scaled(t))) <= 1e-9 * abs(scaled)
    assert abs(scaled - t ** exponent * base) <= 1e-9 * abs(scaled)
