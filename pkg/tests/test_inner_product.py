from fractions import Fraction

import numpy as np
import pytest

from latticeym.cochains import Cochain, coboundary
from latticeym.errors import PreconditionError
from latticeym.gauge import V40, covariant_differential, curvature, ym_residual
from latticeym.hodge import star_inverse
from latticeym.inner_product import (
    SupportedPair,
    adjoint_sides,
    boundary_term,
    codifferential,
    codifferential_2form_components,
    covariant_adjoint_sides,
    covariant_codifferential,
    inner,
    laplacian_terms,
    trace_duality_check,
    trace_duality_violations,
    ym_laplacian,
)
from latticeym.lattice_complex import PAIR_MASKS, Box
from latticeym.matrix_algebra import FLOAT, GaussianRational, lie_basis
from latticeym.oracle import oracle_codifferential
from latticeym.sampling import random_basis_form, random_form

BOX = Box.cube(2)


def test_inner_product_of_time_edge():
    a = Cochain.basis((1, 1, 1, 1), 1, lie_basis(1))
    assert inner(a, a, BOX) == GaussianRational(Fraction(-1, 2))


def test_inner_product_space_edges_flip_sign():
    for axis in (1, 2, 3):
        a = Cochain.basis((1, 2, 1, 2), 1 << axis, lie_basis(axis))
        assert inner(a, a, BOX) == GaussianRational(Fraction(1, 2))


def test_two_form_signature():
    f = random_form(1, 2, BOX)
    signs = [-1, -1, -1, 1, 1, 1]
    total = GaussianRational(0)
    for k in BOX.sites():
        for s, m in zip(signs, PAIR_MASKS):
            v = f.value(k, m)
            total = total + (v * v).trace() * s
    assert inner(f, f, BOX) == -total


def test_degree_mismatch_is_zero():
    assert inner(random_form(2, 1, BOX), random_form(3, 2, BOX), BOX) == 0
    assert inner(Cochain.zero(1), random_form(4, 1, BOX), BOX) == 0


def test_float_inner_product_is_complex():
    f = random_form(5, 2, BOX, FLOAT)
    assert isinstance(inner(f, f, BOX), complex)


# -- codifferential ----------------------------------------------------------------


def test_codifferential_of_zero():
    assert codifferential(Cochain.zero(2)).is_zero()
    with pytest.raises(PreconditionError):
        codifferential(Cochain.zero(0))


def test_component_formula_matches_operator():
    for seed in range(5):
        f = random_form(seed, 2, Box.cube(3))
        assert codifferential_2form_components(f) == codifferential(f)


def test_codifferential_matches_oracle_on_single_coefficients():
    for seed in range(10):
        f = random_basis_form(seed, 2, BOX)
        assert codifferential(f) == oracle_codifferential(f)


@pytest.mark.parametrize("box", [Box.cube(2), Box.cube(3)], ids=["2^4", "3^4"])
def test_codifferential_is_adjoint(box):
    for seed in range(5):
        left, right = adjoint_sides(random_form(seed, 1, box), random_form(seed + 9, 2, box), box)
        assert left == right


@pytest.mark.parametrize("p", [0, 1, 2, 3])
def test_adjointness_sign_depends_on_degree(p):
    phi, psi = random_form(p, p, BOX), random_form(p + 20, p + 1, BOX)
    left = inner(coboundary(phi), psi, BOX)
    right = inner(phi, codifferential(psi), BOX)
    assert left == (right if p % 2 else -right)


def test_boundary_term_explains_margin_failures():
    phi = Cochain.basis((3, 1, 1, 1), 0, lie_basis(1))
    psi = random_form(6, 1, Box((3, 2, 2, 2)))
    assert not SupportedPair(phi, psi, BOX).is_valid
    with pytest.raises(PreconditionError):
        adjoint_sides(phi, psi, BOX)
    assert boundary_term(phi, psi, BOX) != 0


def test_margin_predicates():
    inside = random_form(7, 1, BOX)
    assert SupportedPair(inside, random_form(8, 2, BOX), BOX).is_valid
    below = Cochain.basis((0, 1, 1, 1), 3, lie_basis(2))
    assert "psi" in SupportedPair(inside, below, BOX).violations()
    periodic = Cochain.constant(1, {1: lie_basis(1)})
    assert "phi" in SupportedPair(periodic, below, BOX).violations()


# -- covariant codifferential -------------------------------------------------------


def test_covariant_codifferential_without_connection():
    f = random_form(9, 2, BOX)
    assert covariant_codifferential(Cochain.zero(1), f) == codifferential(f)


def test_covariant_codifferential_matches_field_equation_on_curvature():
    a = random_form(10, 1, BOX)
    f = curvature(a)
    assert covariant_codifferential(a, f) == star_inverse(ym_residual(a, V40))


@pytest.mark.parametrize("box", [Box.cube(2), Box.cube(3)], ids=["2^4", "3^4"])
def test_covariant_codifferential_is_adjoint(box):
    for seed in range(3):
        a, phi, f = (random_form(seed + s, d, box) for s, d in ((0, 1), (30, 1), (60, 2)))
        left, right = covariant_adjoint_sides(a, phi, f, box)
        assert left == right


@pytest.mark.parametrize("r", [1, 2, 3, 4])
def test_covariant_adjoint_in_every_degree(r):
    a = random_form(r, 1, BOX)
    phi, omega = random_form(r + 40, r - 1, BOX), random_form(r + 80, r, BOX)
    assert inner(covariant_differential(a, phi), omega, BOX) == inner(phi, covariant_codifferential(a, omega), BOX)


def test_connection_must_vanish_below_box():
    a = Cochain.basis((0, 1, 1, 1), 1, lie_basis(1))
    with pytest.raises(PreconditionError):
        covariant_adjoint_sides(a, random_form(11, 1, BOX), random_form(12, 2, BOX), BOX)


# -- Laplace-type operator ----------------------------------------------------------


def test_laplacian_trivial_cases():
    assert ym_laplacian(Cochain.zero(1), Cochain.zero(2)).is_zero()
    with pytest.raises(PreconditionError):
        ym_laplacian(Cochain.zero(1), random_form(1, 1, BOX))


def test_laplacian_is_sum_of_parts():
    a, f = random_form(13, 1, BOX), random_form(14, 2, BOX)
    total, first, second = laplacian_terms(a, f)
    assert total == first + second == ym_laplacian(a, f)


def test_laplacian_on_curvature_reduces_to_one_term():
    a = random_form(15, 1, BOX)
    _, first, second = laplacian_terms(a, curvature(a))
    assert second.is_zero()
    assert first == covariant_differential(a, star_inverse(ym_residual(a, V40)))


# -- 1-form / 3-form trace duality ---------------------------------------------------


def test_trace_duality_of_zero():
    z = GaussianRational(0)
    assert trace_duality_check(Cochain.zero(1), Cochain.zero(3), BOX) == (z, z)


def test_trace_duality_on_random_pairs():
    for seed in range(10):
        rng = np.random.default_rng(seed)
        phi, psi = random_form(rng, 1, BOX), random_form(rng, 3, BOX)
        assert not trace_duality_violations(phi, psi, BOX)
        left, right = trace_duality_check(phi, psi, BOX)
        assert left == right


def test_trace_duality_single_coefficients():
    one = Cochain.basis((1, 1, 1, 1), 1, lie_basis(1))
    three = Cochain.basis((2, 1, 1, 1), 0b1110, lie_basis(1))
    left, right = trace_duality_check(one, three, BOX)
    assert left == right == (lie_basis(1) * lie_basis(1)).trace()


def test_trace_duality_rejects_wrong_degrees():
    with pytest.raises(PreconditionError):
        trace_duality_check(random_form(16, 2, BOX), random_form(17, 3, BOX), BOX)
