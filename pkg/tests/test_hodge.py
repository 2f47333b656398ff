import pytest
from hypothesis import given

from latticeym.cochains import Cochain, cup, translate
from latticeym.hodge import STAR_SIGN, double_star, double_star_closed_form, metric_sign, star, star_inverse
from latticeym.lattice_complex import ALL_ONES, FULL_MASK, MASKS_BY_DEGREE, OFFSETS, PAIR_MASKS, Box, add, sub
from latticeym.matrix_algebra import EXACT, Matrix2, random_matrix
from latticeym.sampling import random_form, random_periodic_form
from latticeym.suites import STAR_TABLE, star_table_mismatches
from strategies import forms

I2 = Matrix2.identity(EXACT)
O = (0, 0, 0, 0)


def test_star_table_on_plaquettes():
    assert star_table_mismatches() == []
    # first and fourth rows spelled out
    k = (2, 1, 0, 3)
    assert star(Cochain.basis(k, PAIR_MASKS[0], I2)) == -Cochain.basis(add(k, (1, 1, 0, 0)), PAIR_MASKS[5], I2)
    assert star(Cochain.basis(k, PAIR_MASKS[3], I2)) == Cochain.basis(add(k, (0, 1, 1, 0)), PAIR_MASKS[2], I2)
    assert [sign for sign, _, _ in STAR_TABLE] == [-1, 1, -1, 1, -1, 1]


def test_star_of_point_is_volume():
    assert star(Cochain.basis(O, 0, I2)) == Cochain.basis(O, FULL_MASK, I2)


@pytest.mark.parametrize("mask", [m for p in range(5) for m in MASKS_BY_DEGREE[p]])
def test_basis_times_its_star_is_signed_volume(mask):
    s = Cochain.basis(O, mask, I2)
    assert cup(s, star(s)) == Cochain.basis(O, FULL_MASK, I2 * metric_sign(mask))


def test_star_of_two_form_in_components():
    f = random_form(1, 2, Box.cube(2))
    sf = star(f)
    signs = [1, -1, 1, -1, 1, -1]
    for k in Box((3, 3, 3, 3), (0, 0, 0, 0)).sites():
        for j, m in enumerate(PAIR_MASKS):
            partner = PAIR_MASKS[5 - j]
            want = f.value(sub(k, OFFSETS[partner]), partner) * signs[j]
            assert sf.value(k, m) == want


def test_double_star_shift_laws():
    a = random_matrix(2)
    k = (1, 2, 3, 4)
    for axis in range(4):
        e = Cochain.basis(k, 1 << axis, a)
        assert double_star(e) == Cochain.basis(add(k, ALL_ONES), 1 << axis, a)
    for m in PAIR_MASKS:
        f = Cochain.basis(k, m, a)
        assert double_star(f) == Cochain.basis(add(k, ALL_ONES), m, -a)


@pytest.mark.parametrize("degree", [1, 2])
def test_closed_form_matches_composition(degree):
    for seed in range(5):
        f = random_form(seed, degree, Box.cube(3))
        assert double_star(f) == double_star_closed_form(f)


@pytest.mark.parametrize("degree", range(5))
def test_star_inverse_both_sides(degree):
    f = random_form(degree, degree, Box.cube(2))
    assert star_inverse(star(f)) == f == star(star_inverse(f))


def test_star_on_periodic_forms():
    p = random_periodic_form(3, 2, (2, 2, 2, 2))
    assert star_inverse(star(p)) == p
    assert double_star(p) == -translate(p, ALL_ONES)


def test_star_signs_are_units():
    assert set(STAR_SIGN) == {-1, 1}


@given(forms(3))
def test_star_is_invertible_on_three_forms(f):
    assert star_inverse(star(f)) == f


@given(forms(2), forms(2))
def test_star_is_linear(f, g):
    assert star(f + g) == star(f) + star(g)
