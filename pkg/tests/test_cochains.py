import pytest
from hypothesis import given

from latticeym.cochains import Cochain, coboundary, cup, pairing, restrict, translate
from latticeym.errors import ModeError
from latticeym.lattice_complex import ALL_ONES, OFFSETS, PAIR_MASKS, UNIT, Box, Chain, add, mask_of, sub
from latticeym.matrix_algebra import EXACT, FLOAT, Matrix2, matrix, random_matrix
from latticeym.sampling import random_form, random_periodic_form
from strategies import exact_matrices, forms

I2 = Matrix2.identity(EXACT)
O = (0, 0, 0, 0)


def basis(k, axes, a=I2):
    return Cochain.basis(k, mask_of(axes), a)


def test_pairing_picks_matching_coefficient():
    a = matrix([[1, 2j], [0, 3]])
    x = Cochain.basis(O, 0, a)
    assert pairing(Chain.basis(O, 0), x) == a
    assert pairing(Chain.basis((1, 0, 0, 0), 0), x).is_zero()
    assert pairing(Chain.basis(O, 1), x).is_zero()


def test_coboundary_of_point_is_forward_difference_dual():
    got = coboundary(Cochain.basis(O, 0, I2))
    want = Cochain.zero(1)
    for a in range(4):
        want = want + Cochain.basis(sub(O, UNIT[a]), 1 << a, I2) - Cochain.basis(O, 1 << a, I2)
    assert got == want


def test_coboundary_on_a_line_is_a_difference_of_values():
    h = {(k, 0, 0, 0): random_matrix(k) for k in range(5)}
    form = Cochain(0, {(k, 0): v for k, v in h.items()})
    d = coboundary(form)
    zero = Matrix2.zero()
    for k in range(-1, 6):
        site = (k, 0, 0, 0)
        upper = h.get((k + 1, 0, 0, 0), zero)
        assert d.value(site, 1) == upper - h.get(site, zero)


@pytest.mark.parametrize("degree", [0, 1, 2])
def test_coboundary_squares_to_zero(degree):
    for seed in range(5):
        f = random_form(seed, degree, Box.cube(3))
        assert coboundary(coboundary(f)).is_zero()


def test_cup_sign_fixture_in_two_axes():
    k = (1, 1, 0, 0)
    assert cup(basis(k, [0]), basis(add(k, UNIT[0]), [1])) == basis(k, [0, 1])
    assert cup(basis(k, [1]), basis(add(k, UNIT[1]), [0])) == -basis(k, [0, 1])


def test_cup_of_zero_forms_is_pointwise():
    a, b = random_matrix(1), random_matrix(2)
    assert cup(Cochain.basis(O, 0, a), Cochain.basis(O, 0, b)) == Cochain.basis(O, 0, a * b)
    assert cup(Cochain.basis(O, 0, a), Cochain.basis(UNIT[0], 0, b)).is_zero()


def test_cup_with_zero_form_on_the_right_reads_the_far_corner():
    f = random_form(3, 2, Box.cube(2))
    h = random_form(4, 0, Box((3, 3, 3, 3), (1, 1, 1, 1)))
    fh = cup(f, h)
    for k in Box.cube(2).sites():
        for m in PAIR_MASKS:
            assert fh.value(k, m) == f.value(k, m) * h.value(add(k, OFFSETS[m]), 0)


def test_cup_vanishes_when_masks_overlap():
    assert cup(basis(O, [0]), basis(UNIT[0], [0])).is_zero()
    assert cup(basis(O, [0, 1]), basis((1, 1, 0, 0), [1, 2])).is_zero()


def test_cup_needs_matching_modes():
    with pytest.raises(ModeError):
        cup(Cochain.basis(O, 0, I2), Cochain.basis(O, 0, Matrix2.identity(FLOAT)))


@given(forms(1, 4), forms(1, 4), forms(1, 4))
def test_cup_is_associative(a, b, c):
    assert cup(cup(a, b), c) == cup(a, cup(b, c))


@given(forms(1, 4), forms(2, 4))
def test_leibniz_odd_left_factor(phi, psi):
    lhs = coboundary(cup(phi, psi))
    assert lhs == cup(coboundary(phi), psi) - cup(phi, coboundary(psi))


@given(forms(0, 4), forms(2, 4))
def test_leibniz_even_left_factor(phi, psi):
    lhs = coboundary(cup(phi, psi))
    assert lhs == cup(coboundary(phi), psi) + cup(phi, coboundary(psi))


@given(forms(2, 5), forms(2, 5))
def test_addition_laws(a, b):
    assert a + b == b + a
    assert (a - b) + b == a
    assert (a + (-a)).is_zero()


def test_zero_coefficients_are_pruned():
    f = Cochain(1, {(O, 1): Matrix2.zero()})
    assert f.is_zero() and len(f) == 0 and f == Cochain.zero(1)


def test_background_forms_compare_by_value():
    a = random_matrix(5)
    bg = {(r, 0): a for r in [(0, 0, 0, 0), (1, 0, 0, 0)]}
    two = Cochain(0, background=bg, period=(2, 1, 1, 1))
    one = Cochain.constant(0, {0: a})
    assert two == one
    assert two.period == (1, 1, 1, 1)
    assert one.value((17, -3, 2, 9), 0) == a


def test_entries_equal_to_background_are_pruned():
    a = random_matrix(6)
    f = Cochain(0, {(O, 0): a}, background={(O, 0): a})
    assert not f.entries and f.has_background


def test_translate_moves_coefficients_up():
    f = random_form(7, 2, Box.cube(2))
    g = translate(f, ALL_ONES)
    for (k, m), v in f.entries.items():
        assert g.value(add(k, ALL_ONES), m) == v
    p = random_periodic_form(8, 2, (2, 2, 2, 2))
    assert translate(translate(p, (1, 0, 0, 0)), (1, 0, 0, 0)) == p


def test_periodic_coboundary_matches_finite_window():
    p = random_periodic_form(9, 1, (2, 2, 2, 2))
    window = Box.cube(4)
    finite = Cochain(1, {(k, m): p.value(k, m) for k in window.grown(0, 1).sites() for m in (1, 2, 4, 8)})
    dp, df = coboundary(p), coboundary(finite)
    for k in window.sites():
        for m in PAIR_MASKS:
            assert dp.value(k, m) == df.value(k, m)


def test_restrict_keeps_listed_sites():
    f = random_form(10, 1, Box.cube(2))
    sites = {(1, 1, 1, 1)}
    r = restrict(f, sites)
    assert {k for k, _ in r.entries} <= sites
