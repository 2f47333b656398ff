import itertools

import pytest

from latticeym.cochains import Cochain, coboundary, cup
from latticeym.errors import PreconditionError
from latticeym.hodge import star, star_inverse
from latticeym.inner_product import codifferential
from latticeym.lattice_complex import MASKS_BY_DEGREE, PAIR_MASKS, Box, Chain, boundary, mask_of
from latticeym.matrix_algebra import EXACT, FLOAT, Matrix2, random_matrix
from latticeym.oracle import (
    boundary_basis,
    cup_basis,
    dimension,
    from_factors,
    oracle_boundary,
    oracle_codifferential,
    oracle_coboundary,
    oracle_cup,
    oracle_star,
    oracle_star_inverse,
    star_candidates,
    support_region,
    to_factors,
)
from latticeym.sampling import random_form
from latticeym.suites import STAR_TABLE

BOX = Box.cube(2)
I2 = Matrix2.identity(EXACT)


def test_factor_round_trip():
    k, m = (1, -2, 3, 0), mask_of((0, 2))
    b = to_factors(k, m)
    assert b == (("e", 1), ("x", -2), ("e", 3), ("x", 0))
    assert from_factors(b) == (k, m) and dimension(b) == 2


def test_boundary_of_plaquette_by_hand():
    # d(e x e) = (x_{k+1} - x_k) x e - e x (x_{k+1} - x_k), remaining factors points
    b = (("e", 0), ("e", 0), ("x", 0), ("x", 0))
    assert boundary_basis(b) == {
        (("x", 1), ("e", 0), ("x", 0), ("x", 0)): 1,
        (("x", 0), ("e", 0), ("x", 0), ("x", 0)): -1,
        (("e", 0), ("x", 1), ("x", 0), ("x", 0)): -1,
        (("e", 0), ("x", 0), ("x", 0), ("x", 0)): 1,
    }


@pytest.mark.parametrize("degree", range(1, 5))
def test_oracle_boundary_agrees(degree):
    for k in Box.cube(2).sites():
        for m in MASKS_BY_DEGREE[degree]:
            c = Chain.basis(k, m, 3)
            assert oracle_boundary(c) == boundary(c)


@pytest.mark.parametrize("degree", [0, 1, 2, 3])
def test_oracle_coboundary_agrees(degree):
    for seed in range(5):
        f = random_form(seed, degree, BOX)
        assert oracle_coboundary(f) == coboundary(f)


def test_oracle_coboundary_edge_cases():
    assert oracle_coboundary(Cochain.zero(1)).is_zero()
    line = Cochain(0, {((k, 0, 0, 0), 0): random_matrix(k) for k in range(4)})
    d = oracle_coboundary(line)
    for k in range(-1, 4):
        nxt = line.value((k + 1, 0, 0, 0), 0)
        assert d.value((k, 0, 0, 0), 1) == nxt - line.value((k, 0, 0, 0), 0)
    with pytest.raises(PreconditionError):
        oracle_coboundary(line, Box((4, 1, 1, 1), (0, 0, 0, 0)))
    assert support_region(line).lower == (-1, -1, -1, -1)


@pytest.mark.parametrize("p,q", [(p, q) for p in range(5) for q in range(5) if p + q <= 4])
def test_oracle_cup_agrees(p, q):
    for seed in range(3):
        f, g = random_form(seed, p, BOX), random_form(seed + 7, q, BOX)
        assert oracle_cup(f, g) == cup(f, g)


def test_oracle_cup_sign_fixture():
    s = to_factors((0, 0, 0, 0), 1)
    t = to_factors((1, 0, 0, 0), 2)
    assert cup_basis(s, t) == (1, to_factors((0, 0, 0, 0), 3))
    s2 = to_factors((0, 0, 0, 0), 2)
    t2 = to_factors((0, 1, 0, 0), 1)
    assert cup_basis(s2, t2) == (-1, to_factors((0, 0, 0, 0), 3))
    assert cup_basis(s, to_factors((1, 0, 0, 0), 1)) is None


def test_oracle_cup_reads_shifted_gauge_values():
    f = random_form(1, 2, BOX)
    h = random_form(2, 0, Box.cube(3))
    fh = oracle_cup(f, h)
    for (k, m), v in f.entries.items():
        far = tuple(x + ((m >> a) & 1) for a, x in enumerate(k))
        assert fh.value(k, m) == v * h.value(far, 0)


def test_oracle_star_table():
    for m, (sign, image, shift) in zip(PAIR_MASKS, STAR_TABLE):
        got = oracle_star(Cochain.basis((0, 0, 0, 0), m, I2))
        off = tuple((shift >> a) & 1 for a in range(4))
        assert got == Cochain.basis(off, image, I2 if sign > 0 else -I2)


@pytest.mark.parametrize("kinds", list(itertools.product("xe", repeat=4)))
def test_star_search_finds_exactly_one_candidate(kinds):
    s = tuple(zip(kinds, (0, 0, 0, 0)))
    assert len(star_candidates(s)) == 1


@pytest.mark.parametrize("degree", range(5))
def test_oracle_star_agrees(degree):
    for mode in (EXACT, FLOAT):
        f = random_form(degree, degree, BOX, mode)
        assert oracle_star(f) == star(f)
        assert oracle_star_inverse(f) == star_inverse(f)


def test_oracle_codifferential_agrees():
    for seed in range(3):
        f = random_form(seed, 2, BOX)
        assert oracle_codifferential(f) == codifferential(f)


def test_oracles_reject_periodic_forms():
    with pytest.raises(PreconditionError):
        oracle_star(Cochain.constant(0, {0: I2}))
