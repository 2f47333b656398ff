import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from latticeym.lattice_complex import (
    FULL_MASK,
    MASKS_BY_DEGREE,
    OFFSETS,
    PAIR_MASKS,
    SIGMA,
    TAU,
    Box,
    Chain,
    axes_of,
    boundary,
    mask_of,
    shift,
    volume_chain,
    wrap,
)
from strategies import sites


def test_shift_examples():
    assert shift((0, 0, 0, 0), (0, 1), TAU) == (1, 1, 0, 0)
    assert shift((2, 3, 3, 4), (1, 2), SIGMA) == (2, 2, 2, 4)


def test_shift_rejects_unknown_direction():
    with pytest.raises(ValueError):
        shift((0, 0, 0, 0), (0,), "up")


@given(sites, st.sets(st.integers(0, 3)))
def test_tau_then_sigma_is_identity(k, axes):
    assert shift(shift(k, axes, TAU), axes, SIGMA) == k


def test_mask_round_trip():
    for m in range(16):
        assert mask_of(axes_of(m)) == m
    assert [len(MASKS_BY_DEGREE[p]) for p in range(5)] == [1, 4, 6, 4, 1]
    assert PAIR_MASKS == tuple(mask_of(p) for p in itertools.combinations(range(4), 2))
    assert OFFSETS[FULL_MASK] == (1, 1, 1, 1)


def test_wrap():
    assert wrap((-1, 4, 2, 7), (2, 2, 3, 3)) == (1, 0, 2, 1)


def test_box_sites_and_bounds():
    box = Box((2, 1, 1, 3))
    assert len(box) == 6 == len(list(box.sites()))
    assert (1, 1, 1, 3) in box and (3, 1, 1, 1) not in box
    assert box.upper == (2, 1, 1, 3)
    grown = box.grown(1, 2)
    assert grown.lower == (0, 0, 0, 0) and grown.extents == (5, 4, 4, 6)
    with pytest.raises(ValueError):
        Box((0, 1, 1, 1))


def test_edge_boundary_is_difference_of_endpoints():
    k = (1, 2, 3, 4)
    for axis in range(4):
        e = Chain.basis(k, 1 << axis)
        assert boundary(e) == Chain.basis(shift(k, [axis]), 0) - Chain.basis(k, 0)


def test_boundary_of_time_space_plaquette():
    # d(e x e) = (d e) x e - e x (d e) on the axes (0, 1)
    k = (0, 0, 0, 0)
    got = boundary(Chain.basis(k, mask_of((0, 1))))
    want = (
        Chain.basis((1, 0, 0, 0), 2) - Chain.basis(k, 2)
        - Chain.basis((0, 1, 0, 0), 1) + Chain.basis(k, 1)
    )
    assert got == want


@pytest.mark.parametrize("degree", [1, 2, 3, 4])
def test_boundary_squares_to_zero_on_every_basis_element(degree):
    for k in Box.cube(3).sites():
        for m in MASKS_BY_DEGREE[degree]:
            assert not boundary(boundary(Chain.basis(k, m)))


def test_volume_chain_counts():
    assert volume_chain(Box((1, 1, 1, 1))) == Chain.basis((1, 1, 1, 1), FULL_MASK)
    assert len(volume_chain(Box((2, 1, 1, 1)))) == 2


def test_boundary_of_volume_is_its_outer_faces():
    n = 2
    box = Box.cube(n)
    expected = Chain()
    for axis in range(4):
        face = FULL_MASK ^ (1 << axis)
        sign = -1 if axis % 2 else 1
        for k in box.sites():
            if k[axis] == n:
                expected = expected + sign * Chain.basis(shift(k, [axis]), face)
            if k[axis] == 1:
                expected = expected - sign * Chain.basis(k, face)
    assert boundary(volume_chain(box)) == expected


def test_chain_arithmetic():
    a = Chain.basis((0, 0, 0, 0), 1, 2)
    b = Chain.basis((0, 0, 0, 0), 1, -2)
    assert not (a + b)
    assert a - b == 2 * a
    assert -a == b
    assert hash(a) == hash(Chain.basis((0, 0, 0, 0), 1, 2))
