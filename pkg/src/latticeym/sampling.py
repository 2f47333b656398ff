"""Seeded random forms, connections and gauges for property checks."""

from __future__ import annotations

import numpy as np

from .cochains import Cochain
from .lattice_complex import MASKS_BY_DEGREE, Box
from .matrix_algebra import (
    EXACT,
    Matrix2,
    random_invertible,
    random_matrices,
    random_matrix,
    random_sl2c_algebra,
    random_special_unitary,
    random_su2_algebra,
)

COEFFICIENT_KINDS = ("generic", "su2", "sl2c")


def rng_for(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def _draw(rng, mode, kind, bound):
    if kind == "generic":
        return random_matrix(rng, mode, bound)
    if kind == "su2":
        return random_su2_algebra(rng, mode, bound)
    if kind == "sl2c":
        return random_sl2c_algebra(rng, mode, bound)
    raise ValueError(f"unknown coefficient kind {kind!r}")


def random_form(
    seed,
    degree: int,
    box: Box,
    mode: str = EXACT,
    *,
    density: float = 1.0,
    kind: str = "generic",
    bound: int = 3,
) -> Cochain:
    """Random finitely supported ``degree``-form with coefficients on the sites of ``box``.

    Each basis element is populated with probability ``density``.
    """
    rng = rng_for(seed)
    keys = [(k, m) for k in box.sites() for m in MASKS_BY_DEGREE[degree]]
    if density < 1.0:
        keep = rng.random(len(keys)) < density
        keys = [key for key, flag in zip(keys, keep) if flag]
    if kind == "generic":
        values = random_matrices(rng, len(keys), mode, bound)
    else:
        values = [_draw(rng, mode, kind, bound) for _ in keys]
    return Cochain(degree, dict(zip(keys, values)), mode=mode)


def random_periodic_form(
    seed, degree: int, extents, mode: str = EXACT, *, kind: str = "generic", bound: int = 3
) -> Cochain:
    """Random field on the periodic lattice with the given extents."""
    rng = rng_for(seed)
    box = Box(tuple(extents), (0, 0, 0, 0))
    values = {
        (k, m): _draw(rng, mode, kind, bound) for k in box.sites() for m in MASKS_BY_DEGREE[degree]
    }
    return Cochain.periodic(degree, tuple(extents), values, mode=mode)


def random_basis_form(seed, degree: int, box: Box, mode: str = EXACT, bound: int = 3) -> Cochain:
    """A single random coefficient on one random basis element inside ``box``."""
    rng = rng_for(seed)
    sites = list(box.sites())
    k = sites[int(rng.integers(len(sites)))]
    masks = MASKS_BY_DEGREE[degree]
    m = masks[int(rng.integers(len(masks)))]
    a = random_matrix(rng, mode, bound)
    while a.is_zero():
        a = random_matrix(rng, mode, bound)
    return Cochain.basis(k, m, a)


def random_gauge_values(seed, box: Box, mode: str = EXACT, *, unitary: bool = False, bound: int = 3):
    """Random invertible (or SU(2)) matrices on the sites of ``box``."""
    rng = rng_for(seed)
    draw = (lambda: random_special_unitary(rng, mode)) if unitary else (
        lambda: random_invertible(rng, mode, bound))
    return {k: draw() for k in box.sites()}


def identity_like(mode: str) -> Matrix2:
    return Matrix2.identity(mode)
