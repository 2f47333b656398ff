"""The Lorentz-signature star operator on K(4) and its inverse.

For a basis element ``s = (k, M)`` the star is the signed complementary
element ``c * (k + offset(M), ~M)``.  The index shift is forced by the cup
rules (an edge on axis ``a`` must meet a point at ``k_a + 1``); the sign is
fixed by requiring ``s cup star(s)`` to be the 4-cell at ``k`` times -1 when
the time factor of ``s`` is an edge and +1 otherwise.
"""

from __future__ import annotations

from .cochains import CUP_SIGN, Cochain, translate
from .lattice_complex import ALL_ONES, FULL_MASK, NAXES, OFFSETS, add, sub

TIME_AXIS = 0


def metric_sign(mask: int) -> int:
    """-1 if the time factor is an edge, +1 if it is a point."""
    return -1 if mask >> TIME_AXIS & 1 else 1


def star_sign(mask: int) -> int:
    """Sign ``c`` with ``star(k, mask) = c * (k + offset(mask), complement)``."""
    return metric_sign(mask) * CUP_SIGN[mask][FULL_MASK ^ mask]


STAR_SIGN = tuple(star_sign(m) for m in range(16))


def _map_basis(form: Cochain, target_degree: int, image) -> Cochain:
    """Push every coefficient through a signed bijection of basis elements."""
    entries = {}
    for (k, m), a in form._entries.items():
        k2, m2, s = image(k, m)
        entries[(k2, m2)] = a if s > 0 else -a
    period = form._period
    bg = {}
    for m, table in form._bg.items():
        out = {}
        for r, a in table.items():
            r2, m2, s = image(r, m)
            out[tuple(x % p for x, p in zip(r2, period))] = a if s > 0 else -a
        bg[m2] = out
    return Cochain._make(target_degree, form.mode, entries, bg, period)


def _star_image(k, m):
    return add(k, OFFSETS[m]), FULL_MASK ^ m, STAR_SIGN[m]


def _star_inverse_image(k, n):
    m = FULL_MASK ^ n
    return sub(k, OFFSETS[m]), m, STAR_SIGN[m]


def star(form: Cochain) -> Cochain:
    """Hodge star; a p-form becomes a (4-p)-form."""
    if form.degree > NAXES:
        raise ValueError(f"star is defined on degrees 0..4, got {form.degree}")
    return _map_basis(form, NAXES - form.degree, _star_image)


def star_inverse(form: Cochain) -> Cochain:
    """Inverse of :func:`star` (signs are +-1, so only the index shift is undone)."""
    if form.degree > NAXES:
        raise ValueError(f"star is defined on degrees 0..4, got {form.degree}")
    return _map_basis(form, NAXES - form.degree, _star_inverse_image)


def double_star(form: Cochain) -> Cochain:
    """star(star(form)), evaluated compositionally."""
    return star(star(form))


def double_star_closed_form(form: Cochain) -> Cochain:
    """Shift law for star∘star on 1- and 2-forms.

    1-forms move up one step on every axis with unchanged sign; 2-forms move
    up one step and change sign.  Other degrees fall back to composition.
    """
    if form.degree == 1:
        return translate(form, ALL_ONES)
    if form.degree == 2:
        return -translate(form, ALL_ONES)
    return double_star(form)

