"""Box inner product, codifferentials and the Laplace-type operator.

For forms of equal degree ``(Phi, Psi)_V = -tr <V, Phi cup *Psi>`` where ``V``
is the sum of the 4-cells of a :class:`Box`.  The codifferential
``*^-1 d *`` is the formal adjoint of ``d`` for this product as long as both
forms vanish on the layers just outside ``V`` that the boundary term touches;
:class:`SupportedPair` states and checks those conditions.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cochains import Cochain, coboundary, cup, evaluate_local, pairing
from .errors import PreconditionError
from .gauge import check_connection, covariant_differential
from .hodge import double_star, star, star_inverse
from .lattice_complex import NAXES, UNIT, Box, boundary, mask_of, sub, volume_chain
from .matrix_algebra import EXACT, GaussianRational


def _zero_scalar(mode: str):
    return GaussianRational(0) if mode == EXACT else 0j


def inner(phi: Cochain, psi: Cochain, box: Box):
    """``-tr <V, phi cup *psi>``; zero for forms of different degree."""
    if phi.mode != psi.mode:
        raise PreconditionError("inner product of forms in different scalar modes")
    if phi.degree != psi.degree or phi.is_zero() or psi.is_zero():
        return _zero_scalar(phi.mode)
    return -pairing(volume_chain(box), cup(phi, star(psi))).trace()


def boundary_term(phi: Cochain, psi: Cochain, box: Box):
    """``tr <dV, phi cup *psi>``, the gap between the two sides of the adjointness relation."""
    if phi.degree + 1 != psi.degree:
        raise PreconditionError("boundary term needs deg(psi) = deg(phi) + 1")
    return pairing(boundary(volume_chain(box)), cup(phi, star(psi))).trace()


# -- codifferentials ---------------------------------------------------------------------


def codifferential(psi: Cochain) -> Cochain:
    """``*^-1 d *``; lowers the degree by one.

    This is the adjoint of ``d`` for forms of even degree.  On odd degrees
    the adjoint is its negative (see :func:`covariant_codifferential`).
    """
    if psi.degree < 1:
        raise PreconditionError("the codifferential needs a form of degree >= 1")
    return star_inverse(coboundary(star(psi)))


# Explicit difference form on 2-forms: output axis -> [(pair mask, difference axis, sign)].
# Each term is sign * (F^pair_k - F^pair_{sigma_axis k}).
_CODIFF_TERMS = {
    0: ((mask_of((0, 1)), 1, 1), (mask_of((0, 2)), 2, 1), (mask_of((0, 3)), 3, 1)),
    1: ((mask_of((0, 1)), 0, 1), (mask_of((1, 2)), 2, 1), (mask_of((1, 3)), 3, 1)),
    2: ((mask_of((0, 2)), 0, 1), (mask_of((1, 2)), 1, -1), (mask_of((2, 3)), 3, 1)),
    3: ((mask_of((0, 3)), 0, 1), (mask_of((1, 3)), 1, -1), (mask_of((2, 3)), 2, -1)),
}

_FORWARD = ((0, 0, 0, 0),) + UNIT


def codifferential_2form_components(f: Cochain) -> Cochain:
    """Codifferential of a 2-form from its component difference formula."""
    if f.degree != 2:
        raise PreconditionError("the component formula applies to 2-forms")

    def compute(k, srcs):
        (form,) = srcs
        out = []
        for axis, terms in _CODIFF_TERMS.items():
            acc = None
            for m, j, s in terms:
                d = form.value(k, m) - form.value(sub(k, UNIT[j]), m)
                d = d if s > 0 else -d
                acc = d if acc is None else acc + d
            out.append((1 << axis, acc))
        return out

    return evaluate_local(1, f.mode, (f,), compute, (lambda m: _FORWARD,))


def covariant_codifferential(a: Cochain, omega: Cochain) -> Cochain:
    """Formal adjoint of ``d_A`` with respect to the box inner product.

    On 2-forms this is ``*^-1(d*F - *F cup **A + A cup *F)``.  For an r-form
    it is ``(-1)^r *^-1(d*omega + A cup *omega - (-1)^r *omega cup **A)``,
    which the Laplace-type operator needs on 3-forms.
    """
    check_connection(a)
    r = omega.degree
    if r < 1:
        raise PreconditionError("the covariant codifferential needs a form of degree >= 1")
    g = star(omega)
    body = coboundary(g)
    if not a.is_zero():
        tail = cup(g, double_star(a))
        body = body + cup(a, g)
        body = body - tail if r % 2 == 0 else body + tail
    out = star_inverse(body)
    return out if r % 2 == 0 else -out


def ym_laplacian(a: Cochain, f: Cochain) -> Cochain:
    """``(d_A delta_A + delta_A d_A) F`` for a 2-form ``F``."""
    if f.degree != 2:
        raise PreconditionError("the Laplace-type operator acts on 2-forms")
    return laplacian_terms(a, f)[0]


def laplacian_terms(a: Cochain, f: Cochain) -> tuple[Cochain, Cochain, Cochain]:
    """``(sum, d_A delta_A F, delta_A d_A F)``."""
    first = covariant_differential(a, covariant_codifferential(a, f))
    second = covariant_codifferential(a, covariant_differential(a, f))
    return first + second, first, second


# -- support discipline -----------------------------------------------------------------


def _violations(form: Cochain, layer) -> list:
    if form.has_background:
        return [("background", form.period)]
    return sorted(key for key in form.entries if layer(key[0]))


def _above(box: Box):
    up = box.upper
    return lambda k: any(k[i] == up[i] + 1 for i in range(NAXES))


def _below(box: Box):
    lo = box.lower
    return lambda k: any(k[i] == lo[i] - 1 for i in range(NAXES))


@dataclass(frozen=True)
class SupportedPair:
    """Forms ``phi`` (degree p) and ``psi`` (degree p+1) tested on ``box``.

    Adjointness of ``d`` and ``*^-1 d *`` needs ``phi`` to vanish where some
    ``k_i = N_i + 1`` and ``psi`` to vanish where some ``k_i`` is one below the
    box.  Forms with a periodic background never qualify.
    """

    phi: Cochain
    psi: Cochain
    box: Box

    def violations(self) -> dict[str, list]:
        out = {}
        bad = _violations(self.phi, _above(self.box))
        if bad:
            out["phi"] = bad
        bad = _violations(self.psi, _below(self.box))
        if bad:
            out["psi"] = bad
        return out

    @property
    def is_valid(self) -> bool:
        return not self.violations()

    def check(self) -> "SupportedPair":
        bad = self.violations()
        if bad:
            raise PreconditionError(f"forms do not vanish on the required layers: {bad}")
        return self


def adjoint_sides(phi: Cochain, psi: Cochain, box: Box):
    """``((d phi, psi)_V, (phi, delta psi)_V)`` after checking the support margins."""
    SupportedPair(phi, psi, box).check()
    return inner(coboundary(phi), psi, box), inner(phi, codifferential(psi), box)


def covariant_adjoint_sides(a: Cochain, phi: Cochain, f: Cochain, box: Box):
    """``((d_A phi, F)_V, (phi, delta_A F)_V)`` after checking the support margins.

    Besides the conditions on ``(phi, F)``, ``A`` must vanish one layer below the box.
    """
    SupportedPair(phi, f, box).check()
    bad = _violations(a, _below(box))
    if bad:
        raise PreconditionError(f"connection does not vanish below the box: {bad}")
    return inner(covariant_differential(a, phi), f, box), inner(phi, covariant_codifferential(a, f), box)


# -- 1-form / 3-form duality ---------------------------------------------------------------


def trace_duality_check(phi: Cochain, psi: Cochain, box: Box):
    """``(tr <V, phi cup psi>, -tr <V, psi cup **phi>)`` for a 1-form and a 3-form.

    The two agree when ``phi`` vanishes one layer below the box and ``psi``
    one layer above it.
    """
    if phi.is_zero() and psi.is_zero():
        z = _zero_scalar(phi.mode)
        return z, z
    if phi.degree != 1 and not phi.is_zero() or psi.degree != 3 and not psi.is_zero():
        raise PreconditionError("trace duality pairs a 1-form with a 3-form")
    vol = volume_chain(box)
    left = pairing(vol, cup(phi, psi)).trace()
    right = -pairing(vol, cup(psi, double_star(phi))).trace()
    return left, right


def trace_duality_violations(phi: Cochain, psi: Cochain, box: Box) -> dict[str, list]:
    out = {}
    bad = _violations(phi, _below(box))
    if bad:
        out["phi"] = bad
    bad = _violations(psi, _above(box))
    if bad:
        out["psi"] = bad
    return out


__all__ = [
    "SupportedPair",
    "adjoint_sides",
    "boundary_term",
    "codifferential",
    "codifferential_2form_components",
    "covariant_adjoint_sides",
    "covariant_codifferential",
    "inner",
    "laplacian_terms",
    "trace_duality_check",
    "trace_duality_violations",
    "ym_laplacian",
]
