"""Difference self-dual and anti-self-dual equations.

The operator form of each equation is ``*F = cF`` with ``c`` in ``{i, -i, 1, -1}``.
Because ``**F`` is ``-F`` read one diagonal step down, applying the star
twice gives ``c^2 F_k = -F_{sigma k}``: the two imaginary modes force
``F_k = F_{sigma k}`` and the two real modes force ``F_k = -F_{sigma k}``.
The *diagonal residual* ``F_k - s F_{sigma k}`` measures that consequence; it
is an exact linear image of the operator residual
(:func:`diagonal_from_operator_residual`).

The implication only goes one way: a diagonal solution is in general the
sum of a ``c`` and a ``-c`` eigenform (:func:`eigen_split`).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .cochains import Cochain, translate
from .errors import PreconditionError
from .gauge import curvature, curvature_components
from .hodge import double_star, star
from .lattice_complex import ALL_ONES, MultiIndex
from .matrix_algebra import DEFAULT_TOL, EXACT, FLOAT, GaussianRational, Matrix2

OPERATOR = "operator"
DIAGONAL = "diagonal"


class DualityMode(str, enum.Enum):
    SELFDUAL_I = "selfdual_i"
    ANTISELFDUAL_I = "antiselfdual_i"
    SELFDUAL_REAL = "selfdual_real"
    ANTISELFDUAL_REAL = "antiselfdual_real"

    @property
    def eigenvalue(self) -> GaussianRational:
        """The ``c`` in ``*F = cF``."""
        return _EIGENVALUES[self]

    @property
    def diagonal_sign(self) -> int:
        """``s`` in the implied relation ``F_k = s F_{sigma k}``."""
        return 1 if self in (DualityMode.SELFDUAL_I, DualityMode.ANTISELFDUAL_I) else -1

    @property
    def is_imaginary(self) -> bool:
        return self.diagonal_sign == 1


_EIGENVALUES = {
    DualityMode.SELFDUAL_I: GaussianRational(0, 1),
    DualityMode.ANTISELFDUAL_I: GaussianRational(0, -1),
    DualityMode.SELFDUAL_REAL: GaussianRational(1),
    DualityMode.ANTISELFDUAL_REAL: GaussianRational(-1),
}


def _scalar(c: GaussianRational, mode: str):
    return c if mode == EXACT else complex(c)


def _check_2form(f: Cochain):
    if f.degree != 2 and not f.is_zero():
        raise PreconditionError(f"duality equations apply to 2-forms, got degree {f.degree}")


def _as_2form(f: Cochain) -> Cochain:
    return f if f.degree == 2 else Cochain.zero(2, f.mode)


def diagonal_shift(f: Cochain) -> Cochain:
    """The form whose coefficient at ``k`` is that of ``f`` at ``sigma k``."""
    return translate(f, ALL_ONES)


def operator_residual(f: Cochain, mode: DualityMode) -> Cochain:
    """``*F - cF``."""
    _check_2form(f)
    f = _as_2form(f)
    return star(f) - f.scale(_scalar(DualityMode(mode).eigenvalue, f.mode))


def diagonal_residual(f: Cochain, mode: DualityMode) -> Cochain:
    """``F_k - s F_{sigma k}`` with ``s`` the diagonal sign of ``mode``."""
    _check_2form(f)
    f = _as_2form(f)
    shifted = diagonal_shift(f)
    return f - shifted if DualityMode(mode).diagonal_sign > 0 else f + shifted


def duality_residual(f: Cochain, mode: DualityMode, form: str = OPERATOR) -> Cochain:
    """Residual of the mode's equation in operator or diagonal form."""
    if form == OPERATOR:
        return operator_residual(f, mode)
    if form == DIAGONAL:
        return diagonal_residual(f, mode)
    raise ValueError(f"form must be {OPERATOR!r} or {DIAGONAL!r}, got {form!r}")


def diagonal_from_operator_residual(r: Cochain, mode: DualityMode) -> Cochain:
    """Map an operator residual ``R = *F - cF`` to the diagonal residual of ``F``.

    ``(* + c) R = **F - c^2 F``, which is ``F - F_sigma`` for ``c = +-i`` and
    ``-(F + F_sigma)`` for ``c = +-1``.
    """
    mode = DualityMode(mode)
    out = star(r) + r.scale(_scalar(mode.eigenvalue, r.mode))
    return out if mode.is_imaginary else -out


def eigen_split(f: Cochain, mode: DualityMode) -> tuple[Cochain, Cochain]:
    """``(F + c^-1 *F) / 2`` and ``(F - c^-1 *F) / 2``.

    For ``F`` with zero diagonal residual these solve ``*G = cG`` and
    ``*G = -cG`` respectively and add up to ``F``.
    """
    _check_2form(f)
    mode = DualityMode(mode)
    inv = _scalar(1 / mode.eigenvalue, f.mode)
    half = _scalar(GaussianRational(1, 0) / 2, f.mode)
    g = star(f).scale(inv)
    return (f + g).scale(half), (f - g).scale(half)


def solution_from_diagonal(x: Cochain, mode: DualityMode) -> Cochain:
    """``*X + cX``, a solution of ``*G = cG`` whenever ``X`` has zero diagonal residual."""
    _check_2form(x)
    return star(x) + x.scale(_scalar(DualityMode(mode).eigenvalue, x.mode))


def project_to_diagonal(f: Cochain, mode: DualityMode) -> Cochain:
    """Average a periodic form along the diagonal so that its diagonal residual vanishes.

    Uses ``(1/L) sum_t s^t F_{sigma^t}`` with ``L`` the length of the diagonal
    orbit; needs a purely periodic form and ``s^L = 1``.
    """
    _check_2form(f)
    if f.entries or not f.has_background:
        raise PreconditionError("diagonal projection needs a purely periodic form")
    mode = DualityMode(mode)
    length = math.lcm(*f.period)
    s = mode.diagonal_sign
    if s < 0 and length % 2:
        raise PreconditionError(f"diagonal orbit of odd length {length} admits no F_k = -F_sigma k")
    acc = f
    step = f
    for t in range(1, length):
        step = diagonal_shift(step)
        acc = acc + step if s ** t > 0 else acc - step
    return acc.scale(_scalar(GaussianRational(1, 0) / length, f.mode))


# -- connection level ----------------------------------------------------------------------


def duality_residual_from_connection(a: Cochain, mode: DualityMode) -> Cochain:
    """Diagonal residual of the curvature written through connection components.

    At each site and pair ``i < r`` this is the component expression
    ``D_i A^r_k - D_r A^i_k + A^i_k A^r_{tau_i k} - A^r_k A^i_{tau_r k}`` minus ``s``
    times the same expression at ``sigma k``.
    """
    c = curvature_components(a)
    shifted = diagonal_shift(c)
    return c - shifted if DualityMode(mode).diagonal_sign > 0 else c + shifted


def connection_duality_residual(a: Cochain, mode: DualityMode, form: str = OPERATOR) -> Cochain:
    return duality_residual(curvature(a), mode, form)


# -- sign law and finite-support triviality --------------------------------------------------


def _is_zero(form: Cochain, tol: float) -> bool:
    if form.mode == FLOAT:
        return form.max_norm() <= tol
    return form.is_zero()


def double_star_sign_check(f: Cochain, mode: DualityMode, tol: float = DEFAULT_TOL) -> bool:
    """For ``F_k = s F_{sigma k}`` check ``**F = -s F``.

    Raises :class:`PreconditionError` when ``F`` does not satisfy the relation.
    """
    mode = DualityMode(mode)
    _check_2form(f)
    f = _as_2form(f)
    if not _is_zero(diagonal_residual(f, mode), tol):
        raise PreconditionError(f"form does not satisfy the {mode.value} diagonal relation")
    expected = -f if mode.diagonal_sign > 0 else f
    return _is_zero(double_star(f) - expected, tol)


@dataclass(frozen=True)
class TrivialityReport:
    """Outcome of testing a finitely supported 2-form against a duality equation.

    ``satisfies`` comes from evaluating the operator residual.  For nonzero
    ``F`` the witness is the site one diagonal step above the support point
    with the largest coordinate sum: ``F`` vanishes there but its diagonal
    neighbour does not, so the diagonal residual is nonzero.
    """

    mode: DualityMode
    satisfies: bool
    operator_residual_norm: float
    witness_site: MultiIndex | None = None
    witness_mask: int | None = None
    witness_value: Matrix2 | None = None

    @property
    def certified(self) -> bool:
        """True when the verdict is backed by the witness (or ``F`` is zero)."""
        if self.witness_site is None:
            return self.satisfies
        return not self.satisfies and not self.witness_value.is_zero()


def finite_support_triviality(f: Cochain, mode: DualityMode, tol: float = DEFAULT_TOL) -> TrivialityReport:
    mode = DualityMode(mode)
    _check_2form(f)
    if f.has_background:
        raise PreconditionError("finite-support triviality needs a finitely supported form")
    f = _as_2form(f)
    residual = operator_residual(f, mode)
    satisfies = _is_zero(residual, tol)
    norm = residual.max_norm()
    if f.is_zero():
        return TrivialityReport(mode, satisfies, norm)
    top, mask = max(f.entries, key=lambda key: (sum(key[0]), key))
    site = tuple(x + 1 for x in top)
    value = diagonal_residual(f, mode).value(site, mask)
    return TrivialityReport(mode, satisfies, norm, site, mask, value)
