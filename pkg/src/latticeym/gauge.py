"""Connections, curvature, gauge transformations and the Yang-Mills residuals.

A connection is a degree-1 :class:`Cochain`; its curvature is the degree-2
form ``F = dA + A cup A``.  Gauge transformations act through invertible
0-forms that equal a periodic pattern away from finitely many sites
(:class:`GaugeZeroForm`), so ``h cup h^-1`` is the identity everywhere.
"""

from __future__ import annotations

import itertools
from typing import Mapping

from .cochains import Cochain, coboundary, cup, evaluate_local
from .errors import PreconditionError, SingularMatrixError
from .hodge import double_star, star
from .lattice_complex import MASKS_BY_DEGREE, NAXES, UNIT, MultiIndex, add, axes_of, sub
from .matrix_algebra import DEFAULT_TOL, EXACT, Matrix2, check_mode, is_su2_algebra

V26 = "v26"
V40 = "v40"
YM_VARIANTS = (V26, V40)

ORIGIN: MultiIndex = (0, 0, 0, 0)
PARITY_PERIOD: MultiIndex = (2, 2, 2, 2)

# all index pairs i != j; sigma_ij lowers both components
AXIS_PAIRS = tuple(itertools.combinations(range(NAXES), 2))


# -- connections -----------------------------------------------------------------------


def is_su2_valued(form: Cochain, tol: float = DEFAULT_TOL) -> bool:
    """True when every coefficient (entries and background) lies in su(2)."""
    values = itertools.chain(form.entries.values(), form.background_values().values())
    return all(is_su2_algebra(v, tol) for v in values)


def check_connection(a: Cochain, *, require_su2: bool = False) -> Cochain:
    if not isinstance(a, Cochain):
        raise TypeError(f"expected a Cochain, got {type(a).__name__}")
    if a.degree != 1 and not a.is_zero():
        raise PreconditionError(f"a connection is a 1-form, got degree {a.degree}")
    if require_su2 and not is_su2_valued(a):
        raise PreconditionError("connection has coefficients outside su(2)")
    return a


def _check_degree(form: Cochain, degree: int, what: str):
    if form.degree != degree and not form.is_zero():
        raise PreconditionError(f"{what} must have degree {degree}, got {form.degree}")


# -- group-valued 0-forms ---------------------------------------------------------------


class GaugeZeroForm:
    """An invertible 0-form with total support and its cached inverse."""

    __slots__ = ("form", "inverse_form")

    def __init__(self, form: Cochain, *, _inverse: Cochain | None = None):
        if form.degree != 0:
            raise PreconditionError(f"a gauge is a 0-form, got degree {form.degree}")
        if not form.has_background:
            raise SingularMatrixError("a gauge 0-form is zero away from its entries, hence not invertible")
        if _inverse is None:
            values = itertools.chain(form.entries.values(), form.background_values().values())
            if not all(v.is_invertible() for v in values):
                raise SingularMatrixError("gauge 0-form has a singular coefficient")
            _inverse = form.map(lambda v: v.inverse())
        self.form = form
        self.inverse_form = _inverse

    # constructors

    @classmethod
    def identity(cls, mode: str = EXACT) -> "GaugeZeroForm":
        return cls.constant(Matrix2.identity(check_mode(mode)))

    @classmethod
    def constant(cls, h: Matrix2) -> "GaugeZeroForm":
        return cls(Cochain.constant(0, {0: h}))

    @classmethod
    def parity(cls, h_even: Matrix2, h_odd: Matrix2) -> "GaugeZeroForm":
        """``h_even`` where the coordinate sum of ``k`` is even, ``h_odd`` where it is odd."""
        values = {
            (r, 0): (h_even if sum(r) % 2 == 0 else h_odd)
            for r in itertools.product(range(2), repeat=NAXES)
        }
        return cls(Cochain(0, background=values, period=PARITY_PERIOD, mode=h_even.mode))

    @classmethod
    def periodic(cls, period: MultiIndex, values: Mapping[MultiIndex, Matrix2], mode: str | None = None) -> "GaugeZeroForm":
        """A pattern repeating with ``period``; ``values`` maps residues to matrices."""
        bg = {(tuple(r), 0): v for r, v in values.items()}
        return cls(Cochain(0, background=bg, period=tuple(period), mode=mode))

    @classmethod
    def explicit(
        cls, values: Mapping[MultiIndex, Matrix2], mode: str = EXACT, *, background: "GaugeZeroForm | None" = None
    ) -> "GaugeZeroForm":
        """Listed values at finitely many sites on top of ``background`` (identity by default)."""
        base = background if background is not None else cls.identity(mode)
        entries = {(tuple(k), 0): v for k, v in values.items()}
        bg = base.form.background_values()
        return cls(Cochain(0, entries, background=bg, period=base.form.period, mode=mode))

    # behaviour

    @property
    def mode(self) -> str:
        return self.form.mode

    @property
    def inverse(self) -> "GaugeZeroForm":
        return GaugeZeroForm(self.inverse_form, _inverse=self.form)

    def value(self, k: MultiIndex) -> Matrix2:
        return self.form.value(tuple(k), 0)

    def __mul__(self, other: "GaugeZeroForm") -> "GaugeZeroForm":
        """Pointwise product, i.e. the cup product of 0-forms."""
        if not isinstance(other, GaugeZeroForm):
            return NotImplemented
        return GaugeZeroForm(cup(self.form, other.form), _inverse=cup(other.inverse_form, self.inverse_form))

    def __eq__(self, other):
        if not isinstance(other, GaugeZeroForm):
            return NotImplemented
        return self.form == other.form

    def __hash__(self):
        return hash(self.form)

    def __repr__(self):
        return f"GaugeZeroForm({self.form!r})"


def make_diagonal_gauge(h_even: Matrix2, h_odd: Matrix2) -> GaugeZeroForm:
    """Gauge constant on each parity class of ``k_1 + k_2 + k_3 + k_4``."""
    if h_even.mode != h_odd.mode:
        raise PreconditionError("h_even and h_odd must share a scalar mode")
    for name, h in (("h_even", h_even), ("h_odd", h_odd)):
        if not h.is_invertible():
            raise SingularMatrixError(f"{name} is singular")
    return GaugeZeroForm.parity(h_even, h_odd)


def diagonal_condition_violation(h: GaugeZeroForm) -> tuple[MultiIndex, int, int] | None:
    """A site ``k`` and axes ``i < j`` with ``h_k != h_{sigma_ij k}``, or None.

    The periodic pattern is checked on one period; finitely many deviations
    from it are checked at their own sites against both neighbours along each
    double shift, which suffices because the chain through a deviating site
    eventually reaches unmodified sites.
    """
    form = h.form
    period = form.period
    for r in itertools.product(*(range(p) for p in period)):
        for i, j in AXIS_PAIRS:
            if form.value(r, 0) != form.value(sub(r, add(UNIT[i], UNIT[j])), 0):
                return r, i, j
    for k in sorted(form.sites()):
        for i, j in AXIS_PAIRS:
            step = add(UNIT[i], UNIT[j])
            if form.value(k, 0) != form.value(sub(k, step), 0):
                return k, i, j
            if form.value(k, 0) != form.value(add(k, step), 0):
                return add(k, step), i, j
    return None


def satisfies_diagonal_condition(h: GaugeZeroForm) -> bool:
    """Whether ``h_k = h_{sigma_ij k}`` for every site and every pair of axes."""
    return diagonal_condition_violation(h) is None


# -- curvature ----------------------------------------------------------------------------


def curvature(a: Cochain) -> Cochain:
    """``F = dA + A cup A``."""
    check_connection(a)
    if a.is_zero():
        return Cochain.zero(2, a.mode)
    return coboundary(a) + cup(a, a)


_BACK_ONE = (ORIGIN,) + tuple(tuple(-x for x in u) for u in UNIT)


def _reach_back(mask):
    return _BACK_ONE


def curvature_components(a: Cochain) -> Cochain:
    """Curvature assembled from the component formula on each pair ``i < r``.

    ``F^{ir}_k = D_i A^r_k - D_r A^i_k + A^i_k A^r_{tau_i k} - A^r_k A^i_{tau_r k}``
    with ``D_i`` the forward difference along axis ``i``.
    """
    check_connection(a)
    pairs = [(m, *axes_of(m)) for m in MASKS_BY_DEGREE[2]]

    def compute(k, srcs):
        (conn,) = srcs
        out = []
        for m, i, r in pairs:
            ui, ur = 1 << i, 1 << r
            ki, kr = add(k, UNIT[i]), add(k, UNIT[r])
            ai, ar = conn.value(k, ui), conn.value(k, ur)
            v = (conn.value(ki, ur) - ar) - (conn.value(kr, ui) - ai)
            v = v + ai * conn.value(ki, ur) - ar * conn.value(kr, ui)
            out.append((m, v))
        return out

    return evaluate_local(2, a.mode, (a,), compute, (_reach_back,))


# -- gauge action -------------------------------------------------------------------------


def gauge_transform_connection(a: Cochain, h: GaugeZeroForm) -> Cochain:
    """``A' = h cup d(h^-1) + h cup A cup h^-1``."""
    check_connection(a)
    pure = cup(h.form, coboundary(h.inverse_form))
    if a.is_zero():
        return pure
    return pure + cup(h.form, a, h.inverse_form)


def gauge_transform_components(a: Cochain, h: GaugeZeroForm) -> Cochain:
    """The same transformation from ``A'^j_k = h_k (hi_{tau_j k} - hi_k) + h_k A^j_k hi_{tau_j k}``."""
    check_connection(a)
    if a.is_zero():
        a = Cochain.zero(1, h.mode)
    masks = MASKS_BY_DEGREE[1]

    def compute(k, srcs):
        conn, g, gi = srcs
        hk, hik = g.value(k, 0), gi.value(k, 0)
        out = []
        for m in masks:
            nxt = gi.value(add(k, UNIT[axes_of(m)[0]]), 0)
            out.append((m, hk * (nxt - hik) + hk * conn.value(k, m) * nxt))
        return out

    return evaluate_local(1, a.mode, (a, h.form, h.inverse_form), compute,
                          (lambda m: (ORIGIN,), _reach_back, _reach_back))


def conjugate(omega: Cochain, h: GaugeZeroForm) -> Cochain:
    """``h cup omega cup h^-1``."""
    return cup(h.form, omega, h.inverse_form)


def gauge_identity_residual(h: GaugeZeroForm) -> Cochain:
    """``dh cup h^-1 + h cup d(h^-1)``, which vanishes for every invertible ``h``."""
    return cup(coboundary(h.form), h.inverse_form) + cup(h.form, coboundary(h.inverse_form))


def invariant_one_form(a: Cochain, g: GaugeZeroForm) -> Cochain:
    """``omega = g^-1 cup dg + g^-1 cup A cup g``, unchanged under ``(A, g) -> (A', h cup g)``."""
    check_connection(a)
    out = cup(g.inverse_form, coboundary(g.form))
    if a.is_zero():
        return out
    return out + cup(g.inverse_form, a, g.form)


# -- covariant derivative and field equations ------------------------------------------


def covariant_differential(a: Cochain, omega: Cochain) -> Cochain:
    """``d_A omega = d omega + A cup omega + (-1)^(r+1) omega cup A`` for an r-form omega."""
    check_connection(a)
    out = coboundary(omega)
    if a.is_zero():
        return out
    if omega.degree % 2:
        return out + cup(a, omega) + cup(omega, a)
    return out + cup(a, omega) - cup(omega, a)


def bianchi_residual(a: Cochain) -> Cochain:
    """``dF + A cup F - F cup A`` with ``F`` the curvature of ``A``; identically zero."""
    return covariant_differential(a, curvature(a))


def ym_residual(a: Cochain, variant: str = V26, f: Cochain | None = None) -> Cochain:
    """Left-hand side of the discrete Yang-Mills equation.

    ``v26``: ``d*F + A cup *F - *F cup A``.
    ``v40``: ``d*F + A cup *F - *F cup **A``, the form produced by the adjoint
    of ``d_A``.  ``f`` defaults to the curvature of ``a``.
    """
    check_connection(a)
    if variant not in YM_VARIANTS:
        raise ValueError(f"unknown Yang-Mills variant {variant!r}; expected one of {YM_VARIANTS}")
    if f is None:
        f = curvature(a)
    _check_degree(f, 2, "field strength")
    g = star(f if f.degree == 2 else Cochain.zero(2, f.mode))
    out = coboundary(g)
    if a.is_zero():
        return out
    right = a if variant == V26 else double_star(a)
    return out + cup(a, g) - cup(g, right)


# -- star versus gauge multiplication ---------------------------------------------------


def lemma1_residual(h: Cochain, f: Cochain) -> Cochain:
    """``*(h cup f) - h cup *f`` for a 0-form ``h``.

    The star moves a p-cell by its edge offset ``M``, so the two terms read
    ``h`` at ``k`` and at ``k + offset(M)``.  The residual vanishes for every
    p-form exactly when ``h`` is invariant under all those shifts (any ``h``
    for p = 0, constant ``h`` for p = 1).
    """
    _check_degree(h, 0, "h")
    return star(cup(h, f)) - cup(h, star(f))


def lemma2_residual(f: Cochain, h: Cochain | GaugeZeroForm) -> Cochain:
    """``*(f cup h) - *f cup h`` for a 2-form ``f`` and 0-form ``h``.

    Zero for all ``f`` exactly when ``h`` is constant along every double shift.
    """
    if isinstance(h, GaugeZeroForm):
        h = h.form
    _check_degree(h, 0, "h")
    return star(cup(f, h)) - cup(star(f), h)
