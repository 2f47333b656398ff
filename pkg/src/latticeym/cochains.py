"""Matrix-valued cochains on K(4): pairing, coboundary and cup product.

A :class:`Cochain` of degree ``p`` assigns a :class:`~latticeym.matrix_algebra.Matrix2`
to every basis element ``(k, mask)`` with ``mask`` of degree ``p``.  The value
is the sum of two parts:

* a *background* that is periodic in ``k`` with period ``period`` (absent for
  ordinary finitely supported forms), and
* finitely many *entries* that override the background.

Entries equal to the background are pruned, so two cochains are equal exactly
when they agree as functions.  Backgrounds cover the group-valued 0-forms
(identity outside a finite set, or constant on parity classes) and fields on
a periodic lattice, which are represented by their periodic lift to Z^4.
"""

from __future__ import annotations

import itertools
import math
from types import MappingProxyType
from typing import Callable, Iterable, Mapping

from .lattice_complex import (
    ALL_ONES,
    FULL_MASK,
    MASKS_BY_DEGREE,
    NAXES,
    OFFSETS,
    UNIT,
    Chain,
    Key,
    MultiIndex,
    add,
    boundary_sign,
    sub,
)
from .matrix_algebra import DEFAULT_TOL, EXACT, FLOAT, GaussianRational, Matrix2, ModeError, check_mode

ONE_PERIOD: MultiIndex = (1, 1, 1, 1)


def _cup_sign(m: int, n: int) -> int:
    # edges of the left factor pass the right factor's edges on earlier axes
    count = 0
    for a in range(NAXES):
        if m >> a & 1:
            count += (n & ((1 << a) - 1)).bit_count()
    return -1 if count & 1 else 1


CUP_SIGN = tuple(tuple(_cup_sign(m, n) for n in range(16)) for m in range(16))

# PARTNERS[m][q]: masks n of degree q disjoint from m, with a flag for a negative sign
PARTNERS = tuple(
    tuple(
        tuple((n, CUP_SIGN[m][n] < 0) for n in MASKS_BY_DEGREE[q] if not m & n)
        for q in range(NAXES + 1)
    )
    for m in range(16)
)

# COBOUNDARY_STEPS[m]: (axis j not in m, sign, m | 1<<j)
COBOUNDARY_STEPS = tuple(
    tuple((j, boundary_sign(m, j), m | 1 << j) for j in range(NAXES) if not m >> j & 1)
    for m in range(16)
)


def _lcm_period(periods: Iterable[MultiIndex]) -> MultiIndex:
    out = [1, 1, 1, 1]
    for p in periods:
        for i in range(NAXES):
            out[i] = math.lcm(out[i], p[i])
    return tuple(out)  # type: ignore[return-value]


def _residues(period: MultiIndex):
    return itertools.product(*(range(p) for p in period))


class Cochain:
    """A degree-``p`` matrix-valued form; immutable once built."""

    __slots__ = ("degree", "mode", "_entries", "_bg", "_period")

    def __init__(
        self,
        degree: int,
        entries: Mapping[Key, Matrix2] | None = None,
        *,
        mode: str | None = None,
        background: Mapping[tuple[MultiIndex, int], Matrix2] | None = None,
        period: MultiIndex = ONE_PERIOD,
    ):
        """Build from ``{(k, mask): matrix}`` entries and an optional periodic background.

        ``background`` maps ``(residue, mask)`` to the value taken at every site
        ``k`` with ``k mod period == residue``; unlisted residues are zero.
        """
        if not 0 <= degree:
            raise ValueError(f"negative degree {degree}")
        entries = dict(entries or {})
        background = dict(background or {})
        if mode is None:
            first = next(iter(itertools.chain(entries.values(), background.values())), None)
            mode = first.mode if first is not None else EXACT
        check_mode(mode)
        period = tuple(int(p) for p in period)
        if len(period) != NAXES or any(p < 1 for p in period):
            raise ValueError(f"bad period {period}")
        zero = Matrix2.zero(mode)

        bg: dict[int, dict[MultiIndex, Matrix2]] = {}
        for (r, m), v in background.items():
            self._validate(degree, mode, m, v)
            r = tuple(int(x) % p for x, p in zip(r, period))
            if not v.is_zero():
                bg.setdefault(m, {})[r] = v
        for m, table in bg.items():
            for r in _residues(period):
                table.setdefault(r, zero)

        clean: dict[Key, Matrix2] = {}
        for (k, m), v in entries.items():
            self._validate(degree, mode, m, v)
            k = tuple(int(x) for x in k)
            if len(k) != NAXES:
                raise ValueError(f"multi-index {k} does not have four components")
            clean[(k, m)] = v
        self._init(degree, mode, clean, bg, period)

    @staticmethod
    def _validate(degree, mode, m, v):
        if not isinstance(v, Matrix2):
            raise TypeError(f"coefficient {v!r} is not a Matrix2")
        if v.mode != mode:
            raise ModeError(f"{v.mode} coefficient in a {mode} cochain")
        if not 0 <= m <= FULL_MASK or m.bit_count() != degree:
            raise ValueError(f"mask {m:#06b} does not have degree {degree}")

    def _init(self, degree, mode, entries, bg, period):
        # shared by the public constructor and the internal fast constructor
        self.degree = degree
        self.mode = mode
        if bg:
            bg, period = _reduce_period(bg, period)
        else:
            period = ONE_PERIOD
        self._bg = bg
        self._period = period
        if bg:
            entries = {key: v for key, v in entries.items() if v != self._bg_value(*key)}
        else:
            entries = {key: v for key, v in entries.items() if not v.is_zero()}
        self._entries = entries

    @classmethod
    def _make(cls, degree, mode, entries, bg=None, period=ONE_PERIOD) -> "Cochain":
        obj = object.__new__(cls)
        obj._init(degree, mode, entries, bg or {}, period)
        return obj

    # -- constructors ----------------------------------------------------------

    @classmethod
    def zero(cls, degree: int, mode: str = EXACT) -> "Cochain":
        return cls._make(degree, check_mode(mode), {})

    @classmethod
    def basis(cls, k: MultiIndex, mask: int, coeff: Matrix2) -> "Cochain":
        """``coeff`` times the basis cochain dual to ``(k, mask)``."""
        return cls(mask.bit_count(), {(tuple(k), mask): coeff}, mode=coeff.mode)

    @classmethod
    def constant(cls, degree: int, values: Mapping[int, Matrix2]) -> "Cochain":
        """Translation-invariant form taking ``values[mask]`` at every site."""
        return cls(degree, background={((0, 0, 0, 0), m): v for m, v in values.items()},
                   mode=_mode_of(values.values()))

    @classmethod
    def periodic(
        cls, degree: int, extents: MultiIndex, values: Mapping[Key, Matrix2], mode: str | None = None
    ) -> "Cochain":
        """A field on the periodic lattice Z^4 / extents, stored as its periodic lift.

        ``values`` maps ``(k, mask)`` with ``k`` taken modulo ``extents``; unlisted
        sites are zero.
        """
        return cls(degree, background=values, period=tuple(extents), mode=mode)

    # -- access ----------------------------------------------------------------

    def _bg_value(self, k, m):
        table = self._bg.get(m)
        if table is None:
            return Matrix2.zero(self.mode)
        p = self._period
        return table[(k[0] % p[0], k[1] % p[1], k[2] % p[2], k[3] % p[3])]

    def value(self, k: MultiIndex, mask: int) -> Matrix2:
        v = self._entries.get((k, mask))
        if v is not None:
            return v
        return self._bg_value(k, mask)

    def __getitem__(self, key: Key) -> Matrix2:
        k, m = key
        return self.value(tuple(k), m)

    @property
    def entries(self) -> Mapping[Key, Matrix2]:
        """The finitely many values that differ from the background."""
        return MappingProxyType(self._entries)

    @property
    def period(self) -> MultiIndex:
        return self._period

    @property
    def has_background(self) -> bool:
        return bool(self._bg)

    @property
    def is_finite(self) -> bool:
        """True when the form is finitely supported."""
        return not self._bg

    def background_values(self) -> dict[tuple[MultiIndex, int], Matrix2]:
        return {(r, m): v for m, table in self._bg.items() for r, v in table.items()}

    def sites(self) -> set[MultiIndex]:
        return {k for k, _ in self._entries}

    def _bg_only(self) -> "Cochain":
        obj = object.__new__(Cochain)
        obj.degree, obj.mode = self.degree, self.mode
        obj._entries, obj._bg, obj._period = {}, self._bg, self._period
        return obj

    def is_zero(self) -> bool:
        return not self._entries and not self._bg

    def __bool__(self):
        return not self.is_zero()

    def __len__(self):
        return len(self._entries)

    # -- comparison ------------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Cochain):
            return NotImplemented
        if self.mode != other.mode:
            return False
        if self.is_zero() and other.is_zero():
            return True
        if self.degree != other.degree:
            return False
        return self._entries == other._entries and _bg_equal(self, other, None)

    def __hash__(self):
        return hash((self.degree, frozenset(self._entries.items()), self._period,
                     frozenset((m, frozenset(t.items())) for m, t in self._bg.items())))

    def allclose(self, other: "Cochain", tol: float = DEFAULT_TOL) -> bool:
        """Entrywise agreement within ``tol`` (exact equality in exact mode)."""
        if self.mode == EXACT and other.mode == EXACT:
            return self == other
        return (self - other).max_norm() <= tol

    def max_norm(self) -> float:
        """Largest entrywise modulus over all coefficients."""
        vals = itertools.chain(self._entries.values(), *(t.values() for t in self._bg.values()))
        return max((v.max_abs() for v in vals), default=0.0)

    def sum_norm(self) -> float:
        """Sum of entrywise moduli over the entries plus one period of the background."""
        total = 0.0
        for v in itertools.chain(self._entries.values(), *(t.values() for t in self._bg.values())):
            for row in v.entries():
                for z in row:
                    total += abs(z)
        return total

    # -- linear structure ------------------------------------------------------

    def _combine(self, other: "Cochain", op: Callable[[Matrix2, Matrix2], Matrix2]) -> "Cochain":
        if not isinstance(other, Cochain):
            return NotImplemented
        if self.mode != other.mode:
            raise ModeError(f"cannot combine {self.mode} and {other.mode} cochains")
        if self.degree != other.degree:
            if other.is_zero():
                other = Cochain.zero(self.degree, self.mode)
            elif self.is_zero():
                self = Cochain.zero(other.degree, other.mode)
            else:
                raise ValueError(f"cannot add forms of degree {self.degree} and {other.degree}")
        if not self._bg and not other._bg:
            out = dict(self._entries)
            zero = Matrix2.zero(self.mode)
            for key, v in other._entries.items():
                out[key] = op(out.get(key, zero), v)
            return Cochain._make(self.degree, self.mode, out)
        masks = MASKS_BY_DEGREE[self.degree] if self.degree <= NAXES else ()

        def compute(k, srcs):
            a, b = srcs
            return [(m, op(a.value(k, m), b.value(k, m))) for m in masks]

        return evaluate_local(self.degree, self.mode, (self, other), compute,
                              (_SAME_SITE, _SAME_SITE))

    def __add__(self, other):
        return self._combine(other, lambda a, b: a + b)

    def __sub__(self, other):
        return self._combine(other, lambda a, b: a - b)

    def __neg__(self):
        return self.map(lambda v: -v)

    def scale(self, s) -> "Cochain":
        """Multiply every coefficient by the scalar ``s``."""
        s = GaussianRational.coerce(s) if self.mode == EXACT else complex(s)
        if s == 1:
            return self
        if s == -1:
            return -self
        return self.map(lambda v: v * s)

    def map(self, f: Callable[[Matrix2], Matrix2]) -> "Cochain":
        """Apply ``f`` to every coefficient; ``f`` must send zero to zero unless a background exists."""
        entries = {key: f(v) for key, v in self._entries.items()}
        bg = {m: {r: f(v) for r, v in t.items()} for m, t in self._bg.items()}
        return Cochain._make(self.degree, self.mode, entries, bg, self._period)

    def __repr__(self):
        bits = [f"degree={self.degree}", f"mode={self.mode}", f"entries={len(self._entries)}"]
        if self._bg:
            bits.append(f"period={self._period}")
        return f"Cochain({', '.join(bits)})"


def _mode_of(values) -> str | None:
    for v in values:
        return v.mode
    return None


def _bg_equal(a: Cochain, b: Cochain, tol) -> bool:
    if not a._bg and not b._bg:
        return True
    period = _lcm_period((a._period, b._period))
    for m in set(a._bg) | set(b._bg):
        for r in _residues(period):
            if a._bg_value(r, m) != b._bg_value(r, m):
                return False
    return True


def _reduce_period(bg, period):
    """Shrink each axis of ``period`` to the smallest divisor the background respects."""
    period = list(period)
    for axis in range(NAXES):
        p = period[axis]
        for q in range(1, p):
            if p % q:
                continue
            if all(
                v == table[r[:axis] + (r[axis] % q,) + r[axis + 1:]]
                for table in bg.values()
                for r, v in table.items()
            ):
                period[axis] = q
                bg = {
                    m: {r: v for r, v in table.items() if r[axis] < q} for m, table in bg.items()
                }
                break
    return bg, tuple(period)


# -- generic local evaluation ------------------------------------------------------


def _SAME_SITE(mask):
    return ((0, 0, 0, 0),)


def evaluate_local(
    degree: int,
    mode: str,
    sources: tuple[Cochain, ...],
    compute: Callable[[MultiIndex, tuple[Cochain, ...]], Iterable[tuple[int, Matrix2]]],
    reach: tuple[Callable[[int], Iterable[MultiIndex]], ...],
) -> Cochain:
    """Evaluate a local operator on cochains that may carry backgrounds.

    ``compute(k, sources)`` returns ``(mask, value)`` for every output mask at
    site ``k``, reading inputs only through ``source.value``.  ``reach[i](mask)``
    lists offsets ``o`` such that an entry of ``sources[i]`` at ``(k, mask)``
    can change the output at ``k + o``.  The background of the result is
    obtained by evaluating on background-only copies of the inputs.
    """
    zero = Matrix2.zero(mode)
    bg: dict[int, dict[MultiIndex, Matrix2]] = {}
    period = ONE_PERIOD
    if any(s._bg for s in sources):
        period = _lcm_period(s._period for s in sources if s._bg)
        views = tuple(s._bg_only() for s in sources)
        for r in _residues(period):
            for m, v in compute(r, views):
                if not v.is_zero():
                    bg.setdefault(m, {})[r] = v
        for table in bg.values():
            for r in _residues(period):
                table.setdefault(r, zero)

    candidates: set[MultiIndex] = set()
    for s, offsets in zip(sources, reach):
        for k, m in s._entries:
            for o in offsets(m):
                candidates.add(add(k, o))
    if mode == FLOAT:
        candidates = sorted(candidates)

    entries: dict[Key, Matrix2] = {}
    for k in candidates:
        for m, v in compute(k, sources):
            entries[(k, m)] = v
    return Cochain._make(degree, mode, entries, bg, period)


# -- pairing -----------------------------------------------------------------------


def pairing(chain: Chain, form: Cochain) -> Matrix2:
    """<c, phi>: sum of chain coefficients times the matching form coefficients."""
    total = Matrix2.zero(form.mode)
    for (k, m), c in sorted(chain.items()):
        if m.bit_count() != form.degree:
            continue
        v = form.value(k, m)
        if not v.is_zero():
            total = total + v * c
    return total


# -- coboundary ----------------------------------------------------------------------


def _sorted_items(form: Cochain):
    if form.mode == FLOAT:
        return sorted(form._entries.items(), key=lambda kv: kv[0])
    return form._entries.items()


def coboundary(form: Cochain) -> Cochain:
    """d^c, the coboundary dual to the chain boundary.

    The value on ``(k, M | {j})`` collects ``(-1)^{|M below j|}`` times
    ``phi(tau_j k, M) - phi(k, M)`` over the axes ``j`` of the new mask.
    """
    p = form.degree
    if p >= NAXES:
        return Cochain.zero(p + 1, form.mode)
    if form._bg:
        return _coboundary_general(form)
    # accumulate plus and minus contributions separately to avoid negations
    plus: dict[Key, Matrix2] = {}
    minus: dict[Key, Matrix2] = {}
    for (k, m), a in _sorted_items(form):
        for j, s, big in COBOUNDARY_STEPS[m]:
            here = (k, big)
            u = UNIT[j]
            lower = ((k[0] - u[0], k[1] - u[1], k[2] - u[2], k[3] - u[3]), big)
            if s < 0:
                here, lower = lower, here
            prev = minus.get(here)
            minus[here] = a if prev is None else prev + a
            prev = plus.get(lower)
            plus[lower] = a if prev is None else prev + a
    out = plus
    zero = Matrix2.zero(form.mode)
    for key, v in (sorted(minus.items()) if form.mode == FLOAT else minus.items()):
        out[key] = out.get(key, zero) - v
    return Cochain._make(p + 1, form.mode, out)


def _coboundary_general(form: Cochain) -> Cochain:
    p = form.degree
    zero = Matrix2.zero(form.mode)
    steps = [
        (big, [(j, boundary_sign(big & ~(1 << j), j), big & ~(1 << j)) for j in range(NAXES) if big >> j & 1])
        for big in MASKS_BY_DEGREE[p + 1]
    ]

    def compute(k, srcs):
        (phi,) = srcs
        out = []
        for big, parts in steps:
            acc = zero
            for j, s, m in parts:
                diff = phi.value(add(k, UNIT[j]), m) - phi.value(k, m)
                acc = acc + diff if s > 0 else acc - diff
            out.append((big, acc))
        return out

    def reach(m):
        return ((0, 0, 0, 0),) + tuple(tuple(-x for x in UNIT[j]) for j, _, _ in COBOUNDARY_STEPS[m])

    return evaluate_local(p + 1, form.mode, (form,), compute, (reach,))


# -- cup product -----------------------------------------------------------------------


def cup(*forms: Cochain) -> Cochain:
    """Cup product, folded left to right for more than two factors."""
    if not forms:
        raise TypeError("cup needs at least one form")
    out = forms[0]
    for f in forms[1:]:
        out = _cup2(out, f)
    return out


def _cup2(phi: Cochain, psi: Cochain) -> Cochain:
    if phi.mode != psi.mode:
        raise ModeError(f"cannot multiply {phi.mode} and {psi.mode} cochains")
    p, q = phi.degree, psi.degree
    if p + q > NAXES:
        return Cochain.zero(p + q, phi.mode)
    if phi._bg or psi._bg:
        return _cup_general(phi, psi)
    plus: dict[Key, Matrix2] = {}
    minus: dict[Key, Matrix2] = {}
    pe = psi._entries.get
    for (k, m), a in _sorted_items(phi):
        o = OFFSETS[m]
        kk = (k[0] + o[0], k[1] + o[1], k[2] + o[2], k[3] + o[3])
        for n, negative in PARTNERS[m][q]:
            b = pe((kk, n))
            if b is None:
                continue
            acc = minus if negative else plus
            key = (k, m | n)
            prev = acc.get(key)
            acc[key] = a * b if prev is None else prev + a * b
    out = plus
    if minus:
        zero = Matrix2.zero(phi.mode)
        for key, v in (sorted(minus.items()) if phi.mode == FLOAT else minus.items()):
            out[key] = out.get(key, zero) - v
    return Cochain._make(p + q, phi.mode, out)


def _cup_general(phi: Cochain, psi: Cochain) -> Cochain:
    p, q = phi.degree, psi.degree
    zero = Matrix2.zero(phi.mode)
    splits = []
    for big in MASKS_BY_DEGREE[p + q]:
        parts = [(m, big & ~m, CUP_SIGN[m][big & ~m]) for m in MASKS_BY_DEGREE[p] if m & big == m]
        splits.append((big, parts))

    def compute(k, srcs):
        f, g = srcs
        out = []
        for big, parts in splits:
            acc = zero
            for m, n, s in parts:
                a = f.value(k, m)
                if a.is_zero():
                    continue
                b = g.value(add(k, OFFSETS[m]), n)
                if b.is_zero():
                    continue
                acc = acc + a * b if s > 0 else acc - a * b
            out.append((big, acc))
        return out

    def reach_right(n):
        return tuple(tuple(-x for x in OFFSETS[m]) for m in MASKS_BY_DEGREE[p] if not m & n)

    return evaluate_local(p + q, phi.mode, (phi, psi), compute, (_SAME_SITE, reach_right))


# -- helpers ---------------------------------------------------------------------------


def translate(form: Cochain, v: MultiIndex) -> Cochain:
    """The form ``g`` with ``g(k + v) = form(k)``."""
    v = tuple(v)
    entries = {(add(k, v), m): a for (k, m), a in form._entries.items()}
    p = form._period
    bg = {
        m: {tuple((r[i] + v[i]) % p[i] for i in range(NAXES)): a for r, a in t.items()}
        for m, t in form._bg.items()
    }
    return Cochain._make(form.degree, form.mode, entries, bg, p)


def shift_down(form: Cochain) -> Cochain:
    """The form whose coefficient at ``k`` is the coefficient of ``form`` at sigma k."""
    return translate(form, ALL_ONES)


def restrict(form: Cochain, sites) -> Cochain:
    """Keep only the entries at the given sites (finite forms only)."""
    if form._bg:
        raise ValueError("cannot restrict a form with a periodic background")
    return Cochain._make(form.degree, form.mode,
                         {key: v for key, v in form._entries.items() if key[0] in sites})


def pointwise(form: Cochain, f: Callable[[Matrix2], Matrix2]) -> Cochain:
    return form.map(f)
