"""Naive reference implementations for differential testing.

Nothing here reuses the sign tables, offset tables or index helpers of the
fast modules.  A basis element is a tuple of four factors ``(kind, index)``
with ``kind`` either ``"x"`` (point) or ``"e"`` (edge); the first factor is
time.  Boundary, cup product and star are computed from the defining
recursions on these tuples.  Results are handed back as :class:`Cochain`
objects only so that they can be compared with the fast paths.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

from .cochains import Cochain
from .errors import PreconditionError
from .lattice_complex import Box, Chain
from .matrix_algebra import Matrix2

X, E = "x", "e"
DIM = 4

Factor = tuple[str, int]
Basis = tuple[Factor, ...]


# -- conversions at the boundary of the module ----------------------------------------------


def to_factors(k, mask: int) -> Basis:
    return tuple((E if mask >> a & 1 else X, k[a]) for a in range(DIM))


def from_factors(b: Basis):
    k = tuple(idx for _, idx in b)
    mask = sum(1 << a for a, (kind, _) in enumerate(b) if kind == E)
    return k, mask


def dimension(b: Basis) -> int:
    return sum(1 for kind, _ in b if kind == E)


def _finite_terms(form: Cochain):
    if form.has_background:
        raise PreconditionError("oracles handle finitely supported forms only")
    return [(to_factors(k, m), a) for (k, m), a in sorted(form.entries.items())]


def _build(degree: int, mode: str, acc: dict) -> Cochain:
    entries = {}
    for b, v in acc.items():
        entries[from_factors(b)] = v
    return Cochain(degree, entries, mode=mode)


# -- boundary ---------------------------------------------------------------------------------


def _boundary_1d(f: Factor) -> dict[Basis, int]:
    kind, idx = f
    if kind == X:
        return {}
    return {((X, idx + 1),): 1, ((X, idx),): -1}


def boundary_basis(b: Basis) -> dict[Basis, int]:
    """Boundary of a product of factors: d(c_p (x) c_q) = dc_p (x) c_q + (-1)^p c_p (x) dc_q."""
    if len(b) == 1:
        return _boundary_1d(b[0])
    head, last = b[:-1], b[-1:]
    out: dict[Basis, int] = {}
    for h, c in boundary_basis(head).items():
        out[h + last] = out.get(h + last, 0) + c
    sign = -1 if dimension(head) % 2 else 1
    for t, c in _boundary_1d(last[0]).items():
        out[head + t] = out.get(head + t, 0) + sign * c
    return {key: c for key, c in out.items() if c}


def oracle_boundary(chain: Chain) -> Chain:
    acc: dict = {}
    for (k, m), c in chain.items():
        for b, s in boundary_basis(to_factors(k, m)).items():
            key = from_factors(b)
            acc[key] = acc.get(key, 0) + s * c
    return Chain(acc)


# -- coboundary via duality ---------------------------------------------------------------------


def support_region(form: Cochain, below: int = 1, above: int = 0) -> Box:
    """Bounding box of the support, grown by ``below``/``above`` cells."""
    sites = [k for k, _ in form.entries]
    if not sites:
        return Box((1, 1, 1, 1), (0, 0, 0, 0))
    lo = [min(k[a] for k in sites) - below for a in range(DIM)]
    hi = [max(k[a] for k in sites) + above for a in range(DIM)]
    return Box(tuple(h - l + 1 for l, h in zip(lo, hi)), tuple(lo))


def oracle_coboundary(phi: Cochain, region: Box | None = None) -> Cochain:
    """The coboundary from ``<dc, phi> = <c, d phi>`` over every basis chain ``c`` in ``region``.

    ``region`` must contain each support site and its neighbour one step down
    on every axis, since those are the only places ``d phi`` can be nonzero.
    """
    terms = _finite_terms(phi)
    if region is None:
        region = support_region(phi)
    for b, _ in terms:
        k, _ = from_factors(b)
        lows = [k] + [tuple(k[i] - (i == a) for i in range(DIM)) for a in range(DIM)]
        if not all(s in region for s in lows):
            raise PreconditionError(f"region {region} does not cover site {k} with a one-cell margin below")
    values = {b: a for b, a in terms}
    zero = Matrix2.zero(phi.mode)
    p = phi.degree
    acc = {}
    for k in region.sites():
        for kinds in itertools.product((X, E), repeat=DIM):
            if kinds.count(E) != p + 1:
                continue
            c = tuple(zip(kinds, k))
            total = zero
            for t, s in sorted(boundary_basis(c).items()):
                v = values.get(t)
                if v is not None:
                    total = total + v if s > 0 else total - v
            if not total.is_zero():
                acc[c] = total
    return _build(p + 1, phi.mode, acc)


# -- cup product ------------------------------------------------------------------------------


def _cup_1d(s: Factor, t: Factor) -> Factor | None:
    (ks, i), (kt, j) = s, t
    if ks == X and kt == X and i == j:
        return (X, i)
    if ks == E and kt == X and j == i + 1:
        return (E, i)
    if ks == X and kt == E and i == j:
        return (E, i)
    return None


def cup_basis(s: Basis, t: Basis) -> tuple[int, Basis] | None:
    """Cup product of basis elements by peeling the last factor.

    ``(s' (x) a) cup (t' (x) b) = Q (s' cup t') (x) (a cup b)`` with ``Q = -1``
    exactly when ``a`` is an edge and ``t'`` has odd dimension.
    """
    if len(s) == 1:
        f = _cup_1d(s[0], t[0])
        return None if f is None else (1, (f,))
    last = _cup_1d(s[-1], t[-1])
    if last is None:
        return None
    head = cup_basis(s[:-1], t[:-1])
    if head is None:
        return None
    sign, h = head
    if s[-1][0] == E and dimension(t[:-1]) % 2:
        sign = -sign
    return sign, h + (last,)


@lru_cache(maxsize=None)
def _cup_relative(s_kinds: tuple[str, ...], t_kinds: tuple[str, ...], offset: tuple[int, ...]):
    # cup of s at the origin with t at ``offset``; the 1D rules only compare indices
    s = tuple(zip(s_kinds, (0,) * DIM))
    t = tuple(zip(t_kinds, offset))
    return cup_basis(s, t)


def _relative_cup(s: Basis, t: Basis):
    ks = tuple(i for _, i in s)
    off = tuple(j - i for (_, i), (_, j) in zip(s, t))
    out = _cup_relative(tuple(c for c, _ in s), tuple(c for c, _ in t), off)
    if out is None:
        return None
    sign, r = out
    return sign, tuple((c, i + base) for (c, i), base in zip(r, ks))


def oracle_cup(phi: Cochain, psi: Cochain) -> Cochain:
    """Cup product summed over all pairs of basis elements whose indices differ by at most one."""
    if phi.mode != psi.mode:
        raise PreconditionError("cannot multiply forms in different scalar modes")
    left = _finite_terms(phi)
    by_site: dict = {}
    for t, b in _finite_terms(psi):
        by_site.setdefault(tuple(i for _, i in t), []).append((t, b))
    acc: dict = {}
    for s, a in left:
        k = [i for _, i in s]
        for step in itertools.product((0, 1), repeat=DIM):
            site = tuple(x + d for x, d in zip(k, step))
            for t, b in by_site.get(site, ()):
                out = _relative_cup(s, t)
                if out is None:
                    continue
                sign, r = out
                prod = a * b
                prev = acc.get(r)
                if prev is None:
                    acc[r] = prod if sign > 0 else -prod
                else:
                    acc[r] = prev + prod if sign > 0 else prev - prod
    return _build(phi.degree + psi.degree, phi.mode, acc)


# -- star by search ---------------------------------------------------------------------------


def _volume(k) -> Basis:
    return tuple((E, i) for i in k)


def _metric(s: Basis) -> int:
    return -1 if s[0][0] == E else 1


def star_candidates(s: Basis) -> list[tuple[int, Basis]]:
    """Every signed basis element ``t`` near ``s`` with ``s cup t`` equal to the metric sign times the 4-cell."""
    p = dimension(s)
    k = [i for _, i in s]
    target = (_metric(s), _volume(k))
    found = []
    for step in itertools.product((-1, 0, 1), repeat=DIM):
        site = [x + d for x, d in zip(k, step)]
        for kinds in itertools.product((X, E), repeat=DIM):
            if kinds.count(E) != DIM - p:
                continue
            t = tuple(zip(kinds, site))
            out = cup_basis(s, t)
            if out is None:
                continue
            for sign in (1, -1):
                if (out[0] * sign, out[1]) == target:
                    found.append((sign, t))
    return found


@lru_cache(maxsize=None)
def _star_at_origin(kinds: tuple[str, ...]) -> tuple[int, Basis]:
    found = star_candidates(tuple(zip(kinds, (0,) * DIM)))
    if len(found) != 1:
        raise RuntimeError(f"star of {kinds} has {len(found)} solutions; expected exactly one")
    return found[0]


def star_basis(s: Basis) -> tuple[int, Basis]:
    """The unique signed image of ``s`` (searched once per factor pattern, then translated)."""
    sign, t = _star_at_origin(tuple(c for c, _ in s))
    return sign, tuple((c, i + base) for (c, i), (_, base) in zip(t, s))


def oracle_star(phi: Cochain) -> Cochain:
    acc = {}
    for s, a in _finite_terms(phi):
        sign, t = star_basis(s)
        acc[t] = a if sign > 0 else -a
    return _build(DIM - phi.degree, phi.mode, acc)


@lru_cache(maxsize=None)
def _preimage_at_origin(kinds: tuple[str, ...]) -> tuple[int, Basis]:
    q = kinds.count(E)
    target = tuple(zip(kinds, (0,) * DIM))
    found = []
    for step in itertools.product((-1, 0, 1), repeat=DIM):
        for src in itertools.product((X, E), repeat=DIM):
            if src.count(E) != DIM - q:
                continue
            s = tuple(zip(src, step))
            sign, t = star_basis(s)
            if t == target:
                found.append((sign, s))
    if len(found) != 1:
        raise RuntimeError(f"inverse star of {kinds} has {len(found)} solutions; expected exactly one")
    return found[0]


def oracle_star_inverse(phi: Cochain) -> Cochain:
    acc = {}
    for t, a in _finite_terms(phi):
        sign, s = _preimage_at_origin(tuple(c for c, _ in t))
        s = tuple((c, i + base) for (c, i), (_, base) in zip(s, t))
        acc[s] = a if sign > 0 else -a
    return _build(DIM - phi.degree, phi.mode, acc)


def oracle_codifferential(psi: Cochain) -> Cochain:
    """``*^-1 d *`` assembled entirely from the oracles."""
    g = oracle_star(psi)
    return oracle_star_inverse(oracle_coboundary(g))
