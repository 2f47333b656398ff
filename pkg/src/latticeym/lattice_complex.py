"""Multi-indices, direction masks, chains and the boundary operator of C(4).

A basis element of the four-fold product complex is a pair ``(k, mask)``:
``k`` is a site of Z^4 and ``mask`` is an int bitmask whose bit ``a`` is set
when the factor on axis ``a`` is an edge ``e_{k_a}`` rather than a point
``x_{k_a}``.  Axes are numbered 0..3 and axis 0 is time.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

MultiIndex = tuple[int, int, int, int]
Key = tuple[MultiIndex, int]

NAXES = 4
FULL_MASK = 0b1111

TAU = "tau"
SIGMA = "sigma"


def mask_of(axes: Iterable[int]) -> int:
    m = 0
    for a in axes:
        if not 0 <= a < NAXES:
            raise ValueError(f"axis {a} out of range 0..3")
        m |= 1 << a
    return m


def axes_of(mask: int) -> tuple[int, ...]:
    return tuple(a for a in range(NAXES) if mask >> a & 1)


def degree(mask: int) -> int:
    return mask.bit_count()


MASKS_BY_DEGREE: tuple[tuple[int, ...], ...] = tuple(
    tuple(m for m in range(16) if m.bit_count() == p) for p in range(NAXES + 1)
)

# 2-masks in the order eps_1..eps_6: (0,1) (0,2) (0,3) (1,2) (1,3) (2,3)
PAIR_MASKS: tuple[int, ...] = tuple(mask_of(p) for p in itertools.combinations(range(NAXES), 2))

# 1D edges sit between x_k and x_{k+1}, so a mask doubles as the 0/1 offset
# vector that moves k across every edge factor.
OFFSETS: tuple[MultiIndex, ...] = tuple(
    tuple((m >> a) & 1 for a in range(NAXES)) for m in range(16)  # type: ignore[misc]
)
UNIT: tuple[MultiIndex, ...] = tuple(OFFSETS[1 << a] for a in range(NAXES))
ALL_ONES: MultiIndex = (1, 1, 1, 1)


def add(k: MultiIndex, v: MultiIndex) -> MultiIndex:
    return (k[0] + v[0], k[1] + v[1], k[2] + v[2], k[3] + v[3])


def sub(k: MultiIndex, v: MultiIndex) -> MultiIndex:
    return (k[0] - v[0], k[1] - v[1], k[2] - v[2], k[3] - v[3])


def shift(k: MultiIndex, axes: Iterable[int], direction: str = TAU) -> MultiIndex:
    """Apply tau (+1) or sigma (-1) to the listed components of ``k``."""
    if direction == TAU:
        step = 1
    elif direction == SIGMA:
        step = -1
    else:
        raise ValueError(f"direction must be {TAU!r} or {SIGMA!r}, got {direction!r}")
    m = mask_of(axes)
    return tuple(k[a] + step * ((m >> a) & 1) for a in range(NAXES))  # type: ignore[return-value]


def wrap(k: MultiIndex, extents: MultiIndex) -> MultiIndex:
    """Reduce ``k`` modulo ``extents`` (periodic index mode; not part of the free model)."""
    return (k[0] % extents[0], k[1] % extents[1], k[2] % extents[2], k[3] % extents[3])


def boundary_sign(mask: int, axis: int) -> int:
    """(-1)^(number of edge factors of ``mask`` on axes before ``axis``)."""
    return -1 if (mask & ((1 << axis) - 1)).bit_count() & 1 else 1


@dataclass(frozen=True)
class Box:
    """The sites ``lower_i <= k_i < lower_i + extents_i``; by default ``k_i = 1..N_i``."""

    extents: MultiIndex
    lower: MultiIndex = (1, 1, 1, 1)

    def __post_init__(self):
        if len(self.extents) != NAXES or len(self.lower) != NAXES:
            raise ValueError("Box needs four extents and four lower bounds")
        if any(n < 1 for n in self.extents):
            raise ValueError(f"box extents must be >= 1, got {self.extents}")
        object.__setattr__(self, "extents", tuple(int(n) for n in self.extents))
        object.__setattr__(self, "lower", tuple(int(n) for n in self.lower))

    @classmethod
    def cube(cls, n: int) -> "Box":
        return cls((n, n, n, n))

    @property
    def upper(self) -> MultiIndex:
        """Last site on every axis (``N_i`` for the default box)."""
        return tuple(lo + n - 1 for lo, n in zip(self.lower, self.extents))  # type: ignore[return-value]

    def __contains__(self, k) -> bool:
        return all(lo <= ki < lo + n for ki, lo, n in zip(k, self.lower, self.extents))

    def __len__(self) -> int:
        n = 1
        for e in self.extents:
            n *= e
        return n

    def sites(self) -> Iterator[MultiIndex]:
        """Sites in lexicographic order."""
        ranges = [range(lo, lo + n) for lo, n in zip(self.lower, self.extents)]
        return itertools.product(*ranges)  # type: ignore[return-value]

    def grown(self, below: int = 1, above: int = 1) -> "Box":
        return Box(
            tuple(n + below + above for n in self.extents),  # type: ignore[arg-type]
            tuple(lo - below for lo in self.lower),  # type: ignore[arg-type]
        )


class Chain:
    """A finite integer combination of basis elements of C(4)."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Key, int] | Iterable[tuple[Key, int]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Key, int] = {}
        for (k, m), c in items:
            k = tuple(int(x) for x in k)
            if len(k) != NAXES or not 0 <= m <= FULL_MASK:
                raise ValueError(f"bad basis element {(k, m)!r}")
            acc[(k, m)] = acc.get((k, m), 0) + int(c)
        self._terms = {key: c for key, c in acc.items() if c}

    @classmethod
    def basis(cls, k: MultiIndex, mask: int, coeff: int = 1) -> "Chain":
        return cls({(tuple(k), mask): coeff})

    def items(self):
        return self._terms.items()

    def __getitem__(self, key: Key) -> int:
        return self._terms.get(key, 0)

    def __len__(self):
        return len(self._terms)

    def __iter__(self):
        return iter(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if not isinstance(other, Chain):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __add__(self, other: "Chain") -> "Chain":
        return Chain(itertools.chain(self._terms.items(), other._terms.items()))

    def __neg__(self) -> "Chain":
        return Chain({key: -c for key, c in self._terms.items()})

    def __sub__(self, other: "Chain") -> "Chain":
        return self + (-other)

    def __rmul__(self, n: int) -> "Chain":
        return Chain({key: n * c for key, c in self._terms.items()})

    def __repr__(self):
        body = ", ".join(f"{c:+d}*{k}/{axes_of(m)}" for (k, m), c in sorted(self._terms.items()))
        return f"Chain({body})"


def boundary(c: Chain) -> Chain:
    """The boundary operator of C(4), applied term by term.

    On a product basis element the edge on axis ``j`` contributes
    ``x_{tau k_j} - x_{k_j}`` with sign (-1)^(degree of the factors left of j).
    """
    acc: dict[Key, int] = {}
    for (k, m), c in c.items():
        for j in axes_of(m):
            s = boundary_sign(m, j) * c
            face = m & ~(1 << j)
            up = (add(k, UNIT[j]), face)
            acc[up] = acc.get(up, 0) + s
            acc[(k, face)] = acc.get((k, face), 0) - s
    return Chain(acc)


def volume_chain(box: Box) -> Chain:
    """Sum of the 4-cells ``V_k`` over the box, each with coefficient 1."""
    return Chain({(k, FULL_MASK): 1 for k in box.sites()})
