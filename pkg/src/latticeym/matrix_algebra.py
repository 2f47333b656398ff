"""2x2 matrix coefficients over exact Gaussian rationals or floating complex numbers.

Two concrete coefficient types share one interface:

* :class:`ExactMatrix` stores the four entries as Gaussian-integer numerators
  over a single positive denominator, kept in lowest terms, so equality is
  structural and ring identities hold exactly.
* :class:`FloatMatrix` stores four Python ``complex`` values.

A computation uses one mode throughout; mixing raises :class:`ModeError`.
"""

from __future__ import annotations

import enum
import math
from fractions import Fraction
from math import gcd, isqrt
from numbers import Rational

import numpy as np

EXACT = "exact"
FLOAT = "float"
MODES = (EXACT, FLOAT)

DEFAULT_TOL = 1e-10


class ModeError(TypeError):
    """Exact and floating coefficients were combined."""


class SingularMatrixError(ZeroDivisionError):
    pass


class GaussianRational:
    """An element of Q(i), held as two Fractions."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @classmethod
    def coerce(cls, x) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, (int, Rational, str)):
            return cls(Fraction(x))
        if isinstance(x, float):
            return cls(Fraction(x))
        if isinstance(x, complex):
            return cls(Fraction(x.real), Fraction(x.imag))
        raise TypeError(f"cannot interpret {x!r} as a Gaussian rational")

    @classmethod
    def parse(cls, re: str, im: str = "0") -> "GaussianRational":
        return cls(Fraction(re), Fraction(im))

    def __add__(self, o):
        o = _coerce_or_none(o)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, o):
        o = _coerce_or_none(o)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, o):
        o = _coerce_or_none(o)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, o):
        o = _coerce_or_none(o)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, o):
        o = _coerce_or_none(o)
        if o is None:
            return NotImplemented
        n = o.re * o.re + o.im * o.im
        if n == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return self * GaussianRational(o.re / n, -o.im / n)

    def __rtruediv__(self, o):
        o = _coerce_or_none(o)
        if o is None:
            return NotImplemented
        return o / self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def __abs__(self):
        return math.hypot(self.re, self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, o):
        o = _coerce_or_none(o)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __repr__(self):
        if not self.im:
            return f"GaussianRational({self.re})"
        return f"GaussianRational({self.re}, {self.im})"

    def __str__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"


def _coerce_or_none(x):
    try:
        return GaussianRational.coerce(x)
    except TypeError:
        return None


I = GaussianRational(0, 1)


class Matrix2:
    """Common interface of the two coefficient types.  Use :func:`matrix` to build one."""

    __slots__ = ("_v",)
    mode: str

    @staticmethod
    def identity(mode: str = EXACT) -> "Matrix2":
        return _IDENTITY[mode]

    @staticmethod
    def zero(mode: str = EXACT) -> "Matrix2":
        return _ZERO[mode]

    def is_invertible(self) -> bool:
        d = self.det()
        if self.mode == EXACT:
            return bool(d)
        return abs(d) > DEFAULT_TOL

    def commutator(self, other: "Matrix2") -> "Matrix2":
        return self * other - other * self

    def __repr__(self):
        (a, b), (c, d) = self.entries()
        return f"{type(self).__name__}([[{a}, {b}], [{c}, {d}]])"

    def _check(self, other):
        if other.mode != self.mode:
            raise ModeError(f"cannot combine {self.mode} and {other.mode} matrices")

    def _mismatch(self, other):
        if isinstance(other, Matrix2):
            raise ModeError(f"cannot combine {self.mode} and {other.mode} matrices")
        return NotImplemented


_object_new = object.__new__


def _new(cls, v):
    obj = _object_new(cls)
    obj._v = v
    return obj


def _tuple9(*v):
    return v


def _reduce(r0, i0, r1, i1, r2, i2, r3, i3, d):
    if d == 1:
        return (r0, i0, r1, i1, r2, i2, r3, i3, 1)
    g = gcd(r0, i0, r1, i1, r2, i2, r3, i3, d)
    if g != 1:
        return (r0 // g, i0 // g, r1 // g, i1 // g, r2 // g, i2 // g, r3 // g, i3 // g, d // g)
    return (r0, i0, r1, i1, r2, i2, r3, i3, d)


class ExactMatrix(Matrix2):
    """Exact 2x2 matrix over Q(i)."""

    __slots__ = ()
    mode = EXACT

    def __init__(self, rows):
        (a, b), (c, d) = rows
        ents = [GaussianRational.coerce(z) for z in (a, b, c, d)]
        den = 1
        for z in ents:
            den = den * z.re.denominator // gcd(den, z.re.denominator)
            den = den * z.im.denominator // gcd(den, z.im.denominator)
        nums = []
        for z in ents:
            nums.append(int(z.re * den))
            nums.append(int(z.im * den))
        self._v = _reduce(*nums, den)

    def entries(self):
        r0, i0, r1, i1, r2, i2, r3, i3, d = self._v
        g = GaussianRational
        return (
            (g(Fraction(r0, d), Fraction(i0, d)), g(Fraction(r1, d), Fraction(i1, d))),
            (g(Fraction(r2, d), Fraction(i2, d)), g(Fraction(r3, d), Fraction(i3, d))),
        )

    def __add__(self, o):
        if type(o) is not ExactMatrix:
            return self._mismatch(o)
        x, y = self._v, o._v
        d, f = x[8], y[8]
        if d == 1 and f == 1:
            obj = _object_new(ExactMatrix)
            obj._v = (x[0] + y[0], x[1] + y[1], x[2] + y[2], x[3] + y[3],
                      x[4] + y[4], x[5] + y[5], x[6] + y[6], x[7] + y[7], 1)
            return obj
        if d == f:
            return _new(ExactMatrix, _reduce(*(x[i] + y[i] for i in range(8)), d))
        return _new(ExactMatrix, _reduce(*(x[i] * f + y[i] * d for i in range(8)), d * f))

    def __sub__(self, o):
        if type(o) is not ExactMatrix:
            return self._mismatch(o)
        x, y = self._v, o._v
        d, f = x[8], y[8]
        if d == 1 and f == 1:
            obj = _object_new(ExactMatrix)
            obj._v = (x[0] - y[0], x[1] - y[1], x[2] - y[2], x[3] - y[3],
                      x[4] - y[4], x[5] - y[5], x[6] - y[6], x[7] - y[7], 1)
            return obj
        if d == f:
            return _new(ExactMatrix, _reduce(*(x[i] - y[i] for i in range(8)), d))
        return _new(ExactMatrix, _reduce(*(x[i] * f - y[i] * d for i in range(8)), d * f))

    def __neg__(self):
        v = self._v
        return _new(ExactMatrix, (-v[0], -v[1], -v[2], -v[3], -v[4], -v[5], -v[6], -v[7], v[8]))

    def __mul__(self, o):
        if type(o) is ExactMatrix:
            a0, b0, a1, b1, a2, b2, a3, b3, d = self._v
            c0, e0, c1, e1, c2, e2, c3, e3, f = o._v
            obj = _object_new(ExactMatrix)
            obj._v = (_reduce if d != 1 or f != 1 else _tuple9)(
                a0 * c0 - b0 * e0 + a1 * c2 - b1 * e2,
                a0 * e0 + b0 * c0 + a1 * e2 + b1 * c2,
                a0 * c1 - b0 * e1 + a1 * c3 - b1 * e3,
                a0 * e1 + b0 * c1 + a1 * e3 + b1 * c3,
                a2 * c0 - b2 * e0 + a3 * c2 - b3 * e2,
                a2 * e0 + b2 * c0 + a3 * e2 + b3 * c2,
                a2 * c1 - b2 * e1 + a3 * c3 - b3 * e3,
                a2 * e1 + b2 * c1 + a3 * e3 + b3 * c3,
                d * f,
            )
            return obj
        if isinstance(o, Matrix2):
            return self._mismatch(o)
        try:
            s = GaussianRational.coerce(o)
        except TypeError:
            return NotImplemented
        return self._scaled(s)

    def __rmul__(self, o):
        # scalars commute with matrices
        return self.__mul__(o)

    def _scaled(self, s: GaussianRational):
        if s.re.denominator == 1 and s.im.denominator == 1 and not s.im:
            p = s.re.numerator
            if p == 1:
                return self
            if p == -1:
                return -self
        n = s.re.denominator * s.im.denominator // gcd(s.re.denominator, s.im.denominator)
        p, q = int(s.re * n), int(s.im * n)
        v = self._v
        out = []
        for j in range(0, 8, 2):
            re, im = v[j], v[j + 1]
            out.append(re * p - im * q)
            out.append(re * q + im * p)
        return _new(ExactMatrix, _reduce(*out, v[8] * n))

    def det(self) -> GaussianRational:
        a0, b0, a1, b1, a2, b2, a3, b3, d = self._v
        dr = a0 * a3 - b0 * b3 - a1 * a2 + b1 * b2
        di = a0 * b3 + b0 * a3 - a1 * b2 - b1 * a2
        return GaussianRational(Fraction(dr, d * d), Fraction(di, d * d))

    def trace(self) -> GaussianRational:
        v = self._v
        return GaussianRational(Fraction(v[0] + v[6], v[8]), Fraction(v[1] + v[7], v[8]))

    def inverse(self) -> "ExactMatrix":
        a0, b0, a1, b1, a2, b2, a3, b3, d = self._v
        dr = a0 * a3 - b0 * b3 - a1 * a2 + b1 * b2
        di = a0 * b3 + b0 * a3 - a1 * b2 - b1 * a2
        n = dr * dr + di * di
        if n == 0:
            raise SingularMatrixError("matrix is singular")
        # adj(x) * conj(D) * d / |D|^2 with D the numerator determinant
        out = []
        for re, im in ((a3, b3), (-a1, -b1), (-a2, -b2), (a0, b0)):
            out.append((re * dr + im * di) * d)
            out.append((im * dr - re * di) * d)
        return _new(ExactMatrix, _reduce(*out, n))

    def adjoint(self) -> "ExactMatrix":
        """Conjugate transpose."""
        a0, b0, a1, b1, a2, b2, a3, b3, d = self._v
        return _new(ExactMatrix, (a0, -b0, a2, -b2, a1, -b1, a3, -b3, d))

    def is_zero(self) -> bool:
        v = self._v
        return not (v[0] or v[1] or v[2] or v[3] or v[4] or v[5] or v[6] or v[7])

    def close(self, other: Matrix2, tol: float = DEFAULT_TOL) -> bool:
        self._check(other)
        return self == other

    def max_abs(self) -> float:
        v = self._v
        return max(math.hypot(v[j], v[j + 1]) for j in range(0, 8, 2)) / v[8]

    def to_float(self) -> "FloatMatrix":
        (a, b), (c, d) = self.entries()
        return FloatMatrix([[complex(a), complex(b)], [complex(c), complex(d)]])

    def __eq__(self, o):
        if not isinstance(o, ExactMatrix):
            return NotImplemented
        return self._v == o._v

    def __hash__(self):
        return hash(self._v)


class FloatMatrix(Matrix2):
    """2x2 matrix of Python complex numbers."""

    __slots__ = ()
    mode = FLOAT

    def __init__(self, rows):
        (a, b), (c, d) = rows
        self._v = (complex(a), complex(b), complex(c), complex(d))

    def entries(self):
        a, b, c, d = self._v
        return ((a, b), (c, d))

    def __add__(self, o):
        if type(o) is not FloatMatrix:
            return self._mismatch(o)
        x, y = self._v, o._v
        return _new(FloatMatrix, (x[0] + y[0], x[1] + y[1], x[2] + y[2], x[3] + y[3]))

    def __sub__(self, o):
        if type(o) is not FloatMatrix:
            return self._mismatch(o)
        x, y = self._v, o._v
        return _new(FloatMatrix, (x[0] - y[0], x[1] - y[1], x[2] - y[2], x[3] - y[3]))

    def __neg__(self):
        x = self._v
        return _new(FloatMatrix, (-x[0], -x[1], -x[2], -x[3]))

    def __mul__(self, o):
        if type(o) is FloatMatrix:
            a, b, c, d = self._v
            e, f, g, h = o._v
            return _new(FloatMatrix, (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h))
        if isinstance(o, Matrix2):
            return self._mismatch(o)
        if isinstance(o, GaussianRational):
            o = complex(o)
        if not isinstance(o, (int, float, complex, Rational)):
            return NotImplemented
        s = complex(o)
        x = self._v
        return _new(FloatMatrix, (x[0] * s, x[1] * s, x[2] * s, x[3] * s))

    def __rmul__(self, o):
        return self.__mul__(o)

    def det(self) -> complex:
        a, b, c, d = self._v
        return a * d - b * c

    def trace(self) -> complex:
        return self._v[0] + self._v[3]

    def inverse(self) -> "FloatMatrix":
        a, b, c, d = self._v
        det = a * d - b * c
        if det == 0:
            raise SingularMatrixError("matrix is singular")
        return _new(FloatMatrix, (d / det, -b / det, -c / det, a / det))

    def adjoint(self) -> "FloatMatrix":
        a, b, c, d = self._v
        return _new(FloatMatrix, (a.conjugate(), c.conjugate(), b.conjugate(), d.conjugate()))

    def is_zero(self) -> bool:
        x = self._v
        return not (x[0] or x[1] or x[2] or x[3])

    def close(self, other: Matrix2, tol: float = DEFAULT_TOL) -> bool:
        self._check(other)
        return all(abs(p - q) <= tol for p, q in zip(self._v, other._v))

    def max_abs(self) -> float:
        return max(abs(z) for z in self._v)

    def to_float(self) -> "FloatMatrix":
        return self

    def __eq__(self, o):
        if not isinstance(o, FloatMatrix):
            return NotImplemented
        return self._v == o._v

    def __hash__(self):
        return hash(self._v)


_IDENTITY = {EXACT: ExactMatrix([[1, 0], [0, 1]]), FLOAT: FloatMatrix([[1, 0], [0, 1]])}
_ZERO = {EXACT: ExactMatrix([[0, 0], [0, 0]]), FLOAT: FloatMatrix([[0, 0], [0, 0]])}


def matrix(rows, mode: str = EXACT) -> Matrix2:
    """Build a 2x2 coefficient from nested rows in the given scalar mode."""
    if mode == EXACT:
        return ExactMatrix(rows)
    if mode == FLOAT:
        return FloatMatrix(rows)
    raise ValueError(f"unknown scalar mode {mode!r}")


def check_mode(mode: str) -> str:
    if mode not in MODES:
        raise ValueError(f"unknown scalar mode {mode!r}; expected one of {MODES}")
    return mode


# --- Lie algebra bases -------------------------------------------------------

def pauli(alpha: int, mode: str = EXACT) -> Matrix2:
    if alpha == 1:
        rows = [[0, 1], [1, 0]]
    elif alpha == 2:
        rows = [[0, -1j], [1j, 0]]
    elif alpha == 3:
        rows = [[1, 0], [0, -1]]
    else:
        raise ValueError(f"Pauli index must be 1, 2 or 3, got {alpha}")
    return matrix(rows, mode)


def lie_basis(alpha: int, mode: str = EXACT) -> Matrix2:
    """lambda_alpha = sigma_alpha / (2i), the su(2) basis used for connections."""
    return pauli(alpha, mode) * GaussianRational(0, Fraction(-1, 2))


def su2_algebra_element(coeffs, mode: str = EXACT) -> Matrix2:
    """sum_alpha c_alpha * lambda_alpha with real coefficients c_alpha."""
    out = Matrix2.zero(mode)
    for alpha, c in enumerate(coeffs, start=1):
        if c:
            out = out + lie_basis(alpha, mode) * c
    return out


# --- membership predicates ----------------------------------------------------

class MatrixClass(str, enum.Enum):
    SU2_GROUP = "su2_group"
    SU2_ALGEBRA = "su2_algebra"
    SL2C_ALGEBRA = "sl2c_algebra"
    INVERTIBLE = "invertible"
    NONE = "none"


def _is_zero_scalar(z, mode, tol):
    if mode == EXACT:
        return not z
    return abs(z) <= tol


def is_traceless(m: Matrix2, tol: float = DEFAULT_TOL) -> bool:
    return _is_zero_scalar(m.trace(), m.mode, tol)


def is_anti_hermitian(m: Matrix2, tol: float = DEFAULT_TOL) -> bool:
    return (m + m.adjoint()).close(Matrix2.zero(m.mode), tol)


def is_special_unitary(m: Matrix2, tol: float = DEFAULT_TOL) -> bool:
    one = Matrix2.identity(m.mode)
    return (m * m.adjoint()).close(one, tol) and _is_zero_scalar(m.det() - 1, m.mode, tol)


def is_su2_algebra(m: Matrix2, tol: float = DEFAULT_TOL) -> bool:
    return is_traceless(m, tol) and is_anti_hermitian(m, tol)


def classify(m: Matrix2, tol: float = DEFAULT_TOL) -> MatrixClass:
    """Most specific of: SU(2) element, su(2) element, sl(2,C) element, invertible, none."""
    if is_special_unitary(m, tol):
        return MatrixClass.SU2_GROUP
    if is_su2_algebra(m, tol):
        return MatrixClass.SU2_ALGEBRA
    if is_traceless(m, tol):
        return MatrixClass.SL2C_ALGEBRA
    if not _is_zero_scalar(m.det(), m.mode, tol):
        return MatrixClass.INVERTIBLE
    return MatrixClass.NONE


def memberships(m: Matrix2, tol: float = DEFAULT_TOL) -> set[MatrixClass]:
    """Every class ``m`` belongs to (su(2) elements are also sl(2,C) elements)."""
    out = set()
    if is_special_unitary(m, tol):
        out.add(MatrixClass.SU2_GROUP)
    if is_su2_algebra(m, tol):
        out.add(MatrixClass.SU2_ALGEBRA)
    if is_traceless(m, tol):
        out.add(MatrixClass.SL2C_ALGEBRA)
    if not _is_zero_scalar(m.det(), m.mode, tol):
        out.add(MatrixClass.INVERTIBLE)
    return out


# --- SU(2) from quaternions ---------------------------------------------------

def su2_from_quaternion(a, b, c, d, mode: str = EXACT) -> Matrix2:
    """[[a+bi, c+di], [-c+di, a-bi]] / |q|.

    In exact mode the norm must be rational, i.e. a^2+b^2+c^2+d^2 a perfect
    square for integer components.
    """
    if mode == EXACT:
        a, b, c, d = (Fraction(x) for x in (a, b, c, d))
        n2 = a * a + b * b + c * c + d * d
        num, den = isqrt(n2.numerator), isqrt(n2.denominator)
        if num * num != n2.numerator or den * den != n2.denominator or n2 == 0:
            raise ValueError(f"quaternion norm^2 {n2} is not a nonzero rational square")
        s = Fraction(den, num)
        g = GaussianRational
        return ExactMatrix([
            [g(a * s, b * s), g(c * s, d * s)],
            [g(-c * s, d * s), g(a * s, -b * s)],
        ])
    n = math.sqrt(a * a + b * b + c * c + d * d)
    a, b, c, d = a / n, b / n, c / n, d / n
    return FloatMatrix([[complex(a, b), complex(c, d)], [complex(-c, d), complex(a, -b)]])


def _rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def random_special_unitary(seed=None, mode: str = EXACT, bound: int = 6) -> Matrix2:
    """A random SU(2) element.

    Float mode normalises a Gaussian 4-vector (Haar measure).  Exact mode draws
    integer quaternions with components in ``[-bound, bound]`` until the norm is
    a perfect square, which makes the result exactly unitary with unit determinant.
    """
    rng = _rng(seed)
    if mode == FLOAT:
        q = rng.normal(size=4)
        return su2_from_quaternion(*(float(x) for x in q), mode=FLOAT)
    check_mode(mode)
    while True:
        q = [int(x) for x in rng.integers(-bound, bound + 1, size=4)]
        n2 = sum(x * x for x in q)
        if n2 and isqrt(n2) ** 2 == n2:
            return su2_from_quaternion(*q, mode=EXACT)


def random_matrix(seed=None, mode: str = EXACT, bound: int = 3) -> Matrix2:
    """Random coefficient: Gaussian-integer entries in [-bound, bound] (exact) or normal (float)."""
    rng = _rng(seed)
    if mode == EXACT:
        v = [int(x) for x in rng.integers(-bound, bound + 1, size=8)]
        return _new(ExactMatrix, (*v, 1))
    check_mode(mode)
    v = rng.normal(size=8)
    return _new(FloatMatrix, tuple(complex(v[j], v[j + 1]) for j in range(0, 8, 2)))


def random_matrices(seed, count: int, mode: str = EXACT, bound: int = 3) -> list[Matrix2]:
    """``count`` independent draws of :func:`random_matrix`, generated in one batch."""
    rng = _rng(seed)
    if mode == EXACT:
        block = rng.integers(-bound, bound + 1, size=(count, 8)).tolist()
        return [_new(ExactMatrix, (*row, 1)) for row in block]
    check_mode(mode)
    block = rng.normal(size=(count, 8)).tolist()
    return [
        _new(FloatMatrix, (complex(r[0], r[1]), complex(r[2], r[3]), complex(r[4], r[5]), complex(r[6], r[7])))
        for r in block
    ]


def random_invertible(seed=None, mode: str = EXACT, bound: int = 3) -> Matrix2:
    rng = _rng(seed)
    while True:
        m = random_matrix(rng, mode, bound)
        if m.is_invertible():
            return m


def random_su2_algebra(seed=None, mode: str = EXACT, bound: int = 3) -> Matrix2:
    rng = _rng(seed)
    if mode == EXACT:
        c = [int(x) for x in rng.integers(-bound, bound + 1, size=3)]
    else:
        c = [float(x) for x in rng.normal(size=3)]
    return su2_algebra_element(c, mode)


def random_sl2c_algebra(seed=None, mode: str = EXACT, bound: int = 3) -> Matrix2:
    """Random traceless matrix."""
    m = random_matrix(seed, mode, bound)
    half_trace = m.trace() * Fraction(1, 2) if mode == EXACT else m.trace() / 2
    return m - Matrix2.identity(mode) * half_trace
