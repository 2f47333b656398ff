"""Randomized verification suites for the identities of the model.

Every suite draws its inputs from seeded generators keyed by
``(seed, check name, trial)``, so a report depends only on its parameters.
"""

from __future__ import annotations

import contextlib
import gc
import itertools
import time
import zlib
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .cochains import Cochain, coboundary, cup
from .config import format_matrix
from .errors import PreconditionError
from .gauge import (
    V26,
    GaugeZeroForm,
    bianchi_residual,
    conjugate,
    curvature,
    gauge_identity_residual,
    gauge_transform_connection,
    invariant_one_form,
    lemma1_residual,
    lemma2_residual,
    make_diagonal_gauge,
    satisfies_diagonal_condition,
    ym_residual,
)
from .hodge import double_star, double_star_closed_form, star, star_inverse
from .inner_product import adjoint_sides, covariant_adjoint_sides, trace_duality_check
from .lattice_complex import FULL_MASK, MASKS_BY_DEGREE, NAXES, OFFSETS, PAIR_MASKS, Box, axes_of
from .matrix_algebra import DEFAULT_TOL, EXACT, Matrix2, random_invertible
from .sampling import random_basis_form, random_form, random_gauge_values, random_periodic_form
from .selfdual import (
    DualityMode,
    diagonal_from_operator_residual,
    diagonal_residual,
    double_star_sign_check,
    eigen_split,
    finite_support_triviality,
    operator_residual,
    project_to_diagonal,
    solution_from_diagonal,
)

EXACT_ZERO = "exact-zero"
MAX_RESIDUAL = "max-residual-norm"
COUNTEREXAMPLE = "counterexample"
FAILED = "fail"


# -- results --------------------------------------------------------------------------------


@dataclass
class CheckResult:
    identity: str
    passed: bool
    status: str
    trials: int
    max_residual: float = 0.0
    detail: dict = field(default_factory=dict)
    seconds: float = 0.0

    def to_dict(self, timings: bool = False) -> dict:
        out = {
            "identity": self.identity,
            "passed": self.passed,
            "status": self.status,
            "trials": self.trials,
            "max_residual": self.max_residual,
        }
        if self.detail:
            out["detail"] = self.detail
        if timings:
            out["seconds"] = round(self.seconds, 3)
        return out


@dataclass
class SuiteReport:
    suite: str
    mode: str
    size: tuple[int, ...]
    seeds: int
    seed: int
    checks: list[CheckResult]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self, timings: bool = False) -> dict:
        return {
            "suite": self.suite,
            "mode": self.mode,
            "size": list(self.size),
            "seeds": self.seeds,
            "seed": self.seed,
            "status": "pass" if self.passed else "fail",
            "checks": [c.to_dict(timings) for c in self.checks],
        }


@dataclass(frozen=True)
class Context:
    box: Box
    trials: int
    mode: str = EXACT
    seed: int = 0
    tol: float = DEFAULT_TOL

    def rng(self, name: str, trial: int) -> np.random.Generator:
        return np.random.default_rng([self.seed, zlib.crc32(name.encode()), trial])


def _size(x) -> tuple[float, bool]:
    """Norm of a residual and whether it counts as zero (exact equality in exact mode)."""
    if isinstance(x, Cochain):
        return x.max_norm(), x.is_zero()
    if isinstance(x, Matrix2):
        return x.max_abs(), x.is_zero()
    if isinstance(x, bool):
        return (0.0, True) if x else (1.0, False)
    return abs(complex(x)), x == 0


@contextlib.contextmanager
def _collector_paused():
    # trials allocate millions of acyclic matrices; the cyclic collector only adds overhead
    enabled = gc.isenabled()
    gc.disable()
    try:
        yield
    finally:
        if enabled:
            gc.enable()


def run_check(name: str, ctx: Context, body: Callable[[np.random.Generator, int], object],
              trials: int | None = None) -> CheckResult:
    """Run ``body`` for each trial; it returns a residual (cochain, matrix, scalar or bool)."""
    n = ctx.trials if trials is None else trials
    start = time.perf_counter()
    worst, failures = 0.0, []
    for t in range(n):
        with _collector_paused():
            norm, zero = _size(body(ctx.rng(name, t), t))
        worst = max(worst, norm)
        ok = zero if ctx.mode == EXACT else norm <= ctx.tol
        if not ok:
            failures.append(t)
    passed = not failures
    if ctx.mode == EXACT:
        status = EXACT_ZERO if passed else FAILED
    else:
        status = MAX_RESIDUAL if passed else FAILED
    detail = {"failed_trials": failures[:10]} if failures else {}
    return CheckResult(name, passed, status, n, worst, detail, time.perf_counter() - start)


# -- generators ---------------------------------------------------------------------------------


def random_gauge(rng, box: Box, mode: str) -> GaugeZeroForm:
    """Invertible values at every site of ``box``, identity elsewhere."""
    return GaugeZeroForm.explicit(random_gauge_values(rng, box, mode), mode)


def random_parity_gauge(rng, mode: str) -> GaugeZeroForm:
    return make_diagonal_gauge(random_invertible(rng, mode), random_invertible(rng, mode))


def pure_gauge_connection(g: GaugeZeroForm) -> Cochain:
    """``g cup d(g^-1)``, a connection with zero curvature."""
    return cup(g.form, coboundary(g.inverse_form))


def leibniz_residual(phi: Cochain, psi: Cochain) -> Cochain:
    lhs = coboundary(cup(phi, psi))
    second = cup(phi, coboundary(psi))
    rhs = cup(coboundary(phi), psi)
    rhs = rhs + second if phi.degree % 2 == 0 else rhs - second
    return lhs - rhs


# -- suites --------------------------------------------------------------------------------------


LEIBNIZ_PAIRS = tuple((p, q) for p in range(NAXES) for q in range(NAXES) if p + q <= 3)


def suite_leibniz(ctx: Context, density: float | None = None) -> list[CheckResult]:
    """Leibniz rule per degree pair; without ``density`` each trial draws its own in [0.2, 1]."""
    out = []
    for p, q in LEIBNIZ_PAIRS:
        def body(rng, t, p=p, q=q):
            rho = rng.uniform(0.2, 1.0) if density is None else density
            phi = random_form(rng, p, ctx.box, ctx.mode, density=rho)
            psi = random_form(rng, q, ctx.box, ctx.mode, density=rho)
            return leibniz_residual(phi, psi)
        out.append(run_check(f"leibniz[p={p},q={q}]", ctx, body))
    return out


def suite_bianchi(ctx: Context) -> list[CheckResult]:
    def body(rng, t):
        return bianchi_residual(random_form(rng, 1, ctx.box, ctx.mode))
    return [run_check("bianchi", ctx, body)]


def suite_gauge_covariance(ctx: Context) -> list[CheckResult]:
    small = Box.cube(2)

    def covariance(rng, t):
        a = random_form(rng, 1, ctx.box, ctx.mode)
        h = random_gauge(rng, ctx.box, ctx.mode)
        return curvature(gauge_transform_connection(a, h)) - conjugate(curvature(a), h)

    def eq24(rng, t):
        return gauge_identity_residual(random_gauge(rng, ctx.box, ctx.mode))

    def composition(rng, t):
        a = random_form(rng, 1, ctx.box, ctx.mode)
        h, g = random_gauge(rng, small, ctx.mode), random_gauge(rng, small, ctx.mode)
        twice = gauge_transform_connection(gauge_transform_connection(a, h), g)
        return twice - gauge_transform_connection(a, g * h)

    def invariance(rng, t):
        a = random_form(rng, 1, ctx.box, ctx.mode)
        h, g = random_gauge(rng, small, ctx.mode), random_gauge(rng, small, ctx.mode)
        return invariant_one_form(a, g) - invariant_one_form(gauge_transform_connection(a, h), h * g)

    return [
        run_check("curvature-covariance", ctx, covariance),
        run_check("gauge-identity", ctx, eq24),
        run_check("gauge-composition", ctx, composition),
        run_check("invariant-one-form", ctx, invariance),
    ]


def suite_theorem1(ctx: Context) -> list[CheckResult]:
    def conjugation(rng, t):
        a = random_form(rng, 1, ctx.box, ctx.mode)
        h = random_parity_gauge(rng, ctx.mode)
        return ym_residual(gauge_transform_connection(a, h), V26) - conjugate(ym_residual(a, V26), h)

    def preserved(rng, t):
        # pure gauges have zero curvature, hence zero residual
        a = pure_gauge_connection(random_gauge(rng, ctx.box, ctx.mode))
        before = ym_residual(a, V26)
        if not before.is_zero() and ctx.mode == EXACT:
            return before
        h = random_parity_gauge(rng, ctx.mode)
        return ym_residual(gauge_transform_connection(a, h), V26)

    return [
        run_check("theorem1-conjugation", ctx, conjugation),
        run_check("theorem1-zero-preserved", ctx, preserved),
    ]


def offset_invariant_zero_form(rng, p: int, box: Box, mode: str) -> Cochain:
    """A 0-form with ``h_k = h_{k + offset(M)}`` for every degree-``p`` mask ``M``.

    The shifts by degree-p offsets generate: nothing (p=0), all of Z^4 (p=1),
    the even-sum lattice (p=2), the lattice with sum divisible by 3 (p=3) and
    the diagonal (p=4).
    """
    if p == 0:
        return random_form(rng, 0, box, mode)
    if p == 1:
        return Cochain.constant(0, {0: random_invertible(rng, mode)})
    if p in (2, 3):
        values = [random_invertible(rng, mode) for _ in range(p)]
        period = (p,) * NAXES
        bg = {(r, 0): values[sum(r) % p] for r in itertools.product(range(p), repeat=NAXES)}
        return Cochain(0, background=bg, period=period, mode=mode)
    # depends on k_1 - k_2 only (through its parity), so a shift along the diagonal keeps it
    values = [random_invertible(rng, mode) for _ in range(2)]
    bg = {(r, 0): values[(r[0] - r[1]) % 2] for r in itertools.product(range(2), repeat=NAXES)}
    return Cochain(0, background=bg, period=(2,) * NAXES, mode=mode)


def suite_lemma1(ctx: Context) -> list[CheckResult]:
    """``*(h cup f) = h cup *f`` for random ``h``, and for ``h`` invariant under the degree-p shifts.

    The first family fails for p >= 1: the star moves a p-cell by its edge
    offsets, so the two sides read ``h`` at different sites.
    """
    out = []
    for p in range(NAXES + 1):
        def generic(rng, t, p=p):
            f = random_form(rng, p, ctx.box, ctx.mode)
            if t % 2:
                h = random_gauge(rng, ctx.box, ctx.mode).form
            else:
                h = random_form(rng, 0, ctx.box, ctx.mode)
            return lemma1_residual(h, f)

        def invariant(rng, t, p=p):
            f = random_form(rng, p, ctx.box, ctx.mode)
            return lemma1_residual(offset_invariant_zero_form(rng, p, ctx.box, ctx.mode), f)

        out.append(run_check(f"lemma1[p={p}]", ctx, generic))
        out.append(run_check(f"lemma1-offset-invariant-h[p={p}]", ctx, invariant))
    return out


def suite_lemma2(ctx: Context) -> list[CheckResult]:
    def body(rng, t):
        f = random_form(rng, 2, ctx.box, ctx.mode)
        return lemma2_residual(f, random_parity_gauge(rng, ctx.mode))
    return [run_check("lemma2-forward", ctx, body)]


def non_diagonal_gauge(rng, index: int, mode: str) -> GaugeZeroForm:
    """Gauges violating the double-shift condition, cycling through three constructions."""
    kind = index % 3
    if kind == 0:
        # invertible values on a small random box, identity elsewhere
        lo = tuple(int(x) for x in rng.integers(-2, 3, size=NAXES))
        ext = tuple(int(x) for x in rng.integers(1, 3, size=NAXES))
        return GaugeZeroForm.explicit(random_gauge_values(rng, Box(ext, lo), mode), mode)
    if kind == 1:
        # depends on the parity of one coordinate only
        axis = int(rng.integers(NAXES))
        period = tuple(2 if a == axis else 1 for a in range(NAXES))
        values = {tuple(r): random_invertible(rng, mode) for r in itertools.product(*(range(p) for p in period))}
        return GaugeZeroForm.periodic(period, values, mode)
    # identity with a single modified site
    k = tuple(int(x) for x in rng.integers(-3, 4, size=NAXES))
    return GaugeZeroForm.explicit({k: random_invertible(rng, mode)}, mode)


def _search_region(h: GaugeZeroForm) -> Box:
    sites = sorted(h.form.sites())
    if not sites:
        return Box(tuple(max(p, 1) for p in h.form.period), (0, 0, 0, 0)).grown(2, 0)
    lo = [min(k[a] for k in sites) for a in range(NAXES)]
    hi = [max(k[a] for k in sites) for a in range(NAXES)]
    return Box(tuple(h_ - l + 1 for l, h_ in zip(lo, hi)), tuple(lo)).grown(2, 1)


def find_lemma2_counterexample(h: GaugeZeroForm, rng, max_trials: int = 1000):
    """Random single-coefficient 2-forms ``f`` until ``*(f cup h) != *f cup h``.

    Returns ``(f, trials_used)`` or ``(None, max_trials)``.
    """
    region = _search_region(h)
    for t in range(1, max_trials + 1):
        f = random_basis_form(rng, 2, region, h.mode)
        if not lemma2_residual(f, h).is_zero():
            return f, t
    return None, max_trials


def suite_lemma2_converse(ctx: Context, gauges: int | None = None, max_trials: int = 1000) -> list[CheckResult]:
    count = gauges if gauges is not None else max(ctx.trials, 1)
    start = time.perf_counter()
    found, missing, examples, seen = 0, [], [], set()
    for index in range(count):
        rng = ctx.rng("lemma2-converse", index)
        h = non_diagonal_gauge(rng, index, ctx.mode)
        if satisfies_diagonal_condition(h):
            missing.append(index)
            continue
        seen.add(h)
        f, used = find_lemma2_counterexample(h, rng, max_trials)
        if f is None:
            missing.append(index)
            continue
        found += 1
        if len(examples) < 3:
            (k, m), a = next(iter(f.entries.items()))
            examples.append({"gauge": index, "k": list(k), "axes": [x + 1 for x in axes_of(m)],
                             "matrix": format_matrix(a), "trials": used})
    passed = not missing and len(seen) == count
    detail = {"gauges": count, "distinct_gauges": len(seen), "counterexamples": found, "examples": examples}
    if missing:
        detail["missing"] = missing[:10]
    return [CheckResult("lemma2-converse", passed, COUNTEREXAMPLE if passed else FAILED, count,
                        0.0, detail, time.perf_counter() - start)]


def _scalar_gap(pair):
    left, right = pair
    return left - right


def suite_adjointness(ctx: Context) -> list[CheckResult]:
    def body(rng, t):
        phi = random_form(rng, 1, ctx.box, ctx.mode)
        psi = random_form(rng, 2, ctx.box, ctx.mode)
        return _scalar_gap(adjoint_sides(phi, psi, ctx.box))
    return [run_check("prop4-adjointness", ctx, body)]


def suite_theorem2(ctx: Context) -> list[CheckResult]:
    def body(rng, t):
        a = random_form(rng, 1, ctx.box, ctx.mode)
        phi = random_form(rng, 1, ctx.box, ctx.mode)
        f = random_form(rng, 2, ctx.box, ctx.mode)
        return _scalar_gap(covariant_adjoint_sides(a, phi, f, ctx.box))
    return [run_check("theorem2-adjointness", ctx, body)]


def suite_lemma3(ctx: Context) -> list[CheckResult]:
    def body(rng, t):
        phi = random_form(rng, 1, ctx.box, ctx.mode)
        psi = random_form(rng, 3, ctx.box, ctx.mode)
        return _scalar_gap(trace_duality_check(phi, psi, ctx.box))
    return [run_check("lemma3", ctx, body)]


# star of eps_1..eps_6 at the origin: (sign, image mask, index shift)
STAR_TABLE = (
    (-1, PAIR_MASKS[5], PAIR_MASKS[0]),
    (1, PAIR_MASKS[4], PAIR_MASKS[1]),
    (-1, PAIR_MASKS[3], PAIR_MASKS[2]),
    (1, PAIR_MASKS[2], PAIR_MASKS[3]),
    (-1, PAIR_MASKS[1], PAIR_MASKS[4]),
    (1, PAIR_MASKS[0], PAIR_MASKS[5]),
)


def star_table_mismatches(mode: str = EXACT) -> list[int]:
    one = Matrix2.identity(mode)
    bad = []
    for j, (m, (sign, image, shift)) in enumerate(zip(PAIR_MASKS, STAR_TABLE), start=1):
        got = star(Cochain.basis((0, 0, 0, 0), m, one))
        want = Cochain.basis(OFFSETS[shift], image, one if sign > 0 else -one)
        if got != want:
            bad.append(j)
    return bad


def suite_star_laws(ctx: Context) -> list[CheckResult]:
    def table(rng, t):
        return not star_table_mismatches(ctx.mode)

    def volume_products(rng, t):
        # s cup *s is -V for a time edge and +V otherwise
        one = Matrix2.identity(ctx.mode)
        for p in range(NAXES + 1):
            for m in MASKS_BY_DEGREE[p]:
                s = Cochain.basis((0, 0, 0, 0), m, one)
                want = Cochain.basis((0, 0, 0, 0), FULL_MASK, one if not m & 1 else -one)
                if cup(s, star(s)) != want:
                    return False
        return True

    out = [run_check("star-table", ctx, table, trials=1),
           run_check("volume-products", ctx, volume_products, trials=1)]
    for p in (1, 2):
        def closed(rng, t, p=p):
            f = random_form(rng, p, ctx.box, ctx.mode)
            return double_star(f) - double_star_closed_form(f)
        out.append(run_check(f"double-star-law[p={p}]", ctx, closed))
    for p in range(NAXES + 1):
        def inverse(rng, t, p=p):
            f = random_form(rng, p, ctx.box, ctx.mode)
            return (star(star_inverse(f)) - f) + (star_inverse(star(f)) - f)
        out.append(run_check(f"star-inverse[p={p}]", ctx, inverse))
    return out


PERIODIC_EXTENTS = (2, 2, 2, 2)


def _coefficient_kind(mode: DualityMode) -> str:
    return "sl2c" if mode.is_imaginary else "su2"


def suite_selfdual(ctx: Context, fuzz: int | None = None) -> list[CheckResult]:
    out = []
    for mode in DualityMode:
        kind = _coefficient_kind(mode)

        def identity(rng, t, mode=mode, kind=kind):
            f = random_periodic_form(rng, 2, PERIODIC_EXTENTS, ctx.mode, kind=kind)
            return diagonal_from_operator_residual(operator_residual(f, mode), mode) - diagonal_residual(f, mode)

        def solutions(rng, t, mode=mode, kind=kind):
            x = project_to_diagonal(random_periodic_form(rng, 2, PERIODIC_EXTENTS, ctx.mode, kind=kind), mode)
            g = solution_from_diagonal(x, mode)
            plus, minus = eigen_split(x, mode)
            return (operator_residual(g, mode) + diagonal_residual(g, mode)
                    + operator_residual(plus, mode) + (plus + minus - x))

        def sign_law(rng, t, mode=mode, kind=kind):
            x = project_to_diagonal(random_periodic_form(rng, 2, PERIODIC_EXTENTS, ctx.mode, kind=kind), mode)
            return double_star_sign_check(x, mode, ctx.tol)

        def triviality(rng, t, mode=mode):
            f = random_form(rng, 2, Box.cube(2), ctx.mode, density=0.3)
            if f.is_zero():
                f = random_basis_form(rng, 2, Box.cube(2), ctx.mode)
            report = finite_support_triviality(f, mode, ctx.tol)
            return not report.satisfies and report.certified

        name = mode.value
        out.append(run_check(f"operator-implies-diagonal[{name}]", ctx, identity))
        out.append(run_check(f"diagonal-solutions[{name}]", ctx, solutions))
        out.append(run_check(f"double-star-sign[{name}]", ctx, sign_law))
        out.append(run_check(f"finite-support-triviality[{name}]", ctx, triviality, trials=fuzz))
    return out


ORACLE_BOX = Box.cube(2)


def suite_oracles(ctx: Context) -> list[CheckResult]:
    from . import oracle

    out = []
    for p in range(NAXES):
        def d(rng, t, p=p):
            f = random_form(rng, p, ORACLE_BOX, ctx.mode)
            return coboundary(f) - oracle.oracle_coboundary(f)
        out.append(run_check(f"oracle-coboundary[p={p}]", ctx, d))
    for p in range(NAXES + 1):
        def s(rng, t, p=p):
            f = random_form(rng, p, ORACLE_BOX, ctx.mode)
            return star(f) - oracle.oracle_star(f)
        out.append(run_check(f"oracle-star[p={p}]", ctx, s))
    for p, q in itertools.product(range(NAXES + 1), repeat=2):
        if p + q > NAXES:
            continue
        def c(rng, t, p=p, q=q):
            f = random_form(rng, p, ORACLE_BOX, ctx.mode)
            g = random_form(rng, q, ORACLE_BOX, ctx.mode)
            return cup(f, g) - oracle.oracle_cup(f, g)
        out.append(run_check(f"oracle-cup[p={p},q={q}]", ctx, c))
    return out


SUITES: dict[str, Callable[[Context], list[CheckResult]]] = {
    "leibniz": suite_leibniz,
    "bianchi": suite_bianchi,
    "gauge-covariance": suite_gauge_covariance,
    "theorem1": suite_theorem1,
    "lemma1": suite_lemma1,
    "lemma2": suite_lemma2,
    "lemma2-converse": suite_lemma2_converse,
    "adjointness": suite_adjointness,
    "theorem2": suite_theorem2,
    "lemma3": suite_lemma3,
    "star-laws": suite_star_laws,
    "selfdual": suite_selfdual,
    "oracles": suite_oracles,
}

# suites whose support conditions need at least two sites per axis
MARGIN_SUITES = frozenset({"adjointness", "theorem2", "lemma3"})


def run_suite(name: str, ctx: Context) -> SuiteReport:
    if name != "all" and name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(['all', *SUITES])}")
    needs_margin = name == "all" or name in MARGIN_SUITES
    if needs_margin and any(n < 2 for n in ctx.box.extents):
        raise PreconditionError(f"suite {name!r} needs every box extent >= 2, got {ctx.box.extents}")
    suites = SUITES.values() if name == "all" else [SUITES[name]]
    checks = [c for suite in suites for c in suite(ctx)]
    return SuiteReport(name, ctx.mode, ctx.box.extents, ctx.trials, ctx.seed, checks)
