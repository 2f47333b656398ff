"""Command-line interface: ``latticeym verify | residual | gauge | random-config``.

Exit codes: 0 success, 1 an identity failed, 2 usage, parse or validation error.
"""

from __future__ import annotations

import itertools
import json
import sys

import click

from . import config as cfgio
from .cochains import Cochain
from .errors import PreconditionError, SingularMatrixError
from .gauge import (
    V26,
    V40,
    bianchi_residual,
    conjugate,
    gauge_transform_connection,
    is_su2_valued,
    satisfies_diagonal_condition,
    ym_residual,
)
from .gauge import curvature as curvature_of
from .lattice_complex import MASKS_BY_DEGREE, Box, axes_of
from .matrix_algebra import EXACT, FLOAT
from .selfdual import DualityMode, diagonal_residual, operator_residual
from .suites import SUITES, Context, run_suite

RESIDUALS = (V26, V40, "bianchi") + tuple(m.value for m in DualityMode)


class InputError(click.ClickException):
    exit_code = 2


def _parse_size(text: str) -> Box:
    try:
        parts = [int(x) for x in text.split(",")]
    except ValueError:
        raise click.BadParameter(f"expected four comma-separated integers, got {text!r}") from None
    if len(parts) == 1:
        parts = parts * 4
    if len(parts) != 4 or any(n < 1 for n in parts):
        raise click.BadParameter(f"expected four positive extents, got {text!r}")
    return Box(tuple(parts))


def _emit(payload: dict, output) -> None:
    text = json.dumps(payload, indent=2) + "\n"
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


def _load_config(path) -> cfgio.FieldConfig:
    try:
        return cfgio.load(path)
    except (cfgio.ConfigError, PreconditionError, SingularMatrixError) as exc:
        raise InputError(f"{path}: {exc}") from None
    except OSError as exc:
        raise InputError(str(exc)) from None


@click.group()
@click.version_option(package_name="artifact")
def main():
    """Discrete Yang-Mills fields on a four-dimensional Minkowski lattice."""


# -- verify ------------------------------------------------------------------------------------


@main.command()
@click.argument("suite", type=click.Choice(["all", *SUITES]))
@click.option("--size", default="3,3,3,3", show_default=True, help="Box extents N1,N2,N3,N4.")
@click.option("--seeds", default=25, show_default=True, type=click.IntRange(min=1), help="Random trials per check.")
@click.option("--exact/--float", "exact", default=True, help="Scalar mode (default exact).")
@click.option("--seed", default=0, show_default=True, type=int, help="Base seed.")
@click.option("--output", type=click.Path(dir_okay=False, writable=True), help="Write the report here.")
@click.option("--timings", is_flag=True, help="Include wall-clock seconds (reports are then not reproducible).")
def verify(suite, size, seeds, exact, seed, output, timings):
    """Run a randomized identity suite and print a JSON report."""
    box = _parse_size(size)
    ctx = Context(box, seeds, EXACT if exact else FLOAT, seed)
    try:
        report = run_suite(suite, ctx)
    except PreconditionError as exc:
        raise InputError(str(exc)) from None
    _emit(report.to_dict(timings), output)
    for check in report.checks:
        if not check.passed:
            click.echo(f"FAILED {check.identity}", err=True)
    sys.exit(0 if report.passed else 1)


# -- residual ----------------------------------------------------------------------------------


def cochain_records(form: Cochain, extents=None) -> list[dict]:
    """Coefficients as records; periodic fields are listed over one copy of the torus."""
    if extents is not None:
        keys = itertools.product(itertools.product(*(range(n) for n in extents)), _masks(form.degree))
        items = [((k, m), form.value(k, m)) for k, m in keys]
    else:
        items = sorted(form.entries.items())
    out = []
    for (k, m), v in items:
        if v.is_zero():
            continue
        out.append({"k": list(k), "axes": [a + 1 for a in axes_of(m)], "matrix": cfgio.format_matrix(v)})
    return out


def _masks(degree):
    return MASKS_BY_DEGREE[degree] if 0 <= degree <= 4 else ()


def _summary(form: Cochain, cfg: cfgio.FieldConfig, full: bool) -> dict:
    out = {
        "is_zero": form.is_zero(),
        "max_norm": form.max_norm(),
        "sum_norm": _sum_norm(form, cfg),
    }
    if full:
        if cfg.lattice == cfgio.PERIODIC:
            out["coefficients"] = cochain_records(form, cfg.extents)
        else:
            out["coefficients"] = cochain_records(form)
            if form.has_background:
                out["background_period"] = list(form.period)
                out["background"] = [
                    {"k": list(r), "axes": [a + 1 for a in axes_of(m)], "matrix": cfgio.format_matrix(v)}
                    for (r, m), v in sorted(form.background_values().items()) if not v.is_zero()
                ]
    return out


def _sum_norm(form: Cochain, cfg: cfgio.FieldConfig) -> float:
    if cfg.lattice != cfgio.PERIODIC:
        return form.sum_norm()
    total = 0.0
    for k in itertools.product(*(range(n) for n in cfg.extents)):
        for m in _masks(form.degree):
            for row in form.value(k, m).entries():
                for z in row:
                    total += abs(z)
    return total


@main.command()
@click.argument("config_path", metavar="CONFIG", type=click.Path(exists=True, dir_okay=False))
@click.option("--which", type=click.Choice(RESIDUALS), multiple=True,
              help="Residual(s) to evaluate; repeatable (default: all).")
@click.option("--require-su2", is_flag=True, help="Reject connections with coefficients outside su(2).")
@click.option("--full", is_flag=True, help="Also print every nonzero coefficient.")
@click.option("--output", type=click.Path(dir_okay=False, writable=True))
def residual(config_path, which, require_su2, full, output):
    """Evaluate field-equation residuals of a stored connection."""
    cfg = _load_config(config_path)
    a = cfg.connection
    if (require_su2 or cfg.su2_algebra) and not is_su2_valued(a):
        raise InputError(f"{config_path}: connection has coefficients outside su(2)")
    selected = which or RESIDUALS
    report = {"config": {"scalar_mode": cfg.mode, "lattice": cfg.lattice,
                         "extents": list(cfg.extents), "seed": cfg.seed}, "residuals": {}}
    failed = False
    f = curvature_of(a)
    for name in selected:
        if name in (V26, V40):
            report["residuals"][name] = _summary(ym_residual(a, name, f), cfg, full)
        elif name == "bianchi":
            r = bianchi_residual(a)
            entry = _summary(r, cfg, full)
            ok = r.is_zero() if cfg.mode == EXACT else r.max_norm() <= 1e-10
            entry["passed"] = ok
            failed |= not ok
            report["residuals"][name] = entry
        else:
            mode = DualityMode(name)
            report["residuals"][name] = {
                "operator": _summary(operator_residual(f, mode), cfg, full),
                "diagonal": _summary(diagonal_residual(f, mode), cfg, full),
            }
    _emit(report, output)
    sys.exit(1 if failed else 0)


# -- gauge -------------------------------------------------------------------------------------


def _check_periodic_gauge(cfg: cfgio.FieldConfig, h) -> None:
    if cfg.lattice != cfgio.PERIODIC:
        return
    if h.form.entries or any(n % p for n, p in zip(cfg.extents, h.form.period)):
        raise InputError("gauge is not periodic with the lattice extents")


@main.command()
@click.argument("config_path", metavar="CONFIG", type=click.Path(exists=True, dir_okay=False))
@click.option("--gauge", "gauge_path", type=click.Path(exists=True, dir_okay=False),
              help="JSON file with a gauge object (default: the config's own gauge field).")
@click.option("--output", type=click.Path(dir_okay=False, writable=True), help="Write the transformed config here.")
@click.option("--check-theorem1", is_flag=True,
              help="Also check that the v26 residual is conjugated by the gauge.")
def gauge(config_path, gauge_path, output, check_theorem1):
    """Apply a gauge transformation and write the transformed configuration."""
    cfg = _load_config(config_path)
    try:
        spec = cfgio.load_gauge(gauge_path, cfg.mode) if gauge_path else cfg.gauge
        if spec is None:
            raise InputError("no gauge given: pass --gauge or add a gauge field to the config")
        h = spec.build()
    except (cfgio.ConfigError, SingularMatrixError, PreconditionError) as exc:
        raise InputError(str(exc)) from None
    if h.mode != cfg.mode:
        raise InputError(f"gauge is {h.mode} but the config is {cfg.mode}")
    _check_periodic_gauge(cfg, h)
    a2 = gauge_transform_connection(cfg.connection, h)
    out = cfgio.FieldConfig(cfg.mode, cfg.lattice, cfg.extents, a2, cfg.seed,
                            cfg.su2_algebra and is_su2_valued(a2))
    text = cfgio.dump(out)
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)

    if check_theorem1:
        if not satisfies_diagonal_condition(h):
            click.echo("warning: gauge is not constant along double diagonal shifts; "
                       "the residual need not transform by conjugation (check skipped)", err=True)
            return
        gap = ym_residual(a2, V26) - conjugate(ym_residual(cfg.connection, V26), h)
        ok = gap.is_zero() if cfg.mode == EXACT else gap.max_norm() <= 1e-10
        click.echo(f"v26 residual conjugation: {'exact' if ok else 'FAILED'} (max gap {gap.max_norm():.3e})", err=True)
        if not ok:
            sys.exit(1)


# -- random configuration -------------------------------------------------------------------


@main.command("random-config")
@click.option("--size", default="2,2,2,2", show_default=True)
@click.option("--seed", default=0, show_default=True, type=int)
@click.option("--exact/--float", "exact", default=True)
@click.option("--lattice", type=click.Choice(cfgio.LATTICES), default=cfgio.FREE, show_default=True)
@click.option("--generic", is_flag=True, help="Arbitrary complex coefficients instead of su(2).")
@click.option("--output", type=click.Path(dir_okay=False, writable=True))
def random_config(size, seed, exact, lattice, generic, output):
    """Write a seeded random connection configuration."""
    box = _parse_size(size)
    cfg = cfgio.random_config(seed, box.extents, EXACT if exact else FLOAT, lattice, su2=not generic)
    text = cfgio.dump(cfg)
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


if __name__ == "__main__":  # pragma: no cover
    main()
