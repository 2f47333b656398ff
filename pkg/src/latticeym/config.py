"""JSON field configurations: a connection, lattice metadata and an optional gauge.

Scalars are written as ``[re, im]`` string pairs: ``"p/q"`` in exact mode and
17 significant digits in float mode, so saving and loading is bit-exact.
Axes in files are numbered 1..4 with axis 1 the time direction.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction

from .cochains import Cochain
from .gauge import GaugeZeroForm
from .lattice_complex import MASKS_BY_DEGREE, NAXES, MultiIndex, axes_of
from .matrix_algebra import EXACT, MODES, GaussianRational, Matrix2, matrix

FREE = "free"
PERIODIC = "periodic"
LATTICES = (FREE, PERIODIC)
GAUGE_PATTERNS = ("constant", "parity", "explicit")


class ConfigError(ValueError):
    """Malformed configuration; the message names the offending field."""


# -- scalars and matrices -------------------------------------------------------------------


def format_scalar(z, mode: str) -> list[str]:
    if mode == EXACT:
        z = GaussianRational.coerce(z)
        return [f"{z.re.numerator}/{z.re.denominator}", f"{z.im.numerator}/{z.im.denominator}"]
    z = complex(z)
    return [format(z.real, ".17g"), format(z.imag, ".17g")]


def parse_scalar(value, mode: str, where: str):
    if not (isinstance(value, list) and len(value) == 2 and all(isinstance(s, str) for s in value)):
        raise ConfigError(f"{where}: expected [re, im] as two strings, got {value!r}")
    try:
        if mode == EXACT:
            return GaussianRational(Fraction(value[0]), Fraction(value[1]))
        return complex(float(value[0]), float(value[1]))
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"{where}: cannot parse scalar {value!r} ({exc})") from None


def format_matrix(m: Matrix2) -> list:
    return [[format_scalar(z, m.mode) for z in row] for row in m.entries()]


def parse_matrix(value, mode: str, where: str) -> Matrix2:
    if not (isinstance(value, list) and len(value) == 2 and all(isinstance(r, list) and len(r) == 2 for r in value)):
        raise ConfigError(f"{where}: expected a 2x2 nested list")
    rows = [[parse_scalar(value[i][j], mode, f"{where}[{i}][{j}]") for j in range(2)] for i in range(2)]
    return matrix(rows, mode)


def _parse_site(value, where: str) -> MultiIndex:
    if not (isinstance(value, list) and len(value) == NAXES and all(isinstance(x, int) and not isinstance(x, bool) for x in value)):
        raise ConfigError(f"{where}: expected four integers, got {value!r}")
    return tuple(value)  # type: ignore[return-value]


def _parse_axis(value, where: str) -> int:
    if not isinstance(value, int) or isinstance(value, bool) or not 1 <= value <= NAXES:
        raise ConfigError(f"{where}: axis must be an integer 1..4, got {value!r}")
    return value - 1


def _require(obj: dict, key: str, where: str):
    if not isinstance(obj, dict):
        raise ConfigError(f"{where}: expected an object")
    if key not in obj:
        raise ConfigError(f"{where}: missing field {key!r}")
    return obj[key]


# -- gauge section -----------------------------------------------------------------------------


@dataclass(frozen=True)
class GaugeSpec:
    """``constant`` (``values[0]``), ``parity`` (even, odd) or ``explicit`` site values on identity."""

    pattern: str
    values: tuple = ()
    sites: tuple = ()

    def build(self) -> GaugeZeroForm:
        if self.pattern == "constant":
            return GaugeZeroForm.constant(self.values[0])
        if self.pattern == "parity":
            from .gauge import make_diagonal_gauge

            return make_diagonal_gauge(*self.values)
        mode = self.values[0].mode if self.values else EXACT
        return GaugeZeroForm.explicit(dict(zip(self.sites, self.values)), mode)

    def to_json(self) -> dict:
        if self.pattern == "constant":
            return {"pattern": "constant", "matrix": format_matrix(self.values[0])}
        if self.pattern == "parity":
            return {"pattern": "parity", "even": format_matrix(self.values[0]), "odd": format_matrix(self.values[1])}
        return {
            "pattern": "explicit",
            "values": [{"k": list(k), "matrix": format_matrix(v)} for k, v in zip(self.sites, self.values)],
        }

    @classmethod
    def from_json(cls, obj, mode: str, where: str = "gauge") -> "GaugeSpec":
        pattern = _require(obj, "pattern", where)
        if pattern == "constant":
            return cls("constant", (parse_matrix(_require(obj, "matrix", where), mode, f"{where}.matrix"),))
        if pattern == "parity":
            even = parse_matrix(_require(obj, "even", where), mode, f"{where}.even")
            odd = parse_matrix(_require(obj, "odd", where), mode, f"{where}.odd")
            return cls("parity", (even, odd))
        if pattern == "explicit":
            records = _require(obj, "values", where)
            if not isinstance(records, list):
                raise ConfigError(f"{where}.values: expected a list")
            sites, values = [], []
            for i, rec in enumerate(records):
                w = f"{where}.values[{i}]"
                sites.append(_parse_site(_require(rec, "k", w), f"{w}.k"))
                values.append(parse_matrix(_require(rec, "matrix", w), mode, f"{w}.matrix"))
            order = sorted(range(len(sites)), key=lambda i: sites[i])
            return cls("explicit", tuple(values[i] for i in order), tuple(sites[i] for i in order))
        raise ConfigError(f"{where}.pattern: expected one of {GAUGE_PATTERNS}, got {pattern!r}")


# -- configuration --------------------------------------------------------------------------------


@dataclass
class FieldConfig:
    mode: str
    lattice: str
    extents: MultiIndex
    connection: Cochain
    seed: int | None = None
    su2_algebra: bool = False
    gauge: GaugeSpec | None = None

    def __post_init__(self):
        if self.mode not in MODES:
            raise ConfigError(f"metadata.scalar_mode: expected one of {MODES}, got {self.mode!r}")
        if self.lattice not in LATTICES:
            raise ConfigError(f"metadata.lattice: expected one of {LATTICES}, got {self.lattice!r}")

    def __eq__(self, other):
        if not isinstance(other, FieldConfig):
            return NotImplemented
        return dump(self) == dump(other)


def _records(values: dict) -> list[dict]:
    out = []
    for (k, m), v in sorted(values.items()):
        out.append({"k": list(k), "axis": axes_of(m)[0] + 1, "matrix": format_matrix(v)})
    return out


def to_json(cfg: FieldConfig) -> dict:
    a = cfg.connection
    meta = {
        "scalar_mode": cfg.mode,
        "lattice": cfg.lattice,
        "extents": list(cfg.extents),
        "seed": cfg.seed,
        "su2_algebra": cfg.su2_algebra,
    }
    out: dict = {"metadata": meta}
    if cfg.lattice == PERIODIC:
        if a.entries:
            raise ConfigError("a periodic-lattice connection cannot carry finite overrides")
        values = {}
        for k in itertools.product(*(range(n) for n in cfg.extents)):
            for m in MASKS_BY_DEGREE[1]:
                v = a.value(k, m)
                if not v.is_zero():
                    values[(k, m)] = v
        out["connection"] = _records(values)
    else:
        out["connection"] = _records(dict(a.entries))
        if a.has_background:
            out["connection_background"] = {
                "period": list(a.period),
                "records": _records({(r, m): v for (r, m), v in a.background_values().items() if not v.is_zero()}),
            }
    if cfg.gauge is not None:
        out["gauge"] = cfg.gauge.to_json()
    return out


def dump(cfg: FieldConfig) -> str:
    return json.dumps(to_json(cfg), indent=2) + "\n"


def _parse_records(records, mode: str, where: str) -> dict:
    if not isinstance(records, list):
        raise ConfigError(f"{where}: expected a list of records")
    values = {}
    for i, rec in enumerate(records):
        w = f"{where}[{i}]"
        k = _parse_site(_require(rec, "k", w), f"{w}.k")
        axis = _parse_axis(_require(rec, "axis", w), f"{w}.axis")
        key = (k, 1 << axis)
        if key in values:
            raise ConfigError(f"{w}: duplicate record for site {list(k)} axis {axis + 1}")
        values[key] = parse_matrix(_require(rec, "matrix", w), mode, f"{w}.matrix")
    return values


def from_json(obj) -> FieldConfig:
    meta = _require(obj, "metadata", "config")
    mode = _require(meta, "scalar_mode", "metadata")
    if mode not in MODES:
        raise ConfigError(f"metadata.scalar_mode: expected one of {MODES}, got {mode!r}")
    lattice = _require(meta, "lattice", "metadata")
    if lattice not in LATTICES:
        raise ConfigError(f"metadata.lattice: expected one of {LATTICES}, got {lattice!r}")
    ext = _require(meta, "extents", "metadata")
    if not (isinstance(ext, list) and len(ext) == NAXES and all(isinstance(n, int) and n >= 1 for n in ext)):
        raise ConfigError(f"metadata.extents: expected four positive integers, got {ext!r}")
    extents = tuple(ext)
    seed = meta.get("seed")
    if seed is not None and not isinstance(seed, int):
        raise ConfigError(f"metadata.seed: expected an integer or null, got {seed!r}")
    su2 = meta.get("su2_algebra", False)
    if not isinstance(su2, bool):
        raise ConfigError(f"metadata.su2_algebra: expected true or false, got {su2!r}")

    values = _parse_records(_require(obj, "connection", "config"), mode, "connection")
    if lattice == PERIODIC:
        for (k, _), _v in values.items():
            if not all(0 <= x < n for x, n in zip(k, extents)):
                raise ConfigError(f"connection: site {list(k)} outside the periodic extents {list(extents)}")
        conn = Cochain.periodic(1, extents, values, mode=mode)
        if "connection_background" in obj:
            raise ConfigError("connection_background: not allowed on a periodic lattice")
    else:
        bg, period = {}, (1, 1, 1, 1)
        if "connection_background" in obj:
            section = obj["connection_background"]
            period = _require(section, "period", "connection_background")
            if not (isinstance(period, list) and len(period) == NAXES and all(isinstance(n, int) and n >= 1 for n in period)):
                raise ConfigError(f"connection_background.period: expected four positive integers, got {period!r}")
            bg = _parse_records(_require(section, "records", "connection_background"), mode, "connection_background.records")
        conn = Cochain(1, values, mode=mode, background=bg, period=tuple(period))
    gauge = GaugeSpec.from_json(obj["gauge"], mode) if "gauge" in obj else None
    known = {"metadata", "connection", "connection_background", "gauge"}
    unknown = sorted(set(obj) - known)
    if unknown:
        raise ConfigError(f"config: unknown top-level field(s) {unknown}")
    return FieldConfig(mode, lattice, extents, conn, seed, su2, gauge)


def loads(text: str) -> FieldConfig:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return from_json(obj)


def load(path) -> FieldConfig:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


def save(cfg: FieldConfig, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dump(cfg))


def load_gauge(path, mode: str) -> GaugeSpec:
    """A gauge section stored on its own (or the ``gauge`` field of a full config)."""
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if isinstance(obj, dict) and "gauge" in obj and "pattern" not in obj:
        obj = obj["gauge"]
    return GaugeSpec.from_json(obj, mode)


def random_config(seed: int, extents: MultiIndex, mode: str = EXACT, lattice: str = FREE, *,
                  su2: bool = True, density: float = 1.0) -> FieldConfig:
    """A random connection on the box (free) or the torus (periodic) with the given extents."""
    from .lattice_complex import Box
    from .sampling import random_form, random_periodic_form

    kind = "su2" if su2 else "generic"
    if lattice == PERIODIC:
        conn = random_periodic_form(seed, 1, extents, mode, kind=kind)
    else:
        conn = random_form(seed, 1, Box(tuple(extents)), mode, density=density, kind=kind)
    return FieldConfig(mode, lattice, tuple(extents), conn, seed, su2)


__all__ = [
    "ConfigError",
    "FieldConfig",
    "GaugeSpec",
    "dump",
    "format_scalar",
    "from_json",
    "load",
    "load_gauge",
    "loads",
    "parse_scalar",
    "random_config",
    "save",
    "to_json",
]
