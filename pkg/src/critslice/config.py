"""Plain-text key=value run configuration, its (de)serialization, and the
figure-reproduction registry.

Windows in the registry are estimates chosen to contain the visible
structures of each slice; resolutions default to desk scale (512 x 512).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, fields, replace
from fractions import Fraction

from .classifier import ClassifierConfig
from .errors import ConfigError
from .raster import PALETTES, Viewport
from .slices import Sheet, SliceKind, SliceSpec, View

# "lambda" is a reserved word, so the dataclass field is "lam".
_KEY_OVERRIDES = {"lam": "lambda"}
_INT_FIELDS = {"d", "px", "py", "max_iter", "max_period", "threads"}
_FLOAT_FIELDS = {"width", "escape_magnitude", "eps_cycle", "eps_attract"}

_KINDS = {
    "s1zero": SliceKind.S1_ZERO,
    "s2zero": SliceKind.S2_ZERO,
    "s1lambda": SliceKind.S1_LAMBDA,
    "s2lambda": SliceKind.S2_LAMBDA,
    "blaschke": SliceKind.BLASCHKE,
    "cubic": SliceKind.CUBIC_PER1,
}

#: Kinds accepted by the slice subcommand (the cubic comparison family is
#: reached through the reproduction registry).
CLI_KINDS = ("s1zero", "s2zero", "s1lambda", "s2lambda", "blaschke")


@dataclass
class RunConfig:
    """Flat bag of every run setting; the unit of provenance sidecars."""

    command: str = "slice"
    kind: str | None = None
    d: int = 3
    theta: str | None = None
    lam: str | None = None
    sheet: str = "plus"
    radii: str = "1,1"
    view: str = "raw"
    alpha: str | None = None
    beta: str | None = None
    gamma: str | None = None
    coord: str | None = None
    center: str = "0,0"
    width: float | None = None
    px: int = 512
    py: int = 512
    max_iter: int = 4000
    escape_magnitude: float = 1e12
    eps_cycle: float = 1e-10
    eps_attract: float = 1e-6
    max_period: int = 64
    out: str | None = None
    csv: str | None = None
    palette: str = "default"
    threads: int = 1


def config_key(field_name: str) -> str:
    return _KEY_OVERRIDES.get(field_name, field_name)


def render_config(cfg: RunConfig) -> str:
    """Canonical text form: sorted key=value lines, unset keys omitted."""
    lines = []
    for f in fields(RunConfig):
        value = getattr(cfg, f.name)
        if value is None:
            continue
        lines.append(f"{config_key(f.name)}={value}")
    return "\n".join(sorted(lines)) + "\n"


def parse_config(text: str, base: RunConfig | None = None) -> RunConfig:
    """Inverse of render_config.  Unknown keys are rejected."""
    cfg = replace(base) if base is not None else RunConfig()
    known = {config_key(f.name): f.name for f in fields(RunConfig)}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected key=value, got {line!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if key not in known:
            raise ConfigError(f"line {lineno}: unknown config key {key!r}")
        name = known[key]
        try:
            if name in _INT_FIELDS:
                setattr(cfg, name, int(value))
            elif name in _FLOAT_FIELDS:
                setattr(cfg, name, float(value))
            else:
                setattr(cfg, name, value)
        except ValueError as exc:
            raise ConfigError(f"line {lineno}: bad value for {key}: {value!r}") from exc
    return cfg


def load_config(path, base: RunConfig | None = None) -> RunConfig:
    with open(str(path), "r", encoding="utf-8") as fh:
        return parse_config(fh.read(), base=base)


def parse_complex(text: str, what: str = "value") -> complex:
    parts = [p.strip() for p in str(text).split(",")]
    try:
        if len(parts) == 1:
            return complex(float(parts[0]), 0.0)
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        pass
    raise ConfigError(f"cannot parse {what} {text!r}; expected re,im")


def parse_theta(text: str):
    """Rational angles come in exactly as p/q; anything else is a float literal."""
    text = str(text).strip()
    if "/" in text:
        num, _, den = text.partition("/")
        try:
            return Fraction(int(num), int(den))
        except (ValueError, ZeroDivisionError) as exc:
            raise ConfigError(f"cannot parse rotation number {text!r}") from exc
    try:
        return float(text)
    except ValueError as exc:
        raise ConfigError(f"cannot parse rotation number {text!r}") from exc


def parse_radii(text: str) -> tuple:
    parts = [p.strip() for p in str(text).split(",")]
    if len(parts) != 2:
        raise ConfigError(f"radii must be r_a,r_b, got {text!r}")
    try:
        return (float(parts[0]), float(parts[1]))
    except ValueError as exc:
        raise ConfigError(f"radii must be numeric, got {text!r}") from exc


def build_spec(cfg: RunConfig) -> SliceSpec:
    if cfg.kind is None:
        raise ConfigError("a slice kind is required")
    if cfg.kind not in _KINDS:
        raise ConfigError(f"unknown slice kind {cfg.kind!r}")
    if cfg.theta is not None and cfg.lam is not None:
        raise ConfigError("give either theta or lambda, not both")
    try:
        sheet = Sheet(cfg.sheet)
        view = View(cfg.view)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    theta = parse_theta(cfg.theta) if cfg.theta is not None else None
    lam = parse_complex(cfg.lam, "lambda") if cfg.lam is not None else 0j
    try:
        return SliceSpec(
            kind=_KINDS[cfg.kind], d=cfg.d, lam=lam, theta=theta,
            sheet=sheet, radii=parse_radii(cfg.radii), view=view,
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def build_viewport(cfg: RunConfig, default_width: float = 8.0) -> Viewport:
    width = cfg.width if cfg.width is not None else default_width
    return Viewport(parse_complex(cfg.center, "center"), width, cfg.px, cfg.py)


def build_classifier(cfg: RunConfig) -> ClassifierConfig:
    try:
        return ClassifierConfig(
            max_iter=cfg.max_iter,
            escape_magnitude=cfg.escape_magnitude,
            eps_cycle=cfg.eps_cycle,
            eps_attract=cfg.eps_attract,
            max_period=cfg.max_period,
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def get_palette(cfg: RunConfig):
    if cfg.palette not in PALETTES:
        raise ConfigError(f"unknown palette {cfg.palette!r}")
    return PALETTES[cfg.palette]


#: Inverse golden ratio, the canonical irrational rotation number.
GOLDEN_THETA = (math.sqrt(5.0) - 1.0) / 2.0

#: Desk-scale reproduction registry: id -> (description, stored RunConfig).
FIGURES = {
    "fig2-s1zero-large-d": (
        "high-degree period-1 zero-multiplier slice",
        RunConfig(command="slice", kind="s1zero", d=8, center="4,0", width=18.0),
    ),
    "fig3-s2zero-d3": (
        "period-2 zero-multiplier slice at d=3",
        RunConfig(command="slice", kind="s2zero", d=3, center="0,0", width=8.0),
    ),
    "fig6-s1-parabolic": (
        "period-1 slice at rational rotation 1/180",
        RunConfig(command="slice", kind="s1lambda", d=3, theta="1/180",
                  center="0,0", width=12.0),
    ),
    "fig7-golden-s1": (
        "period-1 slice at the inverse golden-ratio rotation",
        RunConfig(command="slice", kind="s1lambda", d=3, theta=repr(GOLDEN_THETA),
                  center="0,0", width=12.0),
    ),
    "fig8-gallery-s2": (
        "period-2 slice at rotation 1/3",
        RunConfig(command="slice", kind="s2lambda", d=3, theta="1/3",
                  center="0,0", width=6.0),
    ),
    "fig10-blaschke-torus": (
        "unit-circle torus slice (resonance tongues)",
        RunConfig(command="slice", kind="blaschke", d=3, radii="1,1",
                  center="0.5,0.5", width=1.0),
    ),
    "fig12-island": (
        "interior-radius torus slice with isolated stability islands",
        RunConfig(command="slice", kind="blaschke", d=3, radii="0.97,0.97",
                  center="0.5,0.5", width=1.0),
    ),
    "fig-cubic-compare": (
        "comparison cubic slice at zero multiplier",
        RunConfig(command="slice", kind="cubic", lam="0,0", center="0,0", width=6.0),
    ),
}
