"""Critical-orbit classification: trapping region, escape/cycle verdicts, and
per-parameter classification from the two free critical orbits."""
from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum
from typing import Optional

from . import _kernel
from .errors import CritsliceError
from .family import MapParams, critical_points
from .slices import SliceKind, SlicePoint, resolve


class OrbitLabel(IntEnum):
    ESCAPE_ZERO = _kernel.ESC0
    ESCAPE_INF = _kernel.ESCINF
    MARKED_CYCLE = _kernel.MARKED
    OTHER_CYCLE = _kernel.OTHER
    BOUNDED_UNDECIDED = _kernel.UNDEC
    SINGULAR = _kernel.SING


#: Labels that keep a parameter out of the connectedness locus.
ESCAPED_LABELS = frozenset(
    {OrbitLabel.ESCAPE_ZERO, OrbitLabel.ESCAPE_INF, OrbitLabel.SINGULAR}
)

CYCLE_LABELS = frozenset({OrbitLabel.MARKED_CYCLE, OrbitLabel.OTHER_CYCLE})


@dataclass(frozen=True)
class TrappingRegion:
    """Annulus confining all bounded dynamics; outside it orbits move
    monotonically toward 0 or infinity.  ``adjusted`` flags the (defensive)
    swap-and-widen repair of a numerically inverted pair."""

    inner: float
    outer: float
    adjusted: bool = False


def trapping_region(p: MapParams) -> TrappingRegion:
    """Radii min{|a|/2, |g|/(2|b|), (|g|/(3|a|))^(1/(d-1))} and
    max{2|a|, 2|g|/|b|, (3|b|)^(1/(d-1))}; terms whose formula divides by a
    vanishing coefficient are dropped."""
    p.require_non_degenerate()
    aa = abs(p.alpha)
    ab = abs(p.beta)
    ag = abs(p.gamma)
    inv = 1.0 / (p.d - 1)
    inner_terms = [aa / 2.0]
    outer_terms = [2.0 * aa, (3.0 * ab) ** inv]
    if ab > 0.0:
        inner_terms.append(ag / (2.0 * ab))
        outer_terms.append(2.0 * ag / ab)
    if aa > 0.0:
        inner_terms.append((ag / (3.0 * aa)) ** inv)
    inner = min(inner_terms)
    outer = max(outer_terms)
    if inner > outer:
        inner, outer = outer / 2.0, inner * 2.0
        return TrappingRegion(inner, outer, adjusted=True)
    return TrappingRegion(inner, outer)


@dataclass(frozen=True)
class ClassifierConfig:
    """Iteration budget and tolerances of the classification protocol."""

    max_iter: int = 4000
    escape_magnitude: float = 1e12
    eps_cycle: float = 1e-10
    eps_attract: float = 1e-6
    max_period: int = 64

    def __post_init__(self):
        if min(self.max_iter, self.escape_magnitude, self.eps_cycle,
               self.eps_attract, self.max_period) <= 0:
            raise ValueError("all classifier parameters must be positive")
        if self.max_iter < 4 * self.max_period:
            raise ValueError("max_iter must be at least 4 * max_period")


@dataclass(frozen=True)
class OrbitVerdict:
    """Fate of one critical orbit.  period/multiplier are present exactly for
    cycle labels; ``resonant`` is set on unit-radii Blaschke runs and records
    whether the detected cycle lies on the unit circle."""

    label: OrbitLabel
    iterations_used: int
    period: Optional[int] = None
    multiplier_estimate: Optional[complex] = None
    resonant: Optional[bool] = None

    def __post_init__(self):
        has_cycle = self.label in CYCLE_LABELS
        if has_cycle != (self.period is not None) or has_cycle != (
            self.multiplier_estimate is not None
        ):
            raise ValueError("period and multiplier present iff a cycle was detected")

    @property
    def escaped(self) -> bool:
        return self.label in ESCAPED_LABELS


@dataclass(frozen=True)
class PixelClass:
    """Joint verdict of the two critical orbits for one parameter."""

    orbit1: OrbitVerdict
    orbit2: OrbitVerdict
    in_connectedness_locus: bool

    @classmethod
    def from_orbits(cls, orbit1: OrbitVerdict, orbit2: OrbitVerdict) -> "PixelClass":
        return cls(orbit1, orbit2, not (orbit1.escaped or orbit2.escaped))


def _verdict_from_raw(label, iters, period, mult, circle_dist,
                      cfg: ClassifierConfig, resonance: bool) -> OrbitVerdict:
    label = OrbitLabel(int(label))
    if label in CYCLE_LABELS:
        res = (circle_dist <= cfg.eps_attract) if resonance else None
        return OrbitVerdict(label, int(iters), int(period), complex(mult), res)
    return OrbitVerdict(label, int(iters))


def singular_verdict() -> OrbitVerdict:
    return OrbitVerdict(OrbitLabel.SINGULAR, 0)


def classify_orbit(p: MapParams, z0: complex, region: TrappingRegion,
                   cfg: ClassifierConfig, resonance: bool = False) -> OrbitVerdict:
    """Classify the orbit of z0 under p within the given trapping region."""
    p.require_non_degenerate()
    raw = _kernel.orbit_verdict(
        p.alpha, p.beta, p.gamma, p.d, complex(z0),
        region.inner, region.outer,
        cfg.max_iter, cfg.escape_magnitude, cfg.eps_cycle,
        cfg.eps_attract, cfg.max_period,
    )
    return _verdict_from_raw(*raw, cfg=cfg, resonance=resonance)


def _is_unit_blaschke(pt: SlicePoint) -> bool:
    return pt.spec.kind is SliceKind.BLASCHKE and pt.spec.radii == (1.0, 1.0)


def classify_parameter(pt: SlicePoint, cfg: ClassifierConfig = ClassifierConfig()) -> PixelClass:
    """Resolve a slice point and classify both free critical orbits.  Any
    parametrization degeneracy yields Singular verdicts, never an exception."""
    try:
        p = resolve(pt)
        c1, c2 = critical_points(p)
        region = trapping_region(p)
    except CritsliceError:
        return PixelClass.from_orbits(singular_verdict(), singular_verdict())
    resonance = _is_unit_blaschke(pt)
    v1 = classify_orbit(p, c1, region, cfg, resonance)
    v2 = classify_orbit(p, c2, region, cfg, resonance)
    return PixelClass.from_orbits(v1, v2)
