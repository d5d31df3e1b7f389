"""The rational family f(z) = z^d (z + alpha) / (beta z + gamma) on the sphere.

Degree d+1 maps with superattracting fixed points at 0 and infinity and two
free critical points.  All operations are pure; the point at infinity is
represented by a complex number with infinite magnitude (see ``INF``).
"""
from __future__ import annotations

import cmath
from dataclasses import dataclass

from .errors import BetaZero, DegenerateMap, NotACycle, PoleEvaluation

#: Relative tolerance for degeneracy and pole proximity.
EPS_SING = 1e-12

#: Magnitudes beyond this are collapsed to the point at infinity; such an
#: orbit belongs to the basin of infinity for every classification purpose.
OVERFLOW_LIMIT = 1e150

#: Canonical representative of the point at infinity.
INF = complex(float("inf"), 0.0)


def is_infinite(z: complex) -> bool:
    """True for infinities, NaNs, and anything past the overflow limit."""
    az = abs(complex(z))
    return not (az <= OVERFLOW_LIMIT)


@dataclass(frozen=True)
class MapParams:
    """One member of the family: coefficients (alpha, beta, gamma) and degree d >= 2."""

    alpha: complex
    beta: complex
    gamma: complex
    d: int

    def __post_init__(self):
        if int(self.d) != self.d or self.d < 2:
            raise ValueError(f"d must be an integer >= 2, got {self.d!r}")
        object.__setattr__(self, "alpha", complex(self.alpha))
        object.__setattr__(self, "beta", complex(self.beta))
        object.__setattr__(self, "gamma", complex(self.gamma))
        object.__setattr__(self, "d", int(self.d))

    @property
    def degeneracy(self) -> complex:
        return self.gamma - self.alpha * self.beta

    @property
    def non_degenerate(self) -> bool:
        scale = max(1.0, abs(self.gamma), abs(self.alpha * self.beta))
        return abs(self.degeneracy) > EPS_SING * scale

    def require_non_degenerate(self) -> "MapParams":
        if not self.non_degenerate:
            raise DegenerateMap(
                f"gamma - alpha*beta = {self.degeneracy!r} vanishes for {self}"
            )
        return self

    def conjugate(self) -> "MapParams":
        return MapParams(
            self.alpha.conjugate(), self.beta.conjugate(), self.gamma.conjugate(), self.d
        )


@dataclass(frozen=True)
class Cycle:
    """A periodic orbit: its points, period, and multiplier (product of f')."""

    points: tuple
    period: int
    multiplier: complex

    @classmethod
    def from_points(cls, p: MapParams, points, tol: float = 1e-8) -> "Cycle":
        pts = tuple(complex(w) for w in points)
        mult = cycle_multiplier(p, pts, tol=tol)
        for i in range(len(pts)):
            for j in range(i + 1, len(pts)):
                if abs(pts[i] - pts[j]) <= tol * max(1.0, abs(pts[i])):
                    raise NotACycle(f"points {i} and {j} coincide: not a minimal cycle")
        return cls(points=pts, period=len(pts), multiplier=mult)


def _zpow(z: complex, n: int) -> complex:
    # Sequential product: deterministic and overflow-transparent (inf propagates).
    w = 1.0 + 0j
    for _ in range(n):
        w *= z
    return w


def evaluate(p: MapParams, z: complex) -> complex:
    """Apply the map once.  0 and infinity are fixed; the pole -gamma/beta maps
    to infinity; any overflow collapses to ``INF``."""
    p.require_non_degenerate()
    if is_infinite(z):
        return INF
    z = complex(z)
    if z == 0:
        return 0j
    den = p.beta * z + p.gamma
    if den == 0 or abs(den) < EPS_SING * max(1.0, abs(p.beta * z), abs(p.gamma)):
        return INF
    num = _zpow(z, p.d) * (z + p.alpha)
    if is_infinite(num):
        return INF
    w = num / den
    if is_infinite(w):
        return INF
    return w


def _derivative_quadratic(p: MapParams) -> tuple:
    """Coefficients (A, B, C) of the free part of f': the numerator of f' is
    z^(d-1) * (A z^2 + B z + C) over (beta z + gamma)^2."""
    A = p.d * p.beta
    B = (p.d + 1) * p.gamma + (p.d - 1) * p.alpha * p.beta
    C = p.d * p.alpha * p.gamma
    return A, B, C


def derivative(p: MapParams, z: complex) -> complex:
    """Closed-form f'(z).  Raises PoleEvaluation too close to -gamma/beta."""
    p.require_non_degenerate()
    z = complex(z)
    den = p.beta * z + p.gamma
    if abs(den) < EPS_SING * max(1.0, abs(p.beta * z), abs(p.gamma)):
        raise PoleEvaluation(f"derivative at pole of {p}: z={z!r}")
    A, B, C = _derivative_quadratic(p)
    q = (A * z + B) * z + C
    return _zpow(z, p.d - 1) * q / (den * den)


def critical_points(p: MapParams) -> tuple:
    """The two free critical points, "+" radical root first, "-" second.

    For beta = 0 the map is a polynomial: one free critical point stays finite
    at -d*alpha/(d+1) and the other merges with the superattractor at
    infinity, so the pair (root, INF) is returned.  The monomial case
    alpha = beta = 0 has no free critical points and raises BetaZero.
    """
    p.require_non_degenerate()
    scale = max(1.0, abs(p.alpha), abs(p.gamma))
    if abs(p.beta) <= EPS_SING * scale:
        if abs(p.alpha) <= EPS_SING * max(1.0, abs(p.gamma)):
            raise BetaZero("monomial map: no free critical points")
        return (-p.d * p.alpha / (p.d + 1), INF)
    B = (p.d - 1) * p.alpha * p.beta + (p.d + 1) * p.gamma
    radicand = (p.gamma - p.alpha * p.beta) * (
        (p.d + 1) ** 2 * p.gamma - (p.d - 1) ** 2 * p.alpha * p.beta
    )
    r = cmath.sqrt(radicand)
    denom = 2 * p.d * p.beta
    # Stable evaluation: take the larger of -(B +/- r) directly, recover the
    # other root from the product alpha*gamma/beta (Vieta).
    prod = p.alpha * p.gamma / p.beta
    sp = -(B + r)
    sm = -(B - r)
    if abs(sp) >= abs(sm):
        z_plus = sp / denom
        z_minus = prod / z_plus if z_plus != 0 else sm / denom
    else:
        z_minus = sm / denom
        z_plus = prod / z_minus if z_minus != 0 else sp / denom
    return (z_plus, z_minus)


def cycle_multiplier(p: MapParams, points, tol: float = 1e-8) -> complex:
    """Product of f' along an approximate cycle.  The points must map each to
    the next (cyclically) within tol * max(1, |next|)."""
    pts = [complex(w) for w in points]
    if not pts:
        raise NotACycle("empty point list")
    n = len(pts)
    for i in range(n):
        nxt = pts[(i + 1) % n]
        img = evaluate(p, pts[i])
        if is_infinite(img) or abs(img - nxt) > tol * max(1.0, abs(nxt)):
            raise NotACycle(
                f"f(points[{i}]) = {img!r} does not reach points[{(i + 1) % n}] = {nxt!r}"
            )
    mult = 1.0 + 0j
    for w in pts:
        mult *= derivative(p, w)
    return mult
