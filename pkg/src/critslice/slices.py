"""Closed-form parametrizations of the one-dimensional parameter slices.

Each slice maps one complex coordinate to MapParams: the zero-multiplier
fixed-point and two-cycle slices, their lambda-multiplier generalizations,
the unit-circle (Blaschke) torus slice, and the cubic comparison family.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

from .errors import (
    DegenerateT,
    LambdaEqualsDegree,
    NoSolution,
    PoleAtMinusI,
    SingularParameter,
)
from .family import EPS_SING, INF, MapParams, is_infinite

#: Slice coordinates closer than this to an excluded value are flagged
#: SingularParameter; renderers label such pixels instead of aborting.
SING_TOL = 1e-9


class SliceKind(Enum):
    S1_ZERO = "s1zero"
    S2_ZERO = "s2zero"
    S1_LAMBDA = "s1lambda"
    S2_LAMBDA = "s2lambda"
    BLASCHKE = "blaschke"
    CUBIC_PER1 = "cubic"


class Sheet(Enum):
    PLUS = "plus"
    MINUS = "minus"


class View(Enum):
    RAW = "raw"
    CAYLEY = "cayley"


def unit_rotation(theta) -> complex:
    """e^(2*pi*i*theta) with exact values at quarter turns, so rational angles
    like 1/2 give exactly -1 (required by the real-multiplier symmetry tests)."""
    if isinstance(theta, Fraction):
        t = theta - (theta.numerator // theta.denominator)
        quarters = {
            Fraction(0): 1 + 0j,
            Fraction(1, 4): 1j,
            Fraction(1, 2): -1 + 0j,
            Fraction(3, 4): -1j,
        }
        if t in quarters:
            return quarters[t]
        x = float(t)
    else:
        x = float(theta) % 1.0
        if x in (0.0, 0.25, 0.5, 0.75):
            return {0.0: 1 + 0j, 0.25: 1j, 0.5: -1 + 0j, 0.75: -1j}[x]
    return complex(math.cos(2.0 * math.pi * x), math.sin(2.0 * math.pi * x))


@dataclass(frozen=True)
class SliceSpec:
    """Which slice to sample and how to interpret the coordinate plane."""

    kind: SliceKind
    d: int = 3
    lam: complex = 0j
    theta: object = None  # Fraction or float; when set, lam = unit_rotation(theta)
    sheet: Sheet = Sheet.PLUS
    radii: tuple = (1.0, 1.0)
    view: View = View.RAW

    def __post_init__(self):
        if self.d < 2:
            raise ValueError("d must be >= 2")
        if self.theta is not None:
            object.__setattr__(self, "lam", unit_rotation(self.theta))
        object.__setattr__(self, "lam", complex(self.lam))
        if is_infinite(self.lam):
            raise ValueError("multiplier must be finite")
        if self.kind is SliceKind.S1_LAMBDA and abs(self.lam - self.d) <= SING_TOL:
            raise LambdaEqualsDegree(f"lambda = d = {self.d} is excluded")
        r1, r2 = self.radii
        if not (0.0 < r1 <= 1.0 and 0.0 < r2 <= 1.0):
            raise ValueError("radii must lie in (0, 1]")
        object.__setattr__(self, "radii", (float(r1), float(r2)))


@dataclass(frozen=True)
class SlicePoint:
    """One coordinate of a slice.  For the Blaschke slice the real and
    imaginary parts of s are the torus angles (wrapped mod 1)."""

    spec: SliceSpec
    s: complex

    def __post_init__(self):
        s = complex(self.s)
        if self.spec.kind is SliceKind.BLASCHKE:
            s = complex(s.real % 1.0, s.imag % 1.0)
        object.__setattr__(self, "s", s)


def _family_from_ab(a: complex, b: complex, d: int) -> MapParams:
    # a z^d (b(d-1)z + 1-db) / ((d-b)z - (d-1))  rewritten as  z^d (z+alpha)/(beta z + gamma)
    alpha = (1 - d * b) / ((d - 1) * b)
    beta = (d - b) / ((d - 1) * a * b)
    gamma = -1.0 / (a * b)
    return MapParams(alpha, beta, gamma, d).require_non_degenerate()


def s1_zero(b: complex, d: int) -> MapParams:
    """Slice with a superattracting fixed point at z = 1; coordinate b.
    Excluded: b in {0, 1, d} (degree drop, degeneracy, second critical point
    colliding with infinity)."""
    b = complex(b)
    for bad, why in ((0, "degree drop"), (1, "degenerate map"), (d, "critical point at infinity")):
        if abs(b - bad) < SING_TOL:
            raise SingularParameter(b, why)
    return _family_from_ab(1.0 + 0j, b, d)


def s2_zero(a: complex, d: int) -> MapParams:
    """Slice with a superattracting two-cycle through z = 1; coordinate a = f(1).

    Solving f(a) = 1 for the second coefficient gives
    b = (1 - a^(d+1) - d(1-a)) / (a (1 - a^(d+1) - d(1-a) a^d)),
    certified by the residual oracle f(f(1)) = 1.
    """
    a = complex(a)
    if abs(a) < SING_TOL:
        raise SingularParameter(a, "cycle collides with 0")
    if abs(a - 1) < SING_TOL:
        raise SingularParameter(a, "0/0 puncture")
    num = 1 - _cpow(a, d + 1) - d * (1 - a)
    den = a * (1 - _cpow(a, d + 1) - d * (1 - a) * _cpow(a, d))
    scale = max(1.0, abs(_cpow(a, d + 1)))
    if abs(den) < SING_TOL * scale:
        raise SingularParameter(a, "two-cycle condition degenerates")
    b = num / den
    for bad, why in ((0, "degree drop"), (1, "degenerate map")):
        if abs(b - bad) < SING_TOL:
            raise SingularParameter(a, f"b({a!r}) = {b!r}: {why}")
    return _family_from_ab(a, b, d)


def s1_lambda(beta: complex, lam: complex, d: int) -> MapParams:
    """Slice with a fixed point of multiplier lam at z = 1; coordinate beta."""
    beta = complex(beta)
    lam = complex(lam)
    if abs(lam - d) <= SING_TOL:
        raise LambdaEqualsDegree(f"lambda = d = {d} is excluded")
    alpha = (-1 - d + beta + lam) / (d - lam)
    gamma = (-1 + beta - d * beta + beta * lam) / (d - lam)
    return MapParams(alpha, beta, gamma, d).require_non_degenerate()


def two_cycle_affine(t: complex, d: int) -> tuple:
    """Affine dependence of (beta, gamma) on alpha from the cycle equations
    f(1) = t, f(t) = 1: returns (b0, b1, g0, g1) with beta = b0 + b1*alpha."""
    td = _cpow(t, d)
    g0 = (1 - td * t) / (t - 1)
    g1 = (1 - td) / (t - 1)
    b0 = td - g0 / t
    b1 = td / t - g1 / t
    return b0, b1, g0, g1


def two_cycle_quadratic(t: complex, lam: complex, d: int) -> tuple:
    """Coefficients (A, B, C) of the quadratic in alpha that encodes the
    multiplier condition f'(1) f'(t) = lam on the two-cycle slice.

    Using the logarithmic derivative and the cycle equations,
    t * u(alpha) * v(alpha) = lam * t^d * (1+alpha)(t+alpha) with affine
    u = d(1+alpha) + 1 - t*beta and v = (d+1)t^d - beta + d t^(d-1) alpha.
    """
    t = complex(t)
    lam = complex(lam)
    b0, b1, _, _ = two_cycle_affine(t, d)
    td = _cpow(t, d)
    u0 = d + 1 - t * b0
    u1 = d - t * b1
    v0 = (d + 1) * td - b0
    v1 = d * td / t - b1
    A = t * u1 * v1 - lam * td
    B = t * (u0 * v1 + u1 * v0) - lam * td * (1 + t)
    C = t * u0 * v0 - lam * td * t
    return A, B, C


def s2_lambda(t: complex, lam: complex, d: int, sheet: Sheet = Sheet.PLUS) -> MapParams:
    """Slice with a two-cycle {1, t} of multiplier lam; coordinate t = f(1).

    The cycle equations fix (beta, gamma) as affine functions of alpha; the
    multiplier condition then reduces to the quadratic of
    ``two_cycle_quadratic``.  ``sheet`` picks the +/- branch of the principal
    square root of its discriminant.
    """
    t = complex(t)
    lam = complex(lam)
    if abs(t) < SING_TOL or abs(t - 1) < SING_TOL:
        raise DegenerateT(f"t = {t!r} collapses the two-cycle")

    b0, b1, g0, g1 = two_cycle_affine(t, d)
    A, B, C = two_cycle_quadratic(t, lam, d)

    scale = max(abs(A), abs(B), abs(C), 1.0)
    if abs(A) <= 1e-14 * scale:
        if abs(B) <= 1e-14 * scale:
            raise NoSolution(f"multiplier condition degenerates at t = {t!r}")
        alpha = -C / B  # single finite root: both sheets coincide
    else:
        r = cmath.sqrt(B * B - 4 * A * C)
        sp = -B + r
        sm = -B - r
        # Stable branch: large root directly, small root via Vieta's product.
        if abs(sp) >= abs(sm):
            a_plus = sp / (2 * A)
            a_minus = (C / A) / a_plus if a_plus != 0 else sm / (2 * A)
        else:
            a_minus = sm / (2 * A)
            a_plus = (C / A) / a_minus if a_minus != 0 else sp / (2 * A)
        alpha = a_plus if sheet is Sheet.PLUS else a_minus

    beta = b0 + b1 * alpha
    gamma = g0 + g1 * alpha
    if abs(beta * t + gamma) < SING_TOL * max(1.0, abs(beta * t), abs(gamma)):
        raise NoSolution(f"cycle point t = {t!r} collides with the pole")
    return MapParams(alpha, beta, gamma, d).require_non_degenerate()


def blaschke(omega1: float, omega2: float, r_a: float = 1.0, r_b: float = 1.0,
             d: int = 3) -> MapParams:
    """Torus-coordinate slice a = r_a e^(2 pi i w1), b = r_b e^(2 pi i w2).
    With unit radii the map preserves the unit circle and both critical
    points lie on it."""
    if not (0.0 < r_a <= 1.0 and 0.0 < r_b <= 1.0):
        raise ValueError("radii must lie in (0, 1]")
    a = r_a * unit_rotation(float(omega1))
    b = r_b * unit_rotation(float(omega2))
    for bad, why in ((0, "degree drop"), (1, "degenerate map"), (d, "critical point at infinity")):
        if abs(b - bad) < SING_TOL:
            raise SingularParameter(b, why)
    return _family_from_ab(a, b, d)


def cayley_view(s: complex) -> complex:
    """Moebius display coordinate s -> (s - i)/(s + i); infinity maps to 1."""
    if is_infinite(s):
        return 1.0 + 0j
    s = complex(s)
    if abs(s + 1j) <= 1e-12:
        raise PoleAtMinusI(f"cayley view undefined at {s!r}")
    return (s - 1j) / (s + 1j)


def cayley_inverse(w: complex) -> complex:
    """Inverse of cayley_view: w -> i(1 + w)/(1 - w); w = 1 maps to infinity."""
    w = complex(w)
    if abs(w - 1) <= 1e-15 * max(1.0, abs(w)):
        return INF
    return 1j * (1 + w) / (1 - w)


@dataclass(frozen=True)
class CubicMap:
    """Comparison cubic P(z) = mu z + b z^2 + z^3 with its two critical
    points and a sufficient escape radius."""

    mu: complex
    b: complex
    critical: tuple = field(init=False)
    escape_radius: float = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "mu", complex(self.mu))
        object.__setattr__(self, "b", complex(self.b))
        r = cmath.sqrt(self.b * self.b - 3 * self.mu)
        object.__setattr__(self, "critical", ((-self.b + r) / 3, (-self.b - r) / 3))
        object.__setattr__(
            self, "escape_radius", max(2.0, 2.0 * (1.0 + abs(self.mu) + abs(self.b)))
        )

    def evaluate(self, z: complex) -> complex:
        z = complex(z)
        return self.mu * z + self.b * z * z + z * z * z

    def derivative(self, z: complex) -> complex:
        z = complex(z)
        return self.mu + 2 * self.b * z + 3 * z * z


def cubic_per1(b: complex, mu: complex) -> CubicMap:
    return CubicMap(mu=mu, b=b)


def _cpow(z: complex, n: int) -> complex:
    w = 1.0 + 0j
    for _ in range(n):
        w *= z
    return w


def resolve(pt: SlicePoint) -> MapParams:
    """Dispatch a slice point to its parametrization.  Under the Cayley view
    the pixel coordinate is pulled back through the inverse transform first."""
    spec = pt.spec
    s = pt.s
    if spec.view is View.CAYLEY:
        s = cayley_inverse(s)
        if is_infinite(s):
            raise SingularParameter(pt.s, "parameter at infinity under cayley view")
    kind = spec.kind
    if kind is SliceKind.S1_ZERO:
        return s1_zero(s, spec.d)
    if kind is SliceKind.S2_ZERO:
        return s2_zero(s, spec.d)
    if kind is SliceKind.S1_LAMBDA:
        return s1_lambda(s, spec.lam, spec.d)
    if kind is SliceKind.S2_LAMBDA:
        return s2_lambda(s, spec.lam, spec.d, spec.sheet)
    if kind is SliceKind.BLASCHKE:
        return blaschke(s.real, s.imag, spec.radii[0], spec.radii[1], spec.d)
    raise ValueError(f"{kind} does not resolve to a rational map; use the cubic renderer")
