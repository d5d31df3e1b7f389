"""Compiled orbit kernels.

One scalar kernel classifies a single critical orbit; the block kernels drive
it over pixel ranges.  Both the public classifier and the grid renderer call
the same code, so a rendered grid is bit-identical to a sequential loop of
per-pixel classifications regardless of worker count.
"""
from __future__ import annotations

import numpy as np
from numba import njit

# Verdict codes (mirrored by classifier.OrbitLabel).
ESC0 = 0
ESCINF = 1
MARKED = 2
OTHER = 3
UNDEC = 4
SING = 5

_OVERFLOW = 1e150
_ZERO_FLOOR = 1e-12
# Near-return scans only run at moderate magnitudes: closer to the
# superattractors the contraction itself is the verdict.
_SCAN_LO = 1e-8
_SCAN_HI = 1e8


@njit(cache=True, nogil=True)
def _step(al, be, ga, d, z):
    den = be * z + ga
    if den == 0j:
        return complex(np.inf, 0.0)
    num = z + al
    for _ in range(d):
        num *= z
    return num / den


@njit(cache=True, nogil=True)
def _dstep(al, be, ga, d, z):
    den = be * z + ga
    q = (d * be * z + ((d + 1) * ga + (d - 1) * al * be)) * z + d * al * ga
    zp = 1.0 + 0j
    for _ in range(d - 1):
        zp *= z
    return zp * q / (den * den)


@njit(cache=True, nogil=True)
def _refine_cycle(al, be, ga, d, seed, p):
    """Newton iteration on f^p(z) - z.  Fails (ok=False) on divergence or a
    near-parabolic derivative, in which case the detection is dropped."""
    w = seed
    for _ in range(40):
        v = w
        dp = 1.0 + 0j
        for _ in range(p):
            dp *= _dstep(al, be, ga, d, v)
            v = _step(al, be, ga, d, v)
            if not (abs(v) <= _OVERFLOW and abs(dp) <= _OVERFLOW):
                return w, False
        g = v - w
        if abs(g) <= 1e-12 * max(1.0, abs(w)):
            return w, True
        gp = dp - 1.0
        if abs(gp) < 1e-14:
            return w, False
        w = w - g / gp
        if not (abs(w) <= 10.0 * _SCAN_HI):
            return w, False
    return w, False


@njit(cache=True, nogil=True)
def _judge_cycle(al, be, ga, d, w0, p, eps_attract):
    """Reduce a refined period-p return to its minimal cycle and label it.

    Returns (label, period, multiplier, circle_dist); label < 0 rejects the
    detection (repelling shadow or numerically broken cycle).
    """
    v = w0
    q = 0
    for j in range(1, p + 1):
        v = _step(al, be, ga, d, v)
        if not (abs(v) <= _SCAN_HI):
            return -1, 0, 0j, -1.0
        if abs(v - w0) <= 1e-9 * max(1.0, abs(w0)):
            q = j
            break
    if q == 0:
        return -1, 0, 0j, -1.0
    mult = 1.0 + 0j
    marked = False
    circle = 0.0
    v = w0
    for _ in range(q):
        mult *= _dstep(al, be, ga, d, v)
        if abs(v - 1.0) <= eps_attract:
            marked = True
        dist = abs(abs(v) - 1.0)
        if dist > circle:
            circle = dist
        v = _step(al, be, ga, d, v)
    if not (abs(mult) <= 1.0 + eps_attract):
        return -1, 0, 0j, -1.0
    if q == 1 and abs(w0) <= _SCAN_LO:
        return ESC0, 0, 0j, -1.0  # the superattracting fixed point 0 itself
    if q == 1 and abs(w0) >= _SCAN_HI:
        return ESCINF, 0, 0j, -1.0
    if marked:
        return MARKED, q, mult, circle
    return OTHER, q, mult, circle


@njit(cache=True, nogil=True)
def orbit_verdict(al, be, ga, d, z0, inner, outer,
                  max_iter, escape_mag, eps_cycle, eps_attract, max_period):
    """Classify one critical orbit.

    Escape to 0 is confirmed below inner^2/outer (monotone contraction zone)
    or below an absolute floor; escape to infinity beyond both the outer
    radius and the escape magnitude, or on overflow.  Bounded orbits are
    scanned every max_period steps for a near-return against the last
    max_period iterates; detected cycles are Newton-refined.

    Returns (label, iterations, period, multiplier, circle_dist) where
    circle_dist is the largest distance of a cycle point from the unit
    circle (-1.0 when no cycle was detected).
    """
    zero_confirm = 0.0
    if outer > 0.0:
        zero_confirm = inner * inner / outer
    az = abs(z0)
    if not (az <= _OVERFLOW):
        return ESCINF, 0, 0, 0j, -1.0
    if az < _ZERO_FLOOR or az < zero_confirm:
        return ESC0, 0, 0, 0j, -1.0
    if az > escape_mag and az > outer:
        return ESCINF, 0, 0, 0j, -1.0
    ring = np.empty(max_period, dtype=np.complex128)
    ring[0] = z0
    z = z0
    for k in range(1, max_iter + 1):
        z = _step(al, be, ga, d, z)
        az = abs(z)
        if not (az <= _OVERFLOW):
            return ESCINF, k, 0, 0j, -1.0
        if az < _ZERO_FLOOR or az < zero_confirm:
            return ESC0, k, 0, 0j, -1.0
        if az > escape_mag and az > outer:
            return ESCINF, k, 0, 0j, -1.0
        if k >= max_period and k % max_period == 0 and _SCAN_LO <= az <= _SCAN_HI:
            for p in range(1, max_period + 1):
                if abs(z - ring[(k - p) % max_period]) < eps_cycle * max(1.0, az):
                    w, ok = _refine_cycle(al, be, ga, d, z, p)
                    if ok:
                        label, q, mult, circle = _judge_cycle(
                            al, be, ga, d, w, p, eps_attract
                        )
                        if label >= 0:
                            return label, k, q, mult, circle
                    break  # only the smallest near-return period per scan
        ring[k % max_period] = z
    return UNDEC, max_iter, 0, 0j, -1.0


@njit(cache=True, nogil=True)
def classify_block(alpha, beta, gamma, d, crit1, crit2, sing, inner, outer,
                   max_iter, escape_mag, eps_cycle, eps_attract, max_period,
                   i0, i1, j0, j1, px,
                   lab1, it1, per1, mul1, cd1,
                   lab2, it2, per2, mul2, cd2):
    """Classify both critical orbits for every pixel of one tile."""
    for j in range(j0, j1):
        base = j * px
        for i in range(i0, i1):
            idx = base + i
            if sing[idx]:
                lab1[idx] = SING
                lab2[idx] = SING
                continue
            al = alpha[idx]
            be = beta[idx]
            ga = gamma[idx]
            lo = inner[idx]
            hi = outer[idx]
            l, it, q, m, c = orbit_verdict(
                al, be, ga, d, crit1[idx], lo, hi,
                max_iter, escape_mag, eps_cycle, eps_attract, max_period)
            lab1[idx] = l
            it1[idx] = it
            per1[idx] = q
            mul1[idx] = m
            cd1[idx] = c
            l, it, q, m, c = orbit_verdict(
                al, be, ga, d, crit2[idx], lo, hi,
                max_iter, escape_mag, eps_cycle, eps_attract, max_period)
            lab2[idx] = l
            it2[idx] = it
            per2[idx] = q
            mul2[idx] = m
            cd2[idx] = c


@njit(cache=True, nogil=True)
def dynplane_block(al, be, ga, d, coords, inner, outer,
                   max_iter, escape_mag, eps_cycle, eps_attract, max_period,
                   i0, i1, j0, j1, px,
                   lab, it, per, mul, cd):
    """Classify the orbit seeded at each pixel of the dynamical plane."""
    for j in range(j0, j1):
        base = j * px
        for i in range(i0, i1):
            idx = base + i
            l, n, q, m, c = orbit_verdict(
                al, be, ga, d, coords[idx], inner, outer,
                max_iter, escape_mag, eps_cycle, eps_attract, max_period)
            lab[idx] = l
            it[idx] = n
            per[idx] = q
            mul[idx] = m
            cd[idx] = c


@njit(cache=True, nogil=True)
def cubic_orbit(mu, b, z0, radius, max_iter):
    """Escape-time verdict for one cubic critical orbit: past the escape
    radius the map doubles magnitudes, so leaving it is conclusive."""
    z = z0
    for k in range(1, max_iter + 1):
        z = mu * z + b * z * z + z * z * z
        az = abs(z)
        if az != az or az > radius:
            return ESCINF, k
    return UNDEC, max_iter


@njit(cache=True, nogil=True)
def cubic_block(mu, bs, crit1, crit2, radii, max_iter,
                i0, i1, j0, j1, px,
                lab1, it1, lab2, it2):
    for j in range(j0, j1):
        base = j * px
        for i in range(i0, i1):
            idx = base + i
            b = bs[idx]
            r = radii[idx]
            l, n = cubic_orbit(mu, b, crit1[idx], r, max_iter)
            lab1[idx] = l
            it1[idx] = n
            l, n = cubic_orbit(mu, b, crit2[idx], r, max_iter)
            lab2[idx] = l
            it2[idx] = n
