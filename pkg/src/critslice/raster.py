"""Grid sampling of parameter slices and dynamical planes, tile-parallel
execution, color mapping, and PNG/PPM/CSV encoding.

Pixel centers are sampled at half-integer offsets through the integer form
center + (2i+1-nx)*s with s = width/(2*nx), which makes symmetric viewports
exactly sign- and conjugation-symmetric in floating point.
"""
from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterator

import numpy as np
from PIL import Image

from . import _kernel
from .classifier import (
    ClassifierConfig,
    OrbitLabel,
    PixelClass,
    _verdict_from_raw,
    singular_verdict,
    trapping_region,
)
from .errors import CritsliceError
from .family import MapParams, critical_points
from .slices import SliceKind, SlicePoint, SliceSpec, resolve

#: Edge length of the square scheduling tiles; every tile writes a disjoint
#: region, so output is independent of worker count and order.
TILE = 64

LABEL_TOKENS = {
    OrbitLabel.ESCAPE_ZERO: "ESC0",
    OrbitLabel.ESCAPE_INF: "ESCINF",
    OrbitLabel.MARKED_CYCLE: "MARKED",
    OrbitLabel.OTHER_CYCLE: "OTHER",
    OrbitLabel.BOUNDED_UNDECIDED: "UNDEC",
    OrbitLabel.SINGULAR: "SING",
}
TOKEN_LABELS = {v: k for k, v in LABEL_TOKENS.items()}

CSV_HEADER = "i,j,re,im,label1,label2,in_locus,period1,period2"


@dataclass(frozen=True)
class Viewport:
    """Axis-aligned window: center, width in plane units, pixel counts.
    Height is width * pixels_y / pixels_x; the imaginary axis points up
    (row j = 0 is the top row)."""

    center: complex
    width: float
    pixels_x: int
    pixels_y: int

    def __post_init__(self):
        if self.width <= 0 or self.pixels_x < 1 or self.pixels_y < 1:
            raise ValueError("viewport needs positive width and pixel counts")
        object.__setattr__(self, "center", complex(self.center))

    @property
    def height(self) -> float:
        return self.width * self.pixels_y / self.pixels_x

    @property
    def pixel_scale(self) -> float:
        return self.width / (2 * self.pixels_x)

    def pixel_center(self, i: int, j: int) -> complex:
        s = self.pixel_scale
        kx = 2 * i + 1 - self.pixels_x
        ky = self.pixels_y - 1 - 2 * j
        return complex(self.center.real + kx * s, self.center.imag + ky * s)

    def coords(self) -> np.ndarray:
        """Row-major complex array of all pixel centers (bit-identical to
        pixel_center at every index)."""
        s = self.pixel_scale
        kx = 2.0 * np.arange(self.pixels_x, dtype=np.float64) + (1.0 - self.pixels_x)
        ky = (self.pixels_y - 1.0) - 2.0 * np.arange(self.pixels_y, dtype=np.float64)
        out = np.empty((self.pixels_y, self.pixels_x), dtype=np.complex128)
        out.real[:] = self.center.real + kx[None, :] * s
        out.imag[:] = (self.center.imag + ky * s)[:, None]
        return out.reshape(-1)


@dataclass
class GridResult:
    """Per-pixel classification arrays plus the metadata of the run."""

    viewport: Viewport
    spec: object
    cfg: ClassifierConfig
    label1: np.ndarray
    iters1: np.ndarray
    period1: np.ndarray
    mult1: np.ndarray
    cdist1: np.ndarray
    label2: np.ndarray
    iters2: np.ndarray
    period2: np.ndarray
    mult2: np.ndarray
    cdist2: np.ndarray
    resonance: bool = False
    timing: float = 0.0

    @property
    def n_cells(self) -> int:
        return self.viewport.pixels_x * self.viewport.pixels_y

    @property
    def escaped_codes(self):
        return (
            int(OrbitLabel.ESCAPE_ZERO),
            int(OrbitLabel.ESCAPE_INF),
            int(OrbitLabel.SINGULAR),
        )

    def in_locus_mask(self) -> np.ndarray:
        esc = np.isin(self.label1, self.escaped_codes) | np.isin(
            self.label2, self.escaped_codes
        )
        return ~esc

    def undecided_fraction(self) -> float:
        undec = int(OrbitLabel.BOUNDED_UNDECIDED)
        mask = (self.label1 == undec) | (self.label2 == undec)
        return float(np.mean(mask))

    def cell(self, i: int, j: int) -> PixelClass:
        idx = j * self.viewport.pixels_x + i
        if int(self.label1[idx]) == int(OrbitLabel.SINGULAR):
            return PixelClass.from_orbits(singular_verdict(), singular_verdict())
        v1 = _verdict_from_raw(
            self.label1[idx], self.iters1[idx], self.period1[idx],
            self.mult1[idx], self.cdist1[idx], cfg=self.cfg, resonance=self.resonance,
        )
        v2 = _verdict_from_raw(
            self.label2[idx], self.iters2[idx], self.period2[idx],
            self.mult2[idx], self.cdist2[idx], cfg=self.cfg, resonance=self.resonance,
        )
        return PixelClass.from_orbits(v1, v2)

    def cells(self) -> Iterator[PixelClass]:
        for j in range(self.viewport.pixels_y):
            for i in range(self.viewport.pixels_x):
                yield self.cell(i, j)


_PERIOD_COLORS = (
    (66, 135, 245),
    (160, 84, 220),
    (235, 200, 60),
    (80, 200, 200),
    (230, 90, 140),
    (120, 220, 80),
    (245, 150, 50),
    (150, 150, 230),
)


@dataclass(frozen=True)
class Palette:
    """Total mapping from verdicts to 8-bit RGB.  ``default`` shades escape
    to infinity by escape time, keys other cycles by period, and paints
    undecided black and singular white; ``locus`` is a two-color in/out map."""

    name: str = "default"

    def orbit_color(self, label: int, iters: int, period: int) -> tuple:
        label = int(label)
        if label == int(OrbitLabel.ESCAPE_ZERO):
            return (214, 112, 42)
        if label == int(OrbitLabel.ESCAPE_INF):
            t = (int(iters) % 32) / 31.0 if iters else 0.0
            return (
                int(24 + t * (140 - 24)),
                int(44 + t * (180 - 44)),
                int(110 + t * (255 - 110)),
            )
        if label == int(OrbitLabel.MARKED_CYCLE):
            return (26, 140, 70)
        if label == int(OrbitLabel.OTHER_CYCLE):
            return _PERIOD_COLORS[int(period) % 8]
        if label == int(OrbitLabel.BOUNDED_UNDECIDED):
            return (0, 0, 0)
        return (255, 255, 255)  # SINGULAR and anything unforeseen

    def cell_color(self, lab1, it1, per1, lab2, it2, per2, in_locus: bool) -> tuple:
        if self.name == "locus":
            return (0, 0, 0) if in_locus else (255, 255, 255)
        c1 = self.orbit_color(lab1, it1, per1)
        c2 = self.orbit_color(lab2, it2, per2)
        return ((c1[0] + c2[0]) // 2, (c1[1] + c2[1]) // 2, (c1[2] + c2[2]) // 2)


PALETTES = {"default": Palette("default"), "locus": Palette("locus")}


def _tiles(px: int, py: int) -> list:
    out = []
    for j0 in range(0, py, TILE):
        for i0 in range(0, px, TILE):
            out.append((i0, min(i0 + TILE, px), j0, min(j0 + TILE, py)))
    return out


def _run_tiles(calls, threads: int):
    if threads <= 1:
        for call in calls:
            call()
        return
    with ThreadPoolExecutor(max_workers=threads) as pool:
        for _ in pool.map(lambda c: c(), calls):
            pass


def _alloc(n: int):
    return (
        np.zeros(n, dtype=np.int64),
        np.zeros(n, dtype=np.int64),
        np.zeros(n, dtype=np.int64),
        np.zeros(n, dtype=np.complex128),
        np.full(n, -1.0, dtype=np.float64),
    )


def render_slice(spec: SliceSpec, vp: Viewport,
                 cfg: ClassifierConfig = ClassifierConfig(),
                 threads: int = 1) -> GridResult:
    """Classify every pixel of a parameter-slice viewport.  Per-pixel
    degeneracies become Singular labels; output is bit-identical for any
    worker count."""
    if spec.kind is SliceKind.CUBIC_PER1:
        return render_cubic_slice(spec.lam, vp, cfg, threads)
    t0 = time.perf_counter()
    coords = vp.coords()
    n = coords.size
    alpha = np.zeros(n, dtype=np.complex128)
    beta = np.zeros(n, dtype=np.complex128)
    gamma = np.zeros(n, dtype=np.complex128)
    crit1 = np.zeros(n, dtype=np.complex128)
    crit2 = np.zeros(n, dtype=np.complex128)
    inner = np.zeros(n, dtype=np.float64)
    outer = np.zeros(n, dtype=np.float64)
    sing = np.zeros(n, dtype=np.bool_)
    d = spec.d
    for idx in range(n):
        try:
            p = resolve(SlicePoint(spec, complex(coords[idx])))
            c1, c2 = critical_points(p)
            region = trapping_region(p)
        except CritsliceError:
            sing[idx] = True
            continue
        alpha[idx] = p.alpha
        beta[idx] = p.beta
        gamma[idx] = p.gamma
        crit1[idx] = c1
        crit2[idx] = c2
        inner[idx] = region.inner
        outer[idx] = region.outer
    lab1, it1, per1, mul1, cd1 = _alloc(n)
    lab2, it2, per2, mul2, cd2 = _alloc(n)

    def make_call(tile):
        i0, i1, j0, j1 = tile
        return lambda: _kernel.classify_block(
            alpha, beta, gamma, d, crit1, crit2, sing, inner, outer,
            cfg.max_iter, cfg.escape_magnitude, cfg.eps_cycle,
            cfg.eps_attract, cfg.max_period,
            i0, i1, j0, j1, vp.pixels_x,
            lab1, it1, per1, mul1, cd1, lab2, it2, per2, mul2, cd2)

    # Warm the kernel (JIT) before fanning out to threads.
    _kernel.classify_block(
        alpha, beta, gamma, d, crit1, crit2, sing, inner, outer,
        cfg.max_iter, cfg.escape_magnitude, cfg.eps_cycle,
        cfg.eps_attract, cfg.max_period,
        0, 0, 0, 0, vp.pixels_x,
        lab1, it1, per1, mul1, cd1, lab2, it2, per2, mul2, cd2)
    _run_tiles([make_call(t) for t in _tiles(vp.pixels_x, vp.pixels_y)], threads)
    resonance = spec.kind is SliceKind.BLASCHKE and spec.radii == (1.0, 1.0)
    return GridResult(
        viewport=vp, spec=spec, cfg=cfg,
        label1=lab1, iters1=it1, period1=per1, mult1=mul1, cdist1=cd1,
        label2=lab2, iters2=it2, period2=per2, mult2=mul2, cdist2=cd2,
        resonance=resonance, timing=time.perf_counter() - t0)


def render_dynplane(p: MapParams, vp: Viewport,
                    cfg: ClassifierConfig = ClassifierConfig(),
                    threads: int = 1) -> GridResult:
    """Classify the orbit seeded at every pixel of the dynamical plane.  The
    single verdict is stored as both entries of each cell, so the locus mask
    marks non-escaping seeds."""
    t0 = time.perf_counter()
    p.require_non_degenerate()
    region = trapping_region(p)
    coords = vp.coords()
    n = coords.size
    lab, it, per, mul, cd = _alloc(n)

    def make_call(tile):
        i0, i1, j0, j1 = tile
        return lambda: _kernel.dynplane_block(
            p.alpha, p.beta, p.gamma, p.d, coords, region.inner, region.outer,
            cfg.max_iter, cfg.escape_magnitude, cfg.eps_cycle,
            cfg.eps_attract, cfg.max_period,
            i0, i1, j0, j1, vp.pixels_x, lab, it, per, mul, cd)

    _kernel.dynplane_block(
        p.alpha, p.beta, p.gamma, p.d, coords, region.inner, region.outer,
        cfg.max_iter, cfg.escape_magnitude, cfg.eps_cycle,
        cfg.eps_attract, cfg.max_period,
        0, 0, 0, 0, vp.pixels_x, lab, it, per, mul, cd)
    _run_tiles([make_call(t) for t in _tiles(vp.pixels_x, vp.pixels_y)], threads)
    return GridResult(
        viewport=vp, spec=p, cfg=cfg,
        label1=lab, iters1=it, period1=per, mult1=mul, cdist1=cd,
        label2=lab, iters2=it, period2=per, mult2=mul, cdist2=cd,
        timing=time.perf_counter() - t0)


def default_dynplane_viewport(p: MapParams, pixels: int = 512) -> Viewport:
    """Window derived from the trapping region: center 0, width 2.5 * outer."""
    region = trapping_region(p)
    width = 2.5 * region.outer if region.outer > 0 else 4.0
    return Viewport(0j, width, pixels, pixels)


def render_cubic_slice(mu: complex, vp: Viewport,
                       cfg: ClassifierConfig = ClassifierConfig(),
                       threads: int = 1) -> GridResult:
    """Escape/bounded classification of both critical orbits of the
    comparison cubic, pixel coordinate = its quadratic coefficient."""
    t0 = time.perf_counter()
    mu = complex(mu)
    bs = vp.coords()
    n = bs.size
    r = np.sqrt(bs * bs - 3.0 * mu)
    crit1 = (-bs + r) / 3.0
    crit2 = (-bs - r) / 3.0
    radii = np.maximum(2.0, 2.0 * (1.0 + abs(mu) + np.abs(bs)))
    lab1, it1, per1, mul1, cd1 = _alloc(n)
    lab2, it2, per2, mul2, cd2 = _alloc(n)

    def make_call(tile):
        i0, i1, j0, j1 = tile
        return lambda: _kernel.cubic_block(
            mu, bs, crit1, crit2, radii, cfg.max_iter,
            i0, i1, j0, j1, vp.pixels_x, lab1, it1, lab2, it2)

    _kernel.cubic_block(mu, bs, crit1, crit2, radii, cfg.max_iter,
                        0, 0, 0, 0, vp.pixels_x, lab1, it1, lab2, it2)
    _run_tiles([make_call(t) for t in _tiles(vp.pixels_x, vp.pixels_y)], threads)
    return GridResult(
        viewport=vp, spec=SliceSpec(kind=SliceKind.CUBIC_PER1, lam=mu), cfg=cfg,
        label1=lab1, iters1=it1, period1=per1, mult1=mul1, cdist1=cd1,
        label2=lab2, iters2=it2, period2=per2, mult2=mul2, cdist2=cd2,
        timing=time.perf_counter() - t0)


def rgb_bytes(g: GridResult, pal: Palette) -> bytes:
    in_locus = g.in_locus_mask()
    out = bytearray()
    n = g.n_cells
    for idx in range(n):
        out.extend(
            pal.cell_color(
                g.label1[idx], g.iters1[idx], g.period1[idx],
                g.label2[idx], g.iters2[idx], g.period2[idx],
                bool(in_locus[idx]),
            )
        )
    return bytes(out)


def encode_image(g: GridResult, pal: Palette, path) -> None:
    """Write an 8-bit RGB image.  ``.ppm`` gets the bit-exact binary P6
    encoding; anything else goes through Pillow (PNG by extension)."""
    path = str(path)
    data = rgb_bytes(g, pal)
    w, h = g.viewport.pixels_x, g.viewport.pixels_y
    if path.lower().endswith(".ppm"):
        with open(path, "wb") as fh:
            fh.write(b"P6\n%d %d\n255\n" % (w, h))
            fh.write(data)
        return
    Image.frombytes("RGB", (w, h), data).save(path)


def export_csv(g: GridResult, path) -> None:
    """One row per pixel: indices, plane coordinates (17 significant digits),
    label tokens, locus flag, detected periods (0 when none)."""
    in_locus = g.in_locus_mask()
    px = g.viewport.pixels_x
    with open(str(path), "w", encoding="ascii") as fh:
        fh.write(CSV_HEADER + "\n")
        for j in range(g.viewport.pixels_y):
            for i in range(px):
                idx = j * px + i
                z = g.viewport.pixel_center(i, j)
                fh.write(
                    f"{i},{j},{z.real:.17g},{z.imag:.17g},"
                    f"{LABEL_TOKENS[OrbitLabel(int(g.label1[idx]))]},"
                    f"{LABEL_TOKENS[OrbitLabel(int(g.label2[idx]))]},"
                    f"{int(in_locus[idx])},"
                    f"{int(g.period1[idx])},{int(g.period2[idx])}\n"
                )


def load_csv(path) -> dict:
    """Parse an export_csv file back into arrays (inverse on label content)."""
    with open(str(path), "r", encoding="ascii") as fh:
        header = fh.readline().strip()
        if header != CSV_HEADER:
            raise ValueError(f"unexpected CSV header: {header!r}")
        rows = [line.strip().split(",") for line in fh if line.strip()]
    out = {
        "i": np.array([int(r[0]) for r in rows]),
        "j": np.array([int(r[1]) for r in rows]),
        "re": np.array([float(r[2]) for r in rows]),
        "im": np.array([float(r[3]) for r in rows]),
        "label1": np.array([int(TOKEN_LABELS[r[4]]) for r in rows]),
        "label2": np.array([int(TOKEN_LABELS[r[5]]) for r in rows]),
        "in_locus": np.array([bool(int(r[6])) for r in rows]),
        "period1": np.array([int(r[7]) for r in rows]),
        "period2": np.array([int(r[8]) for r in rows]),
    }
    return out
