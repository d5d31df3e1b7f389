"""Command-line front end: slice renders, dynamical-plane renders, and batch
figure reproduction.  Exit codes: 0 success, 2 invalid flags/config, 3 I/O."""
from __future__ import annotations

import argparse
import os
import sys
from dataclasses import replace

from .classifier import ClassifierConfig
from .config import (
    CLI_KINDS,
    FIGURES,
    RunConfig,
    build_classifier,
    build_spec,
    build_viewport,
    get_palette,
    load_config,
    parse_complex,
    render_config,
)
from .errors import ConfigError, CritsliceError
from .family import MapParams
from .raster import (
    GridResult,
    Viewport,
    default_dynplane_viewport,
    encode_image,
    export_csv,
    render_cubic_slice,
    render_dynplane,
    render_slice,
)
from .slices import SliceKind, SlicePoint, resolve


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="critslice",
        description="Render parameter slices and basin pictures of a family "
                    "of rational maps with two free critical orbits.",
    )
    sub = parser.add_subparsers(dest="cmd", required=True)

    def add_common(p, kinds=True):
        if kinds:
            p.add_argument("--kind", choices=CLI_KINDS)
            p.add_argument("--theta", help="rotation number, p/q or float")
            p.add_argument("--lambda", dest="lam", help="multiplier re,im")
            p.add_argument("--sheet", choices=("plus", "minus"))
            p.add_argument("--radii", help="Blaschke radii r_a,r_b")
            p.add_argument("--view", choices=("raw", "cayley"))
        p.add_argument("--d", type=int)
        p.add_argument("--center", help="viewport center re,im")
        p.add_argument("--width", type=float)
        p.add_argument("--px", type=int)
        p.add_argument("--py", type=int)
        p.add_argument("--max-iter", dest="max_iter", type=int)
        p.add_argument("--escape-magnitude", dest="escape_magnitude", type=float)
        p.add_argument("--eps-cycle", dest="eps_cycle", type=float)
        p.add_argument("--eps-attract", dest="eps_attract", type=float)
        p.add_argument("--max-period", dest="max_period", type=int)
        p.add_argument("--out", help="image output path (.png or .ppm)")
        p.add_argument("--csv", help="CSV grid export path")
        p.add_argument("--palette")
        p.add_argument("--threads", type=int)
        p.add_argument("--config", help="key=value config file (flags win)")

    p_slice = sub.add_parser("slice", help="render a parameter slice")
    add_common(p_slice)

    p_dyn = sub.add_parser("dynplane", help="render a dynamical plane")
    add_common(p_dyn)
    p_dyn.add_argument("--alpha", help="raw map coefficient re,im")
    p_dyn.add_argument("--beta", help="raw map coefficient re,im")
    p_dyn.add_argument("--gamma", help="raw map coefficient re,im")
    p_dyn.add_argument("--coord", help="slice coordinate re,im to resolve")

    p_rep = sub.add_parser("reproduce", help="run a stored figure config")
    p_rep.add_argument("figure", help="figure id, e.g. fig3-s2zero-d3")
    p_rep.add_argument("--out-root", default="out")
    p_rep.add_argument("--px", type=int, help="override stored resolution")
    p_rep.add_argument("--py", type=int)
    p_rep.add_argument("--threads", type=int)
    p_rep.add_argument("--list", action="store_true", help="list known figures")
    return parser


_FLAG_FIELDS = (
    "kind", "d", "theta", "lam", "sheet", "radii", "view",
    "alpha", "beta", "gamma", "coord",
    "center", "width", "px", "py",
    "max_iter", "escape_magnitude", "eps_cycle", "eps_attract", "max_period",
    "out", "csv", "palette", "threads",
)


def merge_config(args: argparse.Namespace, command: str) -> RunConfig:
    """defaults < config file < explicit flags."""
    cfg = RunConfig(command=command)
    if getattr(args, "config", None):
        cfg = load_config(args.config, base=cfg)
        cfg.command = command
    for name in _FLAG_FIELDS:
        value = getattr(args, name, None)
        if value is not None:
            setattr(cfg, name, value)
    return cfg


def _write_outputs(cfg: RunConfig, grid: GridResult, sidecar_path=None) -> None:
    palette = get_palette(cfg)
    wrote = []
    if cfg.out:
        parent = os.path.dirname(cfg.out)
        if parent:
            os.makedirs(parent, exist_ok=True)
        encode_image(grid, palette, cfg.out)
        wrote.append(cfg.out)
    if cfg.csv:
        parent = os.path.dirname(cfg.csv)
        if parent:
            os.makedirs(parent, exist_ok=True)
        export_csv(grid, cfg.csv)
        wrote.append(cfg.csv)
    if sidecar_path is None and wrote:
        sidecar_path = wrote[0] + ".cfg"
    if sidecar_path:
        with open(sidecar_path, "w", encoding="utf-8") as fh:
            fh.write(render_config(cfg))


def _summarize(grid: GridResult) -> None:
    print(
        f"cells={grid.n_cells} undecided={grid.undecided_fraction():.4f} "
        f"wall={grid.timing:.2f}s"
    )


def run_slice_config(cfg: RunConfig, sidecar_path=None) -> GridResult:
    spec = build_spec(cfg)
    vp = build_viewport(cfg)
    cfg.width = vp.width  # sidecar records the effective viewport
    ccfg = build_classifier(cfg)
    get_palette(cfg)  # validate before the expensive render
    if spec.kind is SliceKind.CUBIC_PER1:
        grid = render_cubic_slice(spec.lam, vp, ccfg, threads=cfg.threads)
    else:
        grid = render_slice(spec, vp, ccfg, threads=cfg.threads)
    _write_outputs(cfg, grid, sidecar_path)
    return grid


def cmd_slice(args) -> int:
    cfg = merge_config(args, "slice")
    grid = run_slice_config(cfg)
    _summarize(grid)
    return 0


def _resolve_dynplane_map(cfg: RunConfig) -> MapParams:
    if cfg.kind is not None:
        if cfg.coord is None:
            raise ConfigError("dynplane with --kind needs --coord")
        spec = build_spec(cfg)
        return resolve(SlicePoint(spec, parse_complex(cfg.coord, "coord")))
    if cfg.alpha is None or cfg.beta is None or cfg.gamma is None:
        raise ConfigError("dynplane needs either --kind/--coord or --alpha/--beta/--gamma")
    return MapParams(
        parse_complex(cfg.alpha, "alpha"),
        parse_complex(cfg.beta, "beta"),
        parse_complex(cfg.gamma, "gamma"),
        cfg.d,
    ).require_non_degenerate()


def cmd_dynplane(args) -> int:
    cfg = merge_config(args, "dynplane")
    if not cfg.out and not cfg.csv:
        raise ConfigError("dynplane requires --out (or --csv)")
    p = _resolve_dynplane_map(cfg)
    ccfg = build_classifier(cfg)
    if cfg.width is not None:
        vp = build_viewport(cfg)
    else:
        base = default_dynplane_viewport(p)
        vp = Viewport(parse_complex(cfg.center, "center"), base.width, cfg.px, cfg.py)
    cfg.width = vp.width  # sidecar records the effective viewport
    grid = render_dynplane(p, vp, ccfg, threads=cfg.threads)
    _write_outputs(cfg, grid)
    _summarize(grid)
    return 0


def cmd_reproduce(args) -> int:
    if args.list:
        for fig_id, (desc, _) in sorted(FIGURES.items()):
            print(f"{fig_id}: {desc}")
        return 0
    fig_id = args.figure
    if fig_id not in FIGURES:
        print(f"unknown figure id {fig_id!r}; known: {', '.join(sorted(FIGURES))}",
              file=sys.stderr)
        return 2
    desc, stored = FIGURES[fig_id]
    cfg = replace(stored)
    if args.px is not None:
        cfg.px = args.px
    if args.py is not None:
        cfg.py = args.py
    if args.threads is not None:
        cfg.threads = args.threads
    out_dir = os.path.join(args.out_root, fig_id)
    os.makedirs(out_dir, exist_ok=True)
    cfg.out = os.path.join(out_dir, "render.png")
    cfg.csv = None
    grid = run_slice_config(cfg, sidecar_path=os.path.join(out_dir, "config.cfg"))
    print(f"{fig_id}: {desc}")
    _summarize(grid)
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse already printed the message
        code = exc.code
        return code if isinstance(code, int) else 2
    try:
        if args.cmd == "slice":
            return cmd_slice(args)
        if args.cmd == "dynplane":
            return cmd_dynplane(args)
        return cmd_reproduce(args)
    except (ConfigError, CritsliceError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 3


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
