"""Command-line front end: config parsing, experiment presets, CSV output.

Config files are flat ``key = value`` lines with ``#`` comments.  Flag values
override file values; the ``SIMLOC_SEED`` environment variable seeds a run
with the lowest precedence.  Exit status is 0 on success, 2 on configuration
errors, 1 on runtime errors.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import math
import os
import sys
from datetime import datetime, timezone
from pathlib import Path

from . import __version__
from .geometry import CameraRig, RoadPoint, project_road
from .noise import build_noise_profile, gip1d_weights, gip2d_weights, sinr_db_to_sigma_i2
from .scene import ScenePrior, TileGrid
from .sim import (
    IP_ALGORITHMS,
    MI_ALGORITHMS,
    PRESET_NAMES,
    CurvePoint,
    SimConfig,
    preset,
    sweep_alpha,
    sweep_noise,
)

CSV_HEADER = "sweep_param,param_value,algorithm,p_error,trials,seed"

_CONFIG_KEYS = {
    "h_cm", "theta_deg", "f_cm", "s_cm", "n_w", "n_d", "mu", "sigma_a",
    "sinr_db", "n0", "alpha", "trials", "seed", "algorithms", "quantize_ip",
}
_INT_KEYS = {"n_w", "n_d", "trials", "seed"}
_FLOAT_KEYS = {"h_cm", "theta_deg", "f_cm", "s_cm", "mu", "sigma_a", "sinr_db", "n0", "alpha"}
_BOOL_KEYS = {"quantize_ip"}


class ConfigError(Exception):
    """Invalid configuration input; maps to exit status 2."""


def read_config_file(path: str | Path) -> dict:
    """Parse a flat key = value config file into typed values."""
    path = Path(path)
    if not path.is_file():
        raise ConfigError(f"config file not found: {path}")
    values: dict = {}
    for lineno, raw in enumerate(path.read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value', got {raw!r}")
        key, _, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if key not in _CONFIG_KEYS:
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
        try:
            if key in _INT_KEYS:
                values[key] = int(value)
            elif key in _FLOAT_KEYS:
                values[key] = float(value)
            elif key in _BOOL_KEYS:
                if value.lower() not in ("true", "false", "0", "1"):
                    raise ValueError(value)
                values[key] = value.lower() in ("true", "1")
            else:  # algorithms
                values[key] = tuple(v.strip() for v in value.split(",") if v.strip())
        except ValueError:
            raise ConfigError(f"{path}:{lineno}: bad value for {key}: {value!r}") from None
    return values


def resolve_config(args: argparse.Namespace, default_preset: str = "fig6") -> tuple[SimConfig, str]:
    """Merge preset defaults, config file, env seed, and flags into a SimConfig.

    Precedence, lowest to highest: preset defaults, SIMLOC_SEED, file, flags.
    """
    preset_name = getattr(args, "preset", None) or default_preset
    values: dict = {}
    env_seed = os.environ.get("SIMLOC_SEED")
    if env_seed is not None:
        try:
            values["seed"] = int(env_seed)
        except ValueError:
            raise ConfigError(f"SIMLOC_SEED must be an integer, got {env_seed!r}")
    if getattr(args, "config", None):
        values.update(read_config_file(args.config))
    for key in ("trials", "seed"):
        flag = getattr(args, key, None)
        if flag is not None:
            values[key] = flag

    try:
        base = preset(preset_name)
    except ValueError as e:
        raise ConfigError(str(e)) from None

    theta_deg = values.get("theta_deg", math.degrees(base.rig.theta))
    if not 0 < theta_deg < 90:
        raise ConfigError(f"theta_deg must lie in (0, 90), got {theta_deg}")
    sigma_a = values.get("sigma_a", base.prior.sigma_a)
    try:
        rig = CameraRig.from_degrees(
            h=values.get("h_cm", base.rig.h),
            theta_deg=theta_deg,
            f=values.get("f_cm", base.rig.f),
        )
        grid = TileGrid(
            n_w=values.get("n_w", base.grid.n_w),
            n_d=values.get("n_d", base.grid.n_d),
            s=values.get("s_cm", base.grid.s),
        )
        prior = ScenePrior(
            mu=values.get("mu", base.prior.mu),
            sigma_a=sigma_a,
            alpha=values.get("alpha", base.prior.alpha),
        )
        sigma_i2 = (
            sinr_db_to_sigma_i2(sigma_a**2, values["sinr_db"])
            if "sinr_db" in values
            else base.sigma_i2
        )
        cfg = dataclasses.replace(
            base,
            rig=rig,
            grid=grid,
            prior=prior,
            sigma_i2=sigma_i2,
            n0=values.get("n0", base.n0),
            trials=values.get("trials", base.trials),
            seed=values.get("seed", base.seed),
            algorithms=values.get("algorithms", base.algorithms),
            quantize_ip=values.get("quantize_ip", base.quantize_ip),
        )
    except ValueError as e:
        raise ConfigError(str(e)) from None
    return cfg, preset_name


def parse_config(args: argparse.Namespace) -> SimConfig:
    return resolve_config(args)[0]


def build_manifest(cfg: SimConfig, preset_name: str, out_path: Path) -> dict:
    """Sidecar metadata sufficient to regenerate the output file."""
    return {
        "tool": "persloc",
        "version": __version__,
        "preset": preset_name,
        "output": str(out_path),
        "timestamp": datetime.now(timezone.utc).isoformat(),
        "seed": cfg.seed,
        "trials": cfg.trials,
        "config": {
            "h_cm": cfg.rig.h,
            "theta_deg": math.degrees(cfg.rig.theta),
            "f_cm": cfg.rig.f,
            "s_cm": cfg.grid.s,
            "n_w": cfg.grid.n_w,
            "n_d": cfg.grid.n_d,
            "mu": cfg.prior.mu,
            "sigma_a": cfg.prior.sigma_a,
            "sigma_i2": cfg.sigma_i2,
            "n0": cfg.n0,
            "n0_grid": list(cfg.n0_grid),
            "alpha_grid": list(cfg.alpha_grid),
            "l_count": cfg.l_count,
            "algorithms": list(cfg.algorithms),
            "quantize_ip": cfg.quantize_ip,
        },
    }


def curve_csv(points: list[CurvePoint], seed: int) -> str:
    lines = [CSV_HEADER]
    for p in points:
        for algo in sorted(p.rates):
            lines.append(
                f"{p.sweep_param},{p.value:.12g},{algo},{p.rates[algo]:.12g},{p.trials},{seed}"
            )
    return "\n".join(lines) + "\n"


def _write_outputs(out_path: Path, csv_text: str, manifest: dict) -> None:
    manifest_path = out_path.with_suffix(out_path.suffix + ".manifest.json")
    try:
        out_path.write_text(csv_text)
        manifest_path.write_text(json.dumps(manifest, indent=2) + "\n")
    except BaseException:
        for p in (out_path, manifest_path):
            p.unlink(missing_ok=True)
        raise


def cmd_sweep(args: argparse.Namespace, param: str) -> int:
    cfg, preset_name = resolve_config(args, "fig6" if param == "n0" else "fig7")
    points = sweep_noise(cfg) if param == "n0" else sweep_alpha(cfg)
    out_path = Path(args.out)
    _write_outputs(out_path, curve_csv(points, cfg.seed), build_manifest(cfg, preset_name, out_path))
    print(f"wrote {out_path} ({len(points)} sweep points)")
    return 0


def cmd_tile_areas(args: argparse.Namespace) -> int:
    cfg, _ = resolve_config(args)
    profile = build_noise_profile(cfg.rig, cfg.grid, cfg.n0, cfg.sigma_i2)
    sigma2 = cfg.prior.sigma_a**2
    tables = {
        "area": profile.areas,
        "ssnr": sigma2 * profile.areas / cfg.n0 if cfg.n0 > 0 else None,
        "gip1d_weight": gip1d_weights(profile) if cfg.n0 > 0 else None,
        "gip2d_weight": gip2d_weights(profile),
    }
    lines = ["quantity,k,j,value"]
    for name, table in tables.items():
        if table is None:
            continue
        for k in range(cfg.grid.n_w):
            for j in range(cfg.grid.n_d):
                lines.append(f"{name},{k + 1},{j + 1},{table[k, j]:.12g}")
    text = "\n".join(lines) + "\n"
    if args.out:
        Path(args.out).write_text(text)
        print(f"wrote {args.out}")
    else:
        print(text, end="")
    return 0


def cmd_project(args: argparse.Namespace) -> int:
    cfg, _ = resolve_config(args)
    fp = project_road(RoadPoint(args.xbar, args.ybar), cfg.rig)
    print(f"x_tilde = {fp.x_tilde:.12g}")
    print(f"y_tilde = {fp.y_tilde:.12g}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="persloc",
        description="Perspective-aware localization matching simulator",
    )
    parser.add_argument("--version", action="version", version=f"persloc {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--preset", choices=PRESET_NAMES, help="named experiment preset")
        p.add_argument("--config", help="path to a key = value config file")
        p.add_argument("--seed", type=int, help="master random seed")
        p.add_argument("--trials", type=int, help="Monte Carlo trials per sweep point")

    p = sub.add_parser("sweep-noise", help="error-rate curve vs sensor noise density")
    common(p)
    p.add_argument("--out", default="sweep_noise.csv", help="output CSV path")
    p.set_defaults(func=lambda a: cmd_sweep(a, "n0"))

    p = sub.add_parser("sweep-alpha", help="error-rate curve vs depth correlation")
    common(p)
    p.add_argument("--out", default="sweep_alpha.csv", help="output CSV path")
    p.set_defaults(func=lambda a: cmd_sweep(a, "alpha"))

    p = sub.add_parser("tile-areas", help="emit tile areas, SSNR, and matcher weights")
    common(p)
    p.add_argument("--out", help="output CSV path (default: stdout)")
    p.set_defaults(func=cmd_tile_areas)

    p = sub.add_parser("project", help="project a road point onto the focal plane")
    common(p)
    p.add_argument("--xbar", type=float, required=True, help="lateral road coordinate (cm)")
    p.add_argument("--ybar", type=float, required=True, help="distance ahead (cm)")
    p.set_defaults(func=cmd_project)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except Exception as e:
        print(f"runtime error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
