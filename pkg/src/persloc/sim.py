"""Monte Carlo misclassification experiments.

Each trial draws L candidate scenes, a uniformly random true location, noisy
map sections for all candidates, and a fresh noisy capture of the true scene;
every configured matcher then classifies the same realization, so per-trial
differences between matchers are paired.

Reproducibility: each trial owns a counter-based (Philox) random stream keyed
by (master seed, sweep-point index, trial index), so results are independent
of execution order and parallelism.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .geometry import CameraRig
from .match_ip import IpVariant, classify_ip
from .match_mi import MiVariant, classify_mi
from .noise import NoiseProfile, build_noise_profile, sinr_db_to_sigma_i2
from .scene import ScenePrior, TileGrid, ValueAlphabet, generate_scene, make_map_section, quantize, sense_capture

__all__ = [
    "IP_ALGORITHMS",
    "MI_ALGORITHMS",
    "SimConfig",
    "TrialOutcome",
    "CurvePoint",
    "run_trial",
    "estimate_pe",
    "sweep_noise",
    "sweep_alpha",
    "preset",
    "PRESET_NAMES",
]

IP_ALGORITHMS = ("sip", "gip1d", "gip2d")
MI_ALGORITHMS = ("nmi", "enmi1d", "enmi2d")

_IP_VARIANTS = {"sip": IpVariant.SIP, "gip1d": IpVariant.GIP1D, "gip2d": IpVariant.GIP2D}
_MI_VARIANTS = {"nmi": MiVariant.NMI, "enmi1d": MiVariant.ENMI1D, "enmi2d": MiVariant.ENMI2D}


@dataclass(frozen=True)
class SimConfig:
    """Fully resolved simulation parameters for one experiment."""

    rig: CameraRig
    grid: TileGrid
    prior: ScenePrior
    l_count: int = 2
    sigma_i2: float = 0.0
    n0: float = 2.5e-5
    n0_grid: tuple[float, ...] = ()
    alpha_grid: tuple[float, ...] = ()
    trials: int = 10_000
    seed: int = 0
    algorithms: tuple[str, ...] = IP_ALGORITHMS
    quantize_ip: bool = False
    alphabet: ValueAlphabet = field(default_factory=ValueAlphabet)

    def __post_init__(self):
        if self.l_count < 2:
            raise ValueError("need at least two candidate sections")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        unknown = set(self.algorithms) - set(IP_ALGORITHMS) - set(MI_ALGORITHMS)
        if unknown:
            raise ValueError(f"unknown algorithms: {sorted(unknown)}")


@dataclass(frozen=True)
class TrialOutcome:
    """True and chosen candidate indices (1-based) for one realization."""

    true_index: int
    chosen: dict[str, int]

    @property
    def errors(self) -> dict[str, bool]:
        return {name: idx != self.true_index for name, idx in self.chosen.items()}


@dataclass(frozen=True)
class CurvePoint:
    """Estimated misclassification probabilities at one sweep value."""

    sweep_param: str
    value: float
    rates: dict[str, float]
    trials: int


def trial_rng(seed: int, point_index: int, trial_index: int) -> np.random.Generator:
    """Independent counter-based stream for one (sweep point, trial) pair."""
    key = np.array(
        [seed & 0xFFFFFFFFFFFFFFFF, (point_index << 32) | trial_index],
        dtype=np.uint64,
    )
    return np.random.Generator(np.random.Philox(key=key))


def run_trial(
    cfg: SimConfig,
    profile: NoiseProfile,
    prior: ScenePrior,
    rng: np.random.Generator,
) -> TrialOutcome:
    """Simulate one localization attempt and classify with every algorithm."""
    sigma_i = math.sqrt(profile.sigma_i2)
    scenes = [generate_scene(cfg.grid, prior, rng) for _ in range(cfg.l_count)]
    true_index = int(rng.integers(1, cfg.l_count + 1))
    sections = [make_map_section(a, sigma_i, rng) for a in scenes]
    capture = sense_capture(scenes[true_index - 1], profile, rng)

    chosen: dict[str, int] = {}
    ip_names = [n for n in cfg.algorithms if n in _IP_VARIANTS]
    if ip_names:
        y, cands = capture, sections
        if cfg.quantize_ip:
            y = quantize(y, cfg.alphabet)
            cands = [quantize(c, cfg.alphabet) for c in sections]
        for name in ip_names:
            chosen[name] = classify_ip(y, cands, _IP_VARIANTS[name], profile)
    for name in cfg.algorithms:
        if name in _MI_VARIANTS:
            chosen[name] = classify_mi(
                capture, sections, _MI_VARIANTS[name], profile, cfg.alphabet
            )
    return TrialOutcome(true_index=true_index, chosen=chosen)


def estimate_pe(
    cfg: SimConfig,
    sweep_param: str,
    value: float,
    point_index: int,
    n0: float,
    alpha: float,
) -> CurvePoint:
    """Misclassification rate per algorithm at one sweep point."""
    profile = build_noise_profile(cfg.rig, cfg.grid, n0, cfg.sigma_i2)
    prior = replace(cfg.prior, alpha=alpha)
    errors = {name: 0 for name in cfg.algorithms}
    for t in range(cfg.trials):
        outcome = run_trial(cfg, profile, prior, trial_rng(cfg.seed, point_index, t))
        for name, wrong in outcome.errors.items():
            errors[name] += wrong
    rates = {name: count / cfg.trials for name, count in errors.items()}
    return CurvePoint(sweep_param=sweep_param, value=value, rates=rates, trials=cfg.trials)


def sweep_noise(cfg: SimConfig) -> list[CurvePoint]:
    """Error-rate curve over the sensor-noise-density grid, at alpha = 0."""
    grid = cfg.n0_grid or (cfg.n0,)
    return [
        estimate_pe(cfg, "n0", n0, i, n0=n0, alpha=0.0)
        for i, n0 in enumerate(grid)
    ]


def sweep_alpha(cfg: SimConfig) -> list[CurvePoint]:
    """Error-rate curve over the depth-correlation grid, at fixed n0."""
    if not cfg.alpha_grid:
        raise ValueError("alpha_grid must be nonempty")
    return [
        estimate_pe(cfg, "alpha", a, i, n0=cfg.n0, alpha=a)
        for i, a in enumerate(cfg.alpha_grid)
    ]


# -- experiment presets -------------------------------------------------------

SIGNAL_VARIANCE = 25.0  # sigma_a = 5

_DEFAULT_RIG = CameraRig.from_degrees(h=60.0, theta_deg=36.0, f=0.0367)
_DEFAULT_GRID = TileGrid(n_w=6, n_d=11, s=20.0)
_DEFAULT_PRIOR = ScenePrior(mu=128.0, sigma_a=5.0, alpha=0.0)

# log grids with ratio 10^0.2 per step, matching the published sweep axes
_N0_GRID_IP = tuple(2.5e-5 * 10.0 ** (0.2 * i) for i in range(25))
_N0_GRID_MI = tuple(2.5e-7 * 10.0 ** (0.2 * i) for i in range(35))
_ALPHA_GRID = tuple(0.05 * i for i in range(1, 20)) + (0.96, 0.97, 0.98, 0.99)
# sigma^2 / N0 = 45 dB for the correlation sweeps
_N0_AR1 = SIGNAL_VARIANCE / 10.0 ** 4.5

PRESET_NAMES = ("fig6", "fig7", "fig8", "fig9")


def preset(name: str, trials: int = 10_000, seed: int = 0) -> SimConfig:
    """Named experiment configurations for the published sweeps."""
    base = dict(
        rig=_DEFAULT_RIG,
        grid=_DEFAULT_GRID,
        prior=_DEFAULT_PRIOR,
        l_count=2,
        trials=trials,
        seed=seed,
    )
    if name == "fig6":
        return SimConfig(
            sigma_i2=sinr_db_to_sigma_i2(SIGNAL_VARIANCE, 3.0),
            n0_grid=_N0_GRID_IP,
            algorithms=IP_ALGORITHMS,
            **base,
        )
    if name == "fig7":
        return SimConfig(
            sigma_i2=sinr_db_to_sigma_i2(SIGNAL_VARIANCE, 3.0),
            n0=_N0_AR1,
            alpha_grid=_ALPHA_GRID,
            algorithms=IP_ALGORITHMS,
            **base,
        )
    if name == "fig8":
        return SimConfig(
            sigma_i2=sinr_db_to_sigma_i2(SIGNAL_VARIANCE, 10.0),
            n0_grid=_N0_GRID_MI,
            algorithms=MI_ALGORITHMS,
            **base,
        )
    if name == "fig9":
        return SimConfig(
            sigma_i2=sinr_db_to_sigma_i2(SIGNAL_VARIANCE, 10.0),
            n0=_N0_AR1,
            alpha_grid=_ALPHA_GRID,
            algorithms=MI_ALGORITHMS,
            **base,
        )
    raise ValueError(f"unknown preset {name!r}; expected one of {PRESET_NAMES}")
