"""Road-surface scene generation, tile noise, and value quantization.

Scenes are (n_w, n_d) matrices of per-tile amplitudes.  The first axis runs
across the road (index k), the second along the road depth (index j).  Depth
correlation, when enabled, is a stationary AR(1) process on the zero-mean
deviations of each across-road row.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "TileGrid",
    "ValueAlphabet",
    "ScenePrior",
    "generate_scene",
    "make_map_section",
    "sense_capture",
    "quantize",
]


@dataclass(frozen=True)
class TileGrid:
    """Tessellation of the road: tile counts across/along and tile side (cm)."""

    n_w: int
    n_d: int
    s: float

    def __post_init__(self):
        if self.n_w < 1 or self.n_d < 1:
            raise ValueError("tile counts must be >= 1")
        if not self.s > 0:
            raise ValueError("tile side must be positive")

    @property
    def shape(self) -> tuple[int, int]:
        return (self.n_w, self.n_d)


@dataclass(frozen=True)
class ValueAlphabet:
    """Ordered integer value set {0, ..., m-1}."""

    m: int = 256

    def __post_init__(self):
        if self.m < 2:
            raise ValueError("alphabet needs at least two levels")


@dataclass(frozen=True)
class ScenePrior:
    """Tile-value distribution: mean, standard deviation, depth correlation."""

    mu: float = 128.0
    sigma_a: float = 5.0
    alpha: float = 0.0

    def __post_init__(self):
        if self.sigma_a < 0:
            raise ValueError("sigma_a must be >= 0")
        if not 0 <= self.alpha < 1:
            raise ValueError("alpha must lie in [0, 1)")


def generate_scene(grid: TileGrid, prior: ScenePrior, rng: np.random.Generator) -> np.ndarray:
    """Draw a ground-truth scene matrix.

    With ``alpha == 0`` every tile is an independent Normal(mu, sigma_a^2)
    draw.  With ``alpha > 0`` the zero-mean deviations follow a stationary
    AR(1) recursion along the depth axis, initialized from the stationary
    distribution, so the marginal of every tile stays Normal(mu, sigma_a^2).
    """
    n_w, n_d = grid.shape
    eps = rng.normal(0.0, prior.sigma_a, size=(n_w, n_d))
    a = prior.alpha
    dev = np.empty((n_w, n_d))
    dev[:, 0] = eps[:, 0]  # stationary start
    scale = math.sqrt(1.0 - a * a)
    for j in range(1, n_d):
        dev[:, j] = a * dev[:, j - 1] + scale * eps[:, j]
    return prior.mu + dev


def make_map_section(a: np.ndarray, sigma_i: float, rng: np.random.Generator) -> np.ndarray:
    """Corrupt a scene with intrinsic noise only, as stored in the global map."""
    if sigma_i < 0:
        raise ValueError("sigma_i must be >= 0")
    if sigma_i == 0:
        return a.copy()
    return a + rng.normal(0.0, sigma_i, size=a.shape)


def sense_capture(a: np.ndarray, profile, rng: np.random.Generator) -> np.ndarray:
    """Corrupt a scene with intrinsic plus per-tile sensor noise (fresh capture).

    Sensor noise variance grows as the tile's focal-plane footprint shrinks:
    sigma_s^2(k, j) = n0 / area(k, j).
    """
    if a.shape != profile.sigma_s2.shape:
        raise ValueError(f"scene shape {a.shape} != profile shape {profile.sigma_s2.shape}")
    intrinsic = rng.normal(0.0, math.sqrt(profile.sigma_i2), size=a.shape)
    sensor = rng.normal(0.0, 1.0, size=a.shape) * np.sqrt(profile.sigma_s2)
    return a + intrinsic + sensor


def quantize(img: np.ndarray, v: ValueAlphabet = ValueAlphabet()) -> np.ndarray:
    """Round half away from zero, then clamp to the alphabet range."""
    rounded = np.sign(img) * np.floor(np.abs(img) + 0.5)
    return np.clip(rounded, 0, v.m - 1).astype(np.int64)
