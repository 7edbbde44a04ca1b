"""Per-tile noise profiles, SNR diagnostics, and matcher weight matrices."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .geometry import CameraRig, grid_tile_areas
from .scene import TileGrid

__all__ = [
    "NoiseProfile",
    "build_noise_profile",
    "ssnr",
    "sinr",
    "sinr_db_to_sigma_i2",
    "gip2d_weights",
    "gip1d_weights",
]


@dataclass(frozen=True)
class NoiseProfile:
    """Intrinsic variance, sensor noise density, tile areas, and the derived
    per-tile sensor variances n0 / area."""

    sigma_i2: float
    n0: float
    areas: np.ndarray
    sigma_s2: np.ndarray = field(init=False)

    def __post_init__(self):
        if self.sigma_i2 < 0:
            raise ValueError("sigma_i2 must be >= 0")
        if self.n0 < 0:
            raise ValueError("n0 must be >= 0")
        if np.any(self.areas <= 0):
            raise ValueError("all tile areas must be positive")
        object.__setattr__(self, "sigma_s2", self.n0 / self.areas)


def build_noise_profile(
    rig: CameraRig, grid: TileGrid, n0: float, sigma_i2: float
) -> NoiseProfile:
    """Assemble the per-tile noise profile from mount geometry and grid."""
    return NoiseProfile(sigma_i2=sigma_i2, n0=n0, areas=grid_tile_areas(grid, rig))


def ssnr(profile: NoiseProfile, sigma2: float, k: int, j: int) -> float:
    """Signal-to-sensor-noise ratio of tile (k, j); infinite when n0 == 0."""
    if profile.n0 == 0:
        return math.inf
    return sigma2 * profile.areas[k, j] / profile.n0


def sinr(sigma2: float, sigma_i2: float) -> float:
    """Signal-to-intrinsic-noise ratio; infinite when sigma_i2 == 0."""
    if sigma_i2 == 0:
        return math.inf
    return sigma2 / sigma_i2


def sinr_db_to_sigma_i2(sigma2: float, sinr_db: float) -> float:
    """Intrinsic variance realizing a target SINR in dB at signal power sigma2."""
    return sigma2 / 10.0 ** (sinr_db / 10.0)


def gip2d_weights(profile: NoiseProfile) -> np.ndarray:
    """Full maximum-likelihood matcher weights: 1 / (2*sigma_i^2 + sigma_s^2)."""
    denom = 2.0 * profile.sigma_i2 + profile.sigma_s2
    if np.any(denom <= 0):
        raise ValueError("weights undefined: zero total noise variance")
    return 1.0 / denom


def gip1d_weights(profile: NoiseProfile) -> np.ndarray:
    """Noiseless-map matcher weights: area / n0."""
    if profile.n0 == 0:
        raise ValueError("weights undefined for n0 == 0")
    return profile.areas / profile.n0
