"""Inner-product-family matchers: Euclidean and noise-weighted distances.

All three variants select the candidate map section minimizing a (possibly
weighted) squared tile-wise distance; they differ only in the weight matrix.
Candidate indices are 1-based.
"""

from __future__ import annotations

from enum import Enum
from typing import Sequence

import numpy as np

from .noise import NoiseProfile, gip1d_weights, gip2d_weights

__all__ = ["IpVariant", "weighted_distance_sq", "classify_ip"]


class IpVariant(Enum):
    SIP = "sip"
    GIP1D = "gip1d"
    GIP2D = "gip2d"


def weighted_distance_sq(y: np.ndarray, y_l: np.ndarray, w: np.ndarray) -> float:
    """Weighted squared distance sum_{k,j} w * (y - y_l)^2."""
    if y.shape != y_l.shape or y.shape != w.shape:
        raise ValueError(f"shape mismatch: {y.shape}, {y_l.shape}, {w.shape}")
    d = y - y_l
    return float(np.sum(w * d * d))


def ip_weights(variant: IpVariant, profile: NoiseProfile) -> np.ndarray:
    """Weight matrix used by an inner-product variant."""
    if variant is IpVariant.SIP:
        return np.ones_like(profile.sigma_s2)
    if variant is IpVariant.GIP1D:
        return gip1d_weights(profile)
    return gip2d_weights(profile)


def classify_ip(
    y: np.ndarray,
    candidates: Sequence[np.ndarray],
    variant: IpVariant,
    profile: NoiseProfile,
) -> int:
    """Return the 1-based index of the minimum-distance candidate.

    Ties break toward the lowest index.
    """
    if len(candidates) == 0:
        raise ValueError("candidate list must be nonempty")
    w = ip_weights(variant, profile)
    dists = [weighted_distance_sq(y, y_l, w) for y_l in candidates]
    return int(np.argmin(dists)) + 1
