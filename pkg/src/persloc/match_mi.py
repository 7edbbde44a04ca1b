"""Mutual-information-family matchers.

NMI pairs quantized tile values into a joint histogram and scores the ratio
(H[marginal1] + H[marginal2]) / H[joint].  The enhanced variants replace the
per-tile point mass with the discrete Gaussian posterior of the underlying
signal value, spreading mass along the capture axis only (1D, noiseless-map
assumption) or along both axes (2D).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import numpy as np
from scipy.special import ndtr, xlogy

from .noise import NoiseProfile
from .scene import ValueAlphabet, quantize

__all__ = [
    "EmpiricalJoint",
    "MiVariant",
    "discretize_gaussian",
    "joint_nmi",
    "joint_enmi2d",
    "joint_enmi1d",
    "entropy",
    "mi_score",
    "classify_mi",
]

NORM_TOL = 1e-9


class MiVariant(Enum):
    NMI = "nmi"
    ENMI1D = "enmi1d"
    ENMI2D = "enmi2d"


@dataclass
class EmpiricalJoint:
    """Nonnegative mass matrix over value pairs (capture axis first)."""

    mass: np.ndarray
    normalized: bool = True


def _posterior_rows(means: np.ndarray, variances: np.ndarray, m: int) -> np.ndarray:
    """Discrete Gaussian posteriors, one per row: shape (len(means), m).

    Bin i integrates the Gaussian over [i-0.5, i+0.5); the two edge bins absorb
    the tails.  Support is truncated to within six standard deviations of the
    mean and renormalized; a zero-variance row is a point mass at the clamped
    rounded mean.
    """
    means = np.atleast_1d(np.asarray(means, dtype=float))
    variances = np.broadcast_to(np.asarray(variances, dtype=float), means.shape)
    n = means.size
    out = np.zeros((n, m))

    degenerate = variances <= 0
    if degenerate.any():
        levels = quantize(means[degenerate], ValueAlphabet(m))
        out[np.nonzero(degenerate)[0], levels] = 1.0

    live = ~degenerate
    if live.any():
        mu = means[live, None]
        sd = np.sqrt(variances[live])[:, None]
        edges = np.arange(m + 1) - 0.5
        cdf = ndtr((edges[None, :] - mu) / sd)
        cdf[:, 0] = 0.0
        cdf[:, -1] = 1.0
        probs = np.diff(cdf, axis=1)
        centers = np.arange(m)[None, :]
        probs[np.abs(centers - mu) > 6.0 * sd] = 0.0
        totals = probs.sum(axis=1, keepdims=True)
        empty = totals[:, 0] <= 0.0
        if empty.any():
            # mean so far outside the alphabet that the 6-sigma window misses
            # every bin; collapse to the nearest edge level
            idx = np.nonzero(live)[0][empty]
            levels = quantize(means[idx], ValueAlphabet(m))
            probs[empty] = 0.0
            probs[np.nonzero(empty)[0], levels] = 1.0
            totals = probs.sum(axis=1, keepdims=True)
        out[live] = probs / totals
    return out


def discretize_gaussian(mean: float, variance: float, v: ValueAlphabet) -> np.ndarray:
    """Discrete posterior of a Gaussian tile value over the alphabet."""
    if variance < 0:
        raise ValueError("variance must be >= 0")
    return _posterior_rows(np.array([mean]), np.array([variance]), v.m)[0]


def _check_alphabet(img: np.ndarray, m: int, name: str) -> np.ndarray:
    arr = np.asarray(img)
    if not np.issubdtype(arr.dtype, np.integer):
        if not np.all(arr == np.floor(arr)):
            raise ValueError(f"{name} must be integer-valued")
        arr = arr.astype(np.int64)
    if arr.min() < 0 or arr.max() >= m:
        raise ValueError(f"{name} has values outside the alphabet [0, {m - 1}]")
    return arr


def joint_nmi(yq: np.ndarray, ylq: np.ndarray, v: ValueAlphabet = ValueAlphabet()) -> EmpiricalJoint:
    """Pair-counting joint histogram of two quantized images, normalized."""
    if yq.shape != ylq.shape:
        raise ValueError(f"shape mismatch: {yq.shape} vs {ylq.shape}")
    m = v.m
    a = _check_alphabet(yq, m, "captured image")
    b = _check_alphabet(ylq, m, "map section")
    counts = np.bincount(a.ravel() * m + b.ravel(), minlength=m * m)
    return EmpiricalJoint(counts.reshape(m, m) / a.size)


def joint_enmi2d(
    y: np.ndarray,
    y_l: np.ndarray,
    profile: NoiseProfile,
    v: ValueAlphabet = ValueAlphabet(),
) -> EmpiricalJoint:
    """Posterior-spread joint: per tile, outer product of the capture posterior
    (variance sigma_i^2 + sigma_s^2) and the map posterior (variance sigma_i^2)."""
    if y.shape != y_l.shape or y.shape != profile.sigma_s2.shape:
        raise ValueError("image and profile shapes must match")
    m = v.m
    p_cap = _posterior_rows(y.ravel(), (profile.sigma_i2 + profile.sigma_s2).ravel(), m)
    p_map = _posterior_rows(y_l.ravel(), np.full(y.size, profile.sigma_i2), m)
    return EmpiricalJoint(p_cap.T @ p_map / y.size)


def joint_enmi1d(
    y: np.ndarray,
    ylq: np.ndarray,
    profile: NoiseProfile,
    v: ValueAlphabet = ValueAlphabet(),
) -> EmpiricalJoint:
    """Posterior-spread joint with a noiseless-map assumption: per tile, the
    capture posterior is added along the column of the quantized map value."""
    if y.shape != ylq.shape or y.shape != profile.sigma_s2.shape:
        raise ValueError("image and profile shapes must match")
    m = v.m
    cols = _check_alphabet(ylq, m, "map section").ravel()
    p_cap = _posterior_rows(y.ravel(), (profile.sigma_i2 + profile.sigma_s2).ravel(), m)
    by_col = np.zeros((m, m))
    np.add.at(by_col, cols, p_cap)
    return EmpiricalJoint(by_col.T / y.size)


def entropy(dist: np.ndarray) -> float:
    """Shannon entropy in bits of a normalized mass vector or matrix."""
    p = np.asarray(dist, dtype=float)
    if abs(p.sum() - 1.0) > NORM_TOL:
        raise ValueError(f"distribution must sum to 1, got {p.sum()}")
    return float(-xlogy(p, p).sum() / math.log(2))


def mi_score(joint: EmpiricalJoint) -> float:
    """Normalized mutual information score (H1 + H2) / H12 of a joint.

    A joint concentrated on a single cell (H12 == 0) scores the supremum 2.
    """
    mass = joint.mass
    h12 = entropy(mass)
    if h12 == 0.0:
        return 2.0
    h1 = entropy(mass.sum(axis=1))
    h2 = entropy(mass.sum(axis=0))
    return (h1 + h2) / h12


def _scores_fast(
    y: np.ndarray,
    candidates: Sequence[np.ndarray],
    variant: MiVariant,
    profile: NoiseProfile,
    m: int,
) -> list[float]:
    """Per-candidate scores, sharing the capture posterior across candidates."""
    v = ValueAlphabet(m)
    if variant is MiVariant.NMI:
        yq = quantize(y, v)
        return [mi_score(joint_nmi(yq, quantize(c, v), v)) for c in candidates]

    p_cap = _posterior_rows(y.ravel(), (profile.sigma_i2 + profile.sigma_s2).ravel(), m)
    scores = []
    for c in candidates:
        if variant is MiVariant.ENMI1D:
            cols = quantize(c, v).ravel()
            by_col = np.zeros((m, m))
            np.add.at(by_col, cols, p_cap)
            joint = EmpiricalJoint(by_col.T / y.size)
        else:
            p_map = _posterior_rows(c.ravel(), np.full(y.size, profile.sigma_i2), m)
            joint = EmpiricalJoint(p_cap.T @ p_map / y.size)
        scores.append(mi_score(joint))
    return scores


def classify_mi(
    y: np.ndarray,
    candidates: Sequence[np.ndarray],
    variant: MiVariant,
    profile: NoiseProfile,
    v: ValueAlphabet = ValueAlphabet(),
) -> int:
    """Return the 1-based index of the maximum-score candidate.

    Ties break toward the lowest index.  NMI quantizes both inputs, ENMI1D
    quantizes only the map, ENMI2D quantizes neither.
    """
    if len(candidates) == 0:
        raise ValueError("candidate list must be nonempty")
    scores = _scores_fast(y, candidates, variant, profile, v.m)
    return int(np.argmax(scores)) + 1
