"""Pinhole camera and road-plane projection geometry.

A camera mounted at height ``h`` with depression angle ``theta`` looks down
the road; points on the road plane project onto the focal plane through the
pinhole model.  The Jacobian determinant of that map gives the focal-plane
footprint of road tiles, which shrinks quickly with distance ahead.

Units are centimeters throughout; angles are radians internally.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "CameraRig",
    "RoadPoint",
    "FocalPoint",
    "SpacePoint",
    "TileRect",
    "project_pinhole",
    "project_road",
    "jacobian_det",
    "tile_area_focal",
    "grid_tile_areas",
]


@dataclass(frozen=True)
class CameraRig:
    """Camera mount geometry: height above road, depression angle, focal length.

    ``theta`` is stored in radians; use :meth:`from_degrees` for config values.
    """

    h: float
    theta: float
    f: float

    def __post_init__(self):
        if not self.h > 0:
            raise ValueError(f"camera height must be positive, got {self.h}")
        if not self.f > 0:
            raise ValueError(f"focal length must be positive, got {self.f}")
        if not 0 < self.theta < math.pi / 2:
            raise ValueError(
                f"depression angle must lie in (0, pi/2) radians, got {self.theta}"
            )

    @classmethod
    def from_degrees(cls, h: float, theta_deg: float, f: float) -> "CameraRig":
        return cls(h=h, theta=math.radians(theta_deg), f=f)


@dataclass(frozen=True)
class RoadPoint:
    """Point on the road plane: lateral offset and distance ahead of the camera."""

    x_bar: float
    y_bar: float

    def __post_init__(self):
        if self.y_bar < 0:
            raise ValueError(f"longitudinal coordinate must be >= 0, got {self.y_bar}")


@dataclass(frozen=True)
class FocalPoint:
    """Focal-plane image coordinates."""

    x_tilde: float
    y_tilde: float


@dataclass(frozen=True)
class SpacePoint:
    """3D point in the pinhole camera frame; z points along the optical axis."""

    x: float
    y: float
    z: float


@dataclass(frozen=True)
class TileRect:
    """Axis-aligned rectangle on the road plane."""

    x_lower: float
    x_upper: float
    y_lower: float
    y_upper: float

    def __post_init__(self):
        if self.x_lower > self.x_upper:
            raise ValueError("x_lower must not exceed x_upper")
        if not 0 <= self.y_lower <= self.y_upper:
            raise ValueError("need 0 <= y_lower <= y_upper")


def project_pinhole(p: SpacePoint, f: float) -> FocalPoint:
    """Project a 3D point through the pinhole onto the focal plane."""
    if p.z <= 0:
        raise ValueError(f"point must lie in front of the pinhole (z > 0), got z={p.z}")
    return FocalPoint(f * p.x / p.z, f * p.y / p.z)


def project_road(p: RoadPoint, rig: CameraRig) -> FocalPoint:
    """Map a road-plane point to its focal-plane image."""
    c, s = math.cos(rig.theta), math.sin(rig.theta)
    denom = p.y_bar * c + rig.h * s
    return FocalPoint(
        rig.f * p.x_bar / denom,
        rig.f * (p.y_bar * s - rig.h * c) / denom,
    )


def jacobian_det(y_bar, rig: CameraRig):
    """Jacobian determinant of the road-to-focal-plane map at distance ``y_bar``.

    Strictly positive and strictly decreasing in ``y_bar``.  Accepts scalars or
    numpy arrays.
    """
    c, s = math.cos(rig.theta), math.sin(rig.theta)
    return rig.f ** 2 * rig.h / (np.asarray(y_bar) * c + rig.h * s) ** 3


def tile_area_focal(t: TileRect, rig: CameraRig) -> float:
    """Focal-plane area of a road tile (closed form of the Jacobian integral)."""
    c, s = math.cos(rig.theta), math.sin(rig.theta)
    f2h = rig.f ** 2 * rig.h
    lo = f2h / (t.y_lower * c + rig.h * s) ** 2
    hi = f2h / (t.y_upper * c + rig.h * s) ** 2
    return (t.x_upper - t.x_lower) / (2 * c) * (lo - hi)


def grid_tile_areas(grid, rig: CameraRig) -> np.ndarray:
    """Focal-plane areas for every tile of a grid, as an (n_w, n_d) matrix.

    Tiles in a row share their distance extent, so areas are constant across a
    row and strictly decreasing along the road.
    """
    c, s = math.cos(rig.theta), math.sin(rig.theta)
    f2h = rig.f ** 2 * rig.h
    edges = np.arange(grid.n_d + 1) * grid.s
    inv = f2h / (edges * c + rig.h * s) ** 2
    row_areas = grid.s / (2 * c) * (inv[:-1] - inv[1:])
    return np.tile(row_areas, (grid.n_w, 1))
