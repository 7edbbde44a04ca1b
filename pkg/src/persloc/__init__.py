"""Perspective-aware image-matching localization simulator."""

__version__ = "0.1.0"

from .geometry import (
    CameraRig,
    FocalPoint,
    RoadPoint,
    SpacePoint,
    TileRect,
    grid_tile_areas,
    jacobian_det,
    project_pinhole,
    project_road,
    tile_area_focal,
)
from .match_ip import IpVariant, classify_ip, weighted_distance_sq
from .match_mi import (
    EmpiricalJoint,
    MiVariant,
    classify_mi,
    discretize_gaussian,
    entropy,
    joint_enmi1d,
    joint_enmi2d,
    joint_nmi,
    mi_score,
)
from .noise import (
    NoiseProfile,
    build_noise_profile,
    gip1d_weights,
    gip2d_weights,
    sinr,
    sinr_db_to_sigma_i2,
    ssnr,
)
from .scene import (
    ScenePrior,
    TileGrid,
    ValueAlphabet,
    generate_scene,
    make_map_section,
    quantize,
    sense_capture,
)
from .sim import (
    CurvePoint,
    SimConfig,
    TrialOutcome,
    estimate_pe,
    preset,
    run_trial,
    sweep_alpha,
    sweep_noise,
)
