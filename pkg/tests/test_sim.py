"""Monte Carlo harness tests: determinism, degenerate regimes, and presets."""

import dataclasses

import numpy as np
import pytest

from persloc.geometry import CameraRig
from persloc.noise import build_noise_profile
from persloc.scene import ScenePrior, TileGrid
from persloc.sim import (
    IP_ALGORITHMS,
    MI_ALGORITHMS,
    SimConfig,
    estimate_pe,
    preset,
    run_trial,
    sweep_alpha,
    sweep_noise,
    trial_rng,
)

DEFAULT_RIG = CameraRig.from_degrees(h=60.0, theta_deg=36.0, f=0.0367)
GRID = TileGrid(n_w=6, n_d=11, s=20.0)
ALL_ALGOS = IP_ALGORITHMS + MI_ALGORITHMS


def small_config(**overrides):
    defaults = dict(
        rig=DEFAULT_RIG,
        grid=GRID,
        prior=ScenePrior(mu=128.0, sigma_a=5.0),
        sigma_i2=2.5,
        n0=2.5e-5,
        trials=100,
        seed=0,
        algorithms=ALL_ALGOS,
    )
    defaults.update(overrides)
    return SimConfig(**defaults)


class TestTrialRng:
    def test_same_key_same_stream(self):
        a = trial_rng(5, 3, 7).normal(size=10)
        b = trial_rng(5, 3, 7).normal(size=10)
        np.testing.assert_array_equal(a, b)

    def test_distinct_keys_distinct_streams(self):
        a = trial_rng(5, 3, 7).normal(size=10)
        b = trial_rng(5, 3, 8).normal(size=10)
        c = trial_rng(5, 4, 7).normal(size=10)
        d = trial_rng(6, 3, 7).normal(size=10)
        assert not np.array_equal(a, b)
        assert not np.array_equal(a, c)
        assert not np.array_equal(a, d)


class TestRunTrial:
    def test_deterministic(self):
        cfg = small_config()
        profile = build_noise_profile(cfg.rig, cfg.grid, cfg.n0, cfg.sigma_i2)
        out1 = run_trial(cfg, profile, cfg.prior, trial_rng(0, 0, 0))
        out2 = run_trial(cfg, profile, cfg.prior, trial_rng(0, 0, 0))
        assert out1 == out2

    def test_chosen_indices_in_range(self):
        cfg = small_config(l_count=4)
        profile = build_noise_profile(cfg.rig, cfg.grid, cfg.n0, cfg.sigma_i2)
        for t in range(20):
            out = run_trial(cfg, profile, cfg.prior, trial_rng(1, 0, t))
            assert 1 <= out.true_index <= 4
            assert set(out.chosen) == set(ALL_ALGOS)
            assert all(1 <= idx <= 4 for idx in out.chosen.values())

    def test_noiseless_trials_always_correct(self):
        cfg = small_config(sigma_i2=0.0, n0=1e-12)
        profile = build_noise_profile(cfg.rig, cfg.grid, cfg.n0, cfg.sigma_i2)
        for t in range(50):
            out = run_trial(cfg, profile, cfg.prior, trial_rng(2, 0, t))
            assert not any(out.errors.values()), out

    def test_indistinguishable_scenes_err_half_the_time(self):
        # sigma_a = 0 makes all candidate scenes identical, so every classifier
        # effectively guesses; error rate must sit near 1/2
        cfg = small_config(
            prior=ScenePrior(mu=128.0, sigma_a=0.0),
            sigma_i2=2.5,
            trials=400,
            algorithms=IP_ALGORITHMS,
        )
        point = estimate_pe(cfg, "n0", cfg.n0, 0, n0=cfg.n0, alpha=0.0)
        for rate in point.rates.values():
            assert rate == pytest.approx(0.5, abs=0.08)

    def test_quantize_ip_changes_realization_outcome_rarely(self):
        cfg_raw = small_config(algorithms=IP_ALGORITHMS, sigma_i2=12.53)
        cfg_q = dataclasses.replace(cfg_raw, quantize_ip=True)
        profile = build_noise_profile(cfg_raw.rig, cfg_raw.grid, cfg_raw.n0, 12.53)
        agree = sum(
            run_trial(cfg_raw, profile, cfg_raw.prior, trial_rng(3, 0, t)).chosen
            == run_trial(cfg_q, profile, cfg_q.prior, trial_rng(3, 0, t)).chosen
            for t in range(100)
        )
        assert agree > 90


class TestEstimatePe:
    def test_single_trial_forced_correct(self):
        cfg = small_config(sigma_i2=0.0, trials=1)
        point = estimate_pe(cfg, "n0", 1e-12, 0, n0=1e-12, alpha=0.0)
        assert all(rate == 0.0 for rate in point.rates.values())

    def test_rates_bounded(self):
        cfg = small_config(trials=50)
        point = estimate_pe(cfg, "n0", 0.01, 0, n0=0.01, alpha=0.0)
        assert all(0.0 <= r <= 1.0 for r in point.rates.values())

    def test_saturation_at_extreme_noise(self):
        cfg = small_config(algorithms=IP_ALGORITHMS, sigma_i2=12.53, trials=2000)
        point = estimate_pe(cfg, "n0", 1e6, 0, n0=1e6, alpha=0.0)
        se = (0.25 / cfg.trials) ** 0.5
        for name, rate in point.rates.items():
            assert abs(rate - 0.5) <= 3 * se, (name, rate)


class TestSweeps:
    def test_single_point_grid_gives_singleton(self):
        cfg = small_config(n0_grid=(1e-4,), trials=10)
        points = sweep_noise(cfg)
        assert len(points) == 1
        assert points[0].sweep_param == "n0"
        assert points[0].value == 1e-4

    def test_sweep_alpha_requires_grid(self):
        cfg = small_config()
        with pytest.raises(ValueError):
            sweep_alpha(cfg)

    def test_sweep_alpha_points(self):
        cfg = small_config(alpha_grid=(0.2, 0.8), trials=10, algorithms=IP_ALGORITHMS)
        points = sweep_alpha(cfg)
        assert [p.value for p in points] == [0.2, 0.8]
        assert all(p.sweep_param == "alpha" for p in points)


class TestPresets:
    def test_unknown_preset_rejected(self):
        with pytest.raises(ValueError):
            preset("fig99")

    def test_fig6_configuration(self):
        cfg = preset("fig6")
        assert cfg.rig.h == 60.0
        assert cfg.grid.shape == (6, 11)
        assert cfg.algorithms == IP_ALGORITHMS
        assert cfg.sigma_i2 == pytest.approx(12.53, rel=1e-3)
        assert len(cfg.n0_grid) == 25
        assert cfg.n0_grid[0] == pytest.approx(2.5e-5)
        assert cfg.trials == 10_000

    def test_fig8_configuration(self):
        cfg = preset("fig8")
        assert cfg.algorithms == MI_ALGORITHMS
        assert cfg.sigma_i2 == pytest.approx(2.5)
        assert len(cfg.n0_grid) == 35
        assert cfg.n0_grid[0] == pytest.approx(2.5e-7)

    def test_correlation_presets(self):
        for name, algos in (("fig7", IP_ALGORITHMS), ("fig9", MI_ALGORITHMS)):
            cfg = preset(name)
            assert cfg.algorithms == algos
            assert cfg.alpha_grid[0] == pytest.approx(0.05)
            assert cfg.alpha_grid[-1] == pytest.approx(0.99)
            assert cfg.n0 == pytest.approx(25.0 / 10**4.5)

    def test_config_validation(self):
        with pytest.raises(ValueError):
            small_config(l_count=1)
        with pytest.raises(ValueError):
            small_config(trials=0)
        with pytest.raises(ValueError):
            small_config(algorithms=("sip", "bogus"))
