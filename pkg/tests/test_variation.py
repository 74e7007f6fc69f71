import statistics

import numpy as np
import pytest

from mbnav import (
    ConfigError,
    GenerationFailedError,
    UnknownPresetError,
    contains,
    generate_variation,
    preset,
)
from mbnav.geometry import distance_to_boundary


class TestGenerateVariation:
    def test_seed_33_postconditions(self):
        cfg = generate_variation(seed=33, n_robots=3, n_rois=6, bound=1000.0)
        assert cfg.n_robots == 3
        assert cfg.n_rois == 6
        for p in cfg.start_positions + cfg.rois:
            assert contains(cfg.field, p)
            assert distance_to_boundary(cfg.field, p) > 0
        lo, hi = cfg.position_bounds
        assert (lo.x, lo.y) == (0.0, 0.0)
        assert (hi.x, hi.y) == (1000.0, 1000.0)

    def test_deterministic(self):
        a = generate_variation(seed=123, n_robots=2, n_rois=4, bound=500.0)
        b = generate_variation(seed=123, n_robots=2, n_rois=4, bound=500.0)
        assert a == b

    def test_different_seeds_differ(self):
        a = generate_variation(seed=1)
        b = generate_variation(seed=2)
        assert a != b

    def test_zero_rois_rejected(self):
        with pytest.raises(ConfigError):
            generate_variation(seed=0, n_rois=0)

    def test_too_many_robots_rejected(self):
        with pytest.raises(ConfigError):
            generate_variation(seed=0, n_robots=8)

    def test_unsatisfiable_placement_fails_cleanly(self, monkeypatch):
        import mbnav.variation as variation

        monkeypatch.setattr(variation, "_PLACEMENT_ATTEMPTS", 3)
        with pytest.raises(GenerationFailedError):
            variation.generate_variation(seed=0, n_robots=7, n_rois=1)

    def test_many_seeds_all_validate(self):
        # EnvConfig validates in its constructor, so success implies the
        # start-separation and containment invariants hold.
        for seed in range(40):
            cfg = generate_variation(seed=seed, n_robots=3, n_rois=6)
            assert cfg.n_robots == 3

    def test_vertex_counts_in_range(self):
        rng = np.random.default_rng(0)
        for seed in rng.integers(0, 10_000, 20):
            cfg = generate_variation(seed=int(seed), n_robots=1, n_rois=1)
            assert 4 <= len(cfg.field.vertices) <= 8


class TestPresets:
    def test_presets_distinct(self):
        assert preset(1) != preset(2)

    def test_preset_three_smallest_area(self):
        areas = {i: preset(i).field.area for i in range(1, 11)}
        assert min(areas, key=areas.get) == 3
        assert areas[3] < statistics.mean(areas.values())

    def test_all_presets_three_robots_six_rois(self):
        for i in range(1, 11):
            cfg = preset(i)
            assert cfg.n_robots == 3
            assert cfg.n_rois == 6

    def test_unknown_preset(self):
        with pytest.raises(UnknownPresetError):
            preset(11)
        with pytest.raises(UnknownPresetError):
            preset(0)

    def test_presets_stable_across_calls(self):
        assert preset(5) == preset(5)
