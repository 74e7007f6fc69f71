import json

import numpy as np
import pytest

from mbnav import (
    Env,
    EnvConfig,
    EpisodeFinishedError,
    Point2,
    save_config,
    validate_polygon,
)
from mbnav_bindings import BoxSpace, EpisodeEnv, make_env, reset, step


def square(side: float):
    return validate_polygon([(0, 0), (side, 0), (side, side), (0, side)])


def build_config(n_robots: int = 3) -> EnvConfig:
    starts = tuple(Point2(30.0 + 40.0 * i, 30.0) for i in range(n_robots))
    rois = tuple(Point2(40.0 + 40.0 * i, 130.0) for i in range(n_robots))
    return EnvConfig(
        field=square(200.0),
        rois=rois,
        start_positions=starts,
        collision_distance=5.0,
        roi_radius=10.0,
        max_episode_steps=60,
    )


@pytest.fixture
def env_file(tmp_path):
    path = tmp_path / "env.json"
    save_config(build_config(), path)
    return path


class TestSpaces:
    def test_observation_dim_4n_plus_1(self, env_file):
        handle = make_env(env_file)
        assert handle.observation_space.shape == (13,)
        assert reset(handle, seed=0).shape == (13,)

    def test_action_dim_2n(self, env_file):
        handle = make_env(env_file)
        assert handle.action_space.shape == (6,)

    def test_bounds_match_config(self, env_file):
        handle = make_env(env_file)
        cfg = handle.cfg
        obs_space = handle.observation_space
        n = cfg.n_robots
        assert obs_space.low[0] == cfg.position_bounds[0].x
        assert obs_space.high[0] == cfg.position_bounds[1].x
        assert np.all(obs_space.low[2 * n : 4 * n] == -cfg.v_clip)
        assert np.all(obs_space.high[2 * n : 4 * n] == cfg.v_clip)
        assert obs_space.high[-1] == float(cfg.full_mask)
        act_space = handle.action_space
        assert np.all(act_space.low == np.tile([-1.0, -1.0], n))
        assert np.all(act_space.high == np.tile([1.0, 1.0], n))

    def test_initial_observation_in_space(self, env_file):
        handle = make_env(env_file)
        assert handle.observation_space.contains(reset(handle, seed=3))

    def test_box_space_rejects_inverted_bounds(self):
        with pytest.raises(ValueError):
            BoxSpace(low=np.array([1.0]), high=np.array([0.0]))


class TestFiveTuple:
    def test_step_returns_five_tuple_with_info(self, env_file):
        handle = make_env(env_file)
        reset(handle, seed=0)
        obs, reward, terminated, truncated, info = step(handle, np.zeros(6))
        assert obs.shape == (13,)
        assert isinstance(reward, float)
        assert not terminated and not truncated
        assert set(info) == {"breakdown", "cause", "visited_mask"}
        assert reward == sum(info["breakdown"])

    def test_step_limit_reports_truncated(self, env_file):
        handle = make_env(env_file)
        reset(handle, seed=0)
        terminated = truncated = False
        for _ in range(handle.cfg.max_episode_steps):
            _, _, terminated, truncated, info = step(handle, np.zeros(6))
        assert truncated and not terminated
        assert info["cause"] == "StepLimit"

    def test_collision_reports_terminated(self, tmp_path):
        cfg = EnvConfig(
            field=square(100.0),
            rois=(Point2(50.0, 80.0),),
            start_positions=(Point2(30.0, 20.0), Point2(70.0, 20.0)),
            collision_distance=8.0,
            roi_radius=5.0,
            max_episode_steps=100,
        )
        path = tmp_path / "pair.json"
        save_config(cfg, path)
        handle = make_env(path)
        reset(handle, seed=0)
        terminated = False
        while not terminated:
            _, reward, terminated, truncated, info = step(
                handle, [1.0, 0.0, -1.0, 0.0]
            )
        assert info["cause"] == "Collision"
        assert reward == -cfg.rewards.r_terminal
        assert not truncated

    def test_step_after_end_raises_native_error(self, env_file):
        handle = make_env(env_file)
        reset(handle, seed=0)
        done = False
        while not done:
            _, _, terminated, truncated, _ = step(handle, np.zeros(6))
            done = terminated or truncated
        with pytest.raises(EpisodeFinishedError):
            step(handle, np.zeros(6))

    def test_reset_reseeds(self, env_file):
        handle = make_env(env_file)
        a = reset(handle, seed=1)
        step(handle, np.full(6, 0.5))
        b = reset(handle, seed=1)
        np.testing.assert_array_equal(a, b)


class TestParityWithNative:
    def test_out_of_range_action_clamped_like_native(self, env_file):
        handle = make_env(env_file)
        reset(handle, seed=0)
        obs_binding, reward_binding, *_ = step(handle, np.full(6, 1e9))

        native = Env(build_config(), seed=0)
        outcome = native.step([1.0] * 6)
        np.testing.assert_array_equal(obs_binding, native.observation())
        assert reward_binding == outcome.reward

    def test_zero_action_loop_matches_native_zero_policy(self, env_file):
        handle = make_env(env_file)
        obs = reset(handle, seed=0)
        binding_track = [obs.tolist()]
        done = False
        while not done:
            obs, reward, terminated, truncated, _ = step(handle, np.zeros(6))
            binding_track.append((obs.tolist(), reward))
            done = terminated or truncated

        native = Env(build_config(), seed=0)
        native_track = [native.observation().tolist()]
        while not native.terminated:
            outcome = native.step([0.0] * 6)
            native_track.append((native.observation().tolist(), outcome.reward))
        assert binding_track == native_track
