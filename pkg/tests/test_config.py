import pathlib

import pytest

from zestsim.config import ConfigError, load_scenario, parse_scenario_file, serialize_scenario
from zestsim.scenarios import GOLDEN, golden_config, with_overrides
from zestsim.simulator import PathSpec, ScenarioConfig

SCENARIO_DIR = pathlib.Path(__file__).resolve().parent.parent / "scenarios"


def test_empty_file_gives_defaults():
    assert parse_scenario_file("") == ScenarioConfig()


def test_minimal_goal():
    cfg = parse_scenario_file("sim:\n  route:\n    goal: [160, 0]\n")
    assert cfg == ScenarioConfig(route=PathSpec(goal=(160.0, 0.0)))
    assert isinstance(cfg.route.goal[0], float)


def test_beam_sets_safety_radius():
    cfg = parse_scenario_file("vessel:\n  white:\n    params: {beam: 4}\n")
    assert cfg.field.safety_radius == 8.0
    cfg = parse_scenario_file("vessel:\n  white:\n    params: {beam: 5}\napf: {k_att: 2}\n")
    assert cfg.field.safety_radius == 10.0 and cfg.field.k_att == 2.0


@pytest.mark.parametrize("name", list(GOLDEN))
def test_round_trip(name):
    cfg = golden_config(name)
    text = serialize_scenario(cfg)
    assert parse_scenario_file(text) == cfg
    assert serialize_scenario(parse_scenario_file(text)) == text


@pytest.mark.parametrize("name", list(GOLDEN))
def test_shipped_files_match_golden(name):
    assert load_scenario(SCENARIO_DIR / f"{name}.yaml") == golden_config(name)


def test_noise_and_red():
    text = """
vessel:
  red:
    state: {x: 50, y: 0, psi: 3.14159, u: 1}
    thrust: 400
sim:
  seed: 4
  noise: {gps_std: 0.5}
"""
    cfg = parse_scenario_file(text)
    assert cfg.red.thrust == 400.0 and cfg.seed == 4 and cfg.noise.gps_std == 0.5


@pytest.mark.parametrize("text, match", [
    ("sim:\n  dtt: 1\n", r"f\.yaml:2:\d+: unknown key 'sim\.dtt'"),
    ("vessel:\n  white:\n    params:\n      foo: 2\n", "unknown key 'vessel.white.params.foo'"),
    ("vessel:\n  blue: {}\n", "unknown key 'vessel.blue'"),
    ("extra: 1\n", "unknown key 'extra'"),
    ("vessel:\n  white:\n    state: {t: 3}\n", "unknown key 'vessel.white.state.t'"),
    ("apf:\n  safety_radius: 3\n", "safety_radius"),
    ("sim: [1, 2]\n", "must be a mapping"),
    ("sim:\n  dt: 1\n  dt: 2\n", "duplicate key"),
])
def test_key_errors(text, match):
    with pytest.raises(ConfigError, match=match):
        parse_scenario_file(text, "f.yaml")


def test_syntax_error_positioned():
    with pytest.raises(ConfigError, match=r"f\.yaml:3:\d+: syntax error"):
        parse_scenario_file("sim:\n  route: {goal: [1, 2]\nname: x\n", "f.yaml")


@pytest.mark.parametrize("text", ["sim:\n  dt: 0\n", "sim:\n  max_time: -1\n",
                                  "vessel:\n  white:\n    params: {mass: -1}\n",
                                  "colregs: {release_range: 500}\n",
                                  "apf: {influence_radius: 2}\n",
                                  "sim:\n  route: {laps: 0}\n"])
def test_validation_errors(text):
    with pytest.raises(ConfigError, match="invalid"):
        parse_scenario_file(text)


def test_missing_file(tmp_path):
    with pytest.raises(ConfigError, match="nope.yaml"):
        load_scenario(tmp_path / "nope.yaml")


def test_scaled_safety_not_serializable():
    with pytest.raises(ValueError):
        serialize_scenario(with_overrides(golden_config("rule14"), safety_scale=2.0))
