import pytest

from src.cli.scenarios import SCENARIOS, UnknownScenarioError, build_scenario, feature_count
from src.influence.composer import compose
from src.sim.config import MatchConfig


def test_crowded_lane_carries_thirty_features():
    scenario, spec = build_scenario("crowded-lane", MatchConfig())
    assert feature_count(scenario.view) == 30
    assert (spec.cols, spec.rows) == (120, 30)


@pytest.mark.parametrize("name", sorted(SCENARIOS))
def test_every_scenario_composes(name):
    scenario, spec = build_scenario(name, MatchConfig())
    grid = compose(scenario.view, spec, scenario.tuning)
    assert grid.values.shape == (spec.rows, spec.cols)


def test_empty_scenario_has_no_features():
    scenario, _ = build_scenario("empty", MatchConfig())
    assert feature_count(scenario.view) == 0


def test_unknown_scenario():
    with pytest.raises(UnknownScenarioError):
        build_scenario("nope", MatchConfig())
