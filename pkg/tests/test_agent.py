import msgspec
import numpy as np
import pytest

from src.agent.controller import AgentState, decide, refresh_grid
from src.agent.micro import chasing_threat, kite, orbwalk, premature_hit, select_target
from src.agent.navigation import (
    creep_pressure,
    escape_cell,
    in_forbidden_zone,
    kite_point,
    last_hit_approach,
    navigate,
    navigate_cell,
    path_clear,
    rally_point,
    search_radius,
)
from src.agent.profiles import DEFAULT_PROFILES
from src.agent.sensors import observe
from src.grid.geometry import CellIndex, GridSpec, WorldPos, distance
from src.grid.influence_grid import NEG_INF, InfluenceGrid
from src.influence.composer import compose, compose_with_attribution
from src.influence.features import InfluenceTuning, NexusView, TowerContext
from src.sim.commands import Command, CommandKind
from src.sim.config import HeroSlot, MatchConfig
from src.sim.entities import Team, TowerState
from src.sim.world import build_world, step
from tests.factories import add_creep, agent_view, chaser, creep, hero, quiet_config, quiet_world, tower, view

LANE = GridSpec.for_map(12000, 3000, 100)
NO_FALLOFF = InfluenceTuning(enemy_creep_falloff_enabled=False)
PROFILES = {p.name: p for p in DEFAULT_PROFILES}


def _agent_state(**kwargs):
    return AgentState("Blue-H0", LANE, **kwargs)


# --- navigation --------------------------------------------------------------

def test_search_radius_is_one_horizon_of_movement():
    assert search_radius(view(agent_view(speed=325)), 1.0) == 325
    assert search_radius(view(agent_view(speed=325)), 2.0) == 650


def test_navigate_to_low_hp_creep_ring():
    low = creep("Red-M1", 3500, hp=45)
    v = view(agent_view(3000), enemy_creeps=(low,))
    target = navigate(v, compose(v, LANE, NO_FALLOFF))
    assert 500 <= distance(target, low.pos) <= 550
    assert target.x < low.pos.x
    assert distance(target, v.agent.pos) <= 325


def test_navigate_escapes_toward_base_when_everything_is_forbidden():
    grid = InfluenceGrid(LANE)
    grid.values[:] = NEG_INF
    v = view(agent_view(3000))
    assert navigate(v, grid) == WorldPos(2750, 1450)
    assert escape_cell(grid, WorldPos(3000, 1500), 325, WorldPos(500, 1500)) == CellIndex(27, 14)


def test_navigate_prefers_finite_cell_over_forbidden():
    grid = InfluenceGrid(LANE)
    grid.values[:] = NEG_INF
    grid.values[15, 31] = -775.0
    assert navigate_cell(view(agent_view(3000)), grid) == CellIndex(31, 15)


def test_hp_term_pulls_agent_toward_weaker_creep():
    full = creep("Red-M1", 5000, 700)
    weak = creep("Red-M2", 5000, 2300, hp=45)
    v = view(agent_view(4400, 1500), enemy_creeps=(full, weak))

    target = navigate(v, compose(v, LANE, NO_FALLOFF), horizon=5)
    assert 500 <= distance(target, weak.pos) <= 550

    # without the HP term the two rings mirror each other and the row-major tie-break wins
    flat = msgspec.structs.replace(NO_FALLOFF, phi_enabled=False)
    target = navigate(v, compose(v, LANE, flat), horizon=5)
    assert 500 <= distance(target, full.pos) <= 550


def test_rally_point_behind_front_creep():
    v = view(agent_view(3000), ally_creeps=(creep("Blue-M1", 4000), creep("Blue-M2", 3900)),
             enemy_base=WorldPos(11500, 1500))
    grid, mask = compose_with_attribution(v, LANE, InfluenceTuning())
    assert rally_point(v, grid, mask, CellIndex(30, 15)) == WorldPos(3450, 1550)


def test_rally_point_skipped_near_enemies_or_when_ahead():
    allies = (creep("Blue-M1", 4000),)
    v = view(agent_view(3000), ally_creeps=allies, enemy_base=WorldPos(11500, 1500))
    grid, mask = compose_with_attribution(v, LANE, InfluenceTuning())
    mask[15, 30] = True
    assert rally_point(v, grid, mask, CellIndex(30, 15)) is None

    ahead = view(agent_view(3600), ally_creeps=allies, enemy_base=WorldPos(11500, 1500))
    grid, mask = compose_with_attribution(ahead, LANE, InfluenceTuning())
    assert rally_point(ahead, grid, mask, CellIndex(36, 15)) is None

    grid.values[15, 34] = -350.0
    v = view(agent_view(3000), ally_creeps=allies, enemy_base=WorldPos(11500, 1500))
    assert rally_point(v, grid, np.zeros_like(mask), CellIndex(30, 15)) is None


def test_path_clear_stops_at_forbidden_cells():
    grid = InfluenceGrid(LANE)
    grid.values[15, 35] = NEG_INF
    assert not path_clear(grid, WorldPos(3000, 1550), WorldPos(4000, 1550))
    assert path_clear(grid, WorldPos(3000, 1450), WorldPos(4000, 1450))


def test_rally_point_rejects_a_walk_through_a_forbidden_cell():
    v = view(agent_view(3000), ally_creeps=(creep("Blue-M1", 4000),), enemy_base=WorldPos(11500, 1500))
    grid, mask = compose_with_attribution(v, LANE, InfluenceTuning())
    grid.values[15, 32] = NEG_INF
    assert rally_point(v, grid, mask, CellIndex(30, 15)) is None


def test_forbidden_zone_covers_the_agent_cell():
    hostile = tower("Red-T0", 7000, state=TowerState.ACTIVE_AGGRO)
    assert in_forbidden_zone(view(agent_view(6700, hp=100), enemy_towers=(hostile,)), LANE, InfluenceTuning())
    assert not in_forbidden_zone(view(agent_view(6700), enemy_towers=(hostile,)), LANE, InfluenceTuning())


def test_creep_pressure_when_targeted_or_about_to_be():
    assert creep_pressure(view(agent_view(3000), enemy_creeps=(creep("Red-M1", 3400, target="Blue-H0"),)))
    lone = creep("Red-M1", 3550, aggro=600)
    assert creep_pressure(view(agent_view(3000), enemy_creeps=(lone,)))
    assert not creep_pressure(view(agent_view(3000), enemy_creeps=(creep("Red-M1", 3700, aggro=600),)))


def test_creep_pressure_is_off_while_something_else_draws_the_creep():
    lone = creep("Red-M1", 3550, aggro=600)
    assert not creep_pressure(view(agent_view(3000), enemy_creeps=(lone,), ally_creeps=(creep("Blue-M1", 3300),)))
    assert not creep_pressure(view(agent_view(3000), enemy_creeps=(lone,), ally_towers=(tower("Blue-T1", 3500),)))


def test_last_hit_approach_steps_inside_range():
    v = view(agent_view(3000), enemy_creeps=(creep("Red-M1", 3650, hp=30),))
    assert last_hit_approach(v, compose(v, LANE, InfluenceTuning())) == WorldPos(3140, 1500)


def test_last_hit_approach_skips():
    far = view(agent_view(3000), enemy_creeps=(creep("Red-M1", 3800, hp=30),))
    assert last_hit_approach(far, compose(far, LANE, InfluenceTuning())) is None

    ready = view(agent_view(3000), enemy_creeps=(creep("Red-M1", 3650, hp=30), creep("Red-M2", 3400, hp=50)))
    assert last_hit_approach(ready, compose(ready, LANE, InfluenceTuning())) is None

    guarded = view(agent_view(3000), enemy_creeps=(creep("Red-M1", 3650, hp=30),),
                   enemy_heroes=(hero("Red-H0", 3140, effective_range=300),))
    assert last_hit_approach(guarded, compose(guarded, LANE, InfluenceTuning())) is None


# --- target selection ---------------------------------------------------------

def test_threatening_hero_comes_first():
    v = view(agent_view(3000),
             enemy_creeps=(creep("Red-M1", 3300, hp=20),),
             enemy_heroes=(hero("Red-H0", 3400, target="Blue-H0"),))
    assert select_target(v) == "Red-H0"


def test_hero_aiming_elsewhere_is_not_a_threat():
    v = view(agent_view(3000),
             enemy_creeps=(creep("Red-M1", 3300, hp=200),),
             enemy_heroes=(hero("Red-H0", 3400, target="Blue-M4"),))
    assert select_target(v) == "Red-M1"


def test_killable_creep_before_tower():
    v = view(agent_view(6300),
             enemy_creeps=(creep("Red-M1", 6500, hp=300), creep("Red-M2", 6600, hp=55),
                           creep("Red-M3", 6700, hp=40)),
             enemy_towers=(tower("Red-T0", 6800, state=TowerState.PASSIVE_AGGRO, alpha=4),))
    assert select_target(v) == "Red-M3"


def test_shielded_tower_when_no_last_hit():
    shielded = tower("Red-T0", 6800, state=TowerState.PASSIVE_AGGRO, alpha=4)
    v = view(agent_view(6300), enemy_creeps=(creep("Red-M1", 6500, hp=300),), enemy_towers=(shielded,))
    assert select_target(v) == "Red-T0"

    thin = tower("Red-T0", 6800, state=TowerState.PASSIVE_AGGRO, alpha=2)
    v = view(agent_view(6300), enemy_creeps=(creep("Red-M1", 6500, hp=300),), enemy_towers=(thin,))
    assert select_target(v) == "Red-M1"


def test_tower_push_waits_for_enemy_hero_to_leave():
    shielded = tower("Red-T0", 6800, state=TowerState.PASSIVE_AGGRO, alpha=4)
    v = view(agent_view(6300), enemy_creeps=(creep("Red-M1", 6500, hp=300),), enemy_towers=(shielded,),
             enemy_heroes=(hero("Red-H0", 6900),))
    assert select_target(v) == "Red-M1"


def test_exposed_nexus_is_a_target():
    nexus = NexusView("Red-Nexus", WorldPos(11500, 1500), 2000.0, vulnerable=True)
    assert select_target(view(agent_view(11000), enemy_nexus=nexus)) == "Red-Nexus"
    guarded = NexusView("Red-Nexus", WorldPos(11500, 1500), 2000.0, vulnerable=False)
    assert select_target(view(agent_view(11000), enemy_nexus=guarded)) is None


def test_lowest_hp_creep_otherwise_and_nothing_out_of_range():
    v = view(agent_view(3000), enemy_creeps=(creep("Red-M1", 3300, hp=300), creep("Red-M2", 3400, hp=200),
                                             creep("Red-M3", 3700, hp=10)))
    assert select_target(v) == "Red-M2"
    assert select_target(view(agent_view(3000), enemy_creeps=(creep("Red-M1", 3700),))) is None


# --- orbwalker ---------------------------------------------------------------

def _orb(now, target_x=3400):
    hero_view = agent_view(3000, last_attack=10.0, lock_until=10.25)
    target = creep("Red-M1", target_x)
    return orbwalk(_agent_state(latency=0.05), target, WorldPos(2900, 1500), now, hero_view)


def test_orbwalk_holds_through_windup_and_latency():
    assert _orb(10.1).kind is CommandKind.HOLD
    assert _orb(10.29).kind is CommandKind.HOLD


def test_orbwalk_moves_between_attacks():
    assert _orb(10.31) == Command.move(WorldPos(2900, 1500))
    assert _orb(11.0) == Command.move(WorldPos(2900, 1500))


def test_orbwalk_attacks_when_ready_and_in_range():
    assert _orb(11.5) == Command.attack("Red-M1")
    assert _orb(11.5, target_x=3700).kind is CommandKind.MOVE


def test_orbwalk_turn_time_extends_lock():
    hero_view = agent_view(3000, last_attack=10.0, lock_until=10.25)
    state = _agent_state(latency=0.05, turn_time=0.2)
    assert orbwalk(state, None, WorldPos(2900, 1500), 10.45, hero_view).kind is CommandKind.HOLD
    assert orbwalk(state, None, WorldPos(2900, 1500), 10.55, hero_view).kind is CommandKind.MOVE


def test_agent_state_rejects_bad_rates():
    with pytest.raises(ValueError):
        _agent_state(im_rate=0)
    with pytest.raises(ValueError):
        _agent_state(latency=-0.1)


# --- kiting ------------------------------------------------------------------

FLEE = WorldPos(2675, 1500)


def _kite(gap, now=5.0, last_attack=float("-inf"), lock_until=float("-inf"), **chaser_kwargs):
    return kite(_agent_state(), chaser("Red-H0", 3000 + gap, **chaser_kwargs), FLEE, now,
                agent_view(3000, last_attack=last_attack, lock_until=lock_until))


def test_chasing_threat_is_an_outranged_hero_ordered_onto_the_agent():
    near = chaser("Red-H0", 3400)
    assert chasing_threat(view(agent_view(3000), enemy_heroes=(near,))) == near
    assert chasing_threat(view(agent_view(3000), enemy_heroes=(chaser("Red-H0", 3600),))) is None
    assert chasing_threat(view(agent_view(3000), enemy_heroes=(chaser("Red-H0", 3400, target=None),))) is None
    assert chasing_threat(view(agent_view(3000), enemy_heroes=(hero("Red-H0", 3400, target="Blue-H0"),))) is None


def test_kite_takes_free_shots_from_outside_the_closing_distance():
    # lock 0.3 s lets a 325-speed chaser close 97.5 units: free beyond 150 + 97.5 + 50
    assert _kite(400) == Command.attack("Red-H0")
    assert _kite(300, ready_at=9.0) == Command.attack("Red-H0")


def test_kite_holds_ground_for_a_ready_chaser():
    assert _kite(270) == Command.hold()
    assert _kite(270, ready_at=6.0) == Command.move(FLEE)


def test_kite_trades_when_the_swing_must_whiff():
    assert _kite(200) == Command.attack("Red-H0")
    assert _kite(200, ready_at=6.0) == Command.move(FLEE)
    # a quick swing would land before the agent walks off
    assert _kite(160, windup=0.1) == Command.move(FLEE)


def test_kite_walks_off_a_committed_swing():
    assert _kite(140, winding=True) == Command.move(FLEE)


def test_kite_respects_lock_and_cooldown():
    assert _kite(400, last_attack=4.9, lock_until=5.15).kind is CommandKind.HOLD
    assert _kite(400, last_attack=4.5, lock_until=4.75) == Command.move(FLEE)
    assert _kite(600) == Command.move(FLEE)


def test_kite_point_from_the_centre_runs_straight_away():
    dest, spin = kite_point(WorldPos(6000, 1500), WorldPos(6400, 1500), LANE, 325)
    assert dest == WorldPos(5675, 1500)
    assert spin == 0


def test_kite_point_orbits_away_from_the_chaser():
    dest, spin = kite_point(WorldPos(6000, 400), WorldPos(6300, 400), LANE, 325)
    assert spin == -1
    assert dest.x == pytest.approx(5675) and dest.y == pytest.approx(400)
    # a chaser straight inside the orbit keeps the current direction
    _, kept = kite_point(WorldPos(6000, 400), WorldPos(6000, 700), LANE, 325, spin=-1)
    assert kept == -1


def test_kite_point_never_closes_on_the_chaser():
    agent, threat = WorldPos(3000, 1500), WorldPos(3400, 1500)
    dest, _ = kite_point(agent, threat, LANE, 325)
    assert distance(dest, threat) >= distance(agent, threat)
    assert distance(dest, agent) == pytest.approx(325)


# --- controller --------------------------------------------------------------

def test_decide_walks_into_ally_tower_cover():
    v = view(agent_view(3000), ally_towers=(tower("Blue-T0", 3500),))
    assert decide(v, _agent_state(), 0.0) == Command.move(WorldPos(3250, 1450))


def test_decide_rallies_behind_ally_creeps():
    v = view(agent_view(3000), ally_creeps=(creep("Blue-M1", 4000),), enemy_base=WorldPos(11500, 1500))
    assert decide(v, _agent_state(), 0.0) == Command.move(WorldPos(3450, 1550))
    assert decide(v, _agent_state(lane_presence=False), 0.0) != Command.move(WorldPos(3450, 1550))


def test_decide_attacks_killable_creep():
    v = view(agent_view(3000), enemy_creeps=(creep("Red-M1", 3300, hp=30),))
    agent = _agent_state()
    assert decide(v, agent, 0.0) == Command.attack("Red-M1")
    assert agent.current_target == "Red-M1"


def test_decide_kites_an_approaching_chaser():
    agent = _agent_state()
    assert decide(view(agent_view(3000), enemy_heroes=(chaser("Red-H0", 3400),)), agent, 0.0) == \
        Command.attack("Red-H0")
    assert agent.current_target == "Red-H0"

    close = chaser("Red-H0", 3140, winding=True)
    cmd = decide(view(agent_view(3000), enemy_heroes=(close,)), _agent_state(), 0.0)
    assert cmd.kind is CommandKind.MOVE
    assert distance(cmd.pos, close.pos) > 140


def test_decide_walks_out_of_a_forbidden_radius_mid_animation():
    hostile = tower("Red-T0", 7000, state=TowerState.ACTIVE_AGGRO)
    v = view(agent_view(6700, hp=100, last_attack=0.0, lock_until=0.25),
             enemy_creeps=(creep("Red-M1", 6900, hp=30),), enemy_towers=(hostile,))
    agent = _agent_state()
    cmd = decide(v, agent, 0.1)
    assert cmd.kind is CommandKind.MOVE and cmd.pos.x < 6700
    assert agent.current_target is None
    decide(v, agent, 0.1 + 1 / 30)
    assert agent.recomputes == 2


def test_decide_keeps_out_of_epsilon_under_a_thin_shield():
    thin = tower("Red-T0", 7000, state=TowerState.PASSIVE_AGGRO, alpha=3)
    weak = agent_view(6700, hp=100)
    assert not in_forbidden_zone(view(weak, enemy_towers=(thin,)), LANE, InfluenceTuning())
    assert in_forbidden_zone(view(weak, enemy_towers=(thin,)), LANE, InfluenceTuning(), spare=2)
    cmd = decide(view(weak, enemy_towers=(thin,)), _agent_state(), 0.0)
    assert cmd.kind is CommandKind.MOVE and cmd.pos.x < 6700

    thick = tower("Red-T0", 7000, state=TowerState.PASSIVE_AGGRO, alpha=5)
    assert not in_forbidden_zone(view(weak, enemy_towers=(thick,)), LANE, InfluenceTuning(), spare=2)


def test_decide_backs_off_under_creep_aggro():
    v = view(agent_view(3000), enemy_creeps=(creep("Red-M1", 3400, target="Blue-H0"),))
    cmd = decide(v, _agent_state(), 0.0)
    assert cmd.kind is CommandKind.MOVE and cmd.pos.x < 3000

    locked = view(agent_view(3000, last_attack=0.0, lock_until=0.25),
                  enemy_creeps=(creep("Red-M1", 3400, target="Blue-H0"),))
    assert decide(locked, _agent_state(), 0.1).kind is CommandKind.HOLD


def test_decide_steps_in_for_a_last_hit():
    v = view(agent_view(3000), enemy_creeps=(creep("Red-M1", 3650, hp=30), creep("Red-M2", 3300)))
    agent = _agent_state()
    assert decide(v, agent, 0.0) == Command.move(WorldPos(3140, 1500))
    assert agent.current_target is None


def test_premature_hit_is_one_that_only_sets_up_a_kill():
    v = view(agent_view(3000), enemy_creeps=(creep("Red-M1", 3300, hp=100), creep("Red-M2", 3300, hp=121),
                                             creep("Red-M3", 3300, hp=60)))
    assert premature_hit(v, "Red-M1")
    assert not premature_hit(v, "Red-M2")
    assert not premature_hit(v, "Red-M3")
    assert not premature_hit(v, None)


def test_decide_holds_the_setup_shot():
    v = view(agent_view(3000), enemy_creeps=(creep("Red-M1", 3300, hp=100),))
    agent = _agent_state()
    assert select_target(v) == "Red-M1"
    assert decide(v, agent, 0.0).kind is CommandKind.MOVE
    assert agent.current_target is None
    sturdy = view(agent_view(3000), enemy_creeps=(creep("Red-M1", 3300, hp=300),))
    assert decide(sturdy, _agent_state(), 0.0) == Command.attack("Red-M1")


def test_grid_refresh_rate():
    v = view(agent_view(3000))
    agent = _agent_state(im_rate=10.0)
    for now in (0.0, 1 / 30, 2 / 30, 0.1, 0.15):
        refresh_grid(v, agent, now)
    assert agent.recomputes == 2


# --- sensors -----------------------------------------------------------------

def test_observe_default_world():
    world = build_world(MatchConfig(), seed=0)
    v = observe(world, "Blue-H0", PROFILES, InfluenceTuning())
    assert v.agent.hero_range == 550 and v.agent.attack_range == 550
    assert v.agent.tactical_value == 400
    assert v.agent_base == WorldPos(500, 1500)
    assert v.enemy_base == WorldPos(11500, 1500)
    assert [t.id for t in v.enemy_towers] == ["Red-T0", "Red-T1"]
    assert all(t.ctx == TowerContext(TowerState.IDLE, 0) for t in v.enemy_towers)
    assert v.enemy_nexus is not None and not v.enemy_nexus.vulnerable
    assert v.enemy_creeps == () and v.enemy_heroes == ()


def test_observe_hero_range_override():
    world = build_world(MatchConfig(), seed=0)
    v = observe(world, "Blue-H0", PROFILES, InfluenceTuning(hero_range_override=600))
    assert v.agent.hero_range == 600 and v.agent.attack_range == 550


def test_observe_tower_context_and_shield():
    cfg = quiet_config(map=msgspec.structs.replace(MatchConfig().map, blue_towers=(), red_towers=(7000.0,)),
                       heroes=(HeroSlot(spawn_x=6000),))
    world = quiet_world(cfg)
    for x in (6500, 6600, 6700):
        add_creep(world, Team.BLUE, x)
    add_creep(world, Team.BLUE, 5000)
    red_tower = world.towers["Red-T0"]

    v = observe(world, "Blue-H0", PROFILES, InfluenceTuning())
    assert v.enemy_towers[0].ctx == TowerContext(TowerState.IDLE, 3)
    red_tower.locked_target = "Blue-H0"
    assert observe(world, "Blue-H0", PROFILES, InfluenceTuning()).enemy_towers[0].ctx.state is TowerState.ACTIVE_AGGRO
    red_tower.locked_target = "Blue-M00001"
    assert observe(world, "Blue-H0", PROFILES, InfluenceTuning()).enemy_towers[0].ctx.state is TowerState.PASSIVE_AGGRO


def test_observe_enemy_hero_profile_and_stale_target():
    cfg = quiet_config(heroes=(HeroSlot(spawn_x=5000),
                               HeroSlot(team="Red", controller="idle", profile="melee_bruiser", spawn_x=5300)))
    world = build_world(cfg, 0, PROFILES)
    red = world.units["Red-H0"]
    red.target_id = "Blue-H0"
    red.last_attack_time = 0.0

    (seen,) = observe(world, "Blue-H0", PROFILES, InfluenceTuning()).enemy_heroes
    assert seen.effective_range == 400 and seen.tactical_value == 350
    assert seen.target_id == "Blue-H0"

    world.tick_index = 90
    (seen,) = observe(world, "Blue-H0", PROFILES, InfluenceTuning()).enemy_heroes
    assert seen.target_id is None


def test_observe_unknown_hero():
    with pytest.raises(KeyError):
        observe(quiet_world(), "Red-H7", PROFILES, InfluenceTuning())


def test_observe_chaser_is_aiming_before_its_first_swing():
    cfg = quiet_config(heroes=(HeroSlot(controller="idle", spawn_x=5000),
                               HeroSlot(team="Red", controller="chaser", profile="melee_bruiser", spawn_x=5520)))
    world = build_world(cfg, 0, PROFILES)
    step(world)
    assert world.units["Red-H0"].last_attack_time == float("-inf")

    v = observe(world, "Blue-H0", PROFILES, InfluenceTuning())
    (seen,) = v.enemy_heroes
    assert seen.target_id == "Blue-H0" and not seen.winding
    assert select_target(v) == "Red-H0"
    assert chasing_threat(v) == seen


def test_alpha_counts_creeps_queued_before_the_agent():
    cfg = quiet_config(map=msgspec.structs.replace(MatchConfig().map, blue_towers=(), red_towers=(7000.0,)),
                       heroes=(HeroSlot(spawn_x=6400),))
    world = quiet_world(cfg)
    early = [add_creep(world, Team.BLUE, x) for x in (6500, 6600)]
    late = add_creep(world, Team.BLUE, 6700)
    red_tower = world.towers["Red-T0"]
    shield = [(c.id, c.pos) for c in (*early, late)]

    assert TowerContext.from_tower(red_tower, "Blue-H0", shield).alpha == 3
    red_tower.entered_at.update({early[0].id: 5.0, early[1].id: 10.0, "Blue-H0": 10.0, late.id: 12.0})
    assert TowerContext.from_tower(red_tower, "Blue-H0", shield).alpha == 2
    assert not TowerContext.from_tower(red_tower, "Blue-H0", shield).favorable


def test_observe_reports_creep_aggro_radius():
    world = quiet_world()
    add_creep(world, Team.RED, 5000)
    (seen,) = observe(world, "Blue-H0", PROFILES, InfluenceTuning()).enemy_creeps
    assert seen.aggro_radius == 600
