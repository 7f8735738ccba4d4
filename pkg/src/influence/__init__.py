from .composer import compose, compose_sum, compose_with_attribution
from .equations import (
    ally_tower_influence,
    enemy_creep_influence,
    enemy_tower_influence,
    epsilon_radius,
    hero_influence,
    nexus_influence,
    phi,
    tau,
)
from .features import (
    AgentView,
    FeatureView,
    InfluenceTuning,
    NexusView,
    TowerContext,
    TowerView,
    UnitView,
)

__all__ = [
    'compose',
    'compose_sum',
    'compose_with_attribution',
    'ally_tower_influence',
    'enemy_creep_influence',
    'enemy_tower_influence',
    'epsilon_radius',
    'hero_influence',
    'nexus_influence',
    'phi',
    'tau',
    'AgentView',
    'FeatureView',
    'InfluenceTuning',
    'NexusView',
    'TowerContext',
    'TowerView',
    'UnitView',
]
