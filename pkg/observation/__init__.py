# Observation pipeline: avatar-centred global and local views
from .pipeline import (
    LOCAL_SIZE,
    ObservationPair,
    dump_observation,
    format_codes,
    locate_avatar,
    observe,
    observe_grid,
    one_hot,
    transform_global,
    transform_local,
)

__all__ = [
    'LOCAL_SIZE', 'ObservationPair', 'locate_avatar', 'transform_global', 'transform_local',
    'one_hot', 'observe', 'observe_grid', 'format_codes', 'dump_observation',
]
