"""Fenchel-Nielsen coordinates under elementary moves."""
from .kernels import BACKEND
from .errors import FNMetricError
from .hyperbolic import Mat2, trace_to_length, length_to_trace
from .pants import (
    FNPoint,
    LadderBase,
    LadderSpec,
    PantsDecomposition,
    elementary_move,
    fn_distance,
    four_holed_sphere,
    five_holed_sphere,
    make_point,
    one_holed_torus,
    twist_flow,
)
from .transforms import move_fn_point, sphere_move, torus_move

__version__ = "0.1.0"
