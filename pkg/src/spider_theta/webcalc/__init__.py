"""Planar web calculus for the C2 spider and a brute-force theta oracle."""

from .canon import canonical_key, canonicalize
from .clasps import (
    annihilation_frame,
    annihilation_witness,
    box_web,
    closure_web,
    expand_clasp_double,
    expand_clasp_single,
    glue_theta,
    one_level,
    stacked_trace_web,
    substitute,
    theta_oracle,
    theta_web,
    trace_oracle,
)
from .reduce import LOOP_DOUBLE, LOOP_SINGLE, ReductionConfig, ReductionStats, Reducer, measure, reduce_closed
from .web import BOUNDARY, DOUBLE, SINGLE, BoundarySignature, Web, free_loops
from .websum import WebSum
